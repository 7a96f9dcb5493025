#ifndef DRX_FQ_HPP
#define DRX_FQ_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace drx {

class FqElem;

/// Description of a finite field F_q, q = p^m. Immutable; shared between all
/// values living over it. For m > 1 elements are residues modulo an
/// irreducible monic polynomial over F_p in the generator `g`.
class Fq : public std::enable_shared_from_this<Fq> {
public:
    /// Builds a field descriptor. `modulus` lists coefficients c0..cm of the
    /// defining polynomial (must be monic of degree m). For m > 1 and an empty
    /// modulus, a built-in table covers q in {4, 8, 9}; anything else throws.
    static std::shared_ptr<const Fq> make(std::uint32_t p, std::uint32_t m = 1,
                                          std::vector<std::uint32_t> modulus = {});

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t m() const noexcept { return m_; }
    std::uint64_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    bool operator==(const Fq& other) const noexcept {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }
    bool operator!=(const Fq& other) const noexcept { return !(*this == other); }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(long v) const;   // constant embedding of Z, reduced mod p
    FqElem gen() const;              // the generator g (m > 1 only)

    /// All q field elements, in a fixed enumeration order.
    std::vector<FqElem> elements() const;

private:
    Fq(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

    std::uint32_t p_;
    std::uint32_t m_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
};

using FqPtr = std::shared_ptr<const Fq>;

/// Element of F_q: coefficient vector of length m over F_p (basis 1, g, g^2, ...).
class FqElem {
public:
    FqElem(FqPtr field, std::vector<std::uint32_t> coeffs);

    const FqPtr& field() const noexcept { return field_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FqElem operator+(const FqElem& rhs) const;
    FqElem operator-(const FqElem& rhs) const;
    FqElem operator-() const;
    FqElem operator*(const FqElem& rhs) const;
    FqElem operator/(const FqElem& rhs) const;
    FqElem inverse() const;          // throws std::domain_error on zero
    FqElem pow(std::uint64_t e) const;

    bool operator==(const FqElem& rhs) const;
    bool operator!=(const FqElem& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    FqPtr field_;
    std::vector<std::uint32_t> c_;

    void check_same_field(const FqElem& rhs) const;
};

} // namespace drx

#endif
