#ifndef DRX_K_ELEMENT_HPP
#define DRX_K_ELEMENT_HPP

#include "drx/theta_poly.hpp"

#include <string>

namespace drx {

/// Element of K = F_q(theta) in canonical form: numerator and denominator are
/// coprime and the denominator is monic and nonzero. Equality is
/// coefficientwise on the canonical form.
class KElement {
public:
    /// Canonicalizes num/den. Throws std::domain_error("division by zero in K")
    /// when den = 0.
    KElement(ThetaPoly num, ThetaPoly den);
    explicit KElement(ThetaPoly num);

    static KElement zero(const FqPtr& f) { return KElement(ThetaPoly::zero(f)); }
    static KElement one(const FqPtr& f) { return KElement(ThetaPoly::one(f)); }
    static KElement theta(const FqPtr& f) { return KElement(ThetaPoly::theta(f)); }
    static KElement from_fq(const FqElem& c) { return KElement(ThetaPoly::constant(c)); }
    static KElement from_int(const FqPtr& f, long v) { return from_fq(f->from_int(v)); }

    const FqPtr& field() const noexcept { return num_.field(); }
    const ThetaPoly& num() const noexcept { return num_; }
    const ThetaPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integral() const { return den_.is_one(); }

    KElement operator+(const KElement& rhs) const;
    KElement operator-(const KElement& rhs) const;
    KElement operator-() const;
    KElement operator*(const KElement& rhs) const;
    KElement operator/(const KElement& rhs) const;
    KElement inverse() const;

    KElement pow(std::uint64_t e) const;

    /// x^(q^k), by exponent dilation of numerator and denominator.
    KElement frobenius(unsigned k) const;

    bool operator==(const KElement& rhs) const;
    bool operator!=(const KElement& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    ThetaPoly num_;
    ThetaPoly den_;

    void normalize();
};

/// Free-function form used throughout the reduction code.
inline KElement frobenius(const KElement& x, unsigned k) { return x.frobenius(k); }

/// theta^(q^k) - theta; nonzero for k >= 1 since theta is transcendental.
KElement theta_twist_gap(const FqPtr& f, unsigned k);

} // namespace drx

#endif
