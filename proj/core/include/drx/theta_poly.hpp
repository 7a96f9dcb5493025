#ifndef DRX_THETA_POLY_HPP
#define DRX_THETA_POLY_HPP

#include "drx/fq.hpp"

#include <string>
#include <vector>

namespace drx {

/// Polynomial in theta over F_q, dense ascending coefficients, trailing zeros
/// stripped. The zero polynomial has an empty coefficient vector and degree -1.
class ThetaPoly {
public:
    explicit ThetaPoly(FqPtr field) : field_(std::move(field)) {}
    ThetaPoly(FqPtr field, std::vector<FqElem> coeffs);

    static ThetaPoly zero(const FqPtr& f) { return ThetaPoly(f); }
    static ThetaPoly one(const FqPtr& f);
    static ThetaPoly theta(const FqPtr& f);          // the monomial T
    static ThetaPoly constant(const FqElem& c);
    static ThetaPoly monomial(const FqElem& c, std::size_t deg);

    const FqPtr& field() const noexcept { return field_; }
    const std::vector<FqElem>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const;
    const FqElem& lead() const;                      // nonzero polynomials only
    FqElem coeff(std::size_t i) const;               // 0 beyond the degree

    ThetaPoly operator+(const ThetaPoly& rhs) const;
    ThetaPoly operator-(const ThetaPoly& rhs) const;
    ThetaPoly operator-() const;
    ThetaPoly operator*(const ThetaPoly& rhs) const;
    ThetaPoly scaled(const FqElem& s) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<ThetaPoly, ThetaPoly> divrem(const ThetaPoly& divisor) const;

    static ThetaPoly gcd(ThetaPoly a, ThetaPoly b);  // monic (or zero)

    ThetaPoly monic() const;
    ThetaPoly pow(std::uint64_t e) const;

    /// theta -> theta^(q^k) exponent dilation: this^(q^k) since F_q
    /// coefficients are Frobenius-fixed.
    ThetaPoly frobenius(unsigned k) const;

    bool operator==(const ThetaPoly& rhs) const;
    bool operator!=(const ThetaPoly& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    FqPtr field_;
    std::vector<FqElem> c_;

    void strip();
    void check_same_field(const ThetaPoly& rhs) const;
    void check_degree_guard() const;
};

} // namespace drx

#endif
