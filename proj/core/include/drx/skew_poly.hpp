#ifndef DRX_SKEW_POLY_HPP
#define DRX_SKEW_POLY_HPP

#include "drx/k_element.hpp"

#include <string>
#include <vector>

namespace drx {

/// Twisted polynomial in tau over K, with tau x = x^q tau. Dense ascending
/// coefficients, trailing zeros stripped; the zero polynomial is the empty
/// sequence with degree() == kZeroDegree.
class SkewPoly {
public:
    static constexpr int kZeroDegree = -1;   // stands in for -infinity

    explicit SkewPoly(FqPtr field) : field_(std::move(field)) {}
    SkewPoly(FqPtr field, std::vector<KElement> coeffs);

    static SkewPoly zero(const FqPtr& f) { return SkewPoly(f); }
    static SkewPoly one(const FqPtr& f) { return constant(KElement::one(f)); }
    static SkewPoly tau(const FqPtr& f, unsigned k = 1);
    static SkewPoly constant(const KElement& c);
    static SkewPoly monomial(const KElement& c, std::size_t deg);   // c * tau^deg
    static SkewPoly theta(const FqPtr& f) { return constant(KElement::theta(f)); }

    const FqPtr& field() const noexcept { return field_; }
    const std::vector<KElement>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    KElement coeff(std::size_t i) const;
    const KElement& lead() const;
    KElement constant_term() const { return coeff(0); }

    SkewPoly operator+(const SkewPoly& rhs) const;
    SkewPoly operator-(const SkewPoly& rhs) const;
    SkewPoly operator-() const;
    SkewPoly operator*(const SkewPoly& rhs) const;   // skew product

    /// Left multiplication by x in K: coefficients scale by x.
    SkewPoly scaled_left(const KElement& x) const;
    /// tau^k * this: coefficients Frobenius-twist and shift up.
    SkewPoly tau_shifted(unsigned k) const;

    /// The induced F_q-linear operator on K: (sum c_i tau^i)(b) = sum c_i b^(q^i).
    KElement apply(const KElement& b) const;

    bool operator==(const SkewPoly& rhs) const;
    bool operator!=(const SkewPoly& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    FqPtr field_;
    std::vector<KElement> c_;

    void strip();
    void check_same_field(const SkewPoly& rhs) const;
};

} // namespace drx

#endif
