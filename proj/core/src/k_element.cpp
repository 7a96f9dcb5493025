#include "drx/k_element.hpp"

#include <stdexcept>

namespace drx {

KElement::KElement(ThetaPoly num, ThetaPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (*num_.field() != *den_.field())
        throw std::invalid_argument("numerator and denominator over different fields");
    normalize();
}

KElement::KElement(ThetaPoly num)
    : num_(std::move(num)), den_(ThetaPoly::one(num_.field())) {}

void KElement::normalize() {
    if (den_.is_zero()) throw std::domain_error("division by zero in K");
    if (num_.is_zero()) {
        den_ = ThetaPoly::one(num_.field());
        return;
    }
    ThetaPoly g = ThetaPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divrem(g).first;
        den_ = den_.divrem(g).first;
    }
    if (!den_.lead().is_one()) {
        FqElem s = den_.lead().inverse();
        num_ = num_.scaled(s);
        den_ = den_.scaled(s);
    }
}

KElement KElement::operator+(const KElement& rhs) const {
    return KElement(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

KElement KElement::operator-(const KElement& rhs) const {
    return KElement(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

KElement KElement::operator-() const { return KElement(-num_, den_); }

KElement KElement::operator*(const KElement& rhs) const {
    return KElement(num_ * rhs.num_, den_ * rhs.den_);
}

KElement KElement::inverse() const {
    return KElement(den_, num_);   // throws if num_ is zero
}

KElement KElement::operator/(const KElement& rhs) const { return *this * rhs.inverse(); }

KElement KElement::pow(std::uint64_t e) const {
    KElement acc = one(field());
    KElement base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

KElement KElement::frobenius(unsigned k) const {
    if (k == 0) return *this;
    // exponent dilation preserves coprimality and monic denominators, so the
    // canonical form needs no renormalization
    KElement out = *this;
    out.num_ = num_.frobenius(k);
    out.den_ = den_.frobenius(k);
    return out;
}

bool KElement::operator==(const KElement& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
}

std::string KElement::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

KElement theta_twist_gap(const FqPtr& f, unsigned k) {
    KElement th = KElement::theta(f);
    return th.frobenius(k) - th;
}

} // namespace drx
