#include "drx/skew_poly.hpp"

#include <stdexcept>

namespace drx {

SkewPoly::SkewPoly(FqPtr field, std::vector<KElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (*c.field() != *field_) throw std::invalid_argument("coefficient from wrong field");
    strip();
}

void SkewPoly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void SkewPoly::check_same_field(const SkewPoly& rhs) const {
    if (*field_ != *rhs.field_) throw std::invalid_argument("mixed-field arithmetic in K{tau}");
}

SkewPoly SkewPoly::tau(const FqPtr& f, unsigned k) {
    return monomial(KElement::one(f), k);
}

SkewPoly SkewPoly::constant(const KElement& c) {
    if (c.is_zero()) return SkewPoly(c.field());
    return SkewPoly(c.field(), {c});
}

SkewPoly SkewPoly::monomial(const KElement& c, std::size_t deg) {
    if (c.is_zero()) return SkewPoly(c.field());
    std::vector<KElement> v(deg, KElement::zero(c.field()));
    v.push_back(c);
    return SkewPoly(c.field(), std::move(v));
}

KElement SkewPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : KElement::zero(field_);
}

const KElement& SkewPoly::lead() const {
    if (c_.empty()) throw std::domain_error("zero twisted polynomial has no leading coefficient");
    return c_.back();
}

SkewPoly SkewPoly::operator+(const SkewPoly& rhs) const {
    check_same_field(rhs);
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    std::vector<KElement> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + rhs.coeff(i));
    return SkewPoly(field_, std::move(r));
}

SkewPoly SkewPoly::operator-(const SkewPoly& rhs) const {
    check_same_field(rhs);
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    std::vector<KElement> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) - rhs.coeff(i));
    return SkewPoly(field_, std::move(r));
}

SkewPoly SkewPoly::operator-() const {
    std::vector<KElement> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(-c);
    return SkewPoly(field_, std::move(r));
}

SkewPoly SkewPoly::operator*(const SkewPoly& rhs) const {
    check_same_field(rhs);
    if (c_.empty() || rhs.c_.empty()) return SkewPoly(field_);
    std::vector<KElement> r(c_.size() + rhs.c_.size() - 1, KElement::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) {
            if (rhs.c_[j].is_zero()) continue;
            // tau^i x = x^(q^i) tau^i
            r[i + j] = r[i + j] + c_[i] * rhs.c_[j].frobenius(static_cast<unsigned>(i));
        }
    }
    return SkewPoly(field_, std::move(r));
}

SkewPoly SkewPoly::scaled_left(const KElement& x) const {
    if (x.is_zero()) return SkewPoly(field_);
    std::vector<KElement> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(x * c);
    return SkewPoly(field_, std::move(r));
}

SkewPoly SkewPoly::tau_shifted(unsigned k) const {
    if (k == 0 || is_zero()) return *this;
    std::vector<KElement> r(k, KElement::zero(field_));
    for (const auto& c : c_) r.push_back(c.frobenius(k));
    return SkewPoly(field_, std::move(r));
}

KElement SkewPoly::apply(const KElement& b) const {
    KElement acc = KElement::zero(field_);
    KElement bq = b;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) bq = bq.frobenius(1);
        if (!c_[i].is_zero()) acc = acc + c_[i] * bq;
    }
    return acc;
}

bool SkewPoly::operator==(const SkewPoly& rhs) const {
    return *field_ == *rhs.field_ && c_ == rhs.c_;
}

std::string SkewPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += "(" + c_[i].str() + ")";
        } else {
            if (!c_[i].is_one()) out += "(" + c_[i].str() + ")*";
            out += "tau";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace drx
