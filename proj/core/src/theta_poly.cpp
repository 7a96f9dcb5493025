#include "drx/theta_poly.hpp"
#include "drx/errors.hpp"

#include <stdexcept>

namespace drx {

namespace {

// m = 1 hot paths work on raw residues; FqElem's per-element storage is too
// heavy for the inner loops of multiplication and division
std::vector<std::uint64_t> raw_residues(const std::vector<FqElem>& c) {
    std::vector<std::uint64_t> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].coeffs()[0];
    return out;
}

std::vector<FqElem> wrap_residues(const FqPtr& f, const std::vector<std::uint64_t>& r) {
    std::vector<FqElem> out;
    out.reserve(r.size());
    for (std::uint64_t v : r) out.emplace_back(f, std::vector<std::uint32_t>{
                                                      static_cast<std::uint32_t>(v)});
    return out;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p),
                 nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return static_cast<std::uint64_t>((t % static_cast<std::int64_t>(p) +
                                       static_cast<std::int64_t>(p)) %
                                      static_cast<std::int64_t>(p));
}

} // namespace

ThetaPoly::ThetaPoly(FqPtr field, std::vector<FqElem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (*c.field() != *field_) throw std::invalid_argument("coefficient from wrong field");
    strip();
    check_degree_guard();
}

void ThetaPoly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void ThetaPoly::check_same_field(const ThetaPoly& rhs) const {
    if (*field_ != *rhs.field_) throw std::invalid_argument("mixed-field arithmetic in F_q[theta]");
}

void ThetaPoly::check_degree_guard() const {
    long limit = abort_theta_degree();
    if (limit >= 0 && degree() > limit) throw degree_limit_error(degree(), limit);
}

ThetaPoly ThetaPoly::one(const FqPtr& f) { return constant(f->one()); }

ThetaPoly ThetaPoly::theta(const FqPtr& f) {
    return ThetaPoly(f, {f->zero(), f->one()});
}

ThetaPoly ThetaPoly::constant(const FqElem& c) {
    if (c.is_zero()) return ThetaPoly(c.field());
    return ThetaPoly(c.field(), {c});
}

ThetaPoly ThetaPoly::monomial(const FqElem& c, std::size_t deg) {
    if (c.is_zero()) return ThetaPoly(c.field());
    std::vector<FqElem> v(deg, c.field()->zero());
    v.push_back(c);
    return ThetaPoly(c.field(), std::move(v));
}

bool ThetaPoly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

const FqElem& ThetaPoly::lead() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
}

FqElem ThetaPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : field_->zero();
}

ThetaPoly ThetaPoly::operator+(const ThetaPoly& rhs) const {
    check_same_field(rhs);
    std::vector<FqElem> r;
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + rhs.coeff(i));
    return ThetaPoly(field_, std::move(r));
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& rhs) const {
    check_same_field(rhs);
    std::vector<FqElem> r;
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) - rhs.coeff(i));
    return ThetaPoly(field_, std::move(r));
}

ThetaPoly ThetaPoly::operator-() const {
    std::vector<FqElem> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(-c);
    return ThetaPoly(field_, std::move(r));
}

ThetaPoly ThetaPoly::operator*(const ThetaPoly& rhs) const {
    check_same_field(rhs);
    if (c_.empty() || rhs.c_.empty()) return ThetaPoly(field_);
    if (field_->m() == 1 && field_->p() < (1u << 15)) {
        const std::uint64_t p = field_->p();
        std::vector<std::uint64_t> a = raw_residues(c_), b = raw_residues(rhs.c_);
        std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
            if ((i & 63u) == 63u)
                for (auto& x : r) x %= p;   // 64 products of size < 2^30 fit easily
        }
        for (auto& x : r) x %= p;
        return ThetaPoly(field_, wrap_residues(field_, r));
    }
    std::vector<FqElem> r(c_.size() + rhs.c_.size() - 1, field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            r[i + j] = r[i + j] + c_[i] * rhs.c_[j];
    }
    return ThetaPoly(field_, std::move(r));
}

ThetaPoly ThetaPoly::scaled(const FqElem& s) const {
    if (s.is_zero()) return ThetaPoly(field_);
    std::vector<FqElem> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(c * s);
    return ThetaPoly(field_, std::move(r));
}

std::pair<ThetaPoly, ThetaPoly> ThetaPoly::divrem(const ThetaPoly& divisor) const {
    check_same_field(divisor);
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (degree() < divisor.degree()) return {ThetaPoly(field_), *this};
    if (field_->m() == 1 && field_->p() < (1u << 15)) {
        const std::uint64_t p = field_->p();
        std::vector<std::uint64_t> r = raw_residues(c_), d = raw_residues(divisor.c_);
        std::vector<std::uint64_t> q(r.size() - d.size() + 1, 0);
        std::uint64_t lead_inv = inv_mod(d.back(), p);
        for (std::size_t top = r.size(); top-- >= d.size();) {
            if (r[top] == 0) continue;
            std::uint64_t f = r[top] * lead_inv % p;
            std::size_t shift = top - (d.size() - 1);
            q[shift] = f;
            for (std::size_t i = 0; i < d.size(); ++i)
                r[shift + i] = (r[shift + i] + p * p - f * d[i]) % p;
        }
        return {ThetaPoly(field_, wrap_residues(field_, q)),
                ThetaPoly(field_, wrap_residues(field_, r))};
    }
    ThetaPoly rem = *this;
    std::vector<FqElem> q(rem.degree() - divisor.degree() + 1, field_->zero());
    FqElem lead_inv = divisor.lead().inverse();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        std::size_t shift = rem.degree() - divisor.degree();
        FqElem f = rem.lead() * lead_inv;
        q[shift] = f;
        std::vector<FqElem> sub(shift, field_->zero());
        for (const auto& c : divisor.c_) sub.push_back(c * f);
        rem = rem - ThetaPoly(field_, std::move(sub));
    }
    return {ThetaPoly(field_, std::move(q)), rem};
}

ThetaPoly ThetaPoly::gcd(ThetaPoly a, ThetaPoly b) {
    while (!b.is_zero()) {
        ThetaPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

ThetaPoly ThetaPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
}

ThetaPoly ThetaPoly::pow(std::uint64_t e) const {
    ThetaPoly acc = one(field_);
    ThetaPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

ThetaPoly ThetaPoly::frobenius(unsigned k) const {
    if (k == 0 || is_zero()) return *this;
    // (sum c_i T^i)^(q^k) = sum c_i T^(i q^k): c_i^q = c_i in F_q
    std::uint64_t step = 1;
    for (unsigned i = 0; i < k; ++i) {
        step *= field_->q();
        long limit = abort_theta_degree();
        if (limit >= 0 &&
            static_cast<std::uint64_t>(degree()) * step > static_cast<std::uint64_t>(limit))
            throw degree_limit_error(static_cast<long>(degree() * step), limit);
    }
    std::vector<FqElem> r(static_cast<std::size_t>(degree()) * step + 1, field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * step] = c_[i];
    return ThetaPoly(field_, std::move(r));
}

bool ThetaPoly::operator==(const ThetaPoly& rhs) const {
    return *field_ == *rhs.field_ && c_ == rhs.c_;
}

std::string ThetaPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        std::string cs = c_[i].str();
        bool composite = cs.find('+') != std::string::npos;
        if (i == 0) {
            out += composite ? "(" + cs + ")" : cs;
        } else {
            if (!c_[i].is_one()) out += (composite ? "(" + cs + ")" : cs) + "*";
            out += "T";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace drx
