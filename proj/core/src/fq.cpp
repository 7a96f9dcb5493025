#include "drx/fq.hpp"
#include "drx/errors.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace drx {

namespace {

std::atomic<long> g_abort_deg{10000};

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// F_p[x] helpers on raw coefficient vectors (ascending), entries in [0, p).
void trim(std::vector<std::uint32_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                    const std::vector<std::uint32_t>& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on integers
    long long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long long qq = r / newr;
        std::swap(t -= qq * newt, newt);
        std::swap(r -= qq * newr, newr);
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return static_cast<std::uint32_t>((t % p + p) % p);
}

// a mod b, b nonzero
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& b, std::uint32_t p) {
    trim(a);
    std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = c * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

// gcd with Bezout x: g = gcd(a, b), g = x*a + y*b (y not returned)
void poly_ext_gcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b, std::uint32_t p,
                  std::vector<std::uint32_t>& g, std::vector<std::uint32_t>& x) {
    std::vector<std::uint32_t> x0{1}, x1{};
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a = q*b + r
        std::vector<std::uint32_t> r = a, q;
        std::uint32_t lead_inv = inv_mod_p(b.back(), p);
        q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
        while (r.size() >= b.size() && !r.empty()) {
            std::uint64_t c = static_cast<std::uint64_t>(r.back()) * lead_inv % p;
            std::size_t shift = r.size() - b.size();
            q[shift] = static_cast<std::uint32_t>(c);
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = c * b[i] % p;
                r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + p - sub) % p);
            }
            trim(r);
        }
        // x_new = x0 - q*x1
        std::vector<std::uint32_t> qx = poly_mul(q, x1, p);
        std::vector<std::uint32_t> xn = x0;
        if (xn.size() < qx.size()) xn.resize(qx.size(), 0);
        for (std::size_t i = 0; i < qx.size(); ++i)
            xn[i] = (xn[i] + p - qx[i]) % p;
        trim(xn);
        a = b;
        b = r;
        x0 = x1;
        x1 = xn;
    }
    g = a;
    x = x0;
}

bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    // x^(p^k) mod f via repeated Frobenius; f irreducible of degree m iff
    // x^(p^m) = x mod f and gcd(x^(p^k) - x, f) = 1 for proper divisors k of m.
    std::size_t m = f.size() - 1;
    auto powmod = [&](std::vector<std::uint32_t> base, std::uint64_t e) {
        std::vector<std::uint32_t> acc{1};
        while (e) {
            if (e & 1) acc = poly_mod(poly_mul(acc, base, p), f, p);
            base = poly_mod(poly_mul(base, base, p), f, p);
            e >>= 1;
        }
        return acc;
    };
    std::vector<std::uint32_t> x{0, 1};
    for (std::size_t k = 1; k < m; ++k) {
        if (m % k != 0) continue;
        std::uint64_t e = 1;
        for (std::size_t i = 0; i < k; ++i) e *= p;
        auto xe = powmod(x, e);
        // xe - x
        auto d = xe;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        std::vector<std::uint32_t> g, bez;
        poly_ext_gcd(d, f, p, g, bez);
        if (g.size() != 1) return false;
    }
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < m; ++i) e *= p;
    auto xe = powmod(x, e);
    auto d = xe;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    return d.empty();
}

std::vector<std::uint32_t> builtin_modulus(std::uint32_t p, std::uint32_t m) {
    if (p == 2 && m == 2) return {1, 1, 1};        // g^2 + g + 1
    if (p == 2 && m == 3) return {1, 1, 0, 1};     // g^3 + g + 1
    if (p == 3 && m == 2) return {2, 2, 1};        // g^2 + 2g + 2
    throw std::invalid_argument(
        "no built-in modulus for p=" + std::to_string(p) + ", m=" + std::to_string(m) +
        "; supply an irreducible modulus explicitly");
}

} // namespace

long abort_theta_degree() noexcept { return g_abort_deg.load(std::memory_order_relaxed); }
void set_abort_theta_degree(long limit) noexcept { g_abort_deg.store(limit, std::memory_order_relaxed); }

Fq::Fq(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < m; ++i) q_ *= p;
}

std::shared_ptr<const Fq> Fq::make(std::uint32_t p, std::uint32_t m,
                                   std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (m == 1) {
        modulus.clear();
    } else {
        if (modulus.empty()) modulus = builtin_modulus(p, m);
        for (auto& c : modulus) c %= p;
        if (modulus.size() != m + 1 || modulus.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree m");
        if (!poly_irreducible(modulus, p))
            throw std::invalid_argument("modulus is not irreducible over F_p");
    }
    return std::shared_ptr<const Fq>(new Fq(p, m, std::move(modulus)));
}

FqElem Fq::zero() const {
    return FqElem(shared_from_this(), std::vector<std::uint32_t>(m_, 0));
}

FqElem Fq::one() const { return from_int(1); }

FqElem Fq::from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    std::vector<std::uint32_t> c(m_, 0);
    c[0] = static_cast<std::uint32_t>(r);
    return FqElem(shared_from_this(), std::move(c));
}

FqElem Fq::gen() const {
    if (m_ < 2) throw std::invalid_argument("prime field has no extension generator g");
    std::vector<std::uint32_t> c(m_, 0);
    c[1] = 1;
    return FqElem(shared_from_this(), std::move(c));
}

std::vector<FqElem> Fq::elements() const {
    std::vector<FqElem> out;
    out.reserve(static_cast<std::size_t>(q_));
    std::vector<std::uint32_t> c(m_, 0);
    for (std::uint64_t n = 0; n < q_; ++n) {
        std::uint64_t v = n;
        for (std::uint32_t i = 0; i < m_; ++i) {
            c[i] = static_cast<std::uint32_t>(v % p_);
            v /= p_;
        }
        out.emplace_back(shared_from_this(), c);
    }
    return out;
}

FqElem::FqElem(FqPtr field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    if (c_.size() != field_->m()) throw std::invalid_argument("coefficient vector length != m");
    for (auto& x : c_) x %= field_->p();
}

void FqElem::check_same_field(const FqElem& rhs) const {
    if (*field_ != *rhs.field_) throw std::invalid_argument("mixed-field arithmetic in F_q");
}

bool FqElem::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
}

bool FqElem::is_one() const noexcept {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t x) { return x == 0; });
}

FqElem FqElem::operator+(const FqElem& rhs) const {
    check_same_field(rhs);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + rhs.c_[i]) % field_->p();
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-(const FqElem& rhs) const {
    check_same_field(rhs);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = (c_[i] + field_->p() - rhs.c_[i]) % field_->p();
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-() const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (field_->p() - c_[i]) % field_->p();
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator*(const FqElem& rhs) const {
    check_same_field(rhs);
    const std::uint32_t p = field_->p();
    std::vector<std::uint32_t> prod = poly_mul(c_, rhs.c_, p);
    if (field_->m() > 1 && !prod.empty())
        prod = poly_mod(std::move(prod), field_->modulus(), p);
    prod.resize(field_->m(), 0);
    return FqElem(field_, std::move(prod));
}

FqElem FqElem::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in F_q");
    const std::uint32_t p = field_->p();
    if (field_->m() == 1)
        return FqElem(field_, {inv_mod_p(c_[0], p)});
    std::vector<std::uint32_t> g, x;
    std::vector<std::uint32_t> a = c_;
    trim(a);
    poly_ext_gcd(a, field_->modulus(), p, g, x);
    // g is a nonzero constant; scale x by its inverse
    std::uint32_t s = inv_mod_p(g[0], p);
    for (auto& v : x) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * s % p);
    x = poly_mod(std::move(x), field_->modulus(), p);
    x.resize(field_->m(), 0);
    return FqElem(field_, std::move(x));
}

FqElem FqElem::operator/(const FqElem& rhs) const { return *this * rhs.inverse(); }

FqElem FqElem::pow(std::uint64_t e) const {
    FqElem acc = field_->one();
    FqElem base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool FqElem::operator==(const FqElem& rhs) const {
    return *field_ == *rhs.field_ && c_ == rhs.c_;
}

std::string FqElem::str() const {
    if (field_->m() == 1) return std::to_string(c_[0]);
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += "g";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace drx
