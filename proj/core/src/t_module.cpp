#include "drx/t_module.hpp"

#include <stdexcept>

namespace drx {

TPoly::TPoly(FqPtr field, std::vector<FqElem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (*c.field() != *field_) throw std::invalid_argument("coefficient from wrong field");
    strip();
}

void TPoly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TPoly TPoly::constant(const FqElem& c) {
    if (c.is_zero()) return TPoly(c.field());
    return TPoly(c.field(), {c});
}

FqElem TPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : field_->zero();
}

TPoly TPoly::operator+(const TPoly& rhs) const {
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    std::vector<FqElem> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + rhs.coeff(i));
    return TPoly(field_, std::move(r));
}

TPoly TPoly::operator*(const TPoly& rhs) const {
    if (c_.empty() || rhs.c_.empty()) return TPoly(field_);
    std::vector<FqElem> r(c_.size() + rhs.c_.size() - 1, field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            r[i + j] = r[i + j] + c_[i] * rhs.c_[j];
    return TPoly(field_, std::move(r));
}

bool TPoly::operator==(const TPoly& rhs) const {
    return *field_ == *rhs.field_ && c_ == rhs.c_;
}

std::string TPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += c_[i].str();
        } else {
            if (!c_[i].is_one()) out += c_[i].str() + "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

TModule::TModule(std::size_t dim, SkewMatrix phi_t) : dim_(dim), phi_t_(std::move(phi_t)) {
    if (dim_ == 0) throw std::invalid_argument("t-module dimension must be positive");
    if (phi_t_.rows() != dim_ || phi_t_.cols() != dim_)
        throw std::invalid_argument("Phi(t) must be dim x dim");
    KMatrix n = phi_t_.constant_term() - KMatrix::identity(field(), dim_)
                                             .scaled(KElement::theta(field()));
    if (!n.is_nilpotent())
        throw std::invalid_argument(
            "constant term is not theta*I + nilpotent: not a t-module presentation");
}

DrinfeldModule make_drinfeld(std::vector<KElement> coeffs) {
    if (coeffs.empty() || coeffs.back().is_zero())
        throw std::invalid_argument("not a Drinfeld module");
    const FqPtr& f = coeffs.front().field();
    std::vector<KElement> c;
    c.reserve(coeffs.size() + 1);
    c.push_back(KElement::theta(f));
    for (const auto& a : coeffs) c.push_back(a);
    SkewMatrix phi(f, 1, 1);
    phi.set(0, 0, SkewPoly(f, std::move(c)));
    return DrinfeldModule(TModule(1, std::move(phi)), std::move(coeffs));
}

DrinfeldModule carlitz(const FqPtr& f) {
    return make_drinfeld({KElement::one(f)});
}

TModule carlitz_tensor(const FqPtr& f, std::size_t n) {
    if (n < 1) throw std::invalid_argument("tensor power must be >= 1");
    SkewMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, SkewPoly::theta(f));
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, SkewPoly::one(f));
    m.set(n - 1, 0, m.at(n - 1, 0) + SkewPoly::tau(f));
    return TModule(n, std::move(m));
}

SkewMatrix phi_eval(const TModule& e, const TPoly& a) {
    const FqPtr& f = e.field();
    std::size_t d = e.dim();
    if (a.is_zero()) return SkewMatrix(f, d, d);
    SkewMatrix acc = SkewMatrix::identity(f, d).scaled_left(KElement::from_fq(a.coeff(a.degree())));
    for (int i = a.degree() - 1; i >= 0; --i) {
        acc = acc * e.phi_t();
        FqElem c = a.coeff(static_cast<std::size_t>(i));
        if (!c.is_zero())
            acc = acc + SkewMatrix::identity(f, d).scaled_left(KElement::from_fq(c));
    }
    return acc;
}

bool is_morphism(const SkewMatrix& beta, const TModule& e, const TModule& f) {
    if (beta.rows() != f.dim() || beta.cols() != e.dim())
        throw std::invalid_argument("morphism candidate has shape " +
                                    std::to_string(beta.rows()) + "x" +
                                    std::to_string(beta.cols()) + ", expected " +
                                    std::to_string(f.dim()) + "x" + std::to_string(e.dim()));
    return beta * e.phi_t() == f.phi_t() * beta;
}

TModuleMorphism::TModuleMorphism(TModule source, TModule target, SkewMatrix beta)
    : source_(std::move(source)), target_(std::move(target)), beta_(std::move(beta)) {
    if (!is_morphism(beta_, source_, target_))
        throw std::invalid_argument("beta does not intertwine the presentations");
}

KMatrix lie(const TModule& e) { return e.phi_t().constant_term(); }

std::optional<Weight> weight(const TModule& e) {
    const FqPtr& f = e.field();
    if (e.dim() == 1) {
        const SkewPoly& p = e.phi_t().at(0, 0);
        if (p.degree() >= 1 && p.constant_term() == KElement::theta(f))
            return Weight{1, p.degree()};
        return std::nullopt;
    }
    if (e.phi_t() == carlitz_tensor(f, e.dim()).phi_t())
        return Weight{static_cast<long>(e.dim()), 1};
    return std::nullopt;
}

} // namespace drx
