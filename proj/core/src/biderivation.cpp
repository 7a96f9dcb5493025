#include "drx/biderivation.hpp"

#include <stdexcept>

namespace drx {

Biderivation::Biderivation(TModule source, TModule target, SkewMatrix value_at_t)
    : source_(std::move(source)), target_(std::move(target)), value_(std::move(value_at_t)) {
    if (value_.rows() != target_.dim() || value_.cols() != source_.dim())
        throw std::invalid_argument("biderivation value must be (target dim) x (source dim)");
    if (*value_.field() != *source_.field() || *value_.field() != *target_.field())
        throw std::invalid_argument("mixed-field biderivation");
}

SkewMatrix delta_eval(const Biderivation& delta, const TPoly& a) {
    const TModule& e = delta.source();
    const TModule& f = delta.target();
    const FqPtr& k = delta.field();
    SkewMatrix acc(k, f.dim(), e.dim());
    if (a.is_zero()) return acc;
    // D_i = delta(t^i): D_0 = 0, D_{i+1} = Psi(t) D_i + V Phi(t)^i
    SkewMatrix d_i(k, f.dim(), e.dim());
    SkewMatrix phi_pow = SkewMatrix::identity(k, e.dim());
    for (int i = 0; i <= a.degree(); ++i) {
        FqElem c = a.coeff(static_cast<std::size_t>(i));
        if (!c.is_zero()) acc = acc + d_i.scaled_left(KElement::from_fq(c));
        if (i < a.degree()) {
            d_i = f.phi_t() * d_i + delta.value() * phi_pow;
            phi_pow = phi_pow * e.phi_t();
        }
    }
    return acc;
}

Biderivation inner(const InnerWitness& u, const TModule& e, const TModule& f) {
    if (u.u.rows() != f.dim() || u.u.cols() != e.dim())
        throw std::invalid_argument("inner witness must be (target dim) x (source dim)");
    return Biderivation(e, f, u.u * e.phi_t() - f.phi_t() * u.u);
}

Biderivation baer_sum(const Biderivation& d1, const Biderivation& d2) {
    if (d1.source() != d2.source() || d1.target() != d2.target())
        throw std::invalid_argument("Baer sum needs the same module pair");
    return Biderivation(d1.source(), d1.target(), d1.value() + d2.value());
}

Biderivation t_action_right(const Biderivation& delta, const TPoly& b) {
    return Biderivation(delta.source(), delta.target(),
                        delta.value() * phi_eval(delta.source(), b));
}

Biderivation t_action_left(const TPoly& b, const Biderivation& delta) {
    return Biderivation(delta.source(), delta.target(),
                        phi_eval(delta.target(), b) * delta.value());
}

bool is_der0(const Biderivation& delta) {
    return delta.value().constant_term().is_zero();
}

TModule extension_matrix(const Biderivation& delta) {
    const TModule& e = delta.source();
    const TModule& f = delta.target();
    std::size_t d = e.dim(), g = f.dim();
    SkewMatrix u(delta.field(), d + g, d + g);
    u.set_block(0, 0, e.phi_t());
    u.set_block(d, 0, delta.value());
    u.set_block(d, d, f.phi_t());
    try {
        return TModule(d + g, std::move(u));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("extension is not a t-module presentation");
    }
}

bool split_check(const Biderivation& delta, const InnerWitness& u) {
    const TModule& e = delta.source();
    const TModule& f = delta.target();
    if (u.u.rows() != f.dim() || u.u.cols() != e.dim())
        throw std::invalid_argument("witness shape mismatch");
    std::size_t d = e.dim(), g = f.dim();
    const FqPtr& k = delta.field();

    SkewMatrix upsilon(k, d + g, d + g);
    upsilon.set_block(0, 0, e.phi_t());
    upsilon.set_block(d, 0, delta.value());
    upsilon.set_block(d, d, f.phi_t());

    SkewMatrix theta_mat = SkewMatrix::identity(k, d + g);
    theta_mat.set_block(d, 0, u.u);
    SkewMatrix theta_inv = SkewMatrix::identity(k, d + g);
    theta_inv.set_block(d, 0, -u.u);

    SkewMatrix conj = theta_inv * upsilon * theta_mat;

    SkewMatrix diag(k, d + g, d + g);
    diag.set_block(0, 0, e.phi_t());
    diag.set_block(d, d, f.phi_t());
    return conj == diag;
}

} // namespace drx
