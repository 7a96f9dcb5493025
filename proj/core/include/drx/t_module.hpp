#ifndef DRX_T_MODULE_HPP
#define DRX_T_MODULE_HPP

#include "drx/skew_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drx {

/// Polynomial in t over F_q (the operand of Phi, delta and the t-actions).
class TPoly {
public:
    explicit TPoly(FqPtr field) : field_(std::move(field)) {}
    TPoly(FqPtr field, std::vector<FqElem> coeffs);

    static TPoly t(const FqPtr& f) { return TPoly(f, {f->zero(), f->one()}); }
    static TPoly constant(const FqElem& c);
    static TPoly one(const FqPtr& f) { return constant(f->one()); }

    const FqPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    FqElem coeff(std::size_t i) const;

    TPoly operator+(const TPoly& rhs) const;
    TPoly operator*(const TPoly& rhs) const;

    bool operator==(const TPoly& rhs) const;
    std::string str() const;

private:
    FqPtr field_;
    std::vector<FqElem> c_;

    void strip();
};

/// A t-module presented by its dimension and the single matrix Phi(t).
/// Construction checks the tangent condition: the constant term must be
/// theta*I + N with N nilpotent.
class TModule {
public:
    TModule(std::size_t dim, SkewMatrix phi_t);

    std::size_t dim() const noexcept { return dim_; }
    const SkewMatrix& phi_t() const noexcept { return phi_t_; }
    const FqPtr& field() const noexcept { return phi_t_.field(); }

    bool operator==(const TModule& rhs) const {
        return dim_ == rhs.dim_ && phi_t_ == rhs.phi_t_;
    }
    bool operator!=(const TModule& rhs) const { return !(*this == rhs); }

private:
    std::size_t dim_;
    SkewMatrix phi_t_;
};

/// Rank-r Drinfeld module Phi(t) = theta + a_1 tau + ... + a_r tau^r, a_r != 0.
class DrinfeldModule {
public:
    const TModule& underlying() const noexcept { return under_; }
    std::size_t rank() const noexcept { return a_.size(); }
    const std::vector<KElement>& coeffs() const noexcept { return a_; }
    const KElement& a(std::size_t i) const { return a_.at(i - 1); }   // 1-based
    const FqPtr& field() const noexcept { return under_.field(); }
    const SkewPoly& phi_t() const { return under_.phi_t().at(0, 0); }

    friend DrinfeldModule make_drinfeld(std::vector<KElement> coeffs);

private:
    DrinfeldModule(TModule under, std::vector<KElement> a)
        : under_(std::move(under)), a_(std::move(a)) {}

    TModule under_;
    std::vector<KElement> a_;
};

/// Throws std::invalid_argument("not a Drinfeld module") on an empty list or
/// zero top coefficient.
DrinfeldModule make_drinfeld(std::vector<KElement> coeffs);

/// The Carlitz module C(t) = theta + tau over the given field.
DrinfeldModule carlitz(const FqPtr& f);

/// n-th Carlitz tensor power: theta*I_n + N_n + E_n tau (superdiagonal ones,
/// tau in the bottom-left corner).
TModule carlitz_tensor(const FqPtr& f, std::size_t n);

/// Phi(a) by Horner evaluation; a ring homomorphism in a.
SkewMatrix phi_eval(const TModule& e, const TPoly& a);

/// Whether beta intertwines the two presentations: beta Phi_E(t) = Phi_F(t) beta.
/// Checking at t suffices because t generates F_q[t].
bool is_morphism(const SkewMatrix& beta, const TModule& e, const TModule& f);

/// Validated morphism of t-modules.
class TModuleMorphism {
public:
    TModuleMorphism(TModule source, TModule target, SkewMatrix beta);

    const TModule& source() const noexcept { return source_; }
    const TModule& target() const noexcept { return target_; }
    const SkewMatrix& beta() const noexcept { return beta_; }

private:
    TModule source_, target_;
    SkewMatrix beta_;
};

/// Tangent action: the constant term theta*I + N of Phi(t).
KMatrix lie(const TModule& e);

struct Weight {
    long num;
    long den;
    bool operator==(const Weight& o) const { return num * o.den == o.num * den; }
};

/// wt = dim/rank for the two families with known rank (Drinfeld presentations
/// and Carlitz tensor powers); nullopt otherwise.
std::optional<Weight> weight(const TModule& e);

} // namespace drx

#endif
