#ifndef DRX_EXT_ENGINE_HPP
#define DRX_EXT_ENGINE_HPP

#include "drx/biderivation.hpp"

#include <optional>
#include <vector>

namespace drx {

/// Reduced representative of a class in Ext^1(E, C) for a Drinfeld module E of
/// rank r >= 2: coordinates b_0..b_{r-1} of b_0 + b_1 tau + ... + b_{r-1} tau^(r-1).
struct ExtClassEC {
    DrinfeldModule context;
    std::vector<KElement> coords;   // size r

    bool operator==(const ExtClassEC& o) const { return coords == o.coords; }
    SkewPoly value() const;         // the representative as an element of K{tau}
};

/// Reduced representative of a class in Ext^1(E^dual, C): coordinates
/// u_1..u_(r-2) in K plus the pair (c, d) with u_(r-1) = c + d tau.
struct ExtClassDualC {
    DrinfeldModule context;
    std::vector<KElement> coords;   // size r: u_1..u_(r-2), c, d

    bool operator==(const ExtClassDualC& o) const { return coords == o.coords; }
    SkewMatrix value() const;       // 1 x (r-1) row vector over K{tau}
};

/// Reduced representative of a class in Ext^1(C^m, C^n), n > m: the first
/// column of the constant matrix supported on column 1.
struct ExtClassCtens {
    std::size_t m, n;
    FqPtr field;
    std::vector<KElement> coords;   // size n

    bool operator==(const ExtClassCtens& o) const { return coords == o.coords; }
    SkewMatrix value() const;       // n x m matrix over K{tau}
};

struct ReducedEC {
    ExtClassEC cls;
    InnerWitness witness;
};
struct ReducedDualC {
    ExtClassDualC cls;
    InnerWitness witness;
};
struct ReducedCtens {
    ExtClassCtens cls;
    InnerWitness witness;
};

/// Canonical reduction of a biderivation from E to C by repeated subtraction
/// of inner values, lowering the tau-degree below r. The returned class
/// differs from the input by inner(witness); this identity is re-checked
/// before returning.
ReducedEC reduce_vs_carlitz(const DrinfeldModule& e, const Biderivation& delta);

struct DualTModule {
    TModule pi;     // t-module structure on Ext^1(E, C), dimension r
    TModule dual;   // E^dual = Ext^1_0(E, C), the lower-right (r-1) x (r-1) block
};

/// The t-module structure on Ext^1(E, C), computed column-by-column by reducing
/// the images of the basis tau^i, then checked against the closed form.
/// Column 1 of pi(t) is (theta, tau, 0, ..., 0)^T.
DualTModule dual_tmodule(const DrinfeldModule& e);

/// Canonical reduction of a biderivation from E^dual to C against the basic
/// inner biderivations, down to degree vector <= (0, ..., 0, 1).
ReducedDualC reduce_dualC(const DrinfeldModule& e, const Biderivation& delta);

/// The t-module structure on Ext^1(E^dual, C): diagonal thetas with the last
/// row (alpha_1, ..., alpha_r). For a_r = 1 the closed form is checked,
/// including alpha_r = Phi(t); for general a_r the biduality check becomes
/// alpha_r = a_r^(-1) Phi(t) a_r.
TModule bidual_tmodule(const DrinfeldModule& e);

/// Canonical reduction of a biderivation from C^m to C^n (n > m): first lowers
/// every entry to a constant grade by grade, then clears columns 2..m.
ReducedCtens reduce_carlitz(const Biderivation& delta);

/// Block presentation of Ext^1(C^m, C^n): C^(n-m)(t) in the top-left, a single
/// 1 in the bottom-left of the top-right block, theta I_m + N_m bottom-right.
TModule carlitz_ext_structure(const FqPtr& f, std::size_t m, std::size_t n);

/// Splitting oracle: a witness U with inner(U) = delta and deg_tau U <= bound,
/// or nullopt. Complete for biderivations into C from a Drinfeld module of
/// rank >= 2 and for Carlitz tensor pairs; for other module pairs the search
/// is a graded best-effort and a verified witness is still exact.
std::optional<InnerWitness> find_splitting(const Biderivation& delta, int degree_bound);

/// Splitting oracle for the dual context (source E^dual, target C), complete
/// up to the degree bound by per-degree back-substitution from the top grade.
std::optional<InnerWitness> find_splitting_dual(const DrinfeldModule& e,
                                                const Biderivation& delta, int degree_bound);

/// Solves the tangent-level inner equation U dPhi(t) - dPsi(t) U = v. Grades
/// >= 1 are always solvable (theta^(q^k) - theta is a unit); the grade-0 part
/// must lie in the image of the nilpotent commutator map, otherwise nullopt.
std::optional<InnerWitness> lie_inner_solve(const TModule& e, const TModule& f,
                                            const SkewMatrix& v);

/// Replaces delta by an equivalent biderivation with vanishing constant term.
/// Throws unsupported_error when the tangent obstruction is nonzero.
Biderivation ext0_projection(const Biderivation& delta);

/// Matrix of the induced map Ext^1(F, C) -> Ext^1(E, C) on reduced
/// coordinates, for a morphism beta: E -> F of equal-rank Drinfeld modules.
/// Contravariant; maps the Der_0 block into the Der_0 block.
SkewMatrix dual_morphism(const DrinfeldModule& e, const DrinfeldModule& f, const SkewPoly& beta);

} // namespace drx

#endif
