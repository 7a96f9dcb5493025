#ifndef DRX_BIDERIVATION_HPP
#define DRX_BIDERIVATION_HPP

#include "drx/t_module.hpp"

namespace drx {

/// Biderivation delta in Der(Phi, Psi), determined by the single value
/// delta(t); values at other polynomials come from the cocycle rule
/// delta(ab) = Psi(a) delta(b) + delta(a) Phi(b).
class Biderivation {
public:
    Biderivation(TModule source, TModule target, SkewMatrix value_at_t);

    const TModule& source() const noexcept { return source_; }
    const TModule& target() const noexcept { return target_; }
    const SkewMatrix& value() const noexcept { return value_; }
    const FqPtr& field() const noexcept { return value_.field(); }

    bool operator==(const Biderivation& rhs) const {
        return source_ == rhs.source_ && target_ == rhs.target_ && value_ == rhs.value_;
    }

private:
    TModule source_, target_;
    SkewMatrix value_;
};

/// Witness for an inner biderivation: delta(a) = U Phi(a) - Psi(a) U.
struct InnerWitness {
    SkewMatrix u;
};

/// delta(a) via the cocycle recursion, extended F_q-linearly; delta(c) = 0 for
/// constants c.
SkewMatrix delta_eval(const Biderivation& delta, const TPoly& a);

/// The inner biderivation with witness u: value u Phi(t) - Psi(t) u.
Biderivation inner(const InnerWitness& u, const TModule& e, const TModule& f);

/// The Baer sum on Ext^1 is entrywise addition of values.
Biderivation baer_sum(const Biderivation& d1, const Biderivation& d2);

/// Right action  b * delta: value delta(t) Phi(b).
Biderivation t_action_right(const Biderivation& delta, const TPoly& b);
/// Left action   b * delta: value Psi(b) delta(t). Differs from the right
/// action by the inner biderivation with witness delta(b).
Biderivation t_action_left(const TPoly& b, const Biderivation& delta);

/// Der_0 membership: the constant term of delta(t) vanishes.
bool is_der0(const Biderivation& delta);

/// The extension presentation [[Phi(t), 0], [delta(t), Psi(t)]] of dimension
/// d + e. Throws when the block constant term fails the tangent condition.
TModule extension_matrix(const Biderivation& delta);

/// Conjugates the extension by Theta = [[I, 0], [U, I]] and checks the result
/// is block diagonal; equivalent to delta == inner(u) but computed through the
/// conjugation identity as an independent route.
bool split_check(const Biderivation& delta, const InnerWitness& u);

} // namespace drx

#endif
