#ifndef DRX_RAND_HPP
#define DRX_RAND_HPP

#include "drx/t_module.hpp"

#include <cstdint>

namespace drx {

/// splitmix64: deterministic across platforms, which std:: distributions are
/// not. Draws use plain modulo; the bias is irrelevant at these ranges.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    /// Independent stream for trial #i of a seeded suite.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        Rng mix(seed ^ (0x5851f42d4c957f2dull * (trial + 1)));
        mix.next();
        return mix;
    }

private:
    std::uint64_t state_;
};

inline FqElem draw_fq(Rng& rng, const FqPtr& f) {
    std::vector<std::uint32_t> c(f->m());
    for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(f->p()));
    return FqElem(f, std::move(c));
}

inline ThetaPoly draw_theta_poly(Rng& rng, const FqPtr& f, int max_deg) {
    std::vector<FqElem> c;
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg) + 1));
    for (int i = 0; i <= d; ++i) c.push_back(draw_fq(rng, f));
    return ThetaPoly(f, std::move(c));
}

inline ThetaPoly draw_nonzero_theta_poly(Rng& rng, const FqPtr& f, int max_deg) {
    for (;;) {
        ThetaPoly p = draw_theta_poly(rng, f, max_deg);
        if (!p.is_zero()) return p;
    }
}

/// Fractions of theta-polynomials of degree <= max_deg with nonzero denominator.
inline KElement draw_k(Rng& rng, const FqPtr& f, int max_deg = 2) {
    return KElement(draw_theta_poly(rng, f, max_deg), draw_nonzero_theta_poly(rng, f, max_deg));
}

inline KElement draw_nonzero_k(Rng& rng, const FqPtr& f, int max_deg = 2) {
    for (;;) {
        KElement x = draw_k(rng, f, max_deg);
        if (!x.is_zero()) return x;
    }
}

inline SkewPoly draw_skew(Rng& rng, const FqPtr& f, int max_tau_deg, int max_theta_deg = 2) {
    std::vector<KElement> c;
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_tau_deg) + 1));
    for (int i = 0; i <= d; ++i) c.push_back(draw_k(rng, f, max_theta_deg));
    return SkewPoly(f, std::move(c));
}

inline SkewMatrix draw_skew_matrix(Rng& rng, const FqPtr& f, std::size_t rows, std::size_t cols,
                                   int max_tau_deg, int max_theta_deg = 2) {
    SkewMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, draw_skew(rng, f, max_tau_deg, max_theta_deg));
    return m;
}

/// Random rank-r Drinfeld module; the top coefficient is forced nonzero.
inline DrinfeldModule draw_drinfeld(Rng& rng, const FqPtr& f, std::size_t r,
                                    int max_theta_deg = 2) {
    std::vector<KElement> a;
    for (std::size_t i = 0; i + 1 < r; ++i) a.push_back(draw_k(rng, f, max_theta_deg));
    a.push_back(draw_nonzero_k(rng, f, max_theta_deg));
    return make_drinfeld(std::move(a));
}

/// Random t-polynomial of degree <= max_deg.
inline TPoly draw_t_poly(Rng& rng, const FqPtr& f, int max_deg) {
    std::vector<FqElem> c;
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg) + 1));
    for (int i = 0; i <= d; ++i) c.push_back(draw_fq(rng, f));
    return TPoly(f, std::move(c));
}

} // namespace drx

#endif
