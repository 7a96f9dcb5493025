#include <doctest.h>

#include "drx/errors.hpp"
#include "drx/ext_engine.hpp"
#include "drx/parser.hpp"
#include "drx/rand.hpp"

#include <thread>

using namespace drx;

namespace {

Biderivation to_carlitz(const DrinfeldModule& e, const SkewPoly& v) {
    SkewMatrix m(e.field(), 1, 1);
    m.set(0, 0, v);
    return Biderivation(e.underlying(), carlitz(e.field()).underlying(), m);
}

Biderivation dual_to_carlitz(const DrinfeldModule& e, const SkewMatrix& v) {
    return Biderivation(dual_tmodule(e).dual, carlitz(e.field()).underlying(), v);
}

Biderivation ctens(const FqPtr& f, std::size_t m, std::size_t n, const SkewMatrix& v) {
    return Biderivation(carlitz_tensor(f, m), carlitz_tensor(f, n), v);
}

bool coords_zero(const std::vector<KElement>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("reduce_vs_carlitz examples") {
    auto f2 = Fq::make(2);
    DrinfeldModule e = make_drinfeld({KElement::theta(f2), KElement::one(f2)});

    // already reduced: unchanged
    SkewPoly low = parse_skew_poly(f2, "T + tau");
    ReducedEC r0 = reduce_vs_carlitz(e, to_carlitz(e, low));
    CHECK(r0.cls.value() == low);
    CHECK(r0.witness.u.is_zero());

    // q=2, E: theta + theta tau + tau^2, delta(t) = tau^2 -> (1 + theta) tau
    ReducedEC r1 = reduce_vs_carlitz(e, to_carlitz(e, SkewPoly::tau(f2, 2)));
    CHECK(r1.cls.value() == parse_skew_poly(f2, "(1+T)*tau"));

    // inner values reduce to zero
    Rng rng(211);
    for (int trial = 0; trial < 25; ++trial) {
        DrinfeldModule d = draw_drinfeld(rng, f2, 2 + rng.below(3));
        SkewMatrix u(f2, 1, 1);
        u.set(0, 0, draw_skew(rng, f2, 3));
        Biderivation di = inner(InnerWitness{u}, d.underlying(), carlitz(f2).underlying());
        ReducedEC rr = reduce_vs_carlitz(d, di);
        CHECK(coords_zero(rr.cls.coords));
    }

    DrinfeldModule c = carlitz(f2);
    CHECK_THROWS_AS(reduce_vs_carlitz(c, to_carlitz(c, SkewPoly::tau(f2))), unsupported_error);
}

TEST_CASE("reduce_vs_carlitz is idempotent, F_q-linear and sound") {
    struct Plan { FqPtr f; int vdeg; int cdeg; };
    for (auto plan : {Plan{Fq::make(2), 6, 2}, Plan{Fq::make(3), 5, 1}, Plan{Fq::make(2, 2), 4, 1}}) {
        const FqPtr& fq = plan.f;
        Rng rng(223 + fq->q());
        for (int trial = 0; trial < 20; ++trial) {
            DrinfeldModule e = draw_drinfeld(rng, fq, 2 + rng.below(3), plan.cdeg);
            SkewPoly v1 = draw_skew(rng, fq, plan.vdeg, plan.cdeg);
            SkewPoly v2 = draw_skew(rng, fq, plan.vdeg, plan.cdeg);
            ReducedEC r1 = reduce_vs_carlitz(e, to_carlitz(e, v1));
            ReducedEC r2 = reduce_vs_carlitz(e, to_carlitz(e, v2));

            // idempotence
            ReducedEC rr = reduce_vs_carlitz(e, to_carlitz(e, r1.cls.value()));
            CHECK(rr.cls == r1.cls);
            CHECK(rr.witness.u.is_zero());

            // F_q-linearity
            FqElem c = draw_fq(rng, fq);
            ReducedEC rsum = reduce_vs_carlitz(e, to_carlitz(e, v1 + v2));
            CHECK(rsum.cls.value() == r1.cls.value() + r2.cls.value());
            ReducedEC rscale =
                reduce_vs_carlitz(e, to_carlitz(e, v1.scaled_left(KElement::from_fq(c))));
            CHECK(rscale.cls.value() == r1.cls.value().scaled_left(KElement::from_fq(c)));

            // soundness is asserted inside; also re-check the witness identity here
            SkewMatrix diff = to_carlitz(e, v1).value() - to_carlitz(e, r1.cls.value()).value();
            CHECK(diff ==
                  inner(r1.witness, e.underlying(), carlitz(fq).underlying()).value());
        }
    }
}

TEST_CASE("dual_tmodule closed form") {
    auto f2 = Fq::make(2);

    // r = 3, a_3 = 1: Pi(t) = [[th,0,0],[tau,th,-a1 tau + tau^2],[0,tau,th-a2 tau]]
    KElement a1 = parse_k_element(f2, "T+1"), a2 = parse_k_element(f2, "T");
    DrinfeldModule e3 = make_drinfeld({a1, a2, KElement::one(f2)});
    DualTModule d3 = dual_tmodule(e3);
    CHECK(d3.pi.dim() == 3);
    CHECK(d3.pi.phi_t().at(0, 0) == SkewPoly::theta(f2));
    CHECK(d3.pi.phi_t().at(0, 1).is_zero());
    CHECK(d3.pi.phi_t().at(0, 2).is_zero());
    CHECK(d3.pi.phi_t().at(1, 0) == SkewPoly::tau(f2));
    CHECK(d3.pi.phi_t().at(1, 2) ==
          SkewPoly::monomial(-a1, 1) + SkewPoly::tau(f2, 2));
    CHECK(d3.pi.phi_t().at(2, 1) == SkewPoly::tau(f2));
    CHECK(d3.pi.phi_t().at(2, 2) == SkewPoly::theta(f2) + SkewPoly::monomial(-a2, 1));

    // column 1 is (theta, tau, 0, ..., 0)^T
    CHECK(d3.pi.phi_t().at(2, 0).is_zero());

    // r = 2 merged form: [[th, 0], [tau, th - (a1/a2) tau + a2^{-q} tau^2]]
    KElement b1 = parse_k_element(f2, "T"), b2 = parse_k_element(f2, "T+1");
    DrinfeldModule e2 = make_drinfeld({b1, b2});
    DualTModule d2 = dual_tmodule(e2);
    CHECK(d2.pi.phi_t().at(0, 0) == SkewPoly::theta(f2));
    CHECK(d2.pi.phi_t().at(0, 1).is_zero());
    CHECK(d2.pi.phi_t().at(1, 0) == SkewPoly::tau(f2));
    CHECK(d2.pi.phi_t().at(1, 1) ==
          SkewPoly::theta(f2) + SkewPoly::monomial(-(b1 / b2), 1) +
              SkewPoly::monomial(b2.frobenius(1).inverse(), 2));

    // E^dual for r=2, a_2 = 1 is theta - a_1 tau + tau^2
    DrinfeldModule e2m = make_drinfeld({b1, KElement::one(f2)});
    DualTModule d2m = dual_tmodule(e2m);
    CHECK(d2m.dual.dim() == 1);
    CHECK(d2m.dual.phi_t().at(0, 0) ==
          SkewPoly::theta(f2) + SkewPoly::monomial(-b1, 1) + SkewPoly::tau(f2, 2));

    CHECK_THROWS_AS(dual_tmodule(carlitz(f2)), unsupported_error);
}

TEST_CASE("dual_tmodule output is a valid presentation with the exact-sequence shape") {
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(307 + fq->q());
        for (int trial = 0; trial < 10; ++trial) {
            DrinfeldModule e = draw_drinfeld(rng, fq, 2 + rng.below(3));
            DualTModule d = dual_tmodule(e);
            CHECK(d.pi.phi_t().at(0, 0) == SkewPoly::theta(fq));
            CHECK(d.pi.phi_t().at(1, 0) == SkewPoly::tau(fq));
            for (std::size_t i = 2; i < e.rank(); ++i) CHECK(d.pi.phi_t().at(i, 0).is_zero());
            for (std::size_t j = 1; j < e.rank(); ++j) CHECK(d.pi.phi_t().at(0, j).is_zero());
            // lower-right block is the dual presentation
            CHECK(d.pi.phi_t().block(1, 1, e.rank() - 1, e.rank() - 1) == d.dual.phi_t());
        }
    }
}

TEST_CASE("reduce_dualC examples") {
    auto f2 = Fq::make(2);
    // r=2, q=2: value tau^2 -> (a_1 + 1) tau  (a_2 = 1)
    KElement a1 = parse_k_element(f2, "T");
    DrinfeldModule e = make_drinfeld({a1, KElement::one(f2)});
    SkewMatrix v(f2, 1, 1);
    v.set(0, 0, SkewPoly::tau(f2, 2));
    ReducedDualC r = reduce_dualC(e, dual_to_carlitz(e, v));
    REQUIRE(r.cls.coords.size() == 2);
    CHECK(r.cls.coords[0].is_zero());
    CHECK(r.cls.coords[1] == a1 + KElement::one(f2));

    // already reduced stays put
    SkewMatrix low(f2, 1, 1);
    low.set(0, 0, parse_skew_poly(f2, "T + (T+1)*tau"));
    ReducedDualC r2 = reduce_dualC(e, dual_to_carlitz(e, low));
    CHECK(r2.cls.coords[0] == KElement::theta(f2));
    CHECK(r2.cls.coords[1] == a1 + KElement::one(f2));
    CHECK(r2.witness.u.is_zero());
}

TEST_CASE("reduce_dualC kills inner values and is linear") {
    struct Plan { FqPtr f; std::size_t rmax; int vdeg; };
    for (auto plan : {Plan{Fq::make(2), 4, 3}, Plan{Fq::make(3), 3, 2}}) {
        const FqPtr& fq = plan.f;
        Rng rng(311 + fq->q());
        for (int trial = 0; trial < 15; ++trial) {
            std::size_t rk = 2 + rng.below(plan.rmax - 1);
            DrinfeldModule e = draw_drinfeld(rng, fq, rk, 1);
            TModule psi = dual_tmodule(e).dual;
            TModule cu = carlitz(fq).underlying();

            SkewMatrix u = draw_skew_matrix(rng, fq, 1, rk - 1, 2, 1);
            ReducedDualC rr = reduce_dualC(e, inner(InnerWitness{u}, psi, cu));
            CHECK(coords_zero(rr.cls.coords));

            SkewMatrix v1 = draw_skew_matrix(rng, fq, 1, rk - 1, plan.vdeg, 1);
            SkewMatrix v2 = draw_skew_matrix(rng, fq, 1, rk - 1, plan.vdeg, 1);
            ReducedDualC r1 = reduce_dualC(e, dual_to_carlitz(e, v1));
            ReducedDualC r2 = reduce_dualC(e, dual_to_carlitz(e, v2));
            ReducedDualC rsum = reduce_dualC(e, dual_to_carlitz(e, v1 + v2));
            for (std::size_t i = 0; i < rk; ++i)
                CHECK(rsum.cls.coords[i] == r1.cls.coords[i] + r2.cls.coords[i]);

            // idempotence
            ReducedDualC rfix = reduce_dualC(e, dual_to_carlitz(e, r1.cls.value()));
            CHECK(rfix.cls == r1.cls);
        }
    }
}

TEST_CASE("bidual closed form") {
    auto f2 = Fq::make(2);
    // r=2, a_2=1, a_1 = theta: Xi = [[th, 0], [tau, th + a1 tau + tau^2]]
    KElement a1 = KElement::theta(f2);
    DrinfeldModule e = make_drinfeld({a1, KElement::one(f2)});
    TModule xi = bidual_tmodule(e);
    CHECK(xi.phi_t().at(0, 0) == SkewPoly::theta(f2));
    CHECK(xi.phi_t().at(0, 1).is_zero());
    CHECK(xi.phi_t().at(1, 0) == SkewPoly::tau(f2));
    CHECK(xi.phi_t().at(1, 1) == e.phi_t());

    // r=3, a_3=1: alpha_1 = a_3 tau^2 + a_2 tau, alpha_2 = a_3 tau, alpha_3 = Phi(t);
    // the coefficients are untwisted, matching the image of b e_1 which carries
    // b^(q^2) a_3 + b^q a_2 on the e_r coordinate
    auto f3 = Fq::make(3);
    KElement b1 = parse_k_element(f3, "T+2"), b2 = parse_k_element(f3, "2*T");
    DrinfeldModule e3 = make_drinfeld({b1, b2, KElement::one(f3)});
    TModule xi3 = bidual_tmodule(e3);
    SkewPoly alpha1 = SkewPoly::tau(f3, 2) + SkewPoly::monomial(b2, 1);
    CHECK(xi3.phi_t().at(2, 0) == alpha1);
    CHECK(xi3.phi_t().at(2, 1) == SkewPoly::tau(f3));
    CHECK(xi3.phi_t().at(2, 2) == e3.phi_t());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j)
                CHECK(xi3.phi_t().at(i, j) == SkewPoly::theta(f3));
            else
                CHECK(xi3.phi_t().at(i, j).is_zero());
        }

    // alpha_r = Phi(t) for random monic modules of any rank
    Rng rng(331);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t rk = 2 + rng.below(3);
        std::vector<KElement> a;
        for (std::size_t i = 0; i + 1 < rk; ++i) a.push_back(draw_k(rng, f2));
        a.push_back(KElement::one(f2));
        DrinfeldModule em = make_drinfeld(a);
        CHECK(bidual_tmodule(em).phi_t().at(rk - 1, rk - 1) == em.phi_t());
    }

    // general a_r: biduality up to conjugation by a_r
    Rng rng2(337);
    for (int trial = 0; trial < 10; ++trial) {
        DrinfeldModule em = draw_drinfeld(rng2, f3, 2 + rng2.below(2));
        TModule x = bidual_tmodule(em);
        SkewPoly conj = SkewPoly::constant(em.a(em.rank()).inverse()) * em.phi_t() *
                        SkewPoly::constant(em.a(em.rank()));
        CHECK(x.phi_t().at(em.rank() - 1, em.rank() - 1) == conj);
    }
}

TEST_CASE("reduce_carlitz examples") {
    auto f2 = Fq::make(2);
    // m=1, n=2: value (0; tau) -> (1; 0)
    SkewMatrix v(f2, 2, 1);
    v.set(1, 0, SkewPoly::tau(f2));
    ReducedCtens r = reduce_carlitz(ctens(f2, 1, 2, v));
    CHECK(r.cls.coords[0] == KElement::one(f2));
    CHECK(r.cls.coords[1].is_zero());

    // already in G: unchanged
    SkewMatrix g(f2, 2, 1);
    g.set(0, 0, SkewPoly::theta(f2));
    g.set(1, 0, SkewPoly::one(f2));
    ReducedCtens r2 = reduce_carlitz(ctens(f2, 1, 2, g));
    CHECK(r2.cls.coords[0] == KElement::theta(f2));
    CHECK(r2.cls.coords[1] == KElement::one(f2));
    CHECK(r2.witness.u.is_zero());

    // n <= m is rejected with the theory error
    SkewMatrix sq(f2, 2, 2);
    CHECK_THROWS_AS(
        Biderivation d(carlitz_tensor(f2, 2), carlitz_tensor(f2, 2), sq);
        reduce_carlitz(d), unsupported_error);
}

TEST_CASE("reduce_carlitz hard cells: top-right and bottom-right corners") {
    // the corner entries are the ones an entrywise sweep cannot clear; sizes
    // stay at desk scale because the class computation twists coefficients up
    // to q^(n + deg)
    struct Plan {
        FqPtr f;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        int dmax;
    };
    std::vector<Plan> plans = {
        {Fq::make(2), {{2, 3}, {2, 4}, {3, 4}, {3, 5}}, 3},
        {Fq::make(3), {{2, 3}, {1, 3}}, 2},
    };
    for (const auto& plan : plans) {
        const FqPtr& fq = plan.f;
        Rng rng(347 + fq->q());
        for (auto [m, n] : plan.pairs) {
            for (int d = 1; d <= plan.dmax; ++d) {
                KElement c = draw_nonzero_k(rng, fq, 1);
                SkewMatrix v(fq, n, m);
                v.set(0, m - 1, SkewPoly::monomial(c, static_cast<std::size_t>(d)));
                ReducedCtens r = reduce_carlitz(ctens(fq, m, n, v));
                // soundness is checked inside; the class must be reproducible
                SkewMatrix red = r.cls.value();
                ReducedCtens r2 = reduce_carlitz(ctens(fq, m, n, red));
                CHECK(r2.cls == r.cls);
                CHECK(r2.witness.u.is_zero());

                SkewMatrix w(fq, n, m);
                w.set(n - 1, m - 1, SkewPoly::monomial(c, static_cast<std::size_t>(d)));
                CHECK_NOTHROW(reduce_carlitz(ctens(fq, m, n, w)));
            }
        }
    }
}

TEST_CASE("reduce_carlitz kills inner values, linear, idempotent") {
    struct Plan {
        FqPtr f;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        int wdeg;
    };
    std::vector<Plan> plans = {
        {Fq::make(2), {{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 4}}, 2},
        {Fq::make(3), {{1, 2}, {1, 3}, {2, 3}}, 1},
    };
    for (const auto& plan : plans) {
        const FqPtr& fq = plan.f;
        Rng rng(353 + fq->q());
        for (auto [m, n] : plan.pairs) {
            TModule cm = carlitz_tensor(fq, m), cn = carlitz_tensor(fq, n);
            for (int trial = 0; trial < 4; ++trial) {
                SkewMatrix u = draw_skew_matrix(rng, fq, n, m, plan.wdeg, 1);
                ReducedCtens rr = reduce_carlitz(inner(InnerWitness{u}, cm, cn));
                CHECK(coords_zero(rr.cls.coords));

                SkewMatrix v1 = draw_skew_matrix(rng, fq, n, m, plan.wdeg, 1);
                SkewMatrix v2 = draw_skew_matrix(rng, fq, n, m, plan.wdeg, 1);
                ReducedCtens r1 = reduce_carlitz(ctens(fq, m, n, v1));
                ReducedCtens r2 = reduce_carlitz(ctens(fq, m, n, v2));
                ReducedCtens rsum = reduce_carlitz(ctens(fq, m, n, v1 + v2));
                for (std::size_t i = 0; i < n; ++i)
                    CHECK(rsum.cls.coords[i] == r1.cls.coords[i] + r2.cls.coords[i]);

                ReducedCtens rfix = reduce_carlitz(ctens(fq, m, n, r1.cls.value()));
                CHECK(rfix.cls == r1.cls);
            }
        }
    }
}

TEST_CASE("carlitz_ext_structure block displays") {
    auto f2 = Fq::make(2);

    TModule p12 = carlitz_ext_structure(f2, 1, 2);
    CHECK(p12.phi_t().at(0, 0) == SkewPoly::theta(f2) + SkewPoly::tau(f2));
    CHECK(p12.phi_t().at(0, 1) == SkewPoly::one(f2));
    CHECK(p12.phi_t().at(1, 0).is_zero());
    CHECK(p12.phi_t().at(1, 1) == SkewPoly::theta(f2));

    TModule p23 = carlitz_ext_structure(f2, 2, 3);
    CHECK(p23.phi_t().at(0, 0) == SkewPoly::theta(f2) + SkewPoly::tau(f2));
    CHECK(p23.phi_t().at(0, 1) == SkewPoly::one(f2));
    CHECK(p23.phi_t().at(1, 2) == SkewPoly::one(f2));
    CHECK(p23.phi_t().at(1, 1) == SkewPoly::theta(f2));
    CHECK(p23.phi_t().at(2, 2) == SkewPoly::theta(f2));
    CHECK(p23.phi_t().at(2, 0).is_zero());

    TModule p13 = carlitz_ext_structure(f2, 1, 3);
    CHECK(p13.phi_t().at(0, 0) == SkewPoly::theta(f2));
    CHECK(p13.phi_t().at(1, 0) == SkewPoly::tau(f2));
    CHECK(p13.phi_t().at(0, 1) == SkewPoly::one(f2));
    CHECK(p13.phi_t().at(1, 2) == SkewPoly::one(f2));
    CHECK(p13.phi_t().at(2, 2) == SkewPoly::theta(f2));

    CHECK_THROWS_AS(carlitz_ext_structure(f2, 2, 2), unsupported_error);
    CHECK_THROWS_AS(carlitz_ext_structure(f2, 3, 2), unsupported_error);
}

TEST_CASE("carlitz_ext_structure agrees with the concrete t-action") {
    // t * (c e_i) reduced by reduce_carlitz must match the Pi(t) column applied to c
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(359 + fq->q());
        for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 3}, {2, 5}}) {
            TModule cm = carlitz_tensor(fq, m), cn = carlitz_tensor(fq, n);
            TModule pi = carlitz_ext_structure(fq, m, n);
            for (int trial = 0; trial < 8; ++trial) {
                KElement c = draw_k(rng, fq, 1);
                std::size_t i = rng.below(n);
                SkewMatrix rep(fq, n, m);
                rep.set(i, 0, SkewPoly::constant(c));
                // left t-action on the class
                Biderivation acted =
                    t_action_left(TPoly::t(fq), Biderivation(cm, cn, rep));
                ReducedCtens red = reduce_carlitz(acted);
                for (std::size_t j = 0; j < n; ++j)
                    CHECK(red.cls.coords[j] == pi.phi_t().at(j, i).apply(c));
            }
        }
    }
}

TEST_CASE("find_splitting") {
    auto f2 = Fq::make(2);
    DrinfeldModule e = make_drinfeld({KElement::theta(f2), KElement::one(f2)});
    TModule cu = carlitz(f2).underlying();

    // zero has the zero witness
    auto w0 = find_splitting(to_carlitz(e, SkewPoly::zero(f2)), 5);
    REQUIRE(w0.has_value());
    CHECK(w0->u.is_zero());

    // inner values are recognized with an exact witness
    Rng rng(367);
    for (int trial = 0; trial < 20; ++trial) {
        DrinfeldModule d = draw_drinfeld(rng, f2, 2 + rng.below(3));
        SkewMatrix u(f2, 1, 1);
        u.set(0, 0, draw_skew(rng, f2, 3));
        Biderivation di = inner(InnerWitness{u}, d.underlying(), cu);
        auto w = find_splitting(di, 5);
        REQUIRE(w.has_value());
        CHECK(inner(*w, d.underlying(), cu).value() == di.value());
    }

    // E rank 2, delta(t) = tau, bound 5: no witness exists
    CHECK_FALSE(find_splitting(to_carlitz(e, SkewPoly::tau(f2)), 5).has_value());
}

TEST_CASE("find_splitting distinguishes distinct reduced representatives") {
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(373 + fq->q());
        for (std::size_t rk = 2; rk <= 3; ++rk) {
            for (int trial = 0; trial < 10; ++trial) {
                DrinfeldModule e = draw_drinfeld(rng, fq, rk);
                SkewPoly v1 = draw_skew(rng, fq, static_cast<int>(rk) - 1);
                SkewPoly v2 = draw_skew(rng, fq, static_cast<int>(rk) - 1);
                if (v1 == v2) continue;
                Biderivation diff = to_carlitz(e, v1 - v2);
                CHECK_FALSE(find_splitting(diff, static_cast<int>(rk) + 3).has_value());
            }
        }
    }
}

TEST_CASE("find_splitting for carlitz tensor pairs") {
    auto f2 = Fq::make(2);
    Rng rng(379);
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 3}}) {
        TModule cm = carlitz_tensor(f2, m), cn = carlitz_tensor(f2, n);
        for (int trial = 0; trial < 8; ++trial) {
            SkewMatrix u = draw_skew_matrix(rng, f2, n, m, 2, 1);
            Biderivation di = inner(InnerWitness{u}, cm, cn);
            auto w = find_splitting(di, 6);
            REQUIRE(w.has_value());
            CHECK(inner(*w, cm, cn).value() == di.value());
        }
        // a nonzero column-1 constant is a nonzero class
        SkewMatrix g(f2, n, m);
        g.set(0, 0, SkewPoly::one(f2));
        CHECK_FALSE(find_splitting(Biderivation(cm, cn, g), 6).has_value());
    }
}

TEST_CASE("find_splitting_dual") {
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(383 + fq->q());
        for (std::size_t rk = 2; rk <= 4; ++rk) {
            DrinfeldModule e = draw_drinfeld(rng, fq, rk);
            TModule psi = dual_tmodule(e).dual;
            TModule cu = carlitz(fq).underlying();
            for (int trial = 0; trial < 8; ++trial) {
                SkewMatrix u = draw_skew_matrix(rng, fq, 1, rk - 1, 2);
                Biderivation di = inner(InnerWitness{u}, psi, cu);
                auto w = find_splitting_dual(e, di, 6);
                REQUIRE(w.has_value());
                CHECK(inner(*w, psi, cu).value() == di.value());
            }
            // distinct reduced representatives never split
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<KElement> c1, c2;
                for (std::size_t i = 0; i < rk; ++i) {
                    c1.push_back(draw_k(rng, fq, 1));
                    c2.push_back(draw_k(rng, fq, 1));
                }
                if (c1 == c2) continue;
                ExtClassDualC x1{e, c1}, x2{e, c2};
                Biderivation diff(psi, cu, x1.value() - x2.value());
                CHECK_FALSE(find_splitting_dual(e, diff, static_cast<int>(rk) + 3).has_value());
            }
        }
    }
}

TEST_CASE("lie_inner_solve") {
    auto f2 = Fq::make(2);
    DrinfeldModule c = carlitz(f2);
    const TModule& cu = c.underlying();

    // d = e = 1: v = x tau^k, k >= 1 has witness (x / (theta^{q^k} - theta)) tau^k
    Rng rng(389);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned k = 1 + static_cast<unsigned>(rng.below(5));
        KElement x = draw_nonzero_k(rng, f2);
        SkewMatrix v(f2, 1, 1);
        v.set(0, 0, SkewPoly::monomial(x, k));
        auto w = lie_inner_solve(cu, cu, v);
        REQUIRE(w.has_value());
        CHECK(w->u.at(0, 0) == SkewPoly::monomial(x / theta_twist_gap(f2, k), k));
    }

    // v = 0 -> witness 0
    auto w0 = lie_inner_solve(cu, cu, SkewMatrix(f2, 1, 1));
    REQUIRE(w0.has_value());
    CHECK(w0->u.is_zero());

    // nonzero constant term obstructs
    SkewMatrix vc(f2, 1, 1);
    vc.set(0, 0, SkewPoly::one(f2));
    CHECK_FALSE(lie_inner_solve(cu, cu, vc).has_value());

    // higher-dimensional targets: random Der_0 values at the tangent level
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng2(397 + fq->q());
        TModule cm = carlitz_tensor(fq, 2), cn = carlitz_tensor(fq, 3);
        for (int trial = 0; trial < 10; ++trial) {
            SkewMatrix v = draw_skew_matrix(rng2, fq, 3, 2, 3, 1);
            // zero out the constant term so grade 0 is trivially solvable
            KMatrix c0 = v.constant_term();
            v = v - SkewMatrix::from_k(c0);
            auto w = lie_inner_solve(cm, cn, v);
            REQUIRE(w.has_value());
            SkewMatrix check =
                w->u * SkewMatrix::from_k(lie(cm)) - SkewMatrix::from_k(lie(cn)) * w->u;
            CHECK(check == v);
        }
    }
}

TEST_CASE("ext0_projection") {
    auto f2 = Fq::make(2);
    DrinfeldModule c = carlitz(f2);

    Biderivation d0 = to_carlitz(c, SkewPoly::tau(f2));
    CHECK(ext0_projection(d0) == d0);   // already Der_0

    // constants over C = C obstruct at the tangent level
    CHECK_THROWS_AS(ext0_projection(to_carlitz(c, SkewPoly::one(f2))), unsupported_error);

    // over C^2 -> C^3 the commutator map has nonzero image: find a projectable case
    TModule cm = carlitz_tensor(f2, 2), cn = carlitz_tensor(f2, 3);
    KMatrix x(f2, 3, 2);
    x.set(0, 0, KElement::theta(f2));
    KMatrix nm(f2, 2, 2);
    nm.set(0, 1, KElement::one(f2));
    KMatrix nn(f2, 3, 3);
    nn.set(0, 1, KElement::one(f2));
    nn.set(1, 2, KElement::one(f2));
    KMatrix v0 = x * nm - nn * x;   // in the image by construction
    Rng rng(401);
    SkewMatrix tail = draw_skew_matrix(rng, f2, 3, 2, 2);
    tail = tail - SkewMatrix::from_k(tail.constant_term());   // Der_0 tail
    Biderivation dd(cm, cn, SkewMatrix::from_k(v0) + tail);
    Biderivation out = ext0_projection(dd);
    CHECK(is_der0(out));
}

TEST_CASE("dual_morphism") {
    auto f2 = Fq::make(2);
    auto f3 = Fq::make(3);
    for (auto fq : {f2, f3}) {
        Rng rng(409 + fq->q());
        DrinfeldModule e = draw_drinfeld(rng, fq, 3);
        std::size_t r = e.rank();

        // identity maps to the identity
        CHECK(dual_morphism(e, e, SkewPoly::one(fq)) == SkewMatrix::identity(fq, r));

        // scalars c in F_q^x map to c I
        for (const auto& c : fq->elements()) {
            if (c.is_zero()) continue;
            SkewMatrix expect = SkewMatrix::identity(fq, r).scaled_left(KElement::from_fq(c));
            CHECK(dual_morphism(e, e, SkewPoly::constant(KElement::from_fq(c))) == expect);
        }

        // beta = Phi(t) maps to Pi(t)
        CHECK(dual_morphism(e, e, e.phi_t()) == dual_tmodule(e).pi.phi_t());

        // contravariance on commuting endomorphisms: (beta gamma)^dual = gamma^dual beta^dual
        SkewPoly beta = e.phi_t();
        SkewPoly gamma = SkewPoly::constant(KElement::from_int(fq, 1)) + e.phi_t();
        SkewMatrix lhs = dual_morphism(e, e, beta * gamma);
        SkewMatrix rhs = dual_morphism(e, e, gamma) * dual_morphism(e, e, beta);
        CHECK(lhs == rhs);

        // Der_0 block preservation: the b_0 = 0 subspace maps into itself
        SkewMatrix m = dual_morphism(e, e, beta * gamma);
        for (std::size_t j = 1; j < r; ++j) CHECK(m.at(0, j).is_zero());
    }

    // rank mismatch is a theory error
    DrinfeldModule e2 = make_drinfeld({KElement::theta(f2), KElement::one(f2)});
    DrinfeldModule e3 =
        make_drinfeld({KElement::theta(f2), KElement::one(f2), KElement::one(f2)});
    CHECK_THROWS_AS(dual_morphism(e2, e3, SkewPoly::one(f2)), unsupported_error);
}

TEST_CASE("t-action descends to classes") {
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(419 + fq->q());
        for (int trial = 0; trial < 15; ++trial) {
            DrinfeldModule e = draw_drinfeld(rng, fq, 2 + rng.below(2));
            SkewPoly v = draw_skew(rng, fq, 4);
            TPoly b = draw_t_poly(rng, fq, 2);
            Biderivation d = to_carlitz(e, v);
            ReducedEC right = reduce_vs_carlitz(e, t_action_right(d, b));
            ReducedEC left = reduce_vs_carlitz(e, t_action_left(b, d));
            CHECK(right.cls == left.cls);
        }
    }
}

TEST_CASE("dual_morphism rejects non-morphisms") {
    auto f2 = Fq::make(2);
    DrinfeldModule e = make_drinfeld({KElement::theta(f2), KElement::one(f2)});
    DrinfeldModule g = make_drinfeld({KElement::one(f2), KElement::one(f2)});
    CHECK_THROWS_AS(dual_morphism(e, g, SkewPoly::one(f2)), std::invalid_argument);
}

TEST_CASE("engine operations are safe to run concurrently on shared values") {
    auto f2 = Fq::make(2);
    Rng rng(601);
    DrinfeldModule e = draw_drinfeld(rng, f2, 3);
    SkewPoly v = draw_skew(rng, f2, 5);
    Biderivation d = [&] {
        SkewMatrix m(f2, 1, 1);
        m.set(0, 0, v);
        return Biderivation(e.underlying(), carlitz(f2).underlying(), m);
    }();
    ReducedEC expect = reduce_vs_carlitz(e, d);
    std::vector<std::thread> pool;
    std::vector<int> ok(4, 0);
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (int i = 0; i < 5; ++i) {
                ReducedEC r = reduce_vs_carlitz(e, d);
                if (!(r.cls == expect.cls)) return;
            }
            ok[static_cast<std::size_t>(t)] = 1;
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) CHECK(ok[static_cast<std::size_t>(t)] == 1);
}

TEST_CASE("Pi action agrees with concrete reductions per basis vector") {
    // t * (b tau^i) has value (theta + tau) b tau^i; reducing it concretely
    // must match applying the Pi column computed through the symbolic route
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(613 + fq->q());
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t r = 2 + rng.below(3);
            DrinfeldModule e = draw_drinfeld(rng, fq, r, 1);
            SkewMatrix pi = dual_tmodule(e).pi.phi_t();
            KElement b = draw_k(rng, fq, 1);
            std::size_t i = rng.below(r);
            SkewPoly v = (SkewPoly::theta(fq) + SkewPoly::tau(fq)) * SkewPoly::monomial(b, i);
            ReducedEC red = reduce_vs_carlitz(e, to_carlitz(e, v));
            for (std::size_t j = 0; j < r; ++j)
                CHECK(red.cls.coords[j] == pi.at(j, i).apply(b));
        }
    }
}

TEST_CASE("Xi action agrees with concrete dual reductions per basis vector") {
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(617 + fq->q());
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t r = 2 + rng.below(3);
            DrinfeldModule e = draw_drinfeld(rng, fq, r, 1);
            TModule psi = dual_tmodule(e).dual;
            SkewMatrix xi = bidual_tmodule(e).phi_t();
            KElement b = draw_k(rng, fq, 1);
            std::size_t col = rng.below(r);
            // basis e_i (i <= r-1): b in slot i; e_r: b tau in the last slot
            SkewMatrix rep(fq, 1, r - 1);
            if (col < r - 1)
                rep.set(0, col, SkewPoly::constant(b));
            else
                rep.set(0, r - 2, SkewPoly::monomial(b, 1));
            Biderivation acted = t_action_left(TPoly::t(fq), Biderivation(psi, carlitz(fq).underlying(), rep));
            ReducedDualC red = reduce_dualC(e, acted);
            for (std::size_t j = 0; j < r; ++j)
                CHECK(red.cls.coords[j] == xi.at(j, col).apply(b));
        }
    }
}

TEST_CASE("rank-2 dual reduction coincides with the Drinfeld reduction over the dual module") {
    // for r = 2 the dual presentation is itself a rank-2 Drinfeld module, so
    // the two reducers compute the same canonical representatives
    for (auto fq : {Fq::make(2), Fq::make(3)}) {
        Rng rng(619 + fq->q());
        for (int trial = 0; trial < 12; ++trial) {
            DrinfeldModule e = draw_drinfeld(rng, fq, 2, 1);
            TModule psi = dual_tmodule(e).dual;
            const SkewPoly& pp = psi.phi_t().at(0, 0);
            DrinfeldModule dual_as_drinfeld =
                make_drinfeld({pp.coeff(1), pp.coeff(2)});
            REQUIRE(dual_as_drinfeld.underlying() == psi);

            SkewMatrix v(fq, 1, 1);
            v.set(0, 0, draw_skew(rng, fq, 4, 1));
            Biderivation d(psi, carlitz(fq).underlying(), v);
            ReducedDualC a = reduce_dualC(e, d);
            ReducedEC b = reduce_vs_carlitz(dual_as_drinfeld, d);
            CHECK(a.cls.coords[0] == b.cls.coords[0]);
            CHECK(a.cls.coords[1] == b.cls.coords[1]);
        }
    }
}
