#include <benchmark/benchmark.h>

#include "drx/ext_engine.hpp"
#include "drx/rand.hpp"

using namespace drx;

namespace {

SkewPoly random_skew(std::uint64_t seed, const FqPtr& f, int deg) {
    Rng rng(seed);
    std::vector<KElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back(draw_k(rng, f, 2));
    return SkewPoly(f, std::move(c));
}

void BM_skew_mul(benchmark::State& state) {
    auto f = Fq::make(2);
    SkewPoly a = random_skew(11, f, static_cast<int>(state.range(0)));
    SkewPoly b = random_skew(13, f, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_skew_mul)->Arg(2)->Arg(4)->Arg(8);

void BM_phi_eval(benchmark::State& state) {
    auto f = Fq::make(2);
    Rng rng(17);
    DrinfeldModule e = draw_drinfeld(rng, f, 3);
    TPoly a(f, {f->one(), f->one(), f->zero(), f->one()});
    for (auto _ : state) benchmark::DoNotOptimize(phi_eval(e.underlying(), a));
}
BENCHMARK(BM_phi_eval);

void BM_dual_tmodule(benchmark::State& state) {
    auto f = Fq::make(2);
    Rng rng(19);
    DrinfeldModule e = draw_drinfeld(rng, f, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dual_tmodule(e));
}
BENCHMARK(BM_dual_tmodule)->Arg(2)->Arg(4);

void BM_bidual_tmodule(benchmark::State& state) {
    auto f = Fq::make(2);
    Rng rng(23);
    std::vector<KElement> a;
    for (int i = 0; i + 1 < state.range(0); ++i) a.push_back(draw_k(rng, f, 2));
    a.push_back(KElement::one(f));
    DrinfeldModule e = make_drinfeld(a);
    for (auto _ : state) benchmark::DoNotOptimize(bidual_tmodule(e));
}
BENCHMARK(BM_bidual_tmodule)->Arg(2)->Arg(4);

void BM_reduce_vs_carlitz(benchmark::State& state) {
    auto f = Fq::make(2);
    Rng rng(29);
    DrinfeldModule e = draw_drinfeld(rng, f, 3);
    SkewPoly v = random_skew(31, f, static_cast<int>(state.range(0)));
    SkewMatrix m(f, 1, 1);
    m.set(0, 0, v);
    Biderivation d(e.underlying(), carlitz(f).underlying(), m);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_vs_carlitz(e, d));
}
BENCHMARK(BM_reduce_vs_carlitz)->Arg(4)->Arg(8);

void BM_reduce_carlitz(benchmark::State& state) {
    auto f = Fq::make(2);
    std::size_t m = static_cast<std::size_t>(state.range(0));
    std::size_t n = static_cast<std::size_t>(state.range(1));
    Rng rng(37);
    SkewMatrix v = draw_skew_matrix(rng, f, n, m, 1, 1);
    Biderivation d(carlitz_tensor(f, m), carlitz_tensor(f, n), v);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_carlitz(d));
}
BENCHMARK(BM_reduce_carlitz)->Args({1, 2})->Args({2, 3})->Args({2, 5});

} // namespace

BENCHMARK_MAIN();
