#include <benchmark/benchmark.h>

#include <random>

#include <dtlure/exact.hpp>
#include <dtlure/lure.hpp>
#include <dtlure/stability.hpp>

namespace {

using namespace dtlure;

TransferFunction reference_tf() {
    return TransferFunction::validate(Poly{-1.0, 1.0}, Poly{0.5, -1.0, 1.0});
}

TransferFunction fourth_order_tf() {
    return TransferFunction::validate(Poly{0.7769, -0.1, 1.0} * Poly{-1.0, 1.0},
                                      Poly{0.0, 0.0, 0.7769, 0.1, 1.0});
}

void BM_PolyRoots(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int degree = static_cast<int>(state.range(0));
    std::vector<double> coeffs(static_cast<size_t>(degree) + 1);
    for (auto& c : coeffs)
        c = static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
    coeffs.back() = 1.0;
    const Poly p(coeffs);
    for (auto _ : state) {
        auto rs = roots(p);
        benchmark::DoNotOptimize(rs);
    }
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(8)->Arg(16);

void BM_Crossings(benchmark::State& state) {
    const auto tf = fourth_order_tf();
    for (auto _ : state) {
        auto cs = crossings(tf);
        benchmark::DoNotOptimize(cs);
    }
}
BENCHMARK(BM_Crossings);

void BM_SprSweep(benchmark::State& state) {
    const auto tf = fourth_order_tf();
    const auto grid = linspace(0.0, 1.4, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto sweep = spr_sweep(tf, grid);
        benchmark::DoNotOptimize(sweep);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SprSweep)->Arg(201)->Arg(2001)->Complexity(benchmark::oN);

void BM_SimulateFloat(benchmark::State& state) {
    LureConfig cfg;
    cfg.ss = realize(reference_tf());
    cfg.alpha = -2.5;
    cfg.x0 = Eigen::Vector2d(7.0, -3.0);
    cfg.horizon = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto traj = simulate(cfg);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_SimulateFloat)->Arg(2000);

void BM_SimulateExact(benchmark::State& state) {
    using namespace dtlure::exact;
    const auto ss = realize(reference_tf());
    const auto sys = make_exact_system(ss, -2.5, 41);
    const auto split = exact_split(sys);
    const ExactVector x0{QuadRat(Rational(-11, 2), Rational(-13, 2), 41),
                         QuadRat(Rational(-51))};
    for (auto _ : state) {
        auto traj = simulate_exact(sys, x0, static_cast<int>(state.range(0)), &*split);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_SimulateExact)->Arg(50)->Arg(200);

void BM_ExactToDouble(benchmark::State& state) {
    using namespace dtlure::exact;
    // Late-trajectory field element with large canceling components.
    QuadRat power(Rational(1));
    const QuadRat lambda2(Rational(-3, 4), Rational(1, 4), 41);
    for (int k = 0; k < static_cast<int>(state.range(0)); ++k) power = power * lambda2;
    for (auto _ : state) benchmark::DoNotOptimize(power.to_double());
}
BENCHMARK(BM_ExactToDouble)->Arg(50)->Arg(150);

void BM_Census(benchmark::State& state) {
    LureConfig cfg;
    cfg.ss = realize(reference_tf());
    cfg.alpha = -2.5;
    cfg.x0 = Eigen::VectorXd::Zero(2);
    cfg.horizon = 2000;
    for (auto _ : state) {
        auto res = random_x0_census(cfg, static_cast<int>(state.range(0)), 0);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_Census)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
