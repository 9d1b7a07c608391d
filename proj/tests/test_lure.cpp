#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <dtlure/errors.hpp>
#include <dtlure/lure.hpp>
#include <dtlure/stability.hpp>

#include "support.hpp"

using namespace dtlure;
using dtlure::testing::TestRng;

namespace {

LureConfig reference_config(double alpha, Eigen::VectorXd x0, int horizon = 2000) {
    LureConfig cfg;
    cfg.ss = realize(dtlure::testing::second_order_reference());
    cfg.alpha = alpha;
    cfg.x0 = std::move(x0);
    cfg.horizon = horizon;
    return cfg;
}

Eigen::Vector2d knife_edge_x0() {
    const double s = std::sqrt(41.0);
    return {-5.5 - 6.5 * s, -51.0};
}

}  // namespace

TEST_CASE("saturation") {
    CHECK(sat(1.0, 0.5) == 0.5);
    CHECK(sat(1.0, 23.0) == 1.0);
    CHECK(sat(1.0, -3.88) == -1.0);
    CHECK(sat(2.0, -3.0) == -2.0);
    CHECK_THROWS_AS(sat(0.0, 1.0), std::invalid_argument);

    CHECK(mode_of(1.0) == Mode::S1);
    CHECK(mode_of(-1.0) == Mode::S3);
    CHECK(mode_of(0.999) == Mode::S2);
}

TEST_CASE("simulated reference run in floating point") {
    const auto cfg = reference_config(-2.5, knife_edge_x0());
    const auto res = find_simple_unstable(closed_loop(cfg.ss, cfg.alpha), cfg.alpha);
    REQUIRE(res.split);
    const auto traj = simulate(cfg, &*res.split);

    CHECK(traj.y[0] == doctest::Approx(3.8796924566864837).epsilon(1e-12));
    CHECK(traj.y[1] == doctest::Approx(23.0).epsilon(1e-12));
    for (int k = 0; k <= 3; ++k) CHECK(traj.mode[static_cast<size_t>(k)] == Mode::S1);
    CHECK(traj.mode[4] == Mode::S2);

    // In floating point the state cannot sit exactly on the subspace: the
    // knife-edge run escapes the linear region and oscillates.
    bool escapes = false;
    for (int k = 5; k <= traj.steps(); ++k)
        if (traj.mode[static_cast<size_t>(k)] != Mode::S2) escapes = true;
    CHECK(escapes);
    const auto rep = classify(traj, cfg);
    CHECK(rep.verdict == Verdict::SelfExcited);
}

TEST_CASE("zero initial state stays at the origin") {
    const auto cfg = reference_config(-2.5, Eigen::Vector2d::Zero());
    const auto traj = simulate(cfg);
    for (int k = 0; k <= traj.steps(); ++k) {
        CHECK(traj.y[static_cast<size_t>(k)] == 0.0);
        CHECK(traj.mode[static_cast<size_t>(k)] == Mode::S2);
    }
    const auto rep = classify(traj, cfg);
    CHECK(rep.verdict == Verdict::Convergent);
    CHECK(rep.limit == 0.0);
}

TEST_CASE("logged states satisfy the closed-loop recursion") {
    const auto cfg = reference_config(-2.5, knife_edge_x0(), 300);
    const auto traj = simulate(cfg);
    for (int k = 0; k < traj.steps(); ++k) {
        const Eigen::VectorXd re =
            cfg.ss.A * traj.x[static_cast<size_t>(k)] +
            cfg.alpha * traj.nu[static_cast<size_t>(k)] * cfg.ss.B;
        CHECK((re - traj.x[static_cast<size_t>(k) + 1]).norm() <=
              1e-12 * std::max(1.0, traj.x[static_cast<size_t>(k) + 1].norm()));
    }
}

TEST_CASE("saturated segments follow the affine closed form") {
    const auto cfg = reference_config(-2.5, knife_edge_x0(), 100);
    const auto traj = simulate(cfg);
    REQUIRE(traj.mode[0] == Mode::S1);

    // x_k = A^{k - k1} x_{k1} + alpha * sum_{i < k - k1} A^i B during the
    // leading saturated run.
    Eigen::MatrixXd apow = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd forced = Eigen::VectorXd::Zero(2);
    for (int k = 0; k <= 3; ++k) {
        const Eigen::VectorXd closed_form = apow * traj.x[0] + cfg.alpha * forced;
        CHECK((closed_form - traj.x[static_cast<size_t>(k)]).norm() < 1e-10);
        forced += apow * cfg.ss.B;
        apow = cfg.ss.A * apow;
    }
}

TEST_CASE("boundedness bound") {
    SUBCASE("dominates every simulated output") {
        TestRng rng(53);
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::Vector2d x0(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
            const auto cfg = reference_config(rng.uniform(-4.0, 4.0), x0, 500);
            const double bound = boundedness_bound(cfg);
            const auto traj = simulate(cfg);
            double max_y = 0.0;
            for (double y : traj.y) max_y = std::max(max_y, std::abs(y));
            CHECK(max_y <= bound);
        }
    }
    SUBCASE("zero state and zero gain give a zero bound") {
        const auto cfg = reference_config(0.0, Eigen::Vector2d::Zero());
        CHECK(boundedness_bound(cfg) == 0.0);
    }
    SUBCASE("requires a Schur-stable A") {
        LureConfig cfg;
        cfg.ss.n = 1;
        cfg.ss.A = Eigen::MatrixXd::Constant(1, 1, 2.0);
        cfg.ss.B = Eigen::VectorXd::Ones(1);
        cfg.ss.C = Eigen::RowVectorXd::Ones(1);
        cfg.x0 = Eigen::VectorXd::Ones(1);
        CHECK_THROWS_AS(boundedness_bound(cfg), std::invalid_argument);
    }
}

TEST_CASE("overflow guard trips on garbage systems") {
    LureConfig cfg;
    cfg.ss.n = 1;
    cfg.ss.A = Eigen::MatrixXd::Constant(1, 1, 0.5);
    cfg.ss.B = Eigen::VectorXd::Ones(1);
    cfg.ss.C = Eigen::RowVectorXd::Constant(1, 1e13);
    cfg.x0 = Eigen::VectorXd::Ones(1);
    cfg.horizon = 10;
    CHECK_THROWS_AS(simulate(cfg), TrajectoryOverflow);
}

TEST_CASE("classification verdicts") {
    SUBCASE("slow decay in the amplitude gap is inconclusive") {
        // spr(p_alpha) ~ 0.894 at alpha = 0.3; a short horizon leaves the
        // final window between conv_tol and the oscillation threshold.
        auto cfg = reference_config(0.3, Eigen::Vector2d(1.0, 1.0), 206);
        const auto traj = simulate(cfg);
        const auto rep = classify(traj, cfg);
        CHECK(rep.verdict == Verdict::Inconclusive);
        CHECK_FALSE(rep.note.empty());
    }
    SUBCASE("the same decay over a full horizon is convergent to zero") {
        auto cfg = reference_config(0.3, Eigen::Vector2d(1.0, 1.0), 2000);
        const auto rep = classify(simulate(cfg), cfg);
        CHECK(rep.verdict == Verdict::Convergent);
        REQUIRE(rep.limit.has_value());
        CHECK(*rep.limit == 0.0);
    }
    SUBCASE("the period-2 cycle is reported on the state recurrence") {
        auto cfg = reference_config(-2.5, Eigen::Vector2d(7.0, -3.0), 2000);
        const auto rep = classify(simulate(cfg), cfg);
        CHECK(rep.verdict == Verdict::SelfExcited);
        REQUIRE(rep.period.has_value());
        CHECK(*rep.period == 2);
        CHECK(rep.bounded);
    }
}

TEST_CASE("hypothesis checks along trajectories") {
    const auto cfg = reference_config(-2.5, knife_edge_x0(), 400);
    const auto res = find_simple_unstable(closed_loop(cfg.ss, cfg.alpha), cfg.alpha);
    REQUIRE(res.split);

    SUBCASE("a run that never enters the linear region passes vacuously") {
        // [1, -1] sits exactly on the saturated period-2 cycle.
        auto cycle_cfg = reference_config(-2.5, Eigen::Vector2d(1.0, -1.0), 100);
        const auto traj = simulate(cycle_cfg, &*res.split);
        for (int k = 0; k <= traj.steps(); ++k)
            CHECK(traj.mode[static_cast<size_t>(k)] != Mode::S2);
        const auto rep = check_oscillation_hypotheses(traj, *res.split, 1e-9);
        CHECK_FALSE(rep.x0_check.has_value());
        CHECK(rep.reentry_checks.empty());
        CHECK(rep.all_passed());
    }
    SUBCASE("a run starting in the linear region records the initial check") {
        auto s2_cfg = reference_config(-2.5, Eigen::Vector2d(0.1, 0.0), 400);
        const auto traj = simulate(s2_cfg, &*res.split);
        REQUIRE(traj.mode[0] == Mode::S2);
        const auto rep = check_oscillation_hypotheses(traj, *res.split, 1e-9);
        REQUIRE(rep.x0_check.has_value());
        CHECK(rep.x0_check->passed);
    }
    SUBCASE("re-entries into the linear region are all checked") {
        const auto traj = simulate(cfg, &*res.split);
        const auto rep = check_oscillation_hypotheses(traj, *res.split, 1e-9);
        CHECK(rep.reentry_checks.size() >= 1);
        CHECK(rep.reentry_checks[0].k == 4);
        int re_entries = 0;
        for (const auto& t : traj.transitions)
            if (t.to == Mode::S2) ++re_entries;
        CHECK(static_cast<int>(rep.reentry_checks.size()) == re_entries);
    }
}

TEST_CASE("linear-region escapes happen whenever the entry state is off the subspace") {
    // Perturbed knife edge in floating point: every maximal linear-region
    // interval that starts off the subspace is finite.
    Eigen::Vector2d x0 = knife_edge_x0();
    x0(1) += 1e-12;
    const auto cfg = reference_config(-2.5, x0, 2000);
    const auto res = find_simple_unstable(closed_loop(cfg.ss, cfg.alpha), cfg.alpha);
    REQUIRE(res.split);
    const auto traj = simulate(cfg, &*res.split);

    int k = 0;
    while (k <= traj.steps()) {
        if (traj.mode[static_cast<size_t>(k)] != Mode::S2) { ++k; continue; }
        const int start = k;
        while (k <= traj.steps() && traj.mode[static_cast<size_t>(k)] == Mode::S2) ++k;
        const bool off_subspace = traj.proj_norm[static_cast<size_t>(start)] >
                                  1e-9 * traj.x[static_cast<size_t>(start)].norm();
        if (off_subspace) CHECK(k <= traj.steps());  // the interval ended before the horizon
    }
}

TEST_CASE("random initial-state census") {
    const auto base = reference_config(-2.5, Eigen::Vector2d::Zero());

    SUBCASE("the unstable gain is self-excited for essentially all draws") {
        const auto res = random_x0_census(base, 100, 0);
        CHECK(res.trials == 100);
        CHECK(res.self_excited >= 99);
    }
    SUBCASE("the open loop always converges") {
        auto cfg = base;
        cfg.alpha = 0.0;
        const auto res = random_x0_census(cfg, 40, 0);
        CHECK(res.self_excited == 0);
        CHECK(res.convergent == 40);
    }
    SUBCASE("gains inside the guaranteed interval always converge") {
        auto cfg = base;
        cfg.alpha = 0.25;
        const auto res = random_x0_census(cfg, 40, 1);
        CHECK(res.self_excited == 0);
        CHECK(res.convergent == 40);
    }
    SUBCASE("the census is reproducible from its seed") {
        const auto a = random_x0_census(base, 25, 42);
        const auto b = random_x0_census(base, 25, 42);
        CHECK(a.self_excited == b.self_excited);
        CHECK(a.convergent == b.convergent);
    }
}
