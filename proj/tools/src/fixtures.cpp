#include "fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <dtlure/exact.hpp>
#include <dtlure/lure.hpp>
#include <dtlure/stability.hpp>

namespace dtlure::tools {

namespace {

struct Checker {
    int failures = 0;

    void expect(bool ok, const std::string& what) {
        std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    }
};

// 4th-order system with one 0-deg asymptote but two positive-axis unit-circle
// crossings from the pole break-in.
int fixture_ex1() {
    Checker check;
    const Poly num = Poly{0.68, -0.4, 1.0} * Poly{-1.0, 1.0};
    const Poly den{0.0, 0.0, 0.5525, 0.5, 1.0};
    const auto G = TransferFunction::validate(num, den);
    check.expect(G.valid(), "system passes validation");
    const auto cs = crossings(G);
    check.expect(cs.theta_p.size() == 2,
                 "card(theta_p) == 2 (got " + std::to_string(cs.theta_p.size()) + ")");
    check.expect(cs.theta_n.size() >= 1, "card(theta_n) >= n - m = 1");
    return check.failures;
}

// 4th-order system whose stable gain set extends beyond alpha_p: a stable
// pocket exists above the first positive crossing gain.
int fixture_ex2() {
    Checker check;
    const Poly num = Poly{0.7769, -0.1, 1.0} * Poly{-1.0, 1.0};
    const Poly den{0.0, 0.0, 0.7769, 0.1, 1.0};
    const auto G = TransferFunction::validate(num, den);
    check.expect(G.valid(), "system passes validation");
    const auto cs = crossings(G);
    check.expect(cs.alpha_p.has_value(), "alpha_p exists");
    if (cs.alpha_p) {
        check.expect(*cs.alpha_p >= 0.58 && *cs.alpha_p <= 0.62,
                     "alpha_p in [0.58, 0.62] (got " + std::to_string(*cs.alpha_p) + ")");
    }
    const auto sweep = spr_sweep(G, linspace(0.0, 1.4, 2001));
    bool pocket = false;
    for (size_t i = 0; i < sweep.alphas.size(); ++i)
        if (sweep.alphas[i] >= 1.05 && sweep.alphas[i] <= 1.2 && sweep.spr_values[i] < 1.0)
            pocket = true;
    check.expect(pocket, "some alpha in [1.05, 1.2] has spr(p_alpha) < 1");
    return check.failures;
}

struct Ex3Setup {
    StateSpace ss;
    exact::ExactSystem sys;
    exact::ExactSplit split;
};

Ex3Setup ex3_setup() {
    const auto G = TransferFunction::validate(Poly{-1.0, 1.0}, Poly{0.5, -1.0, 1.0});
    Ex3Setup setup;
    setup.ss = realize(G);
    setup.sys = exact::make_exact_system(setup.ss, -2.5, 41);
    auto split = exact::exact_split(setup.sys);
    if (!split) throw std::logic_error("reference system lost its unstable eigenvalue");
    setup.split = *split;
    return setup;
}

// Knife-edge initial condition: the state lands exactly on the complementary
// subspace at step 4, the hypothesis check fails there, and the output
// converges.
int fixture_ex3_exact() {
    using namespace exact;
    Checker check;
    auto setup = ex3_setup();

    const ExactVector x0{QuadRat(Rational(-11, 2), Rational(-13, 2), 41),
                         QuadRat(Rational(-51))};
    const auto ex = simulate_exact(setup.sys, x0, 200, &setup.split);

    check.expect(ex.y[1] == QuadRat(Rational(23)), "y_1 == 23 exactly");
    check.expect(ex.y[2] == QuadRat(Rational(1, 4), Rational(13, 4), 41),
                 "y_2 == 1/4 + 13/4*sqrt(41) exactly");

    bool modes_ok = ex.mode[0] == Mode::S1 && ex.mode[1] == Mode::S1 &&
                    ex.mode[2] == Mode::S1 && ex.mode[3] == Mode::S1;
    for (int k = 4; k <= ex.steps(); ++k) modes_ok = modes_ok && ex.mode[k] == Mode::S2;
    check.expect(modes_ok, "mode sequence S1,S1,S1,S1 then S2 through k = 200");

    check.expect(ex.psi_coord[4].is_zero(), "||P x_4|| == 0 as an exact field identity");

    const auto traj = float_view(ex, &setup.split);
    LureConfig cfg{setup.ss, -2.5, Eigen::Vector2d(traj.x[0](0), traj.x[0](1)), ex.steps(), {}};
    const auto rep = classify(traj, cfg);
    check.expect(rep.verdict == Verdict::Convergent && rep.limit && *rep.limit == 0.0,
                 "verdict Convergent with limit 0");

    const auto fsplit = float_split(setup.split, -2.5);
    const auto hyp = check_oscillation_hypotheses(traj, fsplit, cfg.tol.offX_tol);
    const bool reentry_fails = hyp.reentry_checks.size() == 1 &&
                               hyp.reentry_checks[0].k == 4 && !hyp.reentry_checks[0].passed;
    check.expect(reentry_fails, "hypothesis check FAILS at the k = 4 re-entry");
    return check.failures;
}

// The same initial condition perturbed by 1e-12 on the second component:
// the re-entry state misses the subspace and the response is self-excited
// with asymptotic period 2.
int fixture_ex3_perturbed() {
    using namespace exact;
    Checker check;
    auto setup = ex3_setup();

    const Rational eps(BigInt(1), BigInt("1000000000000"));
    const ExactVector x0{QuadRat(Rational(-11, 2), Rational(-13, 2), 41),
                         QuadRat(Rational(-51) + eps)};
    const auto ex = simulate_exact(setup.sys, x0, 200, &setup.split);

    const auto traj = float_view(ex, &setup.split);
    const auto fsplit = float_split(setup.split, -2.5);
    LureConfig cfg{setup.ss, -2.5, Eigen::Vector2d(traj.x[0](0), traj.x[0](1)), ex.steps(), {}};

    const auto hyp = check_oscillation_hypotheses(traj, fsplit, cfg.tol.offX_tol);
    const bool reentry_passes = hyp.reentry_checks.size() >= 1 &&
                                hyp.reentry_checks[0].k == 4 && hyp.reentry_checks[0].passed;
    check.expect(reentry_passes, "hypothesis check passes at the k = 4 re-entry");

    bool leaves_s2 = false;
    for (int k = 5; k <= ex.steps(); ++k)
        if (ex.mode[k] != Mode::S2) leaves_s2 = true;
    check.expect(leaves_s2, "trajectory leaves S2 after the re-entry");

    const auto rep = classify(traj, cfg);
    check.expect(rep.verdict == Verdict::SelfExcited, "verdict SelfExcited");
    check.expect(rep.period && *rep.period == 2, "detected period 2");
    check.expect(rep.max_abs_y <= rep.bound, "max |y_k| within the boundedness bound");
    return check.failures;
}

}  // namespace

int run_fixture(const std::string& id) {
    if (id == "ex1") return fixture_ex1();
    if (id == "ex2") return fixture_ex2();
    if (id == "ex3-exact") return fixture_ex3_exact();
    if (id == "ex3-perturbed") return fixture_ex3_perturbed();
    throw std::invalid_argument("unknown fixture \"" + id +
                                "\"; expected ex1, ex2, ex3-exact or ex3-perturbed");
}

}  // namespace dtlure::tools
