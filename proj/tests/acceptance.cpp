// Acceptance suite: every release criterion in one binary, one PASS/FAIL line
// each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <dtlure/exact.hpp>
#include <dtlure/lure.hpp>
#include <dtlure/oracles.hpp>
#include <dtlure/spectral.hpp>
#include <dtlure/stability.hpp>

#include "support.hpp"

using namespace dtlure;
using dtlure::testing::TestRng;
using cplx = std::complex<double>;

namespace {

struct Scoreboard {
    int failures = 0;
    void criterion(int index, bool pass, const std::string& what) {
        std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", index, what.c_str());
        if (!pass) ++failures;
    }
};

double direction_error(const Eigen::VectorXcd& v, const Eigen::VectorXcd& ref) {
    const cplx inner = ref.normalized().dot(v.normalized());
    return std::sqrt(std::max(0.0, 1.0 - std::norm(inner)));
}

struct ReferenceSetup {
    TransferFunction tf;
    StateSpace ss;
    exact::ExactSystem sys;
    exact::ExactSplit split;
};

ReferenceSetup reference_setup() {
    auto tf = dtlure::testing::second_order_reference();
    auto ss = realize(tf);
    auto sys = exact::make_exact_system(ss, -2.5, 41);
    auto split = exact::exact_split(sys);
    return {std::move(tf), std::move(ss), std::move(sys), *split};
}

void crossing_analysis(Scoreboard& score) {
    const auto cs = crossings(dtlure::testing::second_order_reference());
    const double ref = std::acos(0.75);
    bool ok = cs.theta_n.size() == 1 && std::abs(cs.theta_n[0] - M_PI) < 1e-9;
    ok = ok && cs.theta_p.size() == 2 && std::abs(cs.theta_p[0] + ref) < 1e-9 &&
         std::abs(cs.theta_p[1] - ref) < 1e-9;
    ok = ok && cs.alpha_n && std::abs(*cs.alpha_n + 1.25) < 1e-9;
    ok = ok && cs.alpha_p && std::abs(*cs.alpha_p - 0.5) < 1e-9;
    score.criterion(1, ok,
                    "reference crossings: theta_n = {pi}, theta_p = {±acos(3/4)}, "
                    "alpha_n = -1.25, alpha_p = 0.5 (1e-9)");
}

void spectral_split(Scoreboard& score) {
    const auto ss = realize(dtlure::testing::second_order_reference());
    const Eigen::MatrixXd acl = closed_loop(ss, -2.5);
    const double s = std::sqrt(41.0);

    Eigen::EigenSolver<Eigen::MatrixXd> es(acl);
    double e_minus = 1e300, e_plus = 1e300;
    for (int i = 0; i < 2; ++i) {
        e_minus = std::min(e_minus, std::abs(es.eigenvalues()(i) - cplx(-0.75 - 0.25 * s, 0)));
        e_plus = std::min(e_plus, std::abs(es.eigenvalues()(i) - cplx(-0.75 + 0.25 * s, 0)));
    }
    bool ok = e_minus < 1e-10 && e_plus < 1e-10;

    const auto found = find_simple_unstable(acl, -2.5);
    ok = ok && found.status == SplitStatus::Found;
    if (found.split) {
        Eigen::VectorXcd xi_ref(2), x_ref(2);
        xi_ref << cplx(-0.75 - 0.25 * s, 0), cplx(1, 0);
        x_ref << cplx(-0.75 + 0.25 * s, 0), cplx(1, 0);
        ok = ok && direction_error(found.split->xi, xi_ref) < 1e-8;
        Eigen::MatrixXcd ref_basis(2, 1);
        ref_basis.col(0) = x_ref.normalized();
        ok = ok && subspace_angle(found.split->X_basis, ref_basis) < 1e-8;
    }
    score.criterion(2, ok,
                    "spectral split at alpha = -2.5: eigenvalues -0.75 -/+ 0.25 sqrt(41) "
                    "(1e-10), xi and complement directions (1e-8)");
}

void exact_knife_edge(Scoreboard& score) {
    using namespace exact;
    const auto setup = reference_setup();
    const ExactVector x0{QuadRat(Rational(-11, 2), Rational(-13, 2), 41),
                         QuadRat(Rational(-51))};
    const auto ex = simulate_exact(setup.sys, x0, 200, &setup.split);

    bool ok = ex.steps() == 200;
    ok = ok && ex.y[1] == QuadRat(Rational(23));
    ok = ok && ex.y[2] == QuadRat(Rational(1, 4), Rational(13, 4), 41);
    for (int k = 0; k <= 3; ++k) ok = ok && ex.mode[static_cast<size_t>(k)] == Mode::S1;
    for (int k = 4; k <= 200; ++k) ok = ok && ex.mode[static_cast<size_t>(k)] == Mode::S2;
    ok = ok && ex.psi_coord[4].is_zero();

    const auto traj = float_view(ex, &setup.split);
    LureConfig cfg{setup.ss, -2.5, Eigen::Vector2d(traj.x[0](0), traj.x[0](1)), 200, {}};
    const auto rep = classify(traj, cfg);
    ok = ok && rep.verdict == Verdict::Convergent && rep.limit && *rep.limit == 0.0;

    const auto hyp =
        check_oscillation_hypotheses(traj, exact::float_split(setup.split, -2.5), cfg.tol.offX_tol);
    ok = ok && hyp.reentry_checks.size() == 1 && hyp.reentry_checks[0].k == 4 &&
         !hyp.reentry_checks[0].passed;
    score.criterion(3, ok,
                    "exact knife edge: y_1 = 23, y_2 = 1/4 + 13/4 sqrt(41), modes S1 x4 then "
                    "S2 through 200, ||P x_4|| = 0 exactly, Convergent(0), k = 4 check fails");
}

void exact_perturbed(Scoreboard& score) {
    using namespace exact;
    const auto setup = reference_setup();
    const Rational eps(BigInt(1), BigInt("1000000000000"));
    const ExactVector x0{QuadRat(Rational(-11, 2), Rational(-13, 2), 41),
                         QuadRat(Rational(-51) + eps)};
    const auto ex = simulate_exact(setup.sys, x0, 200, &setup.split);

    const auto traj = float_view(ex, &setup.split);
    LureConfig cfg{setup.ss, -2.5, Eigen::Vector2d(traj.x[0](0), traj.x[0](1)), 200, {}};
    const auto hyp =
        check_oscillation_hypotheses(traj, exact::float_split(setup.split, -2.5), cfg.tol.offX_tol);
    bool ok = hyp.reentry_checks.size() >= 1 && hyp.reentry_checks[0].k == 4 &&
              hyp.reentry_checks[0].passed;

    bool leaves = false;
    for (int k = 5; k <= ex.steps(); ++k)
        if (ex.mode[static_cast<size_t>(k)] != Mode::S2) leaves = true;
    ok = ok && leaves;

    const auto rep = classify(traj, cfg);
    ok = ok && rep.verdict == Verdict::SelfExcited && rep.period && *rep.period == 2;
    ok = ok && rep.max_abs_y <= rep.bound;
    score.criterion(4, ok,
                    "exact perturbed (eps = 1e-12): k = 4 check passes, leaves S2, "
                    "SelfExcited period 2, |y| within the bound");
}

void fourth_order_examples(Scoreboard& score) {
    const auto tf1 = TransferFunction::validate(Poly{0.68, -0.4, 1.0} * Poly{-1.0, 1.0},
                                                Poly{0.0, 0.0, 0.5525, 0.5, 1.0});
    const auto cs1 = crossings(tf1);
    score.criterion(5, cs1.theta_p.size() == 2, "4th-order break-in: card(theta_p) = 2");

    const auto tf2 = TransferFunction::validate(Poly{0.7769, -0.1, 1.0} * Poly{-1.0, 1.0},
                                                Poly{0.0, 0.0, 0.7769, 0.1, 1.0});
    const auto cs2 = crossings(tf2);
    bool ok = cs2.alpha_p && *cs2.alpha_p >= 0.58 && *cs2.alpha_p <= 0.62;
    const auto sweep = spr_sweep(tf2, linspace(0.0, 1.4, 2001));
    bool pocket = false;
    for (size_t i = 0; i < sweep.alphas.size(); ++i)
        if (sweep.alphas[i] >= 1.05 && sweep.alphas[i] <= 1.2 && sweep.spr_values[i] < 1.0)
            pocket = true;
    score.criterion(6, ok && pocket,
                    "4th-order pocket: alpha_p in [0.58, 0.62] and some alpha in "
                    "[1.05, 1.2] with spr < 1 (2001-point sweep)");
}

void random_system_properties(Scoreboard& score) {
    bool unit_spr = true;       // criterion 7
    bool chi_identity = true;   // criterion 8
    bool interval_stable = true;  // criterion 9
    bool output_visible = true;   // criterion 10
    bool det_identity = true;     // criterion 11

    {
        const auto tf = dtlure::testing::second_order_reference();
        unit_spr = unit_spr &&
                   std::abs(spectral_radius(tf.closed_loop_charpoly(-1.25)) - 1.0) < 1e-6 &&
                   std::abs(spectral_radius(tf.closed_loop_charpoly(0.5)) - 1.0) < 1e-6;
    }

    TestRng rng(2026);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sys = dtlure::testing::random_validated_system(rng);
        const auto ss = realize(sys.tf);

        if (trial < 10) {
            const auto cs = crossings(sys.tf);
            if (!cs.alpha_n || !cs.alpha_p) { unit_spr = false; continue; }
            unit_spr = unit_spr &&
                       std::abs(spectral_radius(sys.tf.closed_loop_charpoly(*cs.alpha_n)) - 1.0) <
                           1e-6 &&
                       std::abs(spectral_radius(sys.tf.closed_loop_charpoly(*cs.alpha_p)) - 1.0) <
                           1e-6;
        }

        for (int a = 0; a < 20; ++a) {
            const double alpha = rng.uniform(-10.0, 10.0);
            const Poly chi = characteristic_polynomial(closed_loop(ss, alpha));
            const Poly expect = sys.tf.closed_loop_charpoly(alpha);
            const double scale = std::max({1.0, chi.coefficient_scale(),
                                           expect.coefficient_scale()});
            for (int i = 0; i <= ss.n; ++i)
                chi_identity =
                    chi_identity && std::abs(chi.coeff(i) - expect.coeff(i)) <= 1e-9 * scale;
        }

        {
            const auto cs = crossings(sys.tf);
            if (cs.alpha_n && cs.alpha_p) {
                for (int a = 0; a < 20; ++a) {
                    const double alpha = rng.uniform(*cs.alpha_n + 1e-6, *cs.alpha_p - 1e-6);
                    interval_stable = interval_stable &&
                                      spectral_radius(sys.tf.closed_loop_charpoly(alpha)) < 1.0;
                }
            } else {
                interval_stable = false;
            }
        }

        {
            const double alpha = rng.uniform(-8.0, 8.0);
            Eigen::EigenSolver<Eigen::MatrixXd> es(closed_loop(ss, alpha));
            for (int i = 0; i < ss.n; ++i) {
                const Eigen::VectorXcd xi = es.eigenvectors().col(i);
                output_visible = output_visible &&
                                 std::abs((ss.C.cast<cplx>() * xi)(0)) > 1e-8 * xi.norm();
            }
        }

        {
            const double d_at_one = sys.tf.den()(1.0);
            for (int a = 0; a < 5; ++a) {
                const double alpha = rng.uniform(-10.0, 10.0);
                const double det = (Eigen::MatrixXd::Identity(ss.n, ss.n) -
                                    closed_loop(ss, alpha))
                                       .fullPivLu()
                                       .determinant();
                det_identity = det_identity &&
                               std::abs(std::abs(det) - std::abs(d_at_one)) <=
                                   1e-9 * std::max(1.0, std::abs(d_at_one));
            }
        }
    }

    score.criterion(7, unit_spr,
                    "spr(p_alpha) = 1 within 1e-6 at both interval endpoints "
                    "(reference + 10 random systems)");
    score.criterion(8, chi_identity,
                    "chi_{A + alpha B C} = D - alpha N coefficientwise within 1e-9 "
                    "(50 systems x 20 gains)");
    score.criterion(9, interval_stable,
                    "spr(p_alpha) < 1 strictly inside (alpha_n, alpha_p) (50 systems x 20 gains)");
    score.criterion(10, output_visible,
                    "|C xi| > 1e-8 ||xi|| for every closed-loop eigenvector");
    score.criterion(11, det_identity,
                    "|det(I - A - alpha B C)| = |D(1)| within 1e-9 for random gains");
}

void growth_thresholds(Scoreboard& score) {
    const auto ss = realize(dtlure::testing::second_order_reference());
    const Eigen::MatrixXd acl = closed_loop(ss, -2.5);
    const auto found = find_simple_unstable(acl, -2.5);
    bool ok = found.status == SplitStatus::Found;

    Eigen::VectorXd x0(2);
    x0 << 1.0, 0.0;
    if (ok) ok = projection_norm(found.split->psi, x0) > 1e-6;

    if (ok) {
        const auto me = modal_expansion(acl, x0);
        double amp = 0.0;
        for (int j = 0; j < static_cast<int>(me.eigenvalues.size()); ++j)
            if (std::abs(me.eigenvalues[static_cast<size_t>(j)] - found.split->lambda) < 1e-8)
                amp = std::abs(me.beta(j) *
                               (ss.C.cast<cplx>() * Eigen::VectorXcd(me.S.col(j)))(0));
        ok = amp > 0.0;
        for (const double threshold : {10.0, 1e3, 1e6}) {
            const int window =
                oracles::growth_window(threshold, std::abs(found.split->lambda), amp);
            Eigen::VectorXd x = x0;
            bool crossed = false;
            for (int k = 0; k <= window; ++k) {
                if (std::abs((ss.C * x)(0)) >= threshold) { crossed = true; break; }
                x = acl * x;
            }
            ok = ok && crossed;
        }
    }
    score.criterion(12, ok,
                    "linear-loop growth from ||P x_0|| > 1e-6 crosses 10, 1e3, 1e6 "
                    "within the computed windows");
}

void census_criterion(Scoreboard& score) {
    LureConfig cfg;
    cfg.ss = realize(dtlure::testing::second_order_reference());
    cfg.alpha = -2.5;
    cfg.x0 = Eigen::VectorXd::Zero(2);
    cfg.horizon = 2000;

    const auto start = std::chrono::steady_clock::now();
    const auto res = random_x0_census(cfg, 100, 0, 10.0);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    score.criterion(13, res.self_excited >= 99 && seconds < 10.0,
                    "census: >= 99 of 100 random starts self-excited (seed 0), under 10 s "
                    "(took " + std::to_string(seconds) + " s, " +
                        std::to_string(res.self_excited) + " self-excited)");
}

void modal_equivalence(Scoreboard& score) {
    TestRng rng(4096);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        const auto sys = dtlure::testing::random_validated_system(rng);
        const auto ss = realize(sys.tf);
        const Eigen::MatrixXd acl = closed_loop(ss, rng.uniform(-4.0, 4.0));
        Eigen::VectorXd x0(ss.n);
        for (int i = 0; i < ss.n; ++i) x0(i) = rng.uniform(-2.0, 2.0);
        const auto modal = modal_output(acl, ss.C, x0, 50);
        Eigen::VectorXd x = x0;
        double scale = 1.0;
        for (int k = 0; k <= 50; ++k) {
            const double direct = (ss.C * x)(0);
            scale = std::max(scale, std::abs(direct));
            ok = ok && std::abs(modal[static_cast<size_t>(k)] - direct) < 1e-8 * scale;
            x = acl * x;
        }
    }
    score.criterion(14, ok, "modal route vs direct iteration: relative error < 1e-8 up to k = 50 "
                            "(20 random systems)");
}

void appendix_oracles(Scoreboard& score) {
    TestRng rng(8191);
    bool ok = true;

    for (int trial = 0; trial < 10; ++trial) {
        oracles::ExponentialSum sum;
        const int terms = rng.uniform_int(1, 3);
        for (int t = 0; t < terms; ++t) {
            double modulus = t == 0 ? rng.uniform(1.1, 1.8) : rng.uniform(0.3, 1.6);
            cplx base = std::polar(modulus, rng.uniform(0.0, 2.0 * M_PI));
            bool distinct = true;
            for (const auto& other : sum.terms)
                if (std::abs(other.base - base) < 1e-3) distinct = false;
            if (!distinct) { --t; continue; }
            const cplx coeff = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * M_PI));
            sum.terms.push_back({{coeff}, base});
        }
        const auto res = oracles::limsup_probe(sum, {10.0, 1e3, 1e6});
        ok = ok && res.all_reached;
    }

    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4;
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-0.8, 0.8);
        const Poly chi = characteristic_polynomial(m);
        if (std::abs(chi(1.0)) < 1e-6) continue;
        Eigen::VectorXd x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x(i) = rng.uniform(-1.0, 1.0);
            y(i) = rng.uniform(-1.0, 1.0);
        }
        const auto res = oracles::cayley_limit_check(m, x, y, 60);
        double scale = 1.0;
        for (double t : res.t) scale = std::max(scale, std::abs(t));
        for (size_t k = 0; k + static_cast<size_t>(n) < res.t.size(); ++k) {
            double acc = 0.0;
            for (int i = 0; i <= n; ++i) acc += chi.coeff(i) * res.t[k + static_cast<size_t>(i)];
            ok = ok && std::abs(acc) < 1e-8 * scale;
        }
    }
    score.criterion(15, ok,
                    "appendix oracles: limsup ladders fully crossed (10 random sums); "
                    "recurrence residual < 1e-8 scale");
}

}  // namespace

int main() {
    Scoreboard score;
    crossing_analysis(score);
    spectral_split(score);
    exact_knife_edge(score);
    exact_perturbed(score);
    fourth_order_examples(score);
    random_system_properties(score);
    growth_thresholds(score);
    census_criterion(score);
    modal_equivalence(score);
    appendix_oracles(score);

    std::printf("%s: %d criterion(s) failed\n", score.failures == 0 ? "OK" : "FAILED",
                score.failures);
    return score.failures == 0 ? 0 : 1;
}
