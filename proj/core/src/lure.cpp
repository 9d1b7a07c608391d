#include "dtlure/lure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dtlure/errors.hpp"

namespace dtlure {

namespace {
constexpr double kOverflowGuard = 1e12;
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::S1: return "S1";
        case Mode::S2: return "S2";
        case Mode::S3: return "S3";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Convergent: return "convergent";
        case Verdict::SelfExcited: return "self_excited";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

double sat(double gamma, double x) {
    if (gamma <= 0.0) throw std::invalid_argument("sat requires gamma > 0");
    return std::clamp(x, -gamma, gamma);
}

Mode mode_of(double y) {
    if (y >= 1.0) return Mode::S1;
    if (y <= -1.0) return Mode::S3;
    return Mode::S2;
}

Trajectory simulate(const LureConfig& cfg, const SpectralSplit* split) {
    const int n = cfg.ss.n;
    if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (cfg.x0.size() != n) throw std::invalid_argument("x0 dimension does not match the system");

    Trajectory traj;
    const int K = cfg.horizon;
    traj.x.reserve(static_cast<size_t>(K) + 1);
    traj.y.reserve(static_cast<size_t>(K) + 1);
    traj.nu.reserve(static_cast<size_t>(K) + 1);
    traj.mode.reserve(static_cast<size_t>(K) + 1);
    if (split) traj.proj_norm.reserve(static_cast<size_t>(K) + 1);

    Eigen::VectorXd x = cfg.x0;
    for (int k = 0; k <= K; ++k) {
        const double y = (cfg.ss.C * x)(0);
        if (std::abs(y) > kOverflowGuard)
            throw TrajectoryOverflow("output exceeded 1e12 at step " + std::to_string(k) +
                                     "; saturated loops are bounded, this signals a bug");
        const double nu = sat(1.0, y);
        const Mode m = mode_of(y);
        traj.x.push_back(x);
        traj.y.push_back(y);
        traj.nu.push_back(nu);
        traj.mode.push_back(m);
        if (split) traj.proj_norm.push_back(projection_norm(split->psi, x));
        if (k >= 1 && traj.mode[static_cast<size_t>(k) - 1] != m)
            traj.transitions.push_back({k, traj.mode[static_cast<size_t>(k) - 1], m});
        if (k < K) x = cfg.ss.A * x + cfg.alpha * nu * cfg.ss.B;
    }
    return traj;
}

double boundedness_bound(const LureConfig& cfg) {
    const Eigen::MatrixXd& A = cfg.ss.A;
    const int n = cfg.ss.n;

    const auto op_norm = [](const Eigen::MatrixXd& M) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        return svd.singularValues()(0);
    };

    const double spr_A = [&] {
        Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
        double m = 0.0;
        for (const auto& z : es.eigenvalues()) m = std::max(m, std::abs(z));
        return m;
    }();
    if (spr_A >= 1.0) throw std::invalid_argument("boundedness bound requires spr(A) < 1");

    const double rho = 0.5 * (1.0 + spr_A);

    // Find i0 with ||A^{i0}|| <= rho^{i0}; then c = max_{i < i0} ||A^i|| / rho^i
    // certifies ||A^i|| <= c rho^i for every i.
    double c = 1.0;
    double partial_sum = 0.0;
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    double rho_i = 1.0;
    int i = 0;
    for (;; ++i) {
        const double norm_i = op_norm(power);
        if (i > 0 && norm_i <= rho_i) break;
        c = std::max(c, norm_i / rho_i);
        partial_sum += (power * cfg.ss.B).norm();
        power = A * power;
        rho_i *= rho;
        if (i > 10000) throw std::logic_error("boundedness bound iteration failed to terminate");
    }
    const double tail = c * rho_i * cfg.ss.B.norm() / (1.0 - rho);
    const double sum_AiB = partial_sum + tail;

    return cfg.ss.C.norm() * (c * cfg.x0.norm() + std::abs(cfg.alpha) * sum_AiB);
}

namespace {

// Smallest period p <= max_p whose state recurrence over [lo, hi-p] stays
// within tol; 0 when none qualifies.
int detect_period(const Trajectory& traj, int lo, int hi, int max_p, double tol) {
    for (int p = 1; p <= max_p; ++p) {
        double worst = 0.0;
        for (int k = lo; k + p <= hi; ++k)
            worst = std::max(worst, (traj.x[static_cast<size_t>(k)] -
                                     traj.x[static_cast<size_t>(k + p)]).norm());
        if (worst < tol) return p;
    }
    return 0;
}

}  // namespace

ClassificationReport classify(const Trajectory& traj, const LureConfig& cfg) {
    const int K = traj.steps();
    if (K < 1) throw std::invalid_argument("classify requires a completed trajectory");

    ClassificationReport rep;
    rep.bound = boundedness_bound(cfg);
    for (double y : traj.y) rep.max_abs_y = std::max(rep.max_abs_y, std::abs(y));
    rep.bounded = rep.max_abs_y <= rep.bound * (1.0 + 1e-9);
    for (Mode m : traj.mode) rep.mode_census[static_cast<size_t>(m)] += 1;

    const int W = cfg.tol.window > 0 ? cfg.tol.window : std::max(50, 10 * cfg.ss.n);
    const int lo = std::max(K - W, K / 2);
    double amp = 0.0;
    for (int k = lo; k <= K; ++k) amp = std::max(amp, std::abs(traj.y[static_cast<size_t>(k)]));
    rep.final_window_amplitude = amp;

    if (amp < cfg.tol.conv_tol) {
        rep.verdict = Verdict::Convergent;
        rep.limit = 0.0;
        return rep;
    }
    if (amp >= cfg.tol.osc_threshold && rep.bounded) {
        rep.verdict = Verdict::SelfExcited;
        double state_scale = 1.0;
        for (int k = lo; k <= K; ++k)
            state_scale = std::max(state_scale, traj.x[static_cast<size_t>(k)].norm());
        const double tol = cfg.tol.period_tol * state_scale;
        const int p1 = detect_period(traj, lo, K, W / 2, tol);
        if (p1 > 0 && lo - W >= 0) {
            const int p0 = detect_period(traj, lo - W, lo, W / 2, tol);
            if (p0 == p1) rep.period = p1;
        }
        if (!rep.period.has_value())
            rep.note = "oscillatory but no stable state period within the window";
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.note = rep.bounded
                   ? "final amplitude between conv_tol and the oscillation threshold; extend the horizon"
                   : "trajectory exceeded the computed bound";
    return rep;
}

bool OscillationHypotheses::all_passed() const {
    if (x0_check && !x0_check->passed) return false;
    for (const auto& e : reentry_checks)
        if (!e.passed) return false;
    return true;
}

OscillationHypotheses check_oscillation_hypotheses(const Trajectory& traj,
                                                   const SpectralSplit& split, double offX_tol) {
    OscillationHypotheses rep;
    const int K = traj.steps();
    const bool have_norms = !traj.proj_norm.empty();

    const auto entry_for = [&](int k) {
        HypothesisCheckEntry e;
        e.k = k;
        e.proj = have_norms ? traj.proj_norm[static_cast<size_t>(k)]
                            : projection_norm(split.psi, traj.x[static_cast<size_t>(k)]);
        e.threshold = offX_tol * std::max(1e-300, traj.x[static_cast<size_t>(k)].norm());
        if (traj.exact && !traj.proj_exact_zero.empty())
            e.passed = !traj.proj_exact_zero[static_cast<size_t>(k)];
        else
            e.passed = e.proj > e.threshold;
        return e;
    };

    if (traj.mode[0] == Mode::S2) rep.x0_check = entry_for(0);
    for (int k = 0; k < K; ++k)
        if (traj.mode[static_cast<size_t>(k)] != Mode::S2 &&
            traj.mode[static_cast<size_t>(k) + 1] == Mode::S2)
            rep.reentry_checks.push_back(entry_for(k + 1));
    return rep;
}

CensusResult random_x0_census(const LureConfig& config_template, int trials, std::uint64_t seed,
                              double box_halfwidth) {
    if (trials < 1) throw std::invalid_argument("census requires trials >= 1");
    CensusResult res;
    res.trials = trials;

    std::mt19937_64 rng(seed);
    // Explicit bit mapping keeps the draw identical across standard libraries.
    const auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    };

    LureConfig cfg = config_template;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd x0(cfg.ss.n);
        for (int i = 0; i < cfg.ss.n; ++i) x0(i) = box_halfwidth * (2.0 * unit() - 1.0);
        cfg.x0 = x0;
        const Trajectory traj = simulate(cfg);
        const ClassificationReport rep = classify(traj, cfg);
        switch (rep.verdict) {
            case Verdict::SelfExcited: ++res.self_excited; break;
            case Verdict::Convergent: ++res.convergent; break;
            case Verdict::Inconclusive: ++res.inconclusive; break;
        }
    }
    res.fraction_self_excited = static_cast<double>(res.self_excited) / trials;
    return res;
}

}  // namespace dtlure
