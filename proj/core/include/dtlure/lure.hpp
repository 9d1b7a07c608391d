#ifndef DTLURE_LURE_HPP
#define DTLURE_LURE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtlure/realization.hpp"
#include "dtlure/spectral.hpp"

namespace dtlure {

/// Saturation regime at a step: positive saturation, linear region, negative
/// saturation.
enum class Mode { S1, S2, S3 };

std::string to_string(Mode m);

struct Tolerances {
    double conv_tol = 1e-9;      // final-window amplitude below this is convergence
    double osc_threshold = 1e-3; // final-window amplitude at or above this is oscillation
    double period_tol = 1e-7;    // state-recurrence tolerance for period detection
    double offX_tol = 1e-9;      // relative projection-norm floor for the hypothesis checks
    int window = 0;              // 0 = auto: max(50, 10 n)
};

struct LureConfig {
    StateSpace ss;
    double alpha = 0.0;
    Eigen::VectorXd x0;
    int horizon = 2000;
    Tolerances tol;
};

struct Transition {
    int k = 0;  // step at which the new mode takes effect
    Mode from = Mode::S2;
    Mode to = Mode::S2;
};

/**
 * A simulated closed-loop run: states, outputs, saturated inputs, the mode at
 * each step and the mode transitions. When a spectral split is attached the
 * projection norms || P x_k || are recorded. Exact-arithmetic runs also carry
 * exact renderings and exact-zero flags for the projections.
 */
struct Trajectory {
    std::vector<Eigen::VectorXd> x;
    std::vector<double> y;
    std::vector<double> nu;
    std::vector<Mode> mode;
    std::vector<double> proj_norm;        // empty when no split attached
    std::vector<Transition> transitions;

    bool exact = false;
    std::vector<std::vector<std::string>> x_exact;  // per step, per state entry
    std::vector<std::string> y_exact;
    std::vector<bool> proj_exact_zero;
    std::vector<std::string> warnings;

    int steps() const { return static_cast<int>(y.size()) - 1; }
};

/// Saturation: x clamped to [-gamma, gamma]. Requires gamma > 0.
double sat(double gamma, double x);

/// Classify an output value into its saturation mode (boundary values belong
/// to the saturated modes).
Mode mode_of(double y);

/**
 * Simulate x_{k+1} = A x_k + alpha B sat_1(C x_k) in floating point for
 * cfg.horizon steps. Aborts with TrajectoryOverflow if |y_k| ever exceeds
 * 1e12, which the boundedness result rules out for validated systems.
 */
Trajectory simulate(const LureConfig& cfg, const SpectralSplit* split = nullptr);

/**
 * Explicit output bound B_y = ||C|| (c ||x0|| + |alpha| sum_i ||A^i B||) from
 * a computed pair (c, rho) with ||A^i|| <= c rho^i and rho in (spr(A), 1).
 * Requires A Schur stable.
 */
double boundedness_bound(const LureConfig& cfg);

enum class Verdict { Convergent, SelfExcited, Inconclusive };

std::string to_string(Verdict v);

struct ClassificationReport {
    bool bounded = false;
    double bound = 0.0;          // the computed B_y
    double max_abs_y = 0.0;
    double final_window_amplitude = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<double> limit;   // always 0 when convergent
    std::optional<int> period;     // reported opportunistically
    std::array<int, 3> mode_census{0, 0, 0};
    std::string note;
};

/**
 * Classify a completed trajectory. Convergent means the final-window
 * amplitude fell below conv_tol; the limit is then 0 (the only value a
 * convergent output can have). SelfExcited means the amplitude stayed at or
 * above the oscillation threshold while remaining within the boundedness
 * bound; a state-recurrence period is attached when one is stable across the
 * last two windows. Anything in between is Inconclusive.
 */
ClassificationReport classify(const Trajectory& traj, const LureConfig& cfg);

struct HypothesisCheckEntry {
    int k = 0;          // step index of the state that was checked
    double proj = 0.0;  // measured || P x_k ||
    double threshold = 0.0;
    bool passed = false;
};

struct OscillationHypotheses {
    std::optional<HypothesisCheckEntry> x0_check;  // set only when S_0 = S2
    std::vector<HypothesisCheckEntry> reentry_checks;

    bool all_passed() const;
};

/**
 * Evaluate the self-excitation hypotheses along a trajectory: the initial
 * state must be off the complementary subspace when the run starts in the
 * linear region, and every state entering the linear region must be off it.
 * offX_tol is relative to the state norm. Exact-mode trajectories are checked
 * by the exact-zero flags instead of the float threshold.
 */
OscillationHypotheses check_oscillation_hypotheses(const Trajectory& traj,
                                                   const SpectralSplit& split, double offX_tol);

struct CensusResult {
    int trials = 0;
    int self_excited = 0;
    int convergent = 0;
    int inconclusive = 0;
    double fraction_self_excited = 0.0;
};

/**
 * Monte-Carlo sweep over initial conditions drawn uniformly from the box
 * [-box_halfwidth, box_halfwidth]^n; each trajectory is simulated and
 * classified. The draw is reproducible from the seed across platforms.
 */
CensusResult random_x0_census(const LureConfig& config_template, int trials, std::uint64_t seed,
                              double box_halfwidth = 10.0);

}  // namespace dtlure

#endif
