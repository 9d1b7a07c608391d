#ifndef DTLURE_ORACLES_HPP
#define DTLURE_ORACLES_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace dtlure::oracles {

/// One term p(k) * base^k of an exponential sum; the coefficient polynomial
/// in k has complex coefficients in ascending order.
struct ExpTerm {
    std::vector<std::complex<double>> poly;
    std::complex<double> base;
};

/**
 * A finite window of y_k = sum_i p_i(k) base_i^k. Bases must be pairwise
 * distinct and the coefficient polynomials nonzero; window <= 0 lets the
 * probes size the window themselves.
 */
struct ExponentialSum {
    std::vector<ExpTerm> terms;
    int window = 0;
};

std::complex<double> eval_exponential_sum(const ExponentialSum& s, int k);

/**
 * Finite rendering of an unbounded limsup: the first index at which |y_k|
 * crosses each threshold, within a window sized from log(threshold) /
 * log(max base modulus) times a slack factor. A NotReached entry (nullopt)
 * plus a decaying diagnostic ratio indicates the dominant-growth hypothesis
 * fails rather than the window being too short.
 */
struct LimsupProbeResult {
    std::vector<std::optional<int>> first_crossing;  // one per threshold
    int window_used = 0;
    double growth_ratio = 0.0;  // final-window max of |y_k| / (rho^k k^deg)
    bool all_reached = false;
};

LimsupProbeResult limsup_probe(const ExponentialSum& s, const std::vector<double>& thresholds);

/**
 * max_{k <= K} | sum_i a_i z_i^k | for distinct z_i with |z_i| >= 1 and
 * nonzero a_i. The window maximum is nondecreasing in K and stays away from
 * zero when any coefficient is nonzero.
 */
double unit_combo_floor(const std::vector<std::complex<double>>& a,
                        const std::vector<std::complex<double>>& z, int K);

enum class CayleyVerdict {
    ConvergedToZero,  // tail numerically Cauchy and the final value is ~0
    NonConvergent,    // tail not Cauchy: the limit hypothesis is unmet
    LimitNotZero,     // Cauchy tail with a nonzero value; must not happen when 1 is not an eigenvalue
};

struct CayleyResult {
    CayleyVerdict verdict = CayleyVerdict::NonConvergent;
    double final_value = 0.0;
    double cauchy_residual = 0.0;
    std::vector<double> t;  // the probed sequence t_k = y^T M^k x
};

/**
 * Probes t_k = y^T M^k x for K steps. Requires 1 not to be an eigenvalue of M
 * (|chi_M(1)| above tolerance), under which a convergent tail can only
 * converge to zero.
 */
CayleyResult cayley_limit_check(const Eigen::MatrixXd& M, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, int K, double tol = 1e-9);

/// Window length for observing |p(k) rho^k| to exceed a threshold, with the
/// slack factor the probes use.
int growth_window(double threshold, double rho, double amplitude_scale);

}  // namespace dtlure::oracles

#endif
