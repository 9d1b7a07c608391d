#ifndef DTLURE_STABILITY_HPP
#define DTLURE_STABILITY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtlure/poly.hpp"
#include "dtlure/realization.hpp"

namespace dtlure {

/// A bracket-polynomial root that was found but not classified into a
/// crossing set, with the reason it was set aside.
struct CrossingDiagnostic {
    std::complex<double> z;
    double theta = 0.0;
    std::complex<double> g_value;
    std::string reason;
};

/**
 * Unit-circle crossing structure of the root locus of alpha G / (1 - alpha G):
 * the angles where G(e^{j theta}) is real negative (theta_n) or real positive
 * (theta_p), the gain 1/G(e^{j theta}) at each, and the stability interval
 * endpoints alpha_n = max of the negative gains, alpha_p = min of the positive
 * gains. An empty set leaves the corresponding endpoint unset (the interval is
 * unbounded on that side).
 */
struct CrossingSet {
    std::vector<double> theta_n;
    std::vector<double> theta_p;
    std::map<double, double> gains;
    std::optional<double> alpha_n;
    std::optional<double> alpha_p;
    std::vector<CrossingDiagnostic> diagnostics;

    bool theta_n_empty() const { return theta_n.empty(); }
    bool theta_p_empty() const { return theta_p.empty(); }
};

CrossingSet crossings(const TransferFunction& G);

/// spr(D - alpha N) and the full root set, per grid point.
struct SweepResult {
    std::vector<double> alphas;
    std::vector<double> spr_values;
    std::vector<RootSet> root_tracks;
};

SweepResult spr_sweep(const TransferFunction& G, const std::vector<double>& alpha_grid);

std::vector<double> linspace(double lo, double hi, int steps);

/// Bisection-refined alphas where spr(p_alpha) crosses 1 between sweep grid
/// points, each located to within tol.
std::vector<double> refine_unit_crossings(const TransferFunction& G, const SweepResult& sweep,
                                          double tol = 1e-9);

/// True iff spr(D - alpha N) < 1 - margin. The guaranteed interval
/// (alpha_n, alpha_p) is contained in the stable set, but the stable set can
/// be larger.
bool stable_interval_check(const TransferFunction& G, double alpha, double margin = 1e-9);

struct RootCensus {
    int count_outside = 0;
    bool all_simple = true;
};

/// Roots of p_alpha strictly outside the closed unit disk, and whether all of
/// them are simple.
RootCensus unstable_root_census(const TransferFunction& G, double alpha);

struct GainThresholds {
    double beta_n = 0.0;
    double beta_p = 0.0;
    int samples_checked = 0;
};

/**
 * Sampled evidence for the root-locus asymptote thresholds: the
 * smallest-magnitude beta_n < 0 and beta_p > 0 such that every sampled alpha
 * beyond them (out to +/- search_bound) yields at least n - m simple roots
 * outside the unit circle. Boundaries are bisection-refined to 1e-9. Throws
 * SearchExhausted when a side has no passing tail within the bound.
 */
GainThresholds gain_thresholds(const TransferFunction& G, double search_bound,
                               int samples_per_side = 800);

}  // namespace dtlure

#endif
