#include "dtlure/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtlure/errors.hpp"

namespace dtlure {

namespace {
constexpr double kUnitBand = 1e-7;       // | |z|-1 | acceptance band after refinement
constexpr double kRealAxisRel = 1e-7;    // |Im G| / |G| band for a real crossing
constexpr double kDegenerateG = 1e-10;   // |G| below this is a rejected candidate
constexpr double kThetaDedup = 1e-9;
constexpr double kOutsideTol = 1e-9;     // |z| > 1 + tol counts as outside
}  // namespace

CrossingSet crossings(const TransferFunction& G) {
    if (!G.valid()) throw std::invalid_argument("crossings requires a validated transfer function");

    const Poly h = reciprocal_bracket(G.num(), G.den());
    CrossingSet cs;
    if (h.is_zero() || h.degree().value() < 1) return cs;

    const Poly dh = h.derivative();
    std::vector<double> candidates;
    for (const auto& root : roots(h).roots) {
        // One Newton step tightens roots that genuinely sit on the circle.
        std::complex<double> z = root;
        const std::complex<double> dv = dh(z);
        if (std::abs(dv) > 1e-300) {
            const std::complex<double> z2 = z - h(z) / dv;
            if (std::abs(h(z2)) < std::abs(h(z))) z = z2;
        }
        if (std::abs(std::abs(z) - 1.0) >= kUnitBand) continue;

        const double theta = std::atan2(z.imag(), z.real());
        if (std::abs(theta) <= kUnitBand) continue;  // the structural root at z = 1

        const std::complex<double> on_circle = std::polar(1.0, theta);
        const std::complex<double> g = G(on_circle);
        if (std::abs(g) < kDegenerateG) {
            cs.diagnostics.push_back({z, theta, g, "G vanishes at candidate angle"});
            continue;
        }
        if (std::abs(g.imag()) >= kRealAxisRel * std::abs(g)) {
            cs.diagnostics.push_back({z, theta, g, "G not real at candidate angle"});
            continue;
        }
        candidates.push_back(theta);
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](double a, double b) { return std::abs(a - b) < kThetaDedup; }),
                     candidates.end());

    for (double theta : candidates) {
        const std::complex<double> g = G(std::polar(1.0, theta));
        const double gain = 1.0 / g.real();
        cs.gains[theta] = gain;
        if (g.real() < 0.0) cs.theta_n.push_back(theta);
        else cs.theta_p.push_back(theta);
    }

    if (!cs.theta_n.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        for (double t : cs.theta_n) best = std::max(best, cs.gains[t]);
        cs.alpha_n = best;
    }
    if (!cs.theta_p.empty()) {
        double best = std::numeric_limits<double>::infinity();
        for (double t : cs.theta_p) best = std::min(best, cs.gains[t]);
        cs.alpha_p = best;
    }
    return cs;
}

SweepResult spr_sweep(const TransferFunction& G, const std::vector<double>& alpha_grid) {
    if (!G.valid()) throw std::invalid_argument("spr_sweep requires a validated transfer function");
    if (alpha_grid.empty()) throw std::invalid_argument("spr_sweep requires a nonempty grid");

    SweepResult sw;
    sw.alphas = alpha_grid;
    sw.spr_values.reserve(alpha_grid.size());
    sw.root_tracks.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        RootSet rs = roots(G.closed_loop_charpoly(alpha));
        double m = 0.0;
        for (const auto& z : rs.roots) m = std::max(m, std::abs(z));
        sw.spr_values.push_back(m);
        sw.root_tracks.push_back(std::move(rs));
    }
    return sw;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw std::invalid_argument("linspace requires steps >= 1");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(steps));
    if (steps == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < steps; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
    return out;
}

std::vector<double> refine_unit_crossings(const TransferFunction& G, const SweepResult& sweep,
                                          double tol) {
    const auto spr_at = [&G](double alpha) {
        return spectral_radius(G.closed_loop_charpoly(alpha));
    };
    std::vector<double> out;
    for (size_t i = 0; i + 1 < sweep.alphas.size(); ++i) {
        const double f0 = sweep.spr_values[i] - 1.0;
        const double f1 = sweep.spr_values[i + 1] - 1.0;
        if (f0 == 0.0) {
            out.push_back(sweep.alphas[i]);
            continue;
        }
        if (f0 * f1 > 0.0) continue;
        double lo = sweep.alphas[i], hi = sweep.alphas[i + 1];
        double flo = f0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = spr_at(mid) - 1.0;
            if (flo * fm <= 0.0) hi = mid;
            else { lo = mid; flo = fm; }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

bool stable_interval_check(const TransferFunction& G, double alpha, double margin) {
    if (!G.valid()) throw std::invalid_argument("stable_interval_check requires a validated system");
    return spectral_radius(G.closed_loop_charpoly(alpha)) < 1.0 - margin;
}

RootCensus unstable_root_census(const TransferFunction& G, double alpha) {
    if (!G.valid()) throw std::invalid_argument("unstable_root_census requires a validated system");
    const RootSet rs = roots(G.closed_loop_charpoly(alpha));
    RootCensus census;
    for (size_t i = 0; i < rs.roots.size(); ++i) {
        if (std::abs(rs.roots[i]) > 1.0 + kOutsideTol) {
            census.count_outside += rs.multiplicities[i];
            if (rs.multiplicities[i] > 1) census.all_simple = false;
        }
    }
    return census;
}

namespace {

bool census_passes(const TransferFunction& G, double alpha, int needed) {
    const RootCensus c = unstable_root_census(G, alpha);
    return c.count_outside >= needed && c.all_simple;
}

// Bisect the pass/fail boundary between a passing and a failing alpha.
double refine_boundary(const TransferFunction& G, double pass_side, double fail_side, int needed) {
    while (std::abs(pass_side - fail_side) > 1e-9) {
        const double mid = 0.5 * (pass_side + fail_side);
        if (census_passes(G, mid, needed)) pass_side = mid;
        else fail_side = mid;
    }
    return 0.5 * (pass_side + fail_side);
}

}  // namespace

GainThresholds gain_thresholds(const TransferFunction& G, double search_bound,
                               int samples_per_side) {
    if (!G.valid()) throw std::invalid_argument("gain_thresholds requires a validated system");
    if (search_bound <= 0.0 || samples_per_side < 2)
        throw std::invalid_argument("gain_thresholds requires a positive bound and >= 2 samples");
    const int needed = G.n() - G.m();

    GainThresholds th;
    th.samples_checked = 2 * samples_per_side;

    // Negative side: walk from -bound toward 0 and stop at the first failure.
    {
        const std::vector<double> grid =
            linspace(-search_bound, -search_bound / samples_per_side, samples_per_side);
        if (!census_passes(G, grid.front(), needed))
            throw SearchExhausted("no passing tail for alpha < 0 within search bound");
        double last_pass = grid.front();
        std::optional<double> first_fail;
        for (double a : grid) {
            if (census_passes(G, a, needed)) last_pass = a;
            else { first_fail = a; break; }
        }
        th.beta_n = first_fail ? refine_boundary(G, last_pass, *first_fail, needed) : grid.back();
    }

    // Positive side: walk from +bound toward 0.
    {
        const std::vector<double> grid =
            linspace(search_bound, search_bound / samples_per_side, samples_per_side);
        if (!census_passes(G, grid.front(), needed))
            throw SearchExhausted("no passing tail for alpha > 0 within search bound");
        double last_pass = grid.front();
        std::optional<double> first_fail;
        for (double a : grid) {
            if (census_passes(G, a, needed)) last_pass = a;
            else { first_fail = a; break; }
        }
        th.beta_p = first_fail ? refine_boundary(G, last_pass, *first_fail, needed) : grid.back();
    }
    return th;
}

}  // namespace dtlure
