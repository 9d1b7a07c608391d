#include "dtlure/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtlure/spectral.hpp"

namespace dtlure::oracles {

namespace {
constexpr double kBaseClusterTol = 1e-9;
constexpr int kWindowFloor = 64;
constexpr double kWindowSlack = 4.0;

void validate_sum(const ExponentialSum& s) {
    for (const auto& term : s.terms) {
        bool nonzero = false;
        for (const auto& c : term.poly)
            if (std::abs(c) > 0.0) nonzero = true;
        if (!nonzero) throw std::invalid_argument("exponential sum has a zero coefficient polynomial");
    }
    for (size_t i = 0; i < s.terms.size(); ++i)
        for (size_t j = i + 1; j < s.terms.size(); ++j)
            if (std::abs(s.terms[i].base - s.terms[j].base) <= kBaseClusterTol)
                throw std::invalid_argument("exponential sum bases must be distinct");
}

std::complex<double> eval_poly_at_k(const std::vector<std::complex<double>>& poly, int k) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        acc = acc * static_cast<double>(k) + *it;
    return acc;
}

}  // namespace

std::complex<double> eval_exponential_sum(const ExponentialSum& s, int k) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& term : s.terms)
        acc += eval_poly_at_k(term.poly, k) * std::pow(term.base, k);
    return acc;
}

int growth_window(double threshold, double rho, double amplitude_scale) {
    if (rho <= 1.0) return kWindowFloor;
    const double needed = std::log(std::max(threshold / std::max(amplitude_scale, 1e-300), 2.0)) /
                          std::log(rho);
    return std::max(kWindowFloor, static_cast<int>(std::ceil(kWindowSlack * needed)));
}

LimsupProbeResult limsup_probe(const ExponentialSum& s, const std::vector<double>& thresholds) {
    validate_sum(s);

    double rho = 0.0;
    for (const auto& term : s.terms) rho = std::max(rho, std::abs(term.base));
    int deg_at_rho = 0;
    double amp = 0.0;
    for (const auto& term : s.terms) {
        if (std::abs(term.base) > rho - kBaseClusterTol) {
            deg_at_rho = std::max(deg_at_rho, static_cast<int>(term.poly.size()) - 1);
            for (const auto& c : term.poly) amp = std::max(amp, std::abs(c));
        }
    }

    LimsupProbeResult res;
    int window = s.window;
    if (window <= 0) {
        double max_threshold = 1.0;
        for (double t : thresholds) max_threshold = std::max(max_threshold, t);
        window = growth_window(max_threshold, rho, amp);
    }
    res.window_used = window;
    res.first_crossing.assign(thresholds.size(), std::nullopt);

    // Bases advanced iteratively; |y_k| can be astronomically large near the
    // window end, so stop early once every threshold is crossed.
    std::vector<std::complex<double>> powers(s.terms.size(), {1.0, 0.0});
    const int diag_lo = window - std::max(1, window / 5);
    for (int k = 0; k <= window; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = 0; i < s.terms.size(); ++i) {
            acc += eval_poly_at_k(s.terms[i].poly, k) * powers[i];
            powers[i] *= s.terms[i].base;
        }
        const double mag = std::abs(acc);
        bool pending = false;
        for (size_t t = 0; t < thresholds.size(); ++t) {
            if (!res.first_crossing[t] && mag >= thresholds[t]) res.first_crossing[t] = k;
            if (!res.first_crossing[t]) pending = true;
        }
        if (k >= diag_lo) {
            const double normalizer =
                std::pow(rho, k) * std::pow(std::max(1.0, static_cast<double>(k)), deg_at_rho);
            res.growth_ratio = std::max(res.growth_ratio, mag / normalizer);
        }
        if (!pending && k >= diag_lo) break;
    }
    res.all_reached = true;
    for (const auto& c : res.first_crossing)
        if (!c) res.all_reached = false;
    return res;
}

double unit_combo_floor(const std::vector<std::complex<double>>& a,
                        const std::vector<std::complex<double>>& z, int K) {
    if (a.size() != z.size()) throw std::invalid_argument("coefficient/base count mismatch");
    if (K < 0) throw std::invalid_argument("window must be nonnegative");
    std::vector<std::complex<double>> powers(z.size(), {1.0, 0.0});
    double best = 0.0;
    for (int k = 0; k <= K; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = 0; i < a.size(); ++i) {
            acc += a[i] * powers[i];
            powers[i] *= z[i];
        }
        best = std::max(best, std::abs(acc));
    }
    return best;
}

CayleyResult cayley_limit_check(const Eigen::MatrixXd& M, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, int K, double tol) {
    const Poly chi = characteristic_polynomial(M);
    const double chi_at_one = std::abs(chi(1.0));
    if (chi_at_one <= tol * std::max(1.0, chi.coefficient_scale()))
        throw std::invalid_argument("1 is (numerically) an eigenvalue of M");

    CayleyResult res;
    res.t.reserve(static_cast<size_t>(K) + 1);
    Eigen::VectorXd v = x;
    for (int k = 0; k <= K; ++k) {
        res.t.push_back(y.dot(v));
        if (k < K) v = M * v;
    }

    double scale = 0.0;
    for (double tv : res.t) scale = std::max(scale, std::abs(tv));
    scale = std::max(scale, 1e-300);

    const int window_lo = K - std::max(2, K / 5);
    double cauchy = 0.0;
    for (int k = std::max(0, window_lo); k < K; ++k)
        cauchy = std::max(cauchy, std::abs(res.t[static_cast<size_t>(k) + 1] -
                                           res.t[static_cast<size_t>(k)]));
    res.cauchy_residual = cauchy;
    res.final_value = res.t.back();

    if (cauchy >= tol * scale) {
        res.verdict = CayleyVerdict::NonConvergent;
    } else if (std::abs(res.final_value) < tol * scale) {
        res.verdict = CayleyVerdict::ConvergedToZero;
    } else {
        res.verdict = CayleyVerdict::LimitNotZero;
    }
    return res;
}

}  // namespace dtlure::oracles
