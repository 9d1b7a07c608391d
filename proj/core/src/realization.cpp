#include "dtlure/realization.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dtlure {

namespace {
constexpr double kCoprimeRel = 1e-10;
constexpr double kZeroAtOneRel = 1e-9;
constexpr double kUnitCircleBand = 1e-7;
constexpr double kMonicTol = 1e-12;
constexpr double kProbeTol = 1e-9;
}  // namespace

std::string to_string(ValidationIssue issue) {
    switch (issue) {
        case ValidationIssue::NotStrictlyProper: return "NotStrictlyProper";
        case ValidationIssue::NotAsymptoticallyStable: return "NotAsymptoticallyStable";
        case ValidationIssue::NotCoprime: return "NotCoprime";
        case ValidationIssue::NoZeroAtOne: return "NoZeroAtOne";
        case ValidationIssue::ExtraUnitCircleZero: return "ExtraUnitCircleZero";
        case ValidationIssue::DenNotMonic: return "DenNotMonic";
    }
    return "Unknown";
}

double resultant(const Poly& a, const Poly& b) {
    const auto da = a.degree(), db = b.degree();
    if (!da || !db) return 0.0;
    const int m = *da, n = *db;
    if (m == 0 && n == 0) return 1.0;
    const int size = m + n;
    Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(size, size);
    // n rows of a's coefficients (descending), then m rows of b's.
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) syl(r, r + i) = a.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl(n + r, r + i) = b.coeff(n - i);
    return syl.fullPivLu().determinant();
}

TransferFunction TransferFunction::validate(const Poly& num, const Poly& den) {
    const auto dd = den.degree();
    if (!dd || *dd < 1) throw std::invalid_argument("denominator must have degree >= 1");

    TransferFunction tf;
    Poly N = num, D = den;
    ValidationReport& rep = tf.report_;

    // Normalize to a monic denominator, scaling the numerator to preserve G.
    const double lead = D.leading();
    const bool monic = std::abs(lead - 1.0) <= kMonicTol;
    if (!monic) {
        D = (1.0 / lead) * D;
        N = (1.0 / lead) * N;
        rep.warnings.push_back("denominator rescaled to monic (leading coefficient " +
                               std::to_string(lead) + ")");
    }
    rep.checks.push_back({"den_monic", true, lead,
                          monic ? "denominator is monic" : "auto-normalized"});

    const int n = D.degree().value();
    const int m = N.is_zero() ? -1 : N.degree().value();
    tf.n_ = n;
    tf.m_ = std::max(m, 0);

    const bool strictly_proper = m < n;
    rep.checks.push_back({"strictly_proper", strictly_proper, static_cast<double>(m),
                          "deg N = " + std::to_string(m) + ", deg D = " + std::to_string(n)});
    if (!strictly_proper) rep.failures.push_back(ValidationIssue::NotStrictlyProper);

    const double scale = std::max({1.0, N.coefficient_scale(), D.coefficient_scale()});
    const double res = N.is_zero() ? 0.0 : resultant(N, D);
    const double res_floor = kCoprimeRel * std::pow(scale, n + std::max(m, 0));
    const bool coprime = std::abs(res) > res_floor;
    char floor_text[32];
    std::snprintf(floor_text, sizeof(floor_text), "%.3g", res_floor);
    rep.checks.push_back({"coprime", coprime, res,
                          std::string("resultant vs floor ") + floor_text});
    if (!coprime) rep.failures.push_back(ValidationIssue::NotCoprime);

    const double sprD = spectral_radius(D);
    const bool stable = sprD < 1.0;
    rep.checks.push_back({"den_schur_stable", stable, sprD, "spectral radius of D"});
    if (!stable) rep.failures.push_back(ValidationIssue::NotAsymptoticallyStable);

    const double n_at_one = std::abs(N(std::complex<double>(1.0, 0.0)));
    const bool zero_at_one = !N.is_zero() && n_at_one <= kZeroAtOneRel * std::max(1.0, N.coefficient_scale());
    rep.checks.push_back({"zero_at_one", zero_at_one, n_at_one, "|N(1)|"});
    if (!zero_at_one) rep.failures.push_back(ValidationIssue::NoZeroAtOne);

    bool no_extra_circle_zero = true;
    double closest_band = 1.0;
    if (!N.is_zero() && N.degree().value() >= 1) {
        for (const auto& z : roots(N).roots) {
            if (std::abs(z - std::complex<double>(1.0, 0.0)) <= kUnitCircleBand) continue;
            const double band = std::abs(std::abs(z) - 1.0);
            closest_band = std::min(closest_band, band);
            if (band < kUnitCircleBand) no_extra_circle_zero = false;
        }
    }
    rep.checks.push_back({"no_extra_unit_circle_zero", no_extra_circle_zero, closest_band,
                          "min | |z|-1 | over zeros of N away from 1"});
    if (!no_extra_circle_zero) rep.failures.push_back(ValidationIssue::ExtraUnitCircleZero);

    tf.num_ = N;
    tf.den_ = D;
    return tf;
}

std::complex<double> TransferFunction::operator()(std::complex<double> z) const {
    return num_(z) / den_(z);
}

Poly TransferFunction::closed_loop_charpoly(double alpha) const {
    return den_ - alpha * num_;
}

StateSpace realize(const TransferFunction& G) {
    if (!G.valid()) {
        std::ostringstream os;
        os << "cannot realize an invalid transfer function:";
        for (auto f : G.validation().failures) os << " " << to_string(f);
        throw std::invalid_argument(os.str());
    }
    const int n = G.n();
    const Poly& D = G.den();
    const Poly& N = G.num();

    StateSpace ss;
    ss.n = n;
    ss.A = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) ss.A(0, j) = -D.coeff(n - 1 - j);
    for (int i = 1; i < n; ++i) ss.A(i, i - 1) = 1.0;
    ss.B = Eigen::VectorXd::Zero(n);
    ss.B(0) = 1.0;
    ss.C = Eigen::RowVectorXd::Zero(n);
    for (int j = 0; j < n; ++j) ss.C(j) = N.coeff(n - 1 - j);

    // Probe the realization against G outside the unit disk, where D cannot
    // vanish for a validated system.
    std::mt19937_64 rng(0xd71u);
    const auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    };
    for (int probe = 0; probe < 16; ++probe) {
        const double radius = 1.1 + 0.9 * unit();
        const double angle = 2.0 * M_PI * unit();
        const std::complex<double> z = std::polar(radius, angle);
        Eigen::MatrixXcd zi = z * Eigen::MatrixXcd::Identity(n, n) - ss.A.cast<std::complex<double>>();
        const std::complex<double> via_ss =
            (ss.C.cast<std::complex<double>>() * zi.lu().solve(ss.B.cast<std::complex<double>>()))(0);
        if (std::abs(via_ss - G(z)) > kProbeTol)
            throw std::logic_error("state-space realization does not reproduce G at probe point");
    }
    return ss;
}

Eigen::MatrixXd closed_loop(const StateSpace& ss, double alpha) {
    return ss.A + alpha * ss.B * ss.C;
}

}  // namespace dtlure
