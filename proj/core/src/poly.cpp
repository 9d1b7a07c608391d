#include "dtlure/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dtlure {

namespace {
constexpr double kTrimRel = 1e-12;
constexpr double kClusterRel = 1e-6;
}  // namespace

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::monomial(int k, double c) {
    std::vector<double> v(static_cast<size_t>(k) + 1, 0.0);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    double scale = 0.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
        coeffs_.clear();
        return;
    }
    const double cutoff = kTrimRel * scale;
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cutoff) coeffs_.pop_back();
}

std::optional<int> Poly::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
}

double Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(i)];
}

double Poly::leading() const {
    if (coeffs_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

double Poly::coefficient_scale() const {
    double s = 0.0;
    for (double c : coeffs_) s = std::max(s, std::abs(c));
    return s;
}

std::complex<double> Poly::operator()(std::complex<double> z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double Poly::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out));
}

Poly operator*(double s, const Poly& p) {
    std::vector<double> out = p.coeffs_;
    for (double& c : out) c *= s;
    return Poly(std::move(out));
}

Poly Poly::operator-() const { return -1.0 * (*this); }

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
        double c = coeffs_[static_cast<size_t>(i)];
        if (c == 0.0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        double ac = std::abs(c);
        if (i == 0 || ac != 1.0) os << ac;
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

int RootSet::total_multiplicity() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

std::vector<std::complex<double>> RootSet::expanded() const {
    std::vector<std::complex<double>> out;
    for (size_t i = 0; i < roots.size(); ++i)
        out.insert(out.end(), static_cast<size_t>(multiplicities[i]), roots[i]);
    return out;
}

namespace {

// One guarded Newton step; keeps the iterate only if the residual improves.
std::complex<double> polish(const Poly& p, const Poly& dp, std::complex<double> z) {
    const std::complex<double> pv = p(z);
    const std::complex<double> dv = dp(z);
    if (std::abs(dv) < 1e-300) return z;
    const std::complex<double> z2 = z - pv / dv;
    return (std::abs(p(z2)) < std::abs(pv)) ? z2 : z;
}

}  // namespace

RootSet roots(const Poly& p) {
    const auto deg = p.degree();
    if (!deg || *deg < 1) throw std::invalid_argument("no roots defined");
    const int n = *deg;
    const double lead = p.leading();

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> raw(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = es.eigenvalues()(i);

    const Poly dp = p.derivative();
    for (auto& z : raw) z = polish(p, dp, z);

    // Re-pair conjugates exactly (the Newton polish can break the symmetry
    // the real Schur form guarantees).
    std::sort(raw.begin(), raw.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (size_t i = 0; i + 1 < raw.size(); ++i) {
        if (raw[i].imag() < 0.0 && std::abs(raw[i + 1] - std::conj(raw[i])) <
                                       1e-8 * std::max(1.0, std::abs(raw[i]))) {
            const double re = 0.5 * (raw[i].real() + raw[i + 1].real());
            const double im = 0.5 * (raw[i + 1].imag() - raw[i].imag());
            raw[i] = {re, -im};
            raw[i + 1] = {re, im};
            ++i;
        }
    }

    // Cluster near-coincident roots into multiplicities.
    std::vector<int> cluster(raw.size());
    std::iota(cluster.begin(), cluster.end(), 0);
    const auto find_root = [&](int i) {
        while (cluster[static_cast<size_t>(i)] != i) i = cluster[static_cast<size_t>(i)];
        return i;
    };
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            const double scale = std::max(1.0, std::max(std::abs(raw[i]), std::abs(raw[j])));
            if (std::abs(raw[i] - raw[j]) < kClusterRel * scale)
                cluster[static_cast<size_t>(find_root(static_cast<int>(j)))] =
                    find_root(static_cast<int>(i));
        }

    RootSet rs;
    std::vector<int> seen(raw.size(), -1);
    for (size_t i = 0; i < raw.size(); ++i) {
        const int rep = find_root(static_cast<int>(i));
        if (seen[static_cast<size_t>(rep)] < 0) {
            seen[static_cast<size_t>(rep)] = static_cast<int>(rs.roots.size());
            rs.roots.push_back({0.0, 0.0});
            rs.multiplicities.push_back(0);
        }
        const int slot = seen[static_cast<size_t>(rep)];
        rs.roots[static_cast<size_t>(slot)] += raw[i];
        rs.multiplicities[static_cast<size_t>(slot)] += 1;
    }
    for (size_t i = 0; i < rs.roots.size(); ++i)
        rs.roots[i] /= static_cast<double>(rs.multiplicities[i]);

    rs.residual = 0.0;
    for (const auto& z : rs.roots) rs.residual = std::max(rs.residual, std::abs(p(z)));
    return rs;
}

double spectral_radius(const Poly& p) {
    const RootSet rs = roots(p);
    double m = 0.0;
    for (const auto& z : rs.roots) m = std::max(m, std::abs(z));
    return m;
}

namespace {

// Coefficients of z^r P(1/z) for r >= deg P.
Poly reversed_to(const Poly& p, int r) {
    std::vector<double> out(static_cast<size_t>(r) + 1, 0.0);
    const int d = p.degree().value();
    for (int i = 0; i <= d; ++i) out[static_cast<size_t>(r - i)] = p.coeff(i);
    return Poly(std::move(out));
}

}  // namespace

Poly reciprocal_bracket(const Poly& num, const Poly& den) {
    if (num.is_zero() || den.is_zero())
        throw std::invalid_argument("reciprocal_bracket requires nonzero polynomials");
    const int r = std::max(num.degree().value(), den.degree().value());
    return den * reversed_to(num, r) - num * reversed_to(den, r);
}

}  // namespace dtlure
