#ifndef DTLURE_POLY_HPP
#define DTLURE_POLY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dtlure {

/**
 * Real-coefficient univariate polynomial, coefficients in ascending degree
 * order. Trailing coefficients smaller than 1e-12 times the largest
 * coefficient magnitude are trimmed on construction; the zero polynomial is
 * the empty coefficient list and has no degree.
 */
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);
    Poly(std::initializer_list<double> coeffs);

    /// x^k scaled by c.
    static Poly monomial(int k, double c = 1.0);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree, or nullopt for the zero polynomial.
    std::optional<int> degree() const;
    /// Coefficient of x^i (0 beyond the degree).
    double coeff(int i) const;
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Leading coefficient; throws on the zero polynomial.
    double leading() const;
    /// Largest coefficient magnitude (0 for the zero polynomial).
    double coefficient_scale() const;

    /// Horner evaluation. The zero polynomial evaluates to 0 everywhere.
    std::complex<double> operator()(std::complex<double> z) const;
    double operator()(double x) const;

    Poly derivative() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(double s, const Poly& p);
    Poly operator-() const;

    bool operator==(const Poly& other) const = default;

    std::string to_string(const std::string& var = "q") const;

  private:
    std::vector<double> coeffs_;
    void trim();
};

/**
 * Roots of a polynomial with multiplicities. Roots closer than a relative
 * distance of 1e-6 are clustered into one entry whose multiplicity is the
 * cluster size; `residual` is max |p(root)| over the distinct roots.
 */
struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<int> multiplicities;
    double residual = 0.0;

    int total_multiplicity() const;
    /// Roots repeated according to multiplicity.
    std::vector<std::complex<double>> expanded() const;
};

/// All complex roots via companion-matrix eigenvalues plus a guarded Newton
/// polish. Throws std::invalid_argument for degree < 1.
RootSet roots(const Poly& p);

/// Maximum root modulus. Throws std::invalid_argument for degree < 1.
double spectral_radius(const Poly& p);

/**
 * The bracket polynomial h(z) = z^r [D(z) N(1/z) - N(z) D(1/z)] with
 * r = max(deg N, deg D), built by exact coefficient convolution. Its roots on
 * the unit circle are exactly the points where N(z) D(conj z) is real, and its
 * nonzero roots come in (z, 1/z) pairs.
 */
Poly reciprocal_bracket(const Poly& num, const Poly& den);

}  // namespace dtlure

#endif
