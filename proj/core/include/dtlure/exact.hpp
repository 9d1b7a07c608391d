#ifndef DTLURE_EXACT_HPP
#define DTLURE_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtlure/lure.hpp"
#include "dtlure/realization.hpp"

namespace dtlure::exact {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/**
 * An element a + b sqrt(d) of the quadratic field Q(sqrt(d)) with exact
 * rational a, b and a fixed square-free d >= 2. Pure rationals carry d = 0
 * and combine freely with any field; mixing two different radicals throws
 * MixedDiscriminant. The representation is unique, so equality and the sign
 * are decided exactly by rational comparisons alone.
 */
class QuadRat {
  public:
    QuadRat() : a_(0), b_(0), d_(0) {}
    QuadRat(int v) : a_(v), b_(0), d_(0) {}
    explicit QuadRat(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
    QuadRat(Rational a, Rational b, long long d);

    /// Exact value of a double (every finite double is a binary rational).
    static QuadRat from_double(double v);

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    long long discriminant() const { return d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// Exact sign in {-1, 0, +1}, decided without floating evaluation.
    int sign() const;

    friend QuadRat operator+(const QuadRat& x, const QuadRat& y);
    friend QuadRat operator-(const QuadRat& x, const QuadRat& y);
    friend QuadRat operator*(const QuadRat& x, const QuadRat& y);
    /// Division via the conjugate; throws DivisionByZero on a zero divisor.
    friend QuadRat operator/(const QuadRat& x, const QuadRat& y);
    QuadRat operator-() const;

    friend bool operator==(const QuadRat& x, const QuadRat& y);
    friend std::strong_ordering operator<=>(const QuadRat& x, const QuadRat& y);

    /// Nearest double, correct to within 1 ulp.
    double to_double() const;

    /// Rendering like "-11/2 - 13/2*sqrt(41)".
    std::string to_string() const;

  private:
    Rational a_, b_;
    long long d_;
};

QuadRat abs(const QuadRat& x);

/// Three-way comparison against +1 / -1, used by the exact saturation.
std::strong_ordering compare_to_one(const QuadRat& x);
std::strong_ordering compare_to_minus_one(const QuadRat& x);

bool is_square_free(long long d);

Rational rational_from_double(double v);

/// Parse "p/q", a decimal like "-5.5" or "1e-12", or a field element like
/// "-5.5 - 6.5*sqrt(41)" (the radical may also be written with the root
/// sign). expect_d of 0 accepts any discriminant.
QuadRat parse_quadrat(const std::string& text, long long expect_d = 0);

/// sqrt(p/q) written as coeff * sqrt(d) with d square-free.
struct RadicalForm {
    long long d = 0;    // 0 when the square root is rational
    Rational coeff;     // so that sqrt(value) = coeff * sqrt(max(d,1))
};

/**
 * Exact square-free decomposition of the square root of a nonnegative
 * rational. Throws ExactModeUnsupported when the square-free part cannot be
 * certified by trial division.
 */
RadicalForm radical_form(const Rational& value);

using ExactVector = std::vector<QuadRat>;
using ExactMatrix = std::vector<ExactVector>;

/// A state-space system with all entries lifted to Q(sqrt(d)).
struct ExactSystem {
    ExactMatrix A;
    ExactVector B;
    ExactVector C;
    QuadRat alpha;
    int n = 0;
    long long d = 0;
};

ExactSystem make_exact_system(const StateSpace& ss, double alpha, long long d);

/// A + alpha B C with exact entries.
ExactMatrix exact_closed_loop(const ExactSystem& sys);

/**
 * Exact eigenstructure of the 2x2 closed loop: the simple eigenvalue of
 * largest modulus outside the unit circle, the complementary eigenvalue and
 * eigenvector, and the unnormalized normal psi_raw of the complementary
 * subspace (psi_raw . x == 0 is the exact membership test). Returns nullopt
 * when no eigenvalue lies outside the unit circle. Throws
 * ExactModeUnsupported when n != 2 or the eigenvalues leave Q(sqrt(d)).
 */
struct ExactSplit {
    QuadRat lambda;    // selected unstable eigenvalue
    QuadRat lambda2;   // remaining eigenvalue
    ExactVector xi;    // eigenvector of lambda
    ExactVector xi2;   // eigenvector of lambda2; spans the complement
    ExactVector psi_raw;
    long long d = 0;
};

std::optional<ExactSplit> exact_split(const ExactSystem& sys);

/// Square-free discriminant of the 2x2 closed loop, for inferring the field.
/// Throws ExactModeUnsupported for n != 2 or complex eigenvalues.
long long infer_discriminant(const StateSpace& ss, double alpha);

inline constexpr int kMaxExactHorizon = 200;

/**
 * Exact closed-loop trajectory. Rational complexity grows along the run, so
 * the horizon is capped at kMaxExactHorizon; a longer request is clamped and
 * noted in warnings.
 */
struct ExactTrajectory {
    std::vector<ExactVector> x;
    std::vector<QuadRat> y;
    std::vector<QuadRat> nu;
    std::vector<Mode> mode;
    std::vector<QuadRat> psi_coord;  // empty when no split attached
    std::vector<std::string> warnings;

    int steps() const { return static_cast<int>(y.size()) - 1; }
};

ExactTrajectory simulate_exact(const ExactSystem& sys, const ExactVector& x0, int horizon,
                               const ExactSplit* split = nullptr);

/// Floating-point mirror of an exact run, carrying the exact renderings and
/// the exact-zero projection flags for downstream classification and checks.
Trajectory float_view(const ExactTrajectory& ex, const ExactSplit* split = nullptr);

/// Floating-point spectral split mirroring an exact one.
SpectralSplit float_split(const ExactSplit& split, double alpha);

}  // namespace dtlure::exact

#endif
