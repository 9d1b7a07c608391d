#ifndef DTLURE_REALIZATION_HPP
#define DTLURE_REALIZATION_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "dtlure/poly.hpp"

namespace dtlure {

enum class ValidationIssue {
    NotStrictlyProper,
    NotAsymptoticallyStable,
    NotCoprime,
    NoZeroAtOne,
    ExtraUnitCircleZero,
    DenNotMonic,
};

std::string to_string(ValidationIssue issue);

struct HypothesisCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    std::vector<ValidationIssue> failures;
    std::vector<std::string> warnings;

    bool valid() const { return failures.empty(); }
};

/**
 * A strictly proper discrete-time SISO transfer function G = N/D together
 * with the validation evidence for the standing hypotheses: D monic and
 * Schur stable, N and D coprime, N(1) = 0 and no other zero of N on the unit
 * circle. A non-monic D is rescaled (together with N) and flagged rather
 * than rejected.
 */
class TransferFunction {
  public:
    static TransferFunction validate(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int n() const { return n_; }
    int m() const { return m_; }
    const ValidationReport& validation() const { return report_; }
    bool valid() const { return report_.valid(); }

    std::complex<double> operator()(std::complex<double> z) const;

    /// p_alpha = D - alpha N, the closed-loop characteristic polynomial.
    Poly closed_loop_charpoly(double alpha) const;

  private:
    Poly num_, den_;
    int n_ = 0, m_ = 0;
    ValidationReport report_;
};

/// Minimal state-space triple (A, B, C) with C (zI - A)^{-1} B = G.
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    int n = 0;
};

/**
 * Controllable canonical realization of a validated transfer function. The
 * realization is checked against G at 16 random probe points outside the
 * unit disk; a mismatch throws std::logic_error. Throws
 * std::invalid_argument when G failed validation.
 */
StateSpace realize(const TransferFunction& G);

/// A + alpha B C.
Eigen::MatrixXd closed_loop(const StateSpace& ss, double alpha);

/// Resultant of two polynomials via the Sylvester determinant.
double resultant(const Poly& a, const Poly& b);

}  // namespace dtlure

#endif
