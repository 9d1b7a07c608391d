#ifndef DTLURE_SPECTRAL_HPP
#define DTLURE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "dtlure/poly.hpp"

namespace dtlure {

/**
 * The eigenstructure split used throughout the closed-loop analysis: a simple
 * eigenvalue lambda with |lambda| > 1 and unit eigenvector xi, an orthonormal
 * basis of the complementary invariant subspace spanned by the remaining
 * (generalized) eigenvectors, and the unit normal psi of that subspace. The
 * rank-one projector psi psi^* detects membership: || P x || = |psi^* x| is
 * zero exactly on the subspace.
 */
struct SpectralSplit {
    std::complex<double> lambda;
    Eigen::VectorXcd xi;        // unit eigenvector of lambda
    Eigen::MatrixXcd X_basis;   // n x (n-1), orthonormal columns
    Eigen::VectorXcd psi;       // unit, orthogonal to every X_basis column
    double alpha = 0.0;         // gain the split was computed at
};

enum class SplitStatus {
    Found,
    NotFound,       // no eigenvalue with |lambda| > 1 + margin
    NearDefective,  // unstable eigenvalues exist but none passes the simplicity gate
};

struct SplitResult {
    SplitStatus status = SplitStatus::NotFound;
    std::optional<SpectralSplit> split;
};

/**
 * Locates a simple eigenvalue of Acl outside the closed unit disk. Among the
 * qualifying eigenvalues the one of largest modulus wins, with ties broken by
 * larger real part and then positive imaginary part.
 */
SplitResult find_simple_unstable(const Eigen::MatrixXd& Acl, double alpha = 0.0);

/**
 * Basis of the invariant subspace complementary to a simple eigenvalue,
 * computed as the null space of q(Acl) with q = chi / (z - lambda), plus the
 * unit normal of that subspace. Throws DimensionMismatch when the numerical
 * null space is not (n-1)-dimensional.
 */
std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> complement_subspace(const Eigen::MatrixXd& Acl,
                                                                  std::complex<double> lambda);

/// |psi^* x| for unit psi; equals the norm of the rank-one projection.
double projection_norm(const Eigen::VectorXcd& psi, const Eigen::VectorXd& x);
double projection_norm(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& x);

/**
 * Modal decomposition of a state: clustered eigenvalues with algebraic
 * multiplicities, a basis S of generalized eigenspaces, and the coordinates
 * beta of x0 with S beta = x0. Throws IllConditioned when cond(S) > 1e10.
 */
struct ModalExpansion {
    std::vector<std::complex<double>> eigenvalues;
    std::vector<int> multiplicities;
    Eigen::MatrixXcd S;
    Eigen::VectorXcd beta;
    double condition = 0.0;
};

ModalExpansion modal_expansion(const Eigen::MatrixXd& Acl, const Eigen::VectorXd& x0);

/**
 * Output sequence y_0..y_kmax computed through the modal route
 * y_k = sum_j p_j(k) lambda_j^k instead of direct state iteration; serves as
 * an independent oracle for the direct path.
 */
std::vector<double> modal_output(const Eigen::MatrixXd& Acl, const Eigen::RowVectorXd& C,
                                 const Eigen::VectorXd& x0, int k_max);

/// Characteristic polynomial via the Faddeev-LeVerrier recursion.
Poly characteristic_polynomial(const Eigen::MatrixXd& M);

/// Largest principal angle between the column spans of two bases.
double subspace_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

}  // namespace dtlure

#endif
