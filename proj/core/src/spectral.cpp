#include "dtlure/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "dtlure/errors.hpp"

namespace dtlure {

namespace {
constexpr double kUnstableMargin = 1e-9;
constexpr double kSimplicityRel = 1e-6;
constexpr double kNullSpaceRel = 1e-8;
constexpr double kClusterRel = 1e-6;
constexpr double kCondLimit = 1e10;

// Deterministic phase convention: rotate so the largest-modulus component is
// real and positive.
Eigen::VectorXcd fix_phase(const Eigen::VectorXcd& v) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > best) { best = std::abs(v(i)); imax = i; }
    if (best <= 0.0) return v;
    const std::complex<double> phase = v(imax) / std::abs(v(imax));
    return v / phase;
}

}  // namespace

Poly characteristic_polynomial(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    std::vector<double> asc(static_cast<size_t>(n) + 1, 0.0);
    asc[static_cast<size_t>(n)] = 1.0;
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const Eigen::MatrixXd AB = M * B;
        const double c = -AB.trace() / static_cast<double>(k);
        asc[static_cast<size_t>(n - k)] = c;
        B = AB + c * Eigen::MatrixXd::Identity(n, n);
    }
    return Poly(std::move(asc));
}

SplitResult find_simple_unstable(const Eigen::MatrixXd& Acl, double alpha) {
    const int n = static_cast<int>(Acl.rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es(Acl);
    const Eigen::VectorXcd lam = es.eigenvalues();

    double spectral_scale = 1.0;
    for (int i = 0; i < n; ++i) spectral_scale = std::max(spectral_scale, std::abs(lam(i)));
    const double sep_floor = kSimplicityRel * spectral_scale;

    SplitResult result;
    bool any_unstable = false;
    int chosen = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(lam(i)) <= 1.0 + kUnstableMargin) continue;
        any_unstable = true;
        double min_sep = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (j != i) min_sep = std::min(min_sep, std::abs(lam(i) - lam(j)));
        if (min_sep <= sep_floor) continue;

        if (chosen < 0) { chosen = i; continue; }
        const double mi = std::abs(lam(i)), mc = std::abs(lam(chosen));
        if (mi > mc ||
            (mi == mc && (lam(i).real() > lam(chosen).real() ||
                          (lam(i).real() == lam(chosen).real() && lam(i).imag() > lam(chosen).imag()))))
            chosen = i;
    }

    if (chosen < 0) {
        result.status = any_unstable ? SplitStatus::NearDefective : SplitStatus::NotFound;
        return result;
    }

    SpectralSplit split;
    split.lambda = lam(chosen);
    split.xi = fix_phase(es.eigenvectors().col(chosen).normalized());
    split.alpha = alpha;
    auto [X, psi] = complement_subspace(Acl, split.lambda);
    split.X_basis = std::move(X);
    split.psi = std::move(psi);
    result.status = SplitStatus::Found;
    result.split = std::move(split);
    return result;
}

std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> complement_subspace(const Eigen::MatrixXd& Acl,
                                                                  std::complex<double> lambda) {
    const int n = static_cast<int>(Acl.rows());
    const Poly chi = characteristic_polynomial(Acl);

    // Synthetic division chi(z) / (z - lambda); the remainder is chi(lambda),
    // negligible for an eigenvalue.
    std::vector<std::complex<double>> q(static_cast<size_t>(n), {0.0, 0.0});
    std::complex<double> carry = chi.coeff(n);
    for (int i = n - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = chi.coeff(i) + lambda * carry;
    }

    // Horner evaluation of q at the matrix.
    const Eigen::MatrixXcd Ac = Acl.cast<std::complex<double>>();
    Eigen::MatrixXcd Mq = q[static_cast<size_t>(n - 1)] * Eigen::MatrixXcd::Identity(n, n);
    for (int i = n - 2; i >= 0; --i)
        Mq = Mq * Ac + q[static_cast<size_t>(i)] * Eigen::MatrixXcd::Identity(n, n);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Mq, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = kNullSpaceRel * sv(0);
    int null_dim = 0;
    for (int i = 0; i < n; ++i)
        if (sv(i) < cutoff) ++null_dim;
    if (sv(0) == 0.0 || null_dim != n - 1)
        throw DimensionMismatch("null space of q(Acl) is not (n-1)-dimensional; eigenvalue may not be simple");

    Eigen::MatrixXcd X = svd.matrixV().rightCols(n - 1);
    Eigen::VectorXcd psi = fix_phase(svd.matrixV().col(0));
    return {std::move(X), std::move(psi)};
}

double projection_norm(const Eigen::VectorXcd& psi, const Eigen::VectorXd& x) {
    return projection_norm(psi, Eigen::VectorXcd(x.cast<std::complex<double>>()));
}

double projection_norm(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& x) {
    return std::abs(psi.dot(x));  // Eigen's dot conjugates the left argument
}

ModalExpansion modal_expansion(const Eigen::MatrixXd& Acl, const Eigen::VectorXd& x0) {
    const int n = static_cast<int>(Acl.rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es(Acl, /*computeEigenvectors=*/false);
    const Eigen::VectorXcd lam = es.eigenvalues();

    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(lam(i)));

    // Cluster eigenvalues into algebraic multiplicities.
    ModalExpansion me;
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        std::complex<double> sum = lam(i);
        int count = 1;
        used[static_cast<size_t>(i)] = true;
        for (int j = i + 1; j < n; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if (std::abs(lam(i) - lam(j)) < kClusterRel * scale) {
                sum += lam(j);
                ++count;
                used[static_cast<size_t>(j)] = true;
            }
        }
        me.eigenvalues.push_back(sum / static_cast<double>(count));
        me.multiplicities.push_back(count);
    }

    // Basis of each generalized eigenspace: null space of (A - lambda I)^mult.
    const Eigen::MatrixXcd Ac = Acl.cast<std::complex<double>>();
    me.S.resize(n, n);
    int col = 0;
    for (size_t j = 0; j < me.eigenvalues.size(); ++j) {
        const int mult = me.multiplicities[j];
        Eigen::MatrixXcd shifted =
            Ac - me.eigenvalues[j] * Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
        for (int i = 0; i < mult; ++i) power = power * shifted;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(power, Eigen::ComputeFullV);
        me.S.block(0, col, n, mult) = svd.matrixV().rightCols(mult);
        col += mult;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> cond_svd(me.S);
    const auto& sv = cond_svd.singularValues();
    me.condition = (sv(sv.size() - 1) > 0.0) ? sv(0) / sv(sv.size() - 1)
                                             : std::numeric_limits<double>::infinity();
    if (!(me.condition <= kCondLimit))
        throw IllConditioned("modal basis condition number exceeds 1e10");

    me.beta = me.S.fullPivLu().solve(x0.cast<std::complex<double>>());
    return me;
}

std::vector<double> modal_output(const Eigen::MatrixXd& Acl, const Eigen::RowVectorXd& C,
                                 const Eigen::VectorXd& x0, int k_max) {
    const int n = static_cast<int>(Acl.rows());
    const ModalExpansion me = modal_expansion(Acl, x0);
    const Eigen::MatrixXcd Ac = Acl.cast<std::complex<double>>();
    const Eigen::RowVectorXcd Cc = C.cast<std::complex<double>>();

    // Per cluster: the vectors C (A - lambda I)^i w with w the component of x0
    // in that generalized eigenspace. Then
    //   y_k = sum_j sum_i binom(k, i) lambda_j^(k-i) * c_{j,i}.
    struct ClusterData {
        std::complex<double> lambda;
        std::vector<std::complex<double>> c;  // size = multiplicity
    };
    std::vector<ClusterData> clusters;
    int col = 0;
    for (size_t j = 0; j < me.eigenvalues.size(); ++j) {
        const int mult = me.multiplicities[j];
        Eigen::VectorXcd w = me.S.block(0, col, n, mult) * me.beta.segment(col, mult);
        col += mult;
        ClusterData cd;
        cd.lambda = me.eigenvalues[j];
        const Eigen::MatrixXcd shifted = Ac - cd.lambda * Eigen::MatrixXcd::Identity(n, n);
        Eigen::VectorXcd v = w;
        for (int i = 0; i < mult; ++i) {
            cd.c.push_back((Cc * v)(0));
            v = shifted * v;
        }
        clusters.push_back(std::move(cd));
    }

    std::vector<double> y(static_cast<size_t>(k_max) + 1, 0.0);
    for (int k = 0; k <= k_max; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& cd : clusters) {
            std::complex<double> term(0.0, 0.0);
            double binom = 1.0;
            for (size_t i = 0; i < cd.c.size(); ++i) {
                const int ii = static_cast<int>(i);
                if (ii > k) break;
                if (ii > 0) binom *= static_cast<double>(k - ii + 1) / static_cast<double>(ii);
                term += binom * std::pow(cd.lambda, k - ii) * cd.c[i];
            }
            acc += term;
        }
        y[static_cast<size_t>(k)] = acc.real();
    }
    return y;
}

double subspace_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
    // Orthonormalize both bases, then sin(angle) = || (I - U U*) V ||_2.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qu(U), qv(V);
    const Eigen::MatrixXcd Qu =
        qu.householderQ() * Eigen::MatrixXcd::Identity(U.rows(), U.cols());
    const Eigen::MatrixXcd Qv =
        qv.householderQ() * Eigen::MatrixXcd::Identity(V.rows(), V.cols());
    const Eigen::MatrixXcd R = Qv - Qu * (Qu.adjoint() * Qv);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
    const double s = std::min(1.0, svd.singularValues()(0));
    return std::asin(s);
}

}  // namespace dtlure
