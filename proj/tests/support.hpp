#ifndef DTLURE_TESTS_SUPPORT_HPP
#define DTLURE_TESTS_SUPPORT_HPP

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <dtlure/poly.hpp>
#include <dtlure/realization.hpp>

namespace dtlure::testing {

/// Deterministic uniform draws built from raw mt19937_64 bits, so frozen
/// expected values survive standard-library changes.
struct TestRng {
    std::mt19937_64 rng;

    explicit TestRng(std::uint64_t seed) : rng(seed) {}

    double unit() { return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return (rng() & 1u) != 0; }
};

/// Real monic polynomial with the given roots; complex roots must be passed
/// as one representative per conjugate pair with positive imaginary part.
inline Poly poly_from_root_spec(const std::vector<std::complex<double>>& roots) {
    Poly p{1.0};
    for (const auto& r : roots) {
        if (r.imag() == 0.0) {
            p = p * Poly{-r.real(), 1.0};
        } else {
            const double re = r.real(), mag2 = std::norm(r);
            p = p * Poly{mag2, -2.0 * re, 1.0};
        }
    }
    return p;
}

struct RandomSystem {
    Poly num, den;
    TransferFunction tf;
};

/// Draws a transfer function satisfying all standing hypotheses: Schur-stable
/// monic denominator, numerator with a zero at 1 and remaining zeros away
/// from the unit circle, coprime with the denominator.
inline RandomSystem random_validated_system(TestRng& rng, int n_min = 2, int n_max = 5) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        const int n = rng.uniform_int(n_min, n_max);
        const int m = rng.uniform_int(1, n - 1);

        std::vector<std::complex<double>> den_roots;
        int remaining = n;
        while (remaining > 0) {
            const double radius = rng.uniform(0.15, 0.85);
            if (remaining >= 2 && rng.coin()) {
                den_roots.emplace_back(radius * std::cos(rng.uniform(0.1, M_PI - 0.1)),
                                       radius * std::sin(rng.uniform(0.1, M_PI - 0.1)));
                // keep |root| <= 0.85 regardless of the angle resample above
                den_roots.back() *= radius / std::abs(den_roots.back());
                remaining -= 2;
            } else {
                den_roots.emplace_back(rng.coin() ? radius : -radius, 0.0);
                remaining -= 1;
            }
        }

        std::vector<std::complex<double>> num_roots;
        remaining = m - 1;
        while (remaining > 0) {
            double radius = rng.coin() ? rng.uniform(0.2, 0.8) : rng.uniform(1.25, 2.2);
            if (remaining >= 2 && rng.coin()) {
                const double angle = rng.uniform(0.1, M_PI - 0.1);
                num_roots.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
                remaining -= 2;
            } else {
                num_roots.emplace_back(rng.coin() ? radius : -radius, 0.0);
                remaining -= 1;
            }
        }

        const double gain = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.3, 3.0);
        const Poly num = gain * (Poly{-1.0, 1.0} * poly_from_root_spec(num_roots));
        const Poly den = poly_from_root_spec(den_roots);

        auto tf = TransferFunction::validate(num, den);
        if (tf.valid()) return {num, den, std::move(tf)};
    }
    throw std::logic_error("random system generator failed to produce a valid system");
}

/// The reference second-order system G = (q - 1) / (q^2 - q + 0.5).
inline TransferFunction second_order_reference() {
    return TransferFunction::validate(Poly{-1.0, 1.0}, Poly{0.5, -1.0, 1.0});
}

}  // namespace dtlure::testing

#endif
