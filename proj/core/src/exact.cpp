#include "dtlure/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dtlure/errors.hpp"

namespace dtlure::exact {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

int rational_sign(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

long long merge_discriminant(const QuadRat& x, const QuadRat& y) {
    const long long dx = x.discriminant(), dy = y.discriminant();
    if (dx == dy) return dx;
    if (dx == 0) return dy;
    if (dy == 0) return dx;
    throw MixedDiscriminant("cannot combine sqrt(" + std::to_string(dx) + ") with sqrt(" +
                            std::to_string(dy) + ")");
}

}  // namespace

bool is_square_free(long long d) {
    if (d < 0) return false;
    if (d <= 1) return true;
    for (long long p = 2; p <= 1000000 && p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    // A residual square of a prime beyond the trial range would make d itself
    // a perfect square times that prime structure; catch the plain square.
    const long long s = static_cast<long long>(std::sqrt(static_cast<double>(d)));
    for (long long t = std::max(2LL, s - 1); t <= s + 1; ++t)
        if (t * t == d) return false;
    return true;
}

QuadRat::QuadRat(Rational a, Rational b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ < 0) throw std::invalid_argument("discriminant must be nonnegative");
    if (b_ == 0) { d_ = 0; return; }
    if (d_ == 0) { b_ = 0; return; }          // b*sqrt(0) contributes nothing
    if (d_ == 1) { a_ += b_; b_ = 0; d_ = 0; return; }
    if (!is_square_free(d_))
        throw std::invalid_argument("discriminant " + std::to_string(d_) + " is not square-free");
}

QuadRat QuadRat::from_double(double v) { return QuadRat(rational_from_double(v)); }

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("cannot represent a non-finite double");
    return Rational(v);
}

int QuadRat::sign() const {
    const int sa = rational_sign(a_);
    if (b_ == 0) return sa;
    const int sb = rational_sign(b_);
    if (a_ == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b| sqrt(d) decided by squaring.
    const Rational lhs = a_ * a_;
    const Rational rhs = d_ * b_ * b_;
    if (lhs == rhs) return 0;  // impossible for square-free d >= 2 unless a = b = 0
    return lhs > rhs ? sa : sb;
}

QuadRat operator+(const QuadRat& x, const QuadRat& y) {
    const long long d = merge_discriminant(x, y);
    return QuadRat(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadRat operator-(const QuadRat& x, const QuadRat& y) {
    const long long d = merge_discriminant(x, y);
    return QuadRat(x.a_ - y.a_, x.b_ - y.b_, d);
}

QuadRat operator*(const QuadRat& x, const QuadRat& y) {
    const long long d = merge_discriminant(x, y);
    return QuadRat(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadRat operator/(const QuadRat& x, const QuadRat& y) {
    if (y.is_zero()) throw DivisionByZero("division by zero field element");
    const long long d = merge_discriminant(x, y);
    const Rational norm = y.a_ * y.a_ - Rational(d) * y.b_ * y.b_;
    // norm == 0 with y != 0 would force sqrt(d) rational; square-free d >= 2
    // rules that out.
    const QuadRat conj(y.a_ / norm, -y.b_ / norm, d);
    return x * conj;
}

QuadRat QuadRat::operator-() const {
    QuadRat out = *this;
    out.a_ = -out.a_;
    out.b_ = -out.b_;
    return out;
}

bool operator==(const QuadRat& x, const QuadRat& y) {
    if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
    if (x.d_ != y.d_ && x.b_ != 0 && y.b_ != 0) return false;  // different radicals
    return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const QuadRat& x, const QuadRat& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

QuadRat abs(const QuadRat& x) { return x.sign() < 0 ? -x : x; }

std::strong_ordering compare_to_one(const QuadRat& x) { return x <=> QuadRat(1); }

std::strong_ordering compare_to_minus_one(const QuadRat& x) { return x <=> QuadRat(-1); }

double QuadRat::to_double() const {
    const auto rational_to_double = [](const Rational& r) {
        return static_cast<double>(static_cast<HighFloat>(r));
    };
    if (b_ == 0) return rational_to_double(a_);

    // a and b can be astronomically large while a + b sqrt(d) stays tiny, so
    // a fixed-precision evaluation cancels catastrophically. Enclose sqrt(d)
    // between consecutive dyadic rationals and tighten until both interval
    // ends round to the same double.
    for (unsigned bits = 128;; bits *= 2) {
        const BigInt root = boost::multiprecision::sqrt(BigInt(d_) << (2 * bits));
        const BigInt denom = BigInt(1) << bits;
        Rational lo = a_ + b_ * Rational(root, denom);
        Rational hi = a_ + b_ * Rational(root + 1, denom);
        if (b_ < 0) lo.swap(hi);
        const double dlo = rational_to_double(lo);
        const double dhi = rational_to_double(hi);
        if (dlo == dhi || bits > (1u << 20)) return dlo;
    }
}

std::string QuadRat::to_string() const {
    if (b_ == 0) return rational_string(a_);
    std::ostringstream os;
    const Rational babs = b_ < 0 ? Rational(-b_) : b_;
    std::string radical = "sqrt(" + std::to_string(d_) + ")";
    if (babs != 1) radical = rational_string(babs) + "*" + radical;
    if (a_ == 0) {
        os << (b_ < 0 ? "-" : "") << radical;
    } else {
        os << rational_string(a_) << (b_ < 0 ? " - " : " + ") << radical;
    }
    return os.str();
}

namespace {

Rational parse_decimal(const std::string& text) {
    size_t i = 0;
    const auto fail = [&text]() -> Rational {
        throw std::invalid_argument("cannot parse rational literal '" + text + "'");
    };
    if (text.empty()) return fail();
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
    BigInt digits = 0;
    long long frac_len = 0;
    bool any = false, in_frac = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            if (in_frac) ++frac_len;
            any = true;
        } else if (c == '.') {
            if (in_frac) return fail();
            in_frac = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            return fail();
        }
    }
    if (!any) return fail();
    long long exponent = 0;
    if (i < text.size()) {
        ++i;  // past 'e'
        bool exp_neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_neg = text[i++] == '-';
        if (i >= text.size()) return fail();
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') return fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 100000) return fail();
        }
        if (exp_neg) exponent = -exponent;
    }
    BigInt num = digits;
    BigInt den = 1;
    long long net = exponent - frac_len;
    for (long long k = 0; k < net; ++k) num *= 10;
    for (long long k = 0; k < -net; ++k) den *= 10;
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

Rational parse_rational_text(const std::string& text) {
    const size_t slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
}

}  // namespace

QuadRat parse_quadrat(const std::string& text, long long expect_d) {
    std::string s;
    s.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) continue;
        // the UTF-8 root sign, with or without parentheses around the radicand
        if (c == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x9A) {
            i += 2;
            size_t j = i + 1;
            while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '(') {
                s += "sqrt";
            } else {
                s += "sqrt(";
                while (j < text.size() && text[j] >= '0' && text[j] <= '9') s += text[j++];
                s += ')';
                i = j - 1;
            }
            continue;
        }
        s += static_cast<char>(c);
    }
    if (s.empty()) throw std::invalid_argument("empty exact literal");

    // Split into signed top-level terms; '+'/'-' directly after an exponent
    // marker belongs to the number.
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' &&
            s[i - 1] != '/' && s[i - 1] != '*' && s[i - 1] != '(') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));

    Rational a = 0, b = 0;
    long long d = 0;
    for (std::string term : terms) {
        bool negative = false;
        if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            negative = term[0] == '-';
            term.erase(0, 1);
        }
        const size_t pos = term.find("sqrt(");
        if (pos == std::string::npos) {
            Rational v = parse_rational_text(term);
            a += negative ? Rational(-v) : v;
            continue;
        }
        if (term.back() != ')')
            throw std::invalid_argument("unterminated sqrt in '" + text + "'");
        const std::string inside = term.substr(pos + 5, term.size() - pos - 6);
        const long long td = std::stoll(inside);
        if (td <= 0) throw std::invalid_argument("radicand must be positive in '" + text + "'");
        std::string coef_text = term.substr(0, pos);
        if (!coef_text.empty() && coef_text.back() == '*') coef_text.pop_back();
        Rational coef = coef_text.empty() ? Rational(1) : parse_rational_text(coef_text);
        if (negative) coef = -coef;
        if (td == 1) { a += coef; continue; }
        if (d != 0 && d != td)
            throw MixedDiscriminant("two different radicals in '" + text + "'");
        d = td;
        b += coef;
    }
    if (expect_d != 0 && d != 0 && d != expect_d)
        throw MixedDiscriminant("literal uses sqrt(" + std::to_string(d) +
                                ") but the field is sqrt(" + std::to_string(expect_d) + ")");
    return QuadRat(a, b, d == 0 ? std::max(expect_d, 0LL) : d);
}

RadicalForm radical_form(const Rational& value) {
    if (value < 0) throw std::invalid_argument("radical_form requires a nonnegative rational");
    RadicalForm out;
    if (value == 0) { out.coeff = 0; return out; }
    const BigInt p = boost::multiprecision::numerator(value);
    const BigInt q = boost::multiprecision::denominator(value);
    BigInt m = p * q;  // sqrt(p/q) = sqrt(p q) / q

    BigInt square = 1;
    for (long long prime = 2; prime <= 1000000; ++prime) {
        if (BigInt(prime) * prime > m) break;
        while (m % (BigInt(prime) * prime) == 0) {
            m /= BigInt(prime) * prime;
            square *= prime;
        }
    }
    const BigInt root = boost::multiprecision::sqrt(m);
    if (root * root == m) {
        square *= root;
        m = 1;
    }
    if (m == 1) {
        out.d = 0;
        out.coeff = Rational(square, q);
        return out;
    }
    // Residual prime factors all exceed the trial range; below their squared
    // size the residual is certified square-free.
    if (m >= BigInt(1000000000000LL))
        throw ExactModeUnsupported("discriminant too large to certify a square-free part");
    out.d = static_cast<long long>(m);
    out.coeff = Rational(square, q);
    return out;
}

ExactSystem make_exact_system(const StateSpace& ss, double alpha, long long d) {
    if (d != 0 && !is_square_free(d))
        throw std::invalid_argument("field discriminant must be square-free");
    ExactSystem sys;
    sys.n = ss.n;
    sys.d = d;
    sys.alpha = QuadRat::from_double(alpha);
    sys.A.assign(static_cast<size_t>(ss.n), ExactVector(static_cast<size_t>(ss.n)));
    sys.B.assign(static_cast<size_t>(ss.n), QuadRat());
    sys.C.assign(static_cast<size_t>(ss.n), QuadRat());
    for (int i = 0; i < ss.n; ++i) {
        for (int j = 0; j < ss.n; ++j)
            sys.A[static_cast<size_t>(i)][static_cast<size_t>(j)] = QuadRat::from_double(ss.A(i, j));
        sys.B[static_cast<size_t>(i)] = QuadRat::from_double(ss.B(i));
        sys.C[static_cast<size_t>(i)] = QuadRat::from_double(ss.C(i));
    }
    return sys;
}

ExactMatrix exact_closed_loop(const ExactSystem& sys) {
    const size_t n = static_cast<size_t>(sys.n);
    ExactMatrix acl(n, ExactVector(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            acl[i][j] = sys.A[i][j] + sys.alpha * sys.B[i] * sys.C[j];
    return acl;
}

namespace {

ExactVector eigenvector_2x2(const ExactMatrix& M, const QuadRat& lambda) {
    if (!M[0][1].is_zero() || !(M[0][0] == lambda))
        return {M[0][1], lambda - M[0][0]};
    if (!M[1][0].is_zero() || !(M[1][1] == lambda))
        return {lambda - M[1][1], M[1][0]};
    return {QuadRat(1), QuadRat(0)};
}

}  // namespace

std::optional<ExactSplit> exact_split(const ExactSystem& sys) {
    if (sys.n != 2)
        throw ExactModeUnsupported("exact eigenstructure is implemented for n = 2 only");
    const ExactMatrix acl = exact_closed_loop(sys);
    for (const auto& row : acl)
        for (const auto& entry : row)
            if (!entry.is_rational())
                throw ExactModeUnsupported("closed-loop entries must be rational");

    const Rational tr = (acl[0][0] + acl[1][1]).rational_part();
    const Rational det =
        (acl[0][0] * acl[1][1] - acl[0][1] * acl[1][0]).rational_part();
    const Rational disc = tr * tr - 4 * det;
    if (disc < 0)
        throw ExactModeUnsupported("complex eigenvalues are outside Q(sqrt(d)) with d >= 0");
    if (disc == 0)
        throw ExactModeUnsupported("repeated eigenvalue: no simple split exists");

    const RadicalForm rad = radical_form(disc);
    long long d = rad.d;
    if (d != 0 && sys.d != 0 && d != sys.d)
        throw ExactModeUnsupported("eigenvalues live in sqrt(" + std::to_string(d) +
                                   "), not the requested field");
    if (d == 0) d = sys.d;  // rational eigenvalues embed in any field

    const QuadRat half(Rational(1, 2));
    const QuadRat sqrt_term = rad.d == 0 ? QuadRat(rad.coeff)
                                         : QuadRat(Rational(0), rad.coeff, rad.d);
    const QuadRat lam_plus = (QuadRat(tr) + sqrt_term) * half;
    const QuadRat lam_minus = (QuadRat(tr) - sqrt_term) * half;

    const auto unstable = [](const QuadRat& lam) {
        return compare_to_one(lam) == std::strong_ordering::greater ||
               compare_to_minus_one(lam) == std::strong_ordering::less;
    };
    const bool plus_unstable = unstable(lam_plus);
    const bool minus_unstable = unstable(lam_minus);
    if (!plus_unstable && !minus_unstable) return std::nullopt;

    QuadRat lambda = lam_plus, lambda2 = lam_minus;
    if (plus_unstable && minus_unstable) {
        // Both outside: take the larger modulus (disc > 0 rules out ties).
        if ((lam_minus * lam_minus) > (lam_plus * lam_plus)) std::swap(lambda, lambda2);
    } else if (minus_unstable) {
        std::swap(lambda, lambda2);
    }

    ExactSplit split;
    split.d = d;
    split.lambda = lambda;
    split.lambda2 = lambda2;
    split.xi = eigenvector_2x2(acl, lambda);
    split.xi2 = eigenvector_2x2(acl, lambda2);
    split.psi_raw = {split.xi2[1], -split.xi2[0]};
    return split;
}

long long infer_discriminant(const StateSpace& ss, double alpha) {
    if (ss.n != 2) throw ExactModeUnsupported("field inference is implemented for n = 2 only");
    ExactSystem sys = make_exact_system(ss, alpha, 0);
    const ExactMatrix acl = exact_closed_loop(sys);
    const Rational tr = (acl[0][0] + acl[1][1]).rational_part();
    const Rational det = (acl[0][0] * acl[1][1] - acl[0][1] * acl[1][0]).rational_part();
    const Rational disc = tr * tr - 4 * det;
    if (disc < 0)
        throw ExactModeUnsupported("complex eigenvalues are outside Q(sqrt(d)) with d >= 0");
    return radical_form(disc).d;
}

namespace {

QuadRat dot(const ExactVector& u, const ExactVector& v) {
    QuadRat acc;
    for (size_t i = 0; i < u.size(); ++i) acc = acc + u[i] * v[i];
    return acc;
}

}  // namespace

ExactTrajectory simulate_exact(const ExactSystem& sys, const ExactVector& x0, int horizon,
                               const ExactSplit* split) {
    if (static_cast<int>(x0.size()) != sys.n)
        throw std::invalid_argument("x0 dimension does not match the system");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

    ExactTrajectory traj;
    int K = horizon;
    if (K > kMaxExactHorizon) {
        K = kMaxExactHorizon;
        traj.warnings.push_back("exact horizon clamped to " + std::to_string(kMaxExactHorizon) +
                                " steps (rational complexity grows along the run)");
    }

    const QuadRat one(1), minus_one(-1);
    ExactVector x = x0;
    for (int k = 0; k <= K; ++k) {
        const QuadRat y = dot(sys.C, x);
        Mode m;
        QuadRat nu;
        if (compare_to_one(y) != std::strong_ordering::less) {
            m = Mode::S1;
            nu = one;
        } else if (compare_to_minus_one(y) != std::strong_ordering::greater) {
            m = Mode::S3;
            nu = minus_one;
        } else {
            m = Mode::S2;
            nu = y;
        }
        traj.x.push_back(x);
        traj.y.push_back(y);
        traj.nu.push_back(nu);
        traj.mode.push_back(m);
        if (split) traj.psi_coord.push_back(dot(split->psi_raw, x));
        if (k < K) {
            ExactVector next(static_cast<size_t>(sys.n));
            const QuadRat scale = sys.alpha * nu;
            for (size_t i = 0; i < next.size(); ++i)
                next[i] = dot(sys.A[i], x) + scale * sys.B[i];
            x = std::move(next);
        }
    }
    return traj;
}

Trajectory float_view(const ExactTrajectory& ex, const ExactSplit* split) {
    Trajectory traj;
    traj.exact = true;
    traj.warnings = ex.warnings;
    const int K = ex.steps();
    const size_t n = ex.x.empty() ? 0 : ex.x[0].size();

    double psi_norm = 1.0;
    if (split) {
        double acc = 0.0;
        for (const auto& c : split->psi_raw) {
            const double v = c.to_double();
            acc += v * v;
        }
        psi_norm = std::sqrt(acc);
    }

    for (int k = 0; k <= K; ++k) {
        Eigen::VectorXd xf(static_cast<int>(n));
        std::vector<std::string> xs;
        xs.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            xf(static_cast<int>(i)) = ex.x[static_cast<size_t>(k)][i].to_double();
            xs.push_back(ex.x[static_cast<size_t>(k)][i].to_string());
        }
        traj.x.push_back(std::move(xf));
        traj.x_exact.push_back(std::move(xs));
        traj.y.push_back(ex.y[static_cast<size_t>(k)].to_double());
        traj.y_exact.push_back(ex.y[static_cast<size_t>(k)].to_string());
        traj.nu.push_back(ex.nu[static_cast<size_t>(k)].to_double());
        traj.mode.push_back(ex.mode[static_cast<size_t>(k)]);
        if (!ex.psi_coord.empty()) {
            const QuadRat& coord = ex.psi_coord[static_cast<size_t>(k)];
            traj.proj_norm.push_back(std::abs(coord.to_double()) / psi_norm);
            traj.proj_exact_zero.push_back(coord.is_zero());
        }
        if (k >= 1 && traj.mode[static_cast<size_t>(k) - 1] != traj.mode[static_cast<size_t>(k)])
            traj.transitions.push_back(
                {k, traj.mode[static_cast<size_t>(k) - 1], traj.mode[static_cast<size_t>(k)]});
    }
    return traj;
}

SpectralSplit float_split(const ExactSplit& split, double alpha) {
    SpectralSplit out;
    out.alpha = alpha;
    out.lambda = {split.lambda.to_double(), 0.0};

    Eigen::VectorXcd xi(2), xi2(2), psi(2);
    for (int i = 0; i < 2; ++i) {
        xi(i) = split.xi[static_cast<size_t>(i)].to_double();
        xi2(i) = split.xi2[static_cast<size_t>(i)].to_double();
        psi(i) = split.psi_raw[static_cast<size_t>(i)].to_double();
    }
    out.xi = xi.normalized();
    out.X_basis = Eigen::MatrixXcd(2, 1);
    out.X_basis.col(0) = xi2.normalized();
    out.psi = psi.normalized();
    return out;
}

}  // namespace dtlure::exact
