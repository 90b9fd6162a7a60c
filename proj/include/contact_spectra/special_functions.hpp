#ifndef CONTACT_SPECTRA_SPECIAL_FUNCTIONS_HPP
#define CONTACT_SPECTRA_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "contact_spectra/precision.hpp"

namespace contact_spectra {

using complex_t = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

namespace detail {

// exp(w) - 1 without cancellation near w = 0.
inline complex_t expm1c(const complex_t& w) {
    if (std::abs(w) < 0.5) {
        complex_t sum = 0.0, term = 1.0;
        for (int k = 1; k <= 24; ++k) {
            term *= w / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-20 * (std::abs(sum) + 1e-300)) break;
        }
        return sum;
    }
    return std::exp(w) - 1.0;
}

// (exp(u) - 1) / u, stable near u = 0.
inline complex_t expm1c_over(const complex_t& u) {
    if (std::abs(u) < 1e-8) return 1.0 + u / 2.0 + u * u / 6.0;
    return expm1c(u) / u;
}

// Bernoulli numbers B_n with B_1 = -1/2. The first batch is exact; the
// rest come from zeta(2n) * 2 (2n)! / (2 pi)^{2n}, whose defining sum
// converges to full precision in a few hundred terms for 2n >= 30.
inline const std::array<long double, 65>& bernoulli_table() {
    static const std::array<long double, 65> table = [] {
        std::array<long double, 65> b{};
        b.fill(0.0L);
        b[0] = 1.0L;
        b[1] = -0.5L;
        b[2] = 1.0L / 6.0L;
        b[4] = -1.0L / 30.0L;
        b[6] = 1.0L / 42.0L;
        b[8] = -1.0L / 30.0L;
        b[10] = 5.0L / 66.0L;
        b[12] = -691.0L / 2730.0L;
        b[14] = 7.0L / 6.0L;
        b[16] = -3617.0L / 510.0L;
        b[18] = 43867.0L / 798.0L;
        b[20] = -174611.0L / 330.0L;
        b[22] = 854513.0L / 138.0L;
        b[24] = -236364091.0L / 2730.0L;
        b[26] = 8553103.0L / 6.0L;
        b[28] = -23749461029.0L / 870.0L;
        const long double two_pi_l = 6.283185307179586476925286766559L;
        for (int n = 15; 2 * n <= 64; ++n) {
            long double zeta_2n = 1.0L;
            for (int j = 2; j <= 400; ++j) {
                long double t = powl(static_cast<long double>(j), -2.0L * n);
                zeta_2n += t;
                if (t < 1e-40L) break;
            }
            long double fact = 1.0L;
            for (int j = 2; j <= 2 * n; ++j) fact *= j;
            long double val = 2.0L * fact * zeta_2n / powl(two_pi_l, 2.0L * n);
            b[2 * n] = (n % 2 == 0) ? -val : val;
        }
        return b;
    }();
    return table;
}

// Binomial coefficients up to n = 64 (C(64,32) ~ 1.8e18 fits a long double
// mantissa exactly is not guaranteed; Pascal recurrence in long double keeps
// the relative error at the rounding level, which is enough here).
inline long double binomial(int n, int k) {
    static const auto table = [] {
        std::array<std::array<long double, 65>, 65> c{};
        for (int i = 0; i <= 64; ++i) {
            c[i][0] = 1.0L;
            for (int j = 1; j <= i; ++j)
                c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0.0L);
        }
        return c;
    }();
    return table[n][k];
}

} // namespace detail

/// B_n as a double. Valid for 0 <= n <= 64.
inline double bernoulli_number(int n) {
    if (n < 0 || n > 64)
        throw std::invalid_argument("bernoulli_number: n must be in [0, 64]");
    return static_cast<double>(detail::bernoulli_table()[static_cast<std::size_t>(n)]);
}

/// Bernoulli polynomial B_n(x) = sum_k C(n,k) B_k x^{n-k}.
inline double bernoulli_polynomial(int n, double x) {
    if (n < 0 || n > 64)
        throw std::invalid_argument("bernoulli_polynomial: n must be in [0, 64]");
    const auto& b = detail::bernoulli_table();
    long double xp = 1.0L, acc = 0.0L;
    // accumulate from k = n down so that xp carries x^{n-k}
    for (int k = n; k >= 0; --k) {
        acc += detail::binomial(n, k) * b[static_cast<std::size_t>(k)] * xp;
        xp *= x;
    }
    return static_cast<double>(acc);
}

/// e^{tx} / (e^t - 1), the Bernoulli generating kernel divided by t.
/// Defined away from the lattice t in 2 pi i Z.
inline complex_t bernoulli_gen_ratio(const complex_t& t, double x) {
    const double k = std::round(t.imag() / two_pi);
    const complex_t t_reduced(t.real(), t.imag() - k * two_pi);
    if (std::abs(t_reduced) < 1e-12)
        throw pole_error("bernoulli_gen_ratio: t lies on the singular lattice 2*pi*i*Z");
    // e^t - 1 is periodic in Im(t); evaluating on the reduced argument keeps
    // the subtraction exact near the far lattice points.
    return std::exp(t * x) / detail::expm1c(t_reduced);
}

/// Jacobi theta sum theta(x, t) = sum_{n in Z} exp(-t (n+x)^2), t > 0.
/// For t < 1 the Poisson-dual series sqrt(pi/t) sum_n e^{2 pi i n x - pi^2 n^2 / t}
/// converges faster and is used instead; the crossover at t = 1 keeps both
/// tails uniformly small.
inline double jacobi_theta(double x, double t, const PrecisionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("jacobi_theta: t must be > 0");
    const double tol = cfg.target_abs_tol / cfg.series_guard_factor;
    if (t >= 1.0) {
        const long center = std::lround(-x);
        double sum = std::exp(-t * (center + x) * (center + x));
        for (long d = 1; d <= 400; ++d) {
            const double up = std::exp(-t * (center + d + x) * (center + d + x));
            const double dn = std::exp(-t * (center - d + x) * (center - d + x));
            sum += up + dn;
            if (up + dn < tol && d >= 2) break;
        }
        return sum;
    }
    double sum = 1.0;
    for (long n = 1; n <= 400; ++n) {
        const double term = 2.0 * std::cos(two_pi * n * x) * std::exp(-pi * pi * n * n / t);
        sum += term;
        const double bound = 2.0 * std::exp(-pi * pi * n * n / t);
        if (bound < tol && n >= 2) break;
    }
    return std::sqrt(pi / t) * sum;
}

namespace detail {

// Euler-Maclaurin corrections for sum_{j >= 0} (b + j)^w: everything except
// the leading integral b^{w+1}/(-w-1), which carries the pole in w and is
// added by each caller under its own pole handling.
inline complex_t em_tail_correction(const complex_t& w, double b, const PrecisionConfig& cfg,
                                    double* err_out = nullptr) {
    const complex_t s = -w;
    complex_t acc = 0.5 * std::pow(b, w);
    complex_t poch = s; // s (s+1) ... running Pochhammer
    const int J = cfg.euler_maclaurin_terms;
    for (int j = 1; j <= J; ++j) {
        // term j uses B_{2j}/(2j)! * s(s+1)...(s+2j-2) * b^{-s-2j+1}
        static const auto b2j_over_fact = [] {
            std::array<double, 31> v{};
            long double fact = 1.0L;
            for (int m = 1; m <= 30; ++m) {
                fact *= (2.0L * m - 1.0L) * (2.0L * m);
                v[static_cast<std::size_t>(m)] =
                    static_cast<double>(bernoulli_table()[static_cast<std::size_t>(2 * m)] / fact);
            }
            return v;
        }();
        acc += b2j_over_fact[static_cast<std::size_t>(j)] * poch * std::pow(b, w - (2.0 * j - 1.0));
        if (j < J) poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    }
    if (err_out) {
        const complex_t poch_next = poch * (s + (2.0 * J - 1.0)) * (s + 2.0 * J);
        long double fact = 1.0L;
        for (int m = 1; m <= 2 * J + 2; ++m) fact *= m;
        const double b_next = std::abs(static_cast<double>(
            bernoulli_table()[static_cast<std::size_t>(2 * J + 2)]) / static_cast<double>(fact));
        *err_out = b_next * std::abs(poch_next) * std::pow(b, w.real() - (2.0 * J + 1.0));
    }
    return acc;
}

// Full tail sum_{j >= 0} (b + j)^w for Re w < -1 (convergent regime).
inline complex_t em_power_tail(const complex_t& w, double b, const PrecisionConfig& cfg,
                               double* err_out = nullptr) {
    return std::pow(b, w + 1.0) / (-w - 1.0) + em_tail_correction(w, b, cfg, err_out);
}

// Shared core: head sum + Euler-Maclaurin continuation. When minus_pole is
// set, the simple pole 1/(s-1) is subtracted symbolically, leaving an entire
// function of s that stays accurate arbitrarily close to s = 1.
//
// The head length balances two effects: the EM remainder shrinks with the
// head, while for Re s < 0 the head terms grow like (n+x)^{|s|} and cancel
// against the integral term. So for Re s < 0 the head starts minimal and is
// doubled only until the certified remainder is below tolerance (at negative
// integers the expansion terminates and any head is exact).
inline complex_t hurwitz_core(const complex_t& s, double x, bool minus_pole,
                              const PrecisionConfig& cfg) {
    if (!(x > 0.0 && x <= 1.0))
        throw std::domain_error("hurwitz_zeta: x must lie in (0, 1]");
    if (!minus_pole && std::abs(s - 1.0) < 1e-13)
        throw pole_error("hurwitz_zeta: simple pole at s = 1");

    auto eval_at = [&](int N, double* err) {
        complex_t head = 0.0;
        for (int n = 0; n < N; ++n) head += std::pow(n + x, -s);
        const double b = N + x;
        complex_t first;
        if (minus_pole) {
            // (b^{1-s} - 1)/(s-1) = -ln(b) * (e^u - 1)/u with u = (1-s) ln b
            const double lb = std::log(b);
            first = -lb * expm1c_over((1.0 - s) * lb);
        } else {
            first = std::pow(b, 1.0 - s) / (s - 1.0);
        }
        return head + first + em_tail_correction(-s, b, cfg, err);
    };

    const int im_terms = static_cast<int>(std::ceil(std::abs(s.imag())));
    if (s.real() >= 0.0) return eval_at(std::max(15, im_terms), nullptr);

    int N = std::max(1, im_terms);
    complex_t val;
    for (int attempt = 0; attempt < 9; ++attempt) {
        double err = 0.0;
        val = eval_at(N, &err);
        if (err < 0.01 * cfg.target_abs_tol * std::max(1.0, std::abs(val))) return val;
        N *= 2;
    }
    return val;
}

} // namespace detail

/// Analytic continuation of sum_{n >= 0} (n+x)^{-s} by Euler-Maclaurin,
/// x in (0, 1]. Simple pole at s = 1 with residue 1.
inline complex_t hurwitz_zeta(const complex_t& s, double x, const PrecisionConfig& cfg = {}) {
    return detail::hurwitz_core(s, x, false, cfg);
}

/// zeta(s, x) - 1/(s-1): the entire part, stable uniformly near s = 1.
inline complex_t hurwitz_zeta_minus_pole(const complex_t& s, double x,
                                         const PrecisionConfig& cfg = {}) {
    return detail::hurwitz_core(s, x, true, cfg);
}

/// d/ds zeta(s, x) at s = 0, which equals ln Gamma(x) - ln(2 pi)/2.
inline double hurwitz_zeta_s_derivative_at_zero(double x) {
    if (!(x > 0.0 && x <= 1.0))
        throw std::domain_error("hurwitz_zeta_s_derivative_at_zero: x must lie in (0, 1]");
    return std::lgamma(x) - 0.5 * std::log(two_pi);
}

/// Lerch zeta L(e^{2 pi i r / alpha}, s, x) = sum_{n >= 0} z^n (n+x)^{-s},
/// continued through the split into alpha Hurwitz zetas. The pole parts at
/// s = 1 cancel exactly because sum_m z^m = 0, and the cancellation is done
/// symbolically on the pole-free parts.
inline complex_t lerch_at_root_of_unity(long r, long alpha, const complex_t& s, double x,
                                        const PrecisionConfig& cfg = {}) {
    if (alpha < 2) throw std::domain_error("lerch_at_root_of_unity: alpha must be >= 2");
    if (r % alpha == 0)
        throw std::domain_error("lerch_at_root_of_unity: r must not be divisible by alpha");
    if (!(x > 0.0 && x <= 1.0))
        throw std::domain_error("lerch_at_root_of_unity: x must lie in (0, 1]");
    const long r_mod = ((r % alpha) + alpha) % alpha;
    complex_t acc = 0.0;
    for (long m = 0; m < alpha; ++m) {
        const double ang = two_pi * static_cast<double>(r_mod * m % alpha) /
                           static_cast<double>(alpha);
        const complex_t zm(std::cos(ang), std::sin(ang));
        acc += zm * hurwitz_zeta_minus_pole(s, (static_cast<double>(m) + x) /
                                                   static_cast<double>(alpha), cfg);
    }
    return std::pow(complex_t(static_cast<double>(alpha), 0.0), -s) * acc;
}

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms. Relative accuracy a little
// better than 1e-14 on the right half plane.
inline complex_t lanczos_sum(const complex_t& z) {
    static const double c[15] = {
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5};
    complex_t sum = c[0];
    for (int k = 1; k < 15; ++k) sum += c[k] / (z + static_cast<double>(k - 1));
    return sum;
}

inline constexpr double lanczos_g = 607.0 / 128.0;

inline bool is_nonpositive_integer(const complex_t& s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

} // namespace detail

/// Gamma function on the complex plane (Lanczos + reflection).
inline complex_t gamma_complex(const complex_t& s) {
    if (detail::is_nonpositive_integer(s))
        throw pole_error("gamma_complex: pole at nonpositive integer");
    if (s.real() < 0.5) {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return pi / (std::sin(pi * s) * gamma_complex(1.0 - s));
    }
    const complex_t z = s - 1.0;
    const complex_t t = z + detail::lanczos_g + 0.5;
    return std::sqrt(two_pi) * std::pow(t, z + 0.5) * std::exp(-t) * detail::lanczos_sum(z + 1.0);
}

/// log Gamma assembled from the same Lanczos sum; principal values per
/// factor (exp(log_gamma) reproduces gamma_complex, the imaginary part is
/// not the continuously tracked branch).
inline complex_t log_gamma(const complex_t& s) {
    if (detail::is_nonpositive_integer(s))
        throw pole_error("log_gamma: pole at nonpositive integer");
    if (s.real() < 0.5)
        return std::log(pi) - std::log(std::sin(pi * s)) - log_gamma(1.0 - s);
    const complex_t z = s - 1.0;
    const complex_t t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(z + 1.0));
}

} // namespace contact_spectra

#endif
