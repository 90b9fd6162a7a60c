#ifndef CONTACT_SPECTRA_SERIES_HPP
#define CONTACT_SPECTRA_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "contact_spectra/precision.hpp"

namespace contact_spectra {

struct AccelResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms_used = 0;
    bool converged = false;
};

/// Sums sum_{n >= 1} term(n) for series whose partial sums at multiples of
/// `block` admit an asymptotic expansion in inverse powers of the block
/// count (periodic coefficients over power decay fall in this class). The
/// checkpoints double and the table is Richardson-extrapolated, so an O(1/N)
/// tail still converges to near machine accuracy in a few hundred blocks.
template <typename Term>
AccelResult richardson_block_sum(Term&& term, std::size_t block, double tol,
                                 int levels = 8, std::size_t base_blocks = 4) {
    if (block == 0) block = 1;
    std::vector<std::vector<double>> table;
    double running = 0.0;
    std::size_t n = 0;
    std::size_t target_blocks = base_blocks;
    AccelResult best{0.0, std::numeric_limits<double>::infinity(), 0, false};
    for (int i = 0; i <= levels; ++i) {
        while (n < target_blocks * block) {
            ++n;
            running += term(n);
        }
        std::vector<double> row(static_cast<std::size_t>(i) + 1);
        row[0] = running;
        for (int j = 1; j <= i; ++j) {
            const double weight = std::ldexp(1.0, j) - 1.0; // 2^j - 1
            row[static_cast<std::size_t>(j)] =
                row[static_cast<std::size_t>(j - 1)] +
                (row[static_cast<std::size_t>(j - 1)] -
                 table.back()[static_cast<std::size_t>(j - 1)]) / weight;
        }
        if (i >= 2) {
            const auto& prev = table.back();
            const double err = std::abs(row[static_cast<std::size_t>(i)] -
                                        row[static_cast<std::size_t>(i - 1)]) +
                               std::abs(row[static_cast<std::size_t>(i)] - prev.back());
            if (err < best.error_estimate)
                best = {row[static_cast<std::size_t>(i)], err, n, err < tol};
            if (err < tol) return best;
        }
        table.push_back(std::move(row));
        target_blocks *= 2;
    }
    return best;
}

struct Rationalized {
    long long num = 0;
    long long den = 1;
    bool ok = false;
};

/// Best rational approximation by continued fractions. Used to detect the
/// period of oscillatory orbit sums; angles in manifests are rational in
/// practice.
inline Rationalized rationalize(double x, long long max_den = 4096, double tol = 1e-11) {
    Rationalized out;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) break;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(x - approx) < tol) {
            out = {p1, q1, true};
            return out;
        }
        const double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return out;
}

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    long long x = a, y = b;
    while (y != 0) { const long long t = x % y; x = y; y = t; }
    return (a / x) * b;
}

} // namespace contact_spectra

#endif
