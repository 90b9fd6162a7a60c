#ifndef CONTACT_SPECTRA_TORSION_HPP
#define CONTACT_SPECTRA_TORSION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "contact_spectra/model.hpp"
#include "contact_spectra/precision.hpp"
#include "contact_spectra/series.hpp"
#include "contact_spectra/special_functions.hpp"

namespace contact_spectra::torsion {

struct TorsionResult {
    double value = 0.0;
    std::string method;
    double truncation_error_bound = 0.0;
};

struct HeatValue {
    double value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

// Upper bound for sum_{m > n} e^{-a m^2}: the increments of m^2 grow at
// least linearly, so the tail is dominated by a geometric series.
inline double gaussian_tail_bound(double a, long n) {
    const double first = std::exp(-a * static_cast<double>(n + 1) * static_cast<double>(n + 1));
    const double ratio = std::exp(-a * static_cast<double>(2 * n + 3));
    return first / (1.0 - ratio);
}

// 2 pi / l(gamma): equals 1 for the generic fiber and alpha_j for the
// exceptional ones at the default fiber length.
inline double order_of_generic(const SeifertData& s) { return two_pi / s.fiber_length; }
inline double order_of_exceptional(const SeifertData& s, std::size_t j) {
    return two_pi / s.exceptional_length(j);
}

} // namespace detail

/// Weighted theta character of the generic fiber:
/// sum_x dim V^x theta(x, 4 pi^2 t / l(f)^2).
inline double chi_theta_generic(const SeifertData& seifert, const RepresentationData& rep,
                                double t, const PrecisionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("chi_theta: t must be > 0");
    const double scaled = 4.0 * pi * pi * t / (seifert.fiber_length * seifert.fiber_length);
    double acc = 0.0;
    for (const auto& b : rep.generic_blocks)
        acc += static_cast<double>(b.mult) * jacobi_theta(b.x, scaled, cfg);
    return acc;
}

/// Same for the j-th exceptional fiber, with l(f_j) in place of l(f).
inline double chi_theta_exceptional(const SeifertData& seifert, const RepresentationData& rep,
                                    std::size_t j, double t, const PrecisionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("chi_theta: t must be > 0");
    const double lj = seifert.exceptional_length(j);
    const double scaled = 4.0 * pi * pi * t / (lj * lj);
    double acc = 0.0;
    for (const auto& b : rep.exceptional_blocks.at(j))
        acc += static_cast<double>(b.mult) * jacobi_theta(b.x, scaled, cfg);
    return acc;
}

/// theta^geo(t) = chi(N*) chi_theta(f, t) + sum_j chi_theta(f_j, t).
inline HeatValue theta_geo(const SeifertData& seifert, const RepresentationData& rep, double t,
                           const PrecisionConfig& cfg = {}) {
    double acc = static_cast<double>(seifert.chi_n_star) * chi_theta_generic(seifert, rep, t, cfg);
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j)
        acc += chi_theta_exceptional(seifert, rep, j, t, cfg);
    const double calls = std::abs(seifert.chi_n_star) * rep.dimension() +
                         static_cast<double>(seifert.exceptional.size()) * rep.dimension();
    return {acc, calls * cfg.target_abs_tol};
}

/// theta^dyn(t): Gaussian-weighted orbit sum over all homotopy classes of
/// closed orbits and their inverses, plus the constant class.
inline HeatValue theta_dyn(const SeifertData& seifert, const RepresentationData& rep, double t,
                           const PrecisionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("theta_dyn: t must be > 0");
    const double lf = seifert.fiber_length;
    const double chi_n = rational_euler(seifert).value();
    const double dim = static_cast<double>(rep.dimension());
    const double pref = 1.0 / std::sqrt(4.0 * pi * t);
    const double tol_scaled = cfg.target_abs_tol / (cfg.series_guard_factor * pref);

    double acc = dim * lf * chi_n; // constant class: chi = dim V, e = l(f) chi(N)
    double bound = 0.0;

    {
        const double a = lf * lf / (4.0 * t);
        const double coeff = std::abs(lf * chi_n) * 2.0 * dim;
        for (long n = 1; n <= 100000; ++n) {
            acc += 2.0 * character_generic(rep, n).real() * lf * chi_n *
                   std::exp(-a * static_cast<double>(n) * static_cast<double>(n));
            const double tail = coeff * detail::gaussian_tail_bound(a, n);
            if (tail < tol_scaled) {
                bound += tail;
                break;
            }
        }
    }
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const long alpha = seifert.exceptional[j].alpha;
        const double lj = seifert.exceptional_length(j);
        const double a = lj * lj / (4.0 * t);
        const double coeff = lj * 2.0 * dim;
        for (long r = 1; r <= 400000; ++r) {
            if (r % alpha != 0)
                acc += 2.0 * character_exceptional(rep, j, r).real() * lj *
                       std::exp(-a * static_cast<double>(r) * static_cast<double>(r));
            const double tail = coeff * detail::gaussian_tail_bound(a, r);
            if (tail < tol_scaled) {
                bound += tail;
                break;
            }
        }
    }
    return {pref * acc, pref * bound * cfg.series_guard_factor};
}

/// Multiplicity-weighted index at a point lambda of the reduced spectrum
/// (lambda - x integral for a generic block x): chi(N*) dim V^x plus, per
/// exceptional orbit, the multiplicity of the eigenangle lambda/alpha_j.
inline long index_dh(const SeifertData& seifert, const RepresentationData& rep, double lambda,
                     double match_tol = 1e-9) {
    const GenericBlock* parent = nullptr;
    for (const auto& b : rep.generic_blocks) {
        const double d = lambda - b.x;
        if (std::abs(d - std::round(d)) < match_tol) {
            parent = &b;
            break;
        }
    }
    if (!parent) throw std::domain_error("index_dh: lambda is not in the spectrum");
    long acc = seifert.chi_n_star * parent->mult;
    for (std::size_t j = 0; j < rep.exceptional_blocks.size(); ++j) {
        const double alpha = static_cast<double>(seifert.exceptional[j].alpha);
        for (const auto& b : rep.exceptional_blocks[j]) {
            if (std::abs(b.parent_x - parent->x) > 1e-12) continue;
            const double d = lambda / alpha - b.x;
            if (std::abs(d - std::round(d)) < match_tol) acc += b.mult;
        }
    }
    return acc;
}

/// theta^top(t) = sum over the reduced spectrum of index_dh(lambda)
/// exp(-t lambda_phys^2), lambda_phys = (2 pi / l(f)) lambda.
inline HeatValue theta_top(const SeifertData& seifert, const RepresentationData& rep, double t,
                           const PrecisionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("theta_top: t must be > 0");
    const double om = detail::order_of_generic(seifert);
    const double a = t * om * om;
    long exc_total = 0;
    for (const auto& blocks : rep.exceptional_blocks)
        for (const auto& b : blocks) exc_total += b.mult;
    double acc = 0.0, bound = 0.0;
    const double tol_scaled = cfg.target_abs_tol / cfg.series_guard_factor;
    for (const auto& blk : rep.generic_blocks) {
        const double index_cap =
            static_cast<double>(std::abs(seifert.chi_n_star) * blk.mult + exc_total);
        // walk n = 0, +-1, +-2, ... through mu = x + n
        for (long m = 0; m <= 100000; ++m) {
            for (long n : {m, -m}) {
                const double mu = blk.x + static_cast<double>(n);
                const double weight = std::exp(-a * mu * mu);
                acc += static_cast<double>(index_dh(seifert, rep, mu)) * weight;
                if (m == 0) break;
            }
            if (m >= 1) {
                const double tail =
                    2.0 * index_cap * detail::gaussian_tail_bound(a, m - 1); // |mu| >= m - 1
                if (tail < tol_scaled) {
                    bound += tail;
                    break;
                }
            }
        }
    }
    return {acc, bound * cfg.series_guard_factor};
}

namespace detail {

// order(gamma)^{2s} chi^zeta(gamma)(s) block: for each eigenangle x of the
// holonomy, zeta(2s,x) + zeta(2s,1-x), doubling the Riemann zeta at x = 1.
template <typename BlockRange>
complex_t zeta_block(const BlockRange& blocks, const complex_t& s, const PrecisionConfig& cfg) {
    complex_t acc = 0.0;
    for (const auto& b : blocks) {
        if (std::abs(b.x - 1.0) < 1e-12) {
            acc += 2.0 * static_cast<double>(b.mult) * hurwitz_zeta(2.0 * s, 1.0, cfg);
        } else {
            acc += static_cast<double>(b.mult) *
                   (hurwitz_zeta(2.0 * s, b.x, cfg) + hurwitz_zeta(2.0 * s, 1.0 - b.x, cfg));
        }
    }
    return acc;
}

} // namespace detail

/// Torsion zeta function Z(s) through its Hurwitz-zeta block form; simple
/// pole at s = 1/2.
inline complex_t zeta_Z(const SeifertData& seifert, const RepresentationData& rep,
                        const complex_t& s, const PrecisionConfig& cfg = {}) {
    if (std::abs(s - 0.5) < 1e-13) throw pole_error("zeta_Z: simple pole at s = 1/2");
    const double om_f = detail::order_of_generic(seifert);
    complex_t acc = static_cast<double>(seifert.chi_n_star) * std::pow(om_f, -2.0 * s) *
                    detail::zeta_block(rep.generic_blocks, s, cfg);
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const double om_j = detail::order_of_exceptional(seifert, j);
        acc += std::pow(om_j, -2.0 * s) * detail::zeta_block(rep.exceptional_blocks.at(j), s, cfg);
    }
    return acc;
}

struct ZdynValue {
    complex_t value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

// sum_{n >= 1} coeff(n) n^w with coeff periodic of period q: explicit head
// plus an Euler-Maclaurin tail per residue class.
template <typename CoeffFn>
ZdynValue periodic_power_sum(CoeffFn&& coeff, long q, const complex_t& w,
                             const PrecisionConfig& cfg) {
    const long blocks_head = std::max<long>(2, (256 + q - 1) / q);
    const long n0 = blocks_head * q;
    ZdynValue out;
    for (long n = 1; n <= n0; ++n)
        out.value += coeff(n) * std::pow(static_cast<double>(n), w);
    const double jbase = static_cast<double>(blocks_head);
    for (long c = 1; c <= q; ++c) {
        const complex_t a = coeff(n0 + c); // periodic: class value anywhere past the head
        if (a == complex_t(0.0)) continue;
        double err = 0.0;
        const complex_t tail = contact_spectra::detail::em_power_tail(
            w, jbase + static_cast<double>(c) / static_cast<double>(q), cfg, &err);
        out.value += a * std::pow(static_cast<double>(q), w) * tail;
        out.error_bound += std::abs(a) * std::pow(static_cast<double>(q), w.real()) * err;
    }
    out.error_bound *= cfg.series_guard_factor;
    return out;
}

} // namespace detail

/// Z^dyn(s) = sum_{gamma != 0} chi(gamma) e(gamma) |l(gamma)|^{2s-1}, by
/// direct orbit summation with certified Euler-Maclaurin tails. Defined for
/// Re s <= -0.1 (the direct-summation domain).
inline ZdynValue zeta_Zdyn(const SeifertData& seifert, const RepresentationData& rep,
                           const complex_t& s, const PrecisionConfig& cfg = {}) {
    if (s.real() > -0.1 + 1e-15)
        throw std::domain_error("zeta_Zdyn: requires Re s <= -0.1 for a certified tail");
    const complex_t w = 2.0 * s - 1.0;
    const double lf = seifert.fiber_length;
    const double chi_n = rational_euler(seifert).value();
    ZdynValue out;

    for (const auto& blk : rep.generic_blocks) {
        const auto rat = rationalize(blk.x);
        if (!rat.ok)
            throw convergence_error("zeta_Zdyn: generic angle is not rational within tolerance");
        const long q = rat.den;
        const complex_t scale =
            lf * chi_n * std::pow(lf, w) * static_cast<double>(blk.mult);
        auto coeff = [&](long n) {
            return complex_t(2.0 * std::cos(two_pi * static_cast<double>(n) * blk.x), 0.0);
        };
        const auto part = detail::periodic_power_sum(coeff, q, w, cfg);
        out.value += scale * part.value;
        out.error_bound += std::abs(scale) * part.error_bound;
    }
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const long alpha = seifert.exceptional[j].alpha;
        const double lj = seifert.exceptional_length(j);
        for (const auto& blk : rep.exceptional_blocks.at(j)) {
            const auto rat = rationalize(blk.x);
            if (!rat.ok)
                throw convergence_error(
                    "zeta_Zdyn: exceptional angle is not rational within tolerance");
            const long q = lcm_ll(rat.den, alpha);
            const complex_t scale = lj * std::pow(lj, w) * static_cast<double>(blk.mult);
            auto coeff = [&](long r) {
                if (r % alpha == 0) return complex_t(0.0);
                return complex_t(2.0 * std::cos(two_pi * static_cast<double>(r) * blk.x), 0.0);
            };
            const auto part = detail::periodic_power_sum(coeff, q, w, cfg);
            out.value += scale * part.value;
            out.error_bound += std::abs(scale) * part.error_bound;
        }
    }
    return out;
}

/// Z'(0) assembled from the s-derivatives of the Hurwitz blocks: for each
/// eigenangle pair, d/ds[zeta(2s,x)+zeta(2s,1-x)] at 0 is -2 ln(2 sin pi x),
/// and the unit eigenvalues contribute the -2 ln(2 pi) and order terms.
inline double z_prime_at_zero(const SeifertData& seifert, const RepresentationData& rep) {
    double acc = 0.0;
    auto add_family = [&](double weight, double order, auto const& blocks) {
        double dim1 = 0.0, pair_sum = 0.0;
        for (const auto& b : blocks) {
            if (std::abs(b.x - 1.0) < 1e-12) {
                dim1 += static_cast<double>(b.mult);
            } else {
                // 2 (zeta'(0,x) + zeta'(0,1-x)) = -2 ln(2 sin pi x)
                pair_sum += 2.0 * static_cast<double>(b.mult) *
                            (hurwitz_zeta_s_derivative_at_zero(b.x) +
                             hurwitz_zeta_s_derivative_at_zero(1.0 - b.x));
            }
        }
        acc += weight * (2.0 * std::log(order) * dim1 - 2.0 * std::log(two_pi) * dim1 + pair_sum);
    };
    add_family(static_cast<double>(seifert.chi_n_star), detail::order_of_generic(seifert),
               rep.generic_blocks);
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j)
        add_family(1.0, detail::order_of_exceptional(seifert, j), rep.exceptional_blocks.at(j));
    return acc;
}

/// Closed determinant-product form of the analytic torsion:
/// l(f)^{chi'} |det(rho(f)^perp - id)|^{chi(N*)} prod_j |det(rho(f_j)^perp - id)| / alpha_j^{dim V^1_j}.
/// |det(rho^perp - id)| = prod_{x != 1} (2 sin pi x)^{mult}. The fiber-length
/// power reduces to the usual (2 pi)^{chi'} at the default normalization and
/// keeps exp(-Z'(0)/2) exact for every fiber length.
inline TorsionResult torsion_closed_form(const SeifertData& seifert,
                                         const RepresentationData& rep) {
    double log_acc =
        static_cast<double>(chi_prime(seifert, rep)) * std::log(seifert.fiber_length);
    double det_log = 0.0;
    for (const auto& b : rep.generic_blocks)
        if (std::abs(b.x - 1.0) >= 1e-12)
            det_log += static_cast<double>(b.mult) * std::log(2.0 * std::sin(pi * b.x));
    log_acc += static_cast<double>(seifert.chi_n_star) * det_log;
    for (std::size_t j = 0; j < rep.exceptional_blocks.size(); ++j) {
        double dim1 = 0.0;
        for (const auto& b : rep.exceptional_blocks[j]) {
            if (std::abs(b.x - 1.0) < 1e-12)
                dim1 += static_cast<double>(b.mult);
            else
                log_acc += static_cast<double>(b.mult) * std::log(2.0 * std::sin(pi * b.x));
        }
        log_acc -= dim1 * std::log(static_cast<double>(seifert.exceptional[j].alpha));
    }
    return {std::exp(log_acc), "closed_form", 0.0};
}

/// Analytic-torsion value through the zeta derivative, T = exp(-Z'(0)/2).
inline TorsionResult torsion_from_zeta(const SeifertData& seifert,
                                       const RepresentationData& rep) {
    return {std::exp(-0.5 * z_prime_at_zero(seifert, rep)), "zeta_derivative", 0.0};
}

/// Direct Abel-style evaluation of Z^dyn(0) = sum chi(gamma) e(gamma)/|l(gamma)|,
/// conditionally convergent when no holonomy has unit eigenvalues.
inline AccelResult zdyn_at_zero_direct(const SeifertData& seifert, const RepresentationData& rep,
                                       const PrecisionConfig& cfg = {}) {
    const double chi_n = rational_euler(seifert).value();
    AccelResult total{0.0, 0.0, 0, true};
    for (const auto& blk : rep.generic_blocks) {
        const auto rat = rationalize(blk.x);
        const long q = rat.ok ? rat.den : 1;
        auto term = [&](std::size_t n) {
            return 2.0 * std::cos(two_pi * static_cast<double>(n) * blk.x) *
                   static_cast<double>(blk.mult) * chi_n / static_cast<double>(n);
        };
        const auto r = richardson_block_sum(term, static_cast<std::size_t>(q),
                                            cfg.target_abs_tol);
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.terms_used += r.terms_used;
        total.converged = total.converged && r.converged;
    }
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const long alpha = seifert.exceptional[j].alpha;
        for (const auto& blk : rep.exceptional_blocks.at(j)) {
            const auto rat = rationalize(blk.x);
            const long q = rat.ok ? lcm_ll(rat.den, alpha) : alpha;
            auto term = [&](std::size_t r_exp) {
                if (static_cast<long>(r_exp) % alpha == 0) return 0.0;
                return 2.0 * std::cos(two_pi * static_cast<double>(r_exp) * blk.x) *
                       static_cast<double>(blk.mult) / static_cast<double>(r_exp);
            };
            const auto r = richardson_block_sum(term, static_cast<std::size_t>(q),
                                                cfg.target_abs_tol);
            total.value += r.value;
            total.error_estimate += r.error_estimate;
            total.terms_used += r.terms_used;
            total.converged = total.converged && r.converged;
        }
    }
    return total;
}

/// Regularized total Fuller measure of closed orbits: the finite part of
/// Z^dyn at s = 0 once the chi'/s pole is removed, normalized so that it
/// equals Z'(0) = -2 ln T_Q (the Taylor coefficient picked out of
/// 2 Gamma(2s) cos(pi s) Z(s)).
inline TorsionResult fuller_measure(const SeifertData& seifert, const RepresentationData& rep) {
    return {z_prime_at_zero(seifert, rep), "zeta_derivative", 0.0};
}

/// Log-spaced evaluation grid.
inline std::vector<double> log_grid(double t_min, double t_max, int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(t_min);
        return grid;
    }
    const double step = (std::log(t_max) - std::log(t_min)) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(std::exp(std::log(t_min) + step * i));
    return grid;
}

} // namespace contact_spectra::torsion

#endif
