#ifndef CONTACT_SPECTRA_MODEL_HPP
#define CONTACT_SPECTRA_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "contact_spectra/special_functions.hpp"

namespace contact_spectra {

/// Exceptional fiber of order alpha. The rotation numbers beta_m (one per
/// horizontal angle, 2k-1 of them) describe the return map of the flow at
/// the singular point: angles 2 pi beta_m / alpha, each beta_m coprime to
/// alpha. They are only needed by the eta-side formulas.
struct ExceptionalOrbit {
    long alpha = 2;
    std::vector<long> rotation_numbers;
};

/// Combinatorial and geometric description of the fibration M -> N.
struct SeifertData {
    long chi_n_star = 2;                 // Euler characteristic of the punctured base
    double fiber_length = two_pi;        // l(f), the integral of the contact form over f
    std::vector<ExceptionalOrbit> exceptional;
    std::optional<long> k;               // dim M = 4k - 1; eta side only
    std::map<long, double> kappa;        // odd m -> <c^m ^ L(N), [N_smooth]>; eta side only

    long num_exceptional() const { return static_cast<long>(exceptional.size()); }
    double exceptional_length(std::size_t j) const {
        return fiber_length / static_cast<double>(exceptional[j].alpha);
    }
};

/// One eigenvalue block of rho(f): angle x in (0,1] with multiplicity.
struct GenericBlock {
    double x = 1.0;
    long mult = 1;
};

/// One eigenvalue block of rho(f_j), refined over the block of rho(f) it
/// projects to under rho(f_j)^{alpha_j} = rho(f).
struct ExceptionalBlock {
    double x = 1.0;
    long mult = 1;
    double parent_x = 1.0;
};

struct RepresentationData {
    std::vector<GenericBlock> generic_blocks;
    // exceptional_blocks[j] refines rho(f_j) for the j-th exceptional orbit
    std::vector<std::vector<ExceptionalBlock>> exceptional_blocks;

    long dimension() const {
        long d = 0;
        for (const auto& b : generic_blocks) d += b.mult;
        return d;
    }
};

/// Free homotopy class of a closed orbit (or its inverse).
struct OrbitClass {
    enum class Kind { generic, exceptional };
    Kind kind = Kind::generic;
    long index = 0;   // exceptional orbit index j, meaningful for exceptional kind
    long exponent = 0; // n for f^n, r for f_j^r (signed, never 0)
    double length = 0.0;        // signed algebraic length
    std::complex<double> character;
    double e_weight = 0.0;      // l(f) chi(N) for generic, l(f_j) for exceptional
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has(const std::string& code) const {
        return std::any_of(issues.begin(), issues.end(),
                           [&](const ValidationIssue& i) { return i.code == code; });
    }
};

/// Exact rational chi(N) = chi(N*) + sum_j 1/alpha_j.
struct Rational {
    long long num = 0;
    long long den = 1;
    void reduce() {
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (den < 0) { num = -num; den = -den; }
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational rational_euler(const SeifertData& seifert) {
    Rational r{seifert.chi_n_star, 1};
    for (const auto& e : seifert.exceptional) {
        r.num = r.num * e.alpha + r.den;
        r.den *= e.alpha;
        r.reduce();
    }
    return r;
}

namespace detail {
inline bool frac_match(double a, double b, double tol = 1e-12) {
    const double d = a - b;
    return std::abs(d - std::round(d)) < tol;
}
} // namespace detail

inline ValidationReport validate(const SeifertData& seifert, const RepresentationData& rep) {
    ValidationReport rpt;
    auto fail = [&](const char* code, std::string msg) {
        rpt.issues.push_back({code, std::move(msg)});
    };

    if (!(seifert.fiber_length > 0.0))
        fail("FIBER_LENGTH", "fiber_length must be positive");
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const auto& e = seifert.exceptional[j];
        if (e.alpha < 2)
            fail("BAD_ALPHA", "exceptional orbit " + std::to_string(j) + ": alpha must be >= 2");
        for (long beta : e.rotation_numbers) {
            if (beta < 1 || beta >= e.alpha)
                fail("BAD_ROTATION", "exceptional orbit " + std::to_string(j) +
                                         ": rotation number out of [1, alpha-1]");
            else if (std::gcd(beta, e.alpha) != 1)
                fail("NOT_COPRIME", "exceptional orbit " + std::to_string(j) +
                                        ": rotation number " + std::to_string(beta) +
                                        " shares a factor with alpha " + std::to_string(e.alpha));
        }
    }
    if (seifert.k) {
        if (*seifert.k < 1) fail("BAD_K", "k must be >= 1");
        for (const auto& [m, v] : seifert.kappa) {
            (void)v;
            if (m < 1 || m % 2 == 0 || m > 2 * *seifert.k - 1)
                fail("KAPPA_PARITY", "kappa key " + std::to_string(m) +
                                         " must be odd and <= 2k-1");
        }
        for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
            const auto& e = seifert.exceptional[j];
            if (static_cast<long>(e.rotation_numbers.size()) != 2 * *seifert.k - 1)
                fail("ROTATION_COUNT", "exceptional orbit " + std::to_string(j) + ": expected " +
                                           std::to_string(2 * *seifert.k - 1) +
                                           " rotation numbers");
        }
    }

    if (rep.generic_blocks.empty())
        fail("REP_EMPTY", "representation has no generic blocks");
    for (const auto& b : rep.generic_blocks) {
        if (!(b.x > 0.0 && b.x <= 1.0)) fail("BAD_ANGLE", "generic angle x must lie in (0, 1]");
        if (b.mult < 1) fail("BAD_MULT", "generic multiplicity must be >= 1");
    }
    if (!rep.exceptional_blocks.empty() &&
        rep.exceptional_blocks.size() != seifert.exceptional.size())
        fail("REP_SHAPE", "exceptional_blocks must have one entry per exceptional orbit");

    for (std::size_t j = 0; j < rep.exceptional_blocks.size() &&
                            j < seifert.exceptional.size(); ++j) {
        const long alpha = seifert.exceptional[j].alpha;
        std::map<long long, long> refined; // parent block id -> total refined multiplicity
        for (const auto& b : rep.exceptional_blocks[j]) {
            if (!(b.x > 0.0 && b.x <= 1.0))
                fail("BAD_ANGLE", "exceptional angle x must lie in (0, 1]");
            if (b.mult < 1) fail("BAD_MULT", "exceptional multiplicity must be >= 1");
            if (!detail::frac_match(static_cast<double>(alpha) * b.x, b.parent_x))
                fail("REP_COMPAT",
                     "orbit " + std::to_string(j) + ": alpha * x = " +
                         std::to_string(static_cast<double>(alpha) * b.x) +
                         " is not parent_x mod 1");
        }
        // refined multiplicities must sum to the parent multiplicity
        for (const auto& parent : rep.generic_blocks) {
            long total = 0;
            for (const auto& b : rep.exceptional_blocks[j])
                if (std::abs(b.parent_x - parent.x) < 1e-12) total += b.mult;
            if (total != parent.mult)
                fail("REP_REFINE", "orbit " + std::to_string(j) +
                                       ": refined multiplicities for parent x = " +
                                       std::to_string(parent.x) + " sum to " +
                                       std::to_string(total) + ", expected " +
                                       std::to_string(parent.mult));
        }
    }
    return rpt;
}

/// chi_rho(f^n) = sum over blocks of mult * e^{2 pi i n x}.
inline std::complex<double> character_generic(const RepresentationData& rep, long n) {
    std::complex<double> acc = 0.0;
    for (const auto& b : rep.generic_blocks)
        acc += static_cast<double>(b.mult) *
               std::polar(1.0, two_pi * static_cast<double>(n) * b.x);
    return acc;
}

/// chi_rho(f_j^r).
inline std::complex<double> character_exceptional(const RepresentationData& rep, std::size_t j,
                                                  long r) {
    std::complex<double> acc = 0.0;
    for (const auto& b : rep.exceptional_blocks.at(j))
        acc += static_cast<double>(b.mult) *
               std::polar(1.0, two_pi * static_cast<double>(r) * b.x);
    return acc;
}

/// chi_rho(f_j^r | V^x): the trace restricted to the blocks of rho(f_j)
/// refining the generic block with angle x.
inline std::complex<double> character_restricted(const RepresentationData& rep, std::size_t j,
                                                 long r, double parent_x) {
    std::complex<double> acc = 0.0;
    for (const auto& b : rep.exceptional_blocks.at(j))
        if (std::abs(b.parent_x - parent_x) < 1e-12)
            acc += static_cast<double>(b.mult) *
                   std::polar(1.0, two_pi * static_cast<double>(r) * b.x);
    return acc;
}

/// chi'(M, rho) = chi(N*) dim ker(rho(f) - id) + sum_j dim ker(rho(f_j) - id).
inline long chi_prime(const SeifertData& seifert, const RepresentationData& rep) {
    long unit_generic = 0;
    for (const auto& b : rep.generic_blocks)
        if (std::abs(b.x - 1.0) < 1e-12) unit_generic += b.mult;
    long acc = seifert.chi_n_star * unit_generic;
    for (const auto& blocks : rep.exceptional_blocks)
        for (const auto& b : blocks)
            if (std::abs(b.x - 1.0) < 1e-12) acc += b.mult;
    return acc;
}

/// All orbit classes with |length| <= cutoff, both signs of the exponent.
/// Powers f_j^{alpha_j p} are homotopic to f^p and belong to the generic
/// family only.
inline std::vector<OrbitClass> enumerate_orbits(const SeifertData& seifert,
                                                const RepresentationData& rep,
                                                double cutoff_length) {
    if (!(cutoff_length > 0.0))
        throw std::domain_error("enumerate_orbits: cutoff must be positive");
    std::vector<OrbitClass> out;
    const double chi_n = rational_euler(seifert).value();
    const double lf = seifert.fiber_length;
    for (long n = 1; static_cast<double>(n) * lf <= cutoff_length; ++n) {
        for (long sign : {1, -1}) {
            OrbitClass c;
            c.kind = OrbitClass::Kind::generic;
            c.exponent = sign * n;
            c.length = static_cast<double>(c.exponent) * lf;
            c.character = character_generic(rep, c.exponent);
            c.e_weight = lf * chi_n;
            out.push_back(c);
        }
    }
    for (std::size_t j = 0; j < seifert.exceptional.size(); ++j) {
        const long alpha = seifert.exceptional[j].alpha;
        const double lj = seifert.exceptional_length(j);
        for (long r = 1; static_cast<double>(r) * lj <= cutoff_length; ++r) {
            if (r % alpha == 0) continue;
            for (long sign : {1, -1}) {
                OrbitClass c;
                c.kind = OrbitClass::Kind::exceptional;
                c.index = static_cast<long>(j);
                c.exponent = sign * r;
                c.length = static_cast<double>(c.exponent) * lj;
                c.character = character_exceptional(rep, j, c.exponent);
                c.e_weight = lj;
                out.push_back(c);
            }
        }
    }
    return out;
}

} // namespace contact_spectra

#endif
