#ifndef CONTACT_SPECTRA_DATASETS_HPP
#define CONTACT_SPECTRA_DATASETS_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "contact_spectra/model.hpp"
#include "contact_spectra/series.hpp"

namespace contact_spectra::datasets {

struct Dataset {
    SeifertData seifert;
    RepresentationData rep;
    std::string name;
};

/// Hopf-type data: smooth base, chi(N*) = 2, trivial rank-1 holonomy.
/// k = 1 with kappa_1 = 1 so the eta side is available too.
inline Dataset hopf() {
    Dataset d;
    d.name = "hopf";
    d.seifert.chi_n_star = 2;
    d.seifert.k = 1;
    d.seifert.kappa = {{1, 1.0}};
    d.rep.generic_blocks = {{1.0, 1}};
    return d;
}

/// Rank-1 holonomy at angle 1/2 over a smooth base: acyclic, closed-form
/// torsion (2 sin(pi/2))^2 = 4.
inline Dataset halfspin() {
    Dataset d;
    d.name = "halfspin";
    d.seifert.chi_n_star = 2;
    d.rep.generic_blocks = {{0.5, 1}};
    return d;
}

/// Acyclic variant carrying eta data: kappa_1 = 2 keeps the signature
/// indices integral on the spectrum 1/2 + Z.
inline Dataset acyclic_eta() {
    Dataset d = halfspin();
    d.name = "acyclic_eta";
    d.seifert.k = 1;
    d.seifert.kappa = {{1, 2.0}};
    return d;
}

/// Lens-type data: chi(N*) = 0 with the mirror pair of order-4 fibers
/// (rotation numbers 1 and 3). The exceptional signature defects cancel
/// pairwise, so integer kappa_1 keeps the indices integral.
inline Dataset lens_k1() {
    Dataset d;
    d.name = "lens_k1";
    d.seifert.chi_n_star = 0;
    d.seifert.exceptional = {{4, {1}}, {4, {3}}};
    d.seifert.k = 1;
    d.seifert.kappa = {{1, 2.0}};
    d.rep.generic_blocks = {{1.0, 1}};
    d.rep.exceptional_blocks = {{{1.0, 1, 1.0}}, {{1.0, 1, 1.0}}};
    return d;
}

/// dim M = 7 (k = 2), smooth base; kappa_1 = 1, kappa_3 = 6 make the index
/// polynomial n + n^3.
inline Dataset eta_k2() {
    Dataset d;
    d.name = "eta_k2";
    d.seifert.chi_n_star = 2;
    d.seifert.k = 2;
    d.seifert.kappa = {{1, 1.0}, {3, 6.0}};
    d.rep.generic_blocks = {{1.0, 1}};
    return d;
}

/// k = 2 with a mirror pair of order-3 fibers carrying nonzero Lefschetz
/// factors (rotation numbers (1,1,2) and (2,2,1)).
inline Dataset eta_k2_exceptional() {
    Dataset d;
    d.name = "eta_k2_exceptional";
    d.seifert.chi_n_star = -1;
    d.seifert.exceptional = {{3, {1, 1, 2}}, {3, {2, 2, 1}}};
    d.seifert.k = 2;
    d.seifert.kappa = {{1, 1.0}, {3, 12.0}};
    d.rep.generic_blocks = {{1.0, 1}};
    d.rep.exceptional_blocks = {{{1.0, 1, 1.0}}, {{1.0, 1, 1.0}}};
    return d;
}

namespace detail {

// Deterministic draws independent of library distribution internals.
struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double unit() { return static_cast<double>(rng() >> 11) / 9007199254740992.0; }
};

inline long coprime_to(Draw& draw, long alpha) {
    while (true) {
        const long b = draw.range(1, alpha - 1);
        if (std::gcd(b, alpha) == 1) return b;
    }
}

} // namespace detail

/// Seeded random dataset. Angles are rational with denominator <= 24 and
/// the refinement constraint holds by construction. Exceptional fibers come
/// in mirror pairs (rotation numbers beta and alpha - beta, identical
/// holonomy refinement) plus optional order-2 fibers; their signature
/// defects then cancel, and kappa built from integer multiples of the
/// angle denominators keeps every index integral.
inline Dataset random_dataset(std::uint64_t seed) {
    detail::Draw draw(seed ^ 0x9e3779b97f4a7c15ull);
    Dataset d;
    d.name = "random_" + std::to_string(seed);
    d.seifert.chi_n_star = draw.range(-3, 3);
    const long k = draw.range(1, 2);
    d.seifert.k = k;

    // generic holonomy blocks: 1 or 2 distinct rational angles
    const long nblocks = draw.range(1, 2);
    std::vector<long> dens;
    for (long i = 0; i < nblocks; ++i) {
        while (true) {
            const long q = draw.range(1, 24);
            const long p = draw.range(1, q);
            const double x = static_cast<double>(p) / static_cast<double>(q);
            bool dup = false;
            for (const auto& b : d.rep.generic_blocks) dup = dup || std::abs(b.x - x) < 1e-9;
            if (dup) continue;
            d.rep.generic_blocks.push_back({x, draw.range(1, 2)});
            dens.push_back(q / std::gcd(p, q));
            break;
        }
    }

    // exceptional fibers: plan 0..3 as mirror pairs plus order-2 singletons
    const long plan = draw.range(0, 3);
    const long n_rot = 2 * k - 1;
    auto add_alpha2 = [&] {
        ExceptionalOrbit e;
        e.alpha = 2;
        e.rotation_numbers.assign(static_cast<std::size_t>(n_rot), 1);
        d.seifert.exceptional.push_back(e);
    };
    auto add_mirror_pair = [&] {
        const long alpha = draw.range(3, 8);
        ExceptionalOrbit e1, e2;
        e1.alpha = e2.alpha = alpha;
        for (long m = 0; m < n_rot; ++m) {
            const long beta = detail::coprime_to(draw, alpha);
            e1.rotation_numbers.push_back(beta);
            e2.rotation_numbers.push_back(alpha - beta);
        }
        d.seifert.exceptional.push_back(e1);
        d.seifert.exceptional.push_back(e2);
    };
    if (plan == 1) add_alpha2();
    if (plan == 2) add_mirror_pair();
    if (plan == 3) { add_mirror_pair(); add_alpha2(); }

    // holonomy refinement: one block per parent, mirror partners identical
    std::vector<std::vector<ExceptionalBlock>> pair_shared;
    for (std::size_t j = 0; j < d.seifert.exceptional.size(); ++j) {
        const long alpha = d.seifert.exceptional[j].alpha;
        std::vector<ExceptionalBlock> blocks;
        const bool second_of_pair =
            j > 0 && d.seifert.exceptional[j - 1].alpha == alpha && alpha > 2 && j % 2 == 1 &&
            !pair_shared.empty();
        if (second_of_pair) {
            blocks = pair_shared.back();
        } else {
            for (const auto& parent : d.rep.generic_blocks) {
                const long m = draw.range(0, alpha - 1);
                blocks.push_back({(parent.x + static_cast<double>(m)) / static_cast<double>(alpha),
                                  parent.mult, parent.x});
            }
            if (alpha > 2) pair_shared.push_back(blocks);
        }
        d.rep.exceptional_blocks.push_back(blocks);
    }

    // kappa: integer multiples tied to the angle denominators so the smooth
    // index polynomial takes integer values on every x + Z
    long q_all = 1;
    for (long q : dens) q_all = static_cast<long>(lcm_ll(q_all, q));
    const double q_d = static_cast<double>(q_all);
    d.seifert.kappa[1] = q_d * static_cast<double>(draw.range(-3, 3));
    if (k == 2)
        d.seifert.kappa[3] = 6.0 * q_d * q_d * q_d * static_cast<double>(draw.range(-2, 2));
    return d;
}

} // namespace contact_spectra::datasets

#endif
