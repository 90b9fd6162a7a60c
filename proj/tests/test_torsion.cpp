#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "contact_spectra/datasets.hpp"
#include "contact_spectra/torsion.hpp"

using namespace contact_spectra;
using namespace contact_spectra::torsion;
using datasets::Dataset;
using Catch::Approx;

namespace {

double theta_brute(double x, double t, int N = 1500) {
    double s = 0.0;
    for (int n = -N; n <= N; ++n) s += std::exp(-t * (n + x) * (n + x));
    return s;
}

// theta^dyn oracle assembled from the raw complex orbit sum, no pairing.
std::complex<double> theta_dyn_complex_brute(const Dataset& d, double t, int N = 300) {
    const double lf = d.seifert.fiber_length;
    const double chi_n = rational_euler(d.seifert).value();
    std::complex<double> acc = static_cast<double>(d.rep.dimension()) * lf * chi_n;
    for (int n = -N; n <= N; ++n) {
        if (n == 0) continue;
        acc += character_generic(d.rep, n) * lf * chi_n *
               std::exp(-(n * lf) * (n * lf) / (4.0 * t));
    }
    for (std::size_t j = 0; j < d.seifert.exceptional.size(); ++j) {
        const long alpha = d.seifert.exceptional[j].alpha;
        const double lj = d.seifert.exceptional_length(j);
        for (long r = -N * alpha; r <= N * alpha; ++r) {
            if (r == 0 || r % alpha == 0) continue;
            acc += character_exceptional(d.rep, j, r) * lj *
                   std::exp(-(r * lj) * (r * lj) / (4.0 * t));
        }
    }
    return acc / std::sqrt(4.0 * pi * t);
}

Dataset rescaled(Dataset d, double c) {
    d.seifert.fiber_length *= c;
    for (auto& [m, v] : d.seifert.kappa) v *= std::pow(c, static_cast<double>(m));
    return d;
}

} // namespace

TEST_CASE("chi_theta building blocks") {
    const auto hopf = datasets::hopf();
    for (double t : {0.3, 1.0, 4.0})
        REQUIRE(chi_theta_generic(hopf.seifert, hopf.rep, t) ==
                Approx(theta_brute(1.0, t)).margin(1e-12));

    // rank 2 with x in {1/2, 1}: additivity
    Dataset d2 = hopf;
    d2.rep.generic_blocks = {{0.5, 1}, {1.0, 1}};
    REQUIRE(chi_theta_generic(d2.seifert, d2.rep, 0.7) ==
            Approx(theta_brute(0.5, 0.7) + theta_brute(1.0, 0.7)).margin(1e-12));

    // exceptional alpha = 2 with x = 1/2: theta(1/2, 4t) at l(f) = 2 pi
    Dataset de;
    de.seifert.chi_n_star = 0;
    de.seifert.exceptional = {{2, {}}};
    de.rep.generic_blocks = {{1.0, 1}};
    de.rep.exceptional_blocks = {{{0.5, 1, 1.0}}};
    REQUIRE(validate(de.seifert, de.rep).ok());
    REQUIRE(chi_theta_exceptional(de.seifert, de.rep, 0, 0.9) ==
            Approx(theta_brute(0.5, 3.6)).margin(1e-12));
}

TEST_CASE("theta_geo on the Hopf data") {
    const auto hopf = datasets::hopf();
    for (double t : {0.05, 0.7, 3.0, 20.0})
        REQUIRE(theta_geo(hopf.seifert, hopf.rep, t).value ==
                Approx(2.0 * theta_brute(1.0, t)).margin(1e-11));
    // large t limit is chi'
    REQUIRE(theta_geo(hopf.seifert, hopf.rep, 30.0).value ==
            Approx(static_cast<double>(chi_prime(hopf.seifert, hopf.rep))).margin(1e-10));
    // small t asymptote sqrt(pi/t) chi(N) dim V
    const double t0 = 0.01;
    REQUIRE(theta_geo(hopf.seifert, hopf.rep, t0).value ==
            Approx(std::sqrt(pi / t0) * 2.0).margin(1e-9));
}

TEST_CASE("theta_dyn equals the Poisson oracle and is real") {
    const auto hopf = datasets::hopf();
    for (double t : {0.1, 1.0, 8.0})
        REQUIRE(theta_dyn(hopf.seifert, hopf.rep, t).value ==
                Approx(2.0 * theta_brute(1.0, t)).margin(1e-11));

    const auto d = datasets::random_dataset(11);
    for (double t : {0.4, 2.5}) {
        const auto oracle = theta_dyn_complex_brute(d, t);
        REQUIRE(std::abs(oracle.imag()) < 1e-10);
        REQUIRE(theta_dyn(d.seifert, d.rep, t).value ==
                Approx(oracle.real()).margin(1e-10));
    }
}

TEST_CASE("index_dh examples") {
    const auto hopf = datasets::hopf();
    for (double lam : {-3.0, 0.0, 5.0})
        REQUIRE(index_dh(hopf.seifert, hopf.rep, lam) == 2);

    Dataset de;
    de.seifert.chi_n_star = 0;
    de.seifert.exceptional = {{2, {}}};
    de.rep.generic_blocks = {{1.0, 1}};
    de.rep.exceptional_blocks = {{{0.5, 1, 1.0}}};
    REQUIRE(index_dh(de.seifert, de.rep, 1.0) == 1);
    REQUIRE(index_dh(de.seifert, de.rep, 2.0) == 0);
    REQUIRE(index_dh(de.seifert, de.rep, -3.0) == 1);

    // block with no matching exceptional eigenvalue: chi(N*) dim V^x
    Dataset dn;
    dn.seifert.chi_n_star = -2;
    dn.seifert.exceptional = {{3, {}}};
    dn.rep.generic_blocks = {{0.5, 2}};
    dn.rep.exceptional_blocks = {{{0.5, 2, 0.5}}};
    REQUIRE(validate(dn.seifert, dn.rep).ok());
    // lambda = 0.5 + 1: 1.5/3 = 0.5 matches x_jk = 0.5 -> -4 + 2
    REQUIRE(index_dh(dn.seifert, dn.rep, 1.5) == -2);
    // lambda = 0.5: 0.5/3 does not match
    REQUIRE(index_dh(dn.seifert, dn.rep, 0.5) == -4);
    REQUIRE_THROWS_AS(index_dh(dn.seifert, dn.rep, 0.25), std::domain_error);
}

TEST_CASE("theta_top on the Hopf data") {
    const auto hopf = datasets::hopf();
    for (double t : {0.05, 0.9, 12.0})
        REQUIRE(theta_top(hopf.seifert, hopf.rep, t).value ==
                Approx(2.0 * theta_brute(1.0, t)).margin(1e-11));
    REQUIRE(theta_top(hopf.seifert, hopf.rep, 35.0).value ==
            Approx(static_cast<double>(chi_prime(hopf.seifert, hopf.rep))).margin(1e-10));
}

TEST_CASE("trace formula: geo = dyn = top on a log grid") {
    std::vector<Dataset> cases = {datasets::hopf(), datasets::halfspin(), datasets::lens_k1(),
                                  datasets::eta_k2_exceptional()};
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) cases.push_back(datasets::random_dataset(seed));
    for (const auto& d : cases) {
        CAPTURE(d.name);
        REQUIRE(validate(d.seifert, d.rep).ok());
        for (double t : log_grid(0.05, 20.0, 20)) {
            const double geo = theta_geo(d.seifert, d.rep, t).value;
            const double dyn = theta_dyn(d.seifert, d.rep, t).value;
            const double top = theta_top(d.seifert, d.rep, t).value;
            CAPTURE(t, geo, dyn, top);
            REQUIRE(std::abs(geo - dyn) < 1e-9);
            REQUIRE(std::abs(geo - top) < 1e-9);
        }
    }
}

TEST_CASE("heat traces are invariant under the contact rescaling") {
    for (const auto& d : {datasets::hopf(), datasets::lens_k1(), datasets::random_dataset(21)}) {
        for (double c : {0.5, 3.0}) {
            const auto dc = rescaled(d, c);
            for (double t : {0.07, 1.3, 9.0}) {
                REQUIRE(std::abs(theta_geo(d.seifert, d.rep, t).value -
                                 theta_geo(dc.seifert, dc.rep, c * c * t).value) < 1e-12);
                REQUIRE(std::abs(theta_dyn(d.seifert, d.rep, t).value -
                                 theta_dyn(dc.seifert, dc.rep, c * c * t).value) < 1e-12);
                REQUIRE(std::abs(theta_top(d.seifert, d.rep, t).value -
                                 theta_top(dc.seifert, dc.rep, c * c * t).value) < 1e-12);
            }
        }
    }
}

TEST_CASE("zeta_Z values and pole structure") {
    const auto hopf = datasets::hopf();
    // Z(s) = 4 zeta(2s) for the Hopf data
    REQUIRE(zeta_Z(hopf.seifert, hopf.rep, 0.0).real() == Approx(-2.0).margin(1e-12));
    REQUIRE(zeta_Z(hopf.seifert, hopf.rep, 2.0).real() ==
            Approx(4.0 * std::pow(pi, 4) / 90.0).margin(1e-11));
    REQUIRE_THROWS_AS(zeta_Z(hopf.seifert, hopf.rep, 0.5), pole_error);

    // residue at 1/2: two-sided (s - 1/2) Z(s) -> chi(N) dim V
    auto residue_half = [](const Dataset& d) {
        const double h = 1e-5;
        const complex_t a = (complex_t(h) ) * zeta_Z(d.seifert, d.rep, 0.5 + h);
        const complex_t b = (complex_t(-h)) * zeta_Z(d.seifert, d.rep, 0.5 - h);
        return 0.5 * (a + b).real();
    };
    REQUIRE(residue_half(hopf) == Approx(2.0).margin(1e-6));
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        const auto d = datasets::random_dataset(seed);
        const double expect = rational_euler(d.seifert).value() * d.rep.dimension();
        REQUIRE(residue_half(d) == Approx(expect).margin(1e-6));
    }
}

TEST_CASE("Z(0) = -chi' across datasets") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const auto d = datasets::random_dataset(seed);
        CAPTURE(d.name);
        const double z0 = zeta_Z(d.seifert, d.rep, 0.0).real();
        REQUIRE(z0 == Approx(-static_cast<double>(chi_prime(d.seifert, d.rep))).margin(1e-9));
    }
}

TEST_CASE("zeta_Zdyn matches the closed Hopf evaluation") {
    const auto hopf = datasets::hopf();
    // Z^dyn(s) = 4 (2 pi)^{2s} zeta(1 - 2s) for the Hopf data
    for (double sr : {-0.4, -1.1}) {
        const auto got = zeta_Zdyn(hopf.seifert, hopf.rep, sr);
        const double expect =
            4.0 * std::pow(two_pi, 2.0 * sr) * hurwitz_zeta(1.0 - 2.0 * sr, 1.0).real();
        REQUIRE(got.value.real() == Approx(expect).epsilon(1e-10));
        REQUIRE(std::abs(got.value.imag()) < 1e-12);
        REQUIRE(got.error_bound < 1e-10);
    }
    REQUIRE_THROWS_AS(zeta_Zdyn(hopf.seifert, hopf.rep, -0.05), std::domain_error);
}

TEST_CASE("functional equations relating Z and Zdyn") {
    auto check_at = [](const Dataset& d, const complex_t& s, double rel_tol) {
        const complex_t z = zeta_Z(d.seifert, d.rep, s);
        const complex_t zdyn = zeta_Zdyn(d.seifert, d.rep, s).value;
        // Gamma(s) Z(s) = 4^{-s} pi^{-1/2} Gamma(1/2 - s) Zdyn(s)
        const complex_t lhs38 = gamma_complex(s) * z;
        const complex_t rhs38 =
            std::pow(4.0, -s) / std::sqrt(pi) * gamma_complex(0.5 - s) * zdyn;
        CAPTURE(s.real(), s.imag());
        REQUIRE(std::abs(lhs38 - rhs38) <= rel_tol * std::max(1.0, std::abs(lhs38)));
        // 2 Gamma(2s) cos(pi s) Z(s) = Zdyn(s)
        const complex_t lhs40 = 2.0 * gamma_complex(2.0 * s) * std::cos(pi * s) * z;
        REQUIRE(std::abs(lhs40 - zdyn) <= rel_tol * std::max(1.0, std::abs(zdyn)));
    };
    const auto hopf = datasets::hopf();
    check_at(hopf, complex_t(-0.3, 0.0), 1e-8);
    check_at(hopf, complex_t(-0.7, 0.0), 1e-8);

    std::mt19937_64 rng(99);
    auto unif = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
    };
    const auto d2 = datasets::random_dataset(77);
    int done = 0;
    while (done < 10) {
        const double sr = unif(-1.4, -0.1);
        if (std::abs(sr + 0.5) < 0.05 || std::abs(sr + 1.0) < 0.05) continue;
        check_at(hopf, complex_t(sr, 0.0), 1e-8);
        check_at(d2, complex_t(sr, 0.0), 1e-8);
        ++done;
    }
}

TEST_CASE("closed-form torsion") {
    const auto hopf = datasets::hopf();
    REQUIRE(torsion_closed_form(hopf.seifert, hopf.rep).value ==
            Approx(two_pi * two_pi).margin(1e-10));
    const auto hs = datasets::halfspin();
    REQUIRE(chi_prime(hs.seifert, hs.rep) == 0);
    REQUIRE(torsion_closed_form(hs.seifert, hs.rep).value == Approx(4.0).margin(1e-12));

    // against exp(-Z'(0)/2) with the derivative taken by central difference
    for (const auto& d : {hopf, hs, datasets::lens_k1(), datasets::random_dataset(101)}) {
        CAPTURE(d.name);
        const double h = 1e-4;
        const double zp_fd = (zeta_Z(d.seifert, d.rep, h).real() -
                              zeta_Z(d.seifert, d.rep, -h).real()) / (2.0 * h);
        const double closed = torsion_closed_form(d.seifert, d.rep).value;
        REQUIRE(std::exp(-0.5 * zp_fd) == Approx(closed).epsilon(1e-6));
        // analytic derivative path
        REQUIRE(std::exp(-0.5 * z_prime_at_zero(d.seifert, d.rep)) ==
                Approx(closed).epsilon(1e-11));
    }
}

TEST_CASE("fuller measure") {
    const auto hopf = datasets::hopf();
    REQUIRE(fuller_measure(hopf.seifert, hopf.rep).value ==
            Approx(-4.0 * std::log(two_pi)).margin(1e-10));

    // acyclic data: the measure is the plain convergent orbit sum Zdyn(0)
    const auto hs = datasets::halfspin();
    const auto direct = zdyn_at_zero_direct(hs.seifert, hs.rep);
    REQUIRE(direct.converged);
    REQUIRE(fuller_measure(hs.seifert, hs.rep).value ==
            Approx(direct.value).margin(1e-9));
    // closed evaluation: 4 sum (-1)^n / n = -4 ln 2
    REQUIRE(direct.value == Approx(-4.0 * std::log(2.0)).margin(1e-9));

    // -fuller/2 = ln T_Q
    for (const auto& d : {hopf, hs, datasets::lens_k1(), datasets::random_dataset(5150)}) {
        CAPTURE(d.name);
        REQUIRE(-0.5 * fuller_measure(d.seifert, d.rep).value ==
                Approx(std::log(torsion_closed_form(d.seifert, d.rep).value)).margin(1e-8));
    }
}
