#include <cmath>
#include <random>

#include "ctls/error.hpp"
#include "ctls/thermal.hpp"
#include "ctls/transfer.hpp"
#include "doctest.h"

using namespace ctls;
using doctest::Approx;

namespace {

const RotationalConstants kPd = propanediol_constants();

RoVibLevel make_level(int vib, double vib_thz, int J, int tau, double e_rot) {
    return {vib, vib_thz, RotorLevel{J, tau, e_rot, 2 * J + 1}, 0};
}

std::array<RoVibLevel, 3> purely_rotational_levels() {
    return {make_level(0, 0.0, 0, 0, 0.0), make_level(0, 0.0, 1, 0, 11.3131),
            make_level(0, 0.0, 1, 1, 12.1598)};
}

std::array<RoVibLevel, 3> rovibrational_levels() {
    return {make_level(0, 0.0, 0, 0, 0.0), make_level(1, 100.95, 1, 0, 11.3131),
            make_level(1, 100.95, 1, 1, 12.1598)};
}

double sum(const OccupationTriple& p) { return p.p1 + p.p2 + p.p3; }

}  // namespace

TEST_CASE("h/k_B conversion constant") {
    CHECK(kKelvinPerGhz == Approx(0.04799243073366221).epsilon(1e-15));
}

TEST_CASE("boltzmann exponent") {
    CHECK(boltzmann_exponent(12.1598, 10.0) == Approx(0.05835783592351858).epsilon(1e-13));
    CHECK(boltzmann_exponent(0.0, 3.0) == 0.0);
    CHECK(boltzmann_exponent(100950.0, 300.0) == Approx(16.149452941877335).epsilon(1e-13));
    CHECK_THROWS_AS(boltzmann_exponent(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(boltzmann_exponent(1.0, -5.0), DomainError);
}

TEST_CASE("three-level populations") {
    SUBCASE("degenerate levels split evenly") {
        std::array<RoVibLevel, 3> same{make_level(0, 0, 1, 0, 5.0), make_level(0, 0, 1, 0, 5.0),
                                       make_level(0, 0, 1, 0, 5.0)};
        const auto p = ctls_populations(same, {10.0, 300.0});
        CHECK(p.p1 == Approx(1.0 / 3).epsilon(1e-15));
        CHECK(p.p2 == Approx(1.0 / 3).epsilon(1e-15));
        CHECK(p.p3 == Approx(1.0 / 3).epsilon(1e-15));
    }
    SUBCASE("zero temperatures give the ground state") {
        const auto p = ctls_populations(rovibrational_levels(), {0.0, 0.0});
        CHECK(p.p1 == 1.0);
        CHECK(p.p2 == 0.0);
        CHECK(p.p3 == 0.0);
        const auto q = ctls_populations(purely_rotational_levels(), {0.0, 300.0});
        CHECK(q.p1 == 1.0);
    }
    SUBCASE("zero temperature ties split equally") {
        std::array<RoVibLevel, 3> tie{make_level(0, 0, 1, 0, 2.0), make_level(0, 0, 1, 1, 2.0),
                                      make_level(0, 0, 1, 1, 9.0)};
        const auto p = ctls_populations(tie, {0.0, 0.0});
        CHECK(p.p1 == 0.5);
        CHECK(p.p2 == 0.5);
        CHECK(p.p3 == 0.0);
    }
    SUBCASE("ro-vibrational loop at 300 K / 300 K") {
        const auto p = ctls_populations(rovibrational_levels(), {300.0, 300.0});
        CHECK(p.p1 == Approx(0.9999998065377605).epsilon(1e-14));
        CHECK(p.p2 == Approx(9.673767088208816e-08).epsilon(1e-10));
        CHECK(p.p3 == Approx(9.672456859032149e-08).epsilon(1e-10));
        CHECK(p.p2 + p.p3 < 2e-7);
    }
    SUBCASE("purely rotational loop at 10 K") {
        const auto p = ctls_populations(purely_rotational_levels(), {10.0, 300.0});
        CHECK(p.p1 == Approx(0.3459650191788042).epsilon(1e-13));
        CHECK(p.p2 == Approx(0.3276819104071756).epsilon(1e-13));
        CHECK(p.p3 == Approx(0.3263530704140203).epsilon(1e-13));
    }
    CHECK_THROWS_AS(ctls_populations(purely_rotational_levels(), {-1.0, 300.0}), DomainError);
    CHECK_THROWS_AS(ctls_populations(purely_rotational_levels(), {1.0, -300.0}), DomainError);
}

TEST_CASE("population invariants over random levels") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> energy(0.0, 50.0);
    std::uniform_real_distribution<double> temp(0.01, 500.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<RoVibLevel, 3> levels{make_level(0, 0, 1, 0, energy(rng)),
                                         make_level(0, 0, 1, 0, energy(rng)),
                                         make_level(0, 0, 1, 0, energy(rng))};
        const Temperatures t{temp(rng), 300.0};
        const auto p = ctls_populations(levels, t);
        CHECK(std::abs(sum(p) - 1.0) < 1e-12);

        auto shifted = levels;
        for (auto& l : shifted) l.rot.energy_ghz += 17.5;
        const auto q = ctls_populations(shifted, t);
        CHECK(q.p1 == Approx(p.p1).epsilon(1e-10));
        CHECK(q.p2 == Approx(p.p2).epsilon(1e-10));
        CHECK(q.p3 == Approx(p.p3).epsilon(1e-10));

        // Relabel two levels of equal energy.
        auto tied = levels;
        tied[2].rot.energy_ghz = tied[1].rot.energy_ghz;
        auto swapped = tied;
        std::swap(swapped[1], swapped[2]);
        const auto a = ctls_populations(tied, t);
        const auto b = ctls_populations(swapped, t);
        CHECK(a.p2 == b.p3);
        CHECK(a.p3 == b.p2);
        CHECK(a.p1 == b.p1);
    }
}

TEST_CASE("purely rotational p1 falls with temperature toward 1/3") {
    const auto levels = purely_rotational_levels();
    double previous = 2.0;
    for (double t = 0.01; t < 1e4; t *= 1.3) {
        const double p1 = ctls_populations(levels, {t, 300.0}).p1;
        CHECK(p1 <= previous);
        previous = p1;
    }
    const auto hot = ctls_populations(levels, {1e7, 300.0});
    CHECK(hot.p1 == Approx(1.0 / 3).epsilon(1e-6));
    CHECK(hot.p3 == Approx(1.0 / 3).epsilon(1e-6));
}

TEST_CASE("rotational partition function") {
    CHECK(rotational_partition(kPd, 0.001) == Approx(1.0).epsilon(1e-12));
    CHECK(rotational_partition(kPd, 0.1) == Approx(1.1599680947221143).epsilon(1e-8));
    CHECK(rotational_partition(kPd, 1.0) == Approx(18.961644009169905).epsilon(1e-8));

    const double z10 = rotational_partition(kPd, 10.0);
    CHECK(z10 == Approx(576.008634192099).epsilon(1e-8));
    // classical rigid-rotor estimate sqrt(pi (kT/h)^3 / (ABC))
    const double kt = 10.0 / kKelvinPerGhz;
    const double classical = std::sqrt(M_PI * kt * kt * kt / (kPd.A() * kPd.B() * kPd.C()));
    CHECK(classical == Approx(573.4649858211208).epsilon(1e-12));
    CHECK(std::abs(z10 / classical - 1.0) < 0.2);

    double previous = 0.0;
    for (double t : {0.01, 0.1, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0}) {
        const double z = rotational_partition(kPd, t);
        CHECK(z > previous);
        previous = z;
    }

    CHECK_THROWS_AS(rotational_partition(kPd, 0.0), DomainError);
    CHECK_THROWS_AS(rotational_partition(kPd, 10.0, 0.0), DomainError);
    CHECK_THROWS_AS(rotational_partition(kPd, 10.0, 1.0), DomainError);
    CHECK_THROWS_AS(rotational_partition(kPd, 1e5), NumericalError);
}

TEST_CASE("partition truncation is self-consistent") {
    for (double t : {0.5, 10.0, 100.0, 300.0}) {
        for (double tol : {1e-4, 1e-6, 1e-7}) {
            const double z = rotational_partition(kPd, t, tol);
            const double tighter = rotational_partition(kPd, t, tol / 10);
            CHECK(std::abs(z - tighter) < tol * tighter);
        }
    }
}

TEST_CASE("partition over a precomputed spectrum") {
    const RotorSpectrum full(kPd, kPartitionJCap);
    CHECK(rotational_partition(full, 10.0) == rotational_partition(kPd, 10.0));
    const RotorSpectrum small(kPd, 10);
    CHECK_THROWS_AS(rotational_partition(small, 300.0), NumericalError);
}

TEST_CASE("vibrational partition") {
    const std::vector<VibrationalMode> modes{oh_stretch_mode()};
    CHECK(vibrational_partition(modes, 300.0) == Approx(1.0000000969129343).epsilon(1e-15));
    CHECK(vibrational_partition(modes, 0.0) == 1.0);
    CHECK(vibrational_partition({}, 300.0) == 1.0);
    const std::vector<VibrationalMode> bad{{"x", -1.0, 3}};
    CHECK_THROWS_AS(vibrational_partition(bad, 300.0), DomainError);
}

TEST_CASE("global proportions") {
    const std::vector<VibrationalMode> modes{oh_stretch_mode()};
    const auto levels = rovibrational_levels();

    const double p1 = global_proportion(levels[0], kPd, modes, {10.0, 300.0});
    CHECK(p1 == Approx(0.0017360849190909437).epsilon(1e-8));

    CHECK(global_proportion(levels[0], kPd, modes, {0.01, 300.0}) > 0.9999);
    CHECK(global_proportion(levels[0], kPd, modes, {0.0, 0.0}) == 1.0);

    for (double t : {0.001, 0.1, 1.0, 10.0, 100.0, 300.0}) {
        CHECK(global_proportion(levels[1], kPd, modes, {t, 300.0}) < 1e-7);
        CHECK(global_proportion(levels[2], kPd, modes, {t, 300.0}) < 1e-7);
    }
    CHECK(global_proportion(levels[2], kPd, modes, {10.0, 300.0}) ==
          Approx(1.5871142096792612e-10).epsilon(1e-7));
}

TEST_CASE("global proportions over an enumerated manifold sum toward 1") {
    const std::vector<VibrationalMode> modes{oh_stretch_mode()};
    const RotorSpectrum spectrum(kPd, 40);
    for (double t : {0.5, 2.0, 10.0}) {
        const Temperatures temps{t, 300.0};
        double total = 0.0;
        double previous_partial = 0.0;
        for (int J = 0; J <= 40; ++J) {
            for (const auto& rot : spectrum.block(J)) {
                const RoVibLevel l{0, 0.0, rot, 0};
                total += rot.degeneracy * global_proportion(l, kPd, modes, temps);
            }
            CHECK(total >= previous_partial);
            CHECK(total <= 1.0 + 1e-12);
            previous_partial = total;
        }
        // Only the vibrational ground manifold is enumerated.
        CHECK(total == Approx(1.0 / vibrational_partition(modes, 300.0)).epsilon(1e-7));
    }
}

TEST_CASE("yield") {
    CHECK(yield_eta(1.0) == 0.5);
    CHECK(yield_eta(0.0) == 0.0);
    CHECK(yield_eta(0.001) == 0.0005);
    CHECK_THROWS_AS(yield_eta(-0.1), DomainError);
    CHECK_THROWS_AS(yield_eta(1.5), DomainError);
}

TEST_CASE("occupation triple validation") {
    const OccupationTriple ok{0.2, 0.3, 0.5};
    const OccupationTriple over{0.2, 0.3, 0.6};
    const OccupationTriple negative{-0.1, 0.6, 0.5};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS(over.validate(), DomainError);
    CHECK_THROWS_AS(negative.validate(), DomainError);
}
