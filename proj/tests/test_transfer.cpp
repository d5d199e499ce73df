#include <random>

#include "ctls/error.hpp"
#include "ctls/transfer.hpp"
#include "doctest.h"

using namespace ctls;
using doctest::Approx;

namespace {

const CtlsConfig kRovib = CtlsConfig::propanediol(CtlsMode::ro_vibrational);
const CtlsConfig kRot = CtlsConfig::propanediol(CtlsMode::purely_rotational);

OccupationTriple random_triple(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    return {a / s, b / s, c / s};
}

double diag_diff(const DensityMatrix3& rho, const OccupationTriple& p) {
    Matrix3c expected = Matrix3c::Zero();
    expected(0, 0) = p.p1;
    expected(1, 1) = p.p2;
    expected(2, 2) = p.p3;
    return max_norm_diff(rho.matrix(), expected);
}

std::array<RoVibLevel, 3> scaled(std::array<RoVibLevel, 3> levels, double factor, double shift_ghz) {
    for (auto& l : levels) {
        l.vib_energy_thz *= factor;
        l.rot.energy_ghz = l.rot.energy_ghz * factor + shift_ghz;
    }
    return levels;
}

}  // namespace

TEST_CASE("thermal initial state") {
    const auto rho = thermal_initial_state({0.5, 0.3, 0.2});
    CHECK(diag_diff(rho, {0.5, 0.3, 0.2}) == 0.0);
    CHECK(rho.matrix().trace().real() == Approx(1.0));
    CHECK_THROWS_AS(thermal_initial_state({0.5, 0.6, 0.2}), DomainError);
}

TEST_CASE("final states permute the occupations") {
    for (auto method : {PropagationMethod::analytic, PropagationMethod::numeric}) {
        const double tol = method == PropagationMethod::analytic ? 1e-14 : 1e-8;
        auto [l, r] = final_states({1.0, 0.0, 0.0}, method);
        CHECK(diag_diff(l, {1.0, 0.0, 0.0}) < tol);
        CHECK(diag_diff(r, {0.0, 1.0, 0.0}) < tol);

        const double third = 1.0 / 3.0;
        std::tie(l, r) = final_states({third, third, third}, method);
        CHECK(diag_diff(l, {third, third, third}) < tol);
        CHECK(diag_diff(r, {third, third, third}) < tol);
        CHECK(enantiomeric_excess(l, r) < 1e-12);

        std::tie(l, r) = final_states({0.346, 0.328, 0.326}, method);
        CHECK(diag_diff(l, {0.346, 0.326, 0.328}) < tol);
        CHECK(diag_diff(r, {0.328, 0.346, 0.326}) < tol);
    }
}

TEST_CASE("analytic and numeric final states agree") {
    std::mt19937_64 rng(17);
    NumericProtocol numeric{PulseSchedule::ideal(PulseShape::gaussian), 4000};
    for (int trial = 0; trial < 100; ++trial) {
        const OccupationTriple p = random_triple(rng);
        const NumericProtocol fast{PulseSchedule::ideal(), 16};
        const auto [al, ar] = final_states(p, PropagationMethod::analytic);
        const auto [nl, nr] = final_states(p, PropagationMethod::numeric, fast);
        CHECK(max_norm_diff(al.matrix(), nl.matrix()) < 1e-8);
        CHECK(max_norm_diff(ar.matrix(), nr.matrix()) < 1e-8);
        CHECK(diag_diff(al, {p.p1, p.p3, p.p2}) < 1e-14);
        CHECK(diag_diff(ar, {p.p2, p.p1, p.p3}) < 1e-14);
        CHECK(enantiomeric_excess(al, ar) == Approx(enantiomeric_excess(p)).epsilon(1e-12));
    }
    for (int trial = 0; trial < 5; ++trial) {
        const OccupationTriple p = random_triple(rng);
        const auto [al, ar] = final_states(p, PropagationMethod::analytic);
        const auto [nl, nr] = final_states(p, PropagationMethod::numeric, numeric);
        CHECK(max_norm_diff(al.matrix(), nl.matrix()) < 1e-8);
        CHECK(max_norm_diff(ar.matrix(), nr.matrix()) < 1e-8);
    }
}

TEST_CASE("enantiomeric excess from populations") {
    CHECK(enantiomeric_excess(OccupationTriple{0.4, 0.2, 0.4}) == 0.0);
    CHECK(enantiomeric_excess(OccupationTriple{0.7, 0.3, 0.0}) == 1.0);
    CHECK(enantiomeric_excess(OccupationTriple{0.2, 0.3, 0.5}) == Approx(3.0 / 7.0));
    CHECK_THROWS_AS(enantiomeric_excess(OccupationTriple{0.0, 1.0, 0.0}), DomainError);
    const auto empty = thermal_initial_state({1.0, 0.0, 0.0});
    const auto also_empty = thermal_initial_state({0.0, 0.0, 1.0});
    CHECK_THROWS_AS(enantiomeric_excess(empty, also_empty), DomainError);
}

TEST_CASE("excess of the propanediol loops") {
    const Temperatures t10{10.0, 300.0};
    const auto rot = run_transfer(kRot, t10);
    CHECK(rot.epsilon == Approx(0.029170639714099413).epsilon(1e-10));
    CHECK(rot.epsilon >= 0.015);
    CHECK(rot.epsilon <= 0.030);
    CHECK(enantiomeric_excess(kRot.resolve(), t10) == Approx(rot.epsilon).epsilon(1e-12));
    CHECK(rot.initial.p2 > 0.3);
    CHECK(rot.initial.p3 > 0.3);

    const auto rovib = run_transfer(kRovib, t10);
    CHECK(rovib.epsilon > 0.9999);
    CHECK(rovib.initial.p1 == Approx(1.0));

    const auto numeric = run_transfer(kRot, t10, PropagationMethod::numeric);
    CHECK(numeric.epsilon == Approx(rot.epsilon).epsilon(1e-8));
    CHECK(numeric.final_L.p2 == Approx(rot.initial.p3).epsilon(1e-8));
    CHECK(numeric.final_R.p2 == Approx(rot.initial.p1).epsilon(1e-8));

    // Deep cold limit: the ratio form saturates instead of overflowing.
    CHECK(run_transfer(kRot, {1e-3, 300.0}).epsilon > 0.999);
    CHECK(enantiomeric_excess(kRot.resolve(), {1e-4, 300.0}) == 1.0);
    CHECK(enantiomeric_excess(kRot.resolve(), {0.0, 300.0}) == 1.0);
}

TEST_CASE("excess invariances") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> t(0.05, 300.0), f(0.1, 10.0), shift(-50.0, 50.0);
    for (const auto* cfg : {&kRot, &kRovib}) {
        const auto levels = cfg->resolve();
        for (int trial = 0; trial < 50; ++trial) {
            const Temperatures temps{t(rng), t(rng)};
            const double eps = enantiomeric_excess(levels, temps);
            const double k = f(rng);
            const Temperatures scaled_temps{temps.t_rot_k * k, temps.t_vib_k * k};
            CHECK(enantiomeric_excess(scaled(levels, k, 0.0), scaled_temps) ==
                  Approx(eps).epsilon(1e-10));
            if (cfg == &kRot) {
                // A common shift of the rotational energies cancels.
                CHECK(enantiomeric_excess(scaled(levels, 1.0, shift(rng)), temps) ==
                      Approx(eps).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("sweep grids") {
    const SweepGrid def{};
    const auto v = def.values();
    REQUIRE(v.size() == 200);
    CHECK(v.front() == Approx(1e-3));
    CHECK(v.back() == Approx(300.0));
    for (std::size_t i = 1; i < v.size(); ++i) {
        CHECK(v[i] / v[i - 1] == Approx(v[1] / v[0]).epsilon(1e-9));
    }
    const auto lin = SweepGrid{0.0, 10.0, 11, false}.values();
    CHECK(lin[3] == Approx(3.0));
    CHECK(SweepGrid{5.0, 5.0, 1, true}.values() == std::vector<double>{5.0});

    const SweepGrid zero_points{1.0, 2.0, 0, true};
    const SweepGrid reversed{3.0, 2.0, 10, true};
    const SweepGrid log_zero{0.0, 2.0, 10, true};
    CHECK_THROWS_AS(zero_points.validate(), ConfigError);
    CHECK_THROWS_AS(reversed.validate(), ConfigError);
    CHECK_THROWS_AS(log_zero.validate(), ConfigError);
}

TEST_CASE("excess sweeps") {
    const auto grid = SweepGrid{}.values();
    const auto rot = excess_sweep(kRot, grid);
    const auto rovib = excess_sweep(kRovib, grid);
    REQUIRE(rot.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(rot[i].t_rot_k == grid[i]);
        CHECK(rovib[i].epsilon > 0.9999);
        CHECK(rovib[i].epsilon >= rot[i].epsilon);
        // Strict once epsilon has left the double-precision plateau at 1.
        if (i > 0 && grid[i - 1] >= 0.01) {
            CHECK(rot[i].epsilon <= rot[i - 1].epsilon);
            if (rot[i - 1].epsilon < 1.0) CHECK(rot[i].epsilon < rot[i - 1].epsilon);
        }
    }
    CHECK(rot.front().epsilon > 0.999);
    CHECK(rot.back().epsilon < 0.01);
}

TEST_CASE("population sweeps") {
    const std::vector<double> temps{0.01, 10.0, 300.0, 1e5};
    const auto rot = population_sweep(kRot, temps);
    const auto rovib = population_sweep(kRovib, temps);
    for (const auto& pt : rovib) CHECK(pt.p.p1 == Approx(1.0).epsilon(1e-6));
    CHECK(rot[0].p.p1 > 0.99);
    CHECK(rot[1].p.p2 > 0.3);
    CHECK(rot[1].p.p3 > 0.3);
    CHECK(rot[1].p.p1 + rot[1].p.p2 + rot[1].p.p3 == Approx(1.0).epsilon(1e-14));
    for (double p : rot[2].p.as_array()) CHECK(std::abs(p - 0.334) < 0.002);
    for (double p : rot[3].p.as_array()) CHECK(p == Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("yield sweeps") {
    const std::vector<double> temps{0.01, 1.0, 10.0, 100.0, 300.0};
    const auto y = yield_sweep(kRovib, temps);
    REQUIRE(y.size() == temps.size());
    CHECK(y[0].P1 > 0.99);
    CHECK(y[0].eta > 0.49);
    CHECK(y[2].P1 == Approx(0.0017360849190909437).epsilon(1e-9));
    CHECK(y[2].P1 >= 5e-4);
    CHECK(y[2].P1 <= 3e-3);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(y[i].eta == y[i].P1 / 2);
        CHECK(y[i].P2 + y[i].P3 < 1e-7);
        CHECK(y[i].P2 >= 0.0);
        CHECK(y[i].P3 >= 0.0);
        if (i > 0) CHECK(y[i].P1 < y[i - 1].P1);
    }
}

TEST_CASE("Ka Kc labeling") {
    CtlsConfig cfg = kRot;
    cfg.labeling = Labeling::ka_kc;
    cfg.levels = {LevelLabel{0, 0, 0, 0}, LevelLabel{0, 1, 0, 1}, LevelLabel{0, 1, 1, 0}};
    CHECK_NOTHROW(cfg.validate());
    const auto levels = cfg.resolve();
    const auto c = propanediol_constants();
    CHECK(levels[1].rot.energy_ghz == Approx(c.B() + c.C()).epsilon(1e-12));
    CHECK(levels[2].rot.energy_ghz == Approx(c.A() + c.B()).epsilon(1e-12));

    const Temperatures t10{10.0, 300.0};
    const auto r = run_transfer(cfg, t10);
    CHECK(r.initial.p1 == Approx(0.3432943694731018).epsilon(1e-12));
    CHECK(r.initial.p2 == Approx(0.33287181692538775).epsilon(1e-12));
    CHECK(r.initial.p3 == Approx(0.32383381360151053).epsilon(1e-12));
    CHECK(r.epsilon == Approx(run_transfer(kRot, t10).epsilon).epsilon(1e-12));

    CtlsConfig bad = cfg;
    bad.levels[1] = LevelLabel{0, 2, 0, 0};  // Ka + Kc must be J or J + 1
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("tau labeling") {
    const auto levels = kRot.resolve();
    const auto c = propanediol_constants();
    CHECK(levels[0].rot.energy_ghz == 0.0);
    CHECK(levels[1].rot.energy_ghz == Approx(c.A() + c.C()).epsilon(1e-12));
    CHECK(levels[2].rot.energy_ghz == Approx(c.A() + c.B()).epsilon(1e-12));
    const auto rv = kRovib.resolve();
    CHECK(rv[1].vib_quantum == 1);
    CHECK(rv[1].total_energy_ghz() == Approx(100950.0 + c.A() + c.C()));
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(kRot.validate());
    CHECK_NOTHROW(kRovib.validate());
    CHECK(kRot.with_mode(CtlsMode::ro_vibrational) == kRovib);

    CtlsConfig c = kRovib;
    c.levels[1].vib = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = kRot;
    c.levels[2].vib = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = kRot;
    c.levels[1].tau = 2;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = kRot;
    c.levels[2] = c.levels[1];
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = kRovib;
    c.molecule.modes.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.mode = CtlsMode::purely_rotational;
    c.levels = kRot.levels;
    CHECK_NOTHROW(c.validate());

    CHECK(parse_ctls_mode("purely_rotational") == CtlsMode::purely_rotational);
    CHECK_THROWS_AS(parse_ctls_mode("rovib"), ConfigError);
    CHECK(parse_labeling("ka_kc") == Labeling::ka_kc);
    CHECK_THROWS_AS(parse_labeling("KaKc"), ConfigError);
}
