#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "crackfd/diagnostics.hpp"
#include "crackfd/solver.hpp"
#include "oracles.hpp"

using namespace crackfd;

namespace {

Grid patch_grid() {
    Grid g;
    g.dl = 0.5;
    g.dt = 0.01;
    g.lmax = 8;
    g.tmax = 200;
    return g;
}

// f = [0, 0, 0, 1, 2, 3, 0, 0, 0]; node 4 sits at l = 2, level 100 at sigma = 1.
Field<double> patch_field() { return {{0, 0, 0, 1, 2, 3, 0, 0, 0}, 100}; }

// Independent single-node calculator, written out from the update formula.
double ftcs_by_hand(double fm, double f, double fp, double l, double s, double al, double be, double dl,
                    double dt) {
    const double keep = f * (1.0 - (3.0 * be * s * s - 2.0 * al / l) * dt);
    const double drift = (l * be * s * s - al) * dt / (2.0 * dl) * (fp - fm);
    return keep - drift;
}

double upwind_by_hand(double fm, double f, double fp, double l, double s, double al, double be,
                      double dl, double dt) {
    const double keep = f * (1.0 - (3.0 * be * s * s - 2.0 * al / l) * dt);
    const double c = l * be * s * s - al;
    const double drift = c > 0 ? c * dt / dl * (f - fm) : c * dt / dl * (fp - f);
    return keep - drift;
}

template <class T>
Field<T> random_field(std::mt19937_64& rng, const Grid& g, std::size_t level, double lo = -1.0,
                      double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Field<T> f;
    f.time_index = level;
    f.values.resize(g.node_count());
    for (auto& v : f.values) v = static_cast<T>(u(rng));
    return f;
}

RunConfig default_config(InitialCondition ic) {
    RunConfig c;
    c.ic = ic;
    return c;
}

}  // namespace

TEST_CASE("single-step oracles on the three-node patch") {
    const Grid g = patch_grid();
    const Params p{1, 1, 1};
    REQUIRE(sigma_at(100, g, p) == 1.0);

    const double hand_ftcs = ftcs_by_hand(1.0, 2.0, 3.0, 2.0, 1.0, 1, 1, 0.5, 0.01);
    const double hand_up = upwind_by_hand(1.0, 2.0, 3.0, 2.0, 1.0, 1, 1, 0.5, 0.01);
    CHECK(hand_ftcs == 1.94);
    CHECK(hand_up == 1.94);

    CHECK(ftcs_step(patch_field(), 100, g, p).values[4] == hand_ftcs);
    CHECK(upwind_step(patch_field(), 100, g, p).values[4] == hand_up);
    CHECK(ftcs_step(patch_field(), 100, g, p).time_index == 101);
}

TEST_CASE("steps of the zero field and of an inactive gate") {
    Grid g;
    const Params p{1, 1, 1};
    const Field<double> zero{std::vector<double>(g.node_count(), 0.0), 700};
    CHECK(ftcs_step(zero, 700, g, p).values == zero.values);
    CHECK(upwind_step(zero, 700, g, p).values == zero.values);

    std::mt19937_64 rng(1);
    const auto f = random_field<double>(rng, g, 0);
    CHECK(ftcs_step(f, 0, g, p).values == f.values);
    CHECK(upwind_step(f, 0, g, p).values == f.values);
}

TEST_CASE("steppers reject bad input") {
    Grid g;
    const Params p{1, 1, 1};
    Field<double> f{std::vector<double>(g.node_count(), 1.0), 5};
    CHECK_THROWS_AS(ftcs_step(f, 6, g, p), ContractViolation);
    f.values[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ftcs_step(f, 5, g, p), BlownUpInput);
    f.values[3] = std::nan("");
    CHECK_THROWS_AS(upwind_step(f, 5, g, p), BlownUpInput);
    f.values.pop_back();
    CHECK_THROWS_AS(ftcs_step(f, 5, g, p), ContractViolation);
}

TEST_CASE("gate consistency and boundary freeze") {
    Grid g;
    const Params p{1, 1, 1};
    std::mt19937_64 rng(2);
    for (SchemeKind scheme : {SchemeKind::Ftcs, SchemeKind::Upwind}) {
        for (std::size_t level : {0u, 200u, 400u, 700u, 999u}) {
            const auto f = random_field<double>(rng, g, level);
            const auto out = step(scheme, f, level, g, p);
            const double s = sigma_at(level, g, p);
            for (std::size_t i = 0; i <= g.lmax; ++i) {
                if (i == 0 || i == g.lmax || !growth_active(node_length(i, g), s, p)) {
                    CHECK(oracle::same_bits(out.values[i], f.values[i]));
                }
            }
        }
    }
}

TEST_CASE("steps are linear in the field") {
    Grid g;
    const Params p{1, 1, 1};
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (SchemeKind scheme : {SchemeKind::Ftcs, SchemeKind::Upwind}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t level = 400 + 30 * trial;
            const auto f = random_field<double>(rng, g, level);
            const auto h = random_field<double>(rng, g, level);
            const double a = coef(rng), b = coef(rng);
            Field<double> mix{f.values, level};
            for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = a * f.values[i] + b * h.values[i];

            const auto sf = step(scheme, f, level, g, p);
            const auto sh = step(scheme, h, level, g, p);
            const auto sm = step(scheme, mix, level, g, p);
            for (std::size_t i = 0; i < mix.values.size(); ++i) {
                const double want = a * sf.values[i] + b * sh.values[i];
                // ulps of the operand scale, since the combination may cancel
                const double scale = std::abs(a * sf.values[i]) + std::abs(b * sh.values[i]) +
                                     std::abs(a * f.values[i]) + std::abs(b * h.values[i]);
                CHECK(std::abs(sm.values[i] - want) <= 4 * eps * scale);
            }
        }
    }
}

TEST_CASE("a single-node change only reaches its neighbours") {
    Grid g;
    const Params p{1, 1, 1};
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> node(1, g.lmax - 1);
    for (SchemeKind scheme : {SchemeKind::Ftcs, SchemeKind::Upwind}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto f = random_field<double>(rng, g, 900);
            auto poked = f;
            const std::size_t j = node(rng);
            poked.values[j] += 0.25;
            const auto a = step(scheme, f, 900, g, p);
            const auto b = step(scheme, poked, 900, g, p);
            for (std::size_t i = 0; i <= g.lmax; ++i) {
                if (i + 1 < j || i > j + 1) CHECK(oracle::same_bits(a.values[i], b.values[i]));
            }
        }
    }
}

TEST_CASE("upwind transport keeps non-negative fields bounded") {
    Grid g;
    g.dt = 0.001;
    const Params p{0.0, 1.0, 1.0};
    StepOptions transport;
    transport.source = false;
    std::mt19937_64 rng(8);
    // CFL: dt * max(l beta s^2) / dl <= 1 requires s^2 <= dl / (dt * lmax * dl) = 5
    for (std::size_t level : {500u, 1000u, 2000u, 2236u}) {
        const double s = sigma_at(level, g, p);
        REQUIRE(g.dt * g.domain_length() * p.beta * s * s / g.dl <= 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_field<double>(rng, g, level, 0.0, 1.0);
            const double fmax = *std::max_element(f.values.begin(), f.values.end());
            const auto out = upwind_step(f, level, g, p, transport);
            for (double v : out.values) {
                CHECK(v >= 0.0);
                CHECK(v <= fmax);
            }
        }
    }
}

TEST_CASE("term toggles and the dt/dl compatibility coefficient") {
    const Grid g = patch_grid();
    const Params p{1, 1, 1};
    StepOptions none;
    none.advection = false;
    none.source = false;
    CHECK(ftcs_step(patch_field(), 100, g, p, none).values == patch_field().values);

    StepOptions adv_only;
    adv_only.source = false;
    StepOptions compat = adv_only;
    compat.half_coefficient_compat = true;
    const double base = patch_field().values[4];
    const double centered = ftcs_step(patch_field(), 100, g, p, adv_only).values[4];
    const double doubled = ftcs_step(patch_field(), 100, g, p, compat).values[4];
    CHECK(base - doubled == doctest::Approx(2 * (base - centered)).epsilon(1e-14));
}

TEST_CASE("blowup_check") {
    std::vector<double> v(5, 0.5);
    CHECK(blowup_check(std::span<const double>(v), 1e12) == BlowupState::Ok);
    v[2] = std::numeric_limits<double>::infinity();
    CHECK(blowup_check(std::span<const double>(v), 1e12) == BlowupState::BlownUp);
    v[2] = 1e13;
    CHECK(blowup_check(std::span<const double>(v), 1e12) == BlowupState::BlownUp);
    v[2] = -1e13;
    CHECK(blowup_check(std::span<const double>(v), 1e12) == BlowupState::BlownUp);
    v[2] = std::nan("");
    CHECK(blowup_check(std::span<const double>(v), 1e12) == BlowupState::BlownUp);
}

TEST_CASE("run with a single level stores only the initial field") {
    RunConfig c = default_config(Exponential{1, 1});
    c.grid.tmax = 1;
    const auto t = run_as<double>(c);
    REQUIRE(t.snapshots.size() == 1);
    CHECK(t.snapshots[0] == initial_field(c.ic, c.grid));
    CHECK(t.status.completed());
}

TEST_CASE("run with a gate that never opens leaves the field alone") {
    RunConfig c = default_config(StepWise{1, 2, 8});
    c.params.alpha = 1e6;
    const auto t = run_as<double>(c);
    CHECK(t.status.completed());
    const auto f0 = initial_field(c.ic, c.grid);
    for (const auto& s : t.snapshots) CHECK(s.values == f0.values);
}

TEST_CASE("run snapshots: stride, last level, ordering") {
    RunConfig c = default_config(Exponential{1, 1});
    c.grid.tmax = 95;
    c.stride = 10;
    const auto t = run_as<double>(c);
    std::vector<std::size_t> levels;
    for (const auto& s : t.snapshots) levels.push_back(s.time_index);
    CHECK(levels == std::vector<std::size_t>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 94});
}

TEST_CASE("run rejects invalid configurations") {
    RunConfig c = default_config(Exponential{1, 1});
    c.stride = 0;
    CHECK_THROWS_AS(run_as<double>(c), ContractViolation);
    c = default_config(StepWise{1, 3, 2});
    CHECK_THROWS_AS(run_as<double>(c), ContractViolation);
}

TEST_CASE("step IC with defaults blows up where the reference loop does") {
    RunConfig c = default_config(StepWise{1, 2, 8});
    const auto traj = run_as<double>(c);
    const oracle::ReferenceLoop<double> ref(1, 1, 1, c.grid.dl, c.grid.dt, c.grid.lmax,
                                                    c.grid.tmax,
                                                    initial_field(c.ic, c.grid).values);
    const std::size_t expected = ref.first_blowup(c.blowup_threshold);
    REQUIRE(expected < c.grid.tmax);
    CHECK(expected == 1734);
    REQUIRE_FALSE(traj.status.completed());
    CHECK(*traj.status.blown_up_at == expected);
    CHECK(traj.snapshots.back().time_index == expected);
    for (const auto& s : traj.snapshots) CHECK(s.time_index <= expected);
}

TEST_CASE("runs are deterministic at both precisions") {
    RunConfig c = default_config(StepWise{1, 2, 8});
    c.grid.tmax = 1500;
    const auto a = run_as<double>(c), b = run_as<double>(c);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) CHECK(a.snapshots[k] == b.snapshots[k]);
    const auto x = run_as<float>(c), y = run_as<float>(c);
    for (std::size_t k = 0; k < x.snapshots.size(); ++k) CHECK(x.snapshots[k] == y.snapshots[k]);
}

TEST_CASE("boundary nodes stay frozen through a whole run") {
    for (SchemeKind scheme : {SchemeKind::Ftcs, SchemeKind::Upwind}) {
        RunConfig c = default_config(Exponential{1, 1});
        c.scheme = scheme;
        const auto t = run_as<double>(c);
        const auto& first = t.snapshots.front().values;
        for (const auto& s : t.snapshots) {
            CHECK(oracle::same_bits(s.values.front(), first.front()));
            CHECK(oracle::same_bits(s.values.back(), first.back()));
        }
    }
}

TEST_CASE("FTCS and upwind agree shortly after growth starts") {
    RunConfig c = default_config(Exponential{1, 1});
    c.stride = 1;
    // growth first opens once beta v^2 l t^2 > alpha at the largest interior node
    const double lmax_interior = node_length(c.grid.lmax - 1, c.grid);
    const auto first_open = static_cast<std::size_t>(std::ceil(std::sqrt(1.0 / lmax_interior) / c.grid.dt));
    c.grid.tmax = first_open + 52;
    const auto ftcs = run_as<double>(c);
    c.scheme = SchemeKind::Upwind;
    const auto up = run_as<double>(c);
    REQUIRE(ftcs.snapshots.size() == up.snapshots.size());
    for (std::size_t n = first_open; n < ftcs.snapshots.size(); ++n) {
        const auto d = relative_l2_divergence(widen(up.snapshots[n]), widen(ftcs.snapshots[n]));
        CHECK(d < 0.10);
    }
}
