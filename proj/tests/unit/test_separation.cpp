#include <doctest.h>

#include <cmath>

#include "gyro/separation.hpp"
#include "support/corpus.hpp"

using namespace gyro;
using namespace gyro::testing;

namespace {

double radius(const Region& r) { return std::get<DiskBall>(r).radius(); }

FiniteGyrogroup group(const CayleyTable& t) { return std::get<FiniteGyrogroup>(check_axioms(t)); }

}  // namespace

TEST_CASE("dyadic rationals") {
    const DyadicRational half(2, 2);
    CHECK(half.numerator() == 1);
    CHECK(half.level() == 1);
    CHECK(half.value() == 0.5);
    CHECK(half.numerator_at(3) == 4);
    CHECK(half == DyadicRational(1, 1));
    CHECK(DyadicRational(3, 3) < half);
    CHECK(DyadicRational(1, 0).value() == 1.0);
    CHECK(DyadicRational(3, 2).to_string() == "3/4");
    CHECK_THROWS_AS(DyadicRational(0, 2), std::domain_error);
    CHECK_THROWS_AS(DyadicRational(5, 2), std::domain_error);
    CHECK_THROWS_AS(half.numerator_at(0), std::domain_error);
}

TEST_CASE("disk schedule by rapidity halving") {
    const auto s = build_schedule(0.8, 12);
    CHECK(s.depth() == 12);
    CHECK(radius(s.u[0]) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ball_add_radius(radius(s.u[0]), radius(s.u[0])) == doctest::Approx(0.8).epsilon(1e-14));
    for (std::size_t i = 0; i < 12; ++i) {
        const double r = radius(s.u[i + 1]);
        CHECK(std::abs(ball_add_radius(r, r) - radius(s.u[i])) < 1e-15);
    }
    CHECK_THROWS_AS(build_schedule(1.0, 3), std::domain_error);
    CHECK_THROWS_AS(build_schedule(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(build_schedule(0.5, 0), std::domain_error);
}

TEST_CASE("V-family recursion on the disk") {
    const auto s = build_schedule(0.8, 10);
    const auto fam = build_vsets(s, 10);
    CHECK(radius(fam.at(DyadicRational(1, 0))) == radius(s.u[0]));
    for (unsigned n = 0; n < 10; ++n) CHECK(radius(fam.at(DyadicRational(1, n + 1))) == radius(s.u[n + 1]));
    CHECK(radius(fam.at(DyadicRational(3, 2))) == doctest::Approx(std::tanh(0.75 * std::atanh(0.5))).epsilon(1e-14));
    // V(1/2) + V(1/2) = V(1) exactly.
    const double half = radius(fam.at(DyadicRational(1, 1)));
    CHECK(ball_add_radius(half, half) == doctest::Approx(0.5).epsilon(1e-15));
    for (std::uint64_t k = 1; k <= 1024; ++k) {
        const DyadicRational r(k, 10);
        CHECK(radius(rederive_vset(s, r)) == radius(fam.at(r)));
        CHECK(radius(fam.at(r)) == doctest::Approx(std::tanh(r.value() * std::atanh(0.5))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(build_vsets(s, 11), std::invalid_argument);
    CHECK_THROWS_AS(fam.at(DyadicRational(1, 11)), std::out_of_range);
}

TEST_CASE("facts hold on the disk") {
    for (double R : {0.5, 0.8, 0.95}) {
        const auto rep = verify_vset_facts(build_vsets(build_schedule(R, 10), 10));
        CHECK(rep.passed());
        CHECK(rep.checked[0] == 2036);
        CHECK(rep.checked[1] == 1023);
        CHECK(rep.checked[2] == 1023);
    }
}

TEST_CASE("facts detect a broken family") {
    const auto s = build_schedule(0.8, 3);
    auto regions = build_vsets(s, 3).finest();
    regions[4] = DiskBall(0.01);  // V(5/8) shrunk
    const DyadicVFamily broken(3, regions, std::nullopt);
    const auto rep = verify_vset_facts(broken);
    CHECK_FALSE(rep.passed());
    CHECK_FALSE(rep.fact_passed(1));
    CHECK_FALSE(rep.fact_passed(2));
    CHECK_FALSE(rep.fact_passed(3));
    REQUIRE_FALSE(rep.failures.empty());
}

TEST_CASE("evaluation against the oracle") {
    const auto fam = build_vsets(build_schedule(0.8, 10), 10);
    const double step = std::ldexp(1.0, -10);
    CHECK(urysohn_oracle(0.8, DiskPoint(0.25, 0.0)) == doctest::Approx(0.46497).epsilon(1e-5));
    CHECK(urysohn_oracle(0.8, DiskPoint(0.25, 0.0)) == doctest::Approx(2.0 * std::atanh(0.25) / std::atanh(0.8)));
    CHECK(urysohn_oracle(0.8, DiskPoint{}) == 0.0);
    CHECK(urysohn_oracle(0.8, DiskPoint(0.5, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(urysohn_oracle(0.8, DiskPoint(0.7, 0.0)) == 1.0);
    CHECK_THROWS_AS(urysohn_oracle(1.0, DiskPoint{}), std::domain_error);

    CHECK(std::abs(urysohn_eval(fam, DiskPoint(0.25, 0.0)) - 0.46497) < step);
    CHECK(urysohn_eval(fam, DiskPoint(0.0, 0.6)) == 1.0);
    CHECK(urysohn_eval(fam, DiskPoint{}) == step);

    for (double R : {0.5, 0.8, 0.95}) {
        for (unsigned d = 1; d <= 12; ++d) {
            const auto f = build_vsets(build_schedule(R, d), d);
            double prev = -1.0;
            for (const auto& row : evaluate_grid(f, R, radial_grid())) {
                CAPTURE(R);
                CAPTURE(d);
                CAPTURE(row.radius);
                CHECK(row.abs_error <= std::ldexp(1.0, -static_cast<int>(d)));
                CHECK(row.eval >= prev);
                CHECK(row.eval >= row.oracle);
                prev = row.eval;
            }
        }
    }
}

TEST_CASE("evaluation bands") {
    const double R = 0.8;
    const auto fam = build_vsets(build_schedule(R, 10), 10);
    // f = 1 outside the closed ball of radius r0 = 0.5.
    for (double t : {0.5000001, 0.6, 0.9, 0.999}) CHECK(urysohn_eval(fam, DiskPoint(t, 0.0)) == 1.0);
    // Inner band: strictly between 0 and 1.
    for (double t : {0.1, 0.3, 0.45}) {
        const double v = urysohn_eval(fam, DiskPoint(0.0, t));
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    // Near e the value drops to the resolution.
    CHECK(urysohn_eval(fam, DiskPoint(1e-6, 0.0)) <= 2.0 * std::ldexp(1.0, -10));
}

TEST_CASE("continuity certificate") {
    for (double R : {0.5, 0.8, 0.95}) CHECK(continuity_certificate(R, radial_grid()).holds);
    const auto grid = radial_grid();
    CHECK(grid.size() == 20);
    CHECK(grid.back() == doctest::Approx(0.95));
}

TEST_CASE("CSV export") {
    const auto fam = build_vsets(build_schedule(0.8, 4), 4);
    const auto csv = grid_csv(evaluate_grid(fam, 0.8, {0.0, 0.25}));
    CHECK(csv.rfind("radius,eval,oracle,abs_error\n0,0.0625,0,0.0625\n", 0) == 0);
}

TEST_CASE("disk separation demos") {
    const auto d = separation_demo(DiskPoint{}, DiskPoint(0.9, 0.0));
    CHECK(d.kind == "hausdorff");
    REQUIRE(d.radius);
    CHECK(*d.radius == 0.8);
    CHECK(d.f_x == 0.0);
    CHECK(d.f_x_at_depth == std::ldexp(1.0, -10));
    CHECK(d.f_target == 1.0);
    CHECK(d.separated);

    const auto near = separation_demo(DiskPoint{}, DiskPoint(0.0, 0.3));
    CHECK(*near.radius == doctest::Approx(0.15));
    CHECK(near.separated);

    const auto ext = separation_demo(DiskPoint{}, ClosedExterior{0.85});
    CHECK(ext.kind == "regular");
    CHECK(*ext.radius == 0.8);
    CHECK(ext.f_target == 1.0);
    CHECK(ext.probes.size() == 16);

    const auto moved = separation_demo(DiskPoint(0.3, 0.2), DiskPoint(-0.4, 0.1));
    CHECK(moved.separated);
    const auto moved_ext = separation_demo(DiskPoint(0.0, 0.5), ClosedExterior{0.7});
    CHECK(moved_ext.separated);

    CHECK_THROWS_AS(separation_demo(DiskPoint(0.2, 0.0), DiskPoint(0.2, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(separation_demo(DiskPoint(0.9, 0.0), ClosedExterior{0.85}), std::invalid_argument);
}

TEST_CASE("finite schedule and family") {
    const auto g = group(cyclic(4));
    const auto triv = FiniteTopology::indiscrete(4);
    const auto s = build_schedule(g, triv, g.carrier(), 5);
    for (const auto& u : s.u) CHECK(std::get<Subset>(u) == g.carrier());
    const auto fam = build_vsets(s, 5);
    for (const auto& v : fam.finest()) CHECK(std::get<Subset>(v) == g.carrier());
    CHECK(verify_vset_facts(fam).passed());
    CHECK(urysohn_eval(fam, Element{3}) == std::ldexp(1.0, -5));

    CHECK_THROWS_AS(build_schedule(g, triv, Subset{0, 2}, 3), std::invalid_argument);

    // Topology from the subgroup {0,2}: every U_i is {0,2}.
    const FiniteTopology coarse(4, {Subset{}, Subset{0, 2}, Subset{1, 3}, g.carrier()});
    const auto s2 = build_schedule(g, coarse, Subset{0, 2}, 4);
    for (const auto& u : s2.u) CHECK(std::get<Subset>(u) == Subset{0, 2});
    const auto fam2 = build_vsets(s2, 4);
    CHECK(verify_vset_facts(fam2).passed());
    CHECK(urysohn_eval(fam2, Element{1}) == 1.0);
    CHECK(urysohn_eval(fam2, Element{2}) == std::ldexp(1.0, -4));

    const auto g8 = group(gyro8());
    const auto disc = FiniteTopology::discrete(8);
    const auto s3 = build_schedule(g8, disc, Subset{0, 1, 2, 3}, 6);
    CHECK(verify_vset_facts(build_vsets(s3, 6)).passed());
}

TEST_CASE("finite schedule failure names the level") {
    // Only G and {0,1} are open around 0, and both sums leave {0,1}.
    const auto g = group(cyclic(4));
    const FiniteTopology t(4, {Subset{}, Subset{0, 1}, g.carrier()});
    try {
        build_schedule(g, t, Subset{0, 1}, 3);
        FAIL("expected a schedule error");
    } catch (const ScheduleError& e) {
        CHECK(e.level() == 0);
    }
}

TEST_CASE("finite separation demos") {
    const auto g = group(cyclic(4));
    const auto disc = FiniteTopology::discrete(4);
    const auto d = separation_demo(g, disc, 1, FiniteTarget{Element{3}});
    CHECK(d.separated);
    CHECK(d.f_x == 0.0);
    REQUIRE(d.neighborhood);
    CHECK(*d.neighborhood == Subset{0});

    const FiniteTopology coarse(4, {Subset{}, Subset{0, 2}, Subset{1, 3}, g.carrier()});
    const auto r = separation_demo(g, coarse, 0, FiniteTarget{Subset{1, 3}});
    CHECK(r.kind == "regular");
    CHECK(r.separated);
    CHECK_THROWS_AS(separation_demo(g, coarse, 0, FiniteTarget{Subset{1}}), std::invalid_argument);
    CHECK_THROWS_AS(separation_demo(g, coarse, 1, FiniteTarget{Subset{1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(separation_demo(g, disc, 2, FiniteTarget{Element{2}}), std::invalid_argument);

    // Not Hausdorff: points of a coset cannot be separated.
    CHECK_THROWS_AS(separation_demo(g, coarse, 0, FiniteTarget{Element{1}}), SeparationRefused);

    const auto triv = FiniteTopology::indiscrete(4);
    try {
        separation_demo(g, triv, 0, FiniteTarget{Element{1}});
        FAIL("expected refusal");
    } catch (const SeparationRefused& e) {
        CHECK(std::string(e.what()).find("hausdorff") != std::string::npos);
        CHECK(e.witness().size() == 2);
    }
}
