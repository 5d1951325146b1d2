#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "goalg/errors.hpp"
#include "goalg/propagator.hpp"
#include "test_util.hpp"

using namespace goalg;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelRep damping_closed(double t) {
    ChannelRep e = ChannelRep::identity(1);
    e.M *= std::exp(-t / 2);
    e.D = 0.25 * (1 - std::exp(-t)) * Mat::Identity(2, 2);
    return e;
}

ChannelRep rotation_closed(double th) {
    ChannelRep e = ChannelRep::identity(1);
    e.M << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return e;
}

}  // namespace

TEST_CASE("evolve_const examples") {
    const ChannelRep e = evolve_const(GoElement::unit(1, {Kind::AdX, 0, -1}), 1.0);
    CHECK(tu::max_abs(e.M - Mat::Identity(2, 2)) <= 1e-14);
    CHECK(tu::max_abs(e.D) <= 1e-14);
    CHECK(std::abs(e.v(0)) <= 1e-14);
    CHECK(std::abs(e.v(1) - 1.0) <= 1e-14);

    CHECK(max_abs_diff(evolve_const(GoElement(2), 3.7), ChannelRep::identity(2)) == 0.0);

    for (double t : {0.1, 1.0, 5.0}) CHECK(max_abs_diff(evolve_const(elements::damping(), t), damping_closed(t)) <= 1e-13);

    CHECK(max_abs_diff(evolve_const(elements::rotation(), 0.8), rotation_closed(0.8)) <= 1e-14);
}

TEST_CASE("negative time needs the unsafe flag") {
    CHECK_THROWS_AS(evolve_const(elements::damping(), -1.0), ValidationError);
    EvolveOptions o;
    o.unsafe_inverse = true;
    const ChannelRep inv = evolve_const(elements::damping(), -1.0, o);
    const ChannelRep fwd = evolve_const(elements::damping(), 1.0);
    CHECK(tu::max_abs(inv.M * fwd.M - Mat::Identity(2, 2)) <= 1e-13);
    CHECK_THROWS_AS(evolve_const(elements::damping(), std::numeric_limits<double>::infinity()), ValidationError);
}

TEST_CASE("compose and partial transpose") {
    CounterRng rng(41);
    const ChannelRep e = evolve_const(tu::random_cp(rng, 2), 0.7);
    CHECK(max_abs_diff(compose(ChannelRep::identity(2), e), e) == 0.0);
    CHECK(max_abs_diff(compose(e, ChannelRep::identity(2)), e) <= 1e-15);
    CHECK(max_abs_diff(compose(rotation_closed(0.4), rotation_closed(0.3)), rotation_closed(0.7)) <= 1e-15);

    const ChannelRep pt = partial_transpose_channel(1, 0);
    Mat d(2, 2);
    d << 1, 0, 0, -1;
    CHECK(pt.M == d);
    CHECK(pt.M.determinant() == -1.0);
    CHECK(max_abs_diff(compose(pt, pt), ChannelRep::identity(1)) == 0.0);

    const ChannelRep pt2 = partial_transpose_channel(2, 0);
    Mat d2 = Mat::Identity(4, 4);
    d2(2, 2) = -1;
    CHECK(pt2.M == d2);
    CHECK_THROWS_AS(partial_transpose_channel(2, 2), ValidationError);
    CHECK_THROWS_AS(compose(ChannelRep::identity(1), ChannelRep::identity(2)), ValidationError);
}

TEST_CASE("associativity") {
    CounterRng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const ChannelRep a = evolve_const(tu::random_cp(rng, 2), 0.3);
        const ChannelRep b = evolve_const(tu::random_cp(rng, 2), 0.5);
        const ChannelRep c = evolve_const(tu::random_cp(rng, 2), 0.2);
        CHECK(max_abs_diff(compose(a, compose(b, c)), compose(compose(a, b), c)) <= 1e-12);
    }
}

TEST_CASE("schedule examples") {
    const std::vector<Segment> ids = {{1.0, GoElement(1)}, {2.0, GoElement(1)}};
    CHECK(max_abs_diff(evolve_schedule(ids).channel, ChannelRep::identity(1)) == 0.0);
    CHECK(max_abs_diff(evolve_schedule(std::vector<Segment>{}).channel, ChannelRep::identity(1)) == 0.0);

    const std::vector<Segment> rot = {{kPi / 2, elements::rotation()}, {kPi / 2, elements::rotation()}};
    CHECK(max_abs_diff(evolve_schedule(rot).channel, evolve_const(elements::rotation(), kPi)) <= 1e-10);

    const double l2 = std::log(2.0);
    const std::vector<Segment> dd = {{l2, elements::damping()}, {l2, elements::damping()}};
    CHECK(max_abs_diff(evolve_schedule(dd).channel, damping_closed(2 * l2)) <= 1e-12);
}

TEST_CASE("RK4 agrees with the closed form on 100 random constant generators") {
    CounterRng rng(43);
    double worst = 0.0, worst_est = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 2;
        const GoElement g = tu::random_element(rng, n, 0.5);
        SampledGenerator sg{n, [g](double) { return g; }, 1.0, 1e-3};
        const ScheduleResult r = evolve_schedule(sg);
        worst = std::max(worst, max_abs_diff(r.channel, evolve_const(g, 1.0)));
        worst_est = std::max(worst_est, r.error_estimate);
    }
    CHECK(worst <= 1e-7);
    CHECK(worst_est <= 1e-7);
}

TEST_CASE("time-dependent damping rate") {
    // rate(t) = 1 + sin(t): integral over [0, T] is T + 1 - cos T.
    const double T = 2.0;
    SampledGenerator sg{1, [](double t) { return elements::damping(1, 0, 1.0 + std::sin(t)); }, T, 1e-3};
    const ScheduleResult r = evolve_schedule(sg);
    CHECK(max_abs_diff(r.channel, damping_closed(T + 1 - std::cos(T))) <= 1e-10);
    CHECK(r.error_estimate <= 1e-10);

    SampledGenerator bad{1, [](double t) { return elements::damping(1, 0, t > 0.5 ? std::nan("") : 1.0); }, 1.0, 1e-2};
    CHECK_THROWS_AS(evolve_schedule(bad), NumericalError);
}

TEST_CASE("det M sign, D symmetry and semigroup") {
    CounterRng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 2;
        const GoElement g = tu::random_element(rng, n, 0.7);
        const ChannelRep pt = partial_transpose_channel(n, 0);
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            const ChannelRep e = evolve_const(g, t);
            CHECK(e.M.determinant() > 0);
            CHECK(compose(pt, e).M.determinant() < 0);
            CHECK(tu::max_abs(e.D - e.D.transpose()) <= 1e-10);
        }
        const double s = rng.uniform(0.0, 1.0), t = rng.uniform(0.0, 1.0);
        const ChannelRep lhs = evolve_const(g, s + t);
        const ChannelRep rhs = compose(evolve_const(g, t), evolve_const(g, s));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * std::max(1.0, tu::max_abs(lhs.M)));

        SampledGenerator sg{n, [g](double) { return g; }, 1.0, 1e-2};
        const ChannelRep ode = rk4(sg, 100);
        CHECK(tu::max_abs(ode.D - ode.D.transpose()) <= 1e-10);
    }
}
