#include "covsim/reachability.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace covsim;
using namespace covsim::testing;

namespace {

RelativeState make_z(Scalar px, Scalar py, Scalar vx, Scalar vy) {
    return {Vec2(px, py), Vec2(vx, vy)};
}

RelativeState random_state() {
    return make_z(uniform(-50, 50), uniform(-50, 50), uniform(-10, 10),
                  uniform(-10, 10));
}

}  // namespace

TEST_CASE("time to reach: worked cases") {
    // head-on closure from 10 m at 1 m/s with a 2 m disc: smaller root of
    // psi^2 - 20 psi + 96 = 0
    CHECK(time_to_reach(make_z(10, 0, -1, 0), 2.0) ==
          doctest::Approx(8.0).epsilon(1e-14));
    // inside the disc
    CHECK(time_to_reach(make_z(1, 0, 3, -7), 2.0) == 0.0);
    CHECK(time_to_reach(make_z(0, 0, 0, 0), 2.0) == 0.0);
    // separating motion: both roots negative
    CHECK(std::isinf(time_to_reach(make_z(10, 0, 1, 0), 2.0)));
    // perpendicular motion misses the disc: Delta = -96 < 0
    CHECK(std::isinf(time_to_reach(make_z(0, 10, 1, 0), 2.0)));
    // zero relative velocity outside the disc
    CHECK(std::isinf(time_to_reach(make_z(10, 0, 0, 0), 2.0)));
}

TEST_CASE("ttr gradients: closed forms at the head-on state") {
    const RelativeState z = make_z(10, 0, -1, 0);
    const Scalar psi = time_to_reach(z, 2.0);
    REQUIRE(psi == doctest::Approx(8.0));
    const auto g = ttr_gradients(z, 2.0, psi);
    REQUIRE(g.has_value());
    // D = |v|^2 psi + p.v = 8 - 10 = -2; dpsi/dp_x = -(v_x psi + p_x)/D =
    // -(-8+10)/(-2) = +1, confirmed by the finite differences below and by
    // the PDE residual being zero
    CHECK(g->d_p.x() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g->d_p.y() == doctest::Approx(0.0));
    CHECK(g->d_v.x() == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(g->d_v.y() == doctest::Approx(0.0));

    // finite-difference cross-check of all four partials
    const Scalar h = 1e-6;
    const auto psi_at = [&](const RelativeState& zz) {
        return time_to_reach(zz, 2.0);
    };
    for (int axis = 0; axis < 2; ++axis) {
        RelativeState hi = z, lo = z;
        hi.p[axis] += h;
        lo.p[axis] -= h;
        CHECK((psi_at(hi) - psi_at(lo)) / (2 * h) ==
              doctest::Approx(g->d_p[axis]).epsilon(1e-6));
        hi = z;
        lo = z;
        hi.v[axis] += h;
        lo.v[axis] -= h;
        CHECK((psi_at(hi) - psi_at(lo)) / (2 * h) ==
              doctest::Approx(g->d_v[axis]).epsilon(1e-6));
    }
}

TEST_CASE("coordinate swap permutes the partials") {
    const RelativeState z = make_z(7, -3, -2, 0.5);
    const RelativeState swapped = make_z(-3, 7, 0.5, -2);
    const Scalar psi = time_to_reach(z, 2.0);
    REQUIRE(std::isfinite(psi));
    REQUIRE(psi > 0);
    CHECK(time_to_reach(swapped, 2.0) == doctest::Approx(psi).epsilon(1e-14));
    const auto g = ttr_gradients(z, 2.0, psi);
    const auto gs = ttr_gradients(swapped, 2.0, psi);
    REQUIRE(g.has_value());
    REQUIRE(gs.has_value());
    CHECK(g->d_p.x() == doctest::Approx(gs->d_p.y()).epsilon(1e-14));
    CHECK(g->d_p.y() == doctest::Approx(gs->d_p.x()).epsilon(1e-14));
    CHECK(g->d_v.x() == doctest::Approx(gs->d_v.y()).epsilon(1e-14));
    CHECK(g->d_v.y() == doctest::Approx(gs->d_v.x()).epsilon(1e-14));
}

TEST_CASE("gradients match finite differences on random capturable states") {
    const Scalar c_r = 2.0;
    const Scalar h = 1e-6;
    int checked = 0;
    while (checked < 1000) {
        const RelativeState z = random_state();
        const Scalar psi = time_to_reach(z, c_r);
        if (!(psi > 1e-3) || std::isinf(psi)) continue;
        const Scalar pv = z.p.dot(z.v);
        const Scalar delta =
            pv * pv - z.v.squaredNorm() * (z.p.squaredNorm() - c_r * c_r);
        if (delta < 1e-4) continue;
        const auto g = ttr_gradients(z, c_r, psi);
        REQUIRE(g.has_value());
        const auto psi_at = [&](const RelativeState& zz) {
            return time_to_reach(zz, c_r);
        };
        // a valid central difference needs the whole stencil capturable
        bool stencil_ok = true;
        Scalar fd_p[2], fd_v[2];
        for (int axis = 0; axis < 2; ++axis) {
            RelativeState hi = z, lo = z;
            hi.p[axis] += h;
            lo.p[axis] -= h;
            const Scalar pa = psi_at(hi), pb = psi_at(lo);
            hi = z;
            lo = z;
            hi.v[axis] += h;
            lo.v[axis] -= h;
            const Scalar va = psi_at(hi), vb = psi_at(lo);
            if (std::isinf(pa) || std::isinf(pb) || std::isinf(va) ||
                std::isinf(vb)) {
                stencil_ok = false;
                break;
            }
            fd_p[axis] = (pa - pb) / (2 * h);
            fd_v[axis] = (va - vb) / (2 * h);
        }
        if (!stencil_ok) continue;
        for (int axis = 0; axis < 2; ++axis) {
            CHECK(std::abs(fd_p[axis] - g->d_p[axis]) <=
                  1e-5 * std::max<Scalar>(1.0, std::abs(fd_p[axis])));
            CHECK(std::abs(fd_v[axis] - g->d_v[axis]) <=
                  1e-5 * std::max<Scalar>(1.0, std::abs(fd_v[axis])));
        }
        ++checked;
    }
}

TEST_CASE("avoidance control: direction and magnitude") {
    SafetyParams params{2.0, 3.0, 5.0};
    const auto u = avoid_control(make_z(10, 0, -1, 0), params);
    REQUIRE(u.has_value());
    CHECK(u->x() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(u->y() == doctest::Approx(0.0));

    // mirrored geometry flees the other way
    const auto u_mirror = avoid_control(make_z(-10, 0, 1, 0), params);
    REQUIRE(u_mirror.has_value());
    CHECK(u_mirror->x() == doctest::Approx(-3.0).epsilon(1e-14));

    // magnitude is u_max for every valid state
    int checked = 0;
    while (checked < 300) {
        const RelativeState z = random_state();
        const Scalar psi = time_to_reach(z, params.c_r);
        if (!(psi > 0) || std::isinf(psi)) continue;
        const auto uc = avoid_control(z, params);
        if (!uc) continue;
        CHECK(uc->norm() == doctest::Approx(params.u_max).epsilon(1e-12));
        ++checked;
    }
}

TEST_CASE("optimal control and disturbance coincide and cancel") {
    // both players' optimizers share the same direction d_v/|d_v|, so the
    // control and disturbance terms cancel in the Hamiltonian
    SafetyParams params{2.0, 3.0, 5.0};
    int checked = 0;
    while (checked < 200) {
        const RelativeState z = random_state();
        const Scalar psi = time_to_reach(z, params.c_r);
        if (!(psi > 0) || std::isinf(psi)) continue;
        const auto g = ttr_gradients(z, params.c_r, psi);
        if (!g) continue;
        const Vec2 u_star = params.u_max * g->d_v.normalized();
        const Vec2 d_star = params.u_max * g->d_v.normalized();
        CHECK((u_star - d_star).norm() == 0.0);
        // their contributions enter as -d_v . (u - d) = 0
        CHECK(g->d_v.dot(u_star - d_star) == 0.0);
        ++checked;
    }
}

TEST_CASE("analytic solution satisfies the stationary HJ equation") {
    const Scalar c_r = 2.0;
    const auto r = hamiltonian_residual(make_z(10, 0, -1, 0), c_r);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r) < 1e-12);

    int checked = 0;
    while (checked < 10000) {
        const RelativeState z = random_state();
        const Scalar psi = time_to_reach(z, c_r);
        if (!(psi > 0) || std::isinf(psi)) continue;
        const Scalar pv = z.p.dot(z.v);
        const Scalar delta =
            pv * pv - z.v.squaredNorm() * (z.p.squaredNorm() - c_r * c_r);
        if (delta < 1e-6) continue;
        const auto res = hamiltonian_residual(z, c_r);
        REQUIRE(res.has_value());
        CHECK(std::abs(*res) < 1e-9);
        ++checked;
    }
}

TEST_CASE("zero boundary value on the target disc") {
    for (int trial = 0; trial < 1000; ++trial) {
        const Scalar r = uniform(0, 2.0);
        const Scalar phi = uniform(0, 6.28318530717958648);
        const RelativeState z = make_z(r * std::cos(phi), r * std::sin(phi),
                                       uniform(-10, 10), uniform(-10, 10));
        CHECK(time_to_reach(z, 2.0) == 0.0);
    }
}

TEST_CASE("oracle equivalence on random states") {
    const Scalar c_r = 2.0;
    for (int trial = 0; trial < 20000; ++trial) {
        const RelativeState z = random_state();
        const Scalar psi = time_to_reach(z, c_r);
        const Scalar ref = ttr_oracle(z, c_r);
        CHECK(std::isinf(psi) == std::isinf(ref));
        if (!std::isinf(psi)) {
            CHECK(std::abs(psi - ref) < 1e-9);
        }
    }
}

TEST_CASE("psi decreases at unit rate along the optimal-play trajectory") {
    const Scalar c_r = 2.0;
    int checked = 0;
    while (checked < 300) {
        const RelativeState z = random_state();
        const Scalar psi0 = time_to_reach(z, c_r);
        if (!(psi0 > 0.5) || std::isinf(psi0)) continue;
        for (const Scalar frac : {0.1, 0.4, 0.8}) {
            const Scalar t = frac * psi0;
            const RelativeState moved{z.p + t * z.v, z.v};
            CHECK(std::abs(time_to_reach(moved, c_r) - (psi0 - t)) < 1e-8);
        }
        ++checked;
    }
}

TEST_CASE("degenerate tangent geometry is refused, not mis-evaluated") {
    // a ray exactly tangent to the disc: Delta = 0 and D = 0
    const RelativeState z = make_z(10, 2, -1, 0);
    const Scalar psi = time_to_reach(z, 2.0);
    if (std::isfinite(psi) && psi > 0) {
        CHECK_FALSE(ttr_gradients(z, 2.0, psi).has_value());
        CHECK_FALSE(avoid_control(z, {2.0, 3.0, 5.0}).has_value());
    }
}
