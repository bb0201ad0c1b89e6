#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fluxwalk/walker.hpp"
#include "test_helpers.hpp"

using namespace fluxwalk;

namespace {

// Long-double oracle: solve |p + tau d| = r and apply the fold formulas
// independently of the library path.
struct FoldOracle {
    long double tau;
    long double fx, fy;
    long double qx, qy;  // folded position
    long double dx, dy;  // reflected direction
};

FoldOracle fold_oracle_2d(long double px, long double py, long double ddx, long double ddy,
                          long double dt, long double r) {
    const long double pd = px * ddx + py * ddy;
    const long double tau = -pd + std::sqrt(pd * pd + r * r - (px * px + py * py));
    const long double fx = px + tau * ddx;
    const long double fy = py + tau * ddy;
    const long double nx = fx / r, ny = fy / r;
    const long double qx0 = px + dt * ddx, qy0 = py + dt * ddy;
    const long double qn = (qx0 - fx) * nx + (qy0 - fy) * ny;
    const long double dn = ddx * nx + ddy * ny;
    return {tau, fx, fy, qx0 - 2 * qn * nx, qy0 - 2 * qn * ny, ddx - 2 * dn * nx,
            ddy - 2 * dn * ny};
}

}  // namespace

TEST_CASE("collision_point solves the boundary contact") {
    SUBCASE("ray from the center") {
        const Collision c = collision_point({0.0, 0.0}, {1.0, 0.0}, 1.0);
        CHECK(c.tau == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c.point == VecN{1.0, 0.0});
    }
    SUBCASE("collinear interior start") {
        const Collision c = collision_point({0.5, 0.0}, {1.0, 0.0}, 1.0);
        CHECK(c.tau == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(c.point[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("perpendicular chord") {
        // |p + tau d| = 1 with p = (0.6, 0): 0.36 + tau^2 = 1.
        const Collision c = collision_point({0.6, 0.0}, {0.0, 1.0}, 1.0);
        CHECK(c.tau == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(c.point[0] == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(c.point[1] == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(c.point.norm() == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("contract breach reports an internal error") {
        CHECK_THROWS_AS(collision_point({2.0, 0.0}, {0.0, 1.0}, 1.0), std::logic_error);
    }
}

TEST_CASE("reflect_step handles interior moves and bounces") {
    SUBCASE("head-on bounce folds symmetrically") {
        const StepResult res =
            reflect_step({{0.995, 0.0, 0.0}, {1.0, 0.0, 0.0}}, 0.01, 1.0);
        CHECK(res.hit);
        CHECK(res.state.position[0] == doctest::Approx(0.995).epsilon(1e-12));
        CHECK(res.state.position[1] == 0.0);
        CHECK(res.state.direction[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(res.boundary_tau == doctest::Approx(0.005).epsilon(1e-9));
    }
    SUBCASE("interior step keeps the direction") {
        const StepResult res = reflect_step({{0.0, 0.0}, {0.0, 1.0}}, 0.01, 1.0);
        CHECK_FALSE(res.hit);
        CHECK(res.state.position == VecN{0.0, 0.01});
        CHECK(res.state.direction == VecN{0.0, 1.0});
    }
    SUBCASE("oblique bounce matches the long-double fold oracle") {
        // (0.7985 + tau)^2 = 0.64 => tau = 0.0015, contact (0.6, 0.8).
        const FoldOracle o = fold_oracle_2d(0.6L, 0.7985L, 0.0L, 1.0L, 0.01L, 1.0L);
        CHECK(static_cast<double>(o.tau) == doctest::Approx(0.0015).epsilon(1e-9));
        const StepResult res = reflect_step({{0.6, 0.7985}, {0.0, 1.0}}, 0.01, 1.0);
        CHECK(res.hit);
        CHECK(res.boundary_tau == doctest::Approx(static_cast<double>(o.tau)).epsilon(1e-10));
        CHECK(res.boundary_point[0] == doctest::Approx(static_cast<double>(o.fx)).epsilon(1e-12));
        CHECK(res.boundary_point[1] == doctest::Approx(static_cast<double>(o.fy)).epsilon(1e-12));
        CHECK(res.state.position[0] == doctest::Approx(static_cast<double>(o.qx)).epsilon(1e-12));
        CHECK(res.state.position[1] == doctest::Approx(static_cast<double>(o.qy)).epsilon(1e-12));
        CHECK(res.state.direction[0] == doctest::Approx(static_cast<double>(o.dx)).epsilon(1e-12));
        CHECK(res.state.direction[1] == doctest::Approx(static_cast<double>(o.dy)).epsilon(1e-12));
    }
    SUBCASE("dt out of range is refused") {
        CHECK_THROWS_AS(reflect_step({{0.0, 0.0}, {1.0, 0.0}}, 0.1, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(reflect_step({{0.0, 0.0}, {1.0, 0.0}}, 0.0, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("reflection is an involution and conserves path length") {
    RngStream rng(314, 0);
    for (int i = 0; i < 1000; ++i) {
        const VecN d = sample_unit_direction(Dimension(3), rng);
        const VecN n = sample_unit_direction(Dimension(3), rng);
        VecN once = d;
        once.add_scaled(n, -2.0 * d.dot(n));
        VecN twice = once;
        twice.add_scaled(n, -2.0 * once.dot(n));
        for (int k = 0; k < 3; ++k) CHECK(twice[k] == doctest::Approx(d[k]).epsilon(1e-12));
    }

    // |q' - f| + |f - p| = dt through each bounce.
    int bounces = 0;
    WalkerState s{{0.97, 0.0, 0.0}, {0.6, 0.8, 0.0}};
    const double dt = 0.05;
    for (int i = 0; i < 5000; ++i) {
        const StepResult res = reflect_step(s, dt, 1.0);
        if (res.hit) {
            ++bounces;
            const double leg_in = (res.boundary_point - s.position).norm();
            const double leg_out = (res.state.position - res.boundary_point).norm();
            CHECK(leg_in + leg_out == doctest::Approx(dt).epsilon(1e-9));
            CHECK(res.boundary_point.norm() == doctest::Approx(1.0).epsilon(1e-9));
        }
        s = res.state;
    }
    CHECK(bounces > 50);
    // No rescatter anywhere above: the direction norm must survive.
    CHECK(s.direction.norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("walkers stay contained over a long fuzz run") {
    RngStream rng(2718, 0);
    const double r = 1.0;
    WalkerState s{sample_point_in_ball(Dimension(4), r, rng),
                  sample_unit_direction(Dimension(4), rng)};
    for (int i = 0; i < 100000; ++i) {
        if (i % 3 == 0) s.direction = sample_unit_direction(Dimension(4), rng);
        s = reflect_step(s, 0.02, r).state;
        CHECK(s.position.norm() <= r);
    }
}

TEST_CASE("run_trial validates its configuration") {
    WalkConfig cfg;
    cfg.dt = 0.2;
    CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
    cfg = WalkConfig{};
    cfg.dim = 0;
    CHECK_THROWS_AS(run_trial(cfg), std::domain_error);
    cfg = WalkConfig{};
    cfg.mode = SampleMode::rejection;
    cfg.dim = 13;
    CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
    cfg = WalkConfig{};
    cfg.walkers = 2'000'000'000;
    cfg.steps = 2'000'000'000;
    CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
}

TEST_CASE("empty runs flag the estimate as undefined") {
    WalkConfig cfg;
    cfg.steps = 0;
    cfg.walkers = 100;
    const WalkStats stats = run_trial(cfg);
    CHECK(stats.boundary_hits == 0);
    CHECK_FALSE(stats.k_defined());
    CHECK(std::isnan(stats.k_hat));
    CHECK_THROWS_AS(estimate_mean_path(stats, BallGeometry{Dimension(3), 1.0}),
                    std::runtime_error);

    cfg = WalkConfig{};
    cfg.walkers = 0;
    cfg.steps = 10;
    CHECK_FALSE(run_trial(cfg).k_defined());
}

TEST_CASE("estimate_mean_path inverts the flux identity") {
    WalkStats stats;
    stats.boundary_hits = 1;
    stats.k_hat = 0.25;
    CHECK(estimate_mean_path(stats, BallGeometry{Dimension(3), 1.0}) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    stats.k_hat = 1.0 / std::numbers::pi;
    CHECK(estimate_mean_path(stats, BallGeometry{Dimension(2), 1.0}) ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
}

TEST_CASE("k_hat lands within five standard errors of K_n") {
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        WalkConfig cfg;
        cfg.dim = n;
        cfg.walkers = 4000;
        cfg.steps = 500;
        cfg.seed = 7700 + static_cast<std::uint64_t>(n);
        cfg.workers = 2;
        const WalkStats stats = run_trial(cfg);
        REQUIRE(stats.k_defined());
        const double k = theoretical_k(Dimension(n));
        CHECK(std::abs(stats.k_hat - k) < 5.0 * stats.k_stderr);
    }
}

TEST_CASE("flux and residence sides of the identity agree") {
    WalkConfig cfg;
    cfg.dim = 3;
    cfg.walkers = 8000;
    cfg.steps = 1000;
    cfg.seed = 99;
    cfg.workers = 2;
    const WalkStats stats = run_trial(cfg);
    REQUIRE(stats.k_defined());
    const BallGeometry geom{Dimension(3), cfg.radius};

    // Per-crossing mean path times k A / V is 1 (the identity realized by
    // the run).
    CHECK(stats.k_hat * geom.surface_area * stats.mean_path_empirical / geom.volume ==
          doctest::Approx(1.0).epsilon(0.03));
    // The ball never loses its walkers, so the totals coincide exactly.
    CHECK(stats.total_in_region_path ==
          doctest::Approx(stats.total_time * static_cast<double>(cfg.walkers)).epsilon(1e-12));
    CHECK(stats.mean_path_empirical == doctest::Approx(stats.mean_path_hat).epsilon(1e-12));

    // Completed-flight samples are window-truncated and length-biased low;
    // their mean must sit strictly below the per-crossing mean.
    REQUIRE_FALSE(stats.in_region_path_samples.empty());
    CHECK(stats.path_sample_mean > 0.0);
    CHECK(stats.path_sample_mean < stats.mean_path_empirical);
}

TEST_CASE("trial results are identical for any worker count") {
    WalkConfig cfg;
    cfg.dim = 2;
    cfg.walkers = 512;
    cfg.steps = 300;
    cfg.seed = 4242;
    cfg.workers = 1;
    const WalkStats one = run_trial(cfg);
    for (const int workers : {2, 3, 8}) {
        CAPTURE(workers);
        cfg.workers = workers;
        const WalkStats many = run_trial(cfg);
        CHECK(many.boundary_hits == one.boundary_hits);
        CHECK(many.k_hat == one.k_hat);
        CHECK(many.k_stderr == one.k_stderr);
        CHECK(many.in_region_path_samples == one.in_region_path_samples);
    }
}

TEST_CASE("rescatter off keeps ballistic flights equal to chords") {
    // Without rescattering the walk is a billiard: after the first contact,
    // every flight of one walker repeats the same chord length.
    WalkConfig cfg;
    cfg.dim = 2;
    cfg.walkers = 1;
    cfg.steps = 4000;
    cfg.rescatter = false;
    cfg.seed = 31337;
    const WalkStats stats = run_trial(cfg);
    REQUIRE(stats.in_region_path_samples.size() > 3);
    const double first = stats.in_region_path_samples.front();
    for (const double len : stats.in_region_path_samples)
        CHECK(len == doctest::Approx(first).epsilon(1e-6));
}
