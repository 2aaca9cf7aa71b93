#include <doctest.h>

#include "curvball/errors.hpp"
#include "support.hpp"

using namespace curvball;
using namespace testing_support;

TEST_CASE("space construction checks dimension") {
  CHECK_THROWS_AS(Space::euclidean(1), InputError);
  CHECK_THROWS_AS(Space::spherical(11), InputError);
  CHECK(Space::spherical(3).ambient_dim() == 4);
  CHECK(Space::euclidean(3).ambient_dim() == 3);
  CHECK(Space::from_kappa(-1, 2).curvature == Curvature::Hyperbolic);
  CHECK(Space::spherical(2).max_dual_radius() == doctest::Approx(kPi / 2));
}

TEST_CASE("distance examples") {
  const auto e = Space::euclidean(2);
  CHECK(distance(e, Point{vec({0, 0})}, Point{vec({3, 4})}) == doctest::Approx(5.0).epsilon(1e-15));
  const auto s = Space::spherical(2);
  CHECK(distance(s, Point{vec({1, 0, 0})}, Point{vec({0, 1, 0})}) ==
        doctest::Approx(kPi / 2).epsilon(1e-15));
  const auto h = Space::hyperbolic(2);
  CHECK(distance(h, Point{vec({0, 0, 1})}, Point{vec({0, std::sinh(1.0), std::cosh(1.0)})}) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distance rejects points off the model") {
  CHECK_THROWS_AS(distance(Space::spherical(2), Point{vec({1, 1, 0})}, Point{vec({1, 0, 0})}),
                  InputError);
  CHECK_THROWS_AS(distance(Space::hyperbolic(2), Point{vec({0, 0, 2})}, Point{vec({0, 0, 1})}),
                  InputError);
}

TEST_CASE("distance agrees with textbook formulas") {
  RandomStream rng(RngSpec{11, 0});
  for (const auto& s : {Space::euclidean(3), Space::spherical(3), Space::hyperbolic(3)}) {
    for (int i = 0; i < 500; ++i) {
      const Point a = random_point(s, 1.5, rng);
      const Point b = random_point(s, 1.5, rng);
      const double d = distance(s, a, b);
      CHECK(d == doctest::Approx(ref_distance(s, a.coords, b.coords)).epsilon(1e-7));
      CHECK(distance(s, b, a) == doctest::Approx(d).epsilon(1e-14));
    }
  }
}

TEST_CASE("triangle inequality") {
  RandomStream rng(RngSpec{12, 0});
  for (const auto& s : all_planes()) {
    for (int i = 0; i < 500; ++i) {
      const Point a = random_point(s, 1.4, rng);
      const Point b = random_point(s, 1.4, rng);
      const Point c = random_point(s, 1.4, rng);
      CHECK(distance(s, a, c) <= distance(s, a, b) + distance(s, b, c) + 1e-12);
    }
  }
}

TEST_CASE("reflection examples") {
  const auto e = Space::euclidean(2);
  const auto h0 = make_hyperplane(e, vec({1, 0}), 0.0);
  const Point r = reflect(e, h0, Point{vec({2, 3})});
  CHECK(r.coords[0] == doctest::Approx(-2));
  CHECK(r.coords[1] == doctest::Approx(3));
  CHECK(side(e, h0, Point{vec({2, 3})}) == 1);
  CHECK(side(e, h0, Point{vec({0, 7})}) == 0);

  const auto s = Space::spherical(2);
  const auto hs = make_hyperplane(s, vec({1, 0, 0}));
  const Point rs = reflect(s, hs, Point{vec({1, 0, 0})});
  CHECK(rs.coords[0] == doctest::Approx(-1));
  CHECK(side(s, hs, Point{vec({0, 1, 0})}) == 0);
}

TEST_CASE("reflection is an involutive isometry fixing the hyperplane") {
  RandomStream rng(RngSpec{13, 0});
  for (const auto& s : all_planes()) {
    for (int i = 0; i < 200; ++i) {
      const Point a = random_point(s, 1.2, rng);
      const Point b = random_point(s, 1.2, rng);
      const auto h = bisector(s, a, b);
      const Point x = random_point(s, 1.2, rng);
      const Point y = random_point(s, 1.2, rng);
      const Point rx = reflect(s, h, x);
      CHECK(distance(s, reflect(s, h, rx), x) < 1e-10);
      CHECK(distance(s, rx, reflect(s, h, y)) == doctest::Approx(distance(s, x, y)).epsilon(1e-9));
      CHECK(side(s, h, rx) == -side(s, h, x));
      // bisector maps a to b and points on it stay fixed
      CHECK(distance(s, reflect(s, h, a), b) < 1e-10);
      const Point m = geodesic_point(s, a, b, 0.5);
      CHECK(std::abs(side_value(s, h, m)) < 1e-10);
      CHECK(distance(s, reflect(s, h, m), m) < 1e-10);
    }
  }
}

TEST_CASE("hyperbolic bisector example") {
  const auto s = Space::hyperbolic(2);
  const Point a{vec({0, 0, 1})};
  const Point b{vec({0, std::sinh(1.0), std::cosh(1.0)})};
  CHECK(distance(s, reflect(s, bisector(s, a, b), a), b) < 1e-12);
  CHECK_THROWS_AS(bisector(s, a, a), DegenerateError);
}

TEST_CASE("euclidean bisector example") {
  const auto e = Space::euclidean(2);
  const auto h = bisector(e, Point{vec({0, 0})}, Point{vec({2, 0})});
  CHECK(h.normal[0] == doctest::Approx(1));
  CHECK(h.normal[1] == doctest::Approx(0));
  CHECK(h.offset == doctest::Approx(1));
}

TEST_CASE("geodesic interpolation") {
  const auto e = Space::euclidean(2);
  const Point m = geodesic_point(e, Point{vec({0, 0})}, Point{vec({2, 0})}, 0.5);
  CHECK(m.coords[0] == doctest::Approx(1));
  const auto s = Space::spherical(2);
  const Point ms = geodesic_point(s, Point{vec({1, 0, 0})}, Point{vec({0, 1, 0})}, 0.5);
  CHECK(ms.coords[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(ms.coords[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(geodesic_point(s, Point{vec({1, 0, 0})}, Point{vec({-1, 0, 0})}, 0.5),
                  DegenerateError);

  RandomStream rng(RngSpec{14, 0});
  for (const auto& sp : all_planes()) {
    for (int i = 0; i < 200; ++i) {
      const Point x = random_point(sp, 1.3, rng);
      const Point y = random_point(sp, 1.3, rng);
      const double t = rng.uniform();
      const Point p = geodesic_point(sp, x, y, t);
      const double d = distance(sp, x, y);
      CHECK(distance(sp, x, geodesic_point(sp, x, y, 0.0)) < 1e-12);
      CHECK(distance(sp, y, geodesic_point(sp, x, y, 1.0)) < 1e-10);
      CHECK(distance(sp, x, p) == doctest::Approx(t * d).epsilon(1e-8).scale(1));
      CHECK(distance(sp, p, y) == doctest::Approx((1 - t) * d).epsilon(1e-8).scale(1));
    }
  }
}

TEST_CASE("exp and log maps invert each other") {
  RandomStream rng(RngSpec{15, 0});
  for (const auto& s : all_planes()) {
    for (int i = 0; i < 200; ++i) {
      const Point c = random_point(s, 1.0, rng);
      const Point x = random_point(s, 1.0, rng);
      const Vec v = log_map(s, c, x);
      const double len = std::sqrt(std::max(0.0, form(s, v, v)));
      if (len > 1e-12) CHECK(distance(s, exp_map(s, c, v / len, len), x) < 1e-9);
      CHECK(len == doctest::Approx(distance(s, c, x)).epsilon(1e-9));
      const Vec loc = to_local(s, c, x);
      CHECK(loc.size() == s.dim);
      CHECK(loc.norm() == doctest::Approx(distance(s, c, x)).epsilon(1e-9));
      CHECK(distance(s, from_local(s, c, loc), x) < 1e-9);
    }
  }
}

TEST_CASE("transport from origin is an isometry onto the centre") {
  RandomStream rng(RngSpec{16, 0});
  for (const auto& s : all_planes()) {
    for (int i = 0; i < 200; ++i) {
      const Point c = random_point(s, 1.0, rng);
      const Point x = random_point(s, 1.0, rng);
      const Point y = random_point(s, 1.0, rng);
      const Point tx = transport_from_origin(s, c, x);
      CHECK(distance(s, transport_from_origin(s, c, origin(s)), c) < 1e-10);
      CHECK(distance(s, tx, transport_from_origin(s, c, y)) ==
            doctest::Approx(distance(s, x, y)).epsilon(1e-9));
      CHECK(distance(s, transport_to_origin(s, c, tx), x) < 1e-9);
    }
  }
}

TEST_CASE("ball construction and hull") {
  const auto e = Space::euclidean(2);
  CHECK(Ball::make(e, origin(e), -0.5).empty);
  CHECK_THROWS_AS(Ball::make(Space::spherical(2), origin(Space::spherical(2)), 4.0), InputError);
  RandomStream rng(RngSpec{17, 0});
  for (const auto& s : all_planes()) {
    for (int i = 0; i < 200; ++i) {
      const Ball a = Ball::make(s, random_point(s, 0.8, rng), 0.4 * rng.uniform());
      const Ball b = Ball::make(s, random_point(s, 0.8, rng), 0.4 * rng.uniform());
      const Ball h = ball_hull(s, a, b);
      for (int j = 0; j < 20; ++j) {
        const Ball& src = (j % 2) ? a : b;
        const Point p = transport_from_origin(
            s, src.center, polar_point(s, random_direction(s.dim, rng), src.radius));
        CHECK(h.contains(s, p, 1e-9));
      }
    }
  }
}
