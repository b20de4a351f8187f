#include "ronm/geometry.hpp"
#include "ronm/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ronm;

TEST(ConvexBody, BallRadii) {
  const ConvexBody b = ConvexBody::ball(make_vector({0.0, 0.0}), 2.5);
  EXPECT_DOUBLE_EQ(b.r_in(), 2.5);
  EXPECT_DOUBLE_EQ(b.r_out(), 2.5);
  EXPECT_TRUE(b.bounded());
  EXPECT_EQ(b.dim(), 2);
}

TEST(ConvexBody, WholeSpaceHasNoRadii) {
  const ConvexBody w = ConvexBody::whole_space(3);
  EXPECT_FALSE(w.bounded());
  EXPECT_THROW(w.r_in(), UnsupportedError);
  EXPECT_THROW(gauge(w, make_vector({1.0, 0.0, 0.0})), UnsupportedError);
}

TEST(Gauge, Examples) {
  const ConvexBody b = ConvexBody::unit_ball(2);
  EXPECT_DOUBLE_EQ(gauge(b, make_vector({0.3, 0.4})), 0.5);
  EXPECT_DOUBLE_EQ(gauge(b, make_vector({0.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(gauge_plus(b, make_vector({0.0, 0.0})), 1.0);
  EXPECT_DOUBLE_EQ(gauge(b, make_vector({3.0, 4.0})), 5.0);
  EXPECT_DOUBLE_EQ(gauge_plus(b, make_vector({3.0, 4.0})), 5.0);
}

TEST(Gauge, HomogeneousConvexAndMatchesMembership) {
  Rng rng(1);
  const ConvexBody b = ConvexBody::ball(make_vector({0.2, -0.1, 0.0}), 1.5);
  for (int k = 0; k < 100; ++k) {
    const Vector x = 2.0 * rng.normal_vector(3);
    const Vector y = 2.0 * rng.normal_vector(3);
    const double c = rng.uniform(0.1, 5.0);
    EXPECT_NEAR(gauge(b, c * x), c * gauge(b, x), 1e-12 * (1.0 + c * gauge(b, x)));
    const double t = rng.uniform();
    EXPECT_LE(gauge(b, t * x + (1 - t) * y), t * gauge(b, x) + (1 - t) * gauge(b, y) + 1e-12);
    EXPECT_EQ(gauge(b, x) <= 1.0, b.contains(x, 1e-12)) << "k=" << k;
  }
}

TEST(Projection, Examples) {
  const ConvexBody b = ConvexBody::unit_ball(2);
  const Vector p1 = project_ellipsoidal(b, SymMatrix::identity(2), make_vector({2.0, 0.0}));
  EXPECT_NEAR(p1(0), 1.0, 1e-10);
  EXPECT_NEAR(p1(1), 0.0, 1e-10);
  const Vector y = make_vector({0.5, 0.2});
  EXPECT_EQ(project_ellipsoidal(b, SymMatrix::identity(2), y), y);
  const ConvexBody w = ConvexBody::whole_space(2);
  EXPECT_EQ(project_ellipsoidal(w, SymMatrix::identity(2), make_vector({5.0, 5.0})),
            make_vector({5.0, 5.0}));
}

// Oracle: brute-force minimisation over 10^6 angles of the unit circle.
TEST(Projection, MatchesCircleGridSearch) {
  const ConvexBody b = ConvexBody::unit_ball(2);
  Matrix pm(2, 2);
  pm << 4.0, 0.0, 0.0, 1.0;
  const SymMatrix P(pm);
  const Vector y = make_vector({1.5, 1.5});
  const Vector x = project_ellipsoidal(b, P, y);
  EXPECT_NEAR(x.norm(), 1.0, 1e-10);

  double best = 1e300;
  Vector arg(2);
  const long n = 1000000;
  for (long i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
    const Vector z = make_vector({std::cos(a), std::sin(a)});
    const Vector dz = z - y;
    const double v = dz.dot(pm * dz);
    if (v < best) {
      best = v;
      arg = z;
    }
  }
  EXPECT_NEAR(x(0), arg(0), 1e-4);
  EXPECT_NEAR(x(1), arg(1), 1e-4);
}

TEST(Projection, VariationalInequality) {
  Rng rng(9);
  for (int d : {2, 3, 5}) {
    const ConvexBody b = ConvexBody::ball(rng.normal_vector(d) * 0.3, 1.2);
    for (int k = 0; k < 20; ++k) {
      Matrix a(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
      const SymMatrix P(a * a.transpose() + 0.1 * Matrix::Identity(d, d));
      const Vector y = b.center() + 3.0 * rng.normal_vector(d);
      const Vector x = project_ellipsoidal(b, P, y);
      EXPECT_LE(gauge(b, x), 1.0 + 1e-9);
      for (int m = 0; m < 100; ++m) {
        const Vector z = rng.uniform_in_ball(b.center(), b.radius());
        EXPECT_LE((y - x).dot(P.matrix() * (z - x)), 1e-8);
      }
    }
  }
}

TEST(Projection, RejectsNonPd) {
  EXPECT_THROW(project_ellipsoidal(ConvexBody::unit_ball(2), SymMatrix::zero(2),
                                   make_vector({2.0, 0.0})),
               DomainError);
}

TEST(LpHessian, Examples) {
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const SymMatrix h = lp_power_hessian(rng.normal_vector(3), 2.0, 2.0);
    EXPECT_TRUE(h.matrix().isApprox(2.0 * Matrix::Identity(3, 3), 1e-12));
  }
  const SymMatrix h = lp_power_hessian(make_vector({1.0, 0.0}), 2.0, 1.0);
  EXPECT_NEAR(h(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(h(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(h(1, 1), 1.0, 1e-15);
}

// Oracle: central differences (step 1e-5) of the independently coded gradient
// of |x|_p^ell.
TEST(LpHessian, MatchesFiniteDifferences) {
  const double p = 1.5, ell = 1.5, h = 1e-5;
  const Vector x = make_vector({0.7, -0.3});
  auto grad = [&](const Vector& v) {
    const double np = std::pow(std::pow(std::abs(v(0)), p) + std::pow(std::abs(v(1)), p), 1 / p);
    Vector g(2);
    for (int i = 0; i < 2; ++i)
      g(i) = ell * std::pow(np, ell - p) * std::pow(std::abs(v(i)), p - 1) * (v(i) < 0 ? -1 : 1);
    return g;
  };
  Matrix fd(2, 2);
  for (int j = 0; j < 2; ++j) {
    Vector e = Vector::Zero(2);
    e(j) = h;
    fd.col(j) = (grad(x + e) - grad(x - e)) / (2 * h);
  }
  const SymMatrix H = lp_power_hessian(x, p, ell);
  EXPECT_LE((fd - H.matrix()).norm() / H.matrix().norm(), 1e-6);
}

TEST(LpHessian, SymmetricPsdAndAboveFloor) {
  Rng rng(4);
  for (double p : {1.25, 1.5, 2.0})
    for (double ell : {1.25, 1.5, 2.0})
      for (int k = 0; k < 1000; ++k) {
        const int d = 1 + k % 4;
        const Vector x = rng.normal_vector(d);
        const SymMatrix H = lp_power_hessian(x, p, ell);
        ASSERT_TRUE(H.is_psd(1e-12 * H.matrix().norm()));
        ASSERT_GE(H.min_eigenvalue() + 1e-12 * H.matrix().norm(),
                  lp_power_hessian_lower_bound(x, p, ell));
      }
}

TEST(LpHessian, SingularInputs) {
  EXPECT_THROW(lp_power_hessian(Vector::Zero(2), 2.0, 1.5), DomainError);
  EXPECT_THROW(lp_power_hessian(make_vector({1.0, 0.0}), 1.5, 1.5), DomainError);
  EXPECT_THROW(lp_power_hessian(make_vector({1.0, 1.0}), 2.5, 1.5), PreconditionError);
}

TEST(ConeFraction, CentreIsFullyInside) {
  const auto m = cone_fraction_mc(ConvexBody::unit_ball(3), Vector::Zero(3), 1.0, 10000, 1);
  EXPECT_DOUBLE_EQ(m.mean, 1.0);
}

// Oracle: the lens of two unit disks at distance 1 has area 2pi/3 - sqrt(3)/2.
TEST(ConeFraction, LensAreaInTwoDimensions) {
  const auto m = cone_fraction_mc(ConvexBody::unit_ball(2), make_vector({1.0, 0.0}), 1.0,
                                  1000000, 5);
  const double lens = (2.0 * std::numbers::pi / 3.0 - std::sqrt(3.0) / 2.0) / std::numbers::pi;
  EXPECT_NEAR(m.mean, lens, 4.0 * m.std_error);
  EXPECT_GE(m.mean, cone_fraction_bound(2, 1.0, 1.0));
  EXPECT_NEAR(cone_fraction_bound(2, 1.0, 1.0), 1.0 / std::sqrt(4.0 * std::numbers::pi) / std::sqrt(2.0),
              1e-15);
}

TEST(ConeFraction, AboveBoundAcrossPoints) {
  Rng rng(6);
  for (int d : {2, 3, 4}) {
    const ConvexBody b = ConvexBody::unit_ball(d);
    for (int k = 0; k < 50; ++k) {
      const Vector x = rng.uniform_in_ball(b.center(), 1.0);
      const auto m = cone_fraction_mc(b, x, 1.0, 10000, 100 + k);
      EXPECT_GE(m.mean, cone_fraction_bound(d, 1.0, 1.0) - 3.0 * m.std_error);
    }
  }
  const auto m = cone_fraction_mc(ConvexBody::unit_ball(3), make_vector({0.5, 0, 0}), 1.0, 1000000, 8);
  EXPECT_GE(m.mean, cone_fraction_bound(3, 1.0, 1.0) - 3.0 * m.std_error);
}

TEST(ConeFraction, Preconditions) {
  const ConvexBody b = ConvexBody::unit_ball(2);
  EXPECT_THROW(cone_fraction_mc(b, make_vector({2.0, 0.0}), 1.0, 10000, 1), PreconditionError);
  EXPECT_THROW(cone_fraction_mc(b, make_vector({0.0, 0.0}), 1.5, 10000, 1), PreconditionError);
  EXPECT_THROW(cone_fraction_mc(b, make_vector({0.0, 0.0}), 1.0, 100, 1), PreconditionError);
}
