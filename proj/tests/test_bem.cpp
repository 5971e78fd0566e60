#include <gtest/gtest.h>

#include <cmath>

#include "rfscat/bem.hpp"
#include "rfscat/halton.hpp"
#include "rfscat/oracle.hpp"

using namespace rfscat;

namespace {

double neumann_error(int n, double kappa) {
  const auto ctx = HelmholtzContext::with_default_coupling(kappa, {1.0, 0.0});
  const auto b = realize_boundary(Circle{1.0}, n);
  const auto dens = solve_neumann(ctx, b);
  const auto mie = oracle::make_mie(1.0, kappa, {1.0, 0.0});
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    err = std::max(err, std::abs(dens.values(i) - oracle::mie_neumann(mie, b.parameter(i))));
  }
  return err;
}

}  // namespace

TEST(Context, Validation) {
  EXPECT_THROW(HelmholtzContext(0.0, 1.0, {1.0, 0.0}), DomainError);
  EXPECT_THROW(HelmholtzContext(1.0, -1.0, {1.0, 0.0}), DomainError);
  EXPECT_THROW(HelmholtzContext(1.0, 1.0, {1.0, 1.0}), DomainError);
  EXPECT_NO_THROW(HelmholtzContext(-1.0 * -2.0, 3.0, {0.0, 1.0}));
  EXPECT_EQ(HelmholtzContext::with_default_coupling(3.0, {1.0, 0.0}).eta, 3.0);
}

TEST(IncidentTrace, Basics) {
  const auto ctx = HelmholtzContext::with_default_coupling(1.0, {1.0, 0.0});
  const auto b = realize_boundary(Circle{1.0}, 32);
  const auto t = incident_trace(ctx, b);
  EXPECT_EQ(ctx.incident({0.0, 0.0}), Complex(1.0, 0.0));
  for (int i = 0; i < b.n; ++i) EXPECT_NEAR(std::abs(t.dirichlet(i)), 1.0, 1e-15);
  // Node 8 of 32 sits at phi = pi/2 where the normal is orthogonal to d.
  EXPECT_LT(std::abs(t.neumann(8)), 1e-15);
}

TEST(Cfie, MatrixShapeAndFinite) {
  const auto ctx = HelmholtzContext::with_default_coupling(2.0, {1.0, 0.0});
  const auto A = assemble_cfie(ctx, realize_boundary(KiteNominal{}, 64));
  EXPECT_EQ(A.rows(), 64);
  EXPECT_EQ(A.cols(), 64);
  EXPECT_TRUE(A.allFinite());
}

TEST(Cfie, LogWeightsIntegrateTrigonometricPolynomials) {
  // int_0^{2pi} ln(4 sin^2(s/2)) cos(k s) ds = -2 pi / k, k >= 1; zero for k = 0.
  const int n = 32;
  const RealVector w = detail::log_quadrature_weights(n);
  for (int k = 0; k < n / 2; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += w(j) * std::cos(k * kTwoPi * j / n);
    EXPECT_NEAR(s, k == 0 ? 0.0 : -kTwoPi / k, 1e-12) << k;
  }
}

TEST(Cfie, MieNeumannDataOnDisc) {
  EXPECT_LT(neumann_error(64, 2.0), 1e-8);
  EXPECT_LT(neumann_error(128, 2.0), 1e-10);
}

TEST(Cfie, ExponentialConvergence) {
  const double e16 = neumann_error(16, 2.0);
  const double e32 = neumann_error(32, 2.0);
  const double e64 = neumann_error(64, 2.0);
  EXPECT_LT(e32, e16 / 10.0);
  EXPECT_TRUE(e64 < e32 / 10.0 || e64 < 1e-10);
  EXPECT_LT(e64, 1e-10);
}

TEST(Cfie, ResidualAndLinearity) {
  for (double kappa : {1.0, 2.0, 4.0, 8.0}) {
    const auto ctx = HelmholtzContext::with_default_coupling(kappa, {1.0, 0.0});
    const auto b = realize_boundary(
        PerturbedKite{RadialPerturbation::cubic_decay(100), HaltonSampler(100).sample(11)}, 128);
    const CfieSystem sys(ctx, b);
    const ComplexVector rhs = cfie_rhs(ctx, b);
    double res = 1.0;
    const ComplexVector x = sys.solve(rhs, &res);
    EXPECT_LE(res, 1e-10) << kappa;
    const ComplexVector x2 = sys.solve(2.0 * rhs, nullptr);
    EXPECT_LT((x2 - 2.0 * x).cwiseAbs().maxCoeff(), 1e-12 * x.cwiseAbs().maxCoeff());
  }
}

TEST(Cfie, SolveReportsDiagnostics) {
  const auto ctx = HelmholtzContext::with_default_coupling(1.0, {1.0, 0.0});
  const auto dens = solve_neumann(ctx, realize_boundary(KiteNominal{}, 64));
  EXPECT_EQ(dens.values.size(), 64);
  EXPECT_GT(dens.rcond, kMinRcond);
  EXPECT_LE(dens.relative_residual, kMaxRelativeResidual);
  const CfieSystem sys(ctx, dens.boundary);
  EXPECT_THROW(sys.solve(ComplexVector::Zero(10), nullptr), DimensionError);
}

TEST(Cfie, SymmetricBoundaryReflection) {
  // The kite is symmetric in y -> -y; reflecting d and the observation
  // direction together leaves the far field unchanged.
  const auto b = realize_boundary(KiteNominal{}, 128);
  const Point2 d(std::cos(0.4), std::sin(0.4));
  const Point2 dr(d.x(), -d.y());
  const auto s1 = solve_neumann(HelmholtzContext::with_default_coupling(2.0, d), b);
  const auto s2 = solve_neumann(HelmholtzContext::with_default_coupling(2.0, dr), b);
  auto far = [](const NeumannDensity &s, const Point2 &xh) {
    const ComplexVector q = s.weighted();
    Complex u = 0.0;
    const Complex c = std::polar(1.0 / std::sqrt(8.0 * kPi * s.kappa), 0.25 * kPi);
    for (int j = 0; j < s.boundary.n; ++j) u -= c * std::polar(1.0, -s.kappa * xh.dot(s.boundary.nodes.col(j))) * q(j);
    return u;
  };
  for (double t = 0.0; t < kTwoPi; t += 0.5) {
    const Point2 xh(std::cos(t), std::sin(t));
    const Point2 xr(xh.x(), -xh.y());
    EXPECT_LT(std::abs(far(s1, xh) - far(s2, xr)), 1e-10);
  }
}
