#include "doctest.h"

#include <cmath>

#include "support.hpp"

using namespace fibrenorm;
using namespace fibrenorm::testing;

namespace {

double branch_max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  double e = 0.0;
  for (int k = 0; k <= std::min(a.order(), b.order()); ++k)
    e = std::max(e, std::abs(a.coeff(k) - b.coeff(k)));
  return e;
}

}  // namespace

TEST_CASE("phi is an exact involution and a linear isometry") {
  const SliceMap& f = d4().cycle.map;
  const SliceMap pp = phi_involution(phi_involution(f));
  CHECK(pp.central.coeffs() == f.central.coeffs());
  CHECK(pp.outer.coeffs() == f.outer.coeffs());
  const SliceMap p = phi_involution(f);
  CHECK(sup_norm(p.central) == sup_norm(f.central));
  CHECK(sup_norm(p.outer) == sup_norm(f.outer));
  CHECK(sup_norm(p.outer - f.outer) == doctest::Approx(2.0 * sup_norm(f.outer)).epsilon(1e-14));
  CHECK(sup_norm(p.central - f.central) == 0.0);
}

TEST_CASE("spectrum: identity") {
  const SpectrumReport r = spectrum(Eigen::MatrixXd::Identity(5, 5));
  CHECK(r.unstable_count == 0);
  CHECK(r.neutral_count == 5);
  for (cplx l : r.eigenvalues) CHECK(std::abs(l - 1.0) < 1e-12);
}

TEST_CASE("spectrum: diagonal(3, 0.5, 0.1)") {
  Eigen::MatrixXd m = Eigen::Vector3d(3.0, 0.5, 0.1).asDiagonal();
  const SpectrumReport r = spectrum(m, 0.05);
  CHECK(r.unstable_count == 1);
  CHECK(r.neutral_count == 0);
  CHECK(std::abs(r.eigenvalues[0] - 3.0) < 1e-12);
  CHECK(std::abs(r.eigenvalues[2] - 0.1) < 1e-12);
}

TEST_CASE("spectrum: companion of x^2 - x - 1") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 1.0, 1.0, 0.0;
  const SpectrumReport r = spectrum(m);
  CHECK(std::abs(r.eigenvalues[0] - (1.0 + std::sqrt(5.0)) / 2) < 1e-12);
  CHECK(std::abs(r.eigenvalues[1] - (1.0 - std::sqrt(5.0)) / 2) < 1e-12);
}

TEST_CASE("spectrum preconditions") {
  CHECK_THROWS_AS(spectrum(Eigen::MatrixXd(2, 3)), Error);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = NAN;
  CHECK_THROWS_AS(spectrum(m), Error);
}

TEST_CASE("verdict examples") {
  SpectrumReport r;
  r.eigenvalues = {2.1, 0.8, 0.5};
  r.unstable_count = 1;
  r.neutral_count = 0;
  auto v = hyperbolicity_verdict(r);
  CHECK(v.hyperbolic);
  CHECK(v.status == VerdictStatus::hyperbolic);
  CHECK(v.gamma == doctest::Approx(2.1));

  r.eigenvalues = {2.1, 1.01, 0.5};
  r.neutral_count = 1;
  v = hyperbolicity_verdict(r);
  CHECK_FALSE(v.hyperbolic);
  CHECK(v.status == VerdictStatus::not_hyperbolic);

  r.neutral_count = 0;
  r.drift = 0.01;
  v = hyperbolicity_verdict(r);
  CHECK(v.status == VerdictStatus::inconclusive);
}

TEST_CASE("renormalization preserves the normalization") {
  const SliceMap& f = d4().cycle.map;
  const RenormResult r = renormalize(phi_involution(f));
  CHECK(std::abs(r.map.central.eval(1.0) - 1.0) < 1e-10);
  CHECK_NOTHROW(r.map.validate());
  CHECK(sup_norm(r.map - f) < 1e-10);
}

TEST_CASE("the cycle companion: R(f) = phi(f)") {
  const auto& fx = d4();
  const RenormResult r = renormalize(fx.cycle.map);
  CHECK(sup_norm(r.map - phi_involution(fx.cycle.map)) < 1e-8);
  CHECK(std::fabs(std::fabs(r.beta) - fx.cycle.beta) < 1e-10);
}

TEST_CASE("derivative of the zero tangent vanishes in both modes") {
  const SliceMap& f = d4().cycle.map;
  const SliceMap zero = 0.0 * random_tangent(f);
  CHECK(sup_norm(derivative_apply(f, zero, DerivativeMode::analytic)) < 1e-14);
  CHECK(sup_norm(derivative_apply(f, zero, DerivativeMode::finite_diff)) < 1e-14);
}

TEST_CASE("analytic derivative is linear") {
  const SliceMap& f = d4().cycle.map;
  const SliceMap v = random_tangent(f), w = random_tangent(f);
  const double a = 0.7, b = -1.3;
  const SliceMap lhs = derivative_apply(f, a * v + b * w, DerivativeMode::analytic);
  const SliceMap rhs = a * derivative_apply(f, v, DerivativeMode::analytic) +
                       b * derivative_apply(f, w, DerivativeMode::analytic);
  CHECK(sup_norm(lhs - rhs) < 1e-10 * std::max(1.0, sup_norm(lhs)));
}

TEST_CASE("analytic and finite-difference derivatives agree") {
  const SliceMap& f = d4().cycle.map;
  for (int i = 0; i < 3; ++i) {
    const SliceMap v = random_tangent(f);
    const SliceMap a = derivative_apply(f, v, DerivativeMode::analytic);
    const SliceMap fd = derivative_apply(f, v, DerivativeMode::finite_diff);
    CHECK(sup_norm(a - fd) < 1e-6 * sup_norm(a));
  }
}

TEST_CASE("jacobian columns reproduce derivative_apply") {
  const SliceMap& f = d4().cycle.map;
  const FreeCoordinates fc(f);
  const Eigen::MatrixXd j = jacobian_matrix(f, DerivativeMode::analytic, Exec::parallel);
  CHECK(j.rows() == fc.size());
  CHECK(j.cols() == fc.size());
  Eigen::VectorXd x = Eigen::VectorXd::Random(fc.size());
  const SliceMap v = fc.unpack_tangent(x);
  const SliceMap dv = derivative_apply(f, v, DerivativeMode::analytic);
  const Eigen::VectorXd want = fc.pack(dv);
  const Eigen::VectorXd got = j * x;
  CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-10 * std::max(1.0, want.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("serial and parallel jacobians are identical") {
  const SliceMap& f = d4().cycle.map;
  const Eigen::MatrixXd a = jacobian_matrix(f, DerivativeMode::analytic, Exec::serial);
  const Eigen::MatrixXd b = jacobian_matrix(f, DerivativeMode::analytic, Exec::parallel);
  CHECK(a == b);
}

TEST_CASE("cycle jacobian is the jacobian at phi(f) times the phi diagonal") {
  const SliceMap& f = d4().cycle.map;
  const FreeCoordinates fc(f);
  const Eigen::MatrixXd c = cycle_jacobian(f);
  const Eigen::MatrixXd j = jacobian_matrix(phi_involution(f), DerivativeMode::analytic);
  CHECK((c - j * fc.phi_diagonal().asDiagonal()).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("restarting Newton at a converged cycle takes at most one step") {
  const auto& fx = d4();
  CycleOptions o;
  o.tol = 1e-12;
  const CycleSolution again = find_cycle(fx.cycle.map, o);
  CHECK(again.newton_iters <= 1);
  CHECK(again.residual < 1e-10);
  CHECK(sup_norm(again.map - fx.cycle.map) < 1e-10);
}

TEST_CASE("free coordinate round trip") {
  const SliceMap& f = d4().cycle.map;
  const FreeCoordinates fc(f);
  const SliceMap g = fc.unpack_map(fc.pack(f));
  CHECK(branch_max_abs_diff(g.central, f.central) < 1e-14);
  CHECK(branch_max_abs_diff(g.outer, f.outer) < 1e-14);
  CHECK_NOTHROW(random_tangent(f).validate_tangent());
}

TEST_CASE("a large perturbation leaves the Newton basin or the domain") {
  const auto& fx = d4();
  const SliceMap far = fx.cycle.map + 0.5 * random_tangent(fx.cycle.map);
  CycleOptions o;
  o.max_iters = 6;
  try {
    const CycleSolution s = find_cycle(far, o);
    // Converging is allowed; it must then be a genuine fixed point.
    CHECK(s.residual < 1e-8);
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::non_convergence || e.kind() == ErrorKind::composition_domain ||
           e.kind() == ErrorKind::no_valid_beta || e.kind() == ErrorKind::conditioning ||
           e.kind() == ErrorKind::domain || e.kind() == ErrorKind::truncation_overflow));
  }
}
