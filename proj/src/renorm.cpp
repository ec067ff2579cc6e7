#include "fibrenorm/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fibrenorm/dynamics.hpp"

namespace fibrenorm {

namespace {

cplx unit_root(int j, int m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / m);
}

void require_same_shape(const SliceMap& a, const SliceMap& b) {
  if (a.degree != b.degree || a.even_mode != b.even_mode)
    throw Error(ErrorKind::malformed_input, "slice maps of different degree or mode");
}

}  // namespace

SliceMap::SliceMap(int degree_, TruncatedSeries central_, TruncatedSeries outer_, bool even_mode_)
    : degree(degree_), central(std::move(central_)), outer(std::move(outer_)), even_mode(even_mode_) {
  if (degree < 2 || degree % 2 != 0)
    throw Error(ErrorKind::usage, "degree must be even and >= 2, got " + std::to_string(degree));
}

cplx SliceMap::operator()(cplx z, double slack) const {
  if (central.disk().ratio(z) <= 1.0 + slack) return central.eval(z, slack);
  return outer.eval(z, slack);
}

namespace {

void validate_common(const SliceMap& f) {
  for (int k = 1; k < f.degree && k <= f.central.order(); ++k)
    if (f.central.coeff(k) != 0.0)
      throw Error(ErrorKind::malformed_input,
                  "central coefficient " + std::to_string(k) + " must vanish");
  const Disk& a = f.central.disk();
  const Disk& b = f.outer.disk();
  if (a.center != 0.0) throw Error(ErrorKind::malformed_input, "U_0 must be centred at 0");
  if (!(std::abs(a.center - b.center) > a.outer_radius() + b.outer_radius()))
    throw Error(ErrorKind::malformed_input, "U_0 and U_1 closures intersect");
  if (f.even_mode && f.central.parity() != Parity::even)
    throw Error(ErrorKind::malformed_input, "even mode needs an even central branch");
}

}  // namespace

void SliceMap::validate(double tol) const {
  validate_common(*this);
  if (central.disk().ratio(1.0) > 1.0)
    throw Error(ErrorKind::malformed_input, "1 is not in U_0");
  const double err = std::abs(central.eval_unchecked(1.0) - 1.0);
  if (!(err < tol)) throw Error(ErrorKind::malformed_input, "f(1) != 1", err);
}

void SliceMap::validate_tangent(double tol) const {
  validate_common(*this);
  const double err = std::abs(central.eval_unchecked(1.0));
  if (!(err < tol)) throw Error(ErrorKind::malformed_input, "v(1) != 0", err);
}

SliceMap operator+(const SliceMap& a, const SliceMap& b) {
  require_same_shape(a, b);
  return SliceMap(a.degree, a.central + b.central, a.outer + b.outer, a.even_mode);
}

SliceMap operator-(const SliceMap& a, const SliceMap& b) {
  require_same_shape(a, b);
  return SliceMap(a.degree, a.central - b.central, a.outer - b.outer, a.even_mode);
}

SliceMap operator*(double s, const SliceMap& a) {
  return SliceMap(a.degree, cplx(s) * a.central, cplx(s) * a.outer, a.even_mode);
}

double sup_norm(const SliceMap& f) {
  return std::max(sup_norm(f.central), sup_norm(f.outer));
}

SliceMap phi_involution(const SliceMap& f) {
  return SliceMap(f.degree, f.central, f.outer.negated(), f.even_mode);
}

double slice_beta(const SliceMap& f, std::optional<double> seed, double slack) {
  const Disk& u0 = f.central.disk();
  const Disk& u1 = f.outer.disk();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  RealBranch f2 = [&](double x) -> Jet {
    if (u0.ratio(x) > 1.0) return {nan, nan};
    const auto [g, dg] = f.central.eval_with_slope(x, 0.0);
    if (u1.ratio(g) > 1.0 + slack) return {nan, nan};
    const auto [h, dh] = f.outer.eval_with_slope(g, slack);
    return {h.real(), (dh * dg).real()};
  };
  if (seed) {
    try {
      return beta_fixed_point_from_seed(f2, *seed, 1e-12);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_valid_beta) throw;
    }
  }
  const double rho = 0.98 * u0.inner_radius();
  return beta_fixed_point(f2, Interval{-rho, rho}, 2000, 1e-12);
}

namespace {

// Everything the operator and its derivative need from f at the sample
// points of the target disk boundaries.
struct Samples {
  double beta = 0.0;
  Disk u0, u1;
  int n0 = 0, n1 = 0;
  int m0 = 0, m1 = 0;
  // Central target: z_j on the U_0 boundary.
  std::vector<cplx> z_c, tg_c, th_c, f2_c, df2_c, dh_c;
  // Outer target: z_j on the U_1 boundary.
  std::vector<cplx> z_o, tg_o, g_o, dg_o;
  // At the fixed point beta.
  cplx tg_beta, th_beta, dh_beta;
  double df2_beta = 0.0;
  std::array<double, 3> ranges{};
};

Samples take_samples(const SliceMap& f, const Disk& u0, int n0, const Disk& u1, int n1, double beta,
                     double slack) {
  const Disk& d0 = f.central.disk();
  const Disk& d1 = f.outer.disk();
  Samples s;
  s.beta = beta;
  s.u0 = u0;
  s.u1 = u1;
  s.n0 = n0;
  s.n1 = n1;
  s.m0 = sample_count(n0);
  s.m1 = sample_count(n1);

  auto fail = [](const char* what, double ratio) {
    throw Error(ErrorKind::composition_domain,
                std::string(what) + " leaves its disk, ratio " + std::to_string(ratio), ratio);
  };

  s.z_c.resize(s.m0);
  s.tg_c.resize(s.m0);
  s.th_c.resize(s.m0);
  s.f2_c.resize(s.m0);
  s.df2_c.resize(s.m0);
  s.dh_c.resize(s.m0);
  double r0 = 0.0, r1 = 0.0;
  for (int j = 0; j < s.m0; ++j) {
    const cplx z = u0.chart(unit_root(j, s.m0));
    const cplx ug = d0.unit(beta * z);
    r0 = std::max(r0, std::abs(ug));
    const auto [g, dg] = f.central.eval_with_slope(beta * z, std::numeric_limits<double>::infinity());
    const cplx uh = d1.unit(g);
    r1 = std::max(r1, std::abs(uh));
    const auto [h, dh] = f.outer.eval_with_slope(g, std::numeric_limits<double>::infinity());
    s.z_c[j] = z;
    s.tg_c[j] = d0.radius * ug;
    s.th_c[j] = d1.radius * uh;
    s.f2_c[j] = h;
    s.df2_c[j] = dh * dg;
    s.dh_c[j] = dh;
  }
  if (!(r0 <= 1.0 + slack)) fail("beta * boundary of U_0", r0);
  if (!(r1 <= 1.0 + slack)) fail("f(beta * boundary of U_0)", r1);

  s.z_o.resize(s.m1);
  s.tg_o.resize(s.m1);
  s.g_o.resize(s.m1);
  s.dg_o.resize(s.m1);
  double r2 = 0.0;
  for (int j = 0; j < s.m1; ++j) {
    const cplx z = u1.chart(unit_root(j, s.m1));
    const cplx ug = d0.unit(beta * z);
    r2 = std::max(r2, std::abs(ug));
    const auto [g, dg] = f.central.eval_with_slope(beta * z, std::numeric_limits<double>::infinity());
    s.z_o[j] = z;
    s.tg_o[j] = d0.radius * ug;
    s.g_o[j] = g;
    s.dg_o[j] = dg;
  }
  if (!(r2 <= 1.0 + slack)) fail("beta * boundary of U_1", r2);
  s.ranges = {r0, r1, r2};

  const auto [gb, dgb] = f.central.eval_with_slope(beta, slack);
  const auto [hb, dhb] = f.outer.eval_with_slope(gb, slack);
  s.tg_beta = d0.local(beta);
  s.th_beta = d1.local(gb);
  s.dh_beta = dhb;
  s.df2_beta = (dhb * dgb).real();
  return s;
}

Parity central_parity(const SliceMap& f) { return f.even_mode ? Parity::even : Parity::all; }

// Zero the coefficients fixed by the critical-point normalization after
// checking they are round-off.
TruncatedSeries normalize_central(const TruncatedSeries& s, int degree, double tol) {
  std::vector<cplx> c(s.coeffs());
  double scale = 1.0;
  for (const auto& a : s.scaled_coeffs()) scale = std::max(scale, std::abs(a));
  double rk = 1.0;
  for (int k = 1; k < degree && k < static_cast<int>(c.size()); ++k) {
    rk *= s.disk().radius;
    if (std::abs(c[k]) * rk > tol * scale)
      throw Error(ErrorKind::numerical_failure,
                  "critical normalization lost at coefficient " + std::to_string(k),
                  std::abs(c[k]) * rk);
    c[k] = 0.0;
  }
  return TruncatedSeries(s.disk(), std::move(c), s.parity());
}

}  // namespace

RenormResult renormalize_onto(const SliceMap& f, const Disk& u0, int order0, const Disk& u1,
                              int order1, std::optional<double> beta_seed,
                              const RenormOptions& opts) {
  const double beta = slice_beta(f, beta_seed, opts.slack);
  if (std::fabs(beta) < 1e-6) throw Error(ErrorKind::singular_rescale, "beta vanishes", beta);
  const Samples s = take_samples(f, u0, order0, u1, order1, beta, opts.slack);
  std::vector<cplx> vc(s.m0), vo(s.m1);
  for (int j = 0; j < s.m0; ++j) vc[j] = s.f2_c[j] / beta;
  for (int j = 0; j < s.m1; ++j) vo[j] = s.g_o[j] / beta;
  TruncatedSeries central =
      fit_from_samples(u0, vc, order0, central_parity(f), opts.spill);
  central = normalize_central(central, f.degree, opts.norm_tol);
  TruncatedSeries outer = fit_from_samples(u1, vo, order1, Parity::all, opts.spill);
  SliceMap out(f.degree, std::move(central), std::move(outer), f.even_mode);
  const double err = std::abs(out.central.eval_unchecked(1.0) - 1.0);
  if (!(err < opts.norm_tol))
    throw Error(ErrorKind::numerical_failure, "renormalized map lost f(1) = 1", err);
  return {std::move(out), beta, s.ranges};
}

RenormResult renormalize(const SliceMap& f, std::optional<double> beta_seed,
                         const RenormOptions& opts) {
  return renormalize_onto(f, f.central.disk(), f.central.order(), f.outer.disk(), f.outer.order(),
                          beta_seed, opts);
}

FreeCoordinates::FreeCoordinates(const SliceMap& shape)
    : degree_(shape.degree),
      even_mode_(shape.even_mode),
      u0_(shape.central.disk()),
      u1_(shape.outer.disk()),
      central_order_(shape.central.order()),
      outer_order_(shape.outer.order()) {
  for (int k = degree_; k <= central_order_; ++k)
    if (!even_mode_ || k % 2 == 0) central_index_.push_back(k);
  u_one_ = u0_.unit(1.0).real();
}

Eigen::VectorXd FreeCoordinates::pack(const SliceMap& f) const {
  if (f.central.disk() != u0_ || f.outer.disk() != u1_ || f.central.order() != central_order_ ||
      f.outer.order() != outer_order_)
    throw Error(ErrorKind::malformed_input, "slice map does not match the coordinate layout");
  Eigen::VectorXd x(size());
  const auto a = f.central.scaled_coeffs();
  const auto b = f.outer.scaled_coeffs();
  int i = 0;
  for (int k : central_index_) x[i++] = a[k].real();
  for (int k = 0; k <= outer_order_; ++k) x[i++] = b[k].real();
  return x;
}

SliceMap FreeCoordinates::unpack(const Eigen::VectorXd& x, double constant) const {
  if (x.size() != size())
    throw Error(ErrorKind::malformed_input, "coordinate vector has the wrong length");
  std::vector<cplx> a(central_order_ + 1, 0.0), b(outer_order_ + 1, 0.0);
  int i = 0;
  double sum = 0.0;
  for (int k : central_index_) {
    a[k] = x[i++];
    sum += a[k].real() * std::pow(u_one_, k);
  }
  a[0] = constant - sum;
  for (int k = 0; k <= outer_order_; ++k) b[k] = x[i++];
  const Parity p = even_mode_ ? Parity::even : Parity::all;
  return SliceMap(degree_, TruncatedSeries::from_scaled(u0_, std::move(a), p),
                  TruncatedSeries::from_scaled(u1_, std::move(b)), even_mode_);
}

SliceMap FreeCoordinates::unpack_map(const Eigen::VectorXd& x) const { return unpack(x, 1.0); }
SliceMap FreeCoordinates::unpack_tangent(const Eigen::VectorXd& x) const { return unpack(x, 0.0); }

Eigen::VectorXd FreeCoordinates::phi_diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(size());
  d.tail(outer_order_ + 1).setConstant(-1.0);
  return d;
}

namespace {

SliceMap apply_linearization(const SliceMap& f, const Samples& s, const SliceMap& v, double spill,
                             double norm_tol) {
  const double beta = s.beta;
  const double den = 1.0 - s.df2_beta;
  const cplx a2_beta = v.outer.eval_local(s.th_beta) + s.dh_beta * v.central.eval_local(s.tg_beta);
  const double dbeta = a2_beta.real() / den;
  const double k = -dbeta / (beta * beta);
  std::vector<cplx> vc(s.m0), vo(s.m1);
  for (int j = 0; j < s.m0; ++j) {
    const cplx a2 = v.outer.eval_local(s.th_c[j]) + s.dh_c[j] * v.central.eval_local(s.tg_c[j]);
    vc[j] = k * s.f2_c[j] + (a2 + s.df2_c[j] * dbeta * s.z_c[j]) / beta;
  }
  for (int j = 0; j < s.m1; ++j) {
    const cplx a1 = v.central.eval_local(s.tg_o[j]);
    vo[j] = k * s.g_o[j] + (a1 + s.dg_o[j] * dbeta * s.z_o[j]) / beta;
  }
  TruncatedSeries central = fit_from_samples(s.u0, vc, s.n0, central_parity(f), spill);
  central = normalize_central(central, f.degree, norm_tol);
  TruncatedSeries outer = fit_from_samples(s.u1, vo, s.n1, Parity::all, spill);
  return SliceMap(f.degree, std::move(central), std::move(outer), f.even_mode);
}

Samples linearization_samples(const SliceMap& f, std::optional<double> beta_seed,
                              const RenormOptions& opts) {
  const double beta = slice_beta(f, beta_seed, opts.slack);
  Samples s = take_samples(f, f.central.disk(), f.central.order(), f.outer.disk(),
                           f.outer.order(), beta, opts.slack);
  if (std::fabs(1.0 - s.df2_beta) < 1e-8)
    throw Error(ErrorKind::neutral_multiplier, "Df^2(beta) is within 1e-8 of 1", s.df2_beta);
  return s;
}

// Tangent outputs are compared in relative terms, so the spill test is
// relaxed to the size of the fit's own round-off.
constexpr double kTangentSpill = std::numeric_limits<double>::infinity();

}  // namespace

SliceMap derivative_apply(const SliceMap& f, const SliceMap& v, DerivativeMode mode,
                          std::optional<double> beta_seed, const RenormOptions& opts) {
  require_same_shape(f, v);
  if (mode == DerivativeMode::analytic) {
    const Samples s = linearization_samples(f, beta_seed, opts);
    return apply_linearization(f, s, v, kTangentSpill, std::numeric_limits<double>::infinity());
  }
  const double vn = sup_norm(v);
  if (vn == 0.0) return 0.0 * renormalize(f, beta_seed, opts).map;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                   std::max(1.0, sup_norm(f)) / vn;
  const double beta = slice_beta(f, beta_seed, opts.slack);
  RenormOptions loose = opts;
  loose.spill = kTangentSpill;
  loose.norm_tol = std::numeric_limits<double>::infinity();
  const SliceMap plus = renormalize(f + h * v, beta, loose).map;
  const SliceMap minus = renormalize(f - h * v, beta, loose).map;
  return (0.5 / h) * (plus - minus);
}

Eigen::MatrixXd jacobian_matrix(const SliceMap& f, DerivativeMode mode, Exec exec,
                                std::optional<double> beta_seed, const RenormOptions& opts) {
  const FreeCoordinates layout(f);
  const int n = layout.size();
  Eigen::MatrixXd jac(n, n);
  std::optional<Samples> s;
  double beta = 0.0;
  if (mode == DerivativeMode::analytic) {
    s = linearization_samples(f, beta_seed, opts);
  } else {
    beta = slice_beta(f, beta_seed, opts.slack);
  }
  auto column = [&](int k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[k] = 1.0;
    const SliceMap v = layout.unpack_tangent(e);
    const SliceMap out = mode == DerivativeMode::analytic
                             ? apply_linearization(f, *s, v, kTangentSpill,
                                                   std::numeric_limits<double>::infinity())
                             : derivative_apply(f, v, mode, beta, opts);
    jac.col(k) = layout.pack(out);
  };
  if (exec == Exec::serial) {
    for (int k = 0; k < n; ++k) column(k);
    return jac;
  }
  // Exceptions must not cross the parallel region.
  std::vector<std::string> errors(n);
  std::vector<ErrorKind> kinds(n, ErrorKind::numerical_failure);
  std::vector<char> failed(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n; ++k) {
    try {
      column(k);
    } catch (const Error& e) {
      failed[k] = 1;
      kinds[k] = e.kind();
      errors[k] = e.what();
    } catch (const std::exception& e) {
      failed[k] = 1;
      errors[k] = e.what();
    }
  }
  for (int k = 0; k < n; ++k)
    if (failed[k]) throw Error(kinds[k], "jacobian column " + std::to_string(k) + ": " + errors[k]);
  return jac;
}

Eigen::MatrixXd cycle_jacobian(const SliceMap& f, Exec exec, std::optional<double> beta_seed,
                               const RenormOptions& opts) {
  const FreeCoordinates layout(f);
  const Eigen::MatrixXd j =
      jacobian_matrix(phi_involution(f), DerivativeMode::analytic, exec, beta_seed, opts);
  return j * layout.phi_diagonal().asDiagonal();
}

Eigen::MatrixXd second_iterate_jacobian(const SliceMap& f, Exec exec, const RenormOptions& opts) {
  const Eigen::MatrixXd j1 = jacobian_matrix(f, DerivativeMode::analytic, exec, {}, opts);
  const SliceMap g = renormalize(f, {}, opts).map;
  const Eigen::MatrixXd j2 = jacobian_matrix(g, DerivativeMode::analytic, exec, {}, opts);
  return j2 * j1;
}

std::pair<double, double> cycle_residual(const SliceMap& f, std::optional<double> beta_seed,
                                         const RenormOptions& opts) {
  const RenormResult r = renormalize(phi_involution(f), beta_seed, opts);
  return {sup_norm(r.map - f), r.beta};
}

CycleSolution find_cycle(const SliceMap& initial, const CycleOptions& opts) {
  const FreeCoordinates layout(initial);
  const int n = layout.size();
  Eigen::VectorXd x = layout.pack(initial);
  SliceMap f = layout.unpack_map(x);

  // F(x) = pack(R(phi(f))) - x, residual measured as a sup-norm on the disks.
  struct Eval {
    Eigen::VectorXd F;
    double residual;
    double beta;
  };
  auto evaluate = [&](const SliceMap& g, std::optional<double> seed) {
    const RenormResult r = renormalize(phi_involution(g), seed, opts.renorm);
    return Eval{layout.pack(r.map) - layout.pack(g), sup_norm(r.map - g), r.beta};
  };

  Eval cur = evaluate(f, std::nullopt);
  std::vector<double> trace{cur.residual};
  int iters = 0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  int jac_age = opts.jacobian_reuse;  // forces a fresh Jacobian on the first step

  while (cur.residual >= opts.tol) {
    if (iters >= opts.max_iters)
      throw Error(ErrorKind::non_convergence,
                  "Newton hit the iteration cap with residual " + std::to_string(cur.residual),
                  cur.residual, trace);
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool fresh = jac_age >= opts.jacobian_reuse || attempt > 0;
      if (fresh) {
        const Eigen::MatrixXd j = cycle_jacobian(f, opts.exec, cur.beta, opts.renorm);
        const Eigen::MatrixXd a = j - Eigen::MatrixXd::Identity(n, n);
        lu.compute(a);
        const double rcond = lu.rcond();
        if (!(rcond >= opts.min_rcond))
          throw Error(ErrorKind::conditioning,
                      "Newton matrix is near singular (rcond " + std::to_string(rcond) +
                          "); increase damping or reseed",
                      rcond, trace);
        jac_age = 0;
      }
      const Eigen::VectorXd step = lu.solve(-cur.F);
      double lambda = 1.0;
      for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
        const Eigen::VectorXd trial_x = x + lambda * step;
        try {
          const SliceMap g = layout.unpack_map(trial_x);
          const Eval e = evaluate(g, cur.beta);
          if (e.residual < cur.residual) {
            x = trial_x;
            f = g;
            cur = e;
            accepted = true;
            break;
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::composition_domain && e.kind() != ErrorKind::no_valid_beta &&
              e.kind() != ErrorKind::truncation_overflow && e.kind() != ErrorKind::domain &&
              e.kind() != ErrorKind::numerical_failure)
            throw;
        }
      }
      if (!accepted && fresh) break;
    }
    if (!accepted)
      throw Error(ErrorKind::non_convergence,
                  "damped Newton step failed to reduce the residual " +
                      std::to_string(cur.residual),
                  cur.residual, trace);
    ++iters;
    ++jac_age;
    trace.push_back(cur.residual);
    const std::size_t k = trace.size() - 1;
    if (k >= 5 && cur.residual >= opts.tol && trace[k] > 0.9 * trace[k - 5])
      throw Error(ErrorKind::non_convergence,
                  "Newton stagnated at residual " + std::to_string(cur.residual), cur.residual,
                  trace);
  }

  CycleSolution sol{f, cur.beta, cur.residual, iters, trace};
  if (sol.beta < 0.0) {
    // phi(f) is the other fixed point of R o phi; its beta is -beta.
    sol.map = phi_involution(f);
    const auto [res, beta] = cycle_residual(sol.map, -cur.beta, opts.renorm);
    sol.residual = res;
    sol.beta = beta;
  }
  if (!(sol.beta > 0.0 && sol.beta < 1.0))
    throw Error(ErrorKind::numerical_failure, "cycle beta outside (0, 1)", sol.beta);
  return sol;
}

SpectrumReport spectrum(const Eigen::MatrixXd& m, double margin, int truncation_order) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::precondition, "spectrum needs a nonempty square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::precondition, "matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::numerical_failure, "eigenvalue iteration did not converge");
  SpectrumReport r;
  r.margin = margin;
  r.truncation_order = truncation_order;
  const auto ev = solver.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::stable_sort(r.eigenvalues.begin(), r.eigenvalues.end(),
                   [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  for (const cplx& l : r.eigenvalues) {
    const double a = std::abs(l);
    if (a > 1.0 + margin)
      ++r.unstable_count;
    else if (a >= 1.0 - margin)
      ++r.neutral_count;
  }
  return r;
}

HyperbolicityVerdict hyperbolicity_verdict(const SpectrumReport& r, double drift_tol) {
  HyperbolicityVerdict v;
  if (!r.eigenvalues.empty()) {
    v.unstable_eigenvalue = r.eigenvalues.front();
    v.gamma = std::abs(r.eigenvalues.front());
  }
  if (!(r.drift < drift_tol)) {
    v.status = VerdictStatus::inconclusive;
    return v;
  }
  v.hyperbolic = r.unstable_count == 1 && r.neutral_count == 0;
  v.status = v.hyperbolic ? VerdictStatus::hyperbolic : VerdictStatus::not_hyperbolic;
  return v;
}

}  // namespace fibrenorm
