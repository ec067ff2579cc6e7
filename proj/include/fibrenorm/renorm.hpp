#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fibrenorm/parallel.hpp"
#include "fibrenorm/series.hpp"

namespace fibrenorm {

// Two-branch map: `central` on U_0 (critical point of order `degree` at 0),
// `outer` on U_1. Tangent increments use the same type with the tangent
// normalization v(1) = 0.
struct SliceMap {
  int degree = 4;
  TruncatedSeries central;
  TruncatedSeries outer;
  bool even_mode = false;

  SliceMap(int degree, TruncatedSeries central, TruncatedSeries outer, bool even_mode = false);

  // Branch chosen by disk membership (with slack); throws domain otherwise.
  cplx operator()(cplx z, double slack = kDefaultSlack) const;
  // Throws malformed_input if the slice invariants fail.
  void validate(double tol = 1e-8) const;
  // Same checks for a tangent increment (v(1) = 0 instead of f(1) = 1).
  void validate_tangent(double tol = 1e-8) const;
};

SliceMap operator+(const SliceMap& a, const SliceMap& b);
SliceMap operator-(const SliceMap& a, const SliceMap& b);
SliceMap operator*(double s, const SliceMap& a);
// Max of the branch sup-norms.
double sup_norm(const SliceMap& f);

SliceMap phi_involution(const SliceMap& f);

struct RenormOptions {
  double slack = kDefaultSlack;
  double spill = kDefaultSpill;
  // Tolerance on the output normalization f(1) = 1 and on the coefficients
  // forced to zero by the critical-point normalization.
  double norm_tol = 1e-8;
};

struct RenormResult {
  SliceMap map;
  double beta = 0.0;
  // Largest boundary ratios of G(beta z) in U_1, H(G(beta z)) and of the
  // outer branch G(beta z) in U_0, measured on the target disk boundaries.
  std::array<double, 3> ranges{};
};

// Fixed point of f^2 on the real slice of U_0 with negative multiplier
// closest to 0; Newton from `seed` when given.
double slice_beta(const SliceMap& f, std::optional<double> seed = {},
                  double slack = kDefaultSlack);

RenormResult renormalize(const SliceMap& f, std::optional<double> beta_seed = {},
                         const RenormOptions& opts = {});

// Renormalization onto explicitly chosen target disks and orders, used when
// the operator is applied across levels with different geometry.
RenormResult renormalize_onto(const SliceMap& f, const Disk& u0, int order0, const Disk& u1,
                              int order1, std::optional<double> beta_seed = {},
                              const RenormOptions& opts = {});

// Real scaled coefficients of the free coordinates: central a_k for k >= d
// (even k only in even mode), then the real parts of all outer a_k.
// The central constant term is eliminated through f(1) = 1 (maps) or
// v(1) = 0 (tangents).
class FreeCoordinates {
 public:
  explicit FreeCoordinates(const SliceMap& shape);

  int size() const { return static_cast<int>(central_index_.size()) + outer_order_ + 1; }
  const std::vector<int>& central_index() const { return central_index_; }

  Eigen::VectorXd pack(const SliceMap& f) const;
  SliceMap unpack_map(const Eigen::VectorXd& x) const;
  SliceMap unpack_tangent(const Eigen::VectorXd& x) const;
  // Matrix of phi in these coordinates: +1 on central entries, -1 on outer.
  Eigen::VectorXd phi_diagonal() const;

 private:
  SliceMap unpack(const Eigen::VectorXd& x, double constant) const;

  int degree_;
  bool even_mode_;
  Disk u0_, u1_;
  int central_order_, outer_order_;
  std::vector<int> central_index_;
  // Unit-disk coordinate of z = 1 in U_0.
  double u_one_;
};

enum class DerivativeMode { finite_diff, analytic };

SliceMap derivative_apply(const SliceMap& f, const SliceMap& v, DerivativeMode mode,
                          std::optional<double> beta_seed = {}, const RenormOptions& opts = {});

// Columns are derivative_apply(f, e_k) over the free coordinates of f.
Eigen::MatrixXd jacobian_matrix(const SliceMap& f, DerivativeMode mode, Exec exec = Exec::serial,
                                std::optional<double> beta_seed = {},
                                const RenormOptions& opts = {});

// Matrix of D(R o phi) at f: jacobian at phi(f) times the phi diagonal.
Eigen::MatrixXd cycle_jacobian(const SliceMap& f, Exec exec = Exec::serial,
                               std::optional<double> beta_seed = {},
                               const RenormOptions& opts = {});

// Matrix of D(R^2) at f via the chain rule through R(f).
Eigen::MatrixXd second_iterate_jacobian(const SliceMap& f, Exec exec = Exec::serial,
                                        const RenormOptions& opts = {});

struct CycleOptions {
  double tol = 1e-12;
  int max_iters = 40;
  int max_halvings = 8;
  int jacobian_reuse = 3;
  double min_rcond = 1e-14;
  Exec exec = Exec::serial;
  RenormOptions renorm{};
};

struct CycleSolution {
  SliceMap map;
  double beta = 0.0;
  double residual = 0.0;
  int newton_iters = 0;
  std::vector<double> trace;
};

// Residual sup-norm of R(phi(f)) - f together with the beta used.
std::pair<double, double> cycle_residual(const SliceMap& f, std::optional<double> beta_seed = {},
                                         const RenormOptions& opts = {});

CycleSolution find_cycle(const SliceMap& initial, const CycleOptions& opts = {});

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  int unstable_count = 0;
  int neutral_count = 0;
  double margin = 0.05;
  int truncation_order = 0;
  double drift = 0.0;
};

SpectrumReport spectrum(const Eigen::MatrixXd& m, double margin = 0.05,
                        int truncation_order = 0);

enum class VerdictStatus { hyperbolic, not_hyperbolic, inconclusive };

struct HyperbolicityVerdict {
  bool hyperbolic = false;
  VerdictStatus status = VerdictStatus::inconclusive;
  cplx unstable_eigenvalue{0.0, 0.0};
  double gamma = 0.0;
};

HyperbolicityVerdict hyperbolicity_verdict(const SpectrumReport& r, double drift_tol = 1e-3);

}  // namespace fibrenorm
