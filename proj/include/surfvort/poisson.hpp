// Inversion of the normal Laplacian on closed surfaces.
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>

#include "surfvort/cache.hpp"

namespace surfvort {

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

enum class PoissonMethod { automatic, modal, cg };

struct PoissonOptions {
  PoissonMethod method = PoissonMethod::automatic;
  double rtol = 1e-10;
  int max_iter = 0;  // cg only; 0 means 10 N
  // Recompute the residual after a modal solve and fail above this bound (0
  // disables, negative picks 1e-8 for spectral and 1e-4 for fd4 grids, where
  // regular right-hand sides are only O(h^4) inside the discrete range on pole grids).
  double modal_check_tol = -1.0;
};

// Solves (Delta_perp - shift) x = b. With shift == 0 the constant nullspace
// is removed: x has zero mean under dmu dnu / J and the mean of the residual
// is projected out.
//
// modal: for charts whose metric is independent of one periodic coordinate,
// the discrete operator is block diagonal in that coordinate's Fourier modes;
// each block is probed from the operator itself and LU-factorized once.
// Discrete null vectors besides the constants (Nyquist checkerboards, and on
// pole grids a log-singular axisymmetric mode) are removed by bordering.
// cg: Jacobi-preconditioned conjugate gradients in the dmu dnu / J inner product.
class PoissonSolver {
 public:
  explicit PoissonSolver(std::shared_ptr<const GeometryCache> cache, PoissonOptions opts = {},
                         double shift = 0.0);
  ~PoissonSolver();

  // Psi with -Delta_perp Psi = omega (zero-mean gauge).
  ScalarField solve(const ScalarField& omega) const;
  // x with (Delta_perp - shift) x = b.
  ScalarField apply_inverse(const ScalarField& b) const;

  PoissonMethod method() const { return method_; }
  double shift() const { return shift_; }
  const GeometryCache& cache() const { return *cache_; }
  std::shared_ptr<const GeometryCache> cache_ptr() const { return cache_; }
  // Relative residual and iteration count of the most recent solve. For the
  // modal method the residual excludes the part of b outside the discrete
  // range, which is reported by last_incompatibility().
  double last_residual() const { return last_residual_; }
  double last_incompatibility() const { return last_incompatibility_; }
  int last_iterations() const { return last_iterations_; }

 private:
  ScalarField apply_operator(const ScalarField& x) const;
  ScalarField solve_modal(const ScalarField& b) const;
  ScalarField solve_cg(const ScalarField& b) const;
  void build_modal();
  double weighted_mean(const ScalarField& f) const;

  std::shared_ptr<const GeometryCache> cache_;
  PoissonOptions opts_;
  double shift_;
  PoissonMethod method_;
  int dir_ = -1;          // mode direction (0 = mu, 1 = nu)
  int n_other_ = 0, n_mode_ = 0;
  struct LineFFT;
  std::unique_ptr<LineFFT> fft_;
  // Factorized mode block, bordered when the discrete operator is singular on it.
  struct ModalBlock {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    Eigen::MatrixXcd left_null;  // no x border, Lagrange columns
    int border = 0;
    bool drop = false;
  };
  std::vector<ModalBlock> blocks_;
  mutable double last_residual_ = 0.0;
  mutable double last_incompatibility_ = 0.0;
  mutable ScalarField rejected_;  // part of b removed by the bordered blocks
  mutable int last_iterations_ = 0;
};

}  // namespace surfvort
