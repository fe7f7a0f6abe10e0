#include "surfvort/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "surfvort/operators.hpp"

namespace surfvort {

// Real FFTs along the mode direction for all lines of a field at once.
struct PoissonSolver::LineFFT {
  LineFFT(int n_mu, int n_nu, int dir) {
    nm = dir == 1 ? n_nu : n_mu;
    no = dir == 1 ? n_mu : n_nu;
    nc = nm / 2 + 1;
    int istride = dir == 1 ? 1 : n_nu, idist = dir == 1 ? n_nu : 1;
    real = fftw_alloc_real(static_cast<size_t>(n_mu) * n_nu);
    spec = fftw_alloc_complex(static_cast<size_t>(no) * nc);
    work = fftw_alloc_complex(static_cast<size_t>(no) * nc);
    int n[1] = {nm};
    fwd = fftw_plan_many_dft_r2c(1, n, no, real, nullptr, istride, idist, spec, nullptr, 1, nc,
                                 FFTW_ESTIMATE);
    bwd = fftw_plan_many_dft_c2r(1, n, no, work, nullptr, 1, nc, real, nullptr, istride, idist,
                                 FFTW_ESTIMATE);
  }
  ~LineFFT() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(spec);
    fftw_free(work);
  }
  std::complex<double>& at(int q, int m) {
    return reinterpret_cast<std::complex<double>*>(spec)[static_cast<size_t>(q) * nc + m];
  }
  void forward(const ScalarField& f) {
    std::memcpy(real, f.values().data(), sizeof(double) * f.size());
    fftw_execute(fwd);
  }
  // inverse of the contents of spec, normalized, into f
  void backward(ScalarField& f) {
    std::memcpy(work, spec, sizeof(fftw_complex) * static_cast<size_t>(no) * nc);
    fftw_execute(bwd);
    for (int k = 0; k < f.size(); ++k) f[k] = real[k] / nm;
  }
  int nm, no, nc;
  double* real;
  fftw_complex* spec;
  fftw_complex* work;
  fftw_plan fwd, bwd;
};

PoissonSolver::PoissonSolver(std::shared_ptr<const GeometryCache> cache, PoissonOptions opts, double shift)
    : cache_(std::move(cache)), opts_(opts), shift_(shift) {
  const GeometryCache& c = *cache_;
  method_ = opts_.method;
  int inv = c.chart.invariant_direction();
  if (c.grid->has_pole() && inv == 0) inv = -1;  // pole direction is not periodic
  if (method_ == PoissonMethod::automatic) method_ = inv >= 0 ? PoissonMethod::modal : PoissonMethod::cg;
  if (method_ == PoissonMethod::modal) {
    if (inv < 0) throw ChartError("modal Poisson solver needs a metric invariant along a periodic coordinate");
    dir_ = inv;
    build_modal();
  } else if (shift_ < 0.0) {
    throw std::invalid_argument("cg Poisson solver needs shift >= 0 (definite operator)");
  }
}

PoissonSolver::~PoissonSolver() = default;

ScalarField PoissonSolver::apply_operator(const ScalarField& x) const {
  ScalarField y = normal_laplacian(x, *cache_);
  if (shift_ != 0.0) y.axpy(-shift_, x);
  return y;
}

double PoissonSolver::weighted_mean(const ScalarField& f) const { return surface_mean(f, *cache_); }

void PoissonSolver::build_modal() {
  const GeometryCache& c = *cache_;
  const Grid& g = *c.grid;
  fft_ = std::make_unique<LineFFT>(g.n_mu(), g.n_nu(), dir_);
  n_mode_ = fft_->nm;
  n_other_ = fft_->no;
  const int no = n_other_, nc = fft_->nc;
  std::vector<Eigen::MatrixXcd> blocks(nc, Eigen::MatrixXcd(no, no));
  for (int p = 0; p < no; ++p) {
    ScalarField delta(c.grid, 0.0);
    if (dir_ == 1)
      delta(p, 0) = 1.0;
    else
      delta(0, p) = 1.0;
    fft_->forward(apply_operator(delta));
    for (int m = 0; m < nc; ++m)
      for (int q = 0; q < no; ++q) blocks[m](q, p) = fft_->at(q, m);
  }

  // Constraint rows for the zero mode: the mean gauge, and on pole grids the
  // vanishing of the flux a_mm d_mu x at theta = 0 (trigonometric
  // interpolation on the doubled grid), which excludes the discrete
  // log tan(theta/2) solution.
  Eigen::VectorXcd mean_row(no), pole_row = Eigen::VectorXcd::Zero(no);
  for (int q = 0; q < no; ++q)
    mean_row[q] = dir_ == 1 ? g.weight(q) * c.inv_J(q, 0) : g.weight(0) * c.inv_J(0, q);
  const bool pole = g.has_pole();
  if (pole) {
    const int n = g.n_mu();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      double s = 1.0;
      for (int k = 1; k < n; ++k) s += 2.0 * std::cos(k * g.mu(i));
      w[i] = s / n;
    }
    for (int p = 0; p < no; ++p) {
      ScalarField x(c.grid, 0.0);
      for (int j = 0; j < g.n_nu(); ++j) x(p, j) = 1.0;
      ScalarField F = c.a_mm * d_mu(x);
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += w[i] * F(i, 0);
      pole_row[p] = v;
    }
  }

  blocks_.assign(nc, ModalBlock{});
  const bool nyquist_mode = n_mode_ % 2 == 0;
  for (int m = 0; m < nc; ++m) {
    ModalBlock& blk = blocks_[m];
    if (shift_ == 0.0 && nyquist_mode && m == nc - 1) {
      blk.drop = true;  // killed by the first derivatives; no smooth content
      continue;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(blocks[m], Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int k = 0;
    while (k < no && sv[no - 1 - k] <= 1e-9 * sv[0]) ++k;
    blk.border = k;
    if (k == 0) {
      blk.lu.compute(blocks[m]);
      continue;
    }
    Eigen::MatrixXcd U = svd.matrixU().rightCols(k), V = svd.matrixV().rightCols(k);
    Eigen::MatrixXcd C(k, no);
    int r = 0;
    if (m == 0) C.row(r++) = mean_row.transpose();
    if (m == 0 && pole && r < k) C.row(r++) = pole_row.transpose();
    // remaining kernel directions (constants excluded on the zero mode): orthogonality to them
    if (r < k) {
      Eigen::MatrixXcd Vp = V;
      if (m == 0) {
        Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(no) / std::sqrt(double(no));
        Vp -= ones * (ones.adjoint() * V);
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> basis(Vp, Eigen::ComputeThinU);
      for (int col = 0; r < k; ++col) C.row(r++) = basis.matrixU().col(col).adjoint();
    }
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(no + k, no + k);
    B.topLeftCorner(no, no) = blocks[m];
    B.topRightCorner(no, k) = U;
    B.bottomLeftCorner(k, no) = C;
    blk.lu.compute(B);
    blk.left_null = U;
  }
}

ScalarField PoissonSolver::solve_modal(const ScalarField& b) const {
  const int no = n_other_, nc = fft_->nc;
  fft_->forward(b);
  std::vector<std::complex<double>> rejected(static_cast<size_t>(no) * nc, 0.0);
  for (int m = 0; m < nc; ++m) {
    const ModalBlock& blk = blocks_[m];
    if (blk.drop) {
      for (int q = 0; q < no; ++q) {
        rejected[static_cast<size_t>(q) * nc + m] = fft_->at(q, m);
        fft_->at(q, m) = 0.0;
      }
      continue;
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(no + blk.border);
    for (int q = 0; q < no; ++q) rhs[q] = fft_->at(q, m);
    Eigen::VectorXcd x = blk.lu.solve(rhs);
    for (int q = 0; q < no; ++q) fft_->at(q, m) = x[q];
    if (blk.border > 0) {
      Eigen::VectorXcd u = blk.left_null * x.tail(blk.border);
      for (int q = 0; q < no; ++q) rejected[static_cast<size_t>(q) * nc + m] = u[q];
    }
  }
  ScalarField x(b.grid(), 0.0, b.parity());
  fft_->backward(x);
  for (int q = 0; q < no; ++q)
    for (int m = 0; m < nc; ++m) fft_->at(q, m) = rejected[static_cast<size_t>(q) * nc + m];
  rejected_ = ScalarField(b.grid(), 0.0, b.parity());
  fft_->backward(rejected_);
  last_iterations_ = 1;
  return x;
}

ScalarField PoissonSolver::solve_cg(const ScalarField& b) const {
  const GeometryCache& c = *cache_;
  const Grid& g = *c.grid;
  const bool gauge = shift_ == 0.0;
  auto project = [&](ScalarField& f) {
    if (gauge) {
      double m = weighted_mean(f);
      for (int k = 0; k < f.size(); ++k) f[k] -= m;
    }
  };
  auto dot = [&](const ScalarField& a, const ScalarField& d) { return inner(a, d, c.inv_J); };
  // Jacobi preconditioner from the diagonal of the spectral second derivatives
  const double kmu = M_PI / g.step_mu(), knu = M_PI / g.step_nu();
  ScalarField pinv(c.grid, 0.0);
  for (int k = 0; k < pinv.size(); ++k)
    pinv[k] = 1.0 / (c.J[k] * (c.a_mm[k] * kmu * kmu + c.a_nn[k] * knu * knu) / 3.0 + shift_);

  ScalarField rhs = remove_nyquist(-b);  // solve A x = -b with A = shift - Delta_perp
  project(rhs);
  const double bnorm = std::sqrt(dot(rhs, rhs));
  ScalarField x(c.grid, 0.0, b.parity());
  last_iterations_ = 0;
  if (bnorm == 0.0) return x;
  const int max_iter = opts_.max_iter > 0 ? opts_.max_iter : 10 * g.size();
  ScalarField r = rhs;
  ScalarField z = remove_nyquist(pinv * r);
  project(z);
  ScalarField p = z;
  double rz = dot(r, z);
  double rel = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    ScalarField Ap = -apply_operator(p);
    double alpha = rz / dot(p, Ap);
    x.axpy(alpha, p);
    r.axpy(-alpha, Ap);
    project(r);
    rel = std::sqrt(dot(r, r)) / bnorm;
    last_iterations_ = it;
    if (rel <= opts_.rtol) {
      project(x);
      return x;
    }
    z = remove_nyquist(pinv * r);
    project(z);
    double rz_new = dot(r, z);
    ScalarField pn = z;
    pn.axpy(rz_new / rz, p);
    p = std::move(pn);
    rz = rz_new;
  }
  last_residual_ = rel;
  std::ostringstream os;
  os << "conjugate gradients did not converge in " << max_iter << " iterations (relative residual " << rel
     << ")";
  throw ConvergenceError(os.str(), rel, max_iter);
}

ScalarField PoissonSolver::apply_inverse(const ScalarField& b) const {
  if (b.grid() != cache_->grid) throw std::invalid_argument("right-hand side on a different grid");
  if (!b.all_finite()) throw std::invalid_argument("non-finite right-hand side");
  const double bmax = b.max_abs();
  if (bmax == 0.0) {
    last_residual_ = 0.0;
    return ScalarField(b.grid(), 0.0, b.parity());
  }
  ScalarField x = method_ == PoissonMethod::modal ? solve_modal(b) : solve_cg(b);
  if (shift_ == 0.0) {
    double m = weighted_mean(x);
    for (int k = 0; k < x.size(); ++k) x[k] -= m;
  }
  double check_tol = opts_.modal_check_tol;
  if (check_tol < 0.0) check_tol = cache_->grid->spec().scheme == DiffScheme::fd4 ? 1e-4 : 1e-8;
  if (method_ == PoissonMethod::modal) {
    // A x = b - rejected on the bordered blocks
    ScalarField r = apply_operator(x) - b + rejected_;
    last_residual_ = r.max_abs() / bmax;
    last_incompatibility_ = rejected_.max_abs() / bmax;
    if (check_tol > 0.0 && !(last_residual_ <= check_tol)) {
      std::ostringstream os;
      os << "modal Poisson solve residual " << last_residual_ << " above " << check_tol;
      throw ConvergenceError(os.str(), last_residual_, 1);
    }
  } else if (method_ == PoissonMethod::cg) {
    ScalarField r = apply_operator(x) - b;
    if (shift_ == 0.0) {
      double m = weighted_mean(r);
      for (int k = 0; k < r.size(); ++k) r[k] -= m;
    }
    last_residual_ = r.max_abs() / bmax;
  }
  return x;
}

ScalarField PoissonSolver::solve(const ScalarField& omega) const { return apply_inverse(-omega); }

}  // namespace surfvort
