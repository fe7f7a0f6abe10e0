#include "surfvort/sht.hpp"

#include <cmath>
#include <stdexcept>

namespace surfvort {

SphericalProjector::SphericalProjector(GridPtr grid, int degree) : grid_(std::move(grid)), L_(degree) {
  const Grid& g = *grid_;
  if (!g.has_pole()) throw std::invalid_argument("spherical projection needs a pole grid");
  if (L_ < 0 || 2 * L_ >= g.n_nu() || L_ >= g.n_mu()) throw std::invalid_argument("projection degree too large for the grid");
  const int nm = g.n_mu(), nn = g.n_nu();
  q_.resize(nm);
  for (int i = 0; i < nm; ++i) q_[i] = g.weight(i) * std::sin(g.mu(i));
  legendre_.resize(L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    legendre_[m].resize(static_cast<size_t>(L_ - m + 1) * nm);
    for (int l = m; l <= L_; ++l)
      for (int i = 0; i < nm; ++i) legendre_[m][static_cast<size_t>(l - m) * nm + i] = std::sph_legendre(l, m, g.mu(i));
  }
  cos_.resize(static_cast<size_t>(L_ + 1) * nn);
  sin_.resize(cos_.size());
  for (int m = 0; m <= L_; ++m)
    for (int j = 0; j < nn; ++j) {
      cos_[static_cast<size_t>(m) * nn + j] = std::cos(m * g.nu(j));
      sin_[static_cast<size_t>(m) * nn + j] = std::sin(m * g.nu(j));
    }
}

std::vector<std::vector<std::complex<double>>> SphericalProjector::analyze(const ScalarField& f) const {
  const Grid& g = *grid_;
  const int nm = g.n_mu(), nn = g.n_nu();
  std::vector<std::vector<std::complex<double>>> c(L_ + 1);
  std::vector<std::complex<double>> F(nm);
  for (int m = 0; m <= L_; ++m) {
    const double* cs = &cos_[static_cast<size_t>(m) * nn];
    const double* sn = &sin_[static_cast<size_t>(m) * nn];
    for (int i = 0; i < nm; ++i) {
      double re = 0.0, im = 0.0;
      for (int j = 0; j < nn; ++j) {
        re += f(i, j) * cs[j];
        im -= f(i, j) * sn[j];
      }
      F[i] = {re * q_[i], im * q_[i]};
    }
    c[m].assign(L_ - m + 1, 0.0);
    for (int l = m; l <= L_; ++l) {
      const double* P = &legendre_[m][static_cast<size_t>(l - m) * nm];
      std::complex<double> s = 0.0;
      for (int i = 0; i < nm; ++i) s += P[i] * F[i];
      c[m][l - m] = s;
    }
  }
  return c;
}

ScalarField SphericalProjector::project(const ScalarField& f) const {
  if (f.grid() != grid_) throw std::invalid_argument("field on a different grid");
  if (f.parity() != Parity::even) throw std::invalid_argument("spherical projection of an odd field");
  const Grid& g = *grid_;
  const int nm = g.n_mu(), nn = g.n_nu();
  auto c = analyze(f);
  ScalarField out(grid_, 0.0, Parity::even);
  std::vector<std::complex<double>> G(nm);
  for (int m = 0; m <= L_; ++m) {
    for (int i = 0; i < nm; ++i) {
      std::complex<double> s = 0.0;
      for (int l = m; l <= L_; ++l) s += c[m][l - m] * legendre_[m][static_cast<size_t>(l - m) * nm + i];
      G[i] = m == 0 ? s : 2.0 * s;
    }
    const double* cs = &cos_[static_cast<size_t>(m) * nn];
    const double* sn = &sin_[static_cast<size_t>(m) * nn];
    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nn; ++j) out(i, j) += G[i].real() * cs[j] - G[i].imag() * sn[j];
  }
  return out;
}

}  // namespace surfvort
