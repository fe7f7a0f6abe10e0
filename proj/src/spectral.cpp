#include "surfvort/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

namespace surfvort {

namespace {
enum Op { kIdentity = 0, kDmu = 1, kDnu = 2 };
}

SpectralEngine::SpectralEngine(const GridSpec& spec) : spec_(spec) {
  spectral_ = spec.scheme == DiffScheme::spectral;
  bool pole = spec.pole != PoleRule::none;
  n0_ = pole ? 2 * spec.n_mu : spec.n_mu;
  n1_ = spec.n_nu;
  nc_ = n1_ / 2 + 1;
  h0_ = (spec.mu_max - spec.mu_min) / spec.n_mu;
  h1_ = (spec.nu_max - spec.nu_min) / spec.n_nu;
  double L0 = h0_ * n0_, L1 = h1_ * n1_;
  k0_.resize(n0_);
  keep0_.resize(n0_);
  for (int a = 0; a < n0_; ++a) {
    int k = a <= n0_ / 2 ? a : a - n0_;
    k0_[a] = (2 * a == n0_) ? 0.0 : 2.0 * M_PI * k / L0;
    keep0_[a] = std::abs(k) <= n0_ / 3;
  }
  k1_.resize(nc_);
  keep1_.resize(nc_);
  for (int b = 0; b < nc_; ++b) {
    k1_[b] = (2 * b == n1_) ? 0.0 : 2.0 * M_PI * b / L1;
    keep1_[b] = b <= n1_ / 3;
  }
  for (auto& r : rbuf_) r = fftw_alloc_real(static_cast<size_t>(n0_) * n1_);
  for (auto& c : cbuf_)
    c = reinterpret_cast<cplx*>(fftw_alloc_complex(static_cast<size_t>(n0_) * nc_));
  r2c_ = fftw_plan_dft_r2c_2d(n0_, n1_, rbuf_[0], reinterpret_cast<fftw_complex*>(cbuf_[0]),
                              FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_2d(n0_, n1_, reinterpret_cast<fftw_complex*>(cbuf_[2]), rbuf_[0],
                              FFTW_ESTIMATE);
}

SpectralEngine::~SpectralEngine() {
  fftw_destroy_plan(r2c_);
  fftw_destroy_plan(c2r_);
  for (auto r : rbuf_) fftw_free(r);
  for (auto c : cbuf_) fftw_free(c);
}

void SpectralEngine::extend(const ScalarField& f, double* out) const {
  const int nm = spec_.n_mu, nn = spec_.n_nu;
  std::memcpy(out, f.values().data(), sizeof(double) * nm * nn);
  if (n0_ == nm) return;
  const double s = f.parity() == Parity::even ? 1.0 : -1.0;
  for (int e = nm; e < n0_; ++e) {
    int i = n0_ - 1 - e;
    for (int j = 0; j < nn; ++j) out[e * nn + j] = s * f(i, (j + nn / 2) % nn);
  }
}

void SpectralEngine::restrict_to(const double* ext, ScalarField& out) const {
  std::memcpy(out.values().data(), ext, sizeof(double) * spec_.n_mu * spec_.n_nu);
}

void SpectralEngine::forward(const double* in, cplx* out) {
  fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void SpectralEngine::backward(const cplx* spec, double* out, int which) {
  cplx* w = cbuf_[2];
  const double norm = 1.0 / (static_cast<double>(n0_) * n1_);
  const cplx I(0.0, 1.0);
  for (int a = 0; a < n0_; ++a)
    for (int b = 0; b < nc_; ++b) {
      size_t k = static_cast<size_t>(a) * nc_ + b;
      cplx m = norm;
      if (which == kDmu) m *= I * k0_[a];
      if (which == kDnu) m *= I * k1_[b];
      w[k] = spec[k] * m;
    }
  fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(w), out);
}

void SpectralEngine::fd4(const double* in, double* out, int dir) const {
  const double c = 1.0 / (12.0 * (dir == 0 ? h0_ : h1_));
  for (int a = 0; a < n0_; ++a)
    for (int b = 0; b < n1_; ++b) {
      auto at = [&](int s) {
        if (dir == 0) return in[((a + s + n0_) % n0_) * n1_ + b];
        return in[a * n1_ + (b + s + n1_) % n1_];
      };
      out[a * n1_ + b] = c * (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2));
    }
}

void SpectralEngine::derivatives(const ScalarField& f, ScalarField* fmu, ScalarField* fnu) {
  double* ext = rbuf_[0];
  extend(f, ext);
  if (spectral_) {
    forward(ext, cbuf_[0]);
    if (fmu) {
      backward(cbuf_[0], rbuf_[1], kDmu);
      restrict_to(rbuf_[1], *fmu);
    }
    if (fnu) {
      backward(cbuf_[0], rbuf_[1], kDnu);
      restrict_to(rbuf_[1], *fnu);
    }
  } else {
    if (fmu) {
      fd4(ext, rbuf_[1], 0);
      restrict_to(rbuf_[1], *fmu);
    }
    if (fnu) {
      fd4(ext, rbuf_[1], 1);
      restrict_to(rbuf_[1], *fnu);
    }
  }
  if (fmu) fmu->set_parity(flip(f.parity()));
  if (fnu) fnu->set_parity(f.parity());
}

ScalarField SpectralEngine::filter(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0, f.parity());
  if (!spectral_) {
    out = f;
    return out;
  }
  extend(f, rbuf_[0]);
  forward(rbuf_[0], cbuf_[0]);
  for (int a = 0; a < n0_; ++a)
    for (int b = 0; b < nc_; ++b)
      if (!(keep0_[a] && keep1_[b])) cbuf_[0][static_cast<size_t>(a) * nc_ + b] = 0.0;
  backward(cbuf_[0], rbuf_[1], kIdentity);
  restrict_to(rbuf_[1], out);
  return out;
}

ScalarField SpectralEngine::strip_nyquist(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0, f.parity());
  extend(f, rbuf_[0]);
  forward(rbuf_[0], cbuf_[0]);
  for (int a = 0; a < n0_; ++a)
    for (int b = 0; b < nc_; ++b)
      if (2 * a == n0_ || 2 * b == n1_) cbuf_[0][static_cast<size_t>(a) * nc_ + b] = 0.0;
  backward(cbuf_[0], rbuf_[1], kIdentity);
  restrict_to(rbuf_[1], out);
  return out;
}

ScalarField SpectralEngine::bracket(const ScalarField& f, const ScalarField& g) {
  const size_t n = static_cast<size_t>(n0_) * n1_;
  double *fm = rbuf_[1], *fn = rbuf_[2], *gm = rbuf_[3], *gn = rbuf_[4], *prod = rbuf_[5];
  auto mask = [&](cplx* c) {
    for (int a = 0; a < n0_; ++a)
      for (int b = 0; b < nc_; ++b)
        if (!(keep0_[a] && keep1_[b])) c[static_cast<size_t>(a) * nc_ + b] = 0.0;
  };
  if (spectral_) {
    extend(f, rbuf_[0]);
    forward(rbuf_[0], cbuf_[0]);
    mask(cbuf_[0]);
    backward(cbuf_[0], fm, kDmu);
    backward(cbuf_[0], fn, kDnu);
    extend(g, rbuf_[0]);
    forward(rbuf_[0], cbuf_[1]);
    mask(cbuf_[1]);
    backward(cbuf_[1], gm, kDmu);
    backward(cbuf_[1], gn, kDnu);
  } else {
    extend(f, rbuf_[0]);
    fd4(rbuf_[0], fm, 0);
    fd4(rbuf_[0], fn, 1);
    extend(g, rbuf_[0]);
    fd4(rbuf_[0], gm, 0);
    fd4(rbuf_[0], gn, 1);
  }
  for (size_t k = 0; k < n; ++k) prod[k] = fm[k] * gn[k] - fn[k] * gm[k];
  ScalarField out(f.grid(), 0.0, flip(f.parity() * g.parity()));
  if (spectral_) {
    forward(prod, cbuf_[0]);
    mask(cbuf_[0]);
    backward(cbuf_[0], rbuf_[0], kIdentity);
    restrict_to(rbuf_[0], out);
  } else {
    restrict_to(prod, out);
  }
  return out;
}

}  // namespace surfvort
