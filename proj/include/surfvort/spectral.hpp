// Derivative engine behind the grid module. Pole grids are differentiated on
// the doubled (2 N_mu) periodic extension f(-theta, phi) = p f(theta, phi + pi).
// Not thread-safe: one engine per grid, owned workspace.
#pragma once

#include <complex>
#include <vector>

#include "surfvort/grid.hpp"

typedef struct fftw_plan_s* fftw_plan;

namespace surfvort {

class SpectralEngine {
 public:
  explicit SpectralEngine(const GridSpec& spec);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  void derivatives(const ScalarField& f, ScalarField* fmu, ScalarField* fnu);
  ScalarField bracket(const ScalarField& f, const ScalarField& g);
  ScalarField filter(const ScalarField& f);
  ScalarField strip_nyquist(const ScalarField& f);

 private:
  using cplx = std::complex<double>;
  void extend(const ScalarField& f, double* out) const;
  void restrict_to(const double* ext, ScalarField& out) const;
  void forward(const double* in, cplx* out);
  // out = IFFT(spec * multiplier); spec is not modified
  void backward(const cplx* spec, double* out, int which);
  void fd4(const double* in, double* out, int dir) const;

  GridSpec spec_;
  bool spectral_;
  int n0_, n1_, nc_;
  double h0_, h1_;
  std::vector<double> k0_, k1_;
  std::vector<char> keep0_, keep1_;
  double* rbuf_[6];
  cplx* cbuf_[3];
  fftw_plan r2c_ = nullptr, c2r_ = nullptr;
};

}  // namespace surfvort
