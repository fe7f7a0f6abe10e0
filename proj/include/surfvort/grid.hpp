// Structured (mu, nu) grids, grid functions, derivatives, the coordinate
// bracket and quadrature.
#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "surfvort/geometry.hpp"

namespace surfvort {

// Behaviour under the across-pole reflection f(-theta, phi) = +/- f(theta, phi + pi).
// Only meaningful on pole grids; carried everywhere for uniformity.
enum class Parity { even = 1, odd = -1 };
inline Parity operator*(Parity a, Parity b) {
  return static_cast<int>(a) * static_cast<int>(b) > 0 ? Parity::even : Parity::odd;
}
inline Parity flip(Parity a) { return a == Parity::even ? Parity::odd : Parity::even; }

enum class DiffScheme { spectral, fd4 };

struct GridSpec {
  int n_mu = 32, n_nu = 64;
  double mu_min = 0.0, mu_max = 1.0;
  double nu_min = 0.0, nu_max = 1.0;
  PoleRule pole = PoleRule::none;
  DiffScheme scheme = DiffScheme::spectral;
};

class SpectralEngine;
class ScalarField;

class Grid {
 public:
  static std::shared_ptr<const Grid> create(const GridSpec& spec);
  static std::shared_ptr<const Grid> for_chart(const Chart& chart, int n_mu, int n_nu,
                                               DiffScheme scheme = DiffScheme::spectral);
  ~Grid();

  const GridSpec& spec() const { return spec_; }
  int n_mu() const { return spec_.n_mu; }
  int n_nu() const { return spec_.n_nu; }
  int size() const { return spec_.n_mu * spec_.n_nu; }
  bool has_pole() const { return spec_.pole != PoleRule::none; }
  double step_mu() const { return (spec_.mu_max - spec_.mu_min) / spec_.n_mu; }
  double step_nu() const { return (spec_.nu_max - spec_.nu_min) / spec_.n_nu; }
  double mu(int i) const;
  double nu(int j) const { return spec_.nu_min + j * step_nu(); }
  // Quadrature weight of every node in row i; integrate(F) = sum_ij weight(i) F_ij.
  double weight(int i) const { return weights_[i]; }

  SpectralEngine& engine() const { return *engine_; }

 private:
  explicit Grid(const GridSpec& spec);
  GridSpec spec_;
  std::vector<double> weights_;
  std::unique_ptr<SpectralEngine> engine_;
};

using GridPtr = std::shared_ptr<const Grid>;

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double value = 0.0, Parity parity = Parity::even);
  static ScalarField sample(GridPtr grid, const std::function<double(double, double)>& f,
                            Parity parity = Parity::even);

  const GridPtr& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity p) { parity_ = p; }
  int size() const { return static_cast<int>(v_.size()); }
  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * grid_->n_nu() + j]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * grid_->n_nu() + j]; }
  double& operator[](int k) { return v_[k]; }
  double operator[](int k) const { return v_[k]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double max_abs() const;
  double min() const;
  double max() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  // this += s * o
  ScalarField& axpy(double s, const ScalarField& o);

 private:
  GridPtr grid_;
  std::vector<double> v_;
  Parity parity_ = Parity::even;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
// Elementwise function; parity of the result must be supplied.
ScalarField map(const ScalarField& a, const std::function<double(double)>& f, Parity parity);

ScalarField d_mu(const ScalarField& f);
ScalarField d_nu(const ScalarField& f);
void gradient(const ScalarField& f, ScalarField& fmu, ScalarField& fnu);
// f_mu g_nu - f_nu g_mu, 2/3-rule dealiased for the spectral scheme.
ScalarField bracket(const ScalarField& f, const ScalarField& g);
// f_mu g_nu - f_nu g_mu formed nodewise, without dealiasing.
ScalarField plain_bracket(const ScalarField& f, const ScalarField& g);
// 2/3-rule low-pass (identity for fd4).
ScalarField dealias(const ScalarField& f);
// Removes the Nyquist modes, which the first-derivative operators annihilate.
ScalarField remove_nyquist(const ScalarField& f);

// sum of F against d mu d nu. On pole grids F is expected to carry the area
// element (odd parity), e.g. f / J.
double integrate(const ScalarField& F);
// Weighted inner product sum a b w / J with a per-node weight field.
double inner(const ScalarField& a, const ScalarField& b, const ScalarField& inv_jac);

double max_abs_diff(const ScalarField& a, const ScalarField& b);

}  // namespace surfvort
