#include "surfvort/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfvort/spectral.hpp"

namespace surfvort {

namespace {

// Fejer first-rule weights for int_{-1}^{1} f(x) dx at x_j = cos((j+1/2) pi / n).
std::vector<double> fejer1(int n) {
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    double th = (j + 0.5) * M_PI / n;
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k) s += std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
    w[j] = 2.0 / n * (1.0 - 2.0 * s);
  }
  return w;
}

void same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("fields live on different grids");
}

void same_parity(const ScalarField& a, const ScalarField& b) {
  if (a.grid()->has_pole() && a.parity() != b.parity())
    throw std::logic_error("adding fields of different pole parity");
}

}  // namespace

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  if (spec.n_mu < 8 || spec.n_nu < 8 || spec.n_mu % 2 || spec.n_nu % 2)
    throw std::invalid_argument("grid dimensions must be even and >= 8 (got " +
                                std::to_string(spec.n_mu) + "x" + std::to_string(spec.n_nu) + ")");
  if (!(spec.mu_max > spec.mu_min) || !(spec.nu_max > spec.nu_min))
    throw std::invalid_argument("empty grid range");
  weights_.resize(spec.n_mu);
  if (has_pole()) {
    if (std::abs(spec.mu_min) > 1e-14 || std::abs(spec.mu_max - M_PI) > 1e-14)
      throw std::invalid_argument("pole grids need mu in [0, pi]");
    auto w = fejer1(spec.n_mu);
    for (int i = 0; i < spec.n_mu; ++i) weights_[i] = w[i] / std::sin(mu(i)) * step_nu();
  } else {
    std::fill(weights_.begin(), weights_.end(), step_mu() * step_nu());
  }
  engine_ = std::make_unique<SpectralEngine>(spec_);
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::create(const GridSpec& spec) {
  return std::shared_ptr<const Grid>(new Grid(spec));
}

std::shared_ptr<const Grid> Grid::for_chart(const Chart& chart, int n_mu, int n_nu, DiffScheme scheme) {
  const ChartDomain& d = chart.domain();
  GridSpec s;
  s.n_mu = n_mu;
  s.n_nu = n_nu;
  s.mu_min = d.mu_min;
  s.mu_max = d.mu_max;
  s.nu_min = d.nu_min;
  s.nu_max = d.nu_max;
  s.pole = d.pole;
  s.scheme = scheme;
  return create(s);
}

double Grid::mu(int i) const {
  return spec_.mu_min + (has_pole() ? i + 0.5 : static_cast<double>(i)) * step_mu();
}

ScalarField::ScalarField(GridPtr grid, double value, Parity parity)
    : grid_(std::move(grid)), v_(static_cast<size_t>(grid_->size()), value), parity_(parity) {}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(double, double)>& f,
                                Parity parity) {
  ScalarField out(grid, 0.0, parity);
  for (int i = 0; i < grid->n_mu(); ++i)
    for (int j = 0; j < grid->n_nu(); ++j) out(i, j) = f(grid->mu(i), grid->nu(j));
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}
double ScalarField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double ScalarField::max() const { return *std::max_element(v_.begin(), v_.end()); }
bool ScalarField::all_finite() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  same_grid(*this, o);
  same_parity(*this, o);
  for (size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
  same_grid(*this, o);
  same_parity(*this, o);
  for (size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}
ScalarField& ScalarField::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}
ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  same_grid(*this, o);
  same_parity(*this, o);
  for (size_t k = 0; k < v_.size(); ++k) v_[k] += s * o.v_[k];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  same_grid(a, b);
  ScalarField out(a.grid(), 0.0, a.parity() * b.parity());
  for (int k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  same_grid(a, b);
  ScalarField out(a.grid(), 0.0, a.parity() * b.parity());
  for (int k = 0; k < a.size(); ++k) out[k] = a[k] / b[k];
  return out;
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f, Parity parity) {
  ScalarField out(a.grid(), 0.0, parity);
  for (int k = 0; k < a.size(); ++k) out[k] = f(a[k]);
  return out;
}

ScalarField d_mu(const ScalarField& f) {
  ScalarField out(f.grid());
  f.grid()->engine().derivatives(f, &out, nullptr);
  return out;
}

ScalarField d_nu(const ScalarField& f) {
  ScalarField out(f.grid());
  f.grid()->engine().derivatives(f, nullptr, &out);
  return out;
}

void gradient(const ScalarField& f, ScalarField& fmu, ScalarField& fnu) {
  fmu = ScalarField(f.grid());
  fnu = ScalarField(f.grid());
  f.grid()->engine().derivatives(f, &fmu, &fnu);
}

ScalarField plain_bracket(const ScalarField& f, const ScalarField& g) {
  ScalarField fm, fn, gm, gn;
  gradient(f, fm, fn);
  gradient(g, gm, gn);
  return fm * gn - fn * gm;
}

ScalarField bracket(const ScalarField& f, const ScalarField& g) {
  same_grid(f, g);
  return f.grid()->engine().bracket(f, g);
}

ScalarField dealias(const ScalarField& f) { return f.grid()->engine().filter(f); }
ScalarField remove_nyquist(const ScalarField& f) { return f.grid()->engine().strip_nyquist(f); }

double integrate(const ScalarField& F) {
  const Grid& g = *F.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_mu(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n_nu(); ++j) row += F(i, j);
    total += g.weight(i) * row;
  }
  return total;
}

double inner(const ScalarField& a, const ScalarField& b, const ScalarField& inv_jac) {
  const Grid& g = *a.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_mu(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n_nu(); ++j) row += a(i, j) * b(i, j) * inv_jac(i, j);
    total += g.weight(i) * row;
  }
  return total;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  same_grid(a, b);
  double m = 0.0;
  for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace surfvort
