#include "surfvort/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace surfvort {

namespace {
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_snapshot(std::ostream& os, const ScalarField& f, const std::string& chart, double zeta,
                    double time) {
  const GridSpec& s = f.grid()->spec();
  os << "# grid " << num(s.mu_min) << ' ' << num(s.mu_max) << ' ' << num(s.nu_min) << ' '
     << num(s.nu_max) << ' ' << s.n_mu << ' ' << s.n_nu << " chart=" << chart
     << " zeta=" << num(zeta) << " time=" << num(time) << '\n';
  const Grid& g = *f.grid();
  for (int i = 0; i < g.n_mu(); ++i)
    for (int j = 0; j < g.n_nu(); ++j)
      os << i << ',' << j << ',' << num(g.mu(i)) << ',' << num(g.nu(j)) << ',' << num(f(i, j))
         << '\n';
}

void write_snapshot(const std::string& path, const ScalarField& f, const std::string& chart,
                    double zeta, double time) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_snapshot(os, f, chart, zeta, time);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Snapshot read_snapshot(std::istream& is) {
  Snapshot snap;
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty snapshot");
  std::istringstream hs(line);
  std::string hash, word;
  hs >> hash >> word;
  SnapshotHeader& h = snap.header;
  if (hash != "#" || word != "grid") throw FormatError("bad snapshot header: " + line);
  hs >> h.mu_min >> h.mu_max >> h.nu_min >> h.nu_max >> h.n_mu >> h.n_nu;
  if (!hs) throw FormatError("bad snapshot header: " + line);
  std::string kv;
  bool have_chart = false;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw FormatError("bad header field: " + kv);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "chart") {
      h.chart = val;
      have_chart = true;
    } else if (key == "zeta") {
      h.zeta = std::stod(val);
    } else if (key == "time") {
      h.time = std::stod(val);
    }
  }
  if (!have_chart || h.n_mu <= 0 || h.n_nu <= 0) throw FormatError("incomplete header: " + line);
  snap.values.assign(static_cast<size_t>(h.n_mu) * h.n_nu, 0.0);
  size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int i, j;
    double mu, nu, v;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &i, &j, &mu, &nu, &v) != 5 || i < 0 ||
        j < 0 || i >= h.n_mu || j >= h.n_nu)
      throw FormatError("bad snapshot row: " + line);
    snap.values[static_cast<size_t>(i) * h.n_nu + j] = v;
    ++rows;
  }
  if (rows != snap.values.size()) throw FormatError("snapshot row count mismatch");
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_snapshot(is);
}

}  // namespace surfvort
