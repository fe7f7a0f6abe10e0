#include "surfvort/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "surfvort/equilibria.hpp"
#include "surfvort/fields.hpp"
#include "surfvort/snapshot.hpp"

namespace surfvort {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kCharts{"sphere", "torus", "torus_phiz", "flat"};
const std::set<std::string> kInitial{"random", "sphere_equilibrium", "modes", "zero", "file"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
T get(const pt::ptree& sec, const std::string& section, const std::string& key, T def) {
  auto node = sec.get_child_optional(key);
  if (!node) return def;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("[" + section + "] " + key + ": cannot parse '" + node->data() + "'");
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\"");
  auto e = s.find_last_not_of(" \t\"");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

RhsKind parse_rhs(const std::string& s) {
  if (s == "inviscid") return RhsKind::inviscid;
  if (s == "curvature_viscous") return RhsKind::curvature_viscous;
  if (s == "sphere_classic") return RhsKind::sphere_classic;
  throw ConfigError("[physics] rhs: unknown kind '" + s + "'");
}

AdvectionConvention parse_advection(const std::string& s) {
  if (s == "euclidean_J") return AdvectionConvention::euclidean_J;
  if (s == "riemannian_sqrtg") return AdvectionConvention::riemannian_sqrtg;
  throw ConfigError("[physics] advection: unknown convention '" + s + "'");
}

void check_keys(const pt::ptree& tree) {
  static const std::map<std::string, std::set<std::string>> schema{
      {"chart", {"name", "R", "r0", "T", "Lx", "Ly", "branch"}},
      {"grid", {"n_mu", "n_nu", "scheme"}},
      {"physics", {"sigma", "rho", "rhs", "advection", "truncation"}},
      {"run", {"dt", "n_steps", "diagnostics_every", "snapshot_times", "casimir_power"}},
      {"initial", {"type", "seed", "amplitude", "max_mode", "decay", "B0", "A1", "B1", "modes", "file"}},
      {"output", {"dir"}}};
  for (auto& [name, sec] : tree) {
    auto it = schema.find(name);
    if (it == schema.end()) throw ConfigError("unknown section [" + name + "]");
    for (auto& kv : sec)
      if (!it->second.count(kv.first)) throw ConfigError("[" + name + "] unknown key '" + kv.first + "'");
  }
}

}  // namespace

std::string to_string(RhsKind k) {
  switch (k) {
    case RhsKind::inviscid: return "inviscid";
    case RhsKind::curvature_viscous: return "curvature_viscous";
    case RhsKind::sphere_classic: return "sphere_classic";
  }
  return "?";
}

std::string to_string(AdvectionConvention a) {
  return a == AdvectionConvention::euclidean_J ? "euclidean_J" : "riemannian_sqrtg";
}

Chart ChartSpec::make() const {
  if (name == "sphere") return sphere_chart();
  if (name == "torus") return torus_chart(r0);
  if (name == "torus_phiz") return torus_phiz_chart(r0, branch == "inner" ? TorusBranch::inner : TorusBranch::outer);
  if (name == "flat") return flat_chart(Lx, Ly);
  throw ConfigError("[chart] name: unknown chart '" + name + "'");
}

double ChartSpec::zeta() const {
  if (name == "sphere") return R;
  if (name == "torus" || name == "torus_phiz") return T;
  return 0.0;
}

void ScenarioConfig::validate() const {
  if (!kCharts.count(chart.name)) throw ConfigError("[chart] name: unknown chart '" + chart.name + "'");
  if (chart.name == "sphere" && !(chart.R > 0)) throw ConfigError("[chart] R must be positive");
  if (chart.name == "torus" || chart.name == "torus_phiz") {
    if (!(chart.T > 0)) throw ConfigError("[chart] T must be positive");
    if (!(chart.r0 > 0)) throw ConfigError("[chart] r0 must be positive");
  }
  if (chart.branch != "outer" && chart.branch != "inner") throw ConfigError("[chart] branch must be outer or inner");
  if (!(chart.Lx > 0) || !(chart.Ly > 0)) throw ConfigError("[chart] Lx, Ly must be positive");
  if (grid.n_mu <= 0 || grid.n_nu <= 0) throw ConfigError("[grid] dimensions must be positive");
  if (!kInitial.count(initial.type)) throw ConfigError("[initial] type: unknown preset '" + initial.type + "'");
  if (initial.type == "file" && initial.file.empty()) throw ConfigError("[initial] file is required for type = file");
  if (initial.type == "sphere_equilibrium" && chart.name != "sphere")
    throw ConfigError("[initial] sphere_equilibrium needs the sphere chart");
  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[run]/[physics] ") + e.what());
  }
}

ScenarioConfig parse_config(std::istream& is) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  check_keys(tree);
  auto sec = [&](const char* n) { return tree.get_child(n, pt::ptree()); };
  ScenarioConfig c;
  auto ch = sec("chart");
  c.chart.name = get(ch, "chart", "name", c.chart.name);
  c.chart.R = get(ch, "chart", "R", c.chart.R);
  c.chart.r0 = get(ch, "chart", "r0", c.chart.r0);
  c.chart.T = get(ch, "chart", "T", c.chart.T);
  c.chart.Lx = get(ch, "chart", "Lx", c.chart.Lx);
  c.chart.Ly = get(ch, "chart", "Ly", c.chart.Ly);
  c.chart.branch = get(ch, "chart", "branch", c.chart.branch);

  auto gr = sec("grid");
  c.grid.n_mu = get(gr, "grid", "n_mu", c.grid.n_mu);
  c.grid.n_nu = get(gr, "grid", "n_nu", c.grid.n_nu);
  std::string scheme = get<std::string>(gr, "grid", "scheme", "spectral");
  if (scheme == "spectral") c.grid.scheme = DiffScheme::spectral;
  else if (scheme == "fd4") c.grid.scheme = DiffScheme::fd4;
  else throw ConfigError("[grid] scheme: unknown scheme '" + scheme + "'");

  auto ph = sec("physics");
  c.sim.sigma = get(ph, "physics", "sigma", c.sim.sigma);
  c.sim.rho = get(ph, "physics", "rho", c.sim.rho);
  c.sim.rhs = parse_rhs(get<std::string>(ph, "physics", "rhs", to_string(c.sim.rhs)));
  c.sim.advection = parse_advection(get<std::string>(ph, "physics", "advection", to_string(c.sim.advection)));
  c.sim.sphere_truncation = get(ph, "physics", "truncation", c.sim.sphere_truncation);

  auto rn = sec("run");
  c.sim.dt = get(rn, "run", "dt", c.sim.dt);
  c.sim.n_steps = get(rn, "run", "n_steps", c.sim.n_steps);
  c.sim.diagnostics_every = get(rn, "run", "diagnostics_every", c.sim.diagnostics_every);
  c.sim.casimir_power = get(rn, "run", "casimir_power", c.sim.casimir_power);
  for (auto& t : split(get<std::string>(rn, "run", "snapshot_times", ""), ',')) {
    try {
      size_t used = 0;
      c.sim.snapshot_times.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError("[run] snapshot_times: cannot parse '" + t + "'");
    }
  }

  auto in = sec("initial");
  c.initial.type = get(in, "initial", "type", c.initial.type);
  c.initial.seed = get(in, "initial", "seed", c.initial.seed);
  c.initial.amplitude = get(in, "initial", "amplitude", c.initial.amplitude);
  c.initial.max_mode = get(in, "initial", "max_mode", c.initial.max_mode);
  c.initial.decay = get(in, "initial", "decay", c.initial.decay);
  c.initial.B0 = get(in, "initial", "B0", c.initial.B0);
  c.initial.A1 = get(in, "initial", "A1", c.initial.A1);
  c.initial.B1 = get(in, "initial", "B1", c.initial.B1);
  c.initial.file = trim(get<std::string>(in, "initial", "file", ""));
  for (auto& term : split(get<std::string>(in, "initial", "modes", ""), ';')) {
    std::istringstream ts(term);
    ModeTerm m;
    std::string extra;
    if (!(ts >> m.a >> m.b >> m.amplitude) || (ts >> extra))
      throw ConfigError("[initial] modes: expected 'a b amplitude', got '" + term + "'");
    c.initial.modes.push_back(m);
  }

  c.output_dir = trim(get<std::string>(sec("output"), "output", "dir", c.output_dir));
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  return parse_config(f);
}

void write_config(std::ostream& os, const ScenarioConfig& c) {
  os << "[chart]\nname = " << c.chart.name << "\nR = " << fmt(c.chart.R) << "\nr0 = " << fmt(c.chart.r0)
     << "\nT = " << fmt(c.chart.T) << "\nLx = " << fmt(c.chart.Lx) << "\nLy = " << fmt(c.chart.Ly)
     << "\nbranch = " << c.chart.branch << "\n\n";
  os << "[grid]\nn_mu = " << c.grid.n_mu << "\nn_nu = " << c.grid.n_nu
     << "\nscheme = " << (c.grid.scheme == DiffScheme::spectral ? "spectral" : "fd4") << "\n\n";
  os << "[physics]\nsigma = " << fmt(c.sim.sigma) << "\nrho = " << fmt(c.sim.rho) << "\nrhs = " << to_string(c.sim.rhs)
     << "\nadvection = " << to_string(c.sim.advection) << "\ntruncation = " << c.sim.sphere_truncation << "\n\n";
  os << "[run]\ndt = " << fmt(c.sim.dt) << "\nn_steps = " << c.sim.n_steps
     << "\ndiagnostics_every = " << c.sim.diagnostics_every << "\nsnapshot_times = ";
  for (size_t i = 0; i < c.sim.snapshot_times.size(); ++i) os << (i ? ", " : "") << fmt(c.sim.snapshot_times[i]);
  os << "\ncasimir_power = " << c.sim.casimir_power << "\n\n";
  os << "[initial]\ntype = " << c.initial.type << "\nseed = " << c.initial.seed << "\namplitude = " << fmt(c.initial.amplitude)
     << "\nmax_mode = " << c.initial.max_mode << "\ndecay = " << fmt(c.initial.decay) << "\nB0 = " << fmt(c.initial.B0)
     << "\nA1 = " << fmt(c.initial.A1) << "\nB1 = " << fmt(c.initial.B1) << "\nmodes = ";
  for (size_t i = 0; i < c.initial.modes.size(); ++i)
    os << (i ? "; " : "") << c.initial.modes[i].a << " " << c.initial.modes[i].b << " " << fmt(c.initial.modes[i].amplitude);
  os << "\nfile = " << c.initial.file << "\n\n";
  os << "[output]\ndir = " << c.output_dir << "\n";
}

std::shared_ptr<const GeometryCache> make_cache(const ScenarioConfig& c) {
  Chart chart = c.chart.make();
  GridPtr g;
  try {
    g = Grid::for_chart(chart, c.grid.n_mu, c.grid.n_nu, c.grid.scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[grid] ") + e.what());
  }
  return std::make_shared<const GeometryCache>(g, chart, c.chart.zeta());
}

ScalarField initial_vorticity(const ScenarioConfig& c, const GeometryCache& cache) {
  const GridPtr& g = cache.grid;
  const InitialSpec& in = c.initial;
  if (in.type == "zero") return ScalarField(g, 0.0);
  if (in.type == "random") return random_band_limited(g, {in.seed, in.max_mode, in.decay, in.amplitude});
  if (in.type == "sphere_equilibrium") return sphere_equilibrium({in.B0, in.A1, in.B1}, cache).omega;
  if (in.type == "modes") {
    ScalarField f(g, 0.0);
    for (auto& m : in.modes) {
      if (g->has_pole()) {
        if (m.a < 0 || std::abs(m.b) > m.a) throw ConfigError("[initial] modes: need |m| <= l");
        f.axpy(m.amplitude, spherical_harmonic(g, m.a, m.b));
      } else {
        const GridSpec& s = g->spec();
        f.axpy(m.amplitude, ScalarField::sample(g, [&](double mu, double nu) {
          return std::cos(2 * M_PI * (m.a * (mu - s.mu_min) / (s.mu_max - s.mu_min) + m.b * (nu - s.nu_min) / (s.nu_max - s.nu_min)));
        }));
      }
    }
    return f;
  }
  // file
  Snapshot snap = read_snapshot(in.file);
  if (snap.header.n_mu != g->n_mu() || snap.header.n_nu != g->n_nu())
    throw ConfigError("[initial] file grid " + std::to_string(snap.header.n_mu) + "x" + std::to_string(snap.header.n_nu) +
                      " does not match the configured grid");
  ScalarField f(g, 0.0);
  for (int k = 0; k < f.size(); ++k) f[k] = snap.values[k];
  return f;
}

}  // namespace surfvort
