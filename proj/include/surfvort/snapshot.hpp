// Field snapshot CSV: one header line, then N_mu * N_nu rows i,j,mu,nu,value.
#pragma once

#include <iosfwd>
#include <string>

#include "surfvort/grid.hpp"

namespace surfvort {

struct SnapshotHeader {
  double mu_min = 0, mu_max = 0, nu_min = 0, nu_max = 0;
  int n_mu = 0, n_nu = 0;
  std::string chart;
  double zeta = 0, time = 0;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_snapshot(std::ostream& os, const ScalarField& f, const std::string& chart, double zeta,
                    double time);
void write_snapshot(const std::string& path, const ScalarField& f, const std::string& chart,
                    double zeta, double time);

struct Snapshot {
  SnapshotHeader header;
  std::vector<double> values;  // row-major, i slow
};
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace surfvort
