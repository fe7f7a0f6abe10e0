// Noncanonical Poisson bracket of vorticity functionals and its structural diagnostics.
#pragma once

#include <functional>
#include <string>

#include "surfvort/dynamics.hpp"

namespace surfvort {

// dF/deps (omega + eps v) = int dF/domega v dmu dnu.
struct Functional {
  std::string name;
  std::function<double(const ScalarField&)> value;
  std::function<ScalarField(const ScalarField&)> derivative;
};

// H = 1/2 int Psi omega dmu dnu / J, dH/domega = Psi / J. The solver must outlive the functional.
Functional energy_functional(const PoissonSolver& solver);
// W = 1/2 int omega^2 dmu dnu / J
Functional enstrophy_functional(std::shared_ptr<const GeometryCache> cache);
// C = int f(omega) dmu dnu / J
Functional casimir_functional(std::shared_ptr<const GeometryCache> cache, std::function<double(double)> f,
                              std::function<double(double)> fprime, std::string name = "casimir");
// int a omega dmu dnu
Functional linear_functional(std::shared_ptr<const GeometryCache> cache, ScalarField a, std::string name = "linear");
// 1/2 int k omega^2 dmu dnu / J
Functional quadratic_functional(std::shared_ptr<const GeometryCache> cache, ScalarField k,
                                std::string name = "quadratic");

using BracketOp = std::function<ScalarField(const ScalarField&, const ScalarField&)>;
// The default: nodewise products of spectral (or fd4) derivatives.
BracketOp nodewise_bracket();

// {F, G} = int omega [J dF, J dG] dmu dnu
double poisson_bracket(const Functional& F, const Functional& G, const ScalarField& omega, const GeometryCache& c,
                       const BracketOp& br = nodewise_bracket());

// Cosymplectic operator  Jop g = -J [omega, J g]; {F, G} = <dF, Jop dG> in the dmu dnu pairing.
ScalarField cosymplectic(const ScalarField& omega, const ScalarField& g, const GeometryCache& c,
                         const BracketOp& br = nodewise_bracket());

// max|Jop dH - rhs_inviscid| / max|rhs_inviscid|, where Jop dH is the bracket
// {omega_k, H} of the nodal functionals omega_k and the right-hand side comes
// from dyn (its bracket and truncation are used on both sides).
double hamiltonian_rhs_check(const Dynamics& dyn, const SimState& s);

// |<f, Jop g> + <g, Jop f>| / (|<f, Jop g>| + |<g, Jop f>|)
double anti_self_adjointness(const ScalarField& omega, const ScalarField& f, const ScalarField& g,
                             const GeometryCache& c, const BracketOp& br = nodewise_bracket());

struct JacobiResult {
  double residual = 0.0;  // |{F,{G,H}} + {G,{H,F}} + {H,{F,G}}|
  double scale = 0.0;     // sum of the absolute values of the three terms
  double terms[3] = {0.0, 0.0, 0.0};
};

// Gradient of {G, H} assembled from first and second variations, with
// second variations by central differences of the derivatives at step
// 1e-6 (1 + |omega|) / |direction|.
ScalarField bracket_gradient(const Functional& G, const Functional& H, const ScalarField& omega,
                             const GeometryCache& c, const BracketOp& br = nodewise_bracket());
JacobiResult jacobi_residual(const Functional& F, const Functional& G, const Functional& H, const ScalarField& omega,
                             const GeometryCache& c, const BracketOp& br = nodewise_bracket());

}  // namespace surfvort
