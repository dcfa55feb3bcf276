#pragma once

#include "morpho/parameters.hpp"
#include "morpho/state.hpp"

namespace morpho {

struct DomainSpec {
  double L = 10.0;    // half-domain length, cm
  double L_w = 3.6;   // wound half-length, cm
  double s = 2.5;     // ramp width, cm
  bool half_domain = true;  // simulate [-L, 0] with symmetry at x = 0

  bool valid() const { return s > 0.0 && s <= L_w && L_w < L; }
};

DomainSpec domain_from(const ParameterSet& p, bool half_domain = true);

/// Far-field level outside [-L_w, L_w], wound level inside [-L_w+s, L_w-s]
/// and a half-period sine ramp of width s in between (mirrored on the right).
/// Throws std::out_of_range for |x| > L.
double initial_profile(double level_far, double level_wound, const DomainSpec& spec, double x);

/// N, c and rho follow `initial_profile`; M, u, v and eps start at zero.
SimulationState build_initial_state(const ParameterSet& p, const DomainSpec& spec, const MovingMesh& mesh);

/// Strongly imposed values at the outer boundary x = -L (and +L on the full domain).
struct BoundaryValues {
  double N = 0.0;
  double M = 0.0;
  double c = 0.0;
  double v = 0.0;
};
BoundaryValues boundary_values(const ParameterSet& p);

/// Copy of `p` whose wound levels equal the healthy equilibria.
ParameterSet unwounded(ParameterSet p);

}  // namespace morpho
