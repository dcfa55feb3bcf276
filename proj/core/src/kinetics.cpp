#include "morpho/kinetics.hpp"

#include <cmath>

namespace morpho {

namespace {

double clip(double value, std::size_t* count) {
  if (value < 0.0) {
    if (count) ++*count;
    return 0.0;
  }
  return value;
}

// x^(1+q) with 0^(1+q) = 0 for the usual 1+q > 0.
double proliferation_power(double x, double q) { return x == 0.0 ? 0.0 : std::pow(x, 1.0 + q); }

}  // namespace

LocalState clipped(const LocalState& ls, std::size_t* clip_count) {
  LocalState out = ls;
  out.N = clip(ls.N, clip_count);
  out.M = clip(ls.M, clip_count);
  out.c = clip(ls.c, clip_count);
  out.rho = clip(ls.rho, clip_count);
  return out;
}

double mmp_level(double N, double M, double c, double rho, const ParameterSet& p) {
  return (N + p.eta_II * M) * rho / (1.0 + p.a_c_III * c);
}

ReactionSplit split_reactions(const LocalState& raw, const ParameterSet& p, const DerivedParameters& d,
                              std::size_t* clip_count) {
  const LocalState ls = clipped(raw, clip_count);
  const double F = ls.N + ls.M;
  const double crowding = 1.0 - p.kappa_F * F;
  const double g = mmp_level(ls.N, ls.M, ls.c, ls.rho, p);

  ReactionSplit r;
  r.N_gain = p.r_F * (1.0 + p.r_F_max * ls.c / (p.a_c_I + ls.c)) * crowding * proliferation_power(ls.N, d.q);
  r.N_loss_rate = p.k_F * ls.c + p.delta_N;

  r.M_gain = p.r_F * ((1.0 + p.r_F_max) * ls.c / (p.a_c_I + ls.c)) * crowding * proliferation_power(ls.M, d.q);
  r.M_from_N_rate = p.k_F * ls.c;
  r.M_loss_rate = p.delta_M;

  r.c_gain = p.k_c * ls.c / (p.a_c_II + ls.c) * (ls.N + p.eta_I * ls.M);
  r.c_loss_rate = p.delta_c * g;

  r.rho_from_cells_rate = d.k_rho * (1.0 + p.k_rho_max * ls.c / (p.a_c_IV + ls.c));
  r.rho_loss_rate = p.delta_rho * g;
  return r;
}

Reactions reactions(const LocalState& raw, const ParameterSet& p, const DerivedParameters& d, std::size_t* clip_count) {
  const LocalState ls = clipped(raw, clip_count);
  const ReactionSplit s = split_reactions(ls, p, d);
  return {s.N_gain - s.N_loss_rate * ls.N,
          s.M_gain + s.M_from_N_rate * ls.N - s.M_loss_rate * ls.M,
          s.c_gain - s.c_loss_rate * ls.c,
          s.rho_from_cells_rate * (ls.N + p.eta_I * ls.M) - s.rho_loss_rate * ls.rho};
}

Fluxes fluxes(const LocalState& ls, const ParameterSet& p) {
  const double F = ls.N + ls.M;
  return {-p.D_F * F * ls.grad_N + p.chi_F * ls.N * ls.grad_c,
          -p.D_F * F * ls.grad_M + p.chi_F * ls.M * ls.grad_c,
          -p.D_c * ls.grad_c,
          0.0};
}

}  // namespace morpho
