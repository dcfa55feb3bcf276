#include "morpho/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "morpho/errors.hpp"
#include "morpho/kinetics.hpp"
#include "morpho/mechanics.hpp"

namespace morpho {

namespace {

// Positions of the half mesh on [-L, 0], increasing.
std::vector<double> half_mesh(const DomainSpec& spec, std::size_t n, std::size_t& edge_index) {
  const std::size_t n_fine = std::max<std::size_t>(4, (3 * n) / 4);
  const std::size_t n_wound =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(spec.L_w / (spec.L_w + spec.s) * n_fine)), 2,
                              n - 2);
  const double h = spec.L_w / static_cast<double>(n_wound);
  std::size_t n_margin = n_fine > n_wound ? n_fine - n_wound : 0;
  while (n_margin > 0 && spec.L_w + static_cast<double>(n_margin) * h >= spec.L - h) --n_margin;
  const std::size_t n_coarse = n - n_wound - n_margin;
  const double fine_start = -spec.L_w - static_cast<double>(n_margin) * h;
  const double coarse_length = fine_start + spec.L;

  // Coarse element k (k = 1 at the fine region) has length h * r^k.
  auto span_for = [&](double r) {
    double total = 0.0, len = h;
    for (std::size_t k = 0; k < n_coarse; ++k) {
      len *= r;
      total += len;
    }
    return total;
  };
  double lo = 1e-3, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (span_for(mid) < coarse_length ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);

  std::vector<double> x(n + 1);
  x[0] = -spec.L;
  // Coarse lengths from the outer boundary inward: h r^n_coarse, ..., h r.
  std::vector<double> coarse(n_coarse);
  double len = h;
  for (std::size_t k = 0; k < n_coarse; ++k) {
    len *= r;
    coarse[n_coarse - 1 - k] = len;
  }
  for (std::size_t k = 0; k < n_coarse; ++k) x[k + 1] = x[k] + coarse[k];
  x[n_coarse] = fine_start;
  for (std::size_t k = 1; k <= n_margin; ++k) x[n_coarse + k] = fine_start + static_cast<double>(k) * h;
  edge_index = n_coarse + n_margin;
  x[edge_index] = -spec.L_w;
  for (std::size_t k = 1; k <= n_wound; ++k)
    x[edge_index + k] = -spec.L_w + static_cast<double>(k) * h;
  x[n] = 0.0;
  return x;
}

struct ElementLocal {
  double h0, h1;
  LocalState mid;  // midpoint averages of the lagged iterate (unclipped)
};

}  // namespace

MovingMesh build_mesh(const DomainSpec& spec, std::size_t n_elements) {
  if (!spec.valid()) throw ConfigError("build_mesh: domain requires 0 < s <= L_w < L");
  if (n_elements < 8) throw ConfigError("build_mesh: at least 8 elements required");
  MovingMesh mesh;
  mesh.half_domain = spec.half_domain;
  if (spec.half_domain) {
    mesh.x = half_mesh(spec, n_elements, mesh.edge_left);
    mesh.edge_right = mesh.edge_left;
  } else {
    if (n_elements % 2 != 0) throw ConfigError("build_mesh: full-domain element count must be even");
    std::size_t edge = 0;
    const auto half = half_mesh(spec, n_elements / 2, edge);
    mesh.x = half;
    for (std::size_t k = half.size() - 1; k-- > 0;) mesh.x.push_back(-half[k]);
    mesh.edge_left = edge;
    mesh.edge_right = mesh.x.size() - 1 - edge;
  }
  mesh.x0 = mesh.x;
  if (!mesh.valid()) throw ConfigError("build_mesh: could not construct a valid mesh");
  return mesh;
}

ElementMatrix element_mass(double h) { return {{{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}}}; }

ElementMatrix element_stiffness(double h) { return {{{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}}}; }

ElementMatrix element_gradient() { return {{{-0.5, 0.5}, {-0.5, 0.5}}}; }

LinearSystem assemble(const SimulationState& previous, const SimulationState& lagged,
                      std::span<const ParameterSet> element_params, const DerivedParameters& d, double dt,
                      AssemblyDiagnostics* diag) {
  const MovingMesh& mesh = previous.mesh;
  const std::size_t n_nodes = mesh.nodes();
  const std::size_t n_el = mesh.elements();
  if (element_params.size() != n_el) throw std::invalid_argument("assemble: one ParameterSet per element required");

  const auto x_new = advected_coordinates(mesh, lagged.v, dt);
  const std::size_t band = 2 * kFieldCount - 1;
  LinearSystem sys{BandedMatrix(n_nodes * kFieldCount, band, band), std::vector<double>(n_nodes * kFieldCount, 0.0)};
  auto& A = sys.A;
  auto& b = sys.rhs;
  std::size_t clips = 0;

  const auto G = element_gradient();
  for (std::size_t e = 0; e < n_el; ++e) {
    const ParameterSet& p = element_params[e];
    const double h0 = mesh.length(e);
    const double h1 = x_new[e + 1] - x_new[e];
    if (!(h0 > 0.0) || !(h1 > 0.0))
      throw NumericalError("assemble: element " + std::to_string(e) + " has nonpositive length");
    const std::array<std::size_t, 2> nd = {e, e + 1};
    auto avg = [&](const std::vector<double>& f) { return 0.5 * (f[e] + f[e + 1]); };

    LocalState raw{avg(lagged.N), avg(lagged.M), avg(lagged.c), avg(lagged.rho), 0.0, 0.0, 0.0};
    const LocalState mid = clipped(raw, &clips);
    const ReactionSplit rs = split_reactions(mid, p, d);
    const double F = mid.N + mid.M;
    const double alpha = morpho_rate(mid.N, mid.M, mid.c, p);
    const double stiffness = p.E * std::sqrt(mid.rho);
    std::array<double, 2> traction_w{};
    for (int a = 0; a < 2; ++a) traction_w[a] = traction_weight(lagged.rho[nd[a]], p);

    const auto M0 = element_mass(h0);
    const auto M1 = element_mass(h1);
    const auto K1 = element_stiffness(h1);

    for (int a = 0; a < 2; ++a) {
      const std::size_t i = nd[a];
      auto row = [&](Field f) { return dof(i, f); };
      for (int c = 0; c < 2; ++c) {
        const std::size_t j = nd[c];
        auto col = [&](Field f) { return dof(j, f); };

        // Constituents: d/dt int z phi = int J phi' + R phi.
        A.add(row(Field::N), col(Field::N), M1[a][c] + dt * (p.D_F * F * K1[a][c] + rs.N_loss_rate * M1[a][c]));
        A.add(row(Field::N), col(Field::c), -dt * p.chi_F * mid.N * K1[a][c]);
        b[row(Field::N)] += M0[a][c] * previous.N[j];

        A.add(row(Field::M), col(Field::M), M1[a][c] + dt * (p.D_F * F * K1[a][c] + rs.M_loss_rate * M1[a][c]));
        A.add(row(Field::M), col(Field::c), -dt * p.chi_F * mid.M * K1[a][c]);
        A.add(row(Field::M), col(Field::N), -dt * rs.M_from_N_rate * M1[a][c]);
        b[row(Field::M)] += M0[a][c] * previous.M[j];

        A.add(row(Field::c), col(Field::c), M1[a][c] + dt * (p.D_c * K1[a][c] + rs.c_loss_rate * M1[a][c]));
        b[row(Field::c)] += M0[a][c] * previous.c[j];

        A.add(row(Field::rho), col(Field::rho), M1[a][c] * (1.0 + dt * rs.rho_loss_rate));
        A.add(row(Field::rho), col(Field::N), -dt * rs.rho_from_cells_rate * M1[a][c]);
        A.add(row(Field::rho), col(Field::M), -dt * rs.rho_from_cells_rate * p.eta_I * M1[a][c]);
        b[row(Field::rho)] += M0[a][c] * previous.rho[j];

        // Momentum: rho_t d/dt int v phi = int psi' phi - sigma phi'.
        A.add(row(Field::v), col(Field::v), p.rho_t * M1[a][c] + dt * p.mu * K1[a][c]);
        // int E sqrt(rho) eps phi_i' = stiffness * G[c][a] * eps_j (G[c][a] = phi_i' h / 2).
        A.add(row(Field::v), col(Field::eps), dt * stiffness * G[c][a]);
        A.add(row(Field::v), col(Field::M), -dt * G[a][c] * traction_w[c]);
        b[row(Field::v)] += p.rho_t * M0[a][c] * previous.v[j];

        // Strain: d/dt int eps phi + int alpha eps phi = int v' phi.
        A.add(row(Field::eps), col(Field::eps), M1[a][c] * (1.0 + dt * alpha));
        A.add(row(Field::eps), col(Field::v), -dt * G[a][c]);
        b[row(Field::eps)] += M0[a][c] * previous.eps[j];
      }
      const double half = 0.5 * h1 * dt;
      b[row(Field::N)] += half * rs.N_gain;
      b[row(Field::M)] += half * rs.M_gain;
      b[row(Field::c)] += half * rs.c_gain;
    }
  }
  if (diag) diag->clipped_values += clips;
  return sys;
}

void apply_bcs(LinearSystem& system, const MovingMesh& mesh, const BoundaryValues& bc) {
  auto fix = [&](std::size_t node, Field f, double value) {
    const std::size_t r = dof(node, f);
    system.A.zero_row(r);
    system.A.set(r, r, 1.0);
    system.rhs[r] = value;
  };
  auto outer = [&](std::size_t node) {
    fix(node, Field::N, bc.N);
    fix(node, Field::M, bc.M);
    fix(node, Field::c, bc.c);
    fix(node, Field::v, bc.v);
  };
  outer(0);
  const std::size_t last = mesh.nodes() - 1;
  if (mesh.half_domain)
    fix(last, Field::v, 0.0);
  else
    outer(last);
}

std::vector<double> solve(LinearSystem system, const std::array<double, kFieldCount>& field_scales) {
  auto& A = system.A;
  auto& b = system.rhs;
  const std::size_t n = A.size();
  // Unknown x_j = scale_j * y_j; solve for y with equilibrated rows.
  for (std::size_t j = 0; j < n; ++j) A.scale_column(j, field_scales[j % kFieldCount]);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = A.row_max_abs(i);
    if (m > 0.0) {
      A.scale_row(i, 1.0 / m);
      b[i] /= m;
    }
  }
  A.solve_in_place(b);
  for (std::size_t j = 0; j < n; ++j) b[j] *= field_scales[j % kFieldCount];
  return std::move(b);
}

std::vector<double> advected_coordinates(const MovingMesh& mesh, std::span<const double> v, double dt) {
  std::vector<double> x(mesh.x);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt * v[i];
  return x;
}

std::optional<MovingMesh> move_mesh(const MovingMesh& mesh, std::span<const double> v_new, double dt) {
  if (v_new.size() != mesh.nodes()) throw std::invalid_argument("move_mesh: velocity size mismatch");
  MovingMesh out = mesh;
  out.x = advected_coordinates(mesh, v_new, dt);
  if (!out.valid()) return std::nullopt;
  return out;
}

}  // namespace morpho
