#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace morpho {

/// Nodal unknowns, in the order they are interleaved in the linear system.
enum class Field : std::size_t { N = 0, M, c, rho, v, eps };
inline constexpr std::size_t kFieldCount = 6;
inline constexpr std::array<Field, kFieldCount> kAllFields = {Field::N, Field::M, Field::c,
                                                              Field::rho, Field::v, Field::eps};
std::string_view field_name(Field f);

/// 1D mesh whose nodes move with the tissue velocity.
struct MovingMesh {
  std::vector<double> x;   // current node positions, cm
  std::vector<double> x0;  // positions at t = 0
  bool half_domain = true;
  // Material node that starts at the wound edge (-L_w); on the full domain
  // `edge_right` is its mirror image at +L_w.
  std::size_t edge_left = 0;
  std::size_t edge_right = 0;

  std::size_t nodes() const { return x.size(); }
  std::size_t elements() const { return x.empty() ? 0 : x.size() - 1; }
  double length(std::size_t e) const { return x[e + 1] - x[e]; }
  std::vector<double> element_lengths() const;
  std::vector<double> initial_midpoints() const;
  /// Strictly increasing coordinates.
  bool valid() const;
};

struct SimulationState {
  std::vector<double> N, M, c, rho;  // cells/cm^3, cells/cm^3, g/cm^3, g/cm^3
  std::vector<double> v;             // cm/day
  std::vector<double> eps;           // effective Eulerian strain
  std::vector<double> u;             // displacement, cm
  double t = 0.0;                    // day
  MovingMesh mesh;

  std::vector<double>& field(Field f);
  const std::vector<double>& field(Field f) const;
  std::size_t nodes() const { return mesh.nodes(); }
  /// Every field sequence has one value per node.
  bool consistent() const;
};

}  // namespace morpho
