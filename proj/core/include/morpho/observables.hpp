#pragma once

#include <array>
#include <span>
#include <string_view>

#include "morpho/parameters.hpp"
#include "morpho/state.hpp"

namespace morpho {

struct Timeline;

/// Current wound length over the initial wound length, tracked through the
/// material node that starts at the wound edge.
double relative_surface_area(const MovingMesh& mesh);

/// Total strain energy density int E sqrt(rho) eps^2 dx over [-L, 0]
/// (equivalently half the integral over [-L, L]), element-midpoint quadrature
/// on the current mesh.
double strain_energy(const SimulationState& state, std::span<const ParameterSet> element_params);
double strain_energy(const SimulationState& state, const ParameterSet& p);

struct SummaryMetrics {
  double rsa_min = 1.0;
  double rsa_day = 0.0;
  double rsa_365 = 1.0;
  double sed_max = 0.0;
  double sed_day = 0.0;

  bool operator==(const SummaryMetrics&) const = default;
};

inline constexpr std::size_t kMetricCount = 5;
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {"RSA_min", "RSA_day", "RSA_365",
                                                                           "SED_max", "SED_day"};
double metric(const SummaryMetrics& m, std::size_t index);

/// Extremes over the samples (earliest sample wins ties); RSA_365 is the
/// final sample. Throws std::invalid_argument for an empty or unsorted timeline.
SummaryMetrics summarize(const Timeline& tl);

}  // namespace morpho
