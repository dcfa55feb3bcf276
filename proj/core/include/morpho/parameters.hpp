#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace morpho {

/// Model constants, equilibria, wound initial levels and geometry.
///
/// Member names follow the ASCII keys of the parameter file. Units are the
/// cm / day / g / cells system; see `parameter_fields()` for the full list.
struct ParameterSet {
  // transport
  double D_F = 1e-6;      // cm^5/(cells day)
  double chi_F = 2e-3;    // cm^5/(g day)
  double D_c = 2.88e-3;   // cm^2/day
  // cell kinetics
  double r_F = 0.924;
  double r_F_max = 2.0;
  double a_c_I = 1e-8;
  double a_c_II = 1e-8;
  double a_c_III = 2e8;   // cm^3/g
  double a_c_IV = 1e-9;
  double kappa_F = 1e-6;  // cm^3/cells
  double k_F = 1.08e7;
  double delta_N = 2e-2;
  double delta_M = 6e-2;
  // signaling molecules and collagen
  double k_c = 3e-13;
  double delta_c = 5e-4;
  double eta_I = 2.0;
  double eta_II = 0.45;
  double k_rho_max = 10.0;
  double delta_rho = 6e-6;
  // mechanics
  double mu = 100.0;
  double E = 350.0;
  double xi = 4.4e-2;
  double R = 0.995;
  double zeta = 400.0;
  double rho_t = 1.09;
  // equilibria and wound levels
  double N_bar = 1e4;
  double M_bar = 0.0;
  double c_bar = 0.0;
  double rho_bar = 0.1125;
  double N_tilde = 2e3;
  double c_tilde = 1e-8;
  double rho_tilde = 0.0225;
  // geometry and horizon
  double L = 10.0;
  double L_w = 3.6;
  double s = 2.5;
  double T_end = 365.0;

  bool operator==(const ParameterSet&) const = default;
};

/// Closures that make the unwounded state an exact equilibrium.
struct DerivedParameters {
  double q = 0.0;      // exponent in the logistic proliferation terms
  double k_rho = 0.0;  // collagen secretion rate
};

struct ParameterField {
  std::string_view key;
  double ParameterSet::*member;
};

/// Every ParameterSet member with its file key, in declaration order.
std::span<const ParameterField> parameter_fields();
const ParameterField* find_parameter_field(std::string_view key);

double get_parameter(const ParameterSet& p, std::string_view key);
void set_parameter(ParameterSet& p, std::string_view key, double value);

/// Exponent q solving R_N(N_bar, 0, 0, rho_bar) = 0.
/// Throws std::domain_error if kappa_F*N_bar >= 1 or N_bar <= 1.
double derive_q(const ParameterSet& p);
/// k_rho = delta_rho * rho_bar^2, solving R_rho(N_bar, 0, 0, rho_bar) = 0.
double derive_k_rho(const ParameterSet& p);
DerivedParameters derive(const ParameterSet& p);

struct ConstraintCheck {
  std::string name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;
  bool all_passed() const;
  const ConstraintCheck* find(std::string_view name) const;
};

/// Checks the stability constraints and the ParameterSet invariants. Never throws.
///
/// The viscosity bound is evaluated as mu >= sqrt(rho_t * E * sqrt(rho_bar)) / pi,
/// i.e. with the tissue density and the collagen-dependent modulus.
ValidationReport validate(const ParameterSet& p);

/// One age class: class-specific means plus per-parameter spatial SDs.
struct AgeClassProfile {
  int class_id = 2;
  std::string ages;
  std::map<std::string, double, std::less<>> means;
  std::map<std::string, double, std::less<>> heterogeneity_sd;
};

/// The versioned parameter tables (baseline + four age classes).
class ParameterTable {
 public:
  /// Tables bundled with the library at build time.
  static const ParameterTable& bundled();
  static ParameterTable from_json_text(std::string_view text);

  int schema_version() const { return schema_version_; }
  const ParameterSet& baseline() const { return baseline_; }
  const AgeClassProfile& profile(int class_id) const;
  /// Baseline with the class means applied. Class 2 returns the baseline.
  ParameterSet age_profile(int class_id) const;

 private:
  int schema_version_ = 0;
  ParameterSet baseline_;
  std::array<AgeClassProfile, 4> classes_;
};

/// Shorthand for ParameterTable::bundled().age_profile(class_id).
ParameterSet age_profile(int class_id);

/// Parses `name = value` lines (`#` starts a comment) or a flat JSON object.
/// Values that are not numbers are kept as strings.
std::map<std::string, std::string, std::less<>> read_key_values(const std::string& path);
std::map<std::string, std::string, std::less<>> parse_key_values(std::string_view text);

/// Applies every recognised key; unrecognised keys are returned (or throw
/// ConfigError when `leftovers` is null).
void apply_overrides(ParameterSet& p, const std::map<std::string, std::string, std::less<>>& kv,
                     std::map<std::string, std::string, std::less<>>* leftovers = nullptr);

double parse_double(std::string_view text);

/// Spatially heterogeneous realization: a base set plus per-element values
/// for a subset of parameters (material properties, fixed to the initial mesh).
class SpatialParameters {
 public:
  SpatialParameters() = default;
  explicit SpatialParameters(ParameterSet base) : base_(base) {}

  const ParameterSet& base() const { return base_; }
  ParameterSet& base() { return base_; }

  void set_field(std::string_view key, std::vector<double> per_element);
  bool is_uniform() const { return fields_.empty(); }
  const std::vector<double>* field(std::string_view key) const;
  std::size_t field_count() const { return fields_.size(); }

  /// One ParameterSet per element; fields must match n_elements.
  std::vector<ParameterSet> per_element(std::size_t n_elements) const;
  /// Base set with each heterogeneous entry replaced by its length-weighted mean.
  ParameterSet spatial_mean(std::span<const double> element_lengths) const;

 private:
  ParameterSet base_;
  std::vector<std::pair<const ParameterField*, std::vector<double>>> fields_;
};

}  // namespace morpho
