#include "morpho/parameters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "morpho/errors.hpp"

namespace morpho {

namespace detail {
extern const std::string_view kBundledParameters;
}

namespace {

#define MORPHO_FIELD(name) ParameterField{#name, &ParameterSet::name}
constexpr std::array kFields = {
    MORPHO_FIELD(D_F),       MORPHO_FIELD(chi_F),    MORPHO_FIELD(D_c),       MORPHO_FIELD(r_F),
    MORPHO_FIELD(r_F_max),   MORPHO_FIELD(a_c_I),    MORPHO_FIELD(a_c_II),    MORPHO_FIELD(a_c_III),
    MORPHO_FIELD(a_c_IV),    MORPHO_FIELD(kappa_F),  MORPHO_FIELD(k_F),       MORPHO_FIELD(delta_N),
    MORPHO_FIELD(delta_M),   MORPHO_FIELD(k_c),      MORPHO_FIELD(delta_c),   MORPHO_FIELD(eta_I),
    MORPHO_FIELD(eta_II),    MORPHO_FIELD(k_rho_max), MORPHO_FIELD(delta_rho), MORPHO_FIELD(mu),
    MORPHO_FIELD(E),         MORPHO_FIELD(xi),       MORPHO_FIELD(R),         MORPHO_FIELD(zeta),
    MORPHO_FIELD(rho_t),     MORPHO_FIELD(N_bar),    MORPHO_FIELD(M_bar),     MORPHO_FIELD(c_bar),
    MORPHO_FIELD(rho_bar),   MORPHO_FIELD(N_tilde),  MORPHO_FIELD(c_tilde),   MORPHO_FIELD(rho_tilde),
    MORPHO_FIELD(L),         MORPHO_FIELD(L_w),      MORPHO_FIELD(s),         MORPHO_FIELD(T_end),
};
#undef MORPHO_FIELD

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void check(ValidationReport& r, std::string name, bool ok, double lhs, double rhs, std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, lhs, rhs, std::move(detail)});
}

void read_means(const nlohmann::json& j, std::map<std::string, double, std::less<>>& out) {
  for (const auto& [key, value] : j.items()) {
    if (!find_parameter_field(key)) throw ConfigError("parameter table: unknown key '" + key + "'");
    out[key] = value.get<double>();
  }
}

}  // namespace

std::span<const ParameterField> parameter_fields() { return kFields; }

const ParameterField* find_parameter_field(std::string_view key) {
  for (const auto& f : kFields)
    if (f.key == key) return &f;
  return nullptr;
}

double get_parameter(const ParameterSet& p, std::string_view key) {
  const auto* f = find_parameter_field(key);
  if (!f) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  return p.*(f->member);
}

void set_parameter(ParameterSet& p, std::string_view key, double value) {
  const auto* f = find_parameter_field(key);
  if (!f) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  p.*(f->member) = value;
}

double derive_q(const ParameterSet& p) {
  if (p.N_bar <= 1.0) throw std::domain_error("derive_q: N_bar must exceed 1");
  const double crowding = 1.0 - p.kappa_F * p.N_bar;
  if (crowding <= 0.0) throw std::domain_error("derive_q: kappa_F * N_bar must be below 1");
  if (p.r_F <= 0.0 || p.delta_N <= 0.0) throw std::domain_error("derive_q: r_F and delta_N must be positive");
  return (std::log(p.delta_N) - std::log(p.r_F * crowding)) / std::log(p.N_bar);
}

double derive_k_rho(const ParameterSet& p) { return p.delta_rho * p.rho_bar * p.rho_bar; }

DerivedParameters derive(const ParameterSet& p) { return {derive_q(p), derive_k_rho(p)}; }

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ConstraintCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate(const ParameterSet& p) {
  ValidationReport r;
  const double kc_bound = p.delta_c * p.a_c_II * p.rho_bar;
  check(r, "k_c_stability", p.k_c <= kc_bound, p.k_c, kc_bound, "k_c <= delta_c * a_c_II * rho_bar");

  const double mu_bound = std::sqrt(std::max(0.0, p.rho_t * p.E * std::sqrt(std::max(0.0, p.rho_bar)))) / std::numbers::pi;
  check(r, "mu_stability", p.mu >= mu_bound, p.mu, mu_bound,
        "mu >= sqrt(rho_t * E * sqrt(rho_bar)) / pi (interpretation of the density and modulus)");

  std::vector<std::string> nonpositive;
  for (const auto& f : kFields) {
    if (f.key == "M_bar" || f.key == "c_bar") continue;
    if (!(p.*(f.member) > 0.0)) nonpositive.emplace_back(f.key);
  }
  std::string list;
  for (const auto& n : nonpositive) list += (list.empty() ? "" : ",") + n;
  check(r, "positive_constants", nonpositive.empty(), static_cast<double>(nonpositive.size()), 0.0, list);
  check(r, "zero_equilibria", p.M_bar == 0.0 && p.c_bar == 0.0, p.M_bar, p.c_bar, "M_bar = c_bar = 0");
  check(r, "N_tilde_range", p.N_tilde > 0.0 && p.N_tilde <= p.N_bar, p.N_tilde, p.N_bar, "0 < N_tilde <= N_bar");
  check(r, "rho_tilde_range", p.rho_tilde >= 0.0 && p.rho_tilde <= p.rho_bar, p.rho_tilde, p.rho_bar,
        "0 <= rho_tilde <= rho_bar");
  check(r, "wound_inside_domain", p.L_w > 0.0 && p.L_w < p.L, p.L_w, p.L, "0 < L_w < L");
  check(r, "ramp_inside_wound", p.s > 0.0 && p.s <= p.L_w, p.s, p.L_w, "0 < s <= L_w");
  check(r, "crowding", p.kappa_F * p.N_bar < 1.0, p.kappa_F * p.N_bar, 1.0, "kappa_F * N_bar < 1");
  return r;
}

const ParameterTable& ParameterTable::bundled() {
  static const ParameterTable table = from_json_text(detail::kBundledParameters);
  return table;
}

ParameterTable ParameterTable::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("parameter table: ") + e.what());
  }
  ParameterTable t;
  t.schema_version_ = j.value("schema_version", 0);
  if (t.schema_version_ != 1) throw ConfigError("parameter table: unsupported schema_version");
  for (const auto& [key, value] : j.at("baseline").items()) set_parameter(t.baseline_, key, value.get<double>());

  std::map<std::string, double, std::less<>> sd;
  if (j.contains("heterogeneity_sd")) read_means(j["heterogeneity_sd"], sd);
  for (const auto& [k, v] : sd)
    if (v < 0.0) throw ConfigError("parameter table: negative heterogeneity sd for " + k);

  for (int id = 1; id <= 4; ++id) {
    auto& prof = t.classes_[id - 1];
    prof.class_id = id;
    const auto& cj = j.at("classes").at(std::to_string(id));
    prof.ages = cj.value("ages", "");
    read_means(cj.at("means"), prof.means);
    prof.heterogeneity_sd = sd;
    if (cj.contains("heterogeneity_sd")) read_means(cj["heterogeneity_sd"], prof.heterogeneity_sd);
  }
  return t;
}

const AgeClassProfile& ParameterTable::profile(int class_id) const {
  if (class_id < 1 || class_id > 4)
    throw std::invalid_argument("unknown age class " + std::to_string(class_id) + " (expected 1..4)");
  return classes_[class_id - 1];
}

ParameterSet ParameterTable::age_profile(int class_id) const {
  ParameterSet p = baseline_;
  for (const auto& [key, value] : profile(class_id).means) set_parameter(p, key, value);
  return p;
}

ParameterSet age_profile(int class_id) { return ParameterTable::bundled().age_profile(class_id); }

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

std::map<std::string, std::string, std::less<>> parse_key_values(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("parameter file: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_number()) {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os.precision(17);
        os << value.get<double>();
        kv[key] = os.str();
      } else if (value.is_string()) {
        kv[key] = value.get<std::string>();
      } else if (value.is_boolean()) {
        kv[key] = value.get<bool>() ? "true" : "false";
      } else {
        throw ConfigError("parameter file: value of '" + key + "' must be a scalar");
      }
    }
    return kv;
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("parameter file line " + std::to_string(line_no) + ": expected 'name = value'");
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

std::map<std::string, std::string, std::less<>> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open parameter file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_overrides(ParameterSet& p, const std::map<std::string, std::string, std::less<>>& kv,
                     std::map<std::string, std::string, std::less<>>* leftovers) {
  for (const auto& [key, value] : kv) {
    if (find_parameter_field(key)) {
      set_parameter(p, key, parse_double(value));
    } else if (leftovers) {
      (*leftovers)[key] = value;
    } else {
      throw ConfigError("unknown parameter '" + key + "'");
    }
  }
}

void SpatialParameters::set_field(std::string_view key, std::vector<double> per_element) {
  const auto* f = find_parameter_field(key);
  if (!f) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  for (auto& [field, values] : fields_) {
    if (field == f) {
      values = std::move(per_element);
      return;
    }
  }
  fields_.emplace_back(f, std::move(per_element));
}

const std::vector<double>* SpatialParameters::field(std::string_view key) const {
  for (const auto& [f, values] : fields_)
    if (f->key == key) return &values;
  return nullptr;
}

std::vector<ParameterSet> SpatialParameters::per_element(std::size_t n_elements) const {
  std::vector<ParameterSet> out(n_elements, base_);
  for (const auto& [f, values] : fields_) {
    if (values.size() != n_elements)
      throw ConfigError("heterogeneous field '" + std::string(f->key) + "' does not match the element count");
    for (std::size_t e = 0; e < n_elements; ++e) out[e].*(f->member) = values[e];
  }
  return out;
}

ParameterSet SpatialParameters::spatial_mean(std::span<const double> element_lengths) const {
  ParameterSet p = base_;
  double total = 0.0;
  for (double h : element_lengths) total += h;
  for (const auto& [f, values] : fields_) {
    if (values.size() != element_lengths.size())
      throw ConfigError("heterogeneous field '" + std::string(f->key) + "' does not match the element count");
    double acc = 0.0;
    for (std::size_t e = 0; e < values.size(); ++e) acc += values[e] * element_lengths[e];
    p.*(f->member) = acc / total;
  }
  return p;
}

}  // namespace morpho
