#include "heatwell/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace heatwell {

namespace {

using nlohmann::json;

constexpr double kMembershipMargin = 1e-9;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config: " + field + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(path.empty() ? item.key() : path + "." + item.key(),
           "unknown field");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) {
    fail(field, "expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(field, "must be finite");
  }
  return x;
}

int get_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) {
    fail(field, "expected an integer");
  }
  return v.get<int>();
}

std::vector<double> get_number_array(const json& v, const std::string& field) {
  if (!v.is_array()) {
    fail(field, "expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void validate_membership(double a, double p, const std::string& field) {
  if (!(a - 0.125 >= kMembershipMargin)) {
    fail(field, "not in L^2(K): need a > 1/8");
  }
  if (!((p + 1.0) * a - 0.25 >= kMembershipMargin)) {
    fail(field, "not in L^{p+1}(K): need (p+1)a > 1/4");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + source_name + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: " + source_name +
                      ": top level must be a JSON object");
  }
  check_keys(doc, "", {"params", "grid", "solver", "initial", "sweep",
                       "well_family", "welldepth"});

  ExperimentConfig cfg;

  int n = cfg.params.n;
  double p = cfg.params.p;
  if (const json* jp = find(doc, "params")) {
    check_keys(*jp, "params", {"n", "p"});
    if (const json* v = find(*jp, "n")) n = get_integer(*v, "params.n");
    if (const json* v = find(*jp, "p")) p = get_number(*v, "params.p");
  }
  if (n < 3) {
    fail("params.n", "must be >= 3");
  }
  {
    const double pf = 1.0 + 2.0 / n;
    const double ps = static_cast<double>(n + 2) / (n - 2);
    if (!(p > pf) || !(p < ps)) {
      std::ostringstream msg;
      msg << "must lie in the open admissible window (1+2/n, (n+2)/(n-2)) = ("
          << pf << ", " << ps << ")";
      fail("params.p", msg.str());
    }
  }
  cfg.params = Parameters(n, p);

  if (const json* jg = find(doc, "grid")) {
    check_keys(*jg, "grid", {"r_max", "num_points"});
    if (const json* v = find(*jg, "r_max")) {
      cfg.grid.r_max = get_number(*v, "grid.r_max");
    }
    if (const json* v = find(*jg, "num_points")) {
      cfg.grid.num_points = get_integer(*v, "grid.num_points");
    }
  }
  if (!(cfg.grid.r_max > 0.0) || cfg.grid.r_max > 40.0) {
    fail("grid.r_max", "must lie in (0, 40]");
  }
  if (cfg.grid.num_points < 16) {
    fail("grid.num_points", "must be >= 16");
  }

  if (const json* js = find(doc, "solver")) {
    check_keys(*js, "solver",
               {"dt_init", "dt_min", "s_max", "blowup_threshold", "growth_cap",
                "record_every"});
    if (const json* v = find(*js, "dt_init")) {
      cfg.solver.dt_init = get_number(*v, "solver.dt_init");
    }
    if (const json* v = find(*js, "dt_min")) {
      cfg.solver.dt_min = get_number(*v, "solver.dt_min");
    }
    if (const json* v = find(*js, "s_max")) {
      cfg.solver.s_max = get_number(*v, "solver.s_max");
    }
    if (const json* v = find(*js, "blowup_threshold")) {
      cfg.solver.blowup_threshold = get_number(*v, "solver.blowup_threshold");
    }
    if (const json* v = find(*js, "growth_cap")) {
      cfg.solver.growth_cap = get_number(*v, "solver.growth_cap");
    }
    if (const json* v = find(*js, "record_every")) {
      cfg.solver.record_every = get_integer(*v, "solver.record_every");
    }
  }
  if (!(cfg.solver.dt_min > 0.0) || !(cfg.solver.dt_init >= cfg.solver.dt_min)) {
    fail("solver.dt_min", "must satisfy 0 < dt_min <= dt_init");
  }
  if (!(cfg.solver.s_max > 0.0)) {
    fail("solver.s_max", "must be > 0");
  }
  if (!(cfg.solver.blowup_threshold > 1.0)) {
    fail("solver.blowup_threshold", "must be > 1");
  }
  if (!(cfg.solver.growth_cap > 1.0)) {
    fail("solver.growth_cap", "must be > 1");
  }
  if (cfg.solver.record_every < 1) {
    fail("solver.record_every", "must be >= 1");
  }

  if (const json* ji = find(doc, "initial")) {
    check_keys(*ji, "initial", {"family", "a", "b"});
    if (const json* v = find(*ji, "family")) {
      if (!v->is_string()) fail("initial.family", "expected a string");
      cfg.initial.family = v->get<std::string>();
    }
    if (const json* v = find(*ji, "a")) {
      cfg.initial.a = get_number(*v, "initial.a");
    }
    if (const json* v = find(*ji, "b")) {
      cfg.initial.b = get_number(*v, "initial.b");
    }
  }
  if (cfg.initial.family != "gaussian") {
    fail("initial.family", "unsupported family '" + cfg.initial.family +
                               "' (only \"gaussian\")");
  }
  validate_membership(cfg.initial.a, cfg.params.p, "initial.a");

  if (const json* jw = find(doc, "sweep")) {
    check_keys(*jw, "sweep", {"a_values", "b_values"});
    if (const json* v = find(*jw, "a_values")) {
      cfg.sweep.a_values = get_number_array(*v, "sweep.a_values");
    }
    if (const json* v = find(*jw, "b_values")) {
      cfg.sweep.b_values = get_number_array(*v, "sweep.b_values");
    }
  }
  for (std::size_t i = 0; i < cfg.sweep.a_values.size(); ++i) {
    validate_membership(cfg.sweep.a_values[i], cfg.params.p,
                        "sweep.a_values[" + std::to_string(i) + "]");
  }

  if (const json* jf = find(doc, "well_family")) {
    check_keys(*jf, "well_family", {"a_min", "a_max", "a_count"});
    if (const json* v = find(*jf, "a_min")) {
      cfg.well_family.a_min = get_number(*v, "well_family.a_min");
    }
    if (const json* v = find(*jf, "a_max")) {
      cfg.well_family.a_max = get_number(*v, "well_family.a_max");
    }
    if (const json* v = find(*jf, "a_count")) {
      cfg.well_family.a_count = get_integer(*v, "well_family.a_count");
    }
  }
  if (!(cfg.well_family.a_min - 0.125 >= kMembershipMargin)) {
    fail("well_family.a_min", "must exceed 1/8 (L^2(K) membership)");
  }
  validate_membership(cfg.well_family.a_min, cfg.params.p, "well_family.a_min");
  if (!(cfg.well_family.a_max >= cfg.well_family.a_min)) {
    fail("well_family.a_max", "must be >= a_min");
  }
  if (cfg.well_family.a_count < 1) {
    fail("well_family.a_count", "must be >= 1");
  }

  if (const json* jd = find(doc, "welldepth")) {
    check_keys(*jd, "welldepth", {"eps_values"});
    if (const json* v = find(*jd, "eps_values")) {
      cfg.eps_values = get_number_array(*v, "welldepth.eps_values");
    }
  }
  for (std::size_t i = 0; i < cfg.eps_values.size(); ++i) {
    if (!(cfg.eps_values[i] > 0.0)) {
      fail("welldepth.eps_values[" + std::to_string(i) + "]", "must be > 0");
    }
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace heatwell
