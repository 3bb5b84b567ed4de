#include "sgdrates/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace sgdrates {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      fail(where, "unknown key \"" + item.key() + "\"");
    }
  }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required key \"" + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected a boolean");
  return v.get<bool>();
}

std::vector<double> as_number_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_number(x, where));
  return out;
}

std::vector<std::int64_t> as_integer_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of integers");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_integer(x, where));
  return out;
}

void check_schema_version(const json& doc) {
  const json& v = require(doc, "/", "schema_version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != 1) {
    fail("/schema_version", "unsupported value (expected 1)");
  }
}

FeasibleConfig parse_feasible(const json& obj) {
  const std::string where = "/problem/feasible";
  check_keys(obj, where, {"kind", "radius", "center", "lower", "upper"});
  FeasibleConfig out;
  out.kind = as_string(require(obj, where, "kind"), where + "/kind");
  if (out.kind == "ball") {
    out.radius = as_number(require(obj, where, "radius"), where + "/radius");
    if (obj.contains("center")) {
      out.center = as_number_array(obj.at("center"), where + "/center");
    }
    if (obj.contains("lower") || obj.contains("upper")) {
      fail(where, "ball does not take lower/upper");
    }
  } else if (out.kind == "box") {
    out.lower = as_number_array(require(obj, where, "lower"), where + "/lower");
    out.upper = as_number_array(require(obj, where, "upper"), where + "/upper");
    if (obj.contains("radius") || obj.contains("center")) {
      fail(where, "box does not take radius/center");
    }
  } else {
    fail(where + "/kind", "unknown feasible kind \"" + out.kind + "\"");
  }
  return out;
}

ProblemConfig parse_problem(const json& obj) {
  const std::string where = "/problem";
  check_keys(obj, where, {"d", "mu", "L", "rotation_seed", "Q", "interior", "feasible", "x0"});
  ProblemConfig out;
  out.d = as_integer(require(obj, where, "d"), where + "/d");
  out.mu = as_number(require(obj, where, "mu"), where + "/mu");
  out.lips = as_number(require(obj, where, "L"), where + "/L");
  out.rotation_seed =
      static_cast<std::uint64_t>(as_integer(require(obj, where, "rotation_seed"), where + "/rotation_seed"));
  out.noise = as_number(require(obj, where, "Q"), where + "/Q");
  out.interior = as_bool(require(obj, where, "interior"), where + "/interior");
  out.feasible = parse_feasible(require(obj, where, "feasible"));
  if (obj.contains("x0")) {
    out.x0 = as_number_array(obj.at("x0"), where + "/x0");
  }
  return out;
}

struct ScheduleFields {
  ScheduleKind kind;
  double r = 0.0;
  double decay = 0.5;
};

ScheduleFields parse_schedule(const json& obj) {
  const std::string where = "/schedule";
  check_keys(obj, where, {"kind", "r", "alpha"});
  ScheduleFields out{ScheduleKind::Thm1};
  const std::string kind = as_string(require(obj, where, "kind"), where + "/kind");
  try {
    out.kind = schedule_kind_from_string(kind);
  } catch (const std::invalid_argument&) {
    fail(where + "/kind", "unknown schedule kind \"" + kind + "\"");
  }
  if (obj.contains("r")) out.r = as_number(obj.at("r"), where + "/r");
  if (obj.contains("alpha")) out.decay = as_number(obj.at("alpha"), where + "/alpha");
  return out;
}

json feasible_to_json(const FeasibleConfig& cfg) {
  json j;
  j["kind"] = cfg.kind;
  if (cfg.kind == "ball") {
    j["radius"] = cfg.radius;
    if (!cfg.center.empty()) j["center"] = cfg.center;
  } else {
    j["lower"] = cfg.lower;
    j["upper"] = cfg.upper;
  }
  return j;
}

json problem_to_json(const ProblemConfig& cfg) {
  json j;
  j["d"] = cfg.d;
  j["mu"] = cfg.mu;
  j["L"] = cfg.lips;
  j["rotation_seed"] = cfg.rotation_seed;
  j["Q"] = cfg.noise;
  j["interior"] = cfg.interior;
  j["feasible"] = feasible_to_json(cfg.feasible);
  if (!cfg.x0.empty()) j["x0"] = cfg.x0;
  return j;
}

json schedule_to_json(ScheduleKind kind, double r, double decay) {
  json j;
  j["kind"] = std::string(to_string(kind));
  if (kind == ScheduleKind::GeneralizedR) j["r"] = r;
  if (kind == ScheduleKind::Exponential) j["alpha"] = decay;
  return j;
}

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                      e.what());
  }
}

void apply_override(nlohmann::json& doc, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override \"" + key_value + "\": expected key=value");
  }
  const std::string path = key_value.substr(0, eq);
  const std::string raw = key_value.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare strings are allowed unquoted
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("override \"" + key_value + "\": empty path segment");
    if (!node->is_object()) {
      throw ConfigError("override \"" + key_value + "\": path does not address an object");
    }
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  check_keys(doc, "/",
             {"schema_version", "problem", "schedule", "T_grid", "trials_per_T", "theta_grid",
              "base_seed", "output_path"});
  check_schema_version(doc);
  ExperimentConfig cfg;
  cfg.problem = parse_problem(require(doc, "/", "problem"));
  const ScheduleFields sched = parse_schedule(require(doc, "/", "schedule"));
  cfg.schedule_kind = sched.kind;
  cfg.schedule_r = sched.r;
  cfg.schedule_decay = sched.decay;
  cfg.T_grid = as_integer_array(require(doc, "/", "T_grid"), "/T_grid");
  cfg.trials_per_T = as_integer(require(doc, "/", "trials_per_T"), "/trials_per_T");
  if (doc.contains("theta_grid")) {
    cfg.theta_grid = as_number_array(doc.at("theta_grid"), "/theta_grid");
  }
  cfg.base_seed = static_cast<std::uint64_t>(as_integer(require(doc, "/", "base_seed"), "/base_seed"));
  if (doc.contains("output_path")) {
    cfg.output_path = as_string(doc.at("output_path"), "/output_path");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["problem"] = problem_to_json(cfg.problem);
  j["schedule"] = schedule_to_json(cfg.schedule_kind, cfg.schedule_r, cfg.schedule_decay);
  j["T_grid"] = cfg.T_grid;
  j["trials_per_T"] = cfg.trials_per_T;
  j["theta_grid"] = cfg.theta_grid;
  j["base_seed"] = cfg.base_seed;
  j["output_path"] = cfg.output_path;
  return j;
}

TailcheckConfig parse_tailcheck_config(const nlohmann::json& doc) {
  TailcheckConfig cfg;
  if (doc.contains("lemma0")) {
    check_keys(doc, "/", {"schema_version", "lemma0", "base_seed", "output_path"});
    check_schema_version(doc);
    const json& obj = doc.at("lemma0");
    const std::string where = "/lemma0";
    check_keys(obj, where, {"dist", "sigma", "B", "draws", "theta_grid"});
    cfg.lemma0_mode = true;
    const std::string dist = as_string(require(obj, where, "dist"), where + "/dist");
    if (dist == "gaussian") {
      cfg.dist = Lemma0TailSpec::Dist::Gaussian;
    } else if (dist == "shifted_exp_sum") {
      cfg.dist = Lemma0TailSpec::Dist::ShiftedExpSum;
    } else {
      fail(where + "/dist", "unknown distribution \"" + dist + "\"");
    }
    cfg.sigma = as_number(require(obj, where, "sigma"), where + "/sigma");
    cfg.bias = as_number(require(obj, where, "B"), where + "/B");
    cfg.trials = as_integer(require(obj, where, "draws"), where + "/draws");
    cfg.theta_grid = as_number_array(require(obj, where, "theta_grid"), where + "/theta_grid");
  } else {
    check_keys(doc, "/",
               {"schema_version", "problem", "schedule", "T", "trials", "theta_grid", "base_seed",
                "output_path"});
    check_schema_version(doc);
    cfg.lemma0_mode = false;
    cfg.problem = parse_problem(require(doc, "/", "problem"));
    const ScheduleFields sched = parse_schedule(require(doc, "/", "schedule"));
    cfg.schedule_kind = sched.kind;
    cfg.schedule_r = sched.r;
    cfg.schedule_decay = sched.decay;
    cfg.T = as_integer(require(doc, "/", "T"), "/T");
    if (cfg.T < 1) fail("/T", "must be >= 1");
    cfg.trials = as_integer(require(doc, "/", "trials"), "/trials");
    cfg.theta_grid = as_number_array(require(doc, "/", "theta_grid"), "/theta_grid");
    if (!bound_source_for(cfg.schedule_kind)) {
      fail("/schedule/kind", "tail check needs a schedule with a bound triple");
    }
  }
  if (doc.contains("base_seed")) {
    cfg.base_seed = static_cast<std::uint64_t>(as_integer(doc.at("base_seed"), "/base_seed"));
  }
  if (doc.contains("output_path")) {
    cfg.output_path = as_string(doc.at("output_path"), "/output_path");
  }
  return cfg;
}

nlohmann::json to_json(const TailcheckConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  if (cfg.lemma0_mode) {
    json l;
    l["dist"] = cfg.dist == Lemma0TailSpec::Dist::Gaussian ? "gaussian" : "shifted_exp_sum";
    l["sigma"] = cfg.sigma;
    l["B"] = cfg.bias;
    l["draws"] = cfg.trials;
    l["theta_grid"] = cfg.theta_grid;
    j["lemma0"] = l;
  } else {
    j["problem"] = problem_to_json(cfg.problem);
    j["schedule"] = schedule_to_json(cfg.schedule_kind, cfg.schedule_r, cfg.schedule_decay);
    j["T"] = cfg.T;
    j["trials"] = cfg.trials;
    j["theta_grid"] = cfg.theta_grid;
  }
  j["base_seed"] = cfg.base_seed;
  j["output_path"] = cfg.output_path;
  return j;
}

}  // namespace sgdrates
