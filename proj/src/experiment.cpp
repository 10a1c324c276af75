#include "levelset/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::unordered_map<std::string, StrategyFactory>& strategy_registry() {
  static std::unordered_map<std::string, StrategyFactory> registry;
  return registry;
}
std::mutex registry_mutex;

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    cfg.map_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool KeyValueConfig::has(const std::string& key) const {
  return map_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = map_.find(key);
  if (it == map_.end()) throw ConfigError("missing key: " + key);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  auto it = map_.find(key);
  return it == map_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + " is not a number: " + s);
  }
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long KeyValueConfig::get_int(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + " is not an integer: " + s);
  }
}

long long KeyValueConfig::get_int(const std::string& key,
                                  long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("key " + key + " is not a boolean: " + s);
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field = trim(field);
    if (field.empty()) continue;
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ConfigError("key " + key + " has a non-numeric entry: " + field);
    }
  }
  if (out.empty()) throw ConfigError("key " + key + " is an empty list");
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  map_[key] = value;
}

void register_strategy(const std::string& id, StrategyFactory factory) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  strategy_registry()[id] = std::move(factory);
}

ExperimentConfig ExperimentConfig::resolve(const KeyValueConfig& raw) {
  ExperimentConfig cfg;
  cfg.raw = raw;
  cfg.fn_name = raw.get_string("fn", "");
  cfg.dim = static_cast<int>(raw.get_int("fn.d", 1));
  if (cfg.dim < 1) throw ConfigError("fn.d must be >= 1");
  cfg.algo_name = raw.get_string("algo", "");
  cfg.level = raw.get_double("level", 0.0);

  const std::string mode = raw.get_string("mode", "levelset");
  if (mode == "levelset")
    cfg.mode = Mode::LevelSet;
  else if (mode == "sublevel")
    cfg.mode = Mode::Sublevel;
  else if (mode == "superlevel")
    cfg.mode = Mode::Superlevel;
  else
    throw ConfigError("mode must be levelset|sublevel|superlevel");

  const std::string stop = raw.get_string("stop", "depth");
  try {
    if (stop == "accuracy")
      cfg.stop = StopRule::target_accuracy(raw.get_double("stop.eps"));
    else if (stop == "depth")
      cfg.stop = StopRule::max_depth(static_cast<int>(raw.get_int("stop.depth", 4)));
    else if (stop == "queries")
      cfg.stop = StopRule::max_queries(raw.get_int("stop.queries"));
    else
      throw ConfigError("stop must be accuracy|depth|queries");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  cfg.max_cubes = raw.get_int("max_cubes", 1'000'000);
  if (cfg.max_cubes < 1) throw ConfigError("max_cubes must be >= 1");
  cfg.grid_n = static_cast<int>(raw.get_int("grid_n", 128));
  if (cfg.grid_n < 2) throw ConfigError("grid_n must be >= 2");
  cfg.seed = static_cast<std::uint64_t>(raw.get_int("seed", 1));

  if (raw.has("sweep.start")) {
    const double start = raw.get_double("sweep.start");
    const double factor = raw.get_double("sweep.factor");
    const long long count = raw.get_int("sweep.count");
    if (!(start > 0.0) || !(factor > 0.0) || factor >= 1.0 || count < 3)
      throw ConfigError("sweep needs start > 0, factor in (0,1), count >= 3");
    std::vector<double> eps;
    double e = start;
    for (long long i = 0; i < count; ++i, e *= factor) eps.push_back(e);
    cfg.sweep_eps = std::move(eps);
    cfg.sweep_max_depth = static_cast<int>(raw.get_int("sweep.max_depth", 16));
  }

  // Validate the engine parameters now so bad files are rejected up front.
  if (!cfg.algo_name.empty()) {
    BAConfig probe = cfg.build_ba_config();
    probe.validate();
  }
  return cfg;
}

Oracle ExperimentConfig::build_oracle() const {
  if (fn_name == "affine") {
    std::vector<double> coeffs =
        raw.has("fn.coeffs") ? raw.get_list("fn.coeffs")
                             : std::vector<double>(dim, 0.0);
    if (!raw.has("fn.coeffs")) coeffs[0] = 1.0;
    if (static_cast<int>(coeffs.size()) != dim)
      throw ConfigError("fn.coeffs length must equal fn.d");
    return make_affine(dim, coeffs, raw.get_double("fn.offset", 0.0),
                       raw.get_double("fn.c1", 1.0));
  }
  if (fn_name == "quadratic") {
    return make_quadratic_f0(raw.get_double("fn.a", level), dim);
  }
  if (fn_name == "bump") {
    const std::vector<double> z = raw.get_list("fn.z");
    if (static_cast<int>(z.size()) != dim)
      throw ConfigError("fn.z length must equal fn.d");
    return make_bump_function(raw.get_double("fn.alpha"),
                              raw.get_double("fn.eta"), z);
  }
  if (fn_name == "spike") {
    const std::vector<double> z = raw.get_list("fn.z");
    if (static_cast<int>(z.size()) != dim)
      throw ConfigError("fn.z length must equal fn.d");
    return make_spike(raw.get_double("fn.eps"), raw.get_double("fn.c", 1.0),
                      raw.get_double("fn.gamma", 1.0), z);
  }
  if (fn_name == "constant") {
    return make_constant(dim, raw.get_double("fn.value", level));
  }
  throw ConfigError("unknown fn: " + fn_name);
}

Strategy ExperimentConfig::build_strategy() const {
  if (algo_name == "bah") {
    return bah_strategy(raw.get_double("algo.c", 1.0),
                        raw.get_double("algo.gamma", 1.0));
  }
  if (algo_name == "bag") {
    return bag_strategy(raw.get_double("algo.c1", 1.0),
                        raw.get_double("algo.gamma1", 1.0), dim);
  }
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = strategy_registry().find(algo_name);
    if (it != strategy_registry().end()) return it->second(raw, dim);
  }
  throw ConfigError("unknown algo: " + algo_name);
}

BAConfig ExperimentConfig::build_ba_config() const {
  const Strategy strategy = build_strategy();
  BAConfig ba;
  ba.level = level;
  ba.tol_b = strategy.tol_b;
  ba.tol_beta = strategy.tol_beta;
  ba.queries_per_cube = strategy.k;
  ba.mode = mode;
  ba.stop = stop;
  ba.max_cubes = max_cubes;
  return ba;
}

CheckOptions ExperimentConfig::build_check_options() const {
  CheckOptions opts;
  opts.seed = seed;
  opts.containment_samples =
      static_cast<int>(raw.get_int("check.containment_samples", 1000));
  opts.per_cube_samples =
      static_cast<int>(raw.get_int("check.per_cube_samples", 1000));
  opts.skip_containment = raw.get_bool("check.skip_containment", false);
  return opts;
}

void write_output_set(std::ostream& os, const OutputSet& S) {
  for (const OutputRecord& rec : S.records()) {
    os << cube_to_record(rec.cube) << " rho:" << format_value(S.rho())
       << " vals:";
    for (std::size_t i = 0; i < rec.approx.values.size(); ++i) {
      if (i) os << ',';
      os << format_value(rec.approx.values[i]);
    }
    os << '\n';
  }
}

OutputSet read_output_set(std::istream& is, double level, Mode mode) {
  std::vector<OutputRecord> records;
  std::optional<double> rho;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto rho_pos = line.find(" rho:");
    const auto vals_pos = line.find(" vals:");
    if (rho_pos == std::string::npos || vals_pos == std::string::npos ||
        vals_pos <= rho_pos)
      throw ConfigError("bad output-set record: " + line);
    DyadicCube cube = cube_from_record(line.substr(0, rho_pos));
    const double r = std::stod(line.substr(rho_pos + 5, vals_pos - rho_pos - 5));
    if (rho && *rho != r)
      throw ConfigError("output-set records disagree on rho");
    rho = r;
    std::vector<double> values;
    std::stringstream vs(line.substr(vals_pos + 6));
    std::string field;
    while (std::getline(vs, field, ',')) values.push_back(std::stod(field));
    LocalApproximator approx =
        values.size() == 1
            ? LocalApproximator::constant(cube, values[0])
            : LocalApproximator::multilinear(cube, std::move(values));
    records.push_back(OutputRecord{std::move(cube), std::move(approx)});
  }
  if (!rho) throw ConfigError("output-set file has no records");
  return OutputSet(0, level, *rho, mode, std::move(records));
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
  os << "iteration,i_cubes_bisected,cubes_retained,cumulative_queries\n";
  for (const IterationEntry& e : trace.entries) {
    os << e.iteration << ',' << e.cubes_bisected << ',' << e.cubes_retained
       << ',' << e.cumulative_queries << '\n';
  }
}

}  // namespace levelset
