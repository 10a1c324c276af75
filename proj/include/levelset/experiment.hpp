#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levelset/adversary.hpp"
#include "levelset/ba_core.hpp"
#include "levelset/verification.hpp"

namespace levelset {

// Flat typed key-value configuration: one `key = value` per line, `#`
// comments, one nesting level spelled with dotted keys (fn.d, algo.c1, ...).
// Values are bare or double-quoted strings, numbers, booleans, or
// comma-separated numeric lists. All lookups throw ConfigError on missing
// keys or type mismatches.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

// Strategies selectable by id beyond the shipped bah/bag, for caller-supplied
// schemes. The factory receives the parsed config and the dimension.
using StrategyFactory =
    std::function<Strategy(const KeyValueConfig&, int dim)>;
void register_strategy(const std::string& id, StrategyFactory factory);

// A fully resolved experiment: function, algorithm, engine config, sweep and
// output settings. Numeric constraints are enforced while resolving, so a
// bad file fails before anything runs.
struct ExperimentConfig {
  KeyValueConfig raw;

  std::string fn_name;
  int dim = 1;
  std::string algo_name;
  double level = 0.0;
  Mode mode = Mode::LevelSet;
  StopRule stop = StopRule::max_depth(0);
  long long max_cubes = 1'000'000;
  int grid_n = 128;
  std::uint64_t seed = 1;

  std::optional<std::vector<double>> sweep_eps;  // geometric list
  int sweep_max_depth = 16;

  static ExperimentConfig resolve(const KeyValueConfig& raw);

  Oracle build_oracle() const;
  Strategy build_strategy() const;
  BAConfig build_ba_config() const;
  CheckOptions build_check_options() const;
};

// Output-set text export: one record per line,
// "depth:i idx:k1,...,kd rho:r vals:v1,...", vertex values in binary-counter
// order, constant surrogates emitting a single value. Values are printed
// with 17 significant digits so the dump round-trips bit-exactly.
void write_output_set(std::ostream& os, const OutputSet& S);
OutputSet read_output_set(std::istream& is, double level, Mode mode);

// Trace CSV with header
// iteration,i_cubes_bisected,cubes_retained,cumulative_queries.
void write_trace_csv(std::ostream& os, const RunTrace& trace);

}  // namespace levelset
