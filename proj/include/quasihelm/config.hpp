#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quasihelm/media.hpp"
#include "quasihelm/pipeline.hpp"

namespace quasihelm {

// Flat key = value configuration ('#' comments) with command-line overrides.
class KeyValueConfig {
public:
  static KeyValueConfig from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;
  // Keys never read back (typos) — checked after experiment setup.
  std::vector<std::string> unused_keys() const;
  std::string echo() const;

private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> used_;
};

enum class ExperimentKind { halfline, wholeline, convergence, spectrum, fibrage };

struct RunConfig {
  ExperimentKind kind = ExperimentKind::halfline;
  MediumSpec medium;
  Frequency omega{Complex(8.0, 0.25)};
  PipelineConfig pipeline;
  std::string out_dir = ".";
  // experiment-specific knobs
  std::vector<double> h_list;
  int n_samples = 256;
  double trunc_target = 1e-10;
  double h_ref = 5e-4;
  double band = 0.05;
  double window = 0.0;  // 0: 4/theta2
  long export_samples = 2000;
  bool export_field = false;
  double radius_ref = 0.0;  // 0: compute via the truncated reference
  double fibrage_M = 80.0;
  double fibrage_step = 1e-2;

  std::string echo;
};

RunConfig build_run_config(ExperimentKind kind, const KeyValueConfig& kv);

}  // namespace quasihelm
