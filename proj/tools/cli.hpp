#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbtlab/povm.hpp"

namespace pbtlab::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kIoError = 2, kVerificationFailure = 3 };

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inclusive linear grid.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  // "v", "min:max:count"; numbers may carry a "pi" suffix ("pi", "0.5pi").
  static Grid parse(const std::string& text);
  static Grid single(double v) { return Grid{v, v, 1}; }
  std::vector<double> values() const;
  void validate(const char* name) const;
};

enum class Command { surface, vs_n, compare, spinboson, verify };
enum class Format { csv, json };

const char* to_string(Command c);

struct SweepConfig {
  Command command = Command::surface;
  std::vector<int> n_ports;
  Grid gamma;
  Grid theta;
  Grid tau;
  std::vector<double> ohmicity;
  std::vector<double> temperature_ratio;
  double separation = 3.0;
  std::vector<PovmSource> povm_modes;
  int taylor_order = 4000;
  std::string output_path;  // empty: stdout
  Format format = Format::csv;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  bool timestamp = true;
  int max_n = 12;
  bool inject_fault = false;

  static SweepConfig defaults(Command c);
  bool wants(PovmSource s) const;
  int worker_count() const;
  // Throws ConfigError.
  void validate() const;
  nlohmann::json to_json() const;
};

// "9", "1:20", "2,5,9"
std::vector<int> parse_ports(const std::string& text);
std::vector<double> parse_list(const std::string& text);
std::vector<PovmSource> parse_povm_modes(const std::string& text);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

Table run_surface(const SweepConfig& config);
Table run_vs_n(const SweepConfig& config);
Table run_compare(const SweepConfig& config);
Table run_spinboson(const SweepConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verify(const SweepConfig& config);

// Evaluates fn(0..count-1) on a worker pool; results in index order.
std::vector<std::vector<std::optional<double>>> parallel_rows(
    std::size_t count, int threads,
    const std::function<std::vector<std::optional<double>>(std::size_t)>& fn);

std::string format_double(double v);
std::string to_csv(const Table& table, const std::optional<std::string>& timestamp);
nlohmann::json to_json(const Table& table);
std::string utc_timestamp();

// Writes the table (and, for csv, a .json sidecar with the config).
void write_table(const Table& table, const SweepConfig& config);
void write_text(const std::string& path, const std::string& text);

int run(int argc, char** argv);

}  // namespace pbtlab::cli
