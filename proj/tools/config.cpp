#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "cli.hpp"

namespace pbtlab::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
  std::string s = trim(raw);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = s.substr(0, s.size() - 2);
    if (s.empty() || s == "+") return factor;
    if (s == "-") return -factor;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("not a number: '" + raw + "'");
  }
  return v * factor;
}

int parse_int(const std::string& raw) {
  const std::string s = trim(raw);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("not an integer: '" + raw + "'");
  }
  return v;
}

}  // namespace

Grid Grid::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return single(parse_number(parts[0]));
  if (parts.size() != 3) throw ConfigError("grid must be 'value' or 'min:max:count': " + text);
  Grid g{parse_number(parts[0]), parse_number(parts[1]), parse_int(parts[2])};
  g.validate("grid");
  return g;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) {
    v[k] = count == 1 ? min : (k + 1 == count ? max : min + (max - min) * k / (count - 1));
  }
  return v;
}

void Grid::validate(const char* name) const {
  if (count < 1) throw ConfigError(std::string(name) + ": count must be >= 1");
  if (!(min <= max)) throw ConfigError(std::string(name) + ": min must not exceed max");
  if (count == 1 && min != max) throw ConfigError(std::string(name) + ": count 1 needs min == max");
}

std::vector<int> parse_ports(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    const auto range = split(item, ':');
    if (range.size() == 1) {
      out.push_back(parse_int(range[0]));
    } else if (range.size() == 2) {
      const int a = parse_int(range[0]), b = parse_int(range[1]);
      if (a > b) throw ConfigError("port range must be ascending: " + item);
      for (int n = a; n <= b; ++n) out.push_back(n);
    } else {
      throw ConfigError("bad port specification: " + item);
    }
  }
  if (out.empty()) throw ConfigError("no port counts given");
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<PovmSource> parse_povm_modes(const std::string& text) {
  std::vector<PovmSource> out;
  for (const auto& raw : split(text, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    if (item == "noiseless" || item == "closed_form") {
      out.push_back(PovmSource::noiseless);
    } else if (item == "noise_adapted") {
      out.push_back(PovmSource::noise_adapted);
    } else if (item == "taylor") {
      out.push_back(PovmSource::taylor);
    } else {
      throw ConfigError("unknown povm mode: " + item);
    }
  }
  return out;
}

const char* to_string(Command c) {
  switch (c) {
    case Command::surface:
      return "surface";
    case Command::vs_n:
      return "vs-n";
    case Command::compare:
      return "compare";
    case Command::spinboson:
      return "spinboson";
    case Command::verify:
      return "verify";
  }
  return "unknown";
}

SweepConfig SweepConfig::defaults(Command c) {
  SweepConfig cfg;
  cfg.command = c;
  cfg.gamma = Grid{0.0, 1.0, 101};
  cfg.theta = Grid{0.0, std::numbers::pi, 101};
  cfg.tau = Grid{0.0, 8.0, 81};
  cfg.ohmicity = {2.0};
  cfg.temperature_ratio = {0.1, 0.9};
  cfg.povm_modes = {PovmSource::noiseless};
  switch (c) {
    case Command::surface:
      cfg.n_ports = {9};
      break;
    case Command::vs_n:
      cfg.n_ports = parse_ports("1:20");
      cfg.gamma = Grid{0.0, 1.0, 5};
      cfg.theta = Grid::single(0.0);
      break;
    case Command::compare:
      cfg.n_ports = {2, 5, 9};
      cfg.gamma = Grid{0.0, 1.0, 51};
      cfg.theta = Grid::single(0.0);
      cfg.povm_modes = {PovmSource::noiseless, PovmSource::noise_adapted};
      break;
    case Command::spinboson:
      cfg.n_ports = {9};
      break;
    case Command::verify:
      cfg.n_ports = parse_ports("2:5");
      break;
  }
  return cfg;
}

bool SweepConfig::wants(PovmSource s) const {
  return std::find(povm_modes.begin(), povm_modes.end(), s) != povm_modes.end();
}

int SweepConfig::worker_count() const {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void SweepConfig::validate() const {
  if (n_ports.empty()) throw ConfigError("no port counts given");
  for (int n : n_ports) {
    if (n < 1) throw ConfigError("port count must be >= 1");
    if (n > max_n) {
      throw ConfigError("port count " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_n) + " (use --max-n-override)");
    }
  }
  if (max_n < 1) throw ConfigError("--max-n-override must be >= 1");
  gamma.validate("--gamma");
  theta.validate("--theta");
  tau.validate("--tau");
  if (gamma.min < 0.0 || gamma.max > 1.0) throw ConfigError("--gamma must lie in [0, 1]");
  if (!std::isfinite(theta.min) || !std::isfinite(theta.max)) throw ConfigError("--theta not finite");
  if (tau.min < 0.0) throw ConfigError("--tau must be >= 0");
  if (threads < 0) throw ConfigError("--threads must be >= 0");
  if (taylor_order < 1) throw ConfigError("--order must be >= 1");
  if (command == Command::compare && (theta.min != 0.0 || theta.max != 0.0)) {
    throw ConfigError("compare runs at theta = 0 only");
  }
  if (command == Command::spinboson) {
    if (ohmicity.empty() || temperature_ratio.empty()) {
      throw ConfigError("spinboson needs --s and --temp-ratio");
    }
    for (double s : ohmicity) {
      if (!(s > 1.0)) throw ConfigError("--s must be > 1");
    }
    for (double t : temperature_ratio) {
      if (!(t >= 0.0)) throw ConfigError("--temp-ratio must be >= 0");
    }
    if (!(separation >= 0.0)) throw ConfigError("--ell must be >= 0");
    if (wants(PovmSource::taylor)) throw ConfigError("spinboson supports noiseless and noise_adapted");
  }
}

nlohmann::json SweepConfig::to_json() const {
  auto grid = [](const Grid& g) {
    return nlohmann::json{{"min", g.min}, {"max", g.max}, {"count", g.count}};
  };
  nlohmann::json modes = nlohmann::json::array();
  for (auto m : povm_modes) modes.push_back(pbtlab::to_string(m));
  return {
      {"command", to_string(command)},
      {"n_ports", n_ports},
      {"gamma_grid", grid(gamma)},
      {"theta_grid", grid(theta)},
      {"tau_grid", grid(tau)},
      {"spin_boson",
       {{"ohmicity", ohmicity}, {"temperature_ratio", temperature_ratio}, {"separation", separation}}},
      {"povm_modes", modes},
      {"taylor_order", taylor_order},
      {"output_path", output_path},
      {"format", format == Format::csv ? "csv" : "json"},
      {"seed", seed},
      {"threads", threads},
      {"max_n", max_n},
  };
}

}  // namespace pbtlab::cli
