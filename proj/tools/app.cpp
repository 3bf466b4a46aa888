#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace pbtlab::cli {

namespace {

struct RawOptions {
  std::optional<std::string> n, gamma, theta, tau, s, temp_ratio, povm, format;
  std::optional<double> ell;
  std::optional<int> order, threads, max_n;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool no_timestamp = false;
  bool inject_fault = false;
};

void add_options(CLI::App* sub, RawOptions& o, bool verify) {
  sub->add_option("--n", o.n, "Port count: 9, 1:20 or 2,5,9");
  sub->add_option("--gamma", o.gamma, "|Gamma| grid: value or min:max:count");
  sub->add_option("--theta", o.theta, "theta grid; numbers may end in pi");
  sub->add_option("--tau", o.tau, "Dimensionless time grid");
  sub->add_option("--s", o.s, "Ohmicity exponents, comma separated");
  sub->add_option("--temp-ratio", o.temp_ratio, "T/Lambda values, comma separated");
  sub->add_option("--ell", o.ell, "Separation r*Lambda/c");
  sub->add_option("--povm", o.povm, "noiseless, noise_adapted, taylor (comma separated)");
  sub->add_option("--order", o.order, "Taylor series order");
  sub->add_option("--out", o.out, "Output path (default stdout)");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  sub->add_option("--seed", o.seed, "Seed for randomized control checks");
  sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at metadata");
  sub->add_option("--max-n-override", o.max_n, "Raise the port-count cap (default 12)");
  if (verify) sub->add_flag("--inject-fault", o.inject_fault, "Add a deliberately failing check");
}

SweepConfig build_config(Command c, const RawOptions& o) {
  SweepConfig cfg = SweepConfig::defaults(c);
  if (o.n) cfg.n_ports = parse_ports(*o.n);
  if (o.gamma) cfg.gamma = Grid::parse(*o.gamma);
  if (o.theta) cfg.theta = Grid::parse(*o.theta);
  if (o.tau) cfg.tau = Grid::parse(*o.tau);
  if (o.s) cfg.ohmicity = parse_list(*o.s);
  if (o.temp_ratio) cfg.temperature_ratio = parse_list(*o.temp_ratio);
  if (o.ell) cfg.separation = *o.ell;
  if (o.povm) cfg.povm_modes = parse_povm_modes(*o.povm);
  if (o.order) cfg.taylor_order = *o.order;
  if (o.threads) cfg.threads = *o.threads;
  if (o.seed) cfg.seed = *o.seed;
  if (o.max_n) cfg.max_n = *o.max_n;
  if (o.format) {
    if (*o.format == "csv") {
      cfg.format = Format::csv;
    } else if (*o.format == "json") {
      cfg.format = Format::json;
    } else {
      throw ConfigError("--format must be csv or json");
    }
  }
  cfg.output_path = o.out;
  cfg.timestamp = !o.no_timestamp;
  cfg.inject_fault = o.inject_fault;
  cfg.validate();
  return cfg;
}

int execute(const SweepConfig& cfg) {
  switch (cfg.command) {
    case Command::surface:
      write_table(run_surface(cfg), cfg);
      return kOk;
    case Command::vs_n:
      write_table(run_vs_n(cfg), cfg);
      return kOk;
    case Command::compare:
      write_table(run_compare(cfg), cfg);
      return kOk;
    case Command::spinboson:
      write_table(run_spinboson(cfg), cfg);
      return kOk;
    case Command::verify: {
      const VerifyReport report = run_verify(cfg);
      nlohmann::json doc = report.to_json();
      doc["config"] = cfg.to_json();
      if (cfg.timestamp) doc["generated_at"] = utc_timestamp();
      write_text(cfg.output_path, doc.dump(2) + "\n");
      if (!report.passed()) {
        for (const auto& c : report.checks) {
          if (!c.passed) std::cerr << "FAILED " << c.name << " value=" << c.value << "\n";
        }
        return kVerificationFailure;
      }
      return kOk;
    }
  }
  return kConfigError;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Port-based teleportation under dephasing: fidelity sweeps and checks", "pbtlab"};
  app.require_subcommand(1);
  RawOptions opts;
  const std::pair<Command, const char*> commands[] = {
      {Command::surface, "Fidelity of the noiseless POVM over a (|Gamma|, theta) grid"},
      {Command::vs_n, "Fidelity against the number of ports"},
      {Command::compare, "Noiseless vs noise-adapted measurement at theta = 0"},
      {Command::spinboson, "Fidelity against time for the spin-boson decoherence factor"},
      {Command::verify, "Run the invariant suites and report as JSON"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [c, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(c), help);
    add_options(sub, opts, c == Command::verify);
    subs.emplace_back(c, sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  Command chosen = Command::surface;
  for (const auto& [c, sub] : subs) {
    if (sub->parsed()) chosen = c;
  }
  try {
    return execute(build_config(chosen, opts));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace pbtlab::cli
