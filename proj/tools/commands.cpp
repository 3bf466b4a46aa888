#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "cli.hpp"
#include "pbtlab/closed_form.hpp"
#include "pbtlab/fidelity.hpp"
#include "pbtlab/spin_boson.hpp"

namespace pbtlab::cli {

namespace {

using Row = std::vector<std::optional<double>>;

int single_port_count(const SweepConfig& config) {
  if (config.n_ports.size() != 1) {
    throw ConfigError(std::string(to_string(config.command)) + " takes a single --n value");
  }
  return config.n_ports.front();
}

}  // namespace

std::vector<Row> parallel_rows(std::size_t count, int threads,
                               const std::function<Row(std::size_t)>& fn) {
  std::vector<Row> rows(count);
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            rows[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

Table run_surface(const SweepConfig& config) {
  const int n = single_port_count(config);
  const auto gammas = config.gamma.values();
  const auto thetas = config.theta.values();
  Table t;
  t.columns = {"gamma_abs", "theta", "ent_fidelity", "teleport_fidelity"};
  t.rows = parallel_rows(gammas.size() * thetas.size(), config.worker_count(), [&](std::size_t k) {
    const double g = gammas[k / thetas.size()], th = thetas[k % thetas.size()];
    const double f = fidelity_noiseless_povm(n, DephasingParams(g, th));
    return Row{g, th, f, teleport_fidelity(f)};
  });
  return t;
}

Table run_vs_n(const SweepConfig& config) {
  const auto gammas = config.gamma.values();
  const auto thetas = config.theta.values();
  const bool dense = config.wants(PovmSource::noise_adapted);
  Table t;
  t.columns = {"n", "gamma_abs", "theta", "ent_fidelity", "teleport_fidelity",
               "reference_teleport_fidelity"};
  if (dense) t.columns.push_back("noise_adapted_teleport_fidelity");
  const std::size_t per_n = gammas.size() * thetas.size();
  t.rows = parallel_rows(config.n_ports.size() * per_n, config.worker_count(), [&](std::size_t k) {
    const int n = config.n_ports[k / per_n];
    const std::size_t r = k % per_n;
    const DephasingParams p(gammas[r / thetas.size()], thetas[r % thetas.size()]);
    const double f = fidelity_noiseless_povm(n, p);
    Row row{static_cast<double>(n), p.gamma_abs, p.theta, f, teleport_fidelity(f),
            teleport_fidelity(f_ih(n))};
    if (dense) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, p);
      row.push_back(ent_fidelity(pgm(e), e).teleport_fidelity);
    }
    return row;
  });
  return t;
}

Table run_compare(const SweepConfig& config) {
  const auto gammas = config.gamma.values();
  const bool taylor = config.wants(PovmSource::taylor);
  Table t;
  t.columns = {"n", "gamma_abs", "noiseless_ent_fidelity", "noise_adapted_ent_fidelity"};
  if (taylor) t.columns.push_back("taylor_ent_fidelity");
  t.columns.insert(t.columns.end(), {"beigi_konig_bound", "helstrom_bound"});
  for (int n : config.n_ports) {
    const Povm noiseless = noiseless_povm(n);
    auto rows = parallel_rows(gammas.size(), config.worker_count(), [&](std::size_t k) {
      const ComparisonRow c = compare_point(n, gammas[k], noiseless);
      Row row{static_cast<double>(n), c.gamma_abs, c.noiseless, c.noise_adapted};
      if (taylor) {
        const SignalEnsemble e = make_ensemble(SignalKind::eta, n, DephasingParams(c.gamma_abs, 0.0));
        row.push_back(ent_fidelity(pgm_taylor(e, config.taylor_order), e).ent_fidelity);
      }
      row.push_back(c.beigi_konig);
      row.push_back(c.helstrom);
      return row;
    });
    t.rows.insert(t.rows.end(), rows.begin(), rows.end());
  }
  return t;
}

Table run_spinboson(const SweepConfig& config) {
  const int n = single_port_count(config);
  const auto taus = config.tau.values();
  const bool closed = config.wants(PovmSource::noiseless);
  const bool dense = config.wants(PovmSource::noise_adapted);
  Table t;
  t.columns = {"ohmicity", "temperature_ratio", "separation", "tau", "chi", "phase", "gamma_abs"};
  if (closed) t.columns.push_back("noiseless_teleport_fidelity");
  if (dense) t.columns.push_back("noise_adapted_teleport_fidelity");
  const std::size_t per_curve = taus.size();
  const std::size_t curves = config.ohmicity.size() * config.temperature_ratio.size();
  t.rows = parallel_rows(curves * per_curve, config.worker_count(), [&](std::size_t k) {
    const std::size_t c = k / per_curve;
    const double s = config.ohmicity[c / config.temperature_ratio.size()];
    const double temp = config.temperature_ratio[c % config.temperature_ratio.size()];
    const SpinBosonParams params(s, temp, config.separation);
    const double tau = taus[k % per_curve];
    const DecoherenceFactor f = decoherence_factor(tau, params);
    const DephasingParams dp = f.as_params();
    Row row{s, temp, config.separation, tau, f.chi, f.phase, dp.gamma_abs};
    if (closed) row.push_back(teleport_fidelity(fidelity_noiseless_povm(n, dp)));
    if (dense) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, dp);
      row.push_back(ent_fidelity(pgm(e), e).teleport_fidelity);
    }
    return row;
  });
  return t;
}

}  // namespace pbtlab::cli
