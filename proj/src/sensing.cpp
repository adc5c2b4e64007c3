#include "cogsense/sensing.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "cogsense/errors.hpp"

namespace cogsense {

double ScenarioConfig::snr_linear() const {
  return std::pow(10.0, snr_db / 10.0);
}

std::vector<double> ScenarioConfig::grid_points() const {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(threshold_grid.steps));
  if (threshold_grid.steps == 1) {
    grid.push_back(threshold_grid.start);
    return grid;
  }
  const double step = (threshold_grid.stop - threshold_grid.start) /
                      static_cast<double>(threshold_grid.steps - 1);
  for (int i = 0; i < threshold_grid.steps; ++i) {
    grid.push_back(threshold_grid.start + static_cast<double>(i) * step);
  }
  return grid;
}

void ScenarioConfig::validate() const {
  if (n_su < 1) {
    throw ConfigError("n_su", "must be a positive integer");
  }
  if (n_malicious < 0 || n_malicious >= n_su) {
    throw ConfigError("n_malicious",
                      "must be non-negative and strictly less than n_su");
  }
  if (samples_per_sensing < 1) {
    throw ConfigError("samples_per_sensing", "must be a positive integer");
  }
  if (n_instants < 1) {
    throw ConfigError("n_instants", "must be a positive integer");
  }
  if (!(pu_present_prob >= 0.0 && pu_present_prob <= 1.0)) {
    throw ConfigError("pu_present_prob", "must lie in [0, 1]");
  }
  if (!(method_multiplier_k > 0.0)) {
    throw ConfigError("method_multiplier_k", "must be positive");
  }
  if (max_iterations < 1) {
    throw ConfigError("max_iterations", "must be a positive integer");
  }
  if (!(threshold_tolerance > 0.0)) {
    throw ConfigError("threshold_tolerance", "must be positive");
  }
  if (!std::isfinite(snr_db)) {
    throw ConfigError("snr_db", "must be finite");
  }
  switch (attack.kind) {
    case AttackKind::kAlwaysNo:
      if (!(attack.severity > 0.0 && attack.severity < 1.0)) {
        throw ConfigError("attack.severity",
                          "must lie in (0, 1) for an always-no attack");
      }
      break;
    case AttackKind::kAlwaysYes:
      if (!(attack.severity > 1.0)) {
        throw ConfigError("attack.severity",
                          "must exceed 1 for an always-yes attack");
      }
      break;
    case AttackKind::kHonest:
      if (!(attack.severity > 0.0)) {
        throw ConfigError("attack.severity", "must be positive");
      }
      break;
  }
  if (threshold_grid.steps < 1) {
    throw ConfigError("threshold_grid.steps", "must be a positive integer");
  }
  if (!(threshold_grid.stop >= threshold_grid.start)) {
    throw ConfigError("threshold_grid.stop", "must be >= threshold_grid.start");
  }
  if (threshold_grid.steps > 1 && !(threshold_grid.stop > threshold_grid.start)) {
    throw ConfigError("threshold_grid.stop",
                      "must exceed threshold_grid.start for a multi-point grid");
  }
}

std::vector<double> ObservationInstant::reported_levels() const {
  std::vector<double> levels;
  levels.reserve(reports.size());
  for (const SensingReport& r : reports) {
    levels.push_back(r.reported_level);
  }
  return levels;
}

std::vector<int> ObservationInstant::malicious_ids() const {
  std::vector<int> ids;
  for (const SensingReport& r : reports) {
    if (r.is_malicious) {
      ids.push_back(r.su_id);
    }
  }
  return ids;
}

std::complex<double> rayleigh_gain(RandomStream& stream) {
  return stream.complex_normal();
}

double sense_energy(bool pu_present, std::complex<double> gain,
                    double snr_linear, int m_samples, RandomStream& stream) {
  if (!(snr_linear >= 0.0)) {
    throw InvalidInput("sense_energy: snr_linear must be non-negative");
  }
  if (m_samples < 1) {
    throw InvalidInput("sense_energy: m_samples must be positive");
  }
  double acc = 0.0;
  if (pu_present) {
    const std::complex<double> amp = std::sqrt(snr_linear) * gain;
    for (int m = 0; m < m_samples; ++m) {
      const double phase = 2.0 * std::numbers::pi * stream.uniform();
      const std::complex<double> s = std::polar(1.0, phase);
      const std::complex<double> sample = amp * s + stream.complex_normal();
      acc += std::norm(sample);
    }
  } else {
    for (int m = 0; m < m_samples; ++m) {
      acc += std::norm(stream.complex_normal());
    }
  }
  return acc / static_cast<double>(m_samples);
}

double apply_attack(double honest_level, const AttackModel& attack,
                    int m_samples, RandomStream& stream) {
  if (!(honest_level >= 0.0)) {
    throw InvalidInput("apply_attack: honest_level must be non-negative");
  }
  switch (attack.kind) {
    case AttackKind::kHonest:
      return honest_level;
    case AttackKind::kAlwaysNo:
      return attack.severity *
             sense_energy(false, {0.0, 0.0}, 0.0, m_samples, stream);
    case AttackKind::kAlwaysYes:
      return attack.severity * honest_level;
  }
  throw InternalError("apply_attack: unhandled attack kind");
}

ObservationInstant simulate_instant(const ScenarioConfig& config,
                                    int instant_index) {
  config.validate();
  if (instant_index < 0 || instant_index >= config.n_instants) {
    throw InvalidInput("simulate_instant: instant_index out of range");
  }
  RandomStream stream(derive_seed(config.master_seed, kInstantDomain,
                                  static_cast<std::uint64_t>(instant_index)));
  ObservationInstant instant;
  instant.instant_index = instant_index;
  instant.pu_present = stream.uniform() < config.pu_present_prob;

  const double snr = config.snr_linear();
  instant.reports.reserve(static_cast<std::size_t>(config.n_su));
  for (int su = 0; su < config.n_su; ++su) {
    const std::complex<double> h = rayleigh_gain(stream);
    const double honest = sense_energy(instant.pu_present, h, snr,
                                       config.samples_per_sensing, stream);
    SensingReport report;
    report.su_id = su;
    report.honest_level = honest;
    report.is_malicious = su < config.n_malicious;
    report.reported_level =
        report.is_malicious
            ? apply_attack(honest, config.attack, config.samples_per_sensing,
                           stream)
            : honest;
    instant.reports.push_back(report);
  }
  return instant;
}

std::vector<ObservationInstant> simulate_scenario(const ScenarioConfig& config,
                                                  int threads) {
  config.validate();
  if (threads < 1) {
    throw InvalidInput("simulate_scenario: threads must be positive");
  }
  std::vector<ObservationInstant> instants(
      static_cast<std::size_t>(config.n_instants));
  const int n = config.n_instants;
  const int workers = std::min(threads, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) {
      instants[static_cast<std::size_t>(i)] = simulate_instant(config, i);
    }
    return instants;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&config, &instants, n, workers, w] {
      for (int i = w; i < n; i += workers) {
        instants[static_cast<std::size_t>(i)] = simulate_instant(config, i);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  return instants;
}

}  // namespace cogsense
