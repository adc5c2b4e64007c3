#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cogsense/random.hpp"

// Per-instant energy reports for a population of secondary users under
// Rayleigh block fading, with falsification applied to a fixed malicious
// subset. Noise power is normalized to 1, so a noise-only report has
// expectation 1 and a report under an active primary has expectation
// 1 + snr * |h|^2.

namespace cogsense {

enum class AttackKind { kHonest, kAlwaysNo, kAlwaysYes };

struct AttackModel {
  AttackKind kind = AttackKind::kAlwaysNo;
  // Scale factor: in (0,1) for always-no (reported = severity * noise-only
  // draw), > 1 for always-yes (reported = severity * honest level).
  double severity = 0.5;
};

struct ThresholdGridSpec {
  double start = 0.9;
  double stop = 1.2;
  int steps = 61;
};

struct ScenarioConfig {
  int n_su = 50;
  int n_malicious = 0;
  double snr_db = -10.0;
  int samples_per_sensing = 1000;
  int n_instants = 50;
  double pu_present_prob = 1.0;
  AttackModel attack;
  double method_multiplier_k = 3.0;
  int max_iterations = 10;
  double threshold_tolerance = 1e-6;
  std::uint64_t master_seed = 0;
  ThresholdGridSpec threshold_grid;

  double snr_linear() const;
  std::vector<double> grid_points() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct SensingReport {
  int su_id = 0;
  double reported_level = 0.0;
  double honest_level = 0.0;  // pre-falsification, for oracle use only
  bool is_malicious = false;
};

struct ObservationInstant {
  int instant_index = 0;
  bool pu_present = false;
  std::vector<SensingReport> reports;

  std::vector<double> reported_levels() const;
  std::vector<int> malicious_ids() const;
};

// One block-fading gain: E[|h|^2] = 1, |h| Rayleigh.
std::complex<double> rayleigh_gain(RandomStream& stream);

// Normalized energy statistic (1/M) * sum |sqrt(snr)*h*s[m] + n[m]|^2 with a
// unit-modulus random-phase signal s and unit-variance complex noise n.
double sense_energy(bool pu_present, std::complex<double> gain,
                    double snr_linear, int m_samples, RandomStream& stream);

// Falsifies an honest level according to the attack model. Always-no draws a
// fresh noise-only statistic over m_samples and scales it by the severity.
double apply_attack(double honest_level, const AttackModel& attack,
                    int m_samples, RandomStream& stream);

// Fully determined by (config.master_seed, instant_index). SU ids
// 0..n_malicious-1 are the malicious subset in every instant.
ObservationInstant simulate_instant(const ScenarioConfig& config,
                                    int instant_index);

// All instants of a scenario, optionally generated on several threads.
// Output is identical regardless of thread count.
std::vector<ObservationInstant> simulate_scenario(const ScenarioConfig& config,
                                                  int threads = 1);

}  // namespace cogsense
