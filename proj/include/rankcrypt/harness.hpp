#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rankcrypt/attacks.hpp"

namespace rankcrypt {

struct Interval {
  double lo = 0, hi = 1;
};
// 95% Wilson score interval for `successes` out of `trials`.
Interval wilson95(std::size_t successes, std::size_t trials);

struct ExperimentReport {
  struct Metric {
    std::string name;
    std::size_t successes = 0;
  };

  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Metric> metrics;
  std::vector<std::pair<std::string, std::string>> facts;  // deterministic extras
  std::vector<std::pair<std::string, double>> seconds;     // wall-clock, not deterministic

  const Metric& metric(std::string_view name) const;
  double probability(std::string_view name) const;

  std::string text() const;
  // key=value lines; timing lines are left out when with_timing is false.
  std::string kv(bool with_timing = true) const;
  // Writes report.txt and report.kv into dir.
  void write(const std::filesystem::path& dir) const;
};

// Runs fn(i) for i in [0, count) on `threads` workers (0: hardware count).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// Per-trial checks of the two Loidreau-attack assumptions: the stepped
// Frobenius sum of a random codimension-a subcode fills F^n, and the stepped
// sum of a random rank-a distortion holds no rank-one vector.
ExperimentReport experiment_assumptions(const Params& p, std::size_t trials, std::uint64_t seed,
                                        unsigned threads = 0);

enum class AttackMethod { Overbeck, Gpt, Sa, Loidreau };
AttackMethod parse_method(std::string_view name);
std::string_view method_name(AttackMethod m);
// The attack a scheme is meant to be broken by.
AttackMethod default_method(Scheme s);

struct AttackSpec {
  Params params;
  AttackMethod method = AttackMethod::Gpt;
  bool sa_example = false;          // keys from sa_example_key instead of keygen
  std::optional<std::size_t> a;     // passed to the SA/Loidreau attacks
  std::optional<std::size_t> u;     // Overbeck depth; default n-k-1
};

ExperimentReport experiment_attack_success(const AttackSpec& spec, std::size_t trials, std::uint64_t seed,
                                           unsigned threads = 0);

}  // namespace rankcrypt
