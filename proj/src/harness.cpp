#include "rankcrypt/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"
#include "rankcrypt/sampling.hpp"

namespace rankcrypt {

Interval wilson95(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0, 1};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials), p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

const ExperimentReport::Metric& ExperimentReport::metric(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m;
  throw BadParams("no metric named " + std::string(name));
}

double ExperimentReport::probability(std::string_view name) const {
  return trials ? static_cast<double>(metric(name).successes) / static_cast<double>(trials) : 0.0;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

}  // namespace

std::string ExperimentReport::text() const {
  std::ostringstream o;
  o << experiment << " (seed " << seed << ", " << trials << " trials)\n";
  for (const auto& [k, v] : params) o << "  " << k << " = " << v << "\n";
  o << "\n  " << std::left << std::setw(24) << "metric" << std::setw(10) << "success" << std::setw(10) << "p"
    << "95% interval\n";
  for (const auto& m : metrics) {
    const Interval w = wilson95(m.successes, trials);
    o << "  " << std::setw(24) << m.name << std::setw(10) << m.successes << std::setw(10)
      << fixed(probability(m.name), 4) << "[" << fixed(w.lo, 4) << ", " << fixed(w.hi, 4) << "]\n";
  }
  if (!facts.empty()) o << "\n";
  for (const auto& [k, v] : facts) o << "  " << k << ": " << v << "\n";
  if (!seconds.empty()) o << "\n";
  for (const auto& [k, v] : seconds) o << "  " << k << ": " << fixed(v, 3) << " s\n";
  return o.str();
}

std::string ExperimentReport::kv(bool with_timing) const {
  std::ostringstream o;
  o << "experiment=" << experiment << "\nseed=" << seed << "\ntrials=" << trials << "\n";
  for (const auto& [k, v] : params) o << "param." << k << "=" << v << "\n";
  for (const auto& m : metrics) {
    const Interval w = wilson95(m.successes, trials);
    o << "successes." << m.name << "=" << m.successes << "\n";
    o << "p." << m.name << "=" << fixed(probability(m.name), 6) << "\n";
    o << "wilson_lo." << m.name << "=" << fixed(w.lo, 6) << "\n";
    o << "wilson_hi." << m.name << "=" << fixed(w.hi, 6) << "\n";
  }
  for (const auto& [k, v] : facts) o << k << "=" << v << "\n";
  if (with_timing)
    for (const auto& [k, v] : seconds) o << "seconds." << k << "=" << fixed(v, 6) << "\n";
  return o.str();
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.txt") << text();
  std::ofstream(dir / "report.kv") << kv();
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void echo_params(ExperimentReport& r, const Params& p) {
  r.params = {{"scheme", std::string(scheme_name(p.scheme))},
              {"q", std::to_string(p.q)},
              {"m", std::to_string(p.m)},
              {"n", std::to_string(p.n)},
              {"k", std::to_string(p.k)},
              {"t", std::to_string(p.t)},
              {"that", std::to_string(p.that)},
              {"a", std::to_string(p.a)}};
}

ExtMatrix random_full_rank_ext(Rng& rng, const FieldPtr& f, std::size_t rows, std::size_t cols) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ExtMatrix R = random_ext_matrix(rng, f, rows, cols);
    if (rank(R) == rows) return R;
  }
  throw SamplingFailure("no full-rank matrix found");
}

}  // namespace

ExperimentReport experiment_assumptions(const Params& p, std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (p.a == 0 || p.a >= p.k) throw BadParams("assumption experiment needs 1 <= a < k");
  if (p.n > static_cast<std::size_t>(p.m) || p.k > p.n) throw BadParams("need k <= n <= m");
  const FieldPtr f = Field::make(p.q, p.m);
  const std::size_t step = p.k - p.a;
  const std::size_t ell = (p.n + step - 1) / step;

  std::vector<char> first(trials), second(trials);
  std::vector<double> t1(trials), t2(trials);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    auto t0 = std::chrono::steady_clock::now();
    const auto code = GabidulinCode::make(f, random_independent_vector(rng, f, p.n), p.k);
    const ExtMatrix B = random_full_rank_ext(rng, f, step, p.k) * code.generator();
    first[i] = frobenius_sum_space(B, ell, step).dim() == p.n;
    t1[i] = since(t0);

    t0 = std::chrono::steady_clock::now();
    ExtMatrix X;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw SamplingFailure("no rank-a distortion found");
      X = random_ext_matrix(rng, f, p.k, p.a) * random_ext_matrix(rng, f, p.a, p.that);
      if (rank(X) == p.a && column_rank_base(X) == p.that) break;
    }
    second[i] = rank_one_span(frobenius_sum_space(X, ell, step)).rows() == 0;
    t2[i] = since(t0);
  });

  ExperimentReport r;
  r.experiment = "assumptions";
  r.seed = seed;
  r.trials = trials;
  echo_params(r, p);
  r.params.emplace_back("ell", std::to_string(ell));
  ExperimentReport::Metric m1{"assumption1", 0}, m2{"assumption2", 0};
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    m1.successes += first[i];
    m2.successes += second[i];
    s1 += t1[i];
    s2 += t2[i];
  }
  r.metrics = {m1, m2};
  r.seconds = {{"assumption1_total", s1}, {"assumption2_total", s2}, {"wall", since(start)}};
  return r;
}

AttackMethod parse_method(std::string_view name) {
  for (AttackMethod m : {AttackMethod::Overbeck, AttackMethod::Gpt, AttackMethod::Sa, AttackMethod::Loidreau})
    if (method_name(m) == name) return m;
  throw ParseError("unknown attack method `" + std::string(name) + "`");
}

std::string_view method_name(AttackMethod m) {
  switch (m) {
    case AttackMethod::Overbeck: return "overbeck";
    case AttackMethod::Gpt: return "gpt";
    case AttackMethod::Sa: return "sa";
    case AttackMethod::Loidreau: return "loidreau";
  }
  return "?";
}

AttackMethod default_method(Scheme s) {
  switch (s) {
    case Scheme::Gpt: return AttackMethod::Gpt;
    case Scheme::Ggpt: return AttackMethod::Overbeck;
    case Scheme::GgptSa: return AttackMethod::Sa;
    case Scheme::GgptLoidreau: return AttackMethod::Loidreau;
  }
  return AttackMethod::Gpt;
}

ExperimentReport experiment_attack_success(const AttackSpec& spec, std::size_t trials, std::uint64_t seed,
                                           unsigned threads) {
  Params p = spec.params;
  if (spec.sa_example) {
    Rng probe(0);
    p = sa_example_key(probe).pub.params;
  } else {
    p.validate();
  }
  const FieldPtr f = Field::make(p.q, p.m);
  const std::size_t u = spec.u.value_or(p.n > p.k ? p.n - p.k - 1 : 1);

  std::vector<char> ok(trials);
  std::vector<double> secs(trials);
  std::vector<std::string> reasons(trials);
  std::vector<std::vector<std::pair<std::string, std::string>>> diags(trials);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    const KeyPair key = spec.sa_example ? sa_example_key(rng) : keygen(rng, f, p);
    ExtVector msg(p.k);
    for (auto& e : msg) e = key.pub.field->random(rng);
    const Ciphertext ct = encrypt(rng, key.pub, msg);
    const auto t0 = std::chrono::steady_clock::now();
    AttackResult res;
    switch (spec.method) {
      case AttackMethod::Overbeck: res = overbeck_attack(key.pub, u, ct); break;
      case AttackMethod::Gpt: res = gpt_attack(key.pub, ct); break;
      case AttackMethod::Sa: res = sa_attack(key.pub, spec.a, ct); break;
      case AttackMethod::Loidreau: res = loidreau_attack(key.pub, spec.a, ct); break;
    }
    secs[i] = since(t0);
    ok[i] = res.outcome.broken && res.msg && *res.msg == msg;
    reasons[i] = ok[i] ? "" : std::string(reason_name(res.outcome.reason));
    diags[i] = std::move(res.outcome.diagnostics);
  });

  ExperimentReport r;
  r.experiment = "attack-success";
  r.seed = seed;
  r.trials = trials;
  echo_params(r, p);
  r.params.emplace_back("method", std::string(method_name(spec.method)));
  if (spec.sa_example) r.params.emplace_back("keys", "sa-example");
  ExperimentReport::Metric m{"recovered", 0};
  double total = 0, worst = 0;
  std::map<std::string, std::size_t> fails;
  for (std::size_t i = 0; i < trials; ++i) {
    m.successes += ok[i];
    total += secs[i];
    worst = std::max(worst, secs[i]);
    if (!ok[i]) ++fails[reasons[i]];
  }
  r.metrics = {m};
  for (const auto& [k, v] : fails) r.facts.emplace_back("failures." + k, std::to_string(v));
  if (spec.method == AttackMethod::Loidreau) {
    // system sizes are fixed by the parameters; report those seen in trial 0
    for (const auto& [k, v] : trials ? diags[0] : decltype(diags)::value_type{})
      if (k == "v_system_unknowns" || k == "v_system_equations") r.facts.emplace_back(k, v);
  }
  r.seconds = {{"attack_mean", trials ? total / static_cast<double>(trials) : 0.0},
               {"attack_max", worst},
               {"wall", since(start)}};
  return r;
}

}  // namespace rankcrypt
