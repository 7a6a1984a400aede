#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rankcrypt/attacks.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/harness.hpp"

using namespace rankcrypt;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << data;
}

struct ParamFlags {
  std::string scheme = "gpt";
  std::uint32_t q = 2;
  int m = 0;
  std::size_t n = 0, k = 0, t = 0, that = 0, a = 0;

  void attach(CLI::App* app) {
    app->add_option("--scheme", scheme, "gpt, ggpt, ggpt-sa, ggpt-loidreau or ggpt-sa-example");
    app->add_option("--q", q, "base field order");
    app->add_option("--m", m, "extension degree");
    app->add_option("--n", n, "code length");
    app->add_option("--k", k, "code dimension");
    app->add_option("--t", t, "GPT distortion column rank");
    app->add_option("--that", that, "GGPT distortion width");
    app->add_option("--a", a, "SA Moore rank or Loidreau distortion rank");
  }
  bool example() const { return scheme == "ggpt-sa-example"; }
  Params params() const {
    Params p;
    p.scheme = parse_scheme(scheme);
    p.q = q;
    p.m = m;
    p.n = n;
    p.k = k;
    p.t = t;
    p.that = that;
    p.a = a;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-metric code-based cryptosystems and their structural attacks"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string out;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", out, "output path (file, key prefix or report directory)");

  ParamFlags kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair; writes <out>.pub and <out>.key");
  kg.attach(keygen_cmd);

  std::string key_path, in_path, message;
  auto* enc_cmd = app.add_subcommand("encrypt", "encrypt a file or string under a public key");
  enc_cmd->add_option("--key", key_path, "public or private key file")->required();
  auto* enc_src = enc_cmd->add_option_group("source");
  enc_src->add_option("--in", in_path, "plaintext file");
  enc_src->add_option("--message", message, "plaintext string");
  enc_src->require_option(1);

  auto* dec_cmd = app.add_subcommand("decrypt", "decrypt with a private key");
  dec_cmd->add_option("--key", key_path, "private key file")->required();
  dec_cmd->add_option("--in", in_path, "ciphertext file")->required();

  std::string method;
  std::optional<std::size_t> attack_a, attack_u;
  std::string transcript_path;
  auto* atk_cmd = app.add_subcommand("attack", "recover a plaintext from the public key alone");
  atk_cmd->add_option("--method", method, "attack")->required()->check(
      CLI::IsMember({"overbeck", "gpt", "sa", "loidreau"}));
  atk_cmd->add_option("--key", key_path, "public key file")->required();
  atk_cmd->add_option("--in", in_path, "ciphertext file")->required();
  atk_cmd->add_option("--a", attack_a, "distortion parameter a, if known");
  atk_cmd->add_option("--u", attack_u, "Frobenius depth for overbeck (default n-k-1)");
  atk_cmd->add_option("--transcript", transcript_path, "write the attack transcript here");

  std::string which;
  std::size_t trials = 100;
  unsigned threads = 0;
  ParamFlags ex;
  std::string ex_method;
  std::optional<std::size_t> ex_u;
  auto* exp_cmd = app.add_subcommand("experiment", "run a seeded Monte Carlo experiment");
  exp_cmd->add_option("--which", which, "experiment")->required()->check(
      CLI::IsMember({"assumptions", "attack-success"}));
  exp_cmd->add_option("--trials", trials, "number of trials")->capture_default_str();
  exp_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  exp_cmd->add_option("--method", ex_method, "attack (default: the one matching the scheme)");
  exp_cmd->add_option("--u", ex_u, "Frobenius depth for overbeck");
  ex.attach(exp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Rng rng(seed);
    if (keygen_cmd->parsed()) {
      KeyPair key = kg.example() ? sa_example_key(rng) : keygen(rng, Field::make(kg.q, kg.m), kg.params());
      const std::string prefix = out.empty() ? "key" : out;
      write_file(prefix + ".pub", serialize_public(key.pub));
      write_file(prefix + ".key", serialize_private(key));
      for (const auto& n : key.notes) std::cerr << n << "\n";
      std::cout << "wrote " << prefix << ".pub and " << prefix << ".key\n";
      return 0;
    }
    if (enc_cmd->parsed()) {
      const ParsedKey key = parse_key(read_file(key_path));
      const std::string data = in_path.empty() ? message : read_file(in_path);
      std::vector<Ciphertext> cts;
      for (const auto& block : pack_message(*key.pub.field, key.pub.params.k, data))
        cts.push_back(encrypt(rng, key.pub, block));
      const std::string text = serialize_ciphertexts(key.pub.field, cts);
      if (out.empty()) {
        std::cout << text;
      } else {
        write_file(out, text);
      }
      return 0;
    }
    if (dec_cmd->parsed()) {
      const KeyPair key = parse_key(read_file(key_path)).pair();
      std::vector<ExtVector> blocks;
      for (const auto& ct : parse_ciphertexts(key.pub.field, read_file(in_path))) blocks.push_back(decrypt(key, ct));
      const std::string plain = unpack_message(*key.pub.field, blocks);
      if (out.empty()) {
        std::cout << plain;
      } else {
        write_file(out, plain);
      }
      return 0;
    }
    if (atk_cmd->parsed()) {
      const PublicKey pub = parse_key(read_file(key_path)).pub;
      const auto cts = parse_ciphertexts(pub.field, read_file(in_path));
      AttackOutcome outcome;
      switch (parse_method(method)) {
        case AttackMethod::Overbeck: {
          const std::size_t n = pub.params.n, k = pub.params.k;
          outcome = overbeck_attack(pub, attack_u.value_or(n > k ? n - k - 1 : 1));
          break;
        }
        case AttackMethod::Gpt: outcome = gpt_attack(pub); break;
        case AttackMethod::Sa: outcome = sa_attack(pub, attack_a); break;
        case AttackMethod::Loidreau: outcome = loidreau_attack(pub, attack_a); break;
      }
      if (!outcome.broken) {
        std::cerr << "attack failed: " << reason_name(outcome.reason) << ": " << outcome.detail << "\n";
        for (const auto& [k, v] : outcome.diagnostics) std::cerr << "  " << k << " " << v << "\n";
        return 1;
      }
      const AttackTranscript& tr = *outcome.transcript;
      if (!transcript_path.empty()) write_file(transcript_path, tr.dump());
      std::vector<ExtVector> blocks;
      for (const auto& ct : cts) blocks.push_back(attack_decrypt(tr, ct));
      const std::string plain = unpack_message(*pub.field, blocks);
      if (out.empty()) {
        std::cout << plain;
      } else {
        write_file(out, plain);
      }
      return 0;
    }
    if (exp_cmd->parsed()) {
      ExperimentReport report;
      if (which == "assumptions") {
        report = experiment_assumptions(ex.params(), trials, seed, threads);
      } else {
        AttackSpec spec;
        spec.sa_example = ex.example();
        if (!spec.sa_example) spec.params = ex.params();
        const Scheme s = spec.sa_example ? Scheme::GgptSa : spec.params.scheme;
        spec.method = ex_method.empty() ? default_method(s) : parse_method(ex_method);
        if (s == Scheme::GgptSa || s == Scheme::GgptLoidreau) spec.a = spec.sa_example ? 1 : ex.a;
        spec.u = ex_u;
        report = experiment_attack_success(spec, trials, seed, threads);
      }
      report.write(out.empty() ? "report" : out);
      std::cout << report.text();
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadParams& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return 2;
  } catch (const rankcrypt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
