#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankcrypt/attacks.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/harness.hpp"
#include "rankcrypt/rank_metric.hpp"

namespace py = pybind11;
using namespace rankcrypt;

namespace {

// Field elements cross the boundary as their integer encoding.
ExtVector to_vec(const std::vector<std::uint64_t>& v) {
  ExtVector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(Element{x});
  return out;
}

std::vector<std::uint64_t> from_vec(const ExtVector& v) {
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (auto e : v) out.push_back(e.v);
  return out;
}

py::dict report_dict(const ExperimentReport& r) {
  py::dict d;
  d["experiment"] = r.experiment;
  d["seed"] = r.seed;
  d["trials"] = r.trials;
  for (const auto& m : r.metrics) {
    const Interval w = wilson95(m.successes, r.trials);
    d[py::str("successes." + m.name)] = m.successes;
    d[py::str("p." + m.name)] = r.probability(m.name);
    d[py::str("wilson." + m.name)] = py::make_tuple(w.lo, w.hi);
  }
  for (const auto& [k, v] : r.facts) d[py::str(k)] = v;
  d["text"] = r.text();
  return d;
}

py::dict outcome_dict(const AttackOutcome& o) {
  py::dict d;
  d["broken"] = o.broken;
  d["reason"] = std::string(reason_name(o.reason));
  d["detail"] = o.detail;
  py::dict diag;
  for (const auto& [k, v] : o.diagnostics) diag[py::str(k)] = v;
  d["diagnostics"] = diag;
  if (o.transcript) d["transcript"] = o.transcript->dump();
  return d;
}

}  // namespace

PYBIND11_MODULE(_rankcrypt, mod) {
  mod.doc() = "Gabidulin codes, GPT-family cryptosystems and their structural attacks";

  static py::exception<Error> base_error(mod, "RankcryptError");
  py::register_exception<DecodeFailure>(mod, "DecodeFailure", base_error.ptr());
  py::register_exception<BadParams>(mod, "BadParams", base_error.ptr());
  py::register_exception<ParseError>(mod, "ParseError", base_error.ptr());
  py::register_exception<NotGabidulin>(mod, "NotGabidulin", base_error.ptr());

  // pybind11 holders cannot hold const types; Field has no mutators anyway
  py::class_<Field, std::shared_ptr<Field>>(mod, "Field")
      .def(py::init([](std::uint32_t q, int m) { return std::const_pointer_cast<Field>(Field::make(q, m)); }),
           py::arg("q"), py::arg("m"))
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("m", &Field::m)
      .def_property_readonly("order", &Field::order)
      .def("header", &Field::header)
      .def("add", [](const Field& f, std::uint64_t a, std::uint64_t b) { return f.add(Element{a}, Element{b}).v; })
      .def("mul", [](const Field& f, std::uint64_t a, std::uint64_t b) { return f.mul(Element{a}, Element{b}).v; })
      .def("inv", [](const Field& f, std::uint64_t a) { return f.inv(Element{a}).v; })
      .def("frob", [](const Field& f, std::uint64_t a, long long i) { return f.frob(Element{a}, i).v; })
      .def("rank_weight", [](const Field& f, const std::vector<std::uint64_t>& x) { return rank_weight(f, to_vec(x)); });

  py::class_<GabidulinCode>(mod, "GabidulinCode")
      .def(py::init([](const std::shared_ptr<Field>& f, const std::vector<std::uint64_t>& alpha, std::size_t k) {
             return GabidulinCode::make(f, to_vec(alpha), k);
           }),
           py::arg("field"), py::arg("alpha"), py::arg("k"))
      .def_property_readonly("n", &GabidulinCode::n)
      .def_property_readonly("k", &GabidulinCode::k)
      .def_property_readonly("capacity", &GabidulinCode::capacity)
      .def("encode", [](const GabidulinCode& c, const std::vector<std::uint64_t>& m) { return from_vec(c.encode(to_vec(m))); })
      .def("decode", [](const GabidulinCode& c, const std::vector<std::uint64_t>& y) {
        return from_vec(c.decode(to_vec(y)).msg);
      });

  py::class_<Params>(mod, "Params")
      .def(py::init([](const std::string& scheme, std::uint32_t q, int m, std::size_t n, std::size_t k, std::size_t t,
                       std::size_t that, std::size_t a) {
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
           }),
           py::arg("scheme"), py::arg("q") = 2, py::arg("m"), py::arg("n"), py::arg("k"), py::arg("t") = 0,
           py::arg("that") = 0, py::arg("a") = 0)
      .def_property_readonly("scheme", [](const Params& p) { return std::string(scheme_name(p.scheme)); })
      .def_readonly("q", &Params::q)
      .def_readonly("m", &Params::m)
      .def_readonly("n", &Params::n)
      .def_readonly("k", &Params::k)
      .def_readonly("t", &Params::t)
      .def_readonly("that", &Params::that)
      .def_readonly("a", &Params::a)
      .def_property_readonly("budget", &Params::budget);

  py::class_<PublicKey>(mod, "PublicKey")
      .def_readonly("params", &PublicKey::params)
      .def_property_readonly("field", [](const PublicKey& p) { return std::const_pointer_cast<Field>(p.field); })
      .def_readonly("budget", &PublicKey::budget)
      .def("serialize", &serialize_public);

  py::class_<KeyPair>(mod, "KeyPair")
      .def_readonly("public", &KeyPair::pub)
      .def_readonly("notes", &KeyPair::notes)
      .def("serialize", &serialize_private);

  py::class_<Ciphertext>(mod, "Ciphertext")
      .def_property_readonly("scheme", [](const Ciphertext& c) { return std::string(scheme_name(c.scheme)); })
      .def_property_readonly("y", [](const Ciphertext& c) { return from_vec(c.y); });

  mod.def(
      "keygen",
      [](const Params& p, std::uint64_t seed) {
        Rng rng(seed);
        return keygen(rng, Field::make(p.q, p.m), p);
      },
      py::arg("params"), py::arg("seed") = 1);
  mod.def(
      "sa_example_key",
      [](std::uint64_t seed) {
        Rng rng(seed);
        return sa_example_key(rng);
      },
      py::arg("seed") = 1);
  mod.def(
      "encrypt",
      [](const PublicKey& pub, const std::vector<std::uint64_t>& msg, std::uint64_t seed) {
        Rng rng(seed);
        return encrypt(rng, pub, to_vec(msg));
      },
      py::arg("public"), py::arg("msg"), py::arg("seed") = 1);
  mod.def("decrypt", [](const KeyPair& key, const Ciphertext& ct) { return from_vec(decrypt(key, ct)); });
  mod.def("parse_public", [](const std::string& text) { return parse_key(text).pub; });
  mod.def("parse_private", [](const std::string& text) { return parse_key(text).pair(); });

  mod.def(
      "encrypt_bytes",
      [](const PublicKey& pub, const py::bytes& data, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<Ciphertext> cts;
        for (const auto& block : pack_message(*pub.field, pub.params.k, std::string(data)))
          cts.push_back(encrypt(rng, pub, block));
        return serialize_ciphertexts(pub.field, cts);
      },
      py::arg("public"), py::arg("data"), py::arg("seed") = 1);
  mod.def("decrypt_bytes", [](const KeyPair& key, const std::string& text) {
    std::vector<ExtVector> blocks;
    for (const auto& ct : parse_ciphertexts(key.pub.field, text)) blocks.push_back(decrypt(key, ct));
    return py::bytes(unpack_message(*key.pub.field, blocks));
  });

  mod.def(
      "attack",
      [](const PublicKey& pub, const std::string& method, std::optional<std::size_t> a, std::optional<std::size_t> u,
         std::optional<Ciphertext> ct) {
        AttackOutcome o;
        switch (parse_method(method)) {
          case AttackMethod::Overbeck:
            o = overbeck_attack(pub, u.value_or(pub.params.n > pub.params.k ? pub.params.n - pub.params.k - 1 : 1));
            break;
          case AttackMethod::Gpt: o = gpt_attack(pub); break;
          case AttackMethod::Sa: o = sa_attack(pub, a); break;
          case AttackMethod::Loidreau: o = loidreau_attack(pub, a); break;
        }
        py::dict d = outcome_dict(o);
        if (ct && o.broken) d["msg"] = from_vec(attack_decrypt(*o.transcript, *ct));
        return d;
      },
      py::arg("public"), py::arg("method"), py::arg("a") = py::none(), py::arg("u") = py::none(),
      py::arg("ciphertext") = py::none());

  mod.def(
      "experiment_assumptions",
      [](const Params& p, std::size_t trials, std::uint64_t seed, unsigned threads) {
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = experiment_assumptions(p, trials, seed, threads);
        }
        return report_dict(r);
      },
      py::arg("params"), py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 0);
  mod.def(
      "experiment_attack_success",
      [](const Params& p, std::size_t trials, std::uint64_t seed, std::optional<std::string> method, unsigned threads) {
        AttackSpec spec;
        spec.params = p;
        spec.method = method ? parse_method(*method) : default_method(p.scheme);
        if (p.scheme == Scheme::GgptSa || p.scheme == Scheme::GgptLoidreau) spec.a = p.a;
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = experiment_attack_success(spec, trials, seed, threads);
        }
        return report_dict(r);
      },
      py::arg("params"), py::arg("trials"), py::arg("seed") = 1, py::arg("method") = py::none(),
      py::arg("threads") = 0);
}
