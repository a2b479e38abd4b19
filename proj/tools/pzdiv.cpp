// pzdiv: command-line front end for periodic divisors with plane zeros.
//
//   pzdiv classify|index|decide|build|eval|verify --input FILE [options]
//   pzdiv selftest [--seed N]
//
// Exit status: 0 success, 1 input or operational error, 2 divisor rejected,
// 3 verification or self-test failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <openssl/evp.h>

#include "CLI11.hpp"

#include "pz/construct.hpp"
#include "pz/error.hpp"
#include "pz/forms.hpp"
#include "pz/indexcalc.hpp"
#include "pz/io.hpp"
#include "pz/oracle.hpp"
#include "pz/selftest.hpp"

namespace {

using pz::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

struct Options {
  std::string command;
  std::string input;
  double eps = 1e-12;
  std::uint64_t seed = 1;
  std::string point;
  std::string out;
};

struct Outcome {
  json result;
  std::optional<json> residuals;
  int code = 0;
};

json model_summary(const pz::FunctionModel& m) {
  json s = pz::model_to_json(m);
  s.erase("S");
  s.erase("R");
  return s;
}

Outcome rejection(const pz::Decision& d) {
  Outcome out;
  out.result = {{"verdict", "reject"}, {"index", pz::index_to_json(d.index)}, {"witness", pz::witness_to_json(*d.witness)}};
  out.code = 2;
  return out;
}

Outcome run_divisor_command(const Options& o, const pz::PlaneDivisor& Z) {
  Outcome out;
  if (o.command == "eval" || o.command == "verify") {
    pz::Decision d = pz::decide(Z, o.eps);
    if (d.verdict == pz::Verdict::reject) return rejection(d);
  }
  if (o.command == "classify") {
    json comps = json::array();
    for (std::size_t k = 0; k < Z.components.size(); ++k) {
      json c = pz::classification_to_json(pz::classify(Z.components[k]));
      c["component"] = k + 1;
      comps.push_back(std::move(c));
    }
    out.result = {{"components", comps}};
  } else if (o.command == "index") {
    json comps = json::array();
    for (const auto& f : Z.components) comps.push_back(pz::index_to_json(pz::component_index_matrix(f)));
    out.result = {{"index", pz::index_to_json(pz::divisor_index(Z))},
                  {"zero", pz::divisor_index(Z).is_zero()},
                  {"components", comps}};
  } else if (o.command == "decide" || o.command == "build") {
    pz::Decision d = pz::decide(Z, o.eps);
    out.result = {{"verdict", d.verdict == pz::Verdict::accept ? "accept" : "reject"},
                  {"index", pz::index_to_json(d.index)}};
    if (d.verdict == pz::Verdict::reject) {
      return rejection(d);
    } else if (o.command == "decide") {
      out.result["model"] = model_summary(*d.model);
      out.result["corrector_identity"] = pz::corrector_identity_holds(*d.model);
    } else {
      out.result["model"] = pz::model_to_json(*d.model);
    }
  } else if (o.command == "eval") {
    pz::FunctionModel m = pz::build_model(Z, o.eps);
    const pz::CVec z = pz::parse_point(o.point);
    const pz::cplx lg = pz::eval_model_log(m, z);
    out.result = {{"log", pz::complex_json(lg)}, {"value", pz::complex_json(std::exp(lg))}};
  } else if (o.command == "verify") {
    pz::FunctionModel m = pz::build_model(Z, o.eps);
    pz::VerifyReport r = pz::verify_model(m, Z, o.seed);
    json v = pz::verify_to_json(r);
    out.residuals = json{{"periodicity", v["periodicity_residual"]}, {"max", v["max_residual"]}};
    out.result = std::move(v);
    out.code = r.passed() ? 0 : 3;
  }
  return out;
}

Outcome run_model_eval(const Options& o, const json& doc) {
  const json& mj = doc.contains("model") ? doc["model"] : doc["result"]["model"];
  pz::FunctionModel m = pz::model_from_json(mj);
  const pz::CVec z = pz::parse_point(o.point);
  const pz::cplx lg = pz::eval_model_log(m, z);
  Outcome out;
  out.result = {{"log", pz::complex_json(lg)}, {"value", pz::complex_json(std::exp(lg))}};
  return out;
}

Outcome run_selftest(const Options& o) {
  Outcome out;
  json crit = json::array();
  int hard = 0;
  for (const auto& c : pz::selftest::run_all(o.seed, [](const pz::selftest::Criterion& c) {
         std::fprintf(stderr, "criterion %d: %s  %s\n", c.id, pz::selftest::status(c).c_str(), c.title.c_str());
       })) {
    if (!c.pass && !c.known_gap) ++hard;
    crit.push_back({{"id", c.id},
                    {"title", c.title},
                    {"status", pz::selftest::status(c)},
                    {"detail", c.detail},
                    {"seconds", c.seconds}});
  }
  out.result = {{"criteria", crit}, {"undocumented_failures", hard}};
  out.code = hard == 0 ? 0 : 3;
  return out;
}

int run(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"command", o.command}};
  Outcome out;
  if (o.command == "selftest") {
    report["input_digest"] = nullptr;
    out = run_selftest(o);
  } else {
    if (o.input.empty()) throw pz::Error(pz::Errc::parse, "--input is required for " + o.command);
    if (o.command == "eval" && o.point.empty()) throw pz::Error(pz::Errc::parse, "--point is required for eval");
    const std::string text = pz::read_text_file(o.input);
    report["input_digest"] = sha256_hex(text);
    json doc = pz::parse_json_text(text, o.input);
    const bool is_model = doc.is_object() && (doc.contains("model") ||
                                              (doc.contains("result") && doc["result"].is_object() &&
                                               doc["result"].contains("model")));
    if (is_model) {
      if (o.command != "eval") throw pz::Error(pz::Errc::parse, o.input + ": a model document only supports eval");
      out = run_model_eval(o, doc);
    } else {
      out = run_divisor_command(o, pz::divisor_from_json(doc));
    }
  }
  report["result"] = std::move(out.result);
  if (out.residuals) report["residuals"] = std::move(*out.residuals);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["timings"] = {{"total_s", secs}};

  const std::string text = pz::to_report_string(report) + "\n";
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw pz::Error(pz::Errc::parse, "cannot write " + o.out);
    f << text;
  }
  return out.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic divisors with plane zeros: index, decision, construction"};
  Options o;
  app.add_option("command", o.command, "classify | index | decide | build | eval | verify | selftest")
      ->required()
      ->check(CLI::IsMember({"classify", "index", "decide", "build", "eval", "verify", "selftest"}));
  app.add_option("--input", o.input, "divisor document (JSON), or a model for eval");
  app.add_option("--eps", o.eps, "product truncation tolerance")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for sampling")->capture_default_str();
  app.add_option("--point", o.point, "evaluation point: [[re,im],...] or \"re,im;re,im\"");
  app.add_option("--out", o.out, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (!(o.eps > 0.0)) throw pz::Error(pz::Errc::nonpositive_tolerance, "--eps must be positive");
    return run(o);
  } catch (const pz::Error& e) {
    std::fprintf(stderr, "pzdiv: error [%s]: %s\n", pz::errc_name(e.code()), e.what());
  } catch (const json::exception& e) {
    std::fprintf(stderr, "pzdiv: error [parse]: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pzdiv: error: %s\n", e.what());
  }
  return 1;
}
