// covercert command-line front end. Talks to the library only through the
// C interface in covercert/covercert.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covercert/covercert.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kResource = 2, kDomain = 3, kInternal = 4 };

struct SystemDeleter {
  void operator()(covercert_system* s) const { covercert_system_free(s); }
};
struct CertificateDeleter {
  void operator()(covercert_certificate* c) const { covercert_certificate_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { covercert_string_free(s); }
};
using SystemPtr = std::unique_ptr<covercert_system, SystemDeleter>;
using CertificatePtr = std::unique_ptr<covercert_certificate, CertificateDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a library status out of a subcommand handler.
struct Failure {
  covercert_status status;
  std::string message;
};

void check(covercert_status status) {
  if (status != COVERCERT_OK) throw Failure{status, covercert_last_error()};
}

int exit_code_for(covercert_status status) {
  switch (status) {
    case COVERCERT_OK: return kOk;
    case COVERCERT_ERR_PARSE:
    case COVERCERT_ERR_INVALID_ARGUMENT: return kUsage;
    case COVERCERT_ERR_RESOURCE: return kResource;
    case COVERCERT_ERR_DOMAIN: return kDomain;
    case COVERCERT_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

std::string take(char* s) {
  StringPtr owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

struct RunConfig {
  std::string system_text;
  std::string input_path;
  std::string format = "text";
  std::string method = "auto";
  std::optional<std::string> deltas;
  std::optional<std::string> schedule_c;
  std::uint64_t limit_residues = 0;
  std::uint64_t limit_interval = 0;
  std::uint64_t limit_divisors = 0;
  unsigned precision = 50;
  unsigned j = 0;
  unsigned ell = 0;
  std::optional<std::string> c;
  std::optional<std::uint64_t> bound_j;
  std::optional<std::uint64_t> bound_s;
  std::uint64_t y = 0;
  std::uint64_t threshold = 0;
  std::uint64_t cap = 0;

  bool json() const { return format == "json"; }

  covercert_limits limits() const {
    covercert_limits out;
    covercert_default_limits(&out);
    if (limit_residues != 0) out.max_residue_space = limit_residues;
    if (limit_interval != 0) out.max_interval = limit_interval;
    if (limit_divisors != 0) out.max_divisors = limit_divisors;
    return out;
  }
};

SystemPtr load_system(const RunConfig& cfg) {
  std::string text;
  if (!cfg.input_path.empty()) {
    if (!cfg.system_text.empty())
      throw Failure{COVERCERT_ERR_INVALID_ARGUMENT, "--system and --input are mutually exclusive"};
    std::ostringstream buf;
    if (cfg.input_path == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream in(cfg.input_path);
      if (!in) throw Failure{COVERCERT_ERR_INVALID_ARGUMENT, "cannot read " + cfg.input_path};
      buf << in.rdbuf();
    }
    text = buf.str();
  } else if (!cfg.system_text.empty()) {
    text = cfg.system_text;
  } else {
    throw Failure{COVERCERT_ERR_INVALID_ARGUMENT, "a system is required (--system or --input)"};
  }
  covercert_system* raw = nullptr;
  check(covercert_system_parse(text.c_str(), &raw));
  return SystemPtr(raw);
}

std::string emit(const covercert_system* sys, bool sorted, bool as_json) {
  char* out = nullptr;
  check(covercert_system_emit(sys, sorted ? 1 : 0,
                              as_json ? COVERCERT_FORMAT_JSON : COVERCERT_FORMAT_TEXT, &out));
  return take(out);
}

const char* method_name(covercert_method m) {
  return m == COVERCERT_METHOD_INTERVAL ? "interval" : "oracle";
}

covercert_method parse_method(const std::string& m) {
  if (m == "oracle") return COVERCERT_METHOD_ORACLE;
  if (m == "interval") return COVERCERT_METHOD_INTERVAL;
  return COVERCERT_METHOD_AUTO;
}

void run_verify(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  covercert_coverage cov;
  check(covercert_verify(sys.get(), &limits, parse_method(cfg.method), &cov));
  if (cfg.json()) {
    json doc;
    doc["covers"] = cov.covers != 0;
    doc["method"] = method_name(cov.method);
    if (cov.has_count) {
      doc["witness"] = cov.has_witness ? json(cov.witness) : json(nullptr);
      doc["uncovered_count"] = cov.uncovered_count;
    }
    std::cout << doc.dump() << "\n";
    return;
  }
  std::cout << "covers: " << (cov.covers ? "true" : "false") << " (" << method_name(cov.method)
            << ")\n";
  if (cov.has_count) {
    if (cov.has_witness) std::cout << "witness: " << cov.witness << "\n";
    std::cout << "uncovered residues: " << cov.uncovered_count << "\n";
  }
}

void run_witness(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  covercert_coverage cov;
  check(covercert_verify(sys.get(), &limits, COVERCERT_METHOD_ORACLE, &cov));
  char* q = nullptr;
  check(covercert_system_lcm(sys.get(), &q));
  const std::string modulus = take(q);
  if (cfg.json()) {
    json doc;
    doc["witness"] = cov.has_witness ? json(cov.witness) : json(nullptr);
    doc["modulus"] = modulus;
    std::cout << doc.dump() << "\n";
  } else if (cov.has_witness) {
    std::cout << cov.witness << " mod " << modulus << "\n";
  } else {
    std::cout << "none: the system covers the integers\n";
  }
}

void run_minimal(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  int minimal = 0;
  size_t* redundant = nullptr;
  size_t count = 0;
  check(covercert_minimal(sys.get(), &limits, &minimal, &redundant, &count));
  const std::vector<size_t> indices(redundant, redundant + count);
  covercert_indices_free(redundant);
  if (cfg.json()) {
    json doc;
    doc["minimal"] = minimal != 0;
    doc["redundant"] = indices;
    std::cout << doc.dump() << "\n";
    return;
  }
  std::cout << "minimal: " << (minimal ? "true" : "false") << "\n";
  for (const size_t i : indices) {
    std::uint64_t r = 0, d = 0;
    check(covercert_system_class(sys.get(), i, &r, &d));
    std::cout << "redundant: [" << i << "] " << r << " mod " << d << "\n";
  }
}

void run_multiplicity(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  std::uint64_t multiset = 0, distinct = 0;
  check(covercert_multiplicity(sys.get(), &multiset, &distinct));
  if (cfg.json()) {
    json doc;
    doc["multiplicity"] = multiset;
    doc["distinct_multiplicity"] = distinct;
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "multiplicity: " << multiset << "\n"
              << "distinct multiplicity: " << distinct << "\n";
  }
}

void run_density(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  char* out = nullptr;
  check(covercert_density(sys.get(), &limits, &out));
  const std::string density = take(out);
  if (cfg.json())
    std::cout << json{{"density", density}}.dump() << "\n";
  else
    std::cout << "uncovered density: " << density << "\n";
}

void run_construct(const RunConfig& cfg) {
  covercert_system* raw = nullptr;
  check(covercert_construct_minimal_family(cfg.j, &raw));
  const SystemPtr sys(raw);
  std::cout << emit(sys.get(), true, cfg.json());
}

void run_reduce(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  covercert_system* raw = nullptr;
  check(covercert_shift_expand(sys.get(), cfg.ell, &limits, &raw));
  const SystemPtr out(raw);
  std::cout << emit(out.get(), false, cfg.json());
}

void run_certify(const RunConfig& cfg) {
  const auto sys = load_system(cfg);
  const auto limits = cfg.limits();
  if (cfg.deltas && cfg.schedule_c)
    throw Failure{COVERCERT_ERR_INVALID_ARGUMENT, "--deltas and --schedule-C are mutually exclusive"};
  if (!cfg.deltas && !cfg.schedule_c)
    std::cerr << "note: no --deltas or --schedule-C given; using schedule constant C = 1\n";
  covercert_certificate* raw = nullptr;
  check(covercert_certify(sys.get(), cfg.deltas ? cfg.deltas->c_str() : nullptr,
                          cfg.schedule_c ? cfg.schedule_c->c_str() : nullptr, &limits, &raw));
  const CertificatePtr cert(raw);
  char* out = nullptr;
  check(covercert_certificate_render(
      cert.get(), cfg.json() ? COVERCERT_FORMAT_JSON : COVERCERT_FORMAT_TEXT, &out));
  std::cout << take(out);
}

void run_bounds(const RunConfig& cfg) {
  if (!cfg.bound_j && !cfg.bound_s)
    throw Failure{COVERCERT_ERR_INVALID_ARGUMENT, "bounds needs --j and/or --s"};
  json doc;
  doc["c"] = *cfg.c;
  doc["precision"] = cfg.precision;
  if (cfg.bound_j) {
    char* out = nullptr;
    check(covercert_jth_modulus_bound(*cfg.bound_j, cfg.c->c_str(), cfg.precision, &out));
    doc["jth_modulus_bound"] = json{{"j", *cfg.bound_j}, {"value", take(out)}};
  }
  if (cfg.bound_s) {
    char* out = nullptr;
    check(covercert_min_modulus_bound(*cfg.bound_s, cfg.c->c_str(), cfg.precision, &out));
    doc["min_modulus_bound"] = json{{"s", *cfg.bound_s}, {"value", take(out)}};
  }
  if (cfg.json()) {
    std::cout << doc.dump() << "\n";
    return;
  }
  if (cfg.bound_j)
    std::cout << "exp(c j^2 / log(j+1)) at j=" << *cfg.bound_j << ": "
              << doc["jth_modulus_bound"]["value"].get<std::string>() << "\n";
  if (cfg.bound_s)
    std::cout << "exp(c log^2(s+1) / log log(s+2)) at s=" << *cfg.bound_s << ": "
              << doc["min_modulus_bound"]["value"].get<std::string>() << "\n";
}

void run_smoothsum(const RunConfig& cfg) {
  const auto limits = cfg.limits();
  char* out = nullptr;
  check(covercert_smooth_sum(cfg.y, cfg.threshold, cfg.cap, &limits, &out));
  const std::string sum = take(out);
  if (cfg.json())
    std::cout << json{{"y", cfg.y}, {"threshold", cfg.threshold}, {"cap", cfg.cap}, {"sum", sum}}
                     .dump()
              << "\n";
  else
    std::cout << sum << "\n";
}

void add_system_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--system", cfg.system_text, "Inline system, e.g. \"0 mod 2, 0 mod 3\"")
      ->envname("COVERCERT_SYSTEM");
  sub->add_option("--input", cfg.input_path, "File holding the system (text or JSON)")
      ->envname("COVERCERT_INPUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covercert: verify, construct, reduce and certify covering systems"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("COVERCERT_FORMAT");
  app.add_option("--limit-residues", cfg.limit_residues, "Max residue-space size (default 1e7)")
      ->check(CLI::PositiveNumber)
      ->envname("COVERCERT_LIMIT_RESIDUES");
  app.add_option("--limit-interval", cfg.limit_interval, "Max interval length 2^n (default 2^24)")
      ->check(CLI::PositiveNumber)
      ->envname("COVERCERT_LIMIT_INTERVAL");
  app.add_option("--limit-divisors", cfg.limit_divisors, "Max divisor enumeration (default 1e6)")
      ->check(CLI::PositiveNumber)
      ->envname("COVERCERT_LIMIT_DIVISORS");

  auto* verify = app.add_subcommand("verify", "Decide whether a system covers Z");
  add_system_options(verify, cfg);
  verify->add_option("--method", cfg.method, "auto | oracle | interval")
      ->check(CLI::IsMember({"auto", "oracle", "interval"}))
      ->envname("COVERCERT_METHOD");
  verify->callback([&] { run_verify(cfg); });

  auto* witness = app.add_subcommand("witness", "Smallest uncovered residue mod Q");
  add_system_options(witness, cfg);
  witness->callback([&] { run_witness(cfg); });

  auto* minimal = app.add_subcommand("minimal", "Check minimality of a covering system");
  add_system_options(minimal, cfg);
  minimal->callback([&] { run_minimal(cfg); });

  auto* mult = app.add_subcommand("multiplicity", "Largest number of classes sharing a modulus");
  add_system_options(mult, cfg);
  mult->callback([&] { run_multiplicity(cfg); });

  auto* density = app.add_subcommand("density", "Exact density of the uncovered set");
  add_system_options(density, cfg);
  density->callback([&] { run_density(cfg); });

  auto* construct = app.add_subcommand("construct", "Minimal covering system with j classes");
  construct->add_option("--j", cfg.j, "Number of classes (>= 5)")->required();
  construct->callback([&] { run_construct(cfg); });

  auto* reduce = app.add_subcommand("reduce", "Shift expansion of a minimal covering system");
  add_system_options(reduce, cfg);
  reduce->add_option("--ell", cfg.ell, "Expansion level (1..k)")->required();
  reduce->callback([&] { run_reduce(cfg); });

  auto* certify = app.add_subcommand("certify", "Distortion-method non-covering certificate");
  add_system_options(certify, cfg);
  certify->add_option("--deltas", cfg.deltas, "Comma-separated deltas, one per prime of Q")
      ->envname("COVERCERT_DELTAS");
  certify->add_option("--schedule-C", cfg.schedule_c, "Constant C of the threshold C s^3")
      ->envname("COVERCERT_SCHEDULE_C");
  certify->callback([&] { run_certify(cfg); });

  auto* bounds = app.add_subcommand("bounds", "Evaluate the modulus growth bounds");
  bounds->add_option("--c", cfg.c, "Positive constant c (required)")->required();
  bounds->add_option("--j", cfg.bound_j, "Index j of the j-th smallest modulus");
  bounds->add_option("--s", cfg.bound_s, "Multiplicity s");
  bounds->add_option("--precision", cfg.precision, "Significant digits")
      ->check(CLI::Range(1u, 10000u))
      ->envname("COVERCERT_PRECISION");
  bounds->callback([&] { run_bounds(cfg); });

  auto* smooth = app.add_subcommand("smoothsum", "Exact reciprocal sum over y-smooth integers");
  smooth->add_option("--y", cfg.y, "Smoothness bound (>= 2)")->required();
  smooth->add_option("--threshold", cfg.threshold, "Sum over d > threshold")->required();
  smooth->add_option("--cap", cfg.cap, "Sum over d <= cap")->required();
  smooth->callback([&] { run_smoothsum(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const Failure& f) {
    std::cout.flush();
    std::cerr << "error (" << covercert_status_name(f.status) << "): " << f.message << "\n";
    return exit_code_for(f.status);
  }
  return kOk;
}
