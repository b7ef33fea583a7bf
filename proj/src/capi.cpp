#include "covercert/covercert.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include "covercert/analytic.hpp"
#include "covercert/constructions.hpp"
#include "covercert/core.hpp"
#include "covercert/distortion.hpp"
#include "covercert/error.hpp"
#include "covercert/io.hpp"

struct covercert_system {
  covercert::CongruenceSystem value;
};

struct covercert_certificate {
  covercert::Certificate value;
};

namespace {

thread_local std::string last_error;

class InvalidArgument : public covercert::Error {
 public:
  using covercert::Error::Error;
};

template <typename F>
covercert_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return COVERCERT_OK;
  } catch (const covercert::ParseError& e) {
    last_error = e.what();
    return COVERCERT_ERR_PARSE;
  } catch (const covercert::ResourceLimitError& e) {
    last_error = e.what();
    return COVERCERT_ERR_RESOURCE;
  } catch (const covercert::DomainError& e) {
    last_error = e.what();
    return COVERCERT_ERR_DOMAIN;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return COVERCERT_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return COVERCERT_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return COVERCERT_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " must not be NULL");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

covercert::Limits to_limits(const covercert_limits* limits) {
  covercert::Limits out;
  if (limits != nullptr) {
    if (limits->max_residue_space == 0 || limits->max_interval == 0 || limits->max_divisors == 0)
      throw InvalidArgument("limits must be positive");
    out.max_residue_space = limits->max_residue_space;
    out.max_interval = limits->max_interval;
    out.max_divisors = limits->max_divisors;
  }
  return out;
}

std::vector<covercert::Rational> parse_delta_list(std::string_view text) {
  std::vector<covercert::Rational> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(covercert::parse_rational(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

extern "C" {

void covercert_default_limits(covercert_limits* out) {
  if (out == nullptr) return;
  const covercert::Limits defaults;
  out->max_residue_space = defaults.max_residue_space;
  out->max_interval = defaults.max_interval;
  out->max_divisors = defaults.max_divisors;
}

const char* covercert_last_error(void) { return last_error.c_str(); }

const char* covercert_status_name(covercert_status status) {
  switch (status) {
    case COVERCERT_OK: return "ok";
    case COVERCERT_ERR_PARSE: return "parse error";
    case COVERCERT_ERR_RESOURCE: return "resource limit";
    case COVERCERT_ERR_DOMAIN: return "domain error";
    case COVERCERT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case COVERCERT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void covercert_string_free(char* s) { std::free(s); }

covercert_status covercert_system_parse(const char* text, covercert_system** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new covercert_system{covercert::parse_system(text)};
  });
}

covercert_status covercert_system_from_classes(const int64_t* residues, const int64_t* moduli,
                                               size_t count, covercert_system** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) {
      require(residues, "residues");
      require(moduli, "moduli");
    }
    std::vector<covercert::ResidueClass> classes;
    classes.reserve(count);
    for (size_t i = 0; i < count; ++i) classes.push_back(covercert::make_class(residues[i], moduli[i]));
    *out = new covercert_system{covercert::CongruenceSystem(std::move(classes))};
  });
}

void covercert_system_free(covercert_system* sys) { delete sys; }

size_t covercert_system_size(const covercert_system* sys) {
  return sys == nullptr ? 0 : sys->value.size();
}

covercert_status covercert_system_class(const covercert_system* sys, size_t index,
                                        uint64_t* residue, uint64_t* modulus) {
  return guarded([&] {
    require(sys, "sys");
    if (index >= sys->value.size()) throw InvalidArgument("class index out of range");
    if (residue != nullptr) *residue = sys->value[index].residue();
    if (modulus != nullptr) *modulus = sys->value[index].modulus();
  });
}

covercert_status covercert_system_lcm(const covercert_system* sys, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = duplicate(sys->value.lcm().get_str());
  });
}

covercert_status covercert_system_emit(const covercert_system* sys, int sorted,
                                       covercert_format format, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    const covercert::CongruenceSystem view = sorted ? sys->value.sorted() : sys->value;
    *out = duplicate(format == COVERCERT_FORMAT_JSON ? covercert::emit_system_json(view)
                                                     : covercert::emit_system_text(view));
  });
}

covercert_status covercert_verify(const covercert_system* sys, const covercert_limits* limits,
                                  covercert_method method, covercert_coverage* out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    const covercert::Limits lim = to_limits(limits);
    if (method == COVERCERT_METHOD_AUTO) {
      // Prefer the smaller enumeration: Q residues or 2^n integers.
      const auto q = sys->value.lcm_factorization().value_u64();
      const std::size_t n = sys->value.size();
      const bool interval_ok = n < 63 && (std::uint64_t{1} << n) <= lim.max_interval;
      const bool oracle_ok = q && *q <= lim.max_residue_space;
      if (interval_ok && (!oracle_ok || (std::uint64_t{1} << n) < *q))
        method = COVERCERT_METHOD_INTERVAL;
      else
        method = COVERCERT_METHOD_ORACLE;
    }
    *out = covercert_coverage{};
    out->method = method;
    if (method == COVERCERT_METHOD_INTERVAL) {
      out->covers = covercert::covers_interval(sys->value, lim) ? 1 : 0;
    } else if (method == COVERCERT_METHOD_ORACLE) {
      const auto report = covercert::covers_oracle(sys->value, lim);
      out->covers = report.covers ? 1 : 0;
      out->has_witness = report.witness.has_value() ? 1 : 0;
      out->witness = report.witness.value_or(0);
      out->has_count = 1;
      out->uncovered_count = report.uncovered_count;
    } else {
      throw InvalidArgument("unknown coverage method");
    }
  });
}

covercert_status covercert_minimal(const covercert_system* sys, const covercert_limits* limits,
                                   int* is_minimal, size_t** redundant, size_t* redundant_count) {
  return guarded([&] {
    require(sys, "sys");
    require(is_minimal, "is_minimal");
    const auto report = covercert::is_minimal(sys->value, to_limits(limits));
    *is_minimal = report.minimal ? 1 : 0;
    if (redundant_count != nullptr) *redundant_count = report.redundant.size();
    if (redundant != nullptr) {
      *redundant = nullptr;
      if (!report.redundant.empty()) {
        auto* buf = static_cast<size_t*>(std::malloc(report.redundant.size() * sizeof(size_t)));
        if (buf == nullptr) throw std::bad_alloc();
        std::copy(report.redundant.begin(), report.redundant.end(), buf);
        *redundant = buf;
      }
    }
  });
}

void covercert_indices_free(size_t* indices) { std::free(indices); }

covercert_status covercert_multiplicity(const covercert_system* sys, uint64_t* multiset,
                                        uint64_t* distinct) {
  return guarded([&] {
    require(sys, "sys");
    if (multiset != nullptr) *multiset = covercert::multiplicity(sys->value);
    if (distinct != nullptr) *distinct = covercert::distinct_multiplicity(sys->value);
  });
}

covercert_status covercert_density(const covercert_system* sys, const covercert_limits* limits,
                                   char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = duplicate(covercert::to_string(covercert::density_uncovered(sys->value, to_limits(limits))));
  });
}

covercert_status covercert_construct_minimal_family(unsigned j, covercert_system** out) {
  return guarded([&] {
    require(out, "out");
    *out = new covercert_system{covercert::construct_minimal_family(j)};
  });
}

covercert_status covercert_shift_expand(const covercert_system* sys, unsigned ell,
                                        const covercert_limits* limits, covercert_system** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = new covercert_system{covercert::shift_expand(sys->value, ell, to_limits(limits))};
  });
}

covercert_status covercert_certify(const covercert_system* sys, const char* deltas,
                                   const char* schedule_c, const covercert_limits* limits,
                                   covercert_certificate** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    const covercert::Limits lim = to_limits(limits);
    for (const auto& c : sys->value.classes()) {
      if (c.modulus() == 1) throw covercert::DomainError("certify requires every modulus to exceed 1");
    }
    const covercert::PrimeLadder ladder = covercert::prime_ladder(sys->value.lcm_factorization());
    covercert::DeltaSchedule schedule;
    if (deltas != nullptr) {
      auto values = std::string_view(deltas).empty() ? std::vector<covercert::Rational>{}
                                                     : parse_delta_list(deltas);
      if (values.size() != ladder.levels())
        throw InvalidArgument("expected " + std::to_string(ladder.levels()) +
                              " deltas (one per prime of Q), got " + std::to_string(values.size()));
      schedule = covercert::DeltaSchedule(std::move(values));
    } else {
      const covercert::Rational c = covercert::parse_rational(schedule_c ? schedule_c : "1");
      const std::uint64_t s = sys->value.empty() ? 1 : covercert::multiplicity(sys->value);
      schedule = covercert::default_delta_schedule(s, c, ladder);
    }
    *out = new covercert_certificate{covercert::certify(sys->value, schedule, lim)};
  });
}

void covercert_certificate_free(covercert_certificate* cert) { delete cert; }

int covercert_certificate_not_covering(const covercert_certificate* cert) {
  return cert != nullptr && cert->value.verdict == covercert::Verdict::NotCovering ? 1 : 0;
}

covercert_status covercert_certificate_eta(const covercert_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "cert");
    require(out, "out");
    *out = duplicate(covercert::to_string(cert->value.eta));
  });
}

int covercert_certificate_witness(const covercert_certificate* cert, uint64_t* out) {
  if (cert == nullptr || !cert->value.witness) return 0;
  if (out != nullptr) *out = *cert->value.witness;
  return 1;
}

covercert_status covercert_certificate_render(const covercert_certificate* cert,
                                              covercert_format format, char** out) {
  return guarded([&] {
    require(cert, "cert");
    require(out, "out");
    *out = duplicate(format == COVERCERT_FORMAT_JSON ? covercert::certificate_to_json(cert->value)
                                                     : covercert::certificate_to_text(cert->value));
  });
}

covercert_status covercert_jth_modulus_bound(uint64_t j, const char* c, unsigned digits,
                                             char** out) {
  return guarded([&] {
    require(c, "c");
    require(out, "out");
    if (digits == 0) throw InvalidArgument("digits must be positive");
    const auto cc = covercert::parse_high_precision(c, digits);
    *out = duplicate(covercert::format_decimal(covercert::jth_modulus_bound(j, cc, digits), digits));
  });
}

covercert_status covercert_min_modulus_bound(uint64_t s, const char* c, unsigned digits,
                                             char** out) {
  return guarded([&] {
    require(c, "c");
    require(out, "out");
    if (digits == 0) throw InvalidArgument("digits must be positive");
    const auto cc = covercert::parse_high_precision(c, digits);
    *out = duplicate(covercert::format_decimal(covercert::min_modulus_bound(s, cc, digits), digits));
  });
}

covercert_status covercert_smooth_sum(uint64_t y, uint64_t threshold, uint64_t cap,
                                      const covercert_limits* limits, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = duplicate(covercert::to_string(
        covercert::smooth_reciprocal_sum(y, threshold, cap, to_limits(limits))));
  });
}

}  // extern "C"
