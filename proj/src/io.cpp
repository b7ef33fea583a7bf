#include "covercert/io.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "covercert/error.hpp"
#include "json.hpp"

namespace covercert {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt to_bigint(std::string_view s) {
  return BigInt(std::string(s[0] == '+' ? s.substr(1) : s), 10);
}

// Accepts 1 <= d < 2^63.
std::uint64_t checked_modulus(const BigInt& d, std::size_t line) {
  if (d < 1) throw ParseError("invalid modulus " + d.get_str() + " (must be >= 1)", line);
  if (d > BigInt(std::to_string(std::numeric_limits<std::int64_t>::max())))
    throw ParseError("modulus " + d.get_str() + " too large", line);
  return d.get_ui();
}

ResidueClass parse_class(std::string_view token, std::size_t line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < token.size()) {
    while (i < token.size() && std::isspace(static_cast<unsigned char>(token[i]))) ++i;
    std::size_t j = i;
    while (j < token.size() && !std::isspace(static_cast<unsigned char>(token[j]))) ++j;
    if (j > i) words.push_back(token.substr(i, j - i));
    i = j;
  }
  if (words.size() != 3 || words[1] != "mod" || !is_integer_literal(words[0]) ||
      !is_integer_literal(words[2]))
    throw ParseError("expected 'R mod D', got '" + std::string(token) + "'", line);
  return make_class(to_bigint(words[0]), checked_modulus(to_bigint(words[2]), line));
}

BigInt json_integer(const ordered_json& v, const char* field, std::size_t index) {
  const std::string where = "classes[" + std::to_string(index) + "]." + field;
  if (v.is_number_unsigned()) return to_big(v.get<std::uint64_t>());
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<std::int64_t>()), 10);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (is_integer_literal(s)) return to_bigint(s);
  }
  throw ParseError(where + " must be an integer");
}

ordered_json rational_json(const Rational& q) { return to_string(q); }

}  // namespace

CongruenceSystem parse_system_text(std::string_view text) {
  std::vector<ResidueClass> classes;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty()) {
      const auto sep = line.find_first_of(",;");
      const std::string_view token = trim(line.substr(0, sep));
      line = sep == std::string_view::npos ? std::string_view{} : line.substr(sep + 1);
      if (!token.empty()) classes.push_back(parse_class(token, line_no));
    }
  }
  return CongruenceSystem(std::move(classes));
}

CongruenceSystem parse_system_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array())
    throw ParseError("JSON system must be an object with a \"classes\" array");
  std::vector<ResidueClass> classes;
  std::size_t index = 0;
  for (const auto& item : doc["classes"]) {
    if (!item.is_object() || !item.contains("r") || !item.contains("d"))
      throw ParseError("classes[" + std::to_string(index) + "] needs \"r\" and \"d\"");
    const BigInt r = json_integer(item["r"], "r", index);
    const BigInt d = json_integer(item["d"], "d", index);
    try {
      classes.push_back(make_class(r, checked_modulus(d, 0)));
    } catch (const ParseError&) {
      throw ParseError("classes[" + std::to_string(index) + "].d = " + d.get_str() +
                       " is not a valid modulus");
    }
    ++index;
  }
  return CongruenceSystem(std::move(classes));
}

CongruenceSystem parse_system(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_system_json(t);
  return parse_system_text(text);
}

std::string emit_system_text(const CongruenceSystem& sys) {
  std::string out;
  for (const auto& c : sys.classes())
    out += std::to_string(c.residue()) + " mod " + std::to_string(c.modulus()) + "\n";
  return out;
}

std::string emit_system_json(const CongruenceSystem& sys) {
  ordered_json classes = ordered_json::array();
  for (const auto& c : sys.classes()) classes.push_back({{"r", c.residue()}, {"d", c.modulus()}});
  ordered_json doc;
  doc["classes"] = std::move(classes);
  return doc.dump() + "\n";
}

std::string certificate_to_json(const Certificate& cert) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : cert.terms) {
    terms.push_back({{"p", t.prime},
                     {"delta", rational_json(t.delta)},
                     {"m1", rational_json(t.m1)},
                     {"m2", rational_json(t.m2)},
                     {"term", rational_json(t.term)},
                     {"branch", to_string(t.branch)}});
  }
  ordered_json doc;
  doc["eta"] = rational_json(cert.eta);
  doc["verdict"] = to_string(cert.verdict);
  doc["terms"] = std::move(terms);
  doc["witness"] = cert.witness ? ordered_json(*cert.witness) : ordered_json(nullptr);
  return doc.dump() + "\n";
}

std::string certificate_to_text(const Certificate& cert) {
  std::ostringstream out;
  for (const auto& t : cert.terms) {
    out << "p=" << t.prime << " delta=" << to_string(t.delta) << " M1=" << to_string(t.m1)
        << " M2=" << to_string(t.m2) << " term=" << to_string(t.term) << " ("
        << to_string(t.branch) << ")\n";
  }
  out << "eta = " << to_string(cert.eta) << " (~" << cert.eta.get_d() << ")\n";
  out << "verdict: " << to_string(cert.verdict) << "\n";
  if (cert.witness) out << "witness: " << *cert.witness << "\n";
  return out.str();
}

}  // namespace covercert
