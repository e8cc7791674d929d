#include "expmom/jsonio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace expmom {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

double as_number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + ": expected a number");
  return j.get<double>();
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
  return j.get<int>();
}

}  // namespace

void check_fields(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional) {
  if (!j.is_object()) fail("expected a JSON object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) fail("unknown field \"" + key + "\"");
  }
  for (const std::string& key : required)
    if (!j.contains(key)) fail("missing field \"" + key + "\"");
}

Json poly2_to_json(const Poly2& p) {
  Json coeffs = Json::array();
  for (const auto& [idx, c] : p.terms()) coeffs.push_back(Json::array({idx.i, idx.j, c}));
  return Json{{"degree", p.degree()}, {"coeffs", std::move(coeffs)}};
}

Poly2 poly2_from_json(const Json& j) {
  check_fields(j, {"degree", "coeffs"});
  const int degree = as_int(j["degree"], "Poly2.degree");
  if (degree < 0) fail("Poly2.degree: must be non-negative");
  if (!j["coeffs"].is_array()) fail("Poly2.coeffs: expected an array");
  std::vector<Poly2::Term> terms;
  std::set<std::pair<int, int>> seen;
  for (const Json& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 3) fail("Poly2.coeffs: entries are [i, j, c]");
    const int i = as_int(entry[0], "Poly2.coeffs[i]");
    const int k = as_int(entry[1], "Poly2.coeffs[j]");
    const double c = as_number(entry[2], "Poly2.coeffs[c]");
    if (i < 0 || k < 0) fail("Poly2.coeffs: negative exponent");
    if (i + k > degree) fail("Poly2.coeffs: term degree exceeds the declared degree");
    if (!seen.insert({i, k}).second) fail("Poly2.coeffs: duplicate multi-index");
    terms.push_back({{i, k}, c});
  }
  const Poly2 p(terms);
  if (!p.is_zero() && p.degree() != degree)
    fail("Poly2.degree: no nonzero coefficient of the declared degree");
  if (p.is_zero() && degree != 0) fail("Poly2.degree: zero polynomial must declare degree 0");
  return p;
}

Json set_to_json(const SemiAlgebraicSet& s) {
  Json constraints = Json::array();
  for (const Poly2& p : s.constraints) constraints.push_back(poly2_to_json(p));
  return Json{{"box", Json::array({s.box.xmin, s.box.xmax, s.box.ymin, s.box.ymax})},
              {"constraints", std::move(constraints)}};
}

SemiAlgebraicSet set_from_json(const Json& j) {
  check_fields(j, {"box"}, {"constraints"});
  if (!j["box"].is_array() || j["box"].size() != 4)
    fail("SemiAlgebraicSet.box: expected [xmin, xmax, ymin, ymax]");
  SemiAlgebraicSet s;
  s.box = {as_number(j["box"][0], "box"), as_number(j["box"][1], "box"),
           as_number(j["box"][2], "box"), as_number(j["box"][3], "box")};
  if (j.contains("constraints")) {
    if (!j["constraints"].is_array()) fail("SemiAlgebraicSet.constraints: expected an array");
    for (const Json& c : j["constraints"]) s.constraints.push_back(poly2_from_json(c));
  }
  s.validate();
  return s;
}

Json moments_to_json(const MomentVector& a) {
  Json entries = Json::array();
  for (Eigen::Index k = 0; k < a.entries.size(); ++k) entries.push_back(a.entries[k]);
  return Json{{"order", a.order}, {"entries", std::move(entries)}};
}

MomentVector moments_from_json(const Json& j) {
  check_fields(j, {"order", "entries"});
  const int order = as_int(j["order"], "MomentVector.order");
  if (order < 0) fail("MomentVector.order: must be non-negative");
  if (!j["entries"].is_array()) fail("MomentVector.entries: expected an array");
  MomentVector a;
  a.order = order;
  a.entries.resize(static_cast<Eigen::Index>(j["entries"].size()));
  Eigen::Index k = 0;
  for (const Json& e : j["entries"]) a.entries[k++] = as_number(e, "MomentVector.entries");
  a.validate();
  return a;
}

Json complex_to_json(std::complex<double> z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const Json& j) {
  check_fields(j, {"re", "im"});
  return {as_number(j["re"], "complex.re"), as_number(j["im"], "complex.im")};
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void append_number(std::string& out, const Json& j) {
  if (j.is_number_integer()) {
    out += std::to_string(j.get<long long>());
    return;
  }
  if (j.is_number_unsigned()) {
    out += std::to_string(j.get<unsigned long long>());
    return;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("dump_json_17: non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void dump(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, item.key());
        out += ": ";
        dump(out, item.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump(out, e, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::string:
      append_escaped(out, j.get<std::string>());
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::null:
      out += "null";
      return;
    default:
      append_number(out, j);
      return;
  }
}

}  // namespace

std::string dump_json_17(const Json& j) {
  std::string out;
  dump(out, j, 0);
  out += '\n';
  return out;
}

}  // namespace expmom
