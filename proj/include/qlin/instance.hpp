#pragma once

#include <cctype>

#include "qlin/linmap.hpp"

namespace qlin {

/* Problem instances in the key=value text format.
 *
 * Tokens are key=value pairs separated by whitespace or newlines, so both
 * a one-line form and a line-per-key file parse the same way.  Everything
 * from '#' to the end of its line is a comment.  Keys: p (characteristic),
 * e (ground exponent, q = p^e), m (coefficient extension degree), t
 * (coefficient encodings t_0..t_r joined by '|'), l (target index,
 * optional).  All moduli are resolved canonically, so equal instances
 * always produce equal towers.
 */

struct InstanceSpec {
  uint64_t p = 0;
  uint64_t e = 1;
  uint64_t m = 1;
  std::vector<std::string> t_enc;  // t_0 first
  std::optional<uint64_t> l;

  FieldCtx ground;       // F_q
  FieldCtx coeff_field;  // F_{q^m}

  LinearizedPoly make_map() const {
    std::vector<FieldElement> t;
    t.reserve(t_enc.size());
    for (const auto& enc : t_enc)
      t.push_back(parse_element(coeff_field, enc));
    return LinearizedPoly(ground, std::move(t));
  }
};

inline InstanceSpec parse_instance(const std::string& text) {
  InstanceSpec spec;
  bool saw_p = false, saw_t = false;
  std::map<std::string, bool> seen;

  size_t lineno = 0;
  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t nl = text.find('\n', line_start);
    std::string line = text.substr(
        line_start, nl == std::string::npos ? std::string::npos
                                            : nl - line_start);
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);

    size_t pos = 0;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      size_t end = pos;
      while (end < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[end])))
        ++end;
      std::string tok = line.substr(pos, end - pos);
      size_t col = pos + 1;
      size_t eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ParseError(lineno, col, "expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (seen[key])
        throw ParseError(lineno, col, "duplicate key '" + key + "'");
      seen[key] = true;
      auto as_uint = [&](const std::string& s) -> uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError(lineno, col, "bad number '" + s + "'");
        try {
          return std::stoull(s);
        } catch (const std::out_of_range&) {
          throw ParseError(lineno, col, "number out of range '" + s + "'");
        }
      };
      if (key == "p") {
        spec.p = as_uint(val);
        saw_p = true;
      } else if (key == "e") {
        spec.e = as_uint(val);
      } else if (key == "m") {
        spec.m = as_uint(val);
      } else if (key == "l") {
        spec.l = as_uint(val);
      } else if (key == "t") {
        saw_t = true;
        size_t b = 0;
        while (b <= val.size()) {
          size_t bar = val.find('|', b);
          std::string enc = val.substr(
              b, bar == std::string::npos ? std::string::npos : bar - b);
          if (enc.empty())
            throw ParseError(lineno, col, "empty coefficient encoding");
          spec.t_enc.push_back(enc);
          if (bar == std::string::npos) break;
          b = bar + 1;
        }
      } else {
        throw ParseError(lineno, col, "unknown key '" + key + "'");
      }
      pos = end;
    }
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }

  if (!saw_p) throw InvalidInstance("missing p");
  if (!saw_t) throw InvalidInstance("missing t");
  if (spec.e == 0 || spec.m == 0)
    throw InvalidInstance("e and m must be positive");
  if (spec.t_enc.size() < 2)
    throw InvalidInstance("need coefficients t_0..t_r with r >= 1");
  if (spec.l && *spec.l == 0) throw InvalidInstance("l must be positive");

  FieldCtx prime;
  try {
    prime = make_prime_field(spec.p);
  } catch (const NotPrime&) {
    throw InvalidInstance("p must be prime");
  }
  spec.ground = spec.e == 1 ? prime : extend_field(prime, uint32_t(spec.e));
  spec.coeff_field = spec.m == 1
                         ? spec.ground
                         : extend_field(spec.ground, uint32_t(spec.m));
  spec.make_map();  // validates coefficients, including t_r != 0
  return spec;
}

}  // namespace qlin
