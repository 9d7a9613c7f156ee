#include "qproj/quaternion.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qproj {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::Singular: return "Singular";
    case Errc::PairingFailure: return "PairingFailure";
    case Errc::DoublingFailure: return "DoublingFailure";
    case Errc::ClusterOverlap: return "ClusterOverlap";
    case Errc::ChainDefect: return "ChainDefect";
    case Errc::NotUnitModulus: return "NotUnitModulus";
    case Errc::EmptySpan: return "EmptySpan";
    case Errc::FlavorUnsupported: return "FlavorUnsupported";
    case Errc::OutOfCatalogRow: return "OutOfCatalogRow";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

Quaternion quat_inverse(const Quaternion& q, double eps) {
  const double n2 = q.norm_sq();
  if (std::sqrt(n2) <= eps) {
    throw Error(Errc::ZeroDivisor, "quaternion modulus below epsilon");
  }
  return q.conj() / n2;
}

double ComplexRep::angle_turns() const {
  double t = std::atan2(im, re) / (2.0 * M_PI);
  if (t < 0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

ComplexRep similarity_representative(const Quaternion& q) {
  return {q.a0, std::sqrt(q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3)};
}

bool approx_equal(const Quaternion& p, const Quaternion& q, double tol) {
  return (p - q).norm() <= tol;
}

namespace {

// Scans one coefficient at s: decimal, or rational p/q. Empty coefficient
// (bare unit like "j") yields 1.
double scan_coefficient(const std::string& s, size_t& pos, bool& had_digits) {
  had_digits = false;
  size_t start = pos;
  while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '.')) ++pos;
  if (pos == start) return 1.0;
  had_digits = true;
  double num = std::strtod(s.substr(start, pos - start).c_str(), nullptr);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    size_t dstart = pos;
    while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '.')) ++pos;
    if (pos == dstart) throw Error(Errc::ParseError, "missing denominator in '" + s + "'");
    double den = std::strtod(s.substr(dstart, pos - dstart).c_str(), nullptr);
    if (den == 0.0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    num /= den;
  }
  return num;
}

}  // namespace

Quaternion parse_quaternion(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace((unsigned char)c)) s.push_back(c);
  }
  if (s.empty()) throw Error(Errc::ParseError, "empty quaternion literal");

  Quaternion out;
  size_t pos = 0;
  bool any_term = false;
  while (pos < s.size()) {
    double sign = 1.0;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    if (pos >= s.size()) throw Error(Errc::ParseError, "dangling sign in '" + text + "'");
    bool had_digits = false;
    double c = sign * scan_coefficient(s, pos, had_digits);
    char unit = '\0';
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j' || s[pos] == 'k')) {
      unit = s[pos];
      ++pos;
    }
    if (!had_digits && unit == '\0') {
      throw Error(Errc::ParseError, "unexpected character '" + std::string(1, s[pos]) +
                                        "' in quaternion literal '" + text + "'");
    }
    switch (unit) {
      case '\0': out.a0 += c; break;
      case 'i': out.a1 += c; break;
      case 'j': out.a2 += c; break;
      case 'k': out.a3 += c; break;
    }
    any_term = true;
  }
  if (!any_term) throw Error(Errc::ParseError, "empty quaternion literal");
  return out;
}

std::string print_real(double x) {
  if (x == 0.0) x = 0.0;  // fold -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string print_quaternion(const Quaternion& q) {
  const double comp[4] = {q.a0, q.a1, q.a2, q.a3};
  const char* unit[4] = {"", "i", "j", "k"};
  std::string out;
  for (int t = 0; t < 4; ++t) {
    double c = comp[t];
    if (c == 0.0) continue;
    if (!out.empty() && c > 0) out += "+";
    if (t > 0 && c == 1.0) {
      out += unit[t];
    } else if (t > 0 && c == -1.0) {
      out += "-";
      out += unit[t];
    } else {
      out += print_real(c);
      out += unit[t];
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace qproj
