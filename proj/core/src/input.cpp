#include "qproj/input.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace qproj {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(at.line) + ", column " +
                                    std::to_string(at.column) + ": " + msg);
}

[[noreturn]] void fail_dim(const Token& at, const std::string& msg) {
  throw Error(Errc::DimensionMismatch, "line " + std::to_string(at.line) + ": " + msg);
}

std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::vector<Token> toks;
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace((unsigned char)raw[i])) ++i;
      if (i >= raw.size()) break;
      const size_t start = i;
      while (i < raw.size() && !std::isspace((unsigned char)raw[i])) ++i;
      toks.push_back({raw.substr(start, i - start), lineno, static_cast<int>(start) + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

long long parse_integer(const Token& t) {
  char* end = nullptr;
  const long long v = std::strtoll(t.text.c_str(), &end, 10);
  if (end == t.text.c_str() || *end != '\0') fail(t, "expected an integer, got '" + t.text + "'");
  return v;
}

// Eigenvalue token: e2pi(p/q), e2pi(decimal), or a quaternion literal.
JordanBlock parse_eigenvalue(const Token& t) {
  JordanBlock b;
  const std::string& s = t.text;
  if (s.rfind("e2pi(", 0) == 0) {
    if (s.back() != ')') fail(t, "unterminated e2pi(...)");
    const std::string arg = s.substr(5, s.size() - 6);
    const size_t slash = arg.find('/');
    if (slash != std::string::npos) {
      char* end = nullptr;
      const long long p = std::strtoll(arg.c_str(), &end, 10);
      if (end != arg.c_str() + slash) fail(t, "bad fraction in e2pi: '" + arg + "'");
      const long long q = std::strtoll(arg.c_str() + slash + 1, &end, 10);
      if (*end != '\0' || q <= 0) fail(t, "bad fraction in e2pi: '" + arg + "'");
      b.angle = AngleDecl::make_rational(p, q);
    } else {
      char* end = nullptr;
      const double v = std::strtod(arg.c_str(), &end);
      if (end == arg.c_str() || *end != '\0') fail(t, "bad angle in e2pi: '" + arg + "'");
      b.angle = AngleDecl::make_irrational(v);
    }
    const double turns = b.angle->value;
    b.eigenvalue = ComplexRep(std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns));
    return b;
  }
  Quaternion q;
  try {
    q = parse_quaternion(s);
  } catch (const Error& e) {
    fail(t, e.what());
  }
  if (q.norm() <= kEps) fail(t, "zero eigenvalue");
  b.eigenvalue = similarity_representative(q);
  return b;
}

std::vector<Quaternion> parse_row(const std::vector<Token>& toks, int dim) {
  if (static_cast<int>(toks.size()) - 1 != dim) {
    fail_dim(toks[0], "row has " + std::to_string(toks.size() - 1) + " entries, expected " +
                          std::to_string(dim));
  }
  std::vector<Quaternion> row;
  row.reserve(dim);
  for (size_t i = 1; i < toks.size(); ++i) {
    try {
      row.push_back(parse_quaternion(toks[i].text));
    } catch (const Error& e) {
      fail(toks[i], e.what());
    }
  }
  return row;
}

}  // namespace

InputSpec parse_input(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::ParseError, "empty input");

  InputSpec spec;
  bool have_mode = false, have_dim = false, in_conjugator = false;
  std::vector<std::vector<Quaternion>> rows, conj_rows;

  for (const auto& toks : lines) {
    const Token& key = toks[0];
    if (key.text == "mode") {
      if (have_mode) fail(key, "duplicate 'mode'");
      if (toks.size() != 2) fail(key, "'mode' takes one argument");
      if (toks[1].text == "matrix") {
        spec.mode = InputMode::Matrix;
      } else if (toks[1].text == "jordan") {
        spec.mode = InputMode::Jordan;
      } else {
        fail(toks[1], "mode must be 'matrix' or 'jordan'");
      }
      have_mode = true;
    } else if (key.text == "dim") {
      if (have_dim) fail(key, "duplicate 'dim'");
      if (toks.size() != 2) fail(key, "'dim' takes one argument");
      const long long d = parse_integer(toks[1]);
      if (d < 1 || d > 64) fail(toks[1], "dim out of range");
      spec.dim = static_cast<int>(d);
      have_dim = true;
    } else if (key.text == "row") {
      if (!have_mode || !have_dim) fail(key, "'row' before 'mode'/'dim'");
      if (spec.mode == InputMode::Matrix) {
        if (in_conjugator) fail(key, "matrix mode has no conjugator section");
        rows.push_back(parse_row(toks, spec.dim));
        if (static_cast<int>(rows.size()) > spec.dim) fail_dim(key, "too many rows");
      } else {
        if (!in_conjugator) fail(key, "jordan mode expects 'block' lines (or a conjugator section)");
        conj_rows.push_back(parse_row(toks, spec.dim));
        if (static_cast<int>(conj_rows.size()) > spec.dim) fail_dim(key, "too many conjugator rows");
      }
    } else if (key.text == "block") {
      if (!have_mode || !have_dim) fail(key, "'block' before 'mode'/'dim'");
      if (spec.mode != InputMode::Jordan) fail(key, "'block' needs mode jordan");
      if (in_conjugator) fail(key, "'block' after the conjugator section");
      if (toks.size() != 3) fail(key, "'block' takes eigenvalue and size");
      JordanBlock b = parse_eigenvalue(toks[1]);
      const long long size = parse_integer(toks[2]);
      if (size < 1 || size > spec.dim) fail(toks[2], "block size out of range");
      b.size = static_cast<int>(size);
      spec.blocks.push_back(std::move(b));
    } else if (key.text == "conjugator") {
      if (spec.mode != InputMode::Jordan) fail(key, "conjugator section needs mode jordan");
      if (in_conjugator) fail(key, "duplicate 'conjugator'");
      if (toks.size() != 1) fail(key, "'conjugator' takes no arguments");
      in_conjugator = true;
    } else {
      fail(key, "unknown keyword '" + key.text + "'");
    }
  }

  if (!have_mode) throw Error(Errc::ParseError, "missing 'mode'");
  if (!have_dim) throw Error(Errc::ParseError, "missing 'dim'");

  if (spec.mode == InputMode::Matrix) {
    if (static_cast<int>(rows.size()) != spec.dim) {
      throw Error(Errc::DimensionMismatch,
                  "expected " + std::to_string(spec.dim) + " rows, got " +
                      std::to_string(rows.size()));
    }
    QMatrix m(spec.dim);
    for (int r = 0; r < spec.dim; ++r)
      for (int c = 0; c < spec.dim; ++c) m.at(r, c) = rows[r][c];
    spec.matrix = std::move(m);
  } else {
    int total = 0;
    for (const auto& b : spec.blocks) total += b.size;
    if (total != spec.dim) {
      throw Error(Errc::DimensionMismatch,
                  "block sizes sum to " + std::to_string(total) + ", expected " +
                      std::to_string(spec.dim));
    }
    if (in_conjugator) {
      if (static_cast<int>(conj_rows.size()) != spec.dim) {
        throw Error(Errc::DimensionMismatch,
                    "conjugator needs " + std::to_string(spec.dim) + " rows, got " +
                        std::to_string(conj_rows.size()));
      }
      QMatrix c(spec.dim);
      for (int r = 0; r < spec.dim; ++r)
        for (int cc = 0; cc < spec.dim; ++cc) c.at(r, cc) = conj_rows[r][cc];
      spec.conjugator = std::move(c);
    }
  }
  return spec;
}

std::string print_input(const InputSpec& spec) {
  std::string out;
  out += spec.mode == InputMode::Matrix ? "mode matrix\n" : "mode jordan\n";
  out += "dim " + std::to_string(spec.dim) + "\n";
  if (spec.mode == InputMode::Matrix) {
    for (int r = 0; r < spec.dim; ++r) {
      out += "row";
      for (int c = 0; c < spec.dim; ++c) {
        out += " " + print_quaternion(spec.matrix->at(r, c));
      }
      out += "\n";
    }
    return out;
  }
  for (const auto& b : spec.blocks) {
    out += "block ";
    if (b.angle && b.angle->rational) {
      out += "e2pi(" + std::to_string(b.angle->p) + "/" + std::to_string(b.angle->q) + ")";
    } else if (b.angle) {
      out += "e2pi(" + print_real(b.angle->value) + ")";
    } else {
      out += print_quaternion(Quaternion::from_complex(b.eigenvalue.value()));
    }
    out += " " + std::to_string(b.size) + "\n";
  }
  if (spec.conjugator) {
    out += "conjugator\n";
    for (int r = 0; r < spec.dim; ++r) {
      out += "row";
      for (int c = 0; c < spec.dim; ++c) {
        out += " " + print_quaternion(spec.conjugator->at(r, c));
      }
      out += "\n";
    }
  }
  return out;
}

QMatrix assemble_element(const InputSpec& spec) {
  if (spec.mode == InputMode::Matrix) return *spec.matrix;
  std::vector<QMatrix> parts;
  parts.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) {
    parts.push_back(QMatrix::jordan_block(Quaternion::from_complex(b.eigenvalue.value()), b.size));
  }
  const QMatrix j = QMatrix::block_diag(parts);
  if (!spec.conjugator) return j;
  return inverse(*spec.conjugator) * j * (*spec.conjugator);
}

}  // namespace qproj
