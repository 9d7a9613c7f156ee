#ifndef QPROJ_REPORT_HPP
#define QPROJ_REPORT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qproj/dynamics.hpp"
#include "qproj/input.hpp"

namespace qproj {

/// Minimal JSON value with deterministic serialization: object keys sorted,
/// doubles at 17 significant digits, no whitespace.
class Json {
 public:
  Json() : kind_(Kind::Null) {}
  Json(bool b) : kind_(Kind::Bool), bool_(b) {}                      // NOLINT
  Json(long long i) : kind_(Kind::Int), int_(i) {}                   // NOLINT
  Json(long i) : Json(static_cast<long long>(i)) {}                  // NOLINT
  Json(int i) : Json(static_cast<long long>(i)) {}                   // NOLINT
  Json(std::uint64_t u) : Json(static_cast<long long>(u)) {}         // NOLINT
  Json(double d) : kind_(Kind::Double), double_(d) {}                // NOLINT
  Json(std::string s) : kind_(Kind::String), string_(std::move(s)) {}  // NOLINT
  Json(const char* s) : Json(std::string(s)) {}                      // NOLINT

  static Json array();
  static Json object();

  void push_back(Json v);
  Json& operator[](const std::string& key);

  std::string dump() const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0;
  std::string string_;
  std::vector<Json> array_;
  std::map<std::string, Json> object_;

  void write(std::string& out) const;
};

std::string emit_classify_report(const ElementClass& cls, const JordanData& jd);
std::string emit_limit_set(const LimitSet& ls);
std::string emit_verification_report(const VerificationReport& rep, const VerifyParams& params);
std::string emit_pseudo_limit(const PseudoLimit& pl);

/// Orbit CSV: header m,x1..xN,dist_lambda; coordinates as quaternion
/// literals; the distance column is "nan" when no limit set is available.
std::string emit_orbit_csv(const OrbitRecord& orbit, const LimitSet* lambda);

}  // namespace qproj

#endif
