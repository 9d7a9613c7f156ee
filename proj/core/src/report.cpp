#include "qproj/report.hpp"

#include <cmath>
#include <cstdio>

namespace qproj {

Json Json::array() {
  Json j;
  j.kind_ = Kind::Array;
  return j;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Object;
  return j;
}

void Json::push_back(Json v) {
  if (kind_ != Kind::Array) throw Error(Errc::ParseError, "push_back on a non-array");
  array_.push_back(std::move(v));
}

Json& Json::operator[](const std::string& key) {
  if (kind_ == Kind::Null) kind_ = Kind::Object;
  if (kind_ != Kind::Object) throw Error(Errc::ParseError, "key access on a non-object");
  return object_[key];
}

namespace {

void write_escaped(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void Json::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += bool_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(int_); break;
    case Kind::Double: {
      if (std::isnan(double_) || std::isinf(double_)) {
        out += "null";
      } else {
        out += print_real(double_);
      }
      break;
    }
    case Kind::String: write_escaped(string_, out); break;
    case Kind::Array: {
      out += '[';
      for (size_t i = 0; i < array_.size(); ++i) {
        if (i) out += ',';
        array_[i].write(out);
      }
      out += ']';
      break;
    }
    case Kind::Object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : object_) {
        if (!first) out += ',';
        first = false;
        write_escaped(k, out);
        out += ':';
        v.write(out);
      }
      out += '}';
      break;
    }
  }
}

std::string Json::dump() const {
  std::string out;
  write(out);
  return out;
}

namespace {

Json block_json(const JordanBlock& b) {
  Json j = Json::object();
  j["eigenvalue"] = print_quaternion(Quaternion::from_complex(b.eigenvalue.value()));
  j["size"] = b.size;
  if (b.angle) {
    if (b.angle->rational) {
      j["angle"] = std::to_string(b.angle->p) + "/" + std::to_string(b.angle->q);
    } else {
      j["angle"] = b.angle->value;
      j["angleIrrational"] = true;
    }
  }
  return j;
}

Json point_json(const ProjPoint& p) {
  Json arr = Json::array();
  for (int i = 0; i < p.dim(); ++i) arr.push_back(print_quaternion(p[i]));
  return arr;
}

Json subspace_json(const ProjSubspace& s) {
  Json j = Json::object();
  j["flavor"] = flavor_name(s.flavor);
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(point_json(g));
  j["generators"] = std::move(gens);
  if (!s.axes.empty()) {
    Json axes = Json::array();
    for (int a : s.axes) axes.push_back(a);
    j["axes"] = std::move(axes);
  }
  return j;
}

}  // namespace

std::string emit_classify_report(const ElementClass& cls, const JordanData& jd) {
  Json j = Json::object();
  j["class"] = class_tag_name(cls.tag);
  j["coarse"] = coarse_class_name(cls.coarse);
  j["dim"] = cls.dim;
  j["normalization"] = cls.normalization;
  j["rationalityInferred"] = cls.rationality_inferred;
  j["residual"] = jd.residual;

  Json blocks = Json::array();
  for (const auto& b : cls.tag == ClassTag::OutOfCatalog ? jd.blocks : cls.row_blocks) {
    blocks.push_back(block_json(b));
  }
  j["blocks"] = std::move(blocks);

  if (cls.tag != ClassTag::OutOfCatalog && !cls.angles.empty()) {
    Json angles = Json::array();
    for (const auto& v : cls.angles) {
      Json a = Json::object();
      a["angle"] = v.angle;
      a["declared"] = v.declared;
      if (v.rational) {
        a["rational"] =
            std::to_string(v.rational->first) + "/" + std::to_string(v.rational->second);
      }
      angles.push_back(std::move(a));
    }
    j["angles"] = std::move(angles);
  }

  Json params = Json::object();
  bool any = false;
  if (cls.k) {
    params["k"] = cls.k;
    any = true;
  }
  if (cls.l) {
    params["l"] = cls.l;
    any = true;
  }
  if (cls.m) {
    params["m"] = cls.m;
    any = true;
  }
  if (cls.p) {
    params["p"] = cls.p;
    any = true;
  }
  if (any) j["shape"] = std::move(params);

  if (!cls.diagnostics.empty()) {
    Json diags = Json::array();
    for (const auto& d : cls.diagnostics) diags.push_back(d);
    j["diagnostics"] = std::move(diags);
  }
  return j.dump();
}

std::string emit_limit_set(const LimitSet& ls) {
  Json j = Json::object();
  j["kind"] = limit_kind_name(ls.kind);
  if (ls.kind == LimitKind::Empty || !ls.components.empty()) {
    Json comps = Json::array();
    for (const auto& c : ls.components) comps.push_back(subspace_json(c));
    j["components"] = std::move(comps);
  }
  if (!ls.levels.empty()) {
    Json levels = Json::object();
    for (const auto& [name, idx] : ls.levels) {
      Json arr = Json::array();
      for (int i : idx) arr.push_back(i);
      levels[name] = std::move(arr);
    }
    j["levels"] = std::move(levels);
  }
  if (ls.kind == LimitKind::Union) j["dim"] = ls.dim;
  return j.dump();
}

std::string emit_verification_report(const VerificationReport& rep, const VerifyParams& params) {
  Json j = Json::object();
  j["class"] = rep.row;
  j["dim"] = rep.dim;
  j["seed"] = rep.seed;
  j["epsContain"] = rep.eps_contain;
  j["containmentApplicable"] = rep.containment_applicable;
  if (rep.containment_applicable) {
    j["containment"] = rep.containment;
    j["accumulationCount"] = rep.accumulation_count;
    j["maxMembershipDistance"] = rep.max_membership_distance;
  }
  if (!rep.coverage.empty()) {
    Json cov = Json::array();
    for (const auto& c : rep.coverage) {
      Json e = Json::object();
      e["component"] = c.component;
      e["distance"] = c.distance;
      e["method"] = c.method;
      cov.push_back(std::move(e));
    }
    j["coverage"] = std::move(cov);
  }
  if (rep.elliptic_checked) {
    Json e = Json::object();
    e["orbitFinite"] = rep.orbit_finite;
    if (rep.orbit_finite) {
      e["projectiveOrder"] = rep.projective_order;
      e["orbitDistinctPoints"] = rep.orbit_distinct_points;
    }
    if (rep.recurrence_m > 0) {
      e["recurrenceM"] = rep.recurrence_m;
      e["recurrenceDisplacement"] = rep.recurrence_displacement;
    }
    j["elliptic"] = std::move(e);
  }
  {
    Json p = Json::object();
    p["converged"] = rep.pseudo_converged;
    p["defect"] = rep.pseudo_defect;
    p["power"] = rep.pseudo_power;
    if (rep.image_in_lambda >= 0) p["imageInLambda"] = rep.image_in_lambda;
    j["pseudoLimit"] = std::move(p);
  }
  {
    Json p = Json::object();
    p["accumEps"] = params.accum_eps;
    p["compactPoints"] = params.compact_points;
    p["coverageSamples"] = params.coverage_samples;
    p["epsRecur"] = params.eps_recur;
    p["iters"] = params.iters;
    p["maxDoublings"] = params.max_doublings;
    p["numCompact"] = params.num_compact;
    p["numSeeds"] = params.num_seeds;
    p["recurMaxM"] = params.recur_max_m;
    p["tailFraction"] = params.tail_fraction;
    j["params"] = std::move(p);
  }
  return j.dump();
}

std::string emit_pseudo_limit(const PseudoLimit& pl) {
  Json j = Json::object();
  j["converged"] = pl.converged;
  j["defect"] = pl.defect;
  j["power"] = pl.power;
  Json rows = Json::array();
  for (int r = 0; r < pl.limit.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < pl.limit.dim(); ++c) row.push_back(print_quaternion(pl.limit.at(r, c)));
    rows.push_back(std::move(row));
  }
  j["limitMatrix"] = std::move(rows);
  if (!pl.kernel.generators.empty()) j["kernel"] = subspace_json(pl.kernel);
  if (!pl.image.generators.empty()) j["image"] = subspace_json(pl.image);
  return j.dump();
}

std::string emit_orbit_csv(const OrbitRecord& orbit, const LimitSet* lambda) {
  if (orbit.points.empty()) return "";
  const int dim = orbit.points.front().dim();
  std::string out = "m";
  for (int i = 1; i <= dim; ++i) out += ",x" + std::to_string(i);
  out += ",dist_lambda\n";
  for (size_t t = 0; t < orbit.points.size(); ++t) {
    out += std::to_string(orbit.powers[t]);
    for (int i = 0; i < dim; ++i) out += "," + print_quaternion(orbit.points[t][i]);
    if (lambda) {
      out += "," + print_real(limit_set_membership(orbit.points[t], *lambda, 0.0).second);
    } else {
      out += ",nan";
    }
    out += "\n";
  }
  return out;
}

}  // namespace qproj
