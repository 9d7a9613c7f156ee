#include "qproj/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "qproj/report.hpp"

namespace qproj {

namespace {

struct CommonOpts {
  std::string input_path;
  std::string mode = "auto";  // auto | numeric | exact
  double tol = 1e-9;
  long long max_den = 1000000;
  std::uint64_t seed = 0;
  int iters = 10000;
  int samples = 20;
  double eps = -1;
  bool assume_extension = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input_path, "element description file")->required();
  cmd->add_option("--mode", o.mode, "jordan analysis mode: auto, numeric, exact")
      ->check(CLI::IsMember({"auto", "numeric", "exact"}));
  cmd->add_option("--tol", o.tol, "unit-modulus / rationality tolerance");
  cmd->add_option("--max-den", o.max_den, "rational angle denominator bound");
  cmd->add_option("--seed", o.seed, "randomness seed");
  cmd->add_option("--iters", o.iters, "orbit length");
  cmd->add_option("--samples", o.samples, "compact sample count");
  cmd->add_option("--eps", o.eps, "containment epsilon (row-dependent default)");
  cmd->add_flag("--assume-extension", o.assume_extension,
                "accept unit block eigenvalues != 1 in the parabolic rows 2-4");
  cmd->add_option("--out", o.out_path, "write the report to a file instead of stdout");
}

void write_out(const CommonOpts& o, const std::string& payload, std::ostream& out) {
  if (o.out_path.empty()) {
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << "\n";
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot open output file " + o.out_path);
  f << payload;
  if (payload.empty() || payload.back() != '\n') f << "\n";
}

struct Loaded {
  InputSpec spec;
  QMatrix g;
  ElementClass cls;
  JordanData jd;
};

Loaded load_and_classify(const CommonOpts& o) {
  std::ifstream f(o.input_path, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot open " + o.input_path);
  std::ostringstream buf;
  buf << f.rdbuf();

  Loaded ld;
  ld.spec = parse_input(buf.str());
  ld.g = assemble_element(ld.spec);

  ClassifyOptions copts;
  copts.tol = o.tol;
  copts.max_den = o.max_den;
  copts.assume_extension = o.assume_extension;

  const bool exact_available = ld.spec.mode == InputMode::Jordan;
  bool use_exact;
  if (o.mode == "auto") {
    use_exact = exact_available;
  } else if (o.mode == "exact") {
    if (!exact_available) {
      throw Error(Errc::ParseError, "--mode exact needs a jordan-mode input file");
    }
    use_exact = true;
  } else {
    use_exact = false;
  }

  if (use_exact) {
    std::tie(ld.cls, ld.jd) =
        classify_element_exact(ld.g, ld.spec.blocks, ld.spec.conjugator, copts);
  } else {
    std::tie(ld.cls, ld.jd) = classify_element(ld.g, copts);
  }
  return ld;
}

VerifyParams make_params(const CommonOpts& o) {
  VerifyParams vp;
  vp.seed = o.seed;
  vp.iters = o.iters;
  vp.num_compact = o.samples;
  vp.eps_contain = o.eps;
  return vp;
}

int cmd_classify(const CommonOpts& o, std::ostream& out) {
  const Loaded ld = load_and_classify(o);
  write_out(o, emit_classify_report(ld.cls, ld.jd), out);
  return 0;
}

int cmd_limitset(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  const Loaded ld = load_and_classify(o);
  if (ld.cls.tag == ClassTag::OutOfCatalog) {
    err << "element matches no catalog row\n";
    for (const auto& d : ld.cls.diagnostics) err << "  " << d << "\n";
    return 2;
  }
  write_out(o, emit_limit_set(limit_set_of(ld.cls)), out);
  return 0;
}

int cmd_verify(const CommonOpts& o, double min_containment, int coverage_samples,
               std::ostream& out, std::ostream& err) {
  const Loaded ld = load_and_classify(o);
  if (ld.cls.tag == ClassTag::OutOfCatalog) {
    err << "element matches no catalog row\n";
    for (const auto& d : ld.cls.diagnostics) err << "  " << d << "\n";
    return 2;
  }
  const LimitSet ls = limit_set_of(ld.cls);
  VerifyParams vp = make_params(o);
  if (coverage_samples > 0) vp.coverage_samples = coverage_samples;
  const VerificationReport rep = verify_limit_set(ld.g, ld.cls, ls, vp);
  write_out(o, emit_verification_report(rep, vp), out);
  if (rep.containment_applicable && rep.containment < min_containment) {
    err << "containment " << rep.containment << " below threshold " << min_containment << "\n";
    return 3;
  }
  return 0;
}

int cmd_orbit(const CommonOpts& o, const std::string& start, int direction, std::ostream& out) {
  const Loaded ld = load_and_classify(o);
  ProjPoint seed;
  if (!start.empty()) {
    std::vector<Quaternion> coords;
    std::string tok;
    std::istringstream in(start);
    while (std::getline(in, tok, ':')) coords.push_back(parse_quaternion(tok));
    if (static_cast<int>(coords.size()) != ld.spec.dim) {
      throw Error(Errc::DimensionMismatch, "--start needs " + std::to_string(ld.spec.dim) +
                                               " colon-separated coordinates");
    }
    seed = ProjPoint(std::move(coords));
  } else {
    std::mt19937_64 rng(o.seed ^ 0x5eedULL);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Quaternion> coords(ld.spec.dim);
    for (auto& q : coords) q = Quaternion(n(rng), n(rng), n(rng), n(rng));
    seed = ProjPoint(std::move(coords));
  }
  const OrbitRecord orbit = iterate_orbit(ld.g, seed, o.iters, direction);
  std::optional<LimitSet> ls;
  if (ld.cls.tag != ClassTag::OutOfCatalog) ls = limit_set_of(ld.cls);
  write_out(o, emit_orbit_csv(orbit, ls ? &*ls : nullptr), out);
  return 0;
}

int cmd_powerlimit(const CommonOpts& o, int direction, int doublings, std::ostream& out) {
  const Loaded ld = load_and_classify(o);
  const PseudoLimit pl = pseudo_projective_limit(ld.g, doublings, direction);
  write_out(o, emit_pseudo_limit(pl), out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"classification, Kulkarni limit sets, and dynamics of quaternionic "
               "projective transformations"};
  app.require_subcommand(1);

  CommonOpts copt;
  double min_containment = 0.99;
  int coverage_samples = -1;
  std::string orbit_start;
  int direction = 1;
  int doublings = 42;

  CLI::App* c_classify = app.add_subcommand("classify", "catalog row of an element");
  add_common(c_classify, copt);

  CLI::App* c_limitset = app.add_subcommand("limitset", "closed-form Kulkarni limit set");
  add_common(c_limitset, copt);

  CLI::App* c_verify = app.add_subcommand("verify", "numerical witnesses for the limit set");
  add_common(c_verify, copt);
  c_verify->add_option("--min-containment", min_containment,
                       "exit 3 when containment falls below this fraction");
  c_verify->add_option("--coverage-samples", coverage_samples,
                       "target samples per limit-set component");

  CLI::App* c_orbit = app.add_subcommand("orbit", "orbit dump as CSV");
  add_common(c_orbit, copt);
  c_orbit->add_option("--start", orbit_start, "seed point, colon-separated quaternion literals");
  c_orbit->add_option("--direction", direction, "+1 forward, -1 backward")
      ->check(CLI::IsMember({1, -1}));

  CLI::App* c_power = app.add_subcommand("powerlimit", "pseudo-projective limit of the powers");
  add_common(c_power, copt);
  c_power->add_option("--direction", direction, "+1 forward, -1 backward")
      ->check(CLI::IsMember({1, -1}));
  c_power->add_option("--doublings", doublings, "number of squaring checkpoints");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(copt, out);
    if (c_limitset->parsed()) return cmd_limitset(copt, out, err);
    if (c_verify->parsed()) return cmd_verify(copt, min_containment, coverage_samples, out, err);
    if (c_orbit->parsed()) return cmd_orbit(copt, orbit_start, direction, out);
    if (c_power->parsed()) return cmd_powerlimit(copt, direction, doublings, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case Errc::ParseError:
      case Errc::DimensionMismatch: return 1;
      default: return 4;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 4;
  }
  return 1;
}

}  // namespace qproj
