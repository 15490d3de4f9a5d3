#include "volprod/cli/commands.hpp"

#include "volprod/cli/body_spec.hpp"
#include "volprod/cli/report.hpp"
#include "volprod/errors.hpp"
#include "volprod/mahler.hpp"
#include "volprod/signed_volume.hpp"
#include "volprod/symplectic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace volprod::cli {
namespace {

struct Options {
  int dim = 3;
  std::string group;
  int samples = 50;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string csv;
  bool assert_checks = false;
  std::string body;
  std::string k;
  std::string t;
  std::string check = "all";
  int threads = 0;
};

bool usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::DegenerateInput:
    case ErrorKind::OriginNotInterior:
    case ErrorKind::NotCentrallySymmetric:
    case ErrorKind::NotInvariant:
    case ErrorKind::DependentVectors:
    case ErrorKind::PointOutside:
    case ErrorKind::TooLarge:
      return true;
    default:
      return false;
  }
}

Status status_of(bool pass) { return pass ? Status::Pass : Status::Fail; }

Json body_summary(const Body& b) {
  Json j;
  j["kind"] = body_kind(b);
  j["dim"] = body_dim(b);
  if (const auto* p = std::get_if<Polytope>(&b)) {
    j["vertices"] = p->vertices().size();
    j["facets"] = p->facets().size();
  }
  return j;
}

StarBody as_star(const Body& b) {
  if (const auto* s = std::get_if<StarBody>(&b)) return *s;
  return StarBody::from_polytope(std::get<Polytope>(b));
}

void emit(const Report& report, const Options& o, std::ostream& out) {
  const Json j = report.json();
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.out + "'");
    f << j.dump(2) << '\n';
    out << report.passed() << " passed, " << report.failed() << " failed, " << report.skipped() << " skipped\n";
  }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.csv + "'");
    f << report.csv();
  }
}

void run_verify(const Options& o, Report& report) {
  if (o.dim < 2 || o.dim > 6) throw Error(ErrorKind::InvalidArgument, "verify supports 2 <= dim <= 6");
  if (o.group.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs --group");
  const GroupSpec spec = parse_group_spec(o.group, o.dim);
  const double tol = o.tol.value_or(1e-6);
  const auto checks = verify_bound(spec, o.samples, o.seed, Tolerances::from_environment(), o.threads);
  const std::string tag = spec.is_simplex() ? "mahler-simplex-bound" : "mahler-diamond-bound";
  for (const auto& c : checks) {
    Record r;
    r.name = c.name;
    r.tag = tag;
    r.value = c.product;
    r.bound = c.bound;
    r.margin = c.margin;
    r.status = status_of(c.margin >= -tol);
    r.values["group"] = to_string(spec.family);
    r.values["seed"] = c.seed;
    r.values["generating_points"] = 1 + c.index % 3;
    r.values["vertex_count"] = c.vertex_count;
    r.values["centrally_symmetric"] = c.centrally_symmetric;
    r.values["santalo_point"] = to_json(c.santalo_point);
    report.add(std::move(r));
  }
}

void run_volprod(const Options& o, Report& report, const Tolerances& tol) {
  const Body body = load_body(o.body, o.dim, tol);
  const auto vp = volume_product(body, o.body);
  const bool symmetric = body_centrally_symmetric(body);
  const int n = body_dim(body);
  Record r;
  r.name = o.body;
  r.tag = symmetric ? "mahler-symmetric-bound" : "mahler-nonsymmetric-bound";
  r.value = vp.product;
  r.bound = mahler_bound(n, symmetric ? BoundKind::Symmetric : BoundKind::Nonsymmetric);
  r.margin = vp.product - *r.bound;
  const double slack = o.tol.value_or(body_is_exact(body) ? 1e-6 : 10.0 * tol.tol_quad * *r.bound);
  r.status = status_of(*r.margin >= -slack);
  r.values["body"] = body_summary(body);
  r.values["volume"] = vp.volume;
  r.values["polar_volume_at_santalo"] = vp.polar_volume_at_santalo;
  r.values["product"] = vp.product;
  r.values["santalo_point"] = to_json(vp.santalo_point);
  r.values["centrally_symmetric"] = symmetric;
  report.add(std::move(r));
}

void run_santalo(const Options& o, Report& report, const Tolerances& tol) {
  const Body body = load_body(o.body, o.dim, tol);
  const SantaloResult s = std::visit([](const auto& b) { return santalo(b); }, body);
  Record r;
  r.name = o.body;
  r.tag = "santalo-point";
  r.value = s.polar_volume;
  r.values["body"] = body_summary(body);
  r.values["santalo_point"] = to_json(s.point);
  r.values["polar_volume"] = s.polar_volume;
  r.values["iterations"] = s.iterations;
  r.values["gradient_norm"] = s.gradient_norm;
  report.add(std::move(r));
  if (const auto* p = std::get_if<Polytope>(&body)) {
    const double half = 0.5 * interior_margin(*p, s.point);
    const Vector d = half * Vector::Unit(p->dim(), 0);
    const auto diag = santalo_unimodality(*p, s.point - d, s.point + d);
    Record u;
    u.name = o.body + ":segment";
    u.tag = "santalo-unimodality";
    u.status = status_of(diag.unimodal && diag.solver_is_min);
    u.value = diag.solver_value;
    u.bound = diag.sampled_min;
    u.values["unimodal"] = diag.unimodal;
    u.values["solver_is_min"] = diag.solver_is_min;
    u.values["samples"] = diag.values;
    report.add(std::move(u));
  }
}

void run_capacity(const Options& o, Report& report, const Tolerances& tol) {
  if (o.k.empty() || o.t.empty()) throw Error(ErrorKind::InvalidArgument, "capacity needs --k and --t");
  const Body k = load_body(o.k, o.dim, tol);
  const Body t = load_body(o.t, o.dim, tol);
  const CapacityReport c = viterbo_check(k, t);
  Record cap;
  cap.name = o.k + " x " + o.t;
  cap.tag = "capacity-inradius";
  cap.value = c.c_hz;
  cap.values["inradius"] = c.inradius;
  cap.values["c_hz"] = c.c_hz;
  cap.values["k_volume"] = c.k_volume;
  cap.values["t_volume"] = c.t_volume;
  report.add(std::move(cap));

  Record v;
  v.name = o.k + " x " + o.t;
  v.tag = "viterbo-inequality";
  v.value = c.viterbo_lhs;
  v.bound = c.viterbo_rhs;
  v.margin = c.viterbo_rhs - c.viterbo_lhs;
  v.status = status_of(c.pass);
  v.values["n"] = c.n;
  v.values["volume"] = c.volume;
  v.values["tolerance"] = c.tolerance;
  report.add(std::move(v));

  try {
    const ViterboChain chain = mahler_implies_viterbo_chain(k, t);
    for (const auto& l : chain.links) {
      Record r;
      r.name = l.name;
      r.tag = "mahler-viterbo-chain";
      r.value = l.lhs;
      r.bound = l.rhs;
      r.margin = l.slack;
      r.status = status_of(l.pass);
      r.values["mahler_class"] = chain.mahler_class;
      report.add(std::move(r));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisNotCovered) throw;
    Record r;
    r.name = "chain";
    r.tag = "mahler-viterbo-chain";
    r.status = Status::Skipped;
    r.note = e.what();
    report.add(std::move(r));
  }
}

void skip(Report& report, const std::string& name, const std::string& tag, const Error& e) {
  Record r;
  r.name = name;
  r.tag = tag;
  r.status = Status::Skipped;
  r.note = e.what();
  report.add(std::move(r));
}

void run_signed(const Options& o, Report& report, const Tolerances& tol) {
  const Body body = load_body(o.body, o.dim, tol);
  const StarBody k = as_star(body);
  const int n = k.dim();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "signed checks need n >= 2");
  const GroupSpec spec = parse_group_spec(o.group.empty() ? "o-diamond" : o.group, n);
  const SymmetryGroup group = SymmetryGroup::generate(spec);
  const auto frame = group.frame();
  const std::vector<Vector> face(frame.begin() + 1, frame.end());
  const std::string check = o.check == "prop24" ? "estimate" : o.check;
  const std::vector<std::string> known{"all", "patch", "estimate", "duality", "bf", "chain"};
  if (std::find(known.begin(), known.end(), check) == known.end())
    throw Error(ErrorKind::InvalidArgument, "unknown --check '" + o.check + "'");
  auto wanted = [&](const char* c) { return check == "all" || check == c; };

  if (wanted("patch")) {
    const PatchVector pv = patch_vector(k, face);
    double orth = 0.0;
    for (const auto& a : face) orth = std::max(orth, std::abs(pv.vector.dot(a)) / a.norm());
    Record r;
    r.name = "patch";
    r.tag = "signed-volume-vector";
    r.value = pv.vector.norm();
    r.status = status_of(orth <= 1e-8);
    r.values["vector"] = to_json(pv.vector);
    r.values["orthogonality_residual"] = orth;
    r.values["error_estimate"] = pv.error_estimate;
    r.values["cone_volume"] = cone_volume(k, face);
    report.add(std::move(r));
  }
  if (wanted("estimate")) {
    Rng rng(o.seed);
    std::vector<Vector> points{Vector::Zero(n)};
    for (const auto& a : frame) points.push_back(k.radial(a) * a);
    while (points.size() < 8) {
      const Vector u = rng.unit_vector(n);
      points.push_back(rng.uniform() * k.radial(u) * u);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      const SignedEstimate s = signed_estimate_check(k, frame, points[i]);
      Record r;
      r.name = "point-" + std::to_string(i);
      r.tag = "signed-volume-estimate";
      r.value = s.lhs;
      r.bound = s.rhs;
      r.margin = s.rhs - s.lhs;
      r.status = status_of(s.pass);
      r.values["x"] = to_json(points[i]);
      Json faces = Json::array();
      for (const auto& f : s.face_vectors) faces.push_back(to_json(f));
      r.values["face_vectors"] = faces;
      report.add(std::move(r));
    }
  }
  if (wanted("duality")) {
    try {
      const DualityIdentity d = duality_identity(k, face);
      Record r;
      r.name = "duality";
      r.tag = "signed-volume-duality";
      r.value = d.lhs;
      r.bound = d.rhs;
      r.margin = -d.residual;
      r.status = status_of(d.residual <= o.tol.value_or(10.0 * tol.tol_quad));
      r.values["patch"] = to_json(d.patch);
      r.values["image_patch"] = to_json(d.image_patch);
      r.values["cone_volume"] = d.cone;
      r.values["polar_cone_volume"] = d.polar_cone;
      r.values["residual"] = d.residual;
      report.add(std::move(r));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonSmoothKind) throw;
      skip(report, "duality", "signed-volume-duality", e);
    }
  }
  if (wanted("bf")) {
    const double alpha = spec.is_simplex() ? -1.0 / n : 0.0;
    for (int level = 2; level <= n; ++level) {
      const std::string name = "level-" + std::to_string(level);
      try {
        const BfResult b = bf_inequality(k, alpha, level, frame);
        Record r;
        r.name = name;
        r.tag = "bf-inequality";
        r.value = b.lhs;
        r.bound = b.rhs;
        r.margin = b.lhs - b.rhs;
        r.status = status_of(b.pass);
        r.values["alpha"] = alpha;
        r.values["factor"] = b.factor;
        r.values["hypothesis_residuals"] = b.hypothesis_residuals;
        report.add(std::move(r));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::HypothesisViolated || e.kind() == ErrorKind::NonSmoothKind) {
          skip(report, name, "bf-inequality", e);
          continue;
        }
        throw;
      }
    }
  }
  if (wanted("chain")) {
    try {
      const IkChain c = ik_chain(k, spec);
      Record r;
      r.name = "chain";
      r.tag = "ik-chain";
      r.value = c.values.back();
      r.bound = c.chain_end;
      r.margin = c.values.back() - c.chain_end;
      r.status = status_of(c.pass);
      r.values["dilation"] = c.dilation;
      r.values["alpha"] = c.alpha;
      r.values["I"] = c.values;
      r.values["factors"] = c.factors;
      r.values["step_passes"] = c.step_passes;
      r.values["chained_bound"] = c.chained_bound;
      r.values["product_lower_bound"] = c.product_lower_bound;
      report.add(std::move(r));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolated && e.kind() != ErrorKind::NonSmoothKind) throw;
      skip(report, "chain", "ik-chain", e);
    }
  }
}

void run_bodies(const Options& o, Report& report, const Tolerances& tol) {
  if (o.body.empty()) {
    const std::vector<std::pair<std::string, std::string>> catalog{
        {"cube", "[-1,1]^n"},
        {"cross", "hull of +-e_i"},
        {"simplex", "regular simplex with unit vertices, centroid at o"},
        {"ball", "Euclidean unit ball"},
        {"lp:<p>", "unit ball of the p-norm, 1 < p < infinity"},
    };
    for (const auto& [name, text] : catalog) {
      Record r;
      r.name = name;
      r.tag = "shorthand";
      r.note = text;
      report.add(std::move(r));
    }
    Record kinds;
    kinds.name = "file-kinds";
    kinds.tag = "body-file";
    kinds.values["kinds"] = {"vpolytope", "hpolytope", "lp_ball", "perturbed", "orbit_hull"};
    report.add(std::move(kinds));
    return;
  }
  const Body body = load_body(o.body, o.dim, tol);
  Record r;
  r.name = o.body;
  r.tag = "body";
  r.value = body_volume(body);
  r.values = body_summary(body);
  r.values["volume"] = *r.value;
  r.values["centrally_symmetric"] = body_centrally_symmetric(body);
  report.add(std::move(r));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume products, Santalo points, signed volumes and capacities of convex bodies", "volprod"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "ambient dimension for shorthands and groups")->check(CLI::Range(1, kMaxDim));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "pass tolerance for margins");
    sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
    sub->add_option("--csv", o.csv, "also write the records as CSV");
    sub->add_flag("--assert", o.assert_checks, "exit 1 when a check fails");
  };
  auto* verify = app.add_subcommand("verify", "check the Mahler-type bound on random invariant bodies");
  common(verify);
  verify->add_option("--group", o.group, "o-simplex | so-simplex | o-diamond | so-diamond")->required();
  verify->add_option("--samples", o.samples, "number of random bodies")->check(CLI::PositiveNumber);
  verify->add_option("--threads", o.threads, "worker threads (0: hardware)");

  auto* volprod = app.add_subcommand("volprod", "volume product at the Santalo point");
  common(volprod);
  volprod->add_option("--body", o.body, "body file or shorthand")->required();

  auto* santalo_cmd = app.add_subcommand("santalo", "Santalo point");
  common(santalo_cmd);
  santalo_cmd->add_option("--body", o.body, "body file or shorthand")->required();

  auto* capacity = app.add_subcommand("capacity", "capacity of a Lagrangian product K x T");
  common(capacity);
  capacity->add_option("--k", o.k, "position body")->required();
  capacity->add_option("--t", o.t, "momentum body")->required();

  auto* signed_cmd = app.add_subcommand("signed", "signed-volume checks");
  common(signed_cmd);
  signed_cmd->add_option("--body", o.body, "body file or shorthand")->required();
  signed_cmd->add_option("--check", o.check, "all | patch | estimate (alias prop24) | duality | bf | chain");
  signed_cmd->add_option("--group", o.group, "group supplying the frame (default o-diamond)");

  auto* bodies = app.add_subcommand("bodies", "list shorthands, or describe --body");
  common(bodies);
  bodies->add_option("--body", o.body, "body file or shorthand");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    const Tolerances tol = Tolerances::from_environment();
    Report report(name, args, o.seed, tol);
    if (name == "verify") run_verify(o, report);
    else if (name == "volprod") run_volprod(o, report, tol);
    else if (name == "santalo") run_santalo(o, report, tol);
    else if (name == "capacity") run_capacity(o, report, tol);
    else if (name == "signed") run_signed(o, report, tol);
    else run_bodies(o, report, tol);
    emit(report, o, out);
    const bool gate = name == "verify" || o.assert_checks;
    return gate && report.failed() > 0 ? kExitCheckFailed : kExitPass;
  } catch (const Error& e) {
    err << "volprod " << name << ": " << e.what() << '\n';
    return usage_kind(e.kind()) ? kExitUsage : kExitCheckFailed;
  }
}

}  // namespace volprod::cli
