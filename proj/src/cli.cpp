#include "knaster/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "knaster/borsuk.hpp"
#include "knaster/cover.hpp"
#include "knaster/groups.hpp"
#include "knaster/inscribe.hpp"
#include "knaster/io.hpp"
#include "knaster/oracle.hpp"
#include "knaster/templates.hpp"

namespace knaster {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240611;

// ---------------------------------------------------------------------------
// Output

std::string number_text(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann writes the shortest round-trip form; floats are written with 17
// significant digits here instead.
void write_json(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case json::value_t::number_float:
      os << number_text(j.get<double>());
      return;
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 2);
      }
      os << '\n' << close << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent + 2);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent + 2);
      }
      os << '\n' << close << ']';
      return;
    }
    default:
      os << j.dump();
  }
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_json(out, doc);
    out << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot open for writing");
  write_json(f, doc);
  f << '\n';
}

json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const Rotation& r) {
  const Eigen::Vector4d q = r.wxyz();
  return json::array({q[0], q[1], q[2], q[3]});
}

json to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

json to_json(const Polytope& p) {
  json v = json::array(), f = json::array();
  for (const Vec3& x : p.vertices) v.push_back(to_json(x));
  for (const std::vector<int>& face : p.faces) f.push_back(face);
  return {{"vertices", v}, {"faces", f}};
}

// ---------------------------------------------------------------------------
// Argument helpers

BoxTemplate parse_template(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("--template: invalid number \"" + s + "\" in \"" + spec + "\"");
    return v;
  };
  try {
    if (spec == "cube") return cube_template();
    if (spec.rfind("sq:", 0) == 0) return square_based_template(number(spec.substr(3)));
    if (spec.rfind("box:", 0) == 0) {
      std::vector<double> a;
      std::stringstream ss(spec.substr(4));
      std::string item;
      while (std::getline(ss, item, ',')) a.push_back(number(item));
      if (a.size() != 3) throw InputError("--template box: expects three ratios a1,a2,a3");
      return make_template(a[0], a[1], a[2]);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--template: ") + e.what());
  }
  throw InputError("--template: expected cube, sq:RHO or box:A1,A2,A3, got \"" + spec + "\"");
}

MultistartConfig search_config(int starts, std::uint64_t seed, double tol) {
  MultistartConfig c;
  c.starts = starts;
  c.seed = seed;
  c.tol = tol;
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// inscribe

int cmd_inscribe(const std::string& body_path, const std::string& template_spec, int starts,
                 std::uint64_t seed, double tol, const std::string& out_path, std::ostream& out) {
  const BoxTemplate t = parse_template(template_spec);
  const MultistartConfig config = search_config(starts, seed, tol);
  const Body body = load_body(body_path);
  if (!is_origin_symmetric(body)) throw InputError(body_path + ": body must be symmetric about the origin");

  KnasterResult diag;
  const std::vector<InscribedBox> boxes = inscribed_boxes(body, t, config, &diag);

  json clusters = json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const InscribedBox& b = boxes[k];
    json verts = json::array();
    double defect = 0.0;
    for (const Vec3& v : b.vertices) {
      verts.push_back(to_json(v));
      defect = std::max(defect, std::abs(gauge(body, v) - 1.0));
    }
    worst = std::max(worst, defect);
    clusters.push_back({{"quaternion", to_json(b.rotation)},
                        {"lambda", b.lambda},
                        {"residual", b.residual},
                        {"members", diag.clusters[k].members},
                        {"degenerate", b.degenerate},
                        {"vertices", verts},
                        {"max_gauge_defect", defect}});
  }
  json doc = {{"command", "inscribe"},
              {"body", body_path},
              {"template", {{"spec", template_spec}, {"class", to_string(t.box_class)}, {"ratios", to_json(t.ratios)}}},
              {"starts", starts},
              {"seed", seed},
              {"tol", tol},
              {"converged", diag.converged},
              {"total_iterations", diag.total_iterations},
              {"best_residual", diag.best_residual},
              {"degenerate", diag.degenerate},
              {"cluster_count", boxes.size()},
              {"clusters", clusters},
              {"max_gauge_defect", worst}};
  emit(doc, out_path, out);
  if (!out_path.empty()) out << "inscribe: " << boxes.size() << " cluster(s) written to " << out_path << '\n';
  return boxes.empty() ? kExitNoSolution : kExitOk;
}

// ---------------------------------------------------------------------------
// cover

int cmd_cover(const std::string& points_path, int starts, std::uint64_t seed, const std::string& out_path,
              const std::string& mesh_path, std::ostream& out) {
  CoverConfig config;
  config.search = search_config(starts, seed, config.search.tol);
  const std::vector<Vec3> pts = load_points_csv(points_path);
  const GeneralSet set(pts);
  CoverResult r;
  try {
    r = solve_cover(set, config);
  } catch (const std::invalid_argument& e) {
    throw InputError(points_path + ": " + e.what());
  }

  json clusters = json::array();
  for (const SolutionCluster& c : r.clusters)
    clusters.push_back({{"quaternion", to_json(c.best.rotation)},
                        {"w_residual_norm", c.best.residual_norm},
                        {"members", c.members},
                        {"degenerate", c.degenerate}});
  json doc = {{"command", "cover"},
              {"points", points_path},
              {"point_count", pts.size()},
              {"diameter", diameter(set)},
              {"starts", starts},
              {"seed", seed},
              {"converged", r.converged},
              {"quaternion", to_json(r.rotation)},
              {"rotation_matrix", to_json(r.rotation.matrix())},
              {"center", to_json(r.center)},
              {"w_residual_norm", r.w_residual_norm},
              {"ls_residual", r.ls_residual},
              {"contained", r.contained},
              {"max_violation", r.max_violation},
              {"containment_tol", config.containment_tol},
              {"degenerate", r.degenerate},
              {"clusters", clusters}};
  if (!mesh_path.empty()) {
    std::ofstream f(mesh_path, std::ios::binary);
    if (!f) throw InputError(mesh_path + ": cannot open for writing");
    write_off(f, rd_mesh(r.rotation, r.center));
    doc["mesh"] = mesh_path;
  }
  emit(doc, out_path, out);
  if (!out_path.empty())
    out << "cover: contained=" << (r.contained ? "true" : "false") << " max_violation=" << number_text(r.max_violation)
        << '\n';
  return r.contained ? kExitOk : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// verify

struct Checker {
  std::ostream& out;
  int failures = 0;

  void operator()(bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    if (!ok) ++failures;
  }
};

std::string fmt(double v) { return number_text(v); }

// Reference ellipsoid 0.5x^2 + y^2 + 1.5z^2 = 3.
Ellipsoid reference_ellipsoid() { return Ellipsoid(Vec3(0.5, 1.0, 1.5) / 3.0); }

void verify_box_quadrics(Checker& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> edge(0.2, 2.0), shift(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const Rotation r = sample_uniform(rng);
    const Vec3 half(edge(rng), edge(rng), edge(rng));
    const Vec3 c(shift(rng), shift(rng), shift(rng));
    std::vector<Vec3> verts;
    for (int m = 0; m < 8; ++m) {
      const Vec3 s((m & 1) ? 1 : -1, (m & 2) ? 1 : -1, (m & 4) ? 1 : -1);
      verts.push_back(c + r * half.cwiseProduct(s));
    }
    const QuadricSolutionSpace q = box_quadric_space(verts);
    check(q.dimension == 3 && q.max_off_diagonal_in_frame < 1e-9, "lemma2 box " + std::to_string(k),
          "dimension=" + std::to_string(q.dimension) + " off_diagonal=" + fmt(q.max_off_diagonal_in_frame));
  }
}

void verify_counts(Checker& check, std::uint64_t seed) {
  const Ellipsoid e = reference_ellipsoid();
  const std::array<std::pair<std::string, BoxTemplate>, 3> cases = {
      std::pair{std::string("cube"), cube_template()}, std::pair{std::string("square-based"), make_template(1, 1, 2)},
      std::pair{std::string("general"), make_template(1, 2, 3)}};
  const std::array<int, 3> expected{1, 3, 6};
  MultistartConfig config;
  config.seed = seed;
  std::string counts;
  for (int k = 0; k < 3; ++k) {
    const BoxTemplate& t = cases[k].second;
    const std::size_t analytic = ellipsoid_inscriptions(e, t).boxes.size();
    const std::size_t numeric = inscribed_boxes(Body(e), t, config).size();
    check(static_cast<int>(numeric) == expected[k] && static_cast<int>(analytic) == expected[k],
          "corollary3 " + cases[k].first,
          "clusters=" + std::to_string(numeric) + " analytic=" + std::to_string(analytic) +
              " expected=" + std::to_string(expected[k]));
    counts += (k ? "/" : "") + std::to_string(numeric);
  }
  check.out << "counts " << counts << '\n';
}

void verify_jacobian(Checker& check) {
  auto face_of = [](const Ellipsoid& e) {
    const InscribedBox b = ellipsoid_inscriptions(e, cube_template()).boxes.front();
    return std::vector<Vec3>(b.vertices.begin(), b.vertices.begin() + 4);
  };
  const Ellipsoid e = reference_ellipsoid();
  const std::vector<Vec3> face = face_of(e);
  const JacobianReport r = knaster_jacobian(e, face);

  // Central differences of sum a_i y_i^2 - 1 at y = exp(S) x.
  const double h = 1e-6;
  Eigen::Matrix<double, 4, 3> fd;
  for (int c = 0; c < 3; ++c) {
    Vec3 dt = Vec3::Zero();
    dt[c] = h;
    for (int k = 0; k < 4; ++k) {
      const Vec3 yp = exp(TangentVector::from_vector(dt)) * face[k];
      const Vec3 ym = exp(TangentVector::from_vector(-dt)) * face[k];
      const double qp = (e.coeffs().array() * yp.array().square()).sum();
      const double qm = (e.coeffs().array() * ym.array().square()).sum();
      fd(k, c) = (qp - qm) / (2 * h);
    }
  }
  const double rel = (fd - r.j).norm() / r.j.norm();
  check(rel < 1e-5, "lemma4 finite differences", "relative=" + fmt(rel));
  check(r.rank == 3, "lemma4 rank", "rank=" + std::to_string(r.rank));
  check(r.transversal, "lemma4 transversal", r.transversal ? "true" : "false");

  const Ellipsoid sphere(Vec3(1, 1, 1));
  const JacobianReport s = knaster_jacobian(sphere, face_of(sphere));
  check(s.rank == 0, "lemma4 sphere rank", "rank=" + std::to_string(s.rank));
}

void verify_eggleston(Checker& check) {
  for (double eps : {-0.05, -0.01, 0.01, 0.05}) {
    const EgglestonReport r = eggleston_family(eps);
    check(r.distinct_axes && r.octahedron_on_boundary && r.ones_off_boundary, "eggleston eps=" + fmt(eps),
          "gap=" + fmt(r.min_eigen_gap) + " defect=" + fmt(r.octahedron_defect) +
              " Q(1,1,1)=" + fmt(r.value_at_ones));
  }
  const EgglestonReport r0 = eggleston_family(0.0);
  Mat3 a0 = Mat3::Zero();
  a0.diagonal() << 0.5, 1.0, 1.5;
  const double dev = std::max((r0.quadric.a - a0).cwiseAbs().maxCoeff(), std::abs(r0.quadric.c + 3.0));
  check(dev < 1e-12, "eggleston eps=0 reproduces E0", "deviation=" + fmt(dev));
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  Checker check{out};
  if (suite == "lemma2")
    verify_box_quadrics(check, seed);
  else if (suite == "corollary3")
    verify_counts(check, seed);
  else if (suite == "lemma4")
    verify_jacobian(check);
  else if (suite == "eggleston")
    verify_eggleston(check);
  else
    throw InputError("--suite: expected lemma2, corollary3, lemma4 or eggleston");
  out << (check.failures == 0 ? "all checks passed" : std::to_string(check.failures) + " check(s) failed") << '\n';
  return check.failures == 0 ? kExitOk : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// groups

int cmd_groups(std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  json classes = json::array();
  for (const SubgroupClass& c : subgroup_classes()) {
    const std::vector<Permutation> g = members(c.representative);
    const std::optional<Vec3> fp = fixed_point(g);
    classes.push_back({{"label", c.label},
                       {"generators", c.description},
                       {"order", c.order},
                       {"class_size", c.class_size},
                       {"fixed_space_dimension", fixed_space_dimension(g, tetra_representation())},
                       {"fixed_point", fp ? to_json(*fp) : json(nullptr)}});
  }

  const VWDecomposition& vw = vw_decomposition();
  auto rows = [](const Eigen::Matrix<double, 3, 6>& m) {
    json out = json::array();
    for (int i = 0; i < 3; ++i) {
      json r = json::array();
      for (int j = 0; j < 6; ++j) r.push_back(m(i, j));
      out.push_back(r);
    }
    return out;
  };

  double iota_defect = 0.0, invariance = 0.0;
  const Eigen::Matrix<double, 6, 6> pv = vw.v.transpose() * vw.v, pw = vw.w.transpose() * vw.w;
  for (const Permutation& s : Permutation::all()) {
    for (const Permutation& t : Permutation::all())
      iota_defect = std::max(iota_defect, (iota(s * t).matrix() - iota(s).matrix() * iota(t).matrix()).norm());
    const Eigen::Matrix<double, 6, 6> m = tau6(s);
    invariance = std::max({invariance, (pw * m * pv).norm(), (pv * m * pw).norm()});
  }

  const Ellipsoid e = reference_ellipsoid();
  const BoxTemplate cube = cube_template();
  const RotationMap f = [&](const Rotation& a) {
    Eigen::VectorXd v(4);
    for (int i = 0; i < 4; ++i) v[i] = gauge(Body(e), a * cube.v[i]);
    return v;
  };
  const GeneralSet tetra(std::vector<Vec3>(unit_tetrahedron().v.begin(), unit_tetrahedron().v.end()));
  const OddFunction f0 = odd_width_function(tetra);
  const RotationMap phi_map = [&](const Rotation& a) { return Eigen::VectorXd(phi(f0, a)); };

  json doc = {{"command", "groups"},
              {"seed", seed},
              {"subgroup_class_count", classes.size()},
              {"subgroup_classes", classes},
              {"v_basis", rows(vw.v)},
              {"w_basis", rows(vw.w)},
              {"iota_homomorphism_defect", iota_defect},
              {"tau6_homomorphism_defect", tau6_representation().homomorphism_defect()},
              {"tau6_vw_invariance_defect", invariance},
              {"equivariance_f", check_equivariance(f, permutation_representation(), 200, seed)},
              {"equivariance_phi", check_equivariance(phi_map, tau6_representation(), 200, seed)},
              {"frame_sections_rows", frame_sections_check(100, seed, SectionConvention::rows)},
              {"frame_sections_columns", frame_sections_check(100, seed, SectionConvention::columns)}};
  emit(doc, out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// borsuk

int cmd_borsuk(long budget, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  if (budget < 0) throw InputError("--budget must be nonnegative");
  BorsukConfig config;
  config.budget = budget;
  config.seed = seed;
  const BorsukResult r = optimize_partition(config);

  json pieces = json::array();
  for (const Polytope& p : r.partition.pieces) {
    json piece = to_json(p);
    piece["diameter"] = vertex_diameter(p);
    piece["volume"] = volume(p);
    pieces.push_back(piece);
  }
  json theta = json::array();
  for (double v : r.theta) theta.push_back(v);
  const bool below_one = r.certificate < 1.0;
  json doc = {{"command", "borsuk"},
              {"budget", budget},
              {"seed", seed},
              {"evaluations", r.evaluations},
              {"restarts", r.restarts},
              {"theta", theta},
              {"max_piece_diameter", r.value},
              {"certificate", r.certificate},
              {"below_one", below_one},
              {"pieces", pieces},
              {"note", "the literature value via this route is 0.98"}};
  emit(doc, out_path, out);
  if (!out_path.empty()) out << "borsuk: max piece diameter " << number_text(r.certificate) << '\n';
  return below_one ? kExitOk : kExitNoSolution;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inscribed boxes, universal covers and S4 representations in 3-space", "knaster"};
  app.require_subcommand(1);

  std::string body, tmpl = "cube", out_path, points, mesh, suite;
  int starts = 256, cover_starts = 64;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-10;
  long budget = 10000;

  CLI::App* inscribe = app.add_subcommand("inscribe", "Inscribe a box in a symmetric convex body");
  inscribe->add_option("--body", body, "Body JSON file")->required();
  inscribe->add_option("--template", tmpl, "cube | sq:RHO | box:A1,A2,A3");
  inscribe->add_option("--starts", starts, "Random starts");
  inscribe->add_option("--seed", seed, "Random seed");
  inscribe->add_option("--tol", tol, "Residual tolerance");
  inscribe->add_option("--out", out_path, "Output JSON file (default stdout)");

  CLI::App* cover = app.add_subcommand("cover", "Cover a diameter-1 point set by the rhombic dodecahedron");
  cover->add_option("--points", points, "Points CSV file")->required();
  cover->add_option("--starts", cover_starts, "Random starts");
  cover->add_option("--seed", seed, "Random seed");
  cover->add_option("--out", out_path, "Output JSON file (default stdout)");
  cover->add_option("--mesh", mesh, "Write the placed cover as an OFF mesh");

  CLI::App* verify = app.add_subcommand("verify", "Run an analytic check suite");
  verify->add_option("--suite", suite, "lemma2 | corollary3 | lemma4 | eggleston")->required();
  verify->add_option("--seed", seed, "Random seed");

  CLI::App* groups = app.add_subcommand("groups", "Report on S4, its subgroups and representations");
  groups->add_flag("--report", "Print the full report (default)");
  groups->add_option("--seed", seed, "Random seed");
  groups->add_option("--out", out_path, "Output JSON file (default stdout)");

  CLI::App* borsuk = app.add_subcommand("borsuk", "Search four-piece partitions of the cover");
  borsuk->add_option("--budget", budget, "Partition evaluations");
  borsuk->add_option("--seed", seed, "Random seed");
  borsuk->add_option("--out", out_path, "Output JSON file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*inscribe) return cmd_inscribe(body, tmpl, starts, seed, tol, out_path, out);
    if (*cover) return cmd_cover(points, cover_starts, seed, out_path, mesh, out);
    if (*verify) return cmd_verify(suite, seed, out);
    if (*groups) return cmd_groups(seed, out_path, out);
    if (*borsuk) return cmd_borsuk(budget, seed, out_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace knaster
