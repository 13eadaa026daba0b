#include "knaster/groups.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace knaster {

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::from_cycles(const std::string& cycles) {
  Permutation p;
  std::vector<int> cycle;
  bool open = false;
  auto close = [&] {
    for (std::size_t k = 0; k < cycle.size(); ++k) p.image[cycle[k]] = cycle[(k + 1) % cycle.size()];
    cycle.clear();
  };
  std::array<bool, 4> used{};
  for (char c : cycles) {
    if (c == ' ') continue;
    if (c == '(') {
      if (open) throw std::invalid_argument("nested cycle in '" + cycles + "'");
      open = true;
    } else if (c == ')') {
      if (!open) throw std::invalid_argument("unbalanced cycle in '" + cycles + "'");
      open = false;
      close();
    } else if (c >= '1' && c <= '4' && open) {
      const int letter = c - '1';
      if (used[letter]) throw std::invalid_argument("letter repeated in '" + cycles + "'");
      used[letter] = true;
      cycle.push_back(letter);
    } else {
      throw std::invalid_argument("bad cycle notation '" + cycles + "'");
    }
  }
  if (open) throw std::invalid_argument("unterminated cycle in '" + cycles + "'");
  return p;
}

const std::array<Permutation, 24>& Permutation::all() {
  static const std::array<Permutation, 24> perms = [] {
    std::array<Permutation, 24> out;
    std::array<int, 4> img{0, 1, 2, 3};
    int k = 0;
    do out[k++].image = img;
    while (std::next_permutation(img.begin(), img.end()));
    return out;
  }();
  return perms;
}

int Permutation::sign() const {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (image[i] > image[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

int Permutation::order() const {
  Permutation p = *this;
  int n = 1;
  while (!(p == identity())) {
    p = p * *this;
    ++n;
  }
  return n;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (int i = 0; i < 4; ++i) p.image[image[i]] = i;
  return p;
}

int Permutation::index() const {
  // Lehmer code gives the lexicographic rank.
  static constexpr int kFactorial[4] = {6, 2, 1, 1};
  int rank = 0;
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j)
      if (image[j] < image[i]) ++smaller;
    rank += smaller * kFactorial[i];
  }
  return rank;
}

std::string Permutation::to_string() const {
  std::string out;
  std::array<bool, 4> seen{};
  for (int start = 0; start < 4; ++start) {
    if (seen[start] || image[start] == start) continue;
    out += '(';
    for (int i = start; !seen[i]; i = image[i]) {
      seen[i] = true;
      out += static_cast<char>('1' + i);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  Permutation p;
  for (int i = 0; i < 4; ++i) p.image[i] = a.image[b.image[i]];
  return p;
}

// ---------------------------------------------------------------------------
// Actions

const std::array<Vec3, 4>& tetrahedron_vertices() {
  static const std::array<Vec3, 4> v = [] {
    const double s = 1.0 / std::sqrt(3.0);
    return std::array<Vec3, 4>{Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, -s, s), Vec3(-s, s, -s)};
  }();
  return v;
}

Mat3 tetra_action(const Permutation& sigma) {
  // sum_i t_i t_i^T = (4/3) I, so T = (3/4) sum_i t_sigma(i) t_i^T. With the
  // vertices written as sign vectors s_i / sqrt(3) every entry is an exact
  // quarter-integer.
  static const std::array<Vec3, 4> s = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, -1, 1), Vec3(-1, 1, -1)};
  Mat3 m = Mat3::Zero();
  for (int i = 0; i < 4; ++i) m += s[sigma(i)] * s[i].transpose();
  return 0.25 * m;
}

Rotation iota(const Permutation& sigma) {
  const Mat3 m = tetra_action(sigma);
  return Rotation::from_matrix(sigma.even() ? m : Mat3(-m));
}

Eigen::Matrix4d permutation_matrix(const Permutation& sigma) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) m(sigma(i), i) = 1.0;
  return m;
}

std::pair<int, double> pair_coordinate(int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 3 || j > 3) throw std::invalid_argument("bad index pair");
  static constexpr int kIndex[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return {kIndex[i][j], i < j ? 1.0 : -1.0};
}

Eigen::Matrix<double, 6, 6> tau6(const Permutation& sigma) {
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto [col, unused] = pair_coordinate(i, j);
      const auto [row, s] = pair_coordinate(sigma(i), sigma(j));
      m(row, col) = sigma.sign() * s;
    }
  }
  return m;
}

SignedPermAction::SignedPermAction(int dimension,
                                   const std::function<Eigen::MatrixXd(const Permutation&)>& matrix_of)
    : dimension_(dimension) {
  for (const Permutation& p : Permutation::all()) {
    Eigen::MatrixXd m = matrix_of(p);
    if (m.rows() != dimension || m.cols() != dimension)
      throw std::invalid_argument("action matrix has the wrong dimension");
    matrices_[p.index()] = std::move(m);
  }
}

double SignedPermAction::homomorphism_defect() const {
  double worst = 0.0;
  for (const Permutation& a : Permutation::all())
    for (const Permutation& b : Permutation::all())
      worst = std::max(worst, ((*this)(a * b) - (*this)(a) * (*this)(b)).cwiseAbs().maxCoeff());
  return worst;
}

double SignedPermAction::orthogonality_defect() const {
  double worst = 0.0;
  for (const Eigen::MatrixXd& m : matrices_)
    worst = std::max(worst, (m.transpose() * m - Eigen::MatrixXd::Identity(dimension_, dimension_))
                                .cwiseAbs()
                                .maxCoeff());
  return worst;
}

SignedPermAction tetra_representation() {
  return SignedPermAction(3, [](const Permutation& p) { return Eigen::MatrixXd(tetra_action(p)); });
}

SignedPermAction permutation_representation() {
  return SignedPermAction(4, [](const Permutation& p) { return Eigen::MatrixXd(permutation_matrix(p)); });
}

SignedPermAction tau6_representation() {
  return SignedPermAction(6, [](const Permutation& p) { return Eigen::MatrixXd(tau6(p)); });
}

// ---------------------------------------------------------------------------
// Subgroups

std::vector<Permutation> members(SubgroupMask mask) {
  std::vector<Permutation> out;
  for (int k = 0; k < 24; ++k)
    if (mask & (SubgroupMask{1} << k)) out.push_back(Permutation::all()[k]);
  return out;
}

SubgroupMask generated_subgroup(std::span<const Permutation> generators) {
  SubgroupMask mask = 1;  // identity is index 0
  std::vector<Permutation> frontier{Permutation::identity()};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& p : frontier) {
      for (const Permutation& g : generators) {
        const Permutation q = p * g;
        const SubgroupMask bit = SubgroupMask{1} << q.index();
        if (!(mask & bit)) {
          mask |= bit;
          next.push_back(q);
        }
      }
    }
    frontier = std::move(next);
  }
  return mask;
}

std::vector<SubgroupMask> all_subgroups() {
  const auto& all = Permutation::all();
  std::set<SubgroupMask> found{1};
  for (int a = 0; a < 24; ++a) {
    for (int b = a; b < 24; ++b) {
      for (int c = b; c < 24; ++c) {
        const Permutation gens[3] = {all[a], all[b], all[c]};
        found.insert(generated_subgroup(gens));
      }
    }
  }
  return {found.begin(), found.end()};
}

namespace {

SubgroupMask conjugate(SubgroupMask mask, const Permutation& g) {
  SubgroupMask out = 0;
  const Permutation gi = g.inverse();
  for (const Permutation& h : members(mask)) out |= SubgroupMask{1} << (g * h * gi).index();
  return out;
}

std::string label_for(SubgroupMask mask) {
  const std::vector<Permutation> m = members(mask);
  switch (m.size()) {
    case 1: return "C1";
    case 2: return "C2";
    case 3: return "C3";
    case 4:
      return std::any_of(m.begin(), m.end(), [](const Permutation& p) { return p.order() == 4; }) ? "C4" : "D2";
    case 6: return "D3";
    case 8: return "D4";
    case 12: return "A4";
    case 24: return "S4";
  }
  return "?";
}

std::vector<Permutation> minimal_generators(SubgroupMask mask) {
  const std::vector<Permutation> m = members(mask);
  if (m.size() == 1) return {};
  for (const Permutation& a : m)
    if (generated_subgroup(std::span<const Permutation>(&a, 1)) == mask) return {a};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const Permutation gens[2] = {m[i], m[j]};
      if (generated_subgroup(gens) == mask) return {m[i], m[j]};
    }
  return m;
}

}  // namespace

std::vector<SubgroupClass> subgroup_classes() {
  std::vector<SubgroupMask> remaining = all_subgroups();
  std::vector<SubgroupClass> classes;
  std::set<SubgroupMask> assigned;
  for (SubgroupMask h : remaining) {
    if (assigned.count(h)) continue;
    std::set<SubgroupMask> orbit;
    for (const Permutation& g : Permutation::all()) orbit.insert(conjugate(h, g));
    assigned.insert(orbit.begin(), orbit.end());

    SubgroupClass c;
    // Prefer the representative whose generators involve the lowest letters.
    SubgroupMask rep = *orbit.begin();
    std::string best_desc;
    for (SubgroupMask cand : orbit) {
      std::string desc = "[";
      const std::vector<Permutation> gens = minimal_generators(cand);
      for (std::size_t k = 0; k < gens.size(); ++k) desc += (k ? "," : "") + gens[k].to_string();
      desc += "]";
      if (best_desc.empty() || desc < best_desc) {
        best_desc = desc;
        rep = cand;
      }
    }
    c.representative = rep;
    c.generators = minimal_generators(rep);
    c.description = c.generators.empty() ? "[()]" : best_desc;
    c.order = std::popcount(rep);
    c.class_size = static_cast<int>(orbit.size());
    c.label = label_for(rep);
    classes.push_back(c);
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.label != b.label) return a.label < b.label;
    return a.description < b.description;
  });
  return classes;
}

// ---------------------------------------------------------------------------
// V + W

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 e(int i, int j) {
  const auto [k, s] = pair_coordinate(i - 1, j - 1);
  Vec6 v = Vec6::Zero();
  v[k] = s;
  return v;
}

Eigen::Matrix<double, 3, 6> orthonormal_rows(const std::array<Vec6, 4>& gens) {
  Eigen::Matrix<double, 6, 3> a;
  for (int k = 0; k < 3; ++k) a.col(k) = gens[k];
  Eigen::HouseholderQR<Eigen::Matrix<double, 6, 3>> qr(a);
  const Eigen::Matrix<double, 6, 3> q = qr.householderQ() * Eigen::Matrix<double, 6, 3>::Identity();
  return q.transpose();
}

}  // namespace

const VWDecomposition& vw_decomposition() {
  static const VWDecomposition d = [] {
    VWDecomposition out;
    out.v_generators = {e(1, 2) + e(1, 3) + e(1, 4), e(2, 1) + e(2, 3) + e(2, 4),
                        e(3, 1) + e(3, 2) + e(3, 4), e(4, 1) + e(4, 2) + e(4, 3)};
    out.w_generators = {e(2, 3) + e(3, 4) + e(4, 2), e(3, 1) + e(1, 4) + e(4, 3),
                        e(1, 2) + e(2, 4) + e(4, 1), e(2, 1) + e(1, 3) + e(3, 2)};
    out.v = orthonormal_rows(out.v_generators);
    out.w = orthonormal_rows(out.w_generators);
    return out;
  }();
  return d;
}

std::array<SignedIndex, 4> w_generator_action(const Permutation& sigma) {
  const VWDecomposition& d = vw_decomposition();
  const Eigen::Matrix<double, 6, 6> m = tau6(sigma);
  std::array<SignedIndex, 4> out;
  for (int k = 0; k < 4; ++k) {
    const Vec6 image = m * d.w_generators[k];
    bool found = false;
    for (int t = 0; t < 4 && !found; ++t) {
      for (double s : {1.0, -1.0}) {
        if ((image - s * d.w_generators[t]).cwiseAbs().maxCoeff() < 1e-12) {
          out[k] = {t, s};
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("tau6 does not permute the W generators");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points and equivariance

namespace {

Eigen::MatrixXd fixed_space(std::span<const Permutation> subgroup, const SignedPermAction& action) {
  const int n = action.dimension();
  Eigen::MatrixXd stacked(n * std::max<std::size_t>(subgroup.size(), 1), n);
  stacked.setZero();
  for (std::size_t k = 0; k < subgroup.size(); ++k)
    stacked.block(k * n, 0, n, n) = action(subgroup[k]) - Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-9) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace

int fixed_space_dimension(std::span<const Permutation> subgroup, const SignedPermAction& action) {
  return static_cast<int>(fixed_space(subgroup, action).cols());
}

std::optional<Vec3> fixed_point(std::span<const Permutation> subgroup, const SignedPermAction& action) {
  if (action.dimension() != 3) throw std::invalid_argument("fixed_point expects an action on R^3");
  const Eigen::MatrixXd basis = fixed_space(subgroup, action);
  if (basis.cols() == 0) return std::nullopt;
  const Eigen::MatrixXd projector = basis * basis.transpose();
  const std::vector<Permutation> closed = members(generated_subgroup(subgroup));

  // Letter orbits of the subgroup, in order of their smallest letter.
  std::array<bool, 4> seen{};
  const auto& t = tetrahedron_vertices();
  for (int start = 0; start < 4; ++start) {
    if (seen[start]) continue;
    Vec3 sum = Vec3::Zero();
    for (int letter = 0; letter < 4; ++letter) {
      const bool in_orbit = std::any_of(closed.begin(), closed.end(),
                                        [&](const Permutation& g) { return g(start) == letter; }) ||
                            letter == start;
      if (in_orbit && !seen[letter]) {
        seen[letter] = true;
        sum += t[letter];
      }
    }
    const Vec3 x = projector * sum;
    if (x.norm() > 1e-9) return x.normalized();
  }
  return Vec3(basis.col(0)).normalized();
}

double check_equivariance(const RotationMap& map, const SignedPermAction& action, int samples,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Rotation a = sample_uniform(rng);
    const Eigen::VectorXd base = map(a);
    if (base.size() != action.dimension())
      throw std::invalid_argument("map and action dimensions disagree");
    for (const Permutation& g : Permutation::all()) {
      const Eigen::VectorXd moved = map(a * iota(g).inverse());
      worst = std::max(worst, (moved - action(g) * base).norm());
    }
  }
  return worst;
}

double frame_sections_check(int samples, std::uint64_t seed, SectionConvention convention,
                            std::span<const Permutation> subgroup) {
  std::vector<Permutation> group(subgroup.begin(), subgroup.end());
  if (group.empty())
    for (const Permutation& p : Permutation::all())
      if (p.even()) group.push_back(p);

  auto section = [&](const Mat3& a, int i) -> Vec3 {
    return convention == SectionConvention::rows ? Vec3(a.row(i).transpose()) : Vec3(a.col(i));
  };
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Mat3 a = sample_uniform(rng).matrix();
    for (const Permutation& p : group) {
      const Mat3 g = iota(p).matrix();
      const Mat3 ag = a * g;
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, (section(ag, i) - g.transpose() * section(a, i)).norm());
    }
  }
  return worst;
}

}  // namespace knaster
