#include "pareto_tame/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pareto_tame/parallel.hpp"

namespace pareto_tame {
namespace {

constexpr std::size_t kMaxBranches = 64;

using Conj = std::vector<Expr>;  // smooth g <= 0, all of them
using Union = std::vector<Conj>;

Union product(const Union& a, const Union& b) {
  if (a.size() * b.size() > kMaxBranches) {
    throw BranchExplosionError(
        "sublevel splitting needs more than " + std::to_string(kMaxBranches) +
        " cells; reduce the number of abs/max/min terms");
  }
  Union out;
  for (const auto& u : a) {
    for (const auto& v : b) {
      Conj c = u;
      c.insert(c.end(), v.begin(), v.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

Union join(Union a, const Union& b) {
  a.insert(a.end(), b.begin(), b.end());
  if (a.size() > kMaxBranches) {
    throw BranchExplosionError(
        "sublevel splitting needs more than " + std::to_string(kMaxBranches) +
        " cells; reduce the number of abs/max/min terms");
  }
  return a;
}

const Union kTrue{Conj{}};

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.kind()) {
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
      return Expr::binary(e.kind(), args[0], args[1]);
    case NodeKind::kPow:
      return Expr::power(args[0], e.exponent());
    case NodeKind::kMax:
    case NodeKind::kMin:
    case NodeKind::kNorm2:
      return Expr::nary(e.kind(), std::move(args));
    default:
      return Expr::unary(e.kind(), args[0]);
  }
}

Expr replace(const Expr& e, const Node* target, const Expr& with) {
  if (e.node() == target) return with;
  if (e.args().empty() || e.is_smooth()) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) args.push_back(replace(a, target, with));
  return rebuild(e, std::move(args));
}

// First nonsmooth node strictly below e in preorder.
const Expr* first_kink(const Expr& e) {
  for (const auto& a : e.args()) {
    if (a.is_smooth()) continue;
    switch (a.kind()) {
      case NodeKind::kAbs:
      case NodeKind::kMax:
      case NodeKind::kMin:
      case NodeKind::kNorm2:
        return &a;
      default:
        if (const Expr* k = first_kink(a)) return k;
    }
  }
  return nullptr;
}

Expr minus_const(const Expr& e, double c) {
  return c == 0.0 ? e : Expr::binary(NodeKind::kSub, e, Expr::constant(c));
}

Union le(const Expr& e, double c);

struct Branch {
  Expr replacement;
  Union guard;
};

std::vector<Branch> branches(const Expr& kink) {
  std::vector<Branch> out;
  const auto& args = kink.args();
  switch (kink.kind()) {
    case NodeKind::kAbs:
      out.push_back({args[0], le(-args[0], 0.0)});
      out.push_back({-args[0], le(args[0], 0.0)});
      break;
    case NodeKind::kMax:
    case NodeKind::kMin: {
      const bool is_max = kink.kind() == NodeKind::kMax;
      for (std::size_t j = 0; j < args.size(); ++j) {
        Union guard = kTrue;
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (k == j) continue;
          guard = product(guard, is_max ? le(args[k] - args[j], 0.0)
                                        : le(args[j] - args[k], 0.0));
        }
        out.push_back({args[j], std::move(guard)});
      }
      break;
    }
    default:
      throw InputError("norm2 nested inside another operation cannot be split into smooth cells");
  }
  return out;
}

Union le(const Expr& e, double c) {
  if (e.is_smooth()) {
    if (e.is_constant()) return eval(e, Vec()) <= c ? kTrue : Union{};
    return {Conj{minus_const(e, c)}};
  }
  const auto& args = e.args();
  switch (e.kind()) {
    case NodeKind::kAbs:
      return product(le(args[0], c), le(-args[0], c));
    case NodeKind::kMax: {
      Union out = kTrue;
      for (const auto& a : args) out = product(out, le(a, c));
      return out;
    }
    case NodeKind::kMin: {
      Union out;
      for (const auto& a : args) out = join(std::move(out), le(a, c));
      return out;
    }
    case NodeKind::kNorm2: {
      if (c < 0.0) return {};
      Expr sq = Expr::constant(0.0);
      bool first = true;
      for (const auto& a : args) {
        if (!a.is_smooth()) {
          throw InputError("norm2 with nonsmooth arguments cannot be split into smooth cells");
        }
        Expr term = Expr::power(a, 2);
        sq = first ? term : sq + term;
        first = false;
      }
      return {Conj{minus_const(sq, c * c)}};
    }
    default:
      break;
  }
  const Expr* kink = first_kink(e);
  Union out;
  for (auto& b : branches(*kink)) {
    out = join(std::move(out), product(b.guard, le(replace(e, kink->node(), b.replacement), c)));
  }
  return out;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Window radius_window(double R, const Vec& x0, std::size_t resolution) {
  const auto n = x0.size();
  Window w;
  w.lower = Vec::Constant(n, -R).cwiseMin(x0);
  w.upper = Vec::Constant(n, R).cwiseMax(x0);
  w.resolution.assign(static_cast<std::size_t>(n), resolution);
  return w;
}

// Upper end of the periodic family along its axis, beyond which sampled
// verdicts say nothing about the untruncated set.
bool exceeds_truncation(const FeasibleSet& K, double R) {
  if (!K.periodic()) return false;
  const auto& p = *K.periodic();
  const auto a = static_cast<Eigen::Index>(p.axis);
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& c : p.base_cells) top = std::max(top, c.upper[a]);
  top += static_cast<double>(p.k_max) * p.period;
  return R > top;
}

}  // namespace

std::vector<Cell> sublevel_cells(const Expr& e, double c, std::size_t dimension) {
  std::vector<Cell> cells;
  for (auto& conj : le(e, c)) {
    Cell cell = Cell::whole(dimension);
    cell.smooth = std::move(conj);
    cells.push_back(std::move(cell));
  }
  return cells;
}

SublevelSet sublevel(const VectorObjective& f, const FeasibleSet& K, const Vec& x0) {
  if (!K.contains(x0)) throw InputError("anchor " + format_vec(x0) + " is not in K");
  SublevelSet out;
  out.anchor = x0;
  out.level = f.eval(x0);
  Union all = kTrue;
  for (std::size_t i = 0; i < f.size(); ++i) {
    all = product(all, le(f[i], out.level[static_cast<Eigen::Index>(i)]));
  }
  std::vector<Cell> cells;
  for (auto& conj : all) {
    Cell cell = Cell::whole(f.dimension());
    cell.smooth = std::move(conj);
    cells.push_back(std::move(cell));
  }
  out.set = K.intersect_union(cells);
  return out;
}

std::vector<Vec> sample_sublevel(const VectorObjective& f, const FeasibleSet& K,
                                 const Vec& x0, const Window& window, double tol) {
  const Vec level = f.eval(x0);
  auto nodes = grid(K, window);
  std::vector<char> keep(nodes.size(), 0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const Vec v = f.eval(nodes[i]);
    keep[i] = (v.array() <= level.array() + tol).all() ? 1 : 0;
  });
  std::vector<Vec> out;
  bool has_anchor = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    has_anchor = has_anchor || nodes[i] == x0;
    out.push_back(std::move(nodes[i]));
  }
  if (!has_anchor) out.push_back(x0);
  return out;
}

std::string to_string(BoundedVerdict v) {
  switch (v) {
    case BoundedVerdict::kBounded:
      return "bounded";
    case BoundedVerdict::kUnboundedWitness:
      return "unbounded-witness";
    default:
      return "unknown";
  }
}

SectionVerdict section_verdict(const VectorObjective& f, const FeasibleSet& K,
                               const Vec& x0, const IndexSet& I,
                               const RadiusSchedule& schedule) {
  if (I.empty()) throw InputError("section verdict needs a nonempty index set");
  if (schedule.max_exponent < 2) throw InputError("radius schedule needs at least three radii");
  const auto q = static_cast<Eigen::Index>(I.size());
  SectionVerdict out;
  std::vector<Vec> lows;
  std::vector<Vec> highs;
  std::vector<std::vector<Vec>> argmins;
  Vec lo = Vec::Constant(q, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  std::vector<Vec> arg(static_cast<std::size_t>(q), x0);
  for (int k = 0; k <= schedule.max_exponent; ++k) {
    const double R = std::ldexp(1.0, k);
    if (exceeds_truncation(K, R)) {
      out.note = "radius " + format_real(R) + " exceeds the periodic truncation";
      break;
    }
    const auto pts = sample_sublevel(f, K, x0, radius_window(R, x0, schedule.resolution),
                                     schedule.tol);
    for (const auto& y : pts) {
      const Vec v = project(f.eval(y), I);
      for (Eigen::Index j = 0; j < q; ++j) {
        if (v[j] < lo[j]) {
          lo[j] = v[j];
          arg[static_cast<std::size_t>(j)] = y;
        }
        hi[j] = std::max(hi[j], v[j]);
      }
    }
    lows.push_back(lo);
    highs.push_back(hi);
    argmins.push_back(arg);
    out.radius = R;
  }
  out.lower = lo;
  out.upper = hi;
  const std::size_t m = lows.size();
  if (m < 3) {
    out.kind = BoundedVerdict::kUnknown;
    if (out.note.empty()) out.note = "too few radii";
    return out;
  }
  const double width = (hi - lo).maxCoeff();
  const double gtol = 1e-3 * (1.0 + width);
  auto growth = [&](std::size_t k) {
    return std::max((lows[k - 1] - lows[k]).maxCoeff(), (highs[k] - highs[k - 1]).maxCoeff());
  };
  if (growth(m - 1) <= gtol && growth(m - 2) <= gtol) {
    out.kind = BoundedVerdict::kBounded;
    return out;
  }
  for (Eigen::Index j = 0; j < q; ++j) {
    const double d2 = lows[m - 3][j] - lows[m - 2][j];
    const double d1 = lows[m - 2][j] - lows[m - 1][j];
    if (m >= 4) {
      const double d3 = lows[m - 4][j] - lows[m - 3][j];
      if (d3 > gtol && d2 > gtol && d1 > gtol && d2 >= 0.5 * d3 && d1 >= 0.5 * d2) {
        out.kind = BoundedVerdict::kUnboundedWitness;
        for (std::size_t k = m - 3; k < m; ++k) {
          out.witnesses.push_back(argmins[k][static_cast<std::size_t>(j)]);
        }
        return out;
      }
    }
  }
  out.kind = BoundedVerdict::kUnknown;
  if (out.note.empty()) out.note = "sampled range still moving at radius " + format_real(out.radius);
  return out;
}

SectionSample section_sample(const VectorObjective& f, const FeasibleSet& K,
                             const Vec& x0, const IndexSet& I, const Window& window,
                             const RadiusSchedule& schedule) {
  SectionSample out;
  out.points = sample_sublevel(f, K, x0, window, schedule.tol);
  for (const auto& p : out.points) {
    out.images.push_back(f.eval(p));
    out.projections.push_back(project(out.images.back(), I));
  }
  out.verdict = section_verdict(f, K, x0, I, schedule);
  return out;
}

SublevelBound sublevel_bounded(const VectorObjective& f, const FeasibleSet& K,
                               const Vec& x0, const RadiusSchedule& schedule) {
  if (schedule.max_exponent < 2) throw InputError("radius schedule needs at least three radii");
  SublevelBound out;
  std::vector<double> reach;
  for (int k = 0; k <= schedule.max_exponent; ++k) {
    const double R = std::ldexp(1.0, k);
    if (exceeds_truncation(K, R)) {
      out.note = "radius " + format_real(R) + " exceeds the periodic truncation";
      return out;
    }
    const auto pts = sample_sublevel(f, K, x0, radius_window(R, x0, schedule.resolution),
                                     schedule.tol);
    double r = 0.0;
    for (const auto& y : pts) r = std::max(r, y.cwiseAbs().maxCoeff());
    reach.push_back(r);
    out.radius = std::max(out.radius, r);
  }
  const double inner = std::ldexp(1.0, schedule.max_exponent - 2);
  const std::size_t m = reach.size();
  out.bounded = reach[m - 1] <= inner && reach[m - 2] <= inner;
  out.note = out.bounded ? "no sublevel points beyond radius " + format_real(inner)
                         : "sublevel points reach radius " + format_real(out.radius);
  return out;
}

IndexSetResult index_set_of(const VectorObjective& f, const Vec& x0,
                            const std::vector<Vec>& sample, double tol) {
  if (sample.empty()) throw InputError("empty sublevel sample");
  const Vec level = f.eval(x0);
  IndexSetResult out;
  out.sample_size = sample.size();
  out.witnesses.assign(f.size(), std::nullopt);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (const auto& y : sample) {
      if (std::abs(eval(f[i], y) - level[ii]) > tol) {
        out.witnesses[i] = y;
        break;
      }
    }
    if (!out.witnesses[i]) out.indices.push_back(i);
  }
  return out;
}

IndexSetResult index_set(const VectorObjective& f, const FeasibleSet& K, const Vec& x0,
                         const Window& window, double tol) {
  if (!K.contains(x0)) throw InputError("anchor " + format_vec(x0) + " is not in K");
  return index_set_of(f, x0, sample_sublevel(f, K, x0, window, tol), tol);
}

DescentResult descent_chain(const VectorObjective& f, const FeasibleSet& K,
                            const Vec& x_start, const Window& window,
                            std::size_t max_steps, double tol) {
  if (!K.contains(x_start)) throw InputError("start " + format_vec(x_start) + " is not in K");
  DescentResult out;
  Vec x = x_start;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    const auto sample = sample_sublevel(f, K, x, window, tol);
    const auto idx = index_set_of(f, x, sample, tol);
    DescentStep record{x, f.eval(x), 0};
    if (!idx.indices.empty()) {
      out.trace.push_back(record);
      out.found = true;
      out.x0 = x;
      out.indices = idx.indices;
      return out;
    }
    if (step == max_steps) {
      out.trace.push_back(record);
      break;
    }
    const std::size_t j = step % f.size();
    record.objective = j;
    out.trace.push_back(record);
    // Minimizers within tol of the grid minimum tie; the lexicographically
    // smallest wins.
    double min_v = std::numeric_limits<double>::infinity();
    for (const auto& y : sample) min_v = std::min(min_v, eval(f[j], y));
    const double current = eval(f[j], x);
    const Vec* best = nullptr;
    for (const auto& y : sample) {
      const double v = eval(f[j], y);
      if (v > min_v + tol || v >= current - tol) continue;
      if (best == nullptr || lex_less(y, *best)) best = &y;
    }
    if (best == nullptr) break;
    x = *best;
  }
  out.x0 = x;
  return out;
}

std::vector<Vec> FrontResult::weak_points() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weak[i]) out.push_back(points[i]);
  }
  return out;
}

std::vector<Vec> FrontResult::strong_points() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (strong[i]) out.push_back(points[i]);
  }
  return out;
}

FrontResult front_of(std::vector<Vec> points, const VectorObjective& f, double tol) {
  FrontResult out;
  out.points = std::move(points);
  const std::size_t N = out.points.size();
  out.images.resize(N);
  parallel_for(N, [&](std::size_t i) { out.images[i] = f.eval(out.points[i]); });
  std::vector<char> weak(N, 1);
  std::vector<char> strong(N, 1);
  parallel_for(N, [&](std::size_t i) {
    const Vec& fi = out.images[i];
    for (std::size_t j = 0; j < N && (weak[i] || strong[i]); ++j) {
      if (j == i) continue;
      const Vec& fj = out.images[j];
      bool all_lt = true;
      bool all_le = true;
      bool any_lt = false;
      for (Eigen::Index k = 0; k < fi.size(); ++k) {
        all_lt = all_lt && fj[k] < fi[k] - tol;
        all_le = all_le && fj[k] <= fi[k] + tol;
        any_lt = any_lt || fj[k] < fi[k] - tol;
      }
      if (all_lt) weak[i] = 0;
      if (all_le && any_lt) strong[i] = 0;
    }
  });
  out.weak.assign(weak.begin(), weak.end());
  out.strong.assign(strong.begin(), strong.end());
  return out;
}

FrontResult front_oracle(const VectorObjective& f, const FeasibleSet& K,
                         const Window& window, double tol) {
  return front_of(grid(K, window), f, tol);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_points_csv(std::ostream& out, const std::vector<Vec>& points,
                      const std::vector<Vec>& images,
                      const std::vector<std::string>& flag_names,
                      const std::vector<std::vector<std::string>>& flags) {
  if (points.size() != images.size()) throw InputError("points and images differ in length");
  const auto n = points.empty() ? 0 : points.front().size();
  const auto s = images.empty() ? 0 : images.front().size();
  std::vector<std::string> header;
  for (Eigen::Index i = 0; i < n; ++i) header.push_back("x" + std::to_string(i + 1));
  for (Eigen::Index i = 0; i < s; ++i) header.push_back("f" + std::to_string(i + 1));
  header.insert(header.end(), flag_names.begin(), flag_names.end());
  for (std::size_t k = 0; k < header.size(); ++k) {
    out << (k ? "," : "") << csv_field(header[k]);
  }
  out << "\r\n";
  for (std::size_t r = 0; r < points.size(); ++r) {
    bool first = true;
    auto put = [&](const std::string& field) {
      out << (first ? "" : ",") << csv_field(field);
      first = false;
    };
    for (Eigen::Index i = 0; i < points[r].size(); ++i) put(format_roundtrip(points[r][i]));
    for (Eigen::Index i = 0; i < images[r].size(); ++i) put(format_roundtrip(images[r][i]));
    if (r < flags.size()) {
      for (const auto& fl : flags[r]) put(fl);
    }
    out << "\r\n";
  }
}

}  // namespace pareto_tame
