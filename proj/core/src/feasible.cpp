#include "pareto_tame/feasible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pareto_tame/parallel.hpp"

namespace pareto_tame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dimension(const Vec& x, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(x.size()) != n) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(n) + ", got " + std::to_string(x.size()));
  }
}

void validate_cell(const Cell& c, std::size_t n) {
  check_dimension(c.lower, n, "cell lower bound");
  check_dimension(c.upper, n, "cell upper bound");
  for (Eigen::Index i = 0; i < c.lower.size(); ++i) {
    if (std::isnan(c.lower[i]) || std::isnan(c.upper[i]) || c.lower[i] > c.upper[i]) {
      throw InputError("cell box is empty along axis " + std::to_string(i + 1));
    }
  }
  for (const auto& a : c.affine) {
    check_dimension(a.a, n, "affine constraint");
    if (!a.a.allFinite() || !std::isfinite(a.b)) {
      throw InputError("affine constraint has a non-finite coefficient");
    }
  }
  for (const auto& g : c.smooth) {
    if (!g.is_smooth()) {
      throw InputError("smooth constraint contains abs/max/min/norm2: " + print(g));
    }
    if (g.arity() > n) throw DimensionError("smooth constraint uses a variable beyond x" + std::to_string(n));
  }
}

// x is the point in the base cell's own coordinates.
bool satisfies(const Cell& c, const Vec& x, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < c.lower[i] - tol || x[i] > c.upper[i] + tol) return false;
  }
  for (const auto& a : c.affine) {
    if (a.a.dot(x) > a.b + tol) return false;
  }
  for (const auto& g : c.smooth) {
    if (eval(g, x) > tol) return false;
  }
  return true;
}

struct ActiveNormal {
  Vec normal;
  std::string label;
};

void collect_active(const Cell& c, const Vec& x, double tol, const char* prefix,
                    std::vector<ActiveNormal>& out, std::vector<Vec>& lineality) {
  const auto n = x.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool at_lo = std::isfinite(c.lower[i]) && std::abs(x[i] - c.lower[i]) <= tol;
    const bool at_hi = std::isfinite(c.upper[i]) && std::abs(x[i] - c.upper[i]) <= tol;
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    if (at_lo && at_hi) {
      lineality.push_back(e);
    } else if (at_lo) {
      out.push_back({-e, std::string(prefix) + "x" + std::to_string(i + 1) + ">=lower"});
    } else if (at_hi) {
      out.push_back({e, std::string(prefix) + "x" + std::to_string(i + 1) + "<=upper"});
    }
  }
  for (std::size_t k = 0; k < c.affine.size(); ++k) {
    const auto& a = c.affine[k];
    if (std::abs(a.a.dot(x) - a.b) <= tol * a.a.norm()) {
      out.push_back({a.a, std::string(prefix) + "affine#" + std::to_string(k + 1)});
    }
  }
  for (std::size_t k = 0; k < c.smooth.size(); ++k) {
    // First-order distance to the boundary, so a constraint whose value and
    // gradient both fade along a path is not mistaken for an active one.
    Vec g = gradient_at(c.smooth[k], x);
    if (std::abs(eval(c.smooth[k], x)) <= tol * g.norm()) {
      out.push_back({std::move(g),
                     std::string(prefix) + "smooth#" + std::to_string(k + 1) + ": " +
                         print(c.smooth[k])});
    }
  }
}

std::size_t rank_of(const std::vector<Vec>& vectors, Eigen::Index n) {
  if (vectors.empty()) return 0;
  Mat m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(1e-9);
  return static_cast<std::size_t>(qr.rank());
}

// Normalized, parallel duplicates removed, opposite pairs promoted to
// lineality, then checked for linear independence.
ConeRep build_cone(std::vector<ActiveNormal> active, std::vector<Vec> lineality,
                   Eigen::Index n) {
  std::vector<ActiveNormal> unit;
  for (auto& a : active) {
    const double len = a.normal.norm();
    if (len <= 1e-12) {
      throw DegenerateCornerError("active constraint has a vanishing gradient",
                                  {a.label});
    }
    Vec u = a.normal / len;
    const bool dup = std::any_of(unit.begin(), unit.end(), [&](const ActiveNormal& b) {
      return (b.normal - u).norm() <= 1e-9;
    });
    if (!dup) unit.push_back({u, a.label});
  }
  ConeRep cone;
  std::vector<bool> used(unit.size(), false);
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < unit.size(); ++j) {
      if (!used[j] && (unit[i].normal + unit[j].normal).norm() <= 1e-9) {
        used[i] = used[j] = true;
        lineality.push_back(unit[i].normal);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (!used[i]) cone.rays.push_back(unit[i].normal);
  }
  for (auto& l : lineality) {
    const bool dup = std::any_of(cone.lineality.begin(), cone.lineality.end(),
                                 [&](const Vec& m) {
                                   return (m - l).norm() <= 1e-9 || (m + l).norm() <= 1e-9;
                                 });
    if (!dup) cone.lineality.push_back(l);
  }
  std::vector<Vec> all = cone.rays;
  all.insert(all.end(), cone.lineality.begin(), cone.lineality.end());
  if (rank_of(all, n) < all.size()) {
    std::vector<std::string> labels;
    for (const auto& u : unit) labels.push_back(u.label);
    throw DegenerateCornerError("active constraint normals are linearly dependent",
                                std::move(labels));
  }
  return cone;
}

}  // namespace

Cell Cell::whole(std::size_t dimension) {
  const auto n = static_cast<Eigen::Index>(dimension);
  return box(Vec::Constant(n, -kInf), Vec::Constant(n, kInf));
}

Cell Cell::box(Vec lower, Vec upper) {
  Cell c;
  c.lower = std::move(lower);
  c.upper = std::move(upper);
  return c;
}

Cell Cell::intersect(const Cell& other) const {
  Cell c;
  c.lower = lower.cwiseMax(other.lower);
  c.upper = upper.cwiseMin(other.upper);
  c.affine = affine;
  c.affine.insert(c.affine.end(), other.affine.begin(), other.affine.end());
  c.smooth = smooth;
  c.smooth.insert(c.smooth.end(), other.smooth.begin(), other.smooth.end());
  return c;
}

Window Window::uniform(Vec lower, Vec upper, std::size_t count) {
  Window w;
  w.resolution.assign(static_cast<std::size_t>(lower.size()), count);
  w.lower = std::move(lower);
  w.upper = std::move(upper);
  return w;
}

std::size_t Window::node_count() const {
  std::size_t total = 1;
  for (auto r : resolution) total *= r;
  return resolution.empty() ? 0 : total;
}

Vec Window::node(std::size_t flat) const {
  const auto n = static_cast<Eigen::Index>(resolution.size());
  Vec x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const std::size_t r = resolution[static_cast<std::size_t>(i)];
    const std::size_t k = flat % r;
    flat /= r;
    x[i] = r == 1 ? lower[i]
                  : lower[i] + (upper[i] - lower[i]) * static_cast<double>(k) /
                                   static_cast<double>(r - 1);
  }
  return x;
}

FeasibleSet::FeasibleSet(std::size_t dimension, std::vector<Cell> cells,
                         std::optional<PeriodicFamily> periodic)
    : dimension_(dimension), cells_(std::move(cells)), periodic_(std::move(periodic)) {
  if (cells_.empty() && !periodic_) throw InputError("feasible set has no cells");
  for (const auto& c : cells_) validate_cell(c, dimension_);
  if (periodic_) {
    const auto& p = *periodic_;
    if (p.axis >= dimension_) throw DimensionError("periodic axis out of range");
    if (!(p.period > 0.0) || !std::isfinite(p.period)) {
      throw InputError("periodic family needs a positive finite period");
    }
    if (p.base_cells.empty()) throw InputError("periodic family has no base cells");
    if (p.k_min > p.k_max) throw InputError("periodic family has k_min > k_max");
    const auto a = static_cast<Eigen::Index>(p.axis);
    for (const auto& c : p.base_cells) {
      validate_cell(c, dimension_);
      if (!std::isfinite(c.lower[a]) || !std::isfinite(c.upper[a])) {
        throw InputError("periodic base cell must be bounded along its axis");
      }
    }
  }
}

FeasibleSet FeasibleSet::whole(std::size_t dimension) {
  return FeasibleSet(dimension, {Cell::whole(dimension)});
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  const auto n = static_cast<std::size_t>(lower.size());
  return FeasibleSet(n, {Cell::box(std::move(lower), std::move(upper))});
}

FeasibleSet FeasibleSet::intersect_union(const std::vector<Cell>& bundles) const {
  if (bundles.empty()) throw InputError("intersection with an empty union");
  for (const auto& b : bundles) validate_cell(b, dimension_);
  FeasibleSet out = *this;
  if (overlays_.empty()) {
    out.overlays_ = bundles;
    return out;
  }
  out.overlays_.clear();
  for (const auto& a : overlays_) {
    for (const auto& b : bundles) out.overlays_.push_back(a.intersect(b));
  }
  return out;
}

template <typename Visit>
void FeasibleSet::for_each_candidate(const Vec& x, double tol, Visit&& visit) const {
  static const Cell* const kNoOverlay = nullptr;
  auto with_overlays = [&](const Cell* base, double shift) {
    if (overlays_.empty()) {
      visit(Piece{base, shift, kNoOverlay});
    } else {
      for (const auto& o : overlays_) visit(Piece{base, shift, &o});
    }
  };
  for (const auto& c : cells_) with_overlays(&c, 0.0);
  if (!periodic_) return;
  const auto& p = *periodic_;
  const auto a = static_cast<Eigen::Index>(p.axis);
  for (const auto& c : p.base_cells) {
    const double lo = std::ceil((x[a] - c.upper[a] - tol) / p.period);
    const double hi = std::floor((x[a] - c.lower[a] + tol) / p.period);
    const double k0 = std::max(lo, static_cast<double>(p.k_min));
    const double k1 = std::min(hi, static_cast<double>(p.k_max));
    for (double k = k0; k <= k1; k += 1.0) with_overlays(&c, k * p.period);
  }
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  check_dimension(x, dimension_, "point");
  if (!x.allFinite()) return false;
  bool found = false;
  for_each_candidate(x, tol, [&](const Piece& piece) {
    if (found) return;
    Vec local = x;
    if (periodic_ && piece.shift != 0.0) local[static_cast<Eigen::Index>(periodic_->axis)] -= piece.shift;
    if (satisfies(*piece.base, local, tol) &&
        (piece.overlay == nullptr || satisfies(*piece.overlay, x, tol))) {
      found = true;
    }
  });
  return found;
}

std::size_t FeasibleSet::containing_cells(const Vec& x, double tol) const {
  check_dimension(x, dimension_, "point");
  std::size_t count = 0;
  for_each_candidate(x, tol, [&](const Piece& piece) {
    Vec local = x;
    if (periodic_ && piece.shift != 0.0) local[static_cast<Eigen::Index>(periodic_->axis)] -= piece.shift;
    if (satisfies(*piece.base, local, tol) &&
        (piece.overlay == nullptr || satisfies(*piece.overlay, x, tol))) {
      ++count;
    }
  });
  return count;
}

std::vector<ConeRep> FeasibleSet::normal_cones(const Vec& x, double tol) const {
  check_dimension(x, dimension_, "point");
  std::vector<ConeRep> cones;
  for_each_candidate(x, tol, [&](const Piece& piece) {
    Vec local = x;
    if (periodic_ && piece.shift != 0.0) local[static_cast<Eigen::Index>(periodic_->axis)] -= piece.shift;
    if (!satisfies(*piece.base, local, tol)) return;
    if (piece.overlay != nullptr && !satisfies(*piece.overlay, x, tol)) return;
    std::vector<ActiveNormal> active;
    std::vector<Vec> lineality;
    collect_active(*piece.base, local, tol, "", active, lineality);
    if (piece.overlay != nullptr) {
      collect_active(*piece.overlay, x, tol, "sublevel ", active, lineality);
    }
    cones.push_back(build_cone(std::move(active), std::move(lineality), x.size()));
  });
  return cones;
}

Vec FeasibleSet::box_lower() const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  if (periodic_) return Vec::Constant(n, -kInf);
  Vec lo = Vec::Constant(n, kInf);
  for (const auto& c : cells_) lo = lo.cwiseMin(c.lower);
  return lo;
}

Vec FeasibleSet::box_upper() const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  if (periodic_) return Vec::Constant(n, kInf);
  Vec hi = Vec::Constant(n, -kInf);
  for (const auto& c : cells_) hi = hi.cwiseMax(c.upper);
  return hi;
}

ConeRep normal_cone(const FeasibleSet& K, const Vec& x, double tol) {
  auto cones = K.normal_cones(x, tol);
  if (cones.empty()) throw InputError("normal cone requested at an infeasible point " + format_vec(x));
  if (cones.size() > 1) {
    throw InputError("point " + format_vec(x) + " lies in " + std::to_string(cones.size()) +
                     " cells; use normal_cones");
  }
  return std::move(cones.front());
}

std::vector<Vec> grid(const FeasibleSet& K, const Window& window, double tol) {
  const auto n = static_cast<Eigen::Index>(K.dimension());
  if (window.lower.size() != n || window.upper.size() != n ||
      window.resolution.size() != K.dimension()) {
    throw DimensionError("window dimension does not match the feasible set");
  }
  if (!window.lower.allFinite() || !window.upper.allFinite()) {
    throw InputError("grid window must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (window.lower[i] > window.upper[i]) throw InputError("grid window has lower > upper");
    if (window.resolution[static_cast<std::size_t>(i)] == 0) {
      throw InputError("grid resolution must be positive");
    }
  }
  const std::size_t total = window.node_count();
  std::vector<char> keep(total, 0);
  parallel_for(total, [&](std::size_t i) { keep[i] = K.contains(window.node(i), tol) ? 1 : 0; });
  std::vector<Vec> out;
  for (std::size_t i = 0; i < total; ++i) {
    if (keep[i]) out.push_back(window.node(i));
  }
  return out;
}

}  // namespace pareto_tame
