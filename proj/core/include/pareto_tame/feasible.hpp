#ifndef PARETO_TAME_FEASIBLE_HPP
#define PARETO_TAME_FEASIBLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"

namespace pareto_tame {

/// a . x <= b
struct AffineConstraint {
  Vec a;
  double b = 0.0;
};

/// Box ∩ affine inequalities ∩ smooth inequalities g(x) <= 0. Closed.
struct Cell {
  Vec lower;
  Vec upper;
  std::vector<AffineConstraint> affine;
  std::vector<Expr> smooth;

  /// All of R^n.
  static Cell whole(std::size_t dimension);
  static Cell box(Vec lower, Vec upper);

  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }

  /// Conjunction of both constraint lists; boxes intersect.
  Cell intersect(const Cell& other) const;
};

/// Translates of base cells by k * period along one axis, for k in
/// [k_min, k_max]. The finite k range is a truncation of the infinite family.
struct PeriodicFamily {
  std::size_t axis = 0;
  double period = 0.0;
  std::vector<Cell> base_cells;
  long k_min = 0;
  long k_max = 0;
};

/// {sum lambda_j r_j + sum mu_l l_l : lambda >= 0, mu free}.
struct ConeRep {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;

  bool is_zero() const { return rays.empty() && lineality.empty(); }
};

/// Axis-aligned sampling window with per-axis node counts.
struct Window {
  Vec lower;
  Vec upper;
  std::vector<std::size_t> resolution;

  /// Same count on every axis.
  static Window uniform(Vec lower, Vec upper, std::size_t count);
  std::size_t node_count() const;
  /// Node with row-major flat index (last axis fastest).
  Vec node(std::size_t flat) const;
};

/// Finite union of cells, optionally extended by a periodic family, with
/// every cell intersected with one of the overlay bundles when any exist.
/// Overlay constraints are evaluated at x itself, base constraints of a
/// periodic translate at x minus the translation.
class FeasibleSet {
 public:
  FeasibleSet() = default;
  FeasibleSet(std::size_t dimension, std::vector<Cell> cells,
              std::optional<PeriodicFamily> periodic = std::nullopt);

  static FeasibleSet whole(std::size_t dimension);
  static FeasibleSet box(Vec lower, Vec upper);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::optional<PeriodicFamily>& periodic() const { return periodic_; }
  const std::vector<Cell>& overlays() const { return overlays_; }

  /// The set intersected with the union of the given bundles.
  FeasibleSet intersect_union(const std::vector<Cell>& bundles) const;

  bool contains(const Vec& x, double tol = 1e-9) const;

  /// One cone per cell containing x (empty when x is infeasible). An
  /// interior point yields the zero cone. Throws DegenerateCornerError when
  /// the active normals of a containing cell are linearly dependent.
  std::vector<ConeRep> normal_cones(const Vec& x, double tol = 1e-7) const;

  /// Number of cells containing x; more than one marks a junction.
  std::size_t containing_cells(const Vec& x, double tol = 1e-7) const;

  /// True when the periodic family's truncation could affect a verdict.
  bool truncated() const { return periodic_.has_value(); }

  /// Bounds along every axis implied by the cells' boxes (±inf if unbounded
  /// or periodic).
  Vec box_lower() const;
  Vec box_upper() const;

 private:
  struct Piece {
    const Cell* base;
    double shift;  // along the periodic axis; 0 for explicit cells
    const Cell* overlay;
  };
  template <typename Visit>
  void for_each_candidate(const Vec& x, double tol, Visit&& visit) const;

  std::size_t dimension_ = 0;
  std::vector<Cell> cells_;
  std::optional<PeriodicFamily> periodic_;
  std::vector<Cell> overlays_;
};

/// Single-cone convenience: the cone when exactly one cell contains x.
/// Throws InputError for infeasible x and for junction points.
ConeRep normal_cone(const FeasibleSet& K, const Vec& x, double tol = 1e-7);

/// Feasible grid nodes of the window in row-major order.
std::vector<Vec> grid(const FeasibleSet& K, const Window& window, double tol = 1e-9);

}  // namespace pareto_tame

#endif  // PARETO_TAME_FEASIBLE_HPP
