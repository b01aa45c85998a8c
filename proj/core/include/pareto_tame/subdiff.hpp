#ifndef PARETO_TAME_SUBDIFF_HPP
#define PARETO_TAME_SUBDIFF_HPP

#include <vector>

#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"

namespace pareto_tame {

/// Convex hull of a finite generator list. `exact` is true when the hull is
/// known to equal the limiting subdifferential; otherwise it is an
/// over-approximating inclusion.
struct HullRep {
  std::vector<Vec> generators;
  bool exact = true;
};

struct SubdiffOptions {
  /// Permit nonsmooth-inside-nonsmooth at a kink; the result is flagged
  /// inexact instead of raising InexactCompositionError.
  bool allow_inexact = false;
  /// Arguments within this distance of the max (or of zero for abs/norm2)
  /// count as active.
  double active_tol = 1e-9;
};

/// Generators of the subdifferential hull of e at x. Smooth parts use
/// symbolic gradients; kinks of abs/max/min/norm2 expand into the hull of
/// their active pieces, and sums combine by Minkowski addition.
HullRep subdiff(const Expr& e, const Vec& x, const SubdiffOptions& options = {});

/// Finite generator set whose convex hull contains the Euclidean unit ball
/// of R^m: the 2m signed axes plus, for m <= 4, the 2^m normalized sign
/// vectors, all scaled by the inverse inradius of their hull. Exact only for
/// m = 1.
std::vector<Vec> unit_ball_generators(std::size_t m);

}  // namespace pareto_tame

#endif  // PARETO_TAME_SUBDIFF_HPP
