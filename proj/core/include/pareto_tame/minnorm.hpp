#ifndef PARETO_TAME_MINNORM_HPP
#define PARETO_TAME_MINNORM_HPP

#include <cstddef>
#include <vector>

#include "pareto_tame/common.hpp"
#include "pareto_tame/feasible.hpp"

namespace pareto_tame {

struct MinNormOptions {
  double tol = 1e-9;
  std::size_t max_iter = 50000;
};

/// dist(0, conv(G) + C) together with the point and coefficients realizing
/// it: witness = G * weights + rays * cone_coeffs + lineality * lineality_coeffs.
struct MinNormResult {
  double distance = 0.0;
  Vec witness_point;
  Vec weights;           // convex weights over G
  Vec cone_coeffs;       // nonnegative, one per ray
  Vec lineality_coeffs;  // free, one per lineality direction
  std::size_t iterations = 0;
  bool converged = false;
  /// Certified lower bound on the true distance from the dual direction
  /// witness / |witness|; distance - lower_bound is the duality gap.
  double lower_bound = 0.0;
  double gap = 0.0;
  /// Index of the winning case for min_norm_multi (0 for min_norm).
  std::size_t case_index = 0;
};

MinNormResult min_norm(const std::vector<Vec>& G, const ConeRep& C,
                       const MinNormOptions& options = {});

/// Minimum over the paired cases (G_k, C_k); ties keep the first case.
MinNormResult min_norm_multi(const std::vector<std::vector<Vec>>& Gs,
                             const std::vector<ConeRep>& Cs,
                             const MinNormOptions& options = {});

}  // namespace pareto_tame

#endif  // PARETO_TAME_MINNORM_HPP
