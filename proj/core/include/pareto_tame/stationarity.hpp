#ifndef PARETO_TAME_STATIONARITY_HPP
#define PARETO_TAME_STATIONARITY_HPP

#include <string>

#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"
#include "pareto_tame/feasible.hpp"
#include "pareto_tame/minnorm.hpp"
#include "pareto_tame/sections.hpp"
#include "pareto_tame/subdiff.hpp"

namespace pareto_tame {

struct StationarityOptions {
  /// Threshold for "= 0" verdicts; values in (tol, 10 tol] are marginal.
  double tol = 1e-7;
  /// Activity tolerance for constraints in normal cones.
  double active_tol = 1e-7;
  bool allow_inexact = false;
  MinNormOptions minnorm;
};

struct NuValue {
  double value = 0.0;
  /// Set when a subdifferential hull was an over-approximation or x sits on
  /// a junction of several cells; ν = 0 is then not conclusive.
  bool is_lower_bound_only = false;
  MinNormResult witness;
};

enum class ZeroVerdict { kZero, kMarginal, kPositive };

ZeroVerdict classify(double value, double tol);
std::string to_string(ZeroVerdict v);

/// dist(0, conv(∪ ∂f_i(x)) + N(x;K)), minimized over the cells holding x.
NuValue nu(const VectorObjective& f, const FeasibleSet& K, const Vec& x,
           const StationarityOptions& options = {});

/// ν of f_I over the sublevel set K_{x0}.
NuValue nu_restricted(const VectorObjective& f, const FeasibleSet& K, const Vec& x0,
                      const IndexSet& I, const Vec& x,
                      const StationarityOptions& options = {});

/// Same with a prebuilt sublevel set, for sweeps.
NuValue nu_restricted(const VectorObjective& f, const SublevelSet& S, const IndexSet& I,
                      const Vec& x, const StationarityOptions& options = {});

struct TangencyCertificate {
  bool member = false;
  double residual = 0.0;
  Vec alpha;  // nonnegative, one per objective
  double mu = 0.0;
  bool is_lower_bound_only = false;
};

/// Smallest dist(0, conv(∪ ∂f_i(x) ∪ {±x}) + N(x;K)); the convex weights
/// give (α, μ) with Σα + |μ| = 1.
TangencyCertificate tangency_member(const VectorObjective& f, const FeasibleSet& K,
                                    const Vec& x, const StationarityOptions& options = {});

}  // namespace pareto_tame

#endif  // PARETO_TAME_STATIONARITY_HPP
