#include "pareto_tame/stationarity.hpp"

namespace pareto_tame {
namespace {

struct Hulls {
  std::vector<Vec> generators;
  std::vector<std::size_t> owner;  // objective index per generator
  bool exact = true;
};

Hulls collect(const VectorObjective& f, const Vec& x, const StationarityOptions& opt) {
  SubdiffOptions sopt;
  sopt.allow_inexact = opt.allow_inexact;
  Hulls out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    HullRep h = subdiff(f[i], x, sopt);
    out.exact = out.exact && h.exact;
    for (auto& g : h.generators) {
      out.generators.push_back(std::move(g));
      out.owner.push_back(i);
    }
  }
  return out;
}

std::vector<ConeRep> cones_at(const FeasibleSet& K, const Vec& x, double tol) {
  auto cones = K.normal_cones(x, tol);
  if (cones.empty()) throw InputError("point " + format_vec(x) + " is not in the feasible set");
  return cones;
}

}  // namespace

ZeroVerdict classify(double value, double tol) {
  if (value <= tol) return ZeroVerdict::kZero;
  if (value <= 10.0 * tol) return ZeroVerdict::kMarginal;
  return ZeroVerdict::kPositive;
}

std::string to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::kZero:
      return "zero";
    case ZeroVerdict::kMarginal:
      return "marginal";
    default:
      return "positive";
  }
}

NuValue nu(const VectorObjective& f, const FeasibleSet& K, const Vec& x,
           const StationarityOptions& options) {
  if (static_cast<std::size_t>(x.size()) != f.dimension()) {
    throw DimensionError("point dimension does not match the objective");
  }
  const auto cones = cones_at(K, x, options.active_tol);
  const Hulls h = collect(f, x, options);
  std::vector<std::vector<Vec>> Gs(cones.size(), h.generators);
  NuValue out;
  out.witness = min_norm_multi(Gs, cones, options.minnorm);
  out.value = out.witness.distance;
  out.is_lower_bound_only = !h.exact || cones.size() > 1;
  return out;
}

NuValue nu_restricted(const VectorObjective& f, const SublevelSet& S, const IndexSet& I,
                      const Vec& x, const StationarityOptions& options) {
  if (I.empty()) throw InputError("restricted ν needs a nonempty index set");
  return nu(f.restrict(I), S.set, x, options);
}

NuValue nu_restricted(const VectorObjective& f, const FeasibleSet& K, const Vec& x0,
                      const IndexSet& I, const Vec& x, const StationarityOptions& options) {
  return nu_restricted(f, sublevel(f, K, x0), I, x, options);
}

TangencyCertificate tangency_member(const VectorObjective& f, const FeasibleSet& K,
                                    const Vec& x, const StationarityOptions& options) {
  if (static_cast<std::size_t>(x.size()) != f.dimension()) {
    throw DimensionError("point dimension does not match the objective");
  }
  const auto cones = cones_at(K, x, options.active_tol);
  const Hulls h = collect(f, x, options);
  TangencyCertificate best;
  bool have = false;
  for (double sign : {1.0, -1.0}) {
    std::vector<Vec> G = h.generators;
    G.push_back(sign * x);
    std::vector<std::vector<Vec>> Gs(cones.size(), G);
    const MinNormResult r = min_norm_multi(Gs, cones, options.minnorm);
    if (have && !(r.distance < best.residual)) continue;
    have = true;
    best.residual = r.distance;
    best.alpha = Vec::Zero(static_cast<Eigen::Index>(f.size()));
    for (std::size_t k = 0; k < h.generators.size(); ++k) {
      best.alpha[static_cast<Eigen::Index>(h.owner[k])] += r.weights[static_cast<Eigen::Index>(k)];
    }
    best.mu = sign * r.weights[static_cast<Eigen::Index>(h.generators.size())];
  }
  best.member = best.residual <= options.tol;
  best.is_lower_bound_only = !h.exact || cones.size() > 1;
  return best;
}

}  // namespace pareto_tame
