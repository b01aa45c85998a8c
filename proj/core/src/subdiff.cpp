#include "pareto_tame/subdiff.hpp"

#include <algorithm>
#include <cmath>

namespace pareto_tame {
namespace {

// Minkowski sums multiply generator counts; past this the hull is useless to
// the min-norm solver anyway.
constexpr std::size_t kMaxGenerators = 4096;

struct Local {
  std::vector<Vec> gens;
  bool exact = true;
  bool smooth = true;  // differentiable at x; gens is then a singleton
  double value = 0.0;
};

void dedupe(std::vector<Vec>& gens) {
  std::vector<Vec> out;
  out.reserve(gens.size());
  for (auto& g : gens) {
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Vec& h) { return h == g; });
    if (!seen) out.push_back(std::move(g));
  }
  gens = std::move(out);
}

std::vector<Vec> minkowski(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() * b.size() > kMaxGenerators) {
    throw NumericalError("Minkowski sum exceeds " +
                         std::to_string(kMaxGenerators) + " generators");
  }
  std::vector<Vec> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a) {
    for (const auto& v : b) out.push_back(u + v);
  }
  dedupe(out);
  return out;
}

std::vector<Vec> scaled(const std::vector<Vec>& gens, double c) {
  std::vector<Vec> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(c * g);
  dedupe(out);
  return out;
}

Local smooth_local(double value, Vec grad) {
  Local out;
  out.value = value;
  out.gens.push_back(std::move(grad));
  return out;
}

[[noreturn]] void inexact(const char* what) {
  throw InexactCompositionError(
      std::string("nonsmooth argument inside ") + what +
      " at its kink; pass allow_inexact for an over-approximating hull");
}

// Scalar chain rule phi(u) with phi C^1 and u nonsmooth at x.
Local chain_scalar(const Local& u, double value, double slope) {
  if (slope == 0.0) return smooth_local(value, Vec::Zero(u.gens.front().size()));
  Local out;
  out.value = value;
  out.gens = scaled(u.gens, slope);
  out.smooth = false;
  out.exact = u.exact && slope > 0.0;
  return out;
}

Local hull(const Expr& e, const Vec& x, const SubdiffOptions& opt);

Local combine_sum(const Local& a, const Local& b, double sign, double value) {
  if (a.smooth && b.smooth) {
    return smooth_local(value, a.gens.front() + sign * b.gens.front());
  }
  Local out;
  out.value = value;
  out.smooth = false;
  out.gens = minkowski(a.gens, sign > 0 ? b.gens : scaled(b.gens, -1.0));
  const bool both = !a.smooth && !b.smooth;
  const bool negated_kink = sign < 0 && !b.smooth;
  out.exact = a.exact && b.exact && !both && !negated_kink;
  return out;
}

Local combine_product(const Local& a, const Local& b) {
  const double value = a.value * b.value;
  if (a.smooth && b.smooth) {
    return smooth_local(value, b.value * a.gens.front() + a.value * b.gens.front());
  }
  if (a.smooth != b.smooth) {
    const Local& s = a.smooth ? a : b;
    const Local& ns = a.smooth ? b : a;
    const Vec shift = ns.value * s.gens.front();
    // A smooth factor vanishing at x makes the product strictly
    // differentiable there.
    if (s.value == 0.0) return smooth_local(value, shift);
    Local out;
    out.value = value;
    out.smooth = false;
    out.gens = minkowski({shift}, scaled(ns.gens, s.value));
    out.exact = ns.exact && s.value > 0.0;
    return out;
  }
  Local out;
  out.value = value;
  out.smooth = false;
  out.gens = minkowski(scaled(a.gens, b.value), scaled(b.gens, a.value));
  out.exact = false;
  return out;
}

Local hull_max_min(const Expr& e, const Vec& x, const SubdiffOptions& opt) {
  const bool is_max = e.kind() == NodeKind::kMax;
  std::vector<Local> parts;
  parts.reserve(e.args().size());
  for (const auto& a : e.args()) parts.push_back(hull(a, x, opt));
  double best = parts.front().value;
  for (const auto& p : parts) {
    best = is_max ? std::max(best, p.value) : std::min(best, p.value);
  }
  std::vector<const Local*> active;
  for (const auto& p : parts) {
    if (std::abs(p.value - best) <= opt.active_tol) active.push_back(&p);
  }
  if (active.size() == 1) {
    Local out = *active.front();
    out.value = best;
    return out;
  }
  Local out;
  out.value = best;
  out.smooth = false;
  const bool all_smooth = std::all_of(active.begin(), active.end(),
                                      [](const Local* p) { return p->smooth; });
  if (!all_smooth && !opt.allow_inexact) inexact(is_max ? "max" : "min");
  for (const Local* p : active) {
    out.gens.insert(out.gens.end(), p->gens.begin(), p->gens.end());
  }
  dedupe(out.gens);
  // max of C^1 pieces is subdifferentially regular; min is not, and its
  // limiting subdifferential is the (nonconvex) union of active gradients.
  out.exact = all_smooth && (is_max || out.gens.size() == 1);
  return out;
}

Local hull_norm2(const Expr& e, const Vec& x, const SubdiffOptions& opt) {
  std::vector<Local> parts;
  parts.reserve(e.args().size());
  double sq = 0.0;
  for (const auto& a : e.args()) {
    parts.push_back(hull(a, x, opt));
    sq += parts.back().value * parts.back().value;
  }
  const double norm = std::sqrt(sq);
  const Eigen::Index n = x.size();
  const bool all_smooth = std::all_of(parts.begin(), parts.end(),
                                      [](const Local& p) { return p.smooth; });
  if (norm > opt.active_tol) {
    if (all_smooth) {
      Vec grad = Vec::Zero(n);
      for (const auto& p : parts) grad += (p.value / norm) * p.gens.front();
      return smooth_local(norm, grad);
    }
    Local out;
    out.value = norm;
    out.smooth = false;
    out.gens = {Vec::Zero(n)};
    std::size_t nonsmooth_terms = 0;
    bool positive = true;
    for (const auto& p : parts) {
      const double c = p.value / norm;
      if (!p.smooth && c != 0.0) {
        ++nonsmooth_terms;
        positive = positive && c > 0.0 && p.exact;
      }
      out.gens = minkowski(out.gens, scaled(p.gens, c));
    }
    out.exact = nonsmooth_terms <= 1 && positive;
    return out;
  }
  if (!all_smooth && !opt.allow_inexact) inexact("norm2");
  Local out;
  out.value = norm;
  out.smooth = false;
  const auto ball = unit_ball_generators(parts.size());
  if (all_smooth) {
    Mat jac(n, static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      jac.col(static_cast<Eigen::Index>(i)) = parts[i].gens.front();
    }
    for (const auto& b : ball) out.gens.push_back(jac * b);
    dedupe(out.gens);
    out.exact = parts.size() == 1;
    return out;
  }
  for (const auto& b : ball) {
    std::vector<Vec> acc{Vec::Zero(n)};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      acc = minkowski(acc, scaled(parts[i].gens, b[static_cast<Eigen::Index>(i)]));
    }
    out.gens.insert(out.gens.end(), acc.begin(), acc.end());
  }
  dedupe(out.gens);
  out.exact = false;
  return out;
}

Local hull(const Expr& e, const Vec& x, const SubdiffOptions& opt) {
  if (e.is_smooth()) {
    return smooth_local(eval(e, x), gradient_at(e, x));
  }
  const auto& args = e.args();
  switch (e.kind()) {
    case NodeKind::kAdd: {
      Local a = hull(args[0], x, opt);
      Local b = hull(args[1], x, opt);
      return combine_sum(a, b, 1.0, a.value + b.value);
    }
    case NodeKind::kSub: {
      Local a = hull(args[0], x, opt);
      Local b = hull(args[1], x, opt);
      return combine_sum(a, b, -1.0, a.value - b.value);
    }
    case NodeKind::kMul:
      return combine_product(hull(args[0], x, opt), hull(args[1], x, opt));
    case NodeKind::kNeg: {
      Local a = hull(args[0], x, opt);
      if (a.smooth) return smooth_local(-a.value, -a.gens.front());
      Local out;
      out.value = -a.value;
      out.smooth = false;
      out.gens = scaled(a.gens, -1.0);
      out.exact = false;
      return out;
    }
    case NodeKind::kPow: {
      Local a = hull(args[0], x, opt);
      const int k = e.exponent();
      const double value = std::pow(a.value, k);
      const double slope = k * std::pow(a.value, k - 1);
      if (a.smooth) return smooth_local(value, slope * a.gens.front());
      return chain_scalar(a, value, slope);
    }
    case NodeKind::kSin:
    case NodeKind::kCos:
    case NodeKind::kExp: {
      Local a = hull(args[0], x, opt);
      double value = 0.0;
      double slope = 0.0;
      if (e.kind() == NodeKind::kSin) {
        value = std::sin(a.value);
        slope = std::cos(a.value);
      } else if (e.kind() == NodeKind::kCos) {
        value = std::cos(a.value);
        slope = -std::sin(a.value);
      } else {
        value = std::exp(a.value);
        slope = value;
      }
      if (a.smooth) return smooth_local(value, slope * a.gens.front());
      return chain_scalar(a, value, slope);
    }
    case NodeKind::kAbs: {
      Local a = hull(args[0], x, opt);
      const double value = std::abs(a.value);
      if (value > opt.active_tol) {
        const double sign = a.value < 0.0 ? -1.0 : 1.0;
        if (a.smooth) return smooth_local(value, sign * a.gens.front());
        return chain_scalar(a, value, sign);
      }
      if (!a.smooth && !opt.allow_inexact) inexact("abs");
      Local out;
      out.value = value;
      out.smooth = false;
      out.gens = a.gens;
      const auto neg = scaled(a.gens, -1.0);
      out.gens.insert(out.gens.end(), neg.begin(), neg.end());
      dedupe(out.gens);
      out.exact = a.smooth;
      return out;
    }
    case NodeKind::kMax:
    case NodeKind::kMin:
      return hull_max_min(e, x, opt);
    case NodeKind::kNorm2:
      return hull_norm2(e, x, opt);
    default:
      break;
  }
  return smooth_local(eval(e, x), gradient_at(e, x));
}

}  // namespace

std::vector<Vec> unit_ball_generators(std::size_t m) {
  if (m == 0) return {};
  const auto md = static_cast<Eigen::Index>(m);
  std::vector<Vec> gens;
  for (Eigen::Index i = 0; i < md; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec e = Vec::Zero(md);
      e[i] = s;
      gens.push_back(e);
    }
  }
  // Inradius of conv(generators) before scaling; facet enumeration done
  // offline. m = 2 is the regular octagon, m = 4 the 24-cell.
  double inradius = 1.0 / std::sqrt(static_cast<double>(m));
  if (m >= 2 && m <= 4) {
    const double len = std::sqrt(static_cast<double>(m));
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      Vec s(md);
      for (Eigen::Index i = 0; i < md; ++i) {
        s[i] = ((mask >> i) & 1U) ? -1.0 : 1.0;
      }
      gens.push_back(s / len);
    }
    constexpr double kInradius[] = {0.0, 1.0, 0.9238795325112867,
                                    0.8068982213550734, 0.7071067811865476};
    inradius = kInradius[m];
  }
  if (m == 1) inradius = 1.0;
  for (auto& g : gens) g /= inradius;
  return gens;
}

HullRep subdiff(const Expr& e, const Vec& x, const SubdiffOptions& options) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw InputError("subdiff at a non-finite point");
  }
  if (e.arity() > static_cast<std::size_t>(x.size())) {
    throw DimensionError("point dimension is smaller than the expression's");
  }
  Local local = hull(e, x, options);
  HullRep out;
  out.generators = std::move(local.gens);
  out.exact = local.exact;
  for (const auto& g : out.generators) {
    if (!g.allFinite()) throw NumericalError("non-finite subgradient");
  }
  return out;
}

}  // namespace pareto_tame
