#ifndef PARETO_TAME_TESTS_ORACLES_HPP
#define PARETO_TAME_TESTS_ORACLES_HPP

// Independent reference computations used by the tests. None of these call
// into the library's solvers; they only use eval() on expressions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pareto_tame/expression.hpp"
#include "pareto_tame/feasible.hpp"

namespace oracle {

using pareto_tame::Expr;
using pareto_tame::Vec;

inline Vec fd_gradient(const Expr& e, const Vec& x, double h = 1e-6) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec a = x;
    Vec b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (pareto_tame::eval(e, a) - pareto_tame::eval(e, b)) / (2 * h);
  }
  return g;
}

/// One-sided directional derivative by forward differences.
inline double directional(const Expr& e, const Vec& x, const Vec& d, double h = 1e-7) {
  return (pareto_tame::eval(e, x + h * d) - pareto_tame::eval(e, x)) / h;
}

/// Exact min-norm over conv(G) + cone(R) by enumerating supports: for every
/// subset of generators and rays, minimize the norm over the affine hull
/// with the cone part free, and keep solutions whose coefficients have the
/// right signs. The optimum is attained on some support, where it equals
/// the unconstrained affine minimizer.
inline double enumerate_min_norm(const std::vector<Vec>& G, const std::vector<Vec>& R) {
  const std::size_t m = G.size();
  const std::size_t r = R.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned gs = 1; gs < (1u << m); ++gs) {
    for (unsigned rs = 0; rs < (1u << r); ++rs) {
      std::vector<Vec> gen;
      std::vector<Vec> ray;
      for (std::size_t i = 0; i < m; ++i)
        if (gs & (1u << i)) gen.push_back(G[i]);
      for (std::size_t j = 0; j < r; ++j)
        if (rs & (1u << j)) ray.push_back(R[j]);
      // Variables: w (|gen|), c (|ray|). Point = g0 + sum_{i>0} w_i (g_i - g0) + sum c_j r_j.
      const auto n = gen[0].size();
      const auto k = static_cast<Eigen::Index>(gen.size() - 1 + ray.size());
      Eigen::VectorXd w(static_cast<Eigen::Index>(gen.size()));
      Eigen::VectorXd c(static_cast<Eigen::Index>(ray.size()));
      if (k == 0) {
        w[0] = 1.0;
      } else {
        Eigen::MatrixXd A(n, k);
        for (std::size_t i = 1; i < gen.size(); ++i)
          A.col(static_cast<Eigen::Index>(i - 1)) = gen[i] - gen[0];
        for (std::size_t j = 0; j < ray.size(); ++j)
          A.col(static_cast<Eigen::Index>(gen.size() - 1 + j)) = ray[j];
        const Eigen::VectorXd z = A.completeOrthogonalDecomposition().solve(-gen[0]);
        w[0] = 1.0;
        for (std::size_t i = 1; i < gen.size(); ++i) {
          w[static_cast<Eigen::Index>(i)] = z[static_cast<Eigen::Index>(i - 1)];
          w[0] -= z[static_cast<Eigen::Index>(i - 1)];
        }
        for (std::size_t j = 0; j < ray.size(); ++j)
          c[static_cast<Eigen::Index>(j)] = z[static_cast<Eigen::Index>(gen.size() - 1 + j)];
      }
      if ((w.array() < -1e-12).any() || (c.array() < -1e-12).any()) continue;
      Vec p = Vec::Zero(gen[0].size());
      for (std::size_t i = 0; i < gen.size(); ++i) p += w[static_cast<Eigen::Index>(i)] * gen[i];
      for (std::size_t j = 0; j < ray.size(); ++j) p += c[static_cast<Eigen::Index>(j)] * ray[j];
      best = std::min(best, p.norm());
    }
  }
  return best;
}

/// Dense sampling of conv(G) + cone(R): an upper-bound oracle. Convex
/// weights are sampled on a simplex lattice and then on successively finer
/// boxes around the best sample; ray coefficients are chosen optimally per
/// sample by nonnegative least squares over at most two rays (closed form).
inline double sampled_min_norm(const std::vector<Vec>& G, const std::vector<Vec>& R,
                               int lattice = 24, int rounds = 8, int per_axis = 9) {
  const std::size_t m = G.size();
  auto ray_part = [&](const Vec& p) {
    double d = p.norm();
    for (const auto& r : R) {
      const double t = std::max(0.0, -p.dot(r) / r.squaredNorm());
      d = std::min(d, (p + t * r).norm());
    }
    if (R.size() == 2) {
      Eigen::MatrixXd A(p.size(), 2);
      A.col(0) = R[0];
      A.col(1) = R[1];
      const Eigen::VectorXd z = A.completeOrthogonalDecomposition().solve(-p);
      if (z[0] >= 0 && z[1] >= 0) d = std::min(d, (p + A * z).norm());
    }
    return d;
  };
  auto value = [&](const std::vector<double>& w) {
    Vec p = Vec::Zero(G[0].size());
    for (std::size_t j = 0; j < m; ++j) p += w[j] * G[j];
    return ray_part(p);
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_w(m, 0.0);
  std::vector<double> w(m, 0.0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == m) {
      w[i] = static_cast<double>(left) / lattice;
      const double v = value(w);
      if (v < best) {
        best = v;
        best_w = w;
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      w[i] = static_cast<double>(c) / lattice;
      rec(i + 1, left - c);
    }
  };
  rec(0, lattice);
  if (m == 1) return best;
  // Zoom: box of half-width r around the best in the first m-1 weights.
  double r = 1.0 / lattice;
  for (int round = 0; round < rounds; ++round, r *= 0.35) {
    const std::vector<double> center = best_w;
    std::vector<int> idx(m - 1, 0);
    while (true) {
      double sum = 0.0;
      bool ok = true;
      for (std::size_t j = 0; j + 1 < m; ++j) {
        w[j] = center[j] + r * (2.0 * idx[j] / (per_axis - 1) - 1.0);
        ok = ok && w[j] >= 0.0;
        sum += w[j];
      }
      w[m - 1] = 1.0 - sum;
      if (ok && w[m - 1] >= 0.0) {
        const double v = value(w);
        if (v < best) {
          best = v;
          best_w = w;
        }
      }
      std::size_t k = 0;
      while (k + 1 < m && ++idx[k] == per_axis) idx[k++] = 0;
      if (k + 1 == m) break;
    }
  }
  return best;
}

/// Brute force pairwise domination with exact comparisons.
struct Fronts {
  std::vector<bool> weak;
  std::vector<bool> strong;
};

inline Fronts brute_fronts(const std::vector<Vec>& images, double tol) {
  const std::size_t N = images.size();
  Fronts out{std::vector<bool>(N, true), std::vector<bool>(N, true)};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (i == j) continue;
      const Vec d = images[j] - images[i];
      if ((d.array() < -tol).all()) out.weak[i] = false;
      if ((d.array() <= tol).all() && (d.array() < -tol).any()) out.strong[i] = false;
    }
  }
  return out;
}

}  // namespace oracle

#endif  // PARETO_TAME_TESTS_ORACLES_HPP
