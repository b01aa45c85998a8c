#include "pareto_tame/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pareto_tame {
namespace {

struct Atom {
  Vec a;
  bool ray = false;
  std::size_t source = 0;  // index into G or into the ray list
};

// Affine minimizer of |sum theta_i a_i| over the support with the
// generator weights summing to one. Pivoting on one generator turns this
// into an unconstrained least-squares problem.
std::vector<double> affine_minimizer(const std::vector<Atom>& atoms,
                                     const std::vector<std::size_t>& support) {
  std::size_t pivot = support.size();
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!atoms[support[k]].ray) {
      pivot = k;
      break;
    }
  }
  const Vec& a0 = atoms[support[pivot]].a;
  const auto n = a0.size();
  std::vector<double> theta(support.size(), 0.0);
  if (support.size() == 1) {
    theta[0] = 1.0;
    return theta;
  }
  Mat B(n, static_cast<Eigen::Index>(support.size() - 1));
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (k == pivot) continue;
    const Atom& at = atoms[support[k]];
    B.col(col++) = at.ray ? at.a : Vec(at.a - a0);
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(B);
  const Vec zeta = cod.solve(-a0);
  double rest = 0.0;
  col = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (k == pivot) continue;
    theta[k] = zeta[col++];
    if (!atoms[support[k]].ray) rest += theta[k];
  }
  theta[pivot] = 1.0 - rest;
  return theta;
}

Vec combine(const std::vector<Atom>& atoms, const std::vector<std::size_t>& support,
            const std::vector<double>& theta, Eigen::Index n) {
  Vec z = Vec::Zero(n);
  for (std::size_t k = 0; k < support.size(); ++k) z += theta[k] * atoms[support[k]].a;
  return z;
}

}  // namespace

MinNormResult min_norm(const std::vector<Vec>& G, const ConeRep& C,
                       const MinNormOptions& options) {
  if (G.empty()) throw InputError("min_norm needs at least one generator");
  if (!(options.tol > 0.0)) throw InputError("min_norm tolerance must be positive");
  const Eigen::Index n = G.front().size();
  auto check = [&](const Vec& v, const char* what) {
    if (v.size() != n) throw DimensionError(std::string("min_norm: ") + what + " has wrong dimension");
    if (!v.allFinite()) throw InputError(std::string("min_norm: ") + what + " is not finite");
  };
  for (const auto& g : G) check(g, "generator");
  for (const auto& r : C.rays) check(r, "ray");
  for (const auto& l : C.lineality) check(l, "lineality direction");

  // Orthonormal basis of the lineality space; everything is projected onto
  // its complement so only the simplex and ray coefficients remain.
  Mat Q(n, 0);
  if (!C.lineality.empty()) {
    Mat L(n, static_cast<Eigen::Index>(C.lineality.size()));
    for (std::size_t j = 0; j < C.lineality.size(); ++j) {
      L.col(static_cast<Eigen::Index>(j)) = C.lineality[j];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(L);
    const auto rank = qr.rank();
    Mat full = qr.householderQ();
    Q = full.leftCols(rank);
  }
  auto project = [&](const Vec& v) -> Vec {
    if (Q.cols() == 0) return v;
    return v - Q * (Q.transpose() * v);
  };

  // Power-of-two rescaling keeps results bitwise homogeneous in G.
  double max_abs = 0.0;
  for (const auto& g : G) max_abs = std::max(max_abs, g.cwiseAbs().maxCoeff());
  double scale = 1.0;
  if (max_abs > 0.0) {
    int e = 0;
    std::frexp(max_abs, &e);
    scale = std::ldexp(1.0, -e);
  }

  std::vector<Atom> atoms;
  std::vector<double> ray_len(C.rays.size(), 0.0);
  for (std::size_t i = 0; i < G.size(); ++i) atoms.push_back({project(G[i] * scale), false, i});
  for (std::size_t j = 0; j < C.rays.size(); ++j) {
    const double len = C.rays[j].norm();
    if (len == 0.0) continue;
    Vec u = project(C.rays[j] / len);
    if (u.norm() <= 1e-14) continue;  // inside the lineality space
    ray_len[j] = len;
    atoms.push_back({std::move(u), true, j});
  }

  double atom_scale = 0.0;
  for (const auto& at : atoms) atom_scale = std::max(atom_scale, at.a.squaredNorm());
  const double eps = 1e-14 * std::max(1.0, atom_scale);

  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < G.size(); ++i) {
    const double v = atoms[i].a.squaredNorm();
    if (v < best) {
      best = v;
      start = i;
    }
  }
  std::vector<std::size_t> support{start};
  std::vector<double> theta{1.0};
  Vec z = atoms[start].a;

  std::size_t iterations = 0;
  bool capped = false;
  while (true) {
    if (iterations >= options.max_iter) {
      capped = true;
      break;
    }
    const double zz = z.squaredNorm();
    if (zz == 0.0) break;
    // Linear minimization over atoms: generators improve when
    // <z,g> < |z|^2, rays when <z,r> < 0.
    std::size_t pick = atoms.size();
    double score = -eps;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double d = atoms[i].a.dot(z);
      const double s = atoms[i].ray ? d : d - zz;
      if (s < score) {
        score = s;
        pick = i;
      }
    }
    if (pick == atoms.size()) break;
    if (std::find(support.begin(), support.end(), pick) != support.end()) break;
    support.push_back(pick);
    theta.push_back(0.0);
    ++iterations;

    bool stalled = false;
    while (true) {
      const auto y = affine_minimizer(atoms, support);
      bool interior = true;
      for (double v : y) interior = interior && v > 0.0;
      if (interior) {
        theta = y;
        break;
      }
      double beta = 1.0;
      std::size_t drop = support.size();
      for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] <= 0.0) {
          const double b = theta[k] / (theta[k] - y[k]);
          if (b < beta) {
            beta = b;
            drop = k;
          }
        }
      }
      if (drop == support.size()) {
        theta = y;
        break;
      }
      if (beta == 0.0 && drop == support.size() - 1 && theta.back() == 0.0) {
        // The freshly added atom cannot enter: numerical stall.
        support.pop_back();
        theta.pop_back();
        stalled = true;
        break;
      }
      for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += beta * (y[k] - theta[k]);
      theta[drop] = 0.0;
      std::vector<std::size_t> keep_s;
      std::vector<double> keep_t;
      for (std::size_t k = 0; k < theta.size(); ++k) {
        if (theta[k] > 0.0) {
          keep_s.push_back(support[k]);
          keep_t.push_back(theta[k]);
        }
      }
      support = std::move(keep_s);
      theta = std::move(keep_t);
      ++iterations;
      if (iterations >= options.max_iter) break;
    }
    z = combine(atoms, support, theta, n);
    if (stalled) break;
  }

  MinNormResult out;
  out.iterations = iterations;
  out.weights = Vec::Zero(static_cast<Eigen::Index>(G.size()));
  out.cone_coeffs = Vec::Zero(static_cast<Eigen::Index>(C.rays.size()));
  out.lineality_coeffs = Vec::Zero(static_cast<Eigen::Index>(C.lineality.size()));
  double wsum = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!atoms[support[k]].ray) wsum += theta[k];
  }
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Atom& at = atoms[support[k]];
    const auto idx = static_cast<Eigen::Index>(at.source);
    if (at.ray) {
      out.cone_coeffs[idx] = theta[k] / (scale * ray_len[at.source]);
    } else {
      out.weights[idx] = theta[k] / wsum;
    }
  }
  Vec v = Vec::Zero(n);
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (out.weights[static_cast<Eigen::Index>(i)] != 0.0) v += out.weights[static_cast<Eigen::Index>(i)] * G[i];
  }
  for (std::size_t j = 0; j < C.rays.size(); ++j) {
    if (out.cone_coeffs[static_cast<Eigen::Index>(j)] != 0.0) v += out.cone_coeffs[static_cast<Eigen::Index>(j)] * C.rays[j];
  }
  if (Q.cols() > 0) {
    Mat L(n, static_cast<Eigen::Index>(C.lineality.size()));
    for (std::size_t j = 0; j < C.lineality.size(); ++j) {
      L.col(static_cast<Eigen::Index>(j)) = C.lineality[j];
    }
    const Vec shift = -(Q * (Q.transpose() * v));
    out.lineality_coeffs = L.completeOrthogonalDecomposition().solve(shift);
    v += L * out.lineality_coeffs;
  }
  out.witness_point = v;
  out.distance = v.norm();

  if (out.distance > 0.0) {
    const Vec u = v / out.distance;
    bool dual_feasible = true;
    for (const auto& r : C.rays) {
      const double len = r.norm();
      if (len > 0.0 && u.dot(r) / len < -1e-12) dual_feasible = false;
    }
    for (const auto& l : C.lineality) {
      const double len = l.norm();
      if (len > 0.0 && std::abs(u.dot(l)) / len > 1e-12) dual_feasible = false;
    }
    if (dual_feasible) {
      double lb = std::numeric_limits<double>::infinity();
      for (const auto& g : G) lb = std::min(lb, u.dot(g));
      out.lower_bound = std::clamp(lb, 0.0, out.distance);
    }
  }
  out.gap = out.distance - out.lower_bound;
  out.converged = !capped && out.gap <= options.tol;
  return out;
}

MinNormResult min_norm_multi(const std::vector<std::vector<Vec>>& Gs,
                             const std::vector<ConeRep>& Cs,
                             const MinNormOptions& options) {
  if (Gs.empty() || Gs.size() != Cs.size()) {
    throw InputError("min_norm_multi needs aligned, nonempty case lists");
  }
  MinNormResult best;
  for (std::size_t k = 0; k < Gs.size(); ++k) {
    MinNormResult r = min_norm(Gs[k], Cs[k], options);
    if (k == 0 || r.distance < best.distance) {
      best = std::move(r);
      best.case_index = k;
    }
  }
  return best;
}

}  // namespace pareto_tame
