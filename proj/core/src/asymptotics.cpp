#include "pareto_tame/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pareto_tame/parallel.hpp"

namespace pareto_tame {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double quantity(LimitKind kind, const TraceRow& row) {
  switch (kind) {
    case LimitKind::kKTilde:
      return row.nu;
    case LimitKind::kK:
      return row.scaled_nu;
    default:
      return row.gamma;
  }
}

bool below_level(const Vec& fx, const Vec& y0, double tol) {
  for (Eigen::Index i = 0; i < fx.size(); ++i) {
    if (fx[i] > y0[i] + tol) return false;
  }
  return true;
}

// Tail of the quantity tends to zero: final value under tol (1 + |f_I|)
// and the tail either nonincreasing or entirely under that threshold.
bool trends_to_zero(const std::vector<double>& q, double threshold) {
  for (double v : q) {
    if (std::isnan(v)) return false;
  }
  if (q.back() > threshold) return false;
  bool monotone = true;
  bool small = true;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k > 0 && q[k] > q[k - 1]) monotone = false;
    if (q[k] > threshold) small = false;
  }
  return monotone || small;
}

double spread(const std::vector<Vec>& values) {
  double worst = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      worst = std::max(worst, (values[a] - values[b]).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

Vec ProbePath::at(double t) const {
  Vec x(static_cast<Eigen::Index>(coords.size()));
  const Vec tv = Vec::Constant(1, t);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = eval(coords[i], tv);
  }
  return x;
}

std::vector<double> ProbePath::pow2_schedule(int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::vector<double> ProbePath::linear_schedule(double a, double b, std::size_t count) {
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return out;
}

std::string to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::kKTilde:
      return "K-tilde";
    case LimitKind::kK:
      return "K";
    default:
      return "T";
  }
}

std::string to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kProper:
      return "proper";
    case ConditionKind::kPS:
      return "PS";
    case ConditionKind::kWeakPS:
      return "weakPS";
    default:
      return "Mtame";
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    default:
      return "unknown";
  }
}

PathEvaluation evaluate_path(const VectorObjective& f, const FeasibleSet& K, const Vec& y0,
                             const ProbePath& path, const AsymptoticOptions& options) {
  if (path.coords.size() != f.dimension()) {
    throw DimensionError("probe '" + path.label + "' has " + std::to_string(path.coords.size()) +
                         " coordinates, problem has " + std::to_string(f.dimension()));
  }
  if (static_cast<std::size_t>(y0.size()) != f.size()) {
    throw DimensionError("level y0 has the wrong length");
  }
  PathEvaluation out;
  out.label = path.label;
  auto reject = [&](std::string why) {
    out.admissible = false;
    out.reason = std::move(why);
    out.rows.clear();
    return out;
  };
  if (path.schedule.size() < options.tail) {
    return reject("schedule has fewer than " + std::to_string(options.tail) + " points");
  }
  for (std::size_t k = 0; k < path.schedule.size(); ++k) {
    if (!(path.schedule[k] > 0.0) || (k > 0 && !(path.schedule[k] > path.schedule[k - 1]))) {
      return reject("schedule is not increasing and positive");
    }
  }
  std::vector<Vec> xs;
  for (double t : path.schedule) {
    xs.push_back(path.at(t));
    if (!xs.back().allFinite()) return reject("x(t) is not finite at t = " + format_real(t));
  }
  for (std::size_t k = 2; k < xs.size(); ++k) {
    if (xs[k].norm() < xs[k - 1].norm() * (1.0 - 1e-12)) {
      return reject("|x(t)| decreases at t = " + format_real(path.schedule[k]));
    }
  }
  if (xs.back().norm() < kEscapeNorm) {
    return reject("|x(t)| ends at " + format_real(xs.back().norm()) + " < " +
                  format_real(kEscapeNorm));
  }
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (K.contains(xs[k])) kept.push_back(k);
  }
  out.dropped = xs.size() - kept.size();
  if (2 * out.dropped > xs.size()) {
    return reject(std::to_string(out.dropped) + " of " + std::to_string(xs.size()) +
                  " points leave K");
  }
  if (kept.size() < options.tail) return reject("too few points in K");
  out.admissible = true;
  out.within_level = true;
  out.rows.resize(kept.size());
  parallel_for(kept.size(), [&](std::size_t r) {
    TraceRow& row = out.rows[r];
    row.t = path.schedule[kept[r]];
    row.x = xs[kept[r]];
    row.fx = f.eval(row.x);
    try {
      const NuValue v = nu(f, K, row.x, options.stationarity);
      row.nu = v.value;
      row.scaled_nu = row.x.norm() * v.value;
      row.flagged = v.is_lower_bound_only;
    } catch (const NumericalError&) {
      row.nu = row.scaled_nu = kNaN;
      row.flagged = true;
    }
    try {
      const TangencyCertificate c = tangency_member(f, K, row.x, options.stationarity);
      row.gamma = c.residual;
      row.flagged = row.flagged || c.is_lower_bound_only;
    } catch (const NumericalError&) {
      row.gamma = kNaN;
      row.flagged = true;
    }
  });
  for (const auto& row : out.rows) {
    if (!below_level(row.fx, y0, options.level_tol)) {
      out.within_level = false;
      out.reason = "f(x(t)) exceeds y0 at t = " + format_real(row.t);
      break;
    }
  }
  return out;
}

LimitSetEstimate estimate_limit_set(LimitKind kind, const VectorObjective& f,
                                    const FeasibleSet& K, const Vec& y0, const IndexSet& I,
                                    const std::vector<ProbePath>& paths,
                                    const AsymptoticOptions& options) {
  if (paths.empty()) throw NoAdmissibleProbesError("no probe paths given");
  if (I.empty()) throw InputError("limit sets need a nonempty index set");
  LimitSetEstimate out;
  out.kind = kind;
  std::string reasons;
  for (const auto& p : paths) {
    PathEvaluation ev = evaluate_path(f, K, y0, p, options);
    if (!ev.admissible) reasons += " [" + p.label + ": " + ev.reason + "]";
    if (ev.admissible && ev.within_level) {
      const std::size_t m = ev.rows.size();
      std::vector<double> q;
      std::vector<Vec> vals;
      bool flagged = false;
      for (std::size_t r = m - options.tail; r < m; ++r) {
        q.push_back(quantity(kind, ev.rows[r]));
        vals.push_back(project(ev.rows[r].fx, I));
        flagged = flagged || ev.rows[r].flagged;
      }
      const double threshold =
          options.stationarity.tol * (1.0 + vals.back().norm());
      if (!trends_to_zero(q, threshold)) {
        ev.reason = "defining quantity does not tend to 0 (final " + format_real(q.back()) + ")";
      } else if (spread(vals) > options.cauchy_tol) {
        ev.reason = "f_I is not Cauchy over the tail (spread " + format_real(spread(vals)) + ")";
      } else {
        out.limits.push_back({vals.back(), p.label, q.back(), flagged});
        ev.reason = "accepted";
      }
    }
    out.paths.push_back(std::move(ev));
  }
  const bool any = std::any_of(out.paths.begin(), out.paths.end(),
                               [](const PathEvaluation& e) { return e.admissible; });
  if (!any) throw NoAdmissibleProbesError("every probe path was rejected:" + reasons);
  return out;
}

K0Estimate estimate_K0(const VectorObjective& f, const FeasibleSet& K, const Vec& y0,
                       const IndexSet& I, const Window& window,
                       const AsymptoticOptions& options) {
  if (I.empty()) throw InputError("K0 needs a nonempty index set");
  const auto nodes = grid(K, window);
  enum Status : char { kSkip, kMember, kFlagged, kDegenerate };
  std::vector<char> status(nodes.size(), kSkip);
  std::vector<double> values(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    if (!below_level(f.eval(nodes[i]), y0, options.level_tol)) return;
    try {
      const NuValue v = nu(f, K, nodes[i], options.stationarity);
      values[i] = v.value;
      if (v.value <= options.stationarity.tol) {
        status[i] = v.is_lower_bound_only ? kFlagged : kMember;
      }
    } catch (const NumericalError&) {
      status[i] = kDegenerate;
    }
  });
  K0Estimate out;
  out.sampled = nodes.size();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (status[i] == kDegenerate) {
      ++out.degenerate;
      continue;
    }
    if (status[i] == kSkip) continue;
    K0Member m{project(f.eval(nodes[i]), I), nodes[i], values[i]};
    (status[i] == kMember ? out.members : out.flagged).push_back(std::move(m));
  }
  return out;
}

ConditionResult check_condition(ConditionKind kind, const VectorObjective& f,
                                const FeasibleSet& K, const Vec& x0, const IndexSet& I,
                                const std::vector<ProbePath>& paths,
                                const AsymptoticOptions& options,
                                const RadiusSchedule& schedule) {
  if (!K.contains(x0)) throw InputError("anchor " + format_vec(x0) + " is not in K");
  if (I.empty()) throw InputError("conditions need a nonempty index set");
  ConditionResult out;
  out.kind = kind;
  const Vec y0 = f.eval(x0);
  std::string flagged_note;
  if (!paths.empty()) {
    if (kind == ConditionKind::kProper) {
      bool any = false;
      for (const auto& p : paths) {
        const PathEvaluation ev = evaluate_path(f, K, y0, p, options);
        any = any || ev.admissible;
        if (!ev.admissible || !ev.within_level) continue;
        // Bounded along the path: the tail never exceeds the earlier range.
        const std::size_t m = ev.rows.size();
        double head = 0.0;
        double tail = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          const double v = project(ev.rows[r].fx, I).cwiseAbs().maxCoeff();
          double& slot = r + options.tail < m ? head : tail;
          slot = std::max(slot, v);
        }
        if (tail <= head + options.cauchy_tol) {
          out.verdict = Verdict::kFails;
          out.witness = project(ev.rows.back().fx, I);
          out.witness_path = p.label;
          out.note = "f_I stays bounded while |x| grows along '" + p.label + "'";
          return out;
        }
      }
      if (!any) throw NoAdmissibleProbesError("every probe path was rejected");
    } else {
      const LimitKind lk = kind == ConditionKind::kPS       ? LimitKind::kKTilde
                           : kind == ConditionKind::kWeakPS ? LimitKind::kK
                                                            : LimitKind::kT;
      const auto est = estimate_limit_set(lk, f, K, y0, I, paths, options);
      for (const auto& lim : est.limits) {
        if (lim.flagged) {
          flagged_note = "witness on '" + lim.path + "' rests on inexact hulls";
          continue;
        }
        out.verdict = Verdict::kFails;
        out.witness = lim.value;
        out.witness_path = lim.path;
        out.note = to_string(lk) + " limit set has witness " + format_vec(lim.value);
        return out;
      }
    }
  }
  const SublevelBound cert = sublevel_bounded(f, K, x0, schedule);
  if (cert.bounded) {
    out.verdict = Verdict::kHolds;
    out.note = "sublevel set certified bounded (" + cert.note + ")";
  } else {
    out.verdict = Verdict::kUnknown;
    out.note = flagged_note.empty() ? "no witness found and no boundedness certificate"
                                    : flagged_note;
  }
  return out;
}

EkelandResult ekeland_refine(const Expr& phi, const FeasibleSet& S, const Vec& x_start,
                             double epsilon, double lambda, const EkelandOptions& options) {
  if (!(epsilon > 0.0) || !(lambda > 0.0)) throw InputError("epsilon and lambda must be positive");
  if (!S.contains(x_start)) throw InputError("Ekeland start point is not in S");
  if (options.resolution < 2) throw InputError("Ekeland probe grid needs at least 2 nodes per axis");
  const Window w = Window::uniform(x_start.array() - lambda, x_start.array() + lambda,
                                   options.resolution);
  std::vector<Vec> cand{x_start};
  for (auto& z : grid(S, w)) {
    if ((z - x_start).norm() <= lambda && z != x_start) cand.push_back(std::move(z));
  }
  std::vector<double> val(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    val[i] = eval(phi, cand[i]);
    if (!std::isfinite(val[i])) throw InputError("phi is not finite on the probe grid");
  }
  const double slope = epsilon / lambda;
  EkelandResult out;
  out.phi_start = val[0];
  std::size_t cur = 0;
  for (out.iterations = 0; out.iterations < options.max_iter; ++out.iterations) {
    std::size_t best = cur;
    double best_psi = val[cur];
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const double psi = val[i] + slope * (cand[i] - cand[cur]).norm();
      if (psi < best_psi) {
        best = i;
        best_psi = psi;
      }
    }
    if (!(best_psi < val[cur] - 1e-12 * (1.0 + std::abs(val[cur])))) {
      out.local_min = true;
      break;
    }
    cur = best;
  }
  out.y = cand[cur];
  out.phi_y = val[cur];
  out.decrease = out.phi_y <= out.phi_start;
  out.in_ball = (out.y - x_start).norm() <= lambda;
  out.verified = out.decrease && out.in_ball && out.local_min;
  return out;
}

void write_trace_csv(std::ostream& out, const PathEvaluation& path) {
  const auto n = path.rows.empty() ? 0 : path.rows.front().x.size();
  const auto s = path.rows.empty() ? 0 : path.rows.front().fx.size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i + 1;
  for (Eigen::Index i = 0; i < s; ++i) out << ",f" << i + 1;
  out << ",nu,norm_x_nu,gamma,flagged\r\n";
  for (const auto& r : path.rows) {
    out << format_roundtrip(r.t);
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out << ',' << format_roundtrip(r.x[i]);
    for (Eigen::Index i = 0; i < r.fx.size(); ++i) out << ',' << format_roundtrip(r.fx[i]);
    out << ',' << format_roundtrip(r.nu) << ',' << format_roundtrip(r.scaled_nu) << ','
        << format_roundtrip(r.gamma) << ',' << (r.flagged ? "1" : "0") << "\r\n";
  }
}

}  // namespace pareto_tame
