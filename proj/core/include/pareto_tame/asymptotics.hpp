#ifndef PARETO_TAME_ASYMPTOTICS_HPP
#define PARETO_TAME_ASYMPTOTICS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"
#include "pareto_tame/feasible.hpp"
#include "pareto_tame/sections.hpp"
#include "pareto_tame/stationarity.hpp"

namespace pareto_tame {

/// A curve x(t) in R^n sampled on an increasing schedule of t values.
struct ProbePath {
  std::string label;
  std::vector<Expr> coords;  // expressions in t (variable 0)
  std::vector<double> schedule;

  Vec at(double t) const;

  /// t_k = 2^k for k = first..last.
  static std::vector<double> pow2_schedule(int first, int last);
  /// count evenly spaced values from a to b.
  static std::vector<double> linear_schedule(double a, double b, std::size_t count);
};

/// Minimum final norm for a path to count as escaping to infinity.
inline constexpr double kEscapeNorm = 1e3;

enum class LimitKind { kKTilde, kK, kT };

std::string to_string(LimitKind kind);

struct AsymptoticOptions {
  StationarityOptions stationarity;
  /// Cauchy window for accepting a limit of f_I.
  double cauchy_tol = 1e-4;
  /// Number of trailing schedule points used by trend and Cauchy tests.
  std::size_t tail = 5;
  /// Slack for f(x) <= y0 along a path.
  double level_tol = 1e-7;
};

struct TraceRow {
  double t = 0.0;
  Vec x;
  Vec fx;
  double nu = 0.0;
  double scaled_nu = 0.0;  // |x| nu
  double gamma = 0.0;      // tangency residual
  bool flagged = false;    // inexact hull, junction or degenerate corner
};

struct PathEvaluation {
  std::string label;
  bool admissible = false;
  std::string reason;  // why the path was rejected or not accepted
  std::size_t dropped = 0;
  bool within_level = false;  // f <= y0 at every retained point
  std::vector<TraceRow> rows;
};

struct AcceptedLimit {
  Vec value;  // limit of f_I
  std::string path;
  double final_quantity = 0.0;
  bool flagged = false;
};

struct LimitSetEstimate {
  LimitKind kind = LimitKind::kKTilde;
  std::vector<AcceptedLimit> limits;
  std::vector<PathEvaluation> paths;

  bool nonempty() const { return !limits.empty(); }
  std::string verdict() const { return nonempty() ? "nonempty-witness" : "no-witness-found"; }
};

/// Evaluates one path: drops infeasible points, computes f, ν, |x|ν and the
/// tangency residual at the retained points.
PathEvaluation evaluate_path(const VectorObjective& f, const FeasibleSet& K, const Vec& y0,
                             const ProbePath& path, const AsymptoticOptions& options = {});

/// Estimated limit set of the given kind at level y0 (entries may be +inf).
/// Throws NoAdmissibleProbesError when every path is rejected.
LimitSetEstimate estimate_limit_set(LimitKind kind, const VectorObjective& f,
                                    const FeasibleSet& K, const Vec& y0, const IndexSet& I,
                                    const std::vector<ProbePath>& paths,
                                    const AsymptoticOptions& options = {});

struct K0Member {
  Vec value;  // f_I at the point
  Vec point;
  double nu = 0.0;
};

struct K0Estimate {
  std::vector<K0Member> members;  // ν <= tol with exact hulls
  std::vector<K0Member> flagged;  // ν <= tol but only a lower bound
  std::size_t degenerate = 0;     // grid points skipped at degenerate corners
  std::size_t sampled = 0;
};

/// f_I values at grid points x of K with f(x) <= y0 and ν(x) <= tol.
K0Estimate estimate_K0(const VectorObjective& f, const FeasibleSet& K, const Vec& y0,
                       const IndexSet& I, const Window& window,
                       const AsymptoticOptions& options = {});

enum class ConditionKind { kProper, kPS, kWeakPS, kMTame };

std::string to_string(ConditionKind kind);

enum class Verdict { kHolds, kFails, kUnknown };

std::string to_string(Verdict v);

struct ConditionResult {
  ConditionKind kind = ConditionKind::kProper;
  Verdict verdict = Verdict::kUnknown;
  std::optional<Vec> witness;  // f_I limit (or bounded value for properness)
  std::string witness_path;
  std::string note;
};

/// Three-valued check of properness / Palais-Smale / weak Palais-Smale /
/// M-tameness of f with respect to I at the sublevel f(x0). Fails on a
/// probe witness, holds only with a sublevel boundedness certificate.
ConditionResult check_condition(ConditionKind kind, const VectorObjective& f,
                                const FeasibleSet& K, const Vec& x0, const IndexSet& I,
                                const std::vector<ProbePath>& paths,
                                const AsymptoticOptions& options = {},
                                const RadiusSchedule& schedule = {});

struct EkelandOptions {
  std::size_t max_iter = 100;
  std::size_t resolution = 41;  // nodes per axis of the probe grid
};

struct EkelandResult {
  Vec y;
  double phi_start = 0.0;
  double phi_y = 0.0;
  bool decrease = false;   // phi(y) <= phi(x_start)
  bool in_ball = false;    // |y - x_start| <= lambda
  bool local_min = false;  // y minimizes phi + (eps/lambda)|. - y| on the probe grid
  bool verified = false;
  std::size_t iterations = 0;
};

/// Grid realization of the Ekeland step: repeatedly moves to the minimizer
/// of phi(z) + (eps/lambda)|z - y| over S ∩ B(x_start, lambda) while that
/// strictly improves on phi(y).
EkelandResult ekeland_refine(const Expr& phi, const FeasibleSet& S, const Vec& x_start,
                             double epsilon, double lambda, const EkelandOptions& options = {});

/// CSV columns: t, x1..xn, f1..fs, nu, norm_x_nu, gamma, flagged.
void write_trace_csv(std::ostream& out, const PathEvaluation& path);

}  // namespace pareto_tame

#endif  // PARETO_TAME_ASYMPTOTICS_HPP
