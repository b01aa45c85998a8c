#ifndef PARETO_TAME_SECTIONS_HPP
#define PARETO_TAME_SECTIONS_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"
#include "pareto_tame/feasible.hpp"

namespace pareto_tame {

/// K_{x0} = {x in K : f_i(x) <= f_i(x0) for all i}.
struct SublevelSet {
  FeasibleSet set;
  Vec anchor;
  Vec level;  // f(x0)
};

/// Cells whose union is {x : e(x) <= c}. abs and max become conjunctions,
/// min becomes a union, nested kinks are split into their selection
/// branches. Throws BranchExplosionError past 64 cells.
std::vector<Cell> sublevel_cells(const Expr& e, double c, std::size_t dimension);

SublevelSet sublevel(const VectorObjective& f, const FeasibleSet& K, const Vec& x0);

/// Grid nodes y of K in the window with f(y) <= f(x0) + tol componentwise,
/// followed by x0 itself when it is not a node.
std::vector<Vec> sample_sublevel(const VectorObjective& f, const FeasibleSet& K,
                                 const Vec& x0, const Window& window, double tol);

enum class BoundedVerdict { kBounded, kUnboundedWitness, kUnknown };

std::string to_string(BoundedVerdict v);

/// Radius schedule R = 2^0 .. 2^max_exponent over origin-centred windows
/// (stretched to contain x0), each sampled with `resolution` nodes per axis.
struct RadiusSchedule {
  int max_exponent = 6;
  std::size_t resolution = 65;
  double tol = 1e-7;
};

struct SectionVerdict {
  BoundedVerdict kind = BoundedVerdict::kUnknown;
  Vec lower;  // running box of sampled f_I values
  Vec upper;
  std::vector<Vec> witnesses;  // points driving f_I down, for unbounded
  double radius = 0.0;         // last radius examined
  std::string note;
};

struct SectionSample {
  std::vector<Vec> points;
  std::vector<Vec> images;
  std::vector<Vec> projections;
  SectionVerdict verdict;
};

/// Boundedness of f_I over K_{x0} judged from how its sampled range grows
/// along the radius schedule.
SectionVerdict section_verdict(const VectorObjective& f, const FeasibleSet& K,
                               const Vec& x0, const IndexSet& I,
                               const RadiusSchedule& schedule = {});

SectionSample section_sample(const VectorObjective& f, const FeasibleSet& K,
                             const Vec& x0, const IndexSet& I, const Window& window,
                             const RadiusSchedule& schedule = {});

/// Sampled evidence that K_{x0} itself is bounded: the two outermost shells
/// of the radius schedule hold no sublevel points.
struct SublevelBound {
  bool bounded = false;
  double radius = 0.0;  // sup-norm radius containing every sampled point
  std::string note;
};

SublevelBound sublevel_bounded(const VectorObjective& f, const FeasibleSet& K,
                               const Vec& x0, const RadiusSchedule& schedule = {});

struct IndexSetResult {
  IndexSet indices;
  /// For each objective, a sampled point of K_{x0} where it differs from
  /// f_i(x0) by more than tol (absent for members of I).
  std::vector<std::optional<Vec>> witnesses;
  std::size_t sample_size = 0;
};

IndexSetResult index_set(const VectorObjective& f, const FeasibleSet& K, const Vec& x0,
                         const Window& window, double tol = 1e-7);

/// Same, over an already sampled K_{x0}.
IndexSetResult index_set_of(const VectorObjective& f, const Vec& x0,
                            const std::vector<Vec>& sample, double tol);

struct DescentStep {
  Vec point;
  Vec values;
  std::size_t objective = 0;  // index minimized to reach the next point
};

struct DescentResult {
  bool found = false;  // false: max_steps exhausted
  Vec x0;
  IndexSet indices;
  std::vector<DescentStep> trace;
};

/// Moves to the grid minimizer of f_j over the current sublevel set, j
/// cycling through the objectives, until some objective is constant there.
/// Values within tol of the minimum tie; the lexicographically smallest wins.
DescentResult descent_chain(const VectorObjective& f, const FeasibleSet& K,
                            const Vec& x_start, const Window& window,
                            std::size_t max_steps = 32, double tol = 1e-7);

struct FrontResult {
  std::vector<Vec> points;
  std::vector<Vec> images;
  std::vector<bool> weak;
  std::vector<bool> strong;

  std::vector<Vec> weak_points() const;
  std::vector<Vec> strong_points() const;
};

/// Pairwise domination over the given points: weak drops points some other
/// point beats in every coordinate, strong drops points beaten with <= in
/// every coordinate and < in one. Values within tol count as equal.
FrontResult front_of(std::vector<Vec> points, const VectorObjective& f, double tol = 1e-7);

FrontResult front_oracle(const VectorObjective& f, const FeasibleSet& K,
                         const Window& window, double tol = 1e-7);

/// One CSV row per point: x1..xn, f1..fs, then the named flag columns.
void write_points_csv(std::ostream& out, const std::vector<Vec>& points,
                      const std::vector<Vec>& images,
                      const std::vector<std::string>& flag_names,
                      const std::vector<std::vector<std::string>>& flags);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& text);

}  // namespace pareto_tame

#endif  // PARETO_TAME_SECTIONS_HPP
