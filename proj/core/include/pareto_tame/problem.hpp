#ifndef PARETO_TAME_PROBLEM_HPP
#define PARETO_TAME_PROBLEM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pareto_tame/asymptotics.hpp"
#include "pareto_tame/common.hpp"
#include "pareto_tame/expression.hpp"
#include "pareto_tame/feasible.hpp"

namespace pareto_tame {

/// A parsed problem file: objectives, feasible set, anchor and the optional
/// index set, probe paths, sampling window and tolerance.
struct Problem {
  std::string name;
  std::size_t dimension = 0;
  std::vector<std::string> objective_names;
  VectorObjective f;
  FeasibleSet K;
  Vec anchor;
  std::optional<IndexSet> index_set;
  std::vector<ProbePath> probes;
  std::optional<Window> window;
  double tol = 1e-7;

  const ProbePath* probe(const std::string& label) const;
};

/// Parses problem-file text. Errors name the offending line.
Problem parse_problem(std::string_view text, const std::string& name = "");

/// Reads and parses a problem file from disk.
Problem load_problem(const std::string& path);

struct FixtureText {
  std::string name;
  std::string text;
};

/// The bundled problem files, sorted by name.
const std::vector<FixtureText>& fixture_texts();

/// The bundled problem files, parsed.
std::vector<Problem> fixtures();

/// A bundled problem by name; throws InputError if there is none.
Problem fixture(const std::string& name);

/// "1,2" (one-based, commas) to a sorted zero-based index set.
IndexSet parse_index_set(std::string_view text, std::size_t objectives);

/// Comma separated reals (closed-form constants allowed).
std::vector<double> parse_reals(std::string_view text);

}  // namespace pareto_tame

#endif  // PARETO_TAME_PROBLEM_HPP
