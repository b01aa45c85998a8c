#ifndef PARETO_TAME_EXISTENCE_HPP
#define PARETO_TAME_EXISTENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pareto_tame/asymptotics.hpp"
#include "pareto_tame/common.hpp"
#include "pareto_tame/feasible.hpp"
#include "pareto_tame/sections.hpp"

namespace pareto_tame {

struct ExistenceOptions {
  AsymptoticOptions asymptotic;
  RadiusSchedule schedule;
  /// Distance in f_I space at which a witness limit counts as matched by a
  /// K0 member.
  double match_tol = 1e-4;
};

struct WitnessMatch {
  Vec limit;
  std::string path;
  bool flagged = false;
  bool matched = false;
  double distance = 0.0;  // to the nearest K0 member (inf if none)
  std::optional<Vec> member_point;
};

/// One inclusion "limit set ⊆ K0" judged at estimate level.
struct InclusionCheck {
  LimitKind kind = LimitKind::kKTilde;
  Verdict verdict = Verdict::kUnknown;
  bool unflagged = false;  // holds on exact evidence only
  std::vector<WitnessMatch> witnesses;
  std::string note;
};

enum class Conclusion { kWeakSolutionExists, kInconclusive };

std::string to_string(Conclusion c);

struct FrontSummary {
  std::size_t sampled = 0;
  std::size_t weak = 0;
  std::size_t strong = 0;
  std::optional<Vec> weak_example;
};

struct ExistenceReport {
  std::string theorem;
  std::string view;  // which problem the clauses were evaluated on
  IndexSet I;
  Vec x0;
  SectionVerdict section;
  SublevelBound sublevel;
  std::size_t k0_members = 0;
  std::size_t k0_path_members = 0;  // taken from probes that are critical throughout
  std::size_t k0_flagged = 0;
  std::size_t k0_degenerate = 0;
  std::vector<InclusionCheck> inclusions;
  std::vector<ConditionResult> conditions;
  bool conditions_agree = false;
  std::optional<FrontSummary> front;
  Conclusion conclusion = Conclusion::kInconclusive;
  std::string conclusion_note;

  const InclusionCheck* inclusion(LimitKind kind) const;
  const ConditionResult* condition(ConditionKind kind) const;

  std::string render_text() const;
  /// key=value lines for machine consumption.
  std::string render_records() const;
};

/// Weak section-boundedness plus the three inclusions K̃ ⊆ K0, K ⊆ K0,
/// T ⊆ K0 on (f, K), cross-checked against the grid front.
ExistenceReport check_theorem_5_1(const VectorObjective& f, const FeasibleSet& K,
                                  const IndexSet& I, const Vec& x0,
                                  const std::vector<ProbePath>& probes, const Window& window,
                                  const ExistenceOptions& options = {});

/// Same clauses for the restricted problem (f_I on K_{x0}).
ExistenceReport check_theorem_5_4(const VectorObjective& f, const FeasibleSet& K,
                                  const IndexSet& I, const Vec& x0,
                                  const std::vector<ProbePath>& probes, const Window& window,
                                  const ExistenceOptions& options = {});

/// Runs the four condition checkers under the weak section-boundedness
/// hypothesis; throws HypothesisError when boundedness is not certified.
ExistenceReport equivalence_harness_4_4(const VectorObjective& f, const FeasibleSet& K,
                                        const IndexSet& I, const Vec& x0,
                                        const std::vector<ProbePath>& probes,
                                        const ExistenceOptions& options = {});

/// Weak solution exists if any of the four conditions holds under weak
/// section-boundedness; cross-checked against the grid front.
ExistenceReport corollary_5_3_sufficiency(const VectorObjective& f, const FeasibleSet& K,
                                          const IndexSet& I, const Vec& x0,
                                          const std::vector<ProbePath>& probes,
                                          const Window& window,
                                          const ExistenceOptions& options = {});

}  // namespace pareto_tame

#endif  // PARETO_TAME_EXISTENCE_HPP
