#include "pareto_tame/existence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pareto_tame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string kind_key(LimitKind kind) {
  switch (kind) {
    case LimitKind::kKTilde: return "ktilde";
    case LimitKind::kK: return "k";
    case LimitKind::kT: return "t";
  }
  return "?";
}

std::string condition_key(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kProper: return "proper";
    case ConditionKind::kPS: return "ps";
    case ConditionKind::kWeakPS: return "weak_ps";
    case ConditionKind::kMTame: return "m_tame";
  }
  return "?";
}

void check_inputs(const VectorObjective& f, const FeasibleSet& K, const IndexSet& I,
                  const Vec& x0) {
  if (static_cast<std::size_t>(x0.size()) != f.dimension() || K.dimension() != f.dimension())
    throw DimensionError("anchor, objective and feasible set dimensions differ");
  if (I.empty()) throw InputError("index set is empty");
  for (std::size_t i : I)
    if (i >= f.size()) throw InputError("index " + std::to_string(i + 1) + " out of range");
  if (!K.contains(x0)) throw InputError("anchor " + format_vec(x0) + " is not in K");
}

InclusionCheck judge_inclusion(LimitKind kind, const VectorObjective& f, const FeasibleSet& K,
                               const Vec& y0, const IndexSet& I,
                               const std::vector<ProbePath>& probes, const K0Estimate& k0,
                               bool sublevel_certified, const ExistenceOptions& options) {
  InclusionCheck out;
  out.kind = kind;
  std::vector<AcceptedLimit> limits;
  if (!probes.empty()) {
    try {
      limits = estimate_limit_set(kind, f, K, y0, I, probes, options.asymptotic).limits;
    } catch (const NoAdmissibleProbesError& e) {
      out.note = std::string("probes rejected: ") + e.what() + "; ";
    }
  }
  if (limits.empty()) {
    if (sublevel_certified) {
      out.verdict = Verdict::kHolds;
      out.unflagged = true;
      out.note += "no escaping witness and the sublevel set is certified bounded";
    } else {
      out.verdict = Verdict::kUnknown;
      out.note += "no witness found and no boundedness certificate";
    }
    return out;
  }
  bool unmatched = false;
  bool unmatched_flagged = false;
  bool any_flagged = false;
  for (const auto& lim : limits) {
    WitnessMatch w;
    w.limit = lim.value;
    w.path = lim.path;
    w.flagged = lim.flagged;
    w.distance = kInf;
    for (const auto& m : k0.members) {
      const double d = (m.value - lim.value).lpNorm<Eigen::Infinity>();
      if (d < w.distance) {
        w.distance = d;
        w.member_point = m.point;
      }
    }
    w.matched = w.distance <= options.match_tol;
    if (!w.matched) {
      w.member_point.reset();
      if (w.flagged) unmatched_flagged = true;
      else unmatched = true;
    }
    any_flagged = any_flagged || w.flagged;
    out.witnesses.push_back(std::move(w));
  }
  if (unmatched) {
    out.verdict = Verdict::kFails;
    out.note += "a witness limit has no K0 member within " + format_real(options.match_tol);
  } else if (unmatched_flagged) {
    out.verdict = Verdict::kUnknown;
    out.note += "an unmatched witness rests on inexact hulls";
  } else {
    out.verdict = Verdict::kHolds;
    out.unflagged = !any_flagged;
    out.note += "every witness limit is matched by a K0 member";
  }
  return out;
}

FrontSummary summarize_front(const VectorObjective& f, const FeasibleSet& K,
                             const Window& window) {
  const FrontResult front = front_oracle(f, K, window);
  FrontSummary s;
  s.sampled = front.points.size();
  for (std::size_t i = 0; i < front.points.size(); ++i) {
    if (front.weak[i]) {
      ++s.weak;
      if (!s.weak_example) s.weak_example = front.points[i];
    }
    if (front.strong[i]) ++s.strong;
  }
  return s;
}

/// Clauses of the inclusion theorem evaluated on one problem view.
ExistenceReport inclusion_report(const std::string& theorem, const std::string& view,
                                 const VectorObjective& f, const FeasibleSet& K,
                                 const IndexSet& I, const Vec& x0,
                                 const std::vector<ProbePath>& probes, const Window& window,
                                 const ExistenceOptions& options) {
  ExistenceReport r;
  r.theorem = theorem;
  r.view = view;
  r.I = I;
  r.x0 = x0;
  r.section = section_verdict(f, K, x0, I, options.schedule);
  r.sublevel = sublevel_bounded(f, K, x0, options.schedule);
  const Vec y0 = f.eval(x0);
  K0Estimate k0 = estimate_K0(f, K, y0, I, window, options.asymptotic);
  // A probe along which ν vanishes at every retained point is a curve of
  // critical points; its points join K0 as they stand.
  for (const auto& probe : probes) {
    const PathEvaluation ev = evaluate_path(f, K, y0, probe, options.asymptotic);
    if (!ev.admissible || !ev.within_level) continue;
    const bool critical = std::all_of(ev.rows.begin(), ev.rows.end(), [&](const TraceRow& row) {
      return !row.flagged && row.nu <= options.asymptotic.stationarity.tol;
    });
    if (!critical) continue;
    for (const auto& row : ev.rows) k0.members.push_back({project(row.fx, I), row.x, row.nu});
    r.k0_path_members += ev.rows.size();
  }
  r.k0_members = k0.members.size();
  r.k0_flagged = k0.flagged.size();
  r.k0_degenerate = k0.degenerate;
  for (LimitKind kind : {LimitKind::kKTilde, LimitKind::kK, LimitKind::kT})
    r.inclusions.push_back(
        judge_inclusion(kind, f, K, y0, I, probes, k0, r.sublevel.bounded, options));
  r.front = summarize_front(f, K, window);

  const InclusionCheck* decisive = nullptr;
  for (const auto& c : r.inclusions)
    if (c.verdict == Verdict::kHolds && c.unflagged) {
      decisive = &c;
      break;
    }
  if (r.section.kind != BoundedVerdict::kBounded) {
    r.conclusion_note = "weak section-boundedness not certified (" +
                        to_string(r.section.kind) + ")";
  } else if (decisive == nullptr) {
    r.conclusion_note = "no inclusion holds on exact evidence";
  } else {
    r.conclusion = Conclusion::kWeakSolutionExists;
    r.conclusion_note = "section bounded and " + to_string(decisive->kind) + " inclusion holds";
  }
  return r;
}

std::vector<ConditionResult> run_conditions(const VectorObjective& f, const FeasibleSet& K,
                                            const Vec& x0, const IndexSet& I,
                                            const std::vector<ProbePath>& probes,
                                            const ExistenceOptions& options) {
  std::vector<ConditionResult> out;
  for (ConditionKind kind : {ConditionKind::kProper, ConditionKind::kPS, ConditionKind::kWeakPS,
                             ConditionKind::kMTame})
    out.push_back(check_condition(kind, f, K, x0, I, probes, options.asymptotic,
                                  options.schedule));
  return out;
}

bool all_agree(const std::vector<ConditionResult>& cs) {
  for (const auto& c : cs)
    if (c.verdict != cs.front().verdict) return false;
  return true;
}

void require_section_bounded(ExistenceReport& r, const VectorObjective& f,
                             const FeasibleSet& K, const ExistenceOptions& options) {
  r.section = section_verdict(f, K, r.x0, r.I, options.schedule);
  if (r.section.kind != BoundedVerdict::kBounded)
    throw HypothesisError("f_I is not certified weakly section-bounded from below at " +
                          format_vec(r.x0) + " (" + to_string(r.section.kind) + ")");
  r.sublevel = sublevel_bounded(f, K, r.x0, options.schedule);
}

}  // namespace

std::string to_string(Conclusion c) {
  return c == Conclusion::kWeakSolutionExists ? "weak-solution-exists" : "inconclusive";
}

const InclusionCheck* ExistenceReport::inclusion(LimitKind kind) const {
  for (const auto& c : inclusions)
    if (c.kind == kind) return &c;
  return nullptr;
}

const ConditionResult* ExistenceReport::condition(ConditionKind kind) const {
  for (const auto& c : conditions)
    if (c.kind == kind) return &c;
  return nullptr;
}

std::string ExistenceReport::render_text() const {
  std::ostringstream os;
  os << "theorem " << theorem << " on " << view << "\n";
  os << "  I = {" << format_index_set(I) << "}, x0 = " << format_vec(x0) << "\n";
  os << "  section: " << to_string(section.kind);
  if (section.lower.size() > 0)
    os << " [" << format_vec(section.lower) << ", " << format_vec(section.upper) << "]";
  os << "\n";
  os << "  sublevel: " << (sublevel.bounded ? "bounded" : "not certified") << "\n";
  if (!inclusions.empty()) {
    os << "  K0: " << k0_members << " members (" << k0_path_members << " on critical probes), "
       << k0_flagged << " flagged, " << k0_degenerate << " degenerate corners skipped\n";
    for (const auto& c : inclusions) {
      os << "  " << to_string(c.kind) << " in K0: " << to_string(c.verdict)
         << (c.verdict == Verdict::kHolds && !c.unflagged ? " (flagged)" : "") << "; "
         << c.note << "\n";
      for (const auto& w : c.witnesses) {
        os << "    witness " << format_vec(w.limit) << " via '" << w.path << "': "
           << (w.matched ? "matched at " + format_vec(*w.member_point)
                         : "unmatched (distance " + format_real(w.distance) + ")")
           << (w.flagged ? ", flagged" : "") << "\n";
      }
    }
  }
  for (const auto& c : conditions) {
    os << "  " << to_string(c.kind) << ": " << to_string(c.verdict);
    if (c.witness) os << ", witness " << format_vec(*c.witness) << " via '" << c.witness_path << "'";
    os << "; " << c.note << "\n";
  }
  if (!conditions.empty()) os << "  conditions agree: " << (conditions_agree ? "yes" : "no") << "\n";
  if (front) {
    os << "  front oracle: " << front->weak << " weak, " << front->strong << " strong of "
       << front->sampled << " sampled";
    if (front->weak_example) os << ", e.g. " << format_vec(*front->weak_example);
    os << "\n";
  }
  os << "  conclusion: " << to_string(conclusion) << " (" << conclusion_note << ")\n";
  return os.str();
}

std::string ExistenceReport::render_records() const {
  std::ostringstream os;
  os << "theorem=" << theorem << "\n";
  os << "view=" << view << "\n";
  os << "index_set=" << format_index_set(I) << "\n";
  os << "anchor=" << format_vec(x0) << "\n";
  os << "section=" << to_string(section.kind) << "\n";
  os << "sublevel_bounded=" << (sublevel.bounded ? "true" : "false") << "\n";
  if (!inclusions.empty()) {
    os << "k0_members=" << k0_members << "\n";
    os << "k0_flagged=" << k0_flagged << "\n";
    for (const auto& c : inclusions) {
      const std::string key = "inclusion." + kind_key(c.kind);
      os << key << "=" << to_string(c.verdict) << "\n";
      os << key << ".unflagged=" << (c.unflagged ? "true" : "false") << "\n";
      os << key << ".witnesses=" << c.witnesses.size() << "\n";
    }
  }
  for (const auto& c : conditions) {
    const std::string key = "condition." + condition_key(c.kind);
    os << key << "=" << to_string(c.verdict) << "\n";
    if (c.witness) os << key << ".witness=" << format_vec(*c.witness) << "\n";
  }
  if (!conditions.empty()) os << "conditions_agree=" << (conditions_agree ? "true" : "false") << "\n";
  if (front) {
    os << "front.weak=" << front->weak << "\n";
    os << "front.strong=" << front->strong << "\n";
  }
  os << "conclusion=" << to_string(conclusion) << "\n";
  return os.str();
}

ExistenceReport check_theorem_5_1(const VectorObjective& f, const FeasibleSet& K,
                                  const IndexSet& I, const Vec& x0,
                                  const std::vector<ProbePath>& probes, const Window& window,
                                  const ExistenceOptions& options) {
  check_inputs(f, K, I, x0);
  return inclusion_report("5.1", "(f, K)", f, K, I, x0, probes, window, options);
}

ExistenceReport check_theorem_5_4(const VectorObjective& f, const FeasibleSet& K,
                                  const IndexSet& I, const Vec& x0,
                                  const std::vector<ProbePath>& probes, const Window& window,
                                  const ExistenceOptions& options) {
  check_inputs(f, K, I, x0);
  const SublevelSet S = sublevel(f, K, x0);
  const VectorObjective fI = f.restrict(I);
  ExistenceReport r = inclusion_report("5.4", "(f_I, K_x0)", fI, S.set, all_indices(I.size()),
                                       x0, probes, window, options);
  r.I = I;
  return r;
}

ExistenceReport equivalence_harness_4_4(const VectorObjective& f, const FeasibleSet& K,
                                        const IndexSet& I, const Vec& x0,
                                        const std::vector<ProbePath>& probes,
                                        const ExistenceOptions& options) {
  check_inputs(f, K, I, x0);
  ExistenceReport r;
  r.theorem = "4.4";
  r.view = "(f, K)";
  r.I = I;
  r.x0 = x0;
  require_section_bounded(r, f, K, options);
  r.conditions = run_conditions(f, K, x0, I, probes, options);
  r.conditions_agree = all_agree(r.conditions);
  r.conclusion_note = r.conditions_agree ? "the four conditions agree"
                                         : "the four conditions disagree";
  return r;
}

ExistenceReport corollary_5_3_sufficiency(const VectorObjective& f, const FeasibleSet& K,
                                          const IndexSet& I, const Vec& x0,
                                          const std::vector<ProbePath>& probes,
                                          const Window& window,
                                          const ExistenceOptions& options) {
  check_inputs(f, K, I, x0);
  ExistenceReport r;
  r.theorem = "5.3c";
  r.view = "(f, K)";
  r.I = I;
  r.x0 = x0;
  require_section_bounded(r, f, K, options);
  r.conditions = run_conditions(f, K, x0, I, probes, options);
  r.conditions_agree = all_agree(r.conditions);
  r.front = summarize_front(f, K, window);
  for (const auto& c : r.conditions)
    if (c.verdict == Verdict::kHolds) {
      r.conclusion = Conclusion::kWeakSolutionExists;
      r.conclusion_note = "section bounded and " + to_string(c.kind) + " holds";
      return r;
    }
  r.conclusion_note = "none of the four conditions is certified";
  return r;
}

}  // namespace pareto_tame
