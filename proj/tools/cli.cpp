#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "pareto_tame/asymptotics.hpp"
#include "pareto_tame/existence.hpp"
#include "pareto_tame/problem.hpp"
#include "pareto_tame/sections.hpp"
#include "pareto_tame/stationarity.hpp"

namespace pareto_tame::cli {

namespace {

const std::vector<std::string> kCommands = {"rabier",     "tangency",      "sections",
                                            "index-set",  "descent-chain", "front",
                                            "limit-sets", "check",         "equivalence",
                                            "report"};

constexpr std::size_t kDefaultResolution = 41;
constexpr double kDefaultHalfWidth = 2.0;

struct Flags {
  std::string command;
  std::string file;
  std::string out_dir;
  std::optional<double> tol;
  std::string window;
  std::string res;
  std::string at;
  std::string theorem = "5.1";
  std::string index_set;
  std::string probe;
};

/// Everything a command needs, resolved from the problem file and flags.
struct Context {
  Flags flags;
  Problem problem;
  IndexSet I;
  Window window;
  Vec at;
  double tol = 1e-7;
  std::vector<ProbePath> probes;

  StationarityOptions stationarity() const {
    StationarityOptions o;
    o.tol = tol;
    return o;
  }
  AsymptoticOptions asymptotic() const {
    AsymptoticOptions o;
    o.stationarity = stationarity();
    return o;
  }
  ExistenceOptions existence() const {
    ExistenceOptions o;
    o.asymptotic = asymptotic();
    o.schedule.tol = tol;
    return o;
  }
};

Problem read_problem(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return load_problem(path);
  // Fall back to a bundled problem with the same stem.
  const std::string stem = fs::path(path).stem().string();
  for (const auto& t : fixture_texts())
    if (t.name == stem) return parse_problem(t.text, t.name);
  throw InputError("cannot open problem file '" + path + "'");
}

Vec parse_point(const std::string& text, std::size_t n, const std::string& flag) {
  std::vector<double> v;
  try {
    v = parse_reals(text);
  } catch (const Error& e) {
    throw InputError(flag + ": " + e.what());
  }
  if (v.size() != n)
    throw DimensionError(flag + ": expected " + std::to_string(n) + " values, got " +
                         std::to_string(v.size()));
  return to_vec(v);
}

Window resolve_window(const Flags& flags, const Problem& p) {
  const std::size_t n = p.dimension;
  const auto N = static_cast<Eigen::Index>(n);
  Window w;
  if (!flags.window.empty()) {
    std::vector<double> v;
    try {
      v = parse_reals(flags.window);
    } catch (const Error& e) {
      throw InputError(std::string("--window: ") + e.what());
    }
    if (v.size() != 2 * n)
      throw DimensionError("--window: expected " + std::to_string(2 * n) +
                           " values (lower, upper per axis)");
    w.lower.resize(N);
    w.upper.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
      w.lower[i] = v[static_cast<std::size_t>(2 * i)];
      w.upper[i] = v[static_cast<std::size_t>(2 * i + 1)];
      if (!(w.lower[i] < w.upper[i]) || !std::isfinite(w.lower[i]) || !std::isfinite(w.upper[i]))
        throw InputError("--window: axis " + std::to_string(i + 1) +
                         " needs finite lower < upper");
    }
    w.resolution = p.window ? p.window->resolution : std::vector<std::size_t>(n, kDefaultResolution);
  } else if (p.window) {
    w = *p.window;
  } else {
    w = Window::uniform(Vec::Constant(N, -kDefaultHalfWidth), Vec::Constant(N, kDefaultHalfWidth),
                        kDefaultResolution);
  }
  if (!flags.res.empty()) {
    std::vector<double> r;
    try {
      r = parse_reals(flags.res);
    } catch (const Error& e) {
      throw InputError(std::string("--res: ") + e.what());
    }
    if (r.size() != 1 && r.size() != n) throw DimensionError("--res: expected 1 or n counts");
    w.resolution.clear();
    for (double v : r) {
      if (v < 2 || v != static_cast<double>(static_cast<long>(v)))
        throw InputError("--res: counts must be integers >= 2");
      w.resolution.push_back(static_cast<std::size_t>(v));
    }
    if (w.resolution.size() == 1) w.resolution.assign(n, w.resolution.front());
  }
  return w;
}

Context resolve(const Flags& flags) {
  Context c;
  c.flags = flags;
  c.problem = read_problem(flags.file);
  const Problem& p = c.problem;
  if (flags.tol) {
    if (!(*flags.tol > 0.0)) throw InputError("--tol must be positive");
    c.tol = *flags.tol;
  } else {
    c.tol = p.tol;
  }
  if (!flags.index_set.empty()) {
    try {
      c.I = parse_index_set(flags.index_set, p.f.size());
    } catch (const Error& e) {
      throw InputError(std::string("--index-set: ") + e.what());
    }
  } else if (p.index_set) {
    c.I = *p.index_set;
  } else {
    c.I = all_indices(p.f.size());
  }
  c.window = resolve_window(flags, p);
  c.at = flags.at.empty() ? p.anchor : parse_point(flags.at, p.dimension, "--at");
  if (flags.probe.empty()) {
    c.probes = p.probes;
  } else {
    const ProbePath* probe = p.probe(flags.probe);
    if (probe == nullptr) throw InputError("--probe: no probe labelled '" + flags.probe + "'");
    c.probes = {*probe};
  }
  return c;
}

void write_artifact(const Context& c, const std::string& name,
                    const std::function<void(std::ostream&)>& body) {
  if (c.flags.out_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(c.flags.out_dir);
  const fs::path path = fs::path(c.flags.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("--out: cannot write '" + path.string() + "'");
  body(f);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string safe_label(const std::string& label) {
  std::string s = label;
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s;
}

void cmd_rabier(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const NuValue v = nu(p.f, p.K, c.at, c.stationarity());
  out << "x = " << format_vec(c.at) << "\n";
  out << "nu = " << format_real(v.value) << "\n";
  out << "exact = " << yes_no(!v.is_lower_bound_only) << "\n";
  out << "verdict = " << to_string(classify(v.value, c.tol)) << "\n";
  if (!c.flags.index_set.empty()) {
    const NuValue r = nu_restricted(p.f, p.K, p.anchor, c.I, c.at, c.stationarity());
    out << "nu_restricted {" << format_index_set(c.I) << "} = " << format_real(r.value) << "\n";
    out << "restricted_exact = " << yes_no(!r.is_lower_bound_only) << "\n";
  }
}

void cmd_tangency(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const TangencyCertificate t = tangency_member(p.f, p.K, c.at, c.stationarity());
  out << "x = " << format_vec(c.at) << "\n";
  out << "member = " << yes_no(t.member) << "\n";
  out << "residual = " << format_real(t.residual) << "\n";
  out << "alpha = " << format_vec(t.alpha) << "\n";
  out << "mu = " << format_real(t.mu) << "\n";
  out << "exact = " << yes_no(!t.is_lower_bound_only) << "\n";
}

void cmd_sections(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  RadiusSchedule schedule;
  schedule.tol = c.tol;
  const SectionSample s = section_sample(p.f, p.K, p.anchor, c.I, c.window, schedule);
  const SectionVerdict& v = s.verdict;
  out << "I = {" << format_index_set(c.I) << "}\n";
  out << "section = " << to_string(v.kind) << "\n";
  if (v.lower.size() > 0)
    out << "f_I range = [" << format_vec(v.lower) << ", " << format_vec(v.upper)
        << "] up to radius " << format_real(v.radius) << "\n";
  if (!v.note.empty()) out << "note = " << v.note << "\n";
  for (const auto& w : v.witnesses) out << "witness = " << format_vec(w) << "\n";
  const SublevelBound b = sublevel_bounded(p.f, p.K, p.anchor, schedule);
  out << "sublevel = " << (b.bounded ? "bounded" : "not-certified") << " (" << b.note << ")\n";
  out << "window sample = " << s.points.size() << " points\n";
  write_artifact(c, "sections.csv", [&](std::ostream& f) {
    write_points_csv(f, s.points, s.images, {}, {});
  });
}

void cmd_index_set(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const IndexSetResult r = index_set(p.f, p.K, c.at, c.window, c.tol);
  out << "x0 = " << format_vec(c.at) << "\n";
  out << "I = {" << format_index_set(r.indices) << "}\n";
  out << "sample = " << r.sample_size << " points\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i)
    if (r.witnesses[i])
      out << "f" << i + 1 << " varies: witness " << format_vec(*r.witnesses[i]) << "\n";
}

void cmd_descent(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const DescentResult r = descent_chain(p.f, p.K, c.at, c.window, 32, c.tol);
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    const DescentStep& s = r.trace[k];
    out << "step " << k << ": x = " << format_vec(s.point) << ", f = " << format_vec(s.values)
        << ", next minimizes f" << s.objective + 1 << "\n";
  }
  if (r.found) {
    out << "x0 = " << format_vec(r.x0) << "\n";
    out << "I = {" << format_index_set(r.indices) << "}\n";
  } else {
    out << "no constant objective within the step budget\n";
  }
  write_artifact(c, "descent.csv", [&](std::ostream& f) {
    std::vector<Vec> pts;
    std::vector<Vec> imgs;
    std::vector<std::vector<std::string>> obj;
    for (const auto& s : r.trace) {
      pts.push_back(s.point);
      imgs.push_back(s.values);
      obj.push_back({std::to_string(s.objective + 1)});
    }
    write_points_csv(f, pts, imgs, {"next_objective"}, obj);
  });
}

void cmd_front(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const FrontResult r = front_oracle(p.f, p.K, c.window, c.tol);
  const auto weak = r.weak_points();
  const auto strong = r.strong_points();
  out << "sampled = " << r.points.size() << "\n";
  out << "weak = " << weak.size() << "\n";
  out << "strong = " << strong.size() << "\n";
  out << "strong front:\n";
  for (std::size_t i = 0; i < r.points.size(); ++i)
    if (r.strong[i])
      out << "  " << format_vec(r.points[i]) << " -> " << format_vec(r.images[i]) << "\n";
  write_artifact(c, "front.csv", [&](std::ostream& f) {
    std::vector<std::vector<std::string>> flags;
    for (std::size_t i = 0; i < r.points.size(); ++i)
      flags.push_back({r.weak[i] ? "1" : "0", r.strong[i] ? "1" : "0"});
    write_points_csv(f, r.points, r.images, {"weak", "strong"}, flags);
  });
}

void cmd_limit_sets(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  const Vec y0 = p.f.eval(p.anchor);
  out << "I = {" << format_index_set(c.I) << "}, y0 = " << format_vec(y0) << "\n";
  for (LimitKind kind : {LimitKind::kKTilde, LimitKind::kK, LimitKind::kT}) {
    const LimitSetEstimate e = estimate_limit_set(kind, p.f, p.K, y0, c.I, c.probes, c.asymptotic());
    out << to_string(kind) << ": " << e.verdict() << "\n";
    for (const auto& l : e.limits)
      out << "  witness " << format_vec(l.value) << " via '" << l.path << "' (final "
          << format_real(l.final_quantity) << (l.flagged ? ", flagged" : "") << ")\n";
    for (const auto& pe : e.paths)
      out << "  path '" << pe.label << "': " << (pe.reason.empty() ? "-" : pe.reason) << "\n";
  }
  for (const auto& probe : c.probes) {
    write_artifact(c, "trace_" + safe_label(probe.label) + ".csv", [&](std::ostream& f) {
      write_trace_csv(f, evaluate_path(p.f, p.K, y0, probe, c.asymptotic()));
    });
  }
}

ExistenceReport run_theorem(const Context& c, const std::string& theorem) {
  const Problem& p = c.problem;
  const ExistenceOptions o = c.existence();
  if (theorem == "5.1") return check_theorem_5_1(p.f, p.K, c.I, p.anchor, c.probes, c.window, o);
  if (theorem == "5.4") return check_theorem_5_4(p.f, p.K, c.I, p.anchor, c.probes, c.window, o);
  if (theorem == "5.3c")
    return corollary_5_3_sufficiency(p.f, p.K, c.I, p.anchor, c.probes, c.window, o);
  if (theorem == "4.4") return equivalence_harness_4_4(p.f, p.K, c.I, p.anchor, c.probes, o);
  throw InputError("--theorem: expected one of 4.4, 5.1, 5.4, 5.3c");
}

void emit_report(const Context& c, const ExistenceReport& r, std::ostream& out) {
  out << r.render_text();
  write_artifact(c, "check_" + r.theorem + ".txt",
                 [&](std::ostream& f) { f << r.render_records(); });
}

void cmd_check(const Context& c, std::ostream& out) {
  emit_report(c, run_theorem(c, c.flags.theorem), out);
}

void cmd_equivalence(const Context& c, std::ostream& out) {
  emit_report(c, run_theorem(c, "4.4"), out);
}

/// Runs one report section, printing library errors in place.
void section(std::ostream& out, const std::string& title, const std::function<void()>& body) {
  out << "== " << title << " ==\n";
  try {
    body();
  } catch (const Error& e) {
    out << "not available: " << e.what() << "\n";
  }
  out << "\n";
}

void cmd_report(const Context& c, std::ostream& out) {
  const Problem& p = c.problem;
  section(out, "problem", [&] {
    out << "name = " << p.name << "\n";
    out << "dimension = " << p.dimension << "\n";
    for (std::size_t i = 0; i < p.f.size(); ++i)
      out << p.objective_names[i] << " = " << print(p.f[i]) << "\n";
    out << "cells = " << p.K.cells().size() << (p.K.periodic() ? " plus a periodic family" : "")
        << "\n";
    out << "anchor = " << format_vec(p.anchor) << "\n";
    out << "f(anchor) = " << format_vec(p.f.eval(p.anchor)) << "\n";
    out << "I = {" << format_index_set(c.I) << "}\n";
    out << "probes = " << p.probes.size() << "\n";
  });
  section(out, "stationarity at anchor", [&] {
    cmd_rabier(c, out);
    const TangencyCertificate t = tangency_member(p.f, p.K, c.at, c.stationarity());
    out << "tangency member = " << yes_no(t.member) << ", residual "
        << format_real(t.residual) << "\n";
  });
  section(out, "index set", [&] { cmd_index_set(c, out); });
  section(out, "sections", [&] { cmd_sections(c, out); });
  section(out, "descent chain", [&] { cmd_descent(c, out); });
  section(out, "front", [&] {
    const FrontResult r = front_oracle(p.f, p.K, c.window, c.tol);
    out << "sampled = " << r.points.size() << ", weak = " << r.weak_points().size()
        << ", strong = " << r.strong_points().size() << "\n";
  });
  if (!c.probes.empty()) section(out, "limit sets", [&] { cmd_limit_sets(c, out); });
  for (const std::string th : {"5.1", "5.4", "4.4", "5.3c"})
    section(out, "theorem " + th, [&] { out << run_theorem(c, th).render_text(); });
}

int dispatch(const Flags& flags, std::ostream& out) {
  const Context c = resolve(flags);
  const std::string& cmd = flags.command;
  if (cmd == "rabier") cmd_rabier(c, out);
  else if (cmd == "tangency") cmd_tangency(c, out);
  else if (cmd == "sections") cmd_sections(c, out);
  else if (cmd == "index-set") cmd_index_set(c, out);
  else if (cmd == "descent-chain") cmd_descent(c, out);
  else if (cmd == "front") cmd_front(c, out);
  else if (cmd == "limit-sets") cmd_limit_sets(c, out);
  else if (cmd == "check") cmd_check(c, out);
  else if (cmd == "equivalence") cmd_equivalence(c, out);
  else cmd_report(c, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Existence diagnostics for nonsmooth constrained vector optimization",
               "pareto_tame"};
  app.add_option("command", flags.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("problem", flags.file, "Problem file")->required();
  app.add_option("--out", flags.out_dir, "Directory for CSV artifacts");
  app.add_option("--tol", flags.tol, "Zero tolerance");
  app.add_option("--window", flags.window, "Sampling window lo1,hi1,...,lon,hin");
  app.add_option("--res", flags.res, "Nodes per axis, one count or one per axis");
  app.add_option("--at", flags.at, "Point x1,...,xn");
  app.add_option("--theorem", flags.theorem, "Theorem checked by 'check'")
      ->check(CLI::IsMember({"4.4", "5.1", "5.4", "5.3c"}));
  app.add_option("--index-set", flags.index_set, "One-based objective indices");
  app.add_option("--probe", flags.probe, "Restrict to one probe path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return dispatch(flags, out);
  } catch (const DegenerateCornerError& e) {
    err << "error: " << e.what();
    for (const auto& label : e.active_set()) err << "\n  active: " << label;
    err << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace pareto_tame::cli
