// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "pareto_tame/asymptotics.hpp"
#include "pareto_tame/existence.hpp"
#include "pareto_tame/minnorm.hpp"
#include "pareto_tame/problem.hpp"
#include "pareto_tame/sections.hpp"
#include "pareto_tame/stationarity.hpp"
#include "pareto_tame/subdiff.hpp"

namespace pt = pareto_tame;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

std::string num(double v) { return pt::format_real(v); }

pt::Expr parse_n(const std::string& text, std::size_t n) {
  return pt::parse(text, pt::ParseOptions{.dimension = n});
}

// Rabier values along the escaping sequence and at the origin.
Outcome rabier_values() {
  Outcome o;
  const pt::Problem p = pt::fixture("ex_5_8");
  double worst = 0.0;
  for (double n : {1.0, 2.0, 5.0, 10.0}) {
    const double v = pt::nu_restricted(p.f, p.K, p.anchor, {0}, pt::make_vec({-1.0 / n, n})).value;
    const double err = std::abs(v - 1.0 / (2 * n * n));
    worst = std::max(worst, err);
    o.require(err <= 1e-8, "nu_restricted at n=" + num(n) + " is " + num(v));
  }
  const pt::NuValue z = pt::nu(p.f, p.K, pt::make_vec({0.0, 0.0}));
  o.require(z.value <= 1e-7, "nu(0,0) = " + num(z.value));
  o.require(!z.is_lower_bound_only, "nu(0,0) is not exact");
  o.summary = "max |nu - 1/(2n^2)| = " + num(worst) + ", nu(0,0) = " + num(z.value);
  return o;
}

// Limit-set witnesses on the periodic and quadrant examples.
Outcome limit_witnesses() {
  Outcome o;
  const double target = -std::sqrt(2.0) / 2;
  const pt::Problem a = pt::fixture("ex_5_2");
  for (auto kind : {pt::LimitKind::kKTilde, pt::LimitKind::kK}) {
    const auto e = pt::estimate_limit_set(kind, a.f, a.K, a.f.eval(a.anchor), {0}, a.probes);
    const bool hit = std::any_of(e.limits.begin(), e.limits.end(), [&](const pt::AcceptedLimit& l) {
      return !l.flagged && std::abs(l.value[0] - target) <= 1e-4;
    });
    o.require(hit, pt::to_string(kind) + " estimate lacks -sqrt(2)/2");
  }
  const pt::Problem b = pt::fixture("ex_5_3");
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const pt::Vec x = pt::make_vec({std::numbers::pi / 4 + 2 * k * std::numbers::pi,
                                    1.0 / (std::numbers::pi / 2 + 4 * k * std::numbers::pi)});
    const auto c = pt::tangency_member(b.f, b.K, x);
    worst = std::max(worst, c.residual);
    o.require(c.residual <= 1e-7, "tangency residual at k=" + std::to_string(k) + " is " + num(c.residual));
  }
  const auto t = pt::estimate_limit_set(pt::LimitKind::kT, b.f, b.K, b.f.eval(b.anchor), {0}, b.probes);
  const bool half = std::any_of(t.limits.begin(), t.limits.end(), [](const pt::AcceptedLimit& l) {
    return !l.flagged && std::abs(l.value[0] - 0.5) <= 1e-4;
  });
  o.require(half, "T estimate lacks 1/2");
  o.summary = "max tangency residual k<=10 = " + num(worst);
  return o;
}

// Grid minimum of the Rabier function over {|f1| <= 1e-3} for the parabola
// example, from analytic gradients and the orthant normal cone.
double parabola_nu_floor(const pt::Window& w) {
  double floor = kInf;
  for (std::size_t i = 0; i < w.node_count(); ++i) {
    const pt::Vec x = w.node(i);
    if (x[0] < 0 || x[1] < 0) continue;
    const double d = x[0] - x[1];
    if (std::abs(d * d + d) > 1e-3) continue;
    const pt::Vec g1 = pt::make_vec({2 * d + 1, -(2 * d + 1)});
    const pt::Vec g2 = pt::make_vec({-1.0, 0.0});
    std::vector<pt::Vec> rays;
    if (x[0] == 0.0) rays.push_back(pt::make_vec({-1.0, 0.0}));
    if (x[1] == 0.0) rays.push_back(pt::make_vec({0.0, -1.0}));
    floor = std::min(floor, oracle::enumerate_min_norm({g1, g2}, rays));
  }
  return floor;
}

// Inclusion asymmetry between the full and restricted forms.
Outcome inclusion_asymmetry() {
  Outcome o;
  const pt::Problem e8 = pt::fixture("ex_5_8");
  const auto full8 = pt::check_theorem_5_1(e8.f, e8.K, {0}, e8.anchor, e8.probes, *e8.window);
  const auto rest8 = pt::check_theorem_5_4(e8.f, e8.K, {0}, e8.anchor, e8.probes, *e8.window);
  for (auto k : {pt::LimitKind::kKTilde, pt::LimitKind::kK}) {
    o.require(full8.inclusion(k)->verdict == pt::Verdict::kHolds,
              "ex_5_8 full " + pt::to_string(k) + " inclusion is " + pt::to_string(full8.inclusion(k)->verdict));
    o.require(rest8.inclusion(k)->verdict == pt::Verdict::kFails,
              "ex_5_8 restricted " + pt::to_string(k) + " inclusion is " +
                  pt::to_string(rest8.inclusion(k)->verdict));
  }

  const pt::Problem e9 = pt::fixture("ex_5_9");
  const auto full9 = pt::check_theorem_5_1(e9.f, e9.K, {0}, e9.anchor, e9.probes, *e9.window);
  const auto rest9 = pt::check_theorem_5_4(e9.f, e9.K, {0}, e9.anchor, e9.probes, *e9.window);
  const auto* rt = rest9.inclusion(pt::LimitKind::kT);
  o.require(rt->verdict == pt::Verdict::kHolds, "ex_5_9 restricted T inclusion is " + pt::to_string(rt->verdict));
  // On the shifted diagonal x2 = x1 + 1/2 the first objective equals -1/4.
  const bool quarter = std::any_of(rt->witnesses.begin(), rt->witnesses.end(), [](const pt::WitnessMatch& w) {
    return w.matched && std::abs(w.limit[0] + 0.25) <= 1e-4;
  });
  o.require(quarter, "ex_5_9 restricted T witness -1/4 not matched");
  const auto* ft = full9.inclusion(pt::LimitKind::kT);
  o.require(ft->verdict == pt::Verdict::kFails, "ex_5_9 full T inclusion is " + pt::to_string(ft->verdict));
  const bool zero = std::any_of(ft->witnesses.begin(), ft->witnesses.end(), [](const pt::WitnessMatch& w) {
    return !w.matched && std::abs(w.limit[0]) <= 1e-4;
  });
  o.require(zero, "ex_5_9 full T witness 0 not reported unmatched");
  const double floor = parabola_nu_floor(*e9.window);
  o.require(floor >= 1e-3, "nu floor near f1 = 0 is " + num(floor));
  o.summary = "ex_5_9 nu floor over |f1|<=1e-3 = " + num(floor);
  return o;
}

// Random coercive bi-objective problems: quadratics plus abs terms.
pt::VectorObjective random_coercive(std::mt19937& rng) {
  std::uniform_real_distribution<double> a(0.5, 2.0);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_real_distribution<double> b(0.0, 1.0);
  std::vector<pt::Expr> comps;
  for (int i = 0; i < 2; ++i) {
    std::ostringstream s;
    s.precision(17);
    s << a(rng) << "*(x1 - (" << c(rng) << "))^2 + " << a(rng) << "*(x2 - (" << c(rng) << "))^2 + "
      << b(rng) << "*abs(x" << (i + 1) << " - (" << c(rng) << "))";
    comps.push_back(parse_n(s.str(), 2));
  }
  return pt::VectorObjective(2, comps);
}

std::vector<pt::ProbePath> radial_probes() {
  std::vector<pt::ProbePath> out;
  const pt::ParseOptions opt{.dimension = 1, .parameter = "t"};
  const std::vector<std::pair<const char*, const char*>> dirs = {
      {"t", "0*t"}, {"-t", "t"}, {"0.6*t", "-0.8*t"}, {"-t", "-t"}};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    pt::ProbePath p;
    p.label = "ray" + std::to_string(i + 1);
    p.coords = {pt::parse(dirs[i].first, opt), pt::parse(dirs[i].second, opt)};
    p.schedule = pt::ProbePath::pow2_schedule(0, 12);
    out.push_back(p);
  }
  return out;
}

// The four condition checkers agree.
Outcome condition_agreement() {
  Outcome o;
  std::mt19937 rng(4404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto probes = radial_probes();
  int holds = 0;
  for (int k = 0; k < 10; ++k) {
    const pt::VectorObjective f = random_coercive(rng);
    const pt::Vec x0 = pt::make_vec({u(rng), u(rng)});
    try {
      const auto r = pt::equivalence_harness_4_4(f, pt::FeasibleSet::whole(2), {0}, x0, probes);
      o.require(r.sublevel.bounded, "coercive #" + std::to_string(k) + " sublevel not certified");
      for (const auto& c : r.conditions) {
        o.require(c.verdict == pt::Verdict::kHolds,
                  "coercive #" + std::to_string(k) + " " + pt::to_string(c.kind) + " is " + pt::to_string(c.verdict));
        holds += c.verdict == pt::Verdict::kHolds;
      }
    } catch (const pt::Error& e) {
      o.require(false, "coercive #" + std::to_string(k) + ": " + e.what());
    }
  }
  std::string witnesses;
  for (const char* name : {"ex_5_2", "ex_5_8"}) {
    const pt::Problem p = pt::fixture(name);
    const auto r = pt::equivalence_harness_4_4(p.f, p.K, {0}, p.anchor, p.probes);
    std::optional<double> shared;
    for (const auto& c : r.conditions) {
      o.require(c.verdict == pt::Verdict::kFails,
                std::string(name) + " " + pt::to_string(c.kind) + " is " + pt::to_string(c.verdict));
      if (!c.witness) continue;
      if (!shared) shared = (*c.witness)[0];
      o.require(std::abs((*c.witness)[0] - *shared) <= 1e-4, std::string(name) + " witnesses differ");
    }
    witnesses += std::string(witnesses.empty() ? "" : ", ") + name + " witness " + (shared ? num(*shared) : "none");
  }
  o.summary = std::to_string(holds) + "/40 coercive verdicts hold; " + witnesses;
  return o;
}

// Random fixtures for the front properties.
struct RandomFixture {
  pt::VectorObjective f;
  pt::FeasibleSet K;
  pt::Window window;
};

RandomFixture random_fixture(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 2);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> shape(0, 4);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_real_distribution<double> a(0.2, 2.0);
  const std::size_t n = static_cast<std::size_t>(dim(rng));
  const int s = count(rng);
  std::vector<pt::Expr> comps;
  for (int i = 0; i < s; ++i) {
    std::ostringstream e;
    e.precision(17);
    auto var = [&](int j) { return "x" + std::to_string(n == 1 ? 1 : j); };
    switch (shape(rng)) {
      case 0:
        e << a(rng) << "*(" << var(1) << " - (" << c(rng) << "))^2 + " << a(rng) << "*(" << var(2) << " - ("
          << c(rng) << "))^2";
        break;
      case 1:
        e << c(rng) << "*" << var(1) << " + " << c(rng) << "*" << var(2);
        break;
      case 2:
        e << "abs(" << var(1) << " - (" << c(rng) << ")) + " << a(rng) << "*" << var(2) << "^2";
        break;
      case 3:
        e << "max(" << var(1) << ", " << c(rng) << "*" << var(2) << " + " << c(rng) << ")";
        break;
      default:
        e << "sin(" << a(rng) << "*" << var(1) << ") + " << c(rng) << "*" << var(2);
        break;
    }
    comps.push_back(parse_n(e.str(), n));
  }
  pt::Cell cell = pt::Cell::box(pt::Vec::Constant(static_cast<Eigen::Index>(n), -1.0),
                                pt::Vec::Constant(static_cast<Eigen::Index>(n), 1.0));
  if (std::bernoulli_distribution(0.5)(rng)) {
    pt::Vec dir(static_cast<Eigen::Index>(n));
    for (auto& v : dir) v = c(rng);
    cell.affine.push_back({dir, 0.3});
  }
  const std::size_t res = n == 1 ? 101 : 31;
  return {pt::VectorObjective(n, comps), pt::FeasibleSet(n, {cell}),
          pt::Window::uniform(pt::Vec::Constant(static_cast<Eigen::Index>(n), -1.0),
                              pt::Vec::Constant(static_cast<Eigen::Index>(n), 1.0), res)};
}

std::size_t index_of(const std::vector<pt::Vec>& pts, const pt::Vec& x) {
  const auto it = std::find(pts.begin(), pts.end(), x);
  return it == pts.end() ? pts.size() : static_cast<std::size_t>(it - pts.begin());
}

Outcome front_properties() {
  Outcome o;
  constexpr double tol = 1e-7;
  std::mt19937 rng(3131);
  std::size_t points = 0;
  std::size_t strong_total = 0;
  for (int k = 0; k < 25; ++k) {
    const RandomFixture fx = random_fixture(rng);
    const std::string tag = "fixture #" + std::to_string(k);
    const auto front = pt::front_oracle(fx.f, fx.K, fx.window, tol);
    const std::size_t N = front.points.size();
    points += N;
    o.require(N > 0, tag + " has no feasible nodes");
    if (N == 0) continue;

    // Pairwise brute force and strong ⊆ weak.
    const auto brute = oracle::brute_fronts(front.images, tol);
    o.require(brute.weak == front.weak && brute.strong == front.strong, tag + " front differs from brute force");
    for (std::size_t i = 0; i < N; ++i) {
      o.require(!front.strong[i] || front.weak[i], tag + " strong point outside weak front");
      strong_total += front.strong[i];
    }

    // Fronts of sublevel sets nest inside the full fronts.
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (int a = 0; a < 10; ++a) {
      const pt::Vec anchor = front.points[pick(rng)];
      const auto sub = pt::front_of(pt::sample_sublevel(fx.f, fx.K, anchor, fx.window, tol), fx.f, tol);
      for (std::size_t i = 0; i < sub.points.size(); ++i) {
        const std::size_t j = index_of(front.points, sub.points[i]);
        o.require(j < N, tag + " sublevel sample off the grid");
        if (j >= N) continue;
        o.require(!sub.weak[i] || front.weak[j], tag + " sublevel weak point not weak in K");
        o.require(!sub.strong[i] || front.strong[j], tag + " sublevel strong point not strong in K");
      }
    }

    // Strong front point <=> every objective is constant on its sublevel set.
    const pt::IndexSet all = pt::all_indices(fx.f.size());
    bool anchor_found = false;
    for (std::size_t i = 0; i < N; ++i) {
      const pt::Vec& x0 = front.points[i];
      const auto sample = pt::sample_sublevel(fx.f, fx.K, x0, fx.window, tol);
      const auto I = pt::index_set_of(fx.f, x0, sample, tol).indices;
      o.require(front.strong[i] == (I == all), tag + " strong/index-set mismatch at " + pt::format_vec(x0));
      if (!anchor_found && !I.empty()) {
        const auto local = pt::front_of(sample, fx.f.restrict(I), tol);
        const std::size_t j = index_of(local.points, x0);
        anchor_found = j < local.points.size() && local.strong[j];
      }
    }
    // Weak front nonempty <=> some anchor has I nonempty and is strong for f_I on its sublevel set.
    const bool weak_nonempty = std::find(front.weak.begin(), front.weak.end(), true) != front.weak.end();
    o.require(weak_nonempty == anchor_found, tag + " weak-front/anchor biconditional broken");
  }
  o.summary = "25 fixtures, " + std::to_string(points) + " grid points, " + std::to_string(strong_total) +
              " strong points";
  return o;
}

// Min-norm solver against the oracles.
Outcome minnorm_oracle() {
  Outcome o;
  std::mt19937 rng(6006);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<int> rays(0, 2);
  std::normal_distribution<double> n01;
  double worst_sample = 0.0;
  double worst_exact = 0.0;
  double worst_gap = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = dim(rng);
    std::vector<pt::Vec> G(static_cast<std::size_t>(count(rng)), pt::Vec(n));
    for (auto& g : G)
      for (auto& v : g) v = n01(rng) + 0.7;
    pt::ConeRep C;
    for (int j = rays(rng); j > 0; --j) {
      pt::Vec r(n);
      for (auto& v : r) v = n01(rng);
      C.rays.push_back(r);
    }
    const std::string tag = "instance #" + std::to_string(k);
    const auto res = pt::min_norm(G, C);
    const double sampled = oracle::sampled_min_norm(G, C.rays);
    const double exact = oracle::enumerate_min_norm(G, C.rays);
    worst_sample = std::max(worst_sample, std::abs(res.distance - sampled));
    worst_exact = std::max(worst_exact, std::abs(res.distance - exact));
    o.require(std::abs(res.distance - sampled) <= 1e-2, tag + " differs from sampling by " + num(res.distance - sampled));
    o.require(res.distance <= sampled + 1e-12, tag + " beaten by a sample");
    o.require(res.converged, tag + " did not converge");
    if (res.converged) {
      worst_gap = std::max(worst_gap, res.gap);
      o.require(res.gap <= 1e-9, tag + " dual gap " + num(res.gap));
    }

    // Scaling by a power of two is exact; a zero generator gives zero.
    std::vector<pt::Vec> H = G;
    for (auto& h : H) h *= 4.0;
    pt::ConeRep D = C;
    for (auto& r : D.rays) r *= 4.0;
    o.require(pt::min_norm(H, D).distance == 4.0 * res.distance, tag + " scaling not exact");
    std::vector<pt::Vec> Z = G;
    Z.push_back(pt::Vec::Zero(n));
    o.require(pt::min_norm(Z, C).distance == 0.0, tag + " zero generator not detected");
  }
  o.summary = "max |solver - sampled| = " + num(worst_sample) + ", max |solver - enumeration| = " +
              num(worst_exact) + ", max gap = " + num(worst_gap);
  return o;
}

double support(const std::vector<pt::Vec>& gens, const pt::Vec& d) {
  double best = -kInf;
  for (const auto& g : gens) best = std::max(best, g.dot(d));
  return best;
}

// Subdifferential generators against finite differences and directional derivatives.
Outcome subdiff_checks() {
  Outcome o;
  std::mt19937 rng(7007);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::normal_distribution<double> n01;
  std::size_t smooth_checks = 0;
  double worst_rel = 0.0;
  for (const auto& p : pt::fixtures()) {
    for (std::size_t i = 0; i < p.f.size(); ++i) {
      int checked = 0;
      for (int trial = 0; trial < 1000 && checked < 100; ++trial) {
        pt::Vec x(static_cast<Eigen::Index>(p.dimension));
        for (auto& v : x) v = u(rng);
        const auto h = pt::subdiff(p.f[i], x);
        if (h.generators.size() != 1) continue;
        const pt::Vec fd = oracle::fd_gradient(p.f[i], x);
        const double rel = (h.generators[0] - fd).norm() / std::max(1.0, fd.norm());
        worst_rel = std::max(worst_rel, rel);
        o.require(rel <= 1e-4, p.name + " f" + std::to_string(i + 1) + " gradient off by " + num(rel));
        ++checked;
      }
      o.require(checked == 100, p.name + " too few smooth points");
      smooth_checks += static_cast<std::size_t>(checked);
    }
  }

  struct Kink {
    std::string text;
    std::size_t n;
    pt::Vec x;
    bool exact;
  };
  const std::vector<Kink> kinks = {
      {"abs(x1)", 2, pt::make_vec({0.0, 1.5}), true},
      {"0.5*x1^2*x2 + x1 + abs(x1)", 2, pt::make_vec({0.0, 3.0}), true},
      {"x1^2 + x2^2 + abs(x1)", 2, pt::make_vec({0.0, -0.4}), true},
      {"(x1 - 1)^2 + x2^2 + abs(x2)", 2, pt::make_vec({0.2, 0.0}), true},
      {"(x1 - 1)^2 + abs(x1)", 1, pt::make_vec({0.0}), true},
      {"max(x1, x2)", 2, pt::make_vec({0.5, 0.5}), true},
      {"max(x1^2, x2, 1)", 2, pt::make_vec({1.0, 1.0}), true},
      {"max(sin(x1), cos(x1))", 1, pt::make_vec({std::numbers::pi / 4}), true},
      {"abs(x1) + abs(x2) + max(x1 - x2, 0)", 2, pt::make_vec({0.0, 0.0}), false},
      {"-min(x1, 2*x2)", 2, pt::make_vec({2.0, 1.0}), false},
  };
  std::size_t kink_checks = 0;
  double worst_dir = 0.0;
  for (const auto& k : kinks) {
    const pt::Expr e = parse_n(k.text, k.n);
    const auto h = pt::subdiff(e, k.x);
    o.require(h.exact == k.exact, k.text + " exactness flag is " + (h.exact ? "true" : "false"));
    o.require(h.generators.size() >= 2, k.text + " not treated as a kink");
    for (int j = 0; j < 100; ++j) {
      pt::Vec d(static_cast<Eigen::Index>(k.n));
      for (auto& v : d) v = n01(rng);
      d.normalize();
      const double err = std::abs(support(h.generators, d) - oracle::directional(e, k.x, d));
      worst_dir = std::max(worst_dir, err);
      o.require(err <= 1e-5, k.text + " support differs from directional derivative by " + num(err));
      ++kink_checks;
    }
  }
  o.summary = std::to_string(smooth_checks) + " gradient checks (max rel " + num(worst_rel) + "), " +
              std::to_string(kink_checks) + " kink directions (max err " + num(worst_dir) + ")";
  return o;
}

// Report output is byte-identical across runs.
Outcome determinism() {
  Outcome o;
  std::size_t bytes = 0;
  for (const auto& p : pt::fixtures()) {
    std::string outputs[2];
    for (auto& text : outputs) {
      std::ostringstream out;
      std::ostringstream err;
      const int code = pt::cli::run_cli({"report", "examples/" + p.name + ".prob"}, out, err);
      o.require(code == 0, p.name + " report exited " + std::to_string(code) + ": " + err.str());
      text = out.str();
    }
    o.require(outputs[0] == outputs[1], p.name + " report differs between runs");
    bytes += outputs[0].size();
  }
  o.summary = std::to_string(pt::fixtures().size()) + " fixtures, " + std::to_string(bytes) + " bytes per pass";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Rabier values on the escaping sequence", rabier_values},
      {"Limit-set witnesses", limit_witnesses},
      {"Inclusion asymmetry between full and restricted forms", inclusion_asymmetry},
      {"Agreement of the four condition checkers", condition_agreement},
      {"Front-oracle properties on random fixtures", front_properties},
      {"Min-norm solver against sampling oracle", minnorm_oracle},
      {"Subdifferential gradient and kink checks", subdiff_checks},
      {"Deterministic reports", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("unexpected error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " ("
              << o.summary << "; " << num(secs) << " s)\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
