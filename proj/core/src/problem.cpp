#include "pareto_tame/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace pareto_tame {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// Splits at `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw InputError("line " + std::to_string(line) + ": " + message);
}

enum class Section { kTop, kObjectives, kCell, kPeriodic, kPeriodicCell, kProbe, kWindow };

struct CellDraft {
  std::optional<std::vector<double>> lower;
  std::optional<std::vector<double>> upper;
  std::vector<AffineConstraint> affine;
  std::vector<Expr> smooth;
};

struct ProbeDraft {
  std::string label;
  std::size_t line = 0;
  std::vector<Expr> coords;
  std::vector<double> schedule;
};

class Reader {
 public:
  explicit Reader(std::string name) { problem_.name = std::move(name); }

  Problem run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (body.empty()) continue;
      if (body.front() == '[') {
        header(line, body);
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      entry(line, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    return finish(line);
  }

 private:
  void header(std::size_t line, const std::string& body) {
    if (body.back() != ']') fail(line, "unterminated section header");
    const std::string inner = trim(body.substr(1, body.size() - 2));
    if (inner == "objectives") {
      section_ = Section::kObjectives;
    } else if (inner == "cell") {
      need_dimension(line);
      section_ = Section::kCell;
      cells_.emplace_back();
    } else if (inner == "periodic") {
      need_dimension(line);
      if (periodic_seen_) fail(line, "duplicate [periodic] section");
      periodic_seen_ = true;
      section_ = Section::kPeriodic;
    } else if (inner == "periodic-cell") {
      need_dimension(line);
      section_ = Section::kPeriodicCell;
      periodic_cells_.emplace_back();
    } else if (inner.rfind("probe", 0) == 0) {
      need_dimension(line);
      const std::string label = trim(inner.substr(5));
      if (label.empty()) fail(line, "probe section needs a label");
      for (const auto& p : probes_)
        if (p.label == label) fail(line, "duplicate probe label '" + label + "'");
      section_ = Section::kProbe;
      probes_.push_back({label, line, {}, {}});
    } else if (inner == "window") {
      need_dimension(line);
      section_ = Section::kWindow;
      window_seen_ = true;
    } else {
      fail(line, "unknown section [" + inner + "]");
    }
  }

  void need_dimension(std::size_t line) {
    if (n_ == 0) fail(line, "dimension must be given before this section");
  }

  std::vector<double> reals(std::size_t line, const std::string& key, const std::string& value,
                            std::size_t expected) {
    std::vector<double> v;
    try {
      v = parse_reals(value);
    } catch (const Error& e) {
      fail(line, key + ": " + e.what());
    }
    if (expected != 0 && v.size() != expected)
      fail(line, key + ": expected " + std::to_string(expected) + " values, got " +
                     std::to_string(v.size()));
    return v;
  }

  Expr expression(std::size_t line, const std::string& key, const std::string& value,
                  const ParseOptions& options) {
    try {
      return parse(value, options);
    } catch (const Error& e) {
      fail(line, key + ": " + e.what());
    }
  }

  void entry(std::size_t line, const std::string& key, const std::string& value) {
    switch (section_) {
      case Section::kTop: top(line, key, value); break;
      case Section::kObjectives: objective(line, key, value); break;
      case Section::kCell: cell(line, key, value, cells_.back()); break;
      case Section::kPeriodicCell: cell(line, key, value, periodic_cells_.back()); break;
      case Section::kPeriodic: periodic(line, key, value); break;
      case Section::kProbe: probe(line, key, value); break;
      case Section::kWindow: window(line, key, value); break;
    }
  }

  void top(std::size_t line, const std::string& key, const std::string& value) {
    if (key == "dimension") {
      if (n_ != 0) fail(line, "duplicate dimension");
      long d = 0;
      try {
        std::size_t used = 0;
        d = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        fail(line, "dimension: not an integer");
      }
      if (d <= 0) fail(line, "dimension must be positive");
      n_ = static_cast<std::size_t>(d);
    } else if (key == "anchor") {
      need_dimension(line);
      anchor_ = to_vec(reals(line, key, value, n_));
      anchor_line_ = line;
    } else if (key == "index_set") {
      index_text_ = value;
      index_line_ = line;
    } else if (key == "tol") {
      const double t = reals(line, key, value, 1).front();
      if (!(t > 0.0)) fail(line, "tol must be positive");
      problem_.tol = t;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  void objective(std::size_t line, const std::string& key, const std::string& value) {
    need_dimension(line);
    for (const auto& name : problem_.objective_names)
      if (name == key) fail(line, "duplicate objective '" + key + "'");
    problem_.objective_names.push_back(key);
    objectives_.push_back(expression(line, key, value, ParseOptions{n_, "", false}));
  }

  void cell(std::size_t line, const std::string& key, const std::string& value, CellDraft& c) {
    if (key == "lower") {
      c.lower = reals(line, key, value, n_);
    } else if (key == "upper") {
      c.upper = reals(line, key, value, n_);
    } else if (key == "affine") {
      const auto le = value.find("<=");
      if (le == std::string::npos) fail(line, "affine: expected 'a1, ..., an <= b'");
      AffineConstraint a;
      a.a = to_vec(reals(line, key, value.substr(0, le), n_));
      a.b = reals(line, key, value.substr(le + 2), 1).front();
      if (a.a.norm() == 0.0) fail(line, "affine: zero normal");
      c.affine.push_back(a);
    } else if (key == "smooth") {
      c.smooth.push_back(expression(line, key, value, ParseOptions{n_, "", false}));
    } else {
      fail(line, "unknown cell key '" + key + "'");
    }
  }

  void periodic(std::size_t line, const std::string& key, const std::string& value) {
    if (key == "axis") {
      const double a = reals(line, key, value, 1).front();
      if (a < 1 || a > static_cast<double>(n_) || a != static_cast<long>(a))
        fail(line, "axis must be an integer in 1.." + std::to_string(n_));
      family_.axis = static_cast<std::size_t>(a) - 1;
    } else if (key == "period") {
      family_.period = reals(line, key, value, 1).front();
      if (!(family_.period > 0.0) || !std::isfinite(family_.period))
        fail(line, "period must be positive and finite");
    } else if (key == "k_min" || key == "k_max") {
      const double k = reals(line, key, value, 1).front();
      if (k != static_cast<long>(k)) fail(line, key + " must be an integer");
      (key == "k_min" ? family_.k_min : family_.k_max) = static_cast<long>(k);
    } else {
      fail(line, "unknown periodic key '" + key + "'");
    }
  }

  void probe(std::size_t line, const std::string& key, const std::string& value) {
    ProbeDraft& p = probes_.back();
    if (key == "x") {
      const auto parts = split_top(value, ';');
      if (parts.size() != n_)
        fail(line, "x: expected " + std::to_string(n_) + " coordinates separated by ';'");
      p.coords.clear();
      for (const auto& part : parts)
        p.coords.push_back(expression(line, key, part, ParseOptions{1, "t", true}));
    } else if (key == "schedule") {
      std::istringstream ss(value);
      std::string kind;
      ss >> kind;
      std::string rest;
      std::getline(ss, rest);
      std::vector<std::string> words;
      std::istringstream ws(rest);
      for (std::string w; ws >> w;) words.push_back(w);
      try {
        if (kind == "pow2") {
          if (words.size() != 2) fail(line, "schedule: pow2 needs two exponents");
          p.schedule = ProbePath::pow2_schedule(std::stoi(words[0]), std::stoi(words[1]));
        } else if (kind == "linear") {
          if (words.size() != 3) fail(line, "schedule: linear needs start, end, count");
          p.schedule = ProbePath::linear_schedule(parse_real(words[0]), parse_real(words[1]),
                                                  static_cast<std::size_t>(std::stoul(words[2])));
        } else if (kind == "list") {
          p.schedule = parse_reals(trim(rest));
        } else {
          fail(line, "schedule: expected pow2, linear or list");
        }
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        fail(line, std::string("schedule: ") + e.what());
      }
    } else {
      fail(line, "unknown probe key '" + key + "'");
    }
  }

  void window(std::size_t line, const std::string& key, const std::string& value) {
    if (key == "lower") {
      window_lower_ = reals(line, key, value, n_);
    } else if (key == "upper") {
      window_upper_ = reals(line, key, value, n_);
    } else if (key == "res") {
      const auto r = reals(line, key, value, 0);
      if (r.size() != 1 && r.size() != n_) fail(line, "res: expected 1 or n counts");
      window_res_.clear();
      for (double v : r) {
        if (v < 2 || v != static_cast<long>(v)) fail(line, "res: counts must be integers >= 2");
        window_res_.push_back(static_cast<std::size_t>(v));
      }
      if (window_res_.size() == 1) window_res_.assign(n_, window_res_.front());
    } else {
      fail(line, "unknown window key '" + key + "'");
    }
  }

  Cell build_cell(const CellDraft& d) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Cell c = Cell::whole(n_);
    c.lower = d.lower ? to_vec(*d.lower) : Vec::Constant(n_, -inf);
    c.upper = d.upper ? to_vec(*d.upper) : Vec::Constant(n_, inf);
    c.affine = d.affine;
    c.smooth = d.smooth;
    return c;
  }

  Problem finish(std::size_t last_line) {
    if (n_ == 0) fail(last_line, "missing dimension");
    if (objectives_.empty()) fail(last_line, "no objectives given");
    if (anchor_line_ == 0) fail(last_line, "missing anchor");
    problem_.dimension = n_;
    problem_.f = VectorObjective(n_, objectives_);
    problem_.anchor = anchor_;

    std::vector<Cell> cells;
    for (const auto& d : cells_) {
      Cell c = build_cell(d);
      for (std::size_t i = 0; i < n_; ++i)
        if (c.lower(i) > c.upper(i)) fail(last_line, "cell with lower > upper");
      cells.push_back(std::move(c));
    }
    std::optional<PeriodicFamily> fam;
    if (periodic_seen_) {
      if (periodic_cells_.empty()) fail(last_line, "[periodic] without [periodic-cell]");
      if (family_.period <= 0.0) fail(last_line, "[periodic] needs a period");
      if (family_.k_min > family_.k_max) fail(last_line, "[periodic] k_min > k_max");
      for (const auto& d : periodic_cells_) family_.base_cells.push_back(build_cell(d));
      fam = family_;
    } else if (!periodic_cells_.empty()) {
      fail(last_line, "[periodic-cell] without [periodic]");
    }
    if (cells.empty() && !fam) cells.push_back(Cell::whole(n_));
    try {
      problem_.K = FeasibleSet(n_, std::move(cells), fam);
    } catch (const Error& e) {
      fail(last_line, std::string("feasible set: ") + e.what());
    }
    if (!problem_.K.contains(anchor_))
      fail(anchor_line_, "anchor " + format_vec(anchor_) + " is not feasible");

    if (index_line_ != 0) {
      try {
        problem_.index_set = parse_index_set(index_text_, objectives_.size());
      } catch (const Error& e) {
        fail(index_line_, std::string("index_set: ") + e.what());
      }
    }
    for (auto& d : probes_) {
      if (d.coords.empty()) fail(d.line, "probe '" + d.label + "' has no x");
      if (d.schedule.empty()) fail(d.line, "probe '" + d.label + "' has no schedule");
      problem_.probes.push_back({d.label, d.coords, d.schedule});
    }
    if (window_seen_) {
      if (window_lower_.empty() || window_upper_.empty())
        fail(last_line, "[window] needs lower and upper");
      Window w;
      w.lower = to_vec(window_lower_);
      w.upper = to_vec(window_upper_);
      w.resolution = window_res_.empty() ? std::vector<std::size_t>(n_, 41) : window_res_;
      for (std::size_t i = 0; i < n_; ++i)
        if (!(w.lower(i) < w.upper(i)) || !std::isfinite(w.lower(i)) ||
            !std::isfinite(w.upper(i)))
          fail(last_line, "[window] bounds must be finite with lower < upper");
      problem_.window = w;
    }
    return problem_;
  }

  Problem problem_;
  Section section_ = Section::kTop;
  std::size_t n_ = 0;
  std::vector<Expr> objectives_;
  Vec anchor_;
  std::size_t anchor_line_ = 0;
  std::string index_text_;
  std::size_t index_line_ = 0;
  std::vector<CellDraft> cells_;
  bool periodic_seen_ = false;
  PeriodicFamily family_;
  std::vector<CellDraft> periodic_cells_;
  std::vector<ProbeDraft> probes_;
  bool window_seen_ = false;
  std::vector<double> window_lower_;
  std::vector<double> window_upper_;
  std::vector<std::size_t> window_res_;
};

}  // namespace

const ProbePath* Problem::probe(const std::string& label) const {
  for (const auto& p : probes)
    if (p.label == label) return &p;
  return nullptr;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split_top(text, ',')) out.push_back(parse_real(part));
  return out;
}

IndexSet parse_index_set(std::string_view text, std::size_t objectives) {
  IndexSet out;
  for (const auto& part : split_top(text, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      throw InputError("index '" + part + "' is not an integer");
    }
    if (used != part.size()) throw InputError("index '" + part + "' is not an integer");
    if (v < 1 || static_cast<std::size_t>(v) > objectives)
      throw InputError("index " + part + " out of range 1.." + std::to_string(objectives));
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Problem parse_problem(std::string_view text, const std::string& name) {
  return Reader(name).run(text);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of("/\\");
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.rfind('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  try {
    return parse_problem(ss.str(), name);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Problem> fixtures() {
  std::vector<Problem> out;
  for (const auto& t : fixture_texts()) out.push_back(parse_problem(t.text, t.name));
  return out;
}

Problem fixture(const std::string& name) {
  for (const auto& t : fixture_texts())
    if (t.name == name) return parse_problem(t.text, t.name);
  throw InputError("no bundled problem named '" + name + "'");
}

}  // namespace pareto_tame
