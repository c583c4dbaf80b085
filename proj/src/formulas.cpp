#include "minorforge/formulas.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <tuple>

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

bool literal_value(const Literal& l, std::span<const char> assignment) {
  const bool x = assignment[idx(l.var)] != 0;
  return l.negated ? !x : x;
}

// Calls fn(subset) for every k-subset of {0..m-1}, lexicographically.
template <class Fn>
void for_each_subset(int m, int k, Fn&& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> s(idx(k));
  for (int i = 0; i < k; ++i) s[idx(i)] = i;
  while (true) {
    fn(std::span<const int>(s));
    int i = k - 1;
    while (i >= 0 && s[idx(i)] == m - k + i) --i;
    if (i < 0) return;
    ++s[idx(i)];
    for (int j = i + 1; j < k; ++j) s[idx(j)] = s[idx(j - 1)] + 1;
  }
}

int dimacs_literal(const Literal& l) { return l.negated ? -(l.var + 1) : l.var + 1; }

std::vector<int> distinct_vars(const Constraint& c) {
  std::vector<int> vars;
  for (const Literal& l : c.literals) vars.push_back(l.var);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

// Blocking clause of every assignment of the constraint's variables that
// violates it; used when a variable occurs twice.
void truth_table_clauses(const Constraint& c, const std::vector<int>& vars, int num_vars,
                         std::vector<std::vector<int>>& out) {
  std::vector<char> a(idx(num_vars), 0);
  const int m = static_cast<int>(vars.size());
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    for (int i = 0; i < m; ++i) a[idx(vars[idx(i)])] = static_cast<char>((mask >> i) & 1u);
    if (evaluate(c, a)) continue;
    std::vector<int> clause;
    for (int i = 0; i < m; ++i) {
      const int lit = vars[idx(i)] + 1;
      clause.push_back(((mask >> i) & 1u) ? -lit : lit);
    }
    out.push_back(std::move(clause));
  }
}

enum class Fold { kKeep, kTrue, kFalse };

// Puts a substituted constraint into normal form.
Fold normalize_constraint(Constraint& c) {
  std::map<int, std::pair<int, int>> occurrences;
  std::vector<int> order;
  for (const Literal& l : c.literals) {
    auto [it, fresh] = occurrences.try_emplace(l.var, 0, 0);
    if (fresh) order.push_back(l.var);
    (l.negated ? it->second.second : it->second.first) += 1;
  }
  std::vector<Literal> out;
  if (c.kind == ConstraintKind::kParity) {
    for (int v : order) {
      const auto [pos, neg] = occurrences[v];
      c.value ^= neg & 1;
      if ((pos + neg) & 1) out.push_back({v, false});
    }
    c.literals = std::move(out);
    c.value &= 1;
    if (c.literals.empty()) return c.value == 0 ? Fold::kTrue : Fold::kFalse;
    return Fold::kKeep;
  }
  // x and ~x together contribute exactly one.
  std::map<int, std::pair<int, int>> remaining;
  for (auto& [v, pn] : occurrences) {
    const int pairs = std::min(pn.first, pn.second);
    c.value -= pairs;
    remaining[v] = {pn.first - pairs, pn.second - pairs};
  }
  for (const Literal& l : c.literals) {
    auto& [pos, neg] = remaining[l.var];
    int& left = l.negated ? neg : pos;
    if (left > 0) {
      --left;
      out.push_back(l);
    }
  }
  c.literals = std::move(out);
  const int m = static_cast<int>(c.literals.size());
  if (c.value < 0 || c.value > m) return Fold::kFalse;
  if (m == 0) return Fold::kTrue;
  if (std::all_of(c.literals.begin(), c.literals.end(), [](const Literal& l) { return l.negated; })) {
    for (Literal& l : c.literals) l.negated = false;
    c.value = m - c.value;
  }
  return Fold::kKeep;
}

void mark_false(Formula& f, const Constraint& c) {
  if (f.trivially_false) return;
  f.trivially_false = true;
  f.false_reason = "axiom at vertex " + std::to_string(c.origin) + " is constant false";
}

// Canonical form: variables renamed by first occurrence, literals sorted
// within each axiom, axioms sorted.
using CanonicalAxiom = std::tuple<int, int, std::vector<std::pair<int, int>>>;

// Without a renaming, `identity` keeps variable ids as they are.
std::vector<CanonicalAxiom> canonical(const Formula& f, std::optional<std::span<const int>> renaming,
                                      bool identity = false) {
  std::map<int, int> names;
  auto name = [&](int v) {
    if (renaming) return (*renaming)[idx(v)];
    if (identity) return v;
    auto [it, fresh] = names.try_emplace(v, static_cast<int>(names.size()));
    return it->second;
  };
  std::vector<CanonicalAxiom> out;
  for (const Constraint& c : f.constraints) {
    std::vector<std::pair<int, int>> lits;
    for (const Literal& l : c.literals) lits.emplace_back(name(l.var), l.negated ? 1 : 0);
    std::sort(lits.begin(), lits.end());
    out.emplace_back(static_cast<int>(c.kind), c.value, std::move(lits));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Renamed copy on the variable range of the renaming's image.
Formula renamed(const Formula& f, std::span<const int> renaming, int num_vars) {
  Formula out = f;
  out.num_vars = num_vars;
  for (Constraint& c : out.constraints) {
    for (Literal& l : c.literals) {
      const int to = renaming[idx(l.var)];
      if (to < 0 || to >= num_vars) throw Error(ErrorCode::kMismatch, "renaming leaves variable unmapped");
      l.var = to;
    }
  }
  return out;
}

Formula first_occurrence_renamed(const Formula& f) {
  std::vector<int> names(idx(f.num_vars), -1);
  int next = 0;
  for (const Constraint& c : f.constraints) {
    for (const Literal& l : c.literals) {
      if (names[idx(l.var)] < 0) names[idx(l.var)] = next++;
    }
  }
  for (int& v : names) {
    if (v < 0) v = next++;
  }
  return renamed(f, names, f.num_vars);
}

}  // namespace

const char* to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::kTseitin: return "tseitin";
    case FormulaKind::kCard: return "card";
    case FormulaKind::kPM: return "pm";
  }
  return "?";
}

Formula build_formula(FormulaKind kind, const Graph& g, std::span<const int> params) {
  const int n = g.num_vertices();
  Formula f;
  f.kind = kind;
  f.graph = g;
  f.num_vars = g.num_edges();
  if (kind == FormulaKind::kPM && params.empty()) {
    f.params.assign(idx(n), 1);
  } else {
    if (static_cast<int>(params.size()) != n) {
      throw Error(ErrorCode::kMismatch, "expected " + std::to_string(n) + " vertex parameters");
    }
    f.params.assign(params.begin(), params.end());
  }
  for (int v = 0; v < n; ++v) {
    const int p = f.params[idx(v)];
    if (kind == FormulaKind::kTseitin && p != 0 && p != 1) {
      throw Error(ErrorCode::kRange, "charge at vertex " + std::to_string(v) + " must be 0 or 1");
    }
    if (kind == FormulaKind::kPM && p != 1) throw Error(ErrorCode::kRange, "PM needs b = 1 everywhere");
    if (p < 0) throw Error(ErrorCode::kRange, "negative b at vertex " + std::to_string(v));
    Constraint c;
    c.kind = kind == FormulaKind::kTseitin ? ConstraintKind::kParity : ConstraintKind::kExactly;
    c.value = p;
    c.origin = v;
    for (int e : g.incident_edges(v)) c.literals.push_back({e, false});
    if (kind != FormulaKind::kTseitin && p > g.degree(v)) {
      f.out_of_range.push_back(v);
      mark_false(f, c);
    }
    if (kind == FormulaKind::kTseitin && p == 1 && g.degree(v) == 0) mark_false(f, c);
    f.constraints.push_back(std::move(c));
  }
  return f;
}

bool evaluate(const Constraint& c, std::span<const char> assignment) {
  int count = 0;
  for (const Literal& l : c.literals) count += literal_value(l, assignment) ? 1 : 0;
  return c.kind == ConstraintKind::kParity ? (count & 1) == (c.value & 1) : count == c.value;
}

bool evaluate(const Formula& f, std::span<const char> assignment) {
  if (f.trivially_false) return false;
  if (static_cast<int>(assignment.size()) < f.num_vars) throw Error(ErrorCode::kMismatch, "assignment too short");
  return std::all_of(f.constraints.begin(), f.constraints.end(),
                     [&](const Constraint& c) { return evaluate(c, assignment); });
}

bool evaluate(const CnfFormula& f, std::span<const char> assignment) {
  if (static_cast<int>(assignment.size()) < f.num_vars) throw Error(ErrorCode::kMismatch, "assignment too short");
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool x = assignment[idx(std::abs(lit) - 1)] != 0;
      if (lit > 0 ? x : !x) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CnfFormula to_cnf(const Formula& f, int degree_cap) {
  CnfFormula out;
  out.num_vars = f.num_vars;
  if (f.trivially_false) {
    out.clauses.emplace_back();
    return out;
  }
  for (const Constraint& c : f.constraints) {
    const std::vector<int> vars = distinct_vars(c);
    const int m = static_cast<int>(c.literals.size());
    if (static_cast<int>(vars.size()) > degree_cap) {
      throw Error(ErrorCode::kSize, "axiom at vertex " + std::to_string(c.origin) + " has " +
                                        std::to_string(vars.size()) + " variables, cap is " +
                                        std::to_string(degree_cap));
    }
    if (static_cast<int>(vars.size()) != m) {
      truth_table_clauses(c, vars, f.num_vars, out.clauses);
      continue;
    }
    if (c.kind == ConstraintKind::kParity) {
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        int count = 0;
        for (int i = 0; i < m; ++i) {
          const bool bit = (mask >> i) & 1u;
          count += (bit != c.literals[idx(i)].negated) ? 1 : 0;
        }
        if ((count & 1) == (c.value & 1)) continue;
        std::vector<int> clause;
        for (int i = 0; i < m; ++i) {
          const int v = c.literals[idx(i)].var + 1;
          clause.push_back(((mask >> i) & 1u) ? -v : v);
        }
        out.clauses.push_back(std::move(clause));
      }
      continue;
    }
    const int b = c.value;
    if (b < 0 || b > m) {
      out.clauses.emplace_back();
      continue;
    }
    for_each_subset(m, b + 1, [&](std::span<const int> s) {
      std::vector<int> clause;
      for (int i : s) clause.push_back(-dimacs_literal(c.literals[idx(i)]));
      out.clauses.push_back(std::move(clause));
    });
    for_each_subset(m, m - b + 1, [&](std::span<const int> s) {
      std::vector<int> clause;
      for (int i : s) clause.push_back(dimacs_literal(c.literals[idx(i)]));
      out.clauses.push_back(std::move(clause));
    });
  }
  return out;
}

std::string to_dimacs(const CnfFormula& f, std::span<const std::string> comments) {
  std::ostringstream os;
  for (const std::string& c : comments) os << "c " << c << '\n';
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

CnfFormula from_dimacs(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> clause;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      if (!(ls >> p >> cnf >> f.num_vars >> declared) || cnf != "cnf") throw Error(ErrorCode::kFormat, "bad header");
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorCode::kFormat, "clause before header");
    int lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (std::abs(lit) > f.num_vars) throw Error(ErrorCode::kFormat, "literal out of range");
        clause.push_back(lit);
      }
    }
    if (!ls.eof()) throw Error(ErrorCode::kFormat, "bad token in clause line");
  }
  if (!header) throw Error(ErrorCode::kFormat, "missing header");
  if (!clause.empty()) throw Error(ErrorCode::kFormat, "unterminated clause");
  if (f.clauses.size() != declared) throw Error(ErrorCode::kFormat, "clause count differs from header");
  return f;
}

std::string to_polynomials(const Formula& f) {
  std::ostringstream os;
  auto token = [](const Literal& l) { return (l.negated ? "~x" : "x") + std::to_string(l.var); };
  if (f.trivially_false) os << "0 = 1\n";
  for (const Constraint& c : f.constraints) {
    const int m = static_cast<int>(c.literals.size());
    if (c.kind == ConstraintKind::kExactly) {
      for (int i = 0; i < m; ++i) os << (i ? " + " : "") << token(c.literals[idx(i)]);
      os << " = " << c.value << '\n';
      continue;
    }
    // Indicator of the right-parity assignments.
    bool first = true;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if ((std::popcount(mask) & 1) != (c.value & 1)) continue;
      os << (first ? "" : " + ");
      first = false;
      for (int i = 0; i < m; ++i) {
        Literal l = c.literals[idx(i)];
        if (!((mask >> i) & 1u)) l.negated = !l.negated;
        os << (i ? "*" : "") << token(l);
      }
    }
    os << " = 1\n";
  }
  for (int v : used_variables(f)) {
    os << "x" << v << "^2 = x" << v << '\n';
    os << "x" << v << " + ~x" << v << " = 1\n";
  }
  return os.str();
}

Lift lift_tseitin_to_pm(const Graph& g) {
  const auto d = g.regular_degree();
  if (!d) throw Error(ErrorCode::kNonRegular, "lift needs a regular graph");
  const int n = g.num_vertices();
  const int w = *d + 1;
  Lift lift;
  lift.d = *d;
  std::vector<Edge> edges;
  std::vector<LiftProvenance> by_pair;
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < w; ++i) {
      for (int j = i + 1; j < w; ++j) {
        edges.push_back({v * w + i, v * w + j});
        by_pair.push_back({LiftEdgeKind::kClique, v});
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const auto nu = g.neighbors(u);
    const auto nv = g.neighbors(v);
    const int i = static_cast<int>(std::lower_bound(nu.begin(), nu.end(), v) - nu.begin()) + 1;
    const int j = static_cast<int>(std::lower_bound(nv.begin(), nv.end(), u) - nv.begin()) + 1;
    edges.push_back({u * w + i, v * w + j});
    by_pair.push_back({LiftEdgeKind::kLifted, e});
  }
  std::vector<Edge> keyed = edges;
  lift.graph = Graph::from_edges(n * w, std::move(keyed));
  lift.provenance.resize(idx(lift.graph.num_edges()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    lift.provenance[idx(*lift.graph.edge_id(edges[k].u, edges[k].v))] = by_pair[k];
  }
  return lift;
}

int Restriction::assigned() const {
  return static_cast<int>(std::count_if(map.begin(), map.end(), [](const auto& m) { return m.has_value(); }));
}

void check_chains(const Restriction& rho) {
  for (int v = 0; v < rho.num_vars; ++v) {
    const auto& image = rho.map[idx(v)];
    if (!image || image->kind == ImageKind::kZero || image->kind == ImageKind::kOne) continue;
    const int w = image->var;
    if (w < 0 || w >= rho.num_vars) throw Error(ErrorCode::kRange, "image variable out of range");
    const auto& next = rho.map[idx(w)];
    if (!next) continue;
    if (*next == Image{ImageKind::kPos, w}) continue;
    throw Error(ErrorCode::kChain, "x" + std::to_string(v) + " maps to x" + std::to_string(w) + ", which is restricted");
  }
}

Restriction restriction_from_embedding(const Graph& g, const TopologicalEmbedding& emb, std::span<const int> m) {
  const int n = g.num_vertices();
  Restriction rho(g.num_edges());
  std::vector<char> covered(idx(n), 0);
  for (const Path& p : emb.paths) {
    if (p.length() % 2 == 0) {
      throw Error(ErrorCode::kParity, "path of even length " + std::to_string(p.length()));
    }
    for (int v : p.vertices) covered[idx(v)] = 1;
  }
  for (int v : emb.sigma) covered[idx(v)] = 1;
  std::vector<char> matched(idx(n), 0);
  std::vector<char> in_m(idx(g.num_edges()), 0);
  for (int e : m) {
    if (e < 0 || e >= g.num_edges()) throw Error(ErrorCode::kRange, "matching edge out of range");
    const auto [u, v] = g.edge(e);
    if (covered[idx(u)] || covered[idx(v)]) throw Error(ErrorCode::kMismatch, "matching touches the embedding");
    if (matched[idx(u)] || matched[idx(v)]) throw Error(ErrorCode::kMismatch, "matching edges share a vertex");
    matched[idx(u)] = matched[idx(v)] = 1;
    in_m[idx(e)] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (!covered[idx(v)] && !matched[idx(v)]) {
      throw Error(ErrorCode::kMismatch, "matching leaves vertex " + std::to_string(v) + " uncovered");
    }
  }
  std::vector<char> on_path(idx(g.num_edges()), 0);
  for (const Path& p : emb.paths) {
    const auto first = g.edge_id(p.vertices[0], p.vertices[1]);
    if (!first) throw Error(ErrorCode::kInvariant, "path uses a non-edge");
    for (int i = 0; i < p.length(); ++i) {
      const auto e = g.edge_id(p.vertices[idx(i)], p.vertices[idx(i + 1)]);
      if (!e) throw Error(ErrorCode::kInvariant, "path uses a non-edge");
      on_path[idx(*e)] = 1;
      rho.set(*e, {i % 2 == 0 ? ImageKind::kPos : ImageKind::kNeg, *first});
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!on_path[idx(e)]) rho.set(e, {in_m[idx(e)] ? ImageKind::kOne : ImageKind::kZero, -1});
  }
  return rho;
}

CardReduction card_to_pm_restriction(const OplusSample& sample, int t) {
  const Graph& g = sample.graph;
  const auto d = g.regular_degree();
  if (!d) throw Error(ErrorCode::kNonRegular, "Card reduction needs a regular graph");
  if (t < 1 || t > *d || t % 2 == 0) throw Error(ErrorCode::kRange, "t must be odd and in [1, d]");
  CardReduction out;
  out.flipped = 2 * t > *d;
  out.effective_t = out.flipped ? *d - t : t;
  const int twos = out.effective_t / 2;
  const int d0 = *d - 2 * twos;
  if (static_cast<int>(sample.layers.size()) != twos + 1 || sample.layer_degrees.size() != sample.layers.size()) {
    throw Error(ErrorCode::kMismatch, "expected " + std::to_string(twos + 1) + " layers");
  }
  if (sample.layer_degrees[0] != d0) {
    throw Error(ErrorCode::kMismatch, "first layer must have degree " + std::to_string(d0));
  }
  for (std::size_t i = 1; i < sample.layer_degrees.size(); ++i) {
    if (sample.layer_degrees[i] != 2) throw Error(ErrorCode::kMismatch, "remaining layers must be 2-factors");
  }
  out.rho = Restriction(g.num_edges());
  for (std::size_t i = 1; i < sample.layers.size(); ++i) {
    for (int e : sample.layers[i]) out.rho.set(e, {ImageKind::kOne, -1});
  }
  std::vector<Edge> layer0;
  for (int e : sample.layers[0]) layer0.push_back(g.edge(e));
  out.g0 = Graph::from_edges(g.num_vertices(), layer0);
  if (out.g0.regular_degree() != d0) throw Error(ErrorCode::kMismatch, "first layer is not regular");
  out.renaming.assign(idx(g.num_edges()), -1);
  for (int e : sample.layers[0]) out.renaming[idx(e)] = *out.g0.edge_id(g.edge(e).u, g.edge(e).v);
  return out;
}

Formula complement(const Formula& f) {
  Formula out = f;
  out.constraints.clear();
  for (Constraint c : f.constraints) {
    for (Literal& l : c.literals) l.negated = !l.negated;
    switch (normalize_constraint(c)) {
      case Fold::kTrue: break;
      case Fold::kFalse: mark_false(out, c); break;
      case Fold::kKeep: out.constraints.push_back(std::move(c)); break;
    }
  }
  if (out.kind == FormulaKind::kCard) {
    for (int v = 0; v < out.graph.num_vertices(); ++v) out.params[idx(v)] = out.graph.degree(v) - f.params[idx(v)];
  }
  return out;
}

Formula apply_restriction(const Formula& f, const Restriction& rho) {
  if (rho.num_vars != f.num_vars) throw Error(ErrorCode::kMismatch, "restriction and formula differ in variables");
  check_chains(rho);
  Formula out = f;
  out.constraints.clear();
  for (const Constraint& src : f.constraints) {
    Constraint c = src;
    c.literals.clear();
    int ones = 0;
    for (const Literal& l : src.literals) {
      const auto& image = rho.map[idx(l.var)];
      if (!image) {
        c.literals.push_back(l);
        continue;
      }
      switch (image->kind) {
        case ImageKind::kZero: ones += l.negated ? 1 : 0; break;
        case ImageKind::kOne: ones += l.negated ? 0 : 1; break;
        case ImageKind::kPos: c.literals.push_back({image->var, l.negated}); break;
        case ImageKind::kNeg: c.literals.push_back({image->var, !l.negated}); break;
      }
    }
    if (c.kind == ConstraintKind::kParity) {
      c.value = (c.value + ones) & 1;
    } else {
      c.value -= ones;
    }
    switch (normalize_constraint(c)) {
      case Fold::kTrue: break;
      case Fold::kFalse: mark_false(out, c); break;
      case Fold::kKeep: out.constraints.push_back(std::move(c)); break;
    }
  }
  return out;
}

CnfFormula apply_restriction(const CnfFormula& f, const Restriction& rho) {
  if (rho.num_vars != f.num_vars) throw Error(ErrorCode::kMismatch, "restriction and formula differ in variables");
  check_chains(rho);
  CnfFormula out;
  out.num_vars = f.num_vars;
  for (const auto& clause : f.clauses) {
    std::vector<int> lits;
    bool satisfied = false;
    for (int lit : clause) {
      const int v = std::abs(lit) - 1;
      const auto& image = rho.map[idx(v)];
      int mapped = lit;
      if (image) {
        if (image->kind == ImageKind::kZero || image->kind == ImageKind::kOne) {
          const bool value = (image->kind == ImageKind::kOne) == (lit > 0);
          if (value) {
            satisfied = true;
            break;
          }
          continue;
        }
        const int w = image->var + 1;
        const bool positive = (image->kind == ImageKind::kPos) == (lit > 0);
        mapped = positive ? w : -w;
      }
      if (std::find(lits.begin(), lits.end(), -mapped) != lits.end()) {
        satisfied = true;
        break;
      }
      if (std::find(lits.begin(), lits.end(), mapped) == lits.end()) lits.push_back(mapped);
    }
    if (!satisfied) out.clauses.push_back(std::move(lits));
  }
  return out;
}

std::vector<int> used_variables(const Formula& f) {
  std::vector<int> vars;
  for (const Constraint& c : f.constraints) {
    for (const Literal& l : c.literals) vars.push_back(l.var);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

EquivalenceReport formulas_equivalent(const Formula& left, const Formula& right, EquivalenceMode mode,
                                      std::optional<std::span<const int>> renaming) {
  EquivalenceReport report;
  if (mode == EquivalenceMode::kSyntactic) {
    if (left.trivially_false || right.trivially_false) {
      report.equivalent = left.trivially_false && right.trivially_false;
      return report;
    }
    report.equivalent = canonical(left, renaming) == canonical(right, std::nullopt, renaming.has_value());
    return report;
  }
  const Formula a = renaming ? renamed(left, *renaming, right.num_vars) : first_occurrence_renamed(left);
  const Formula b = renaming ? right : first_occurrence_renamed(right);
  std::vector<int> vars = used_variables(a);
  for (int v : used_variables(b)) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() > 20) throw Error(ErrorCode::kSize, "semantic comparison limited to 20 variables");
  const int width = std::max({a.num_vars, b.num_vars, 1});
  std::vector<char> assignment(idx(width), 0);
  report.equivalent = true;
  const int m = static_cast<int>(vars.size());
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    for (int i = 0; i < m; ++i) assignment[idx(vars[idx(i)])] = static_cast<char>((mask >> i) & 1u);
    const bool x = evaluate(a, assignment);
    const bool y = evaluate(b, assignment);
    report.left_satisfiable |= x;
    report.right_satisfiable |= y;
    if (x != y) report.equivalent = false;
  }
  return report;
}

bool brute_force_satisfiable(const Formula& f) {
  if (f.trivially_false) return false;
  const std::vector<int> vars = used_variables(f);
  if (vars.size() > 24) throw Error(ErrorCode::kSize, "brute force limited to 24 variables");
  std::vector<char> assignment(idx(std::max(f.num_vars, 1)), 0);
  const int m = static_cast<int>(vars.size());
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    for (int i = 0; i < m; ++i) assignment[idx(vars[idx(i)])] = static_cast<char>((mask >> i) & 1u);
    if (evaluate(f, assignment)) return true;
  }
  return false;
}

}  // namespace minorforge
