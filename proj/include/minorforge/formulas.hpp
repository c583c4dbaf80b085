#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorforge/embedding.hpp"
#include "minorforge/generators.hpp"
#include "minorforge/graph.hpp"
#include "minorforge/matching.hpp"

namespace minorforge {

enum class FormulaKind { kTseitin, kCard, kPM };

const char* to_string(FormulaKind kind);

struct Literal {
  int var = 0;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

enum class ConstraintKind {
  /// Exactly `value` of the literals are true.
  kExactly,
  /// The number of true literals is congruent to `value` mod 2.
  kParity,
};

struct Constraint {
  ConstraintKind kind = ConstraintKind::kExactly;
  std::vector<Literal> literals;
  int value = 0;
  /// Host vertex the axiom belongs to.
  int origin = -1;
};

/// Variables are edge ids of the host graph.
struct Formula {
  FormulaKind kind = FormulaKind::kPM;
  Graph graph;
  /// Charge (Tseitin) or b (Card, PM) per vertex.
  std::vector<int> params;
  int num_vars = 0;
  std::vector<Constraint> constraints;
  /// Vertices whose b exceeds their degree.
  std::vector<int> out_of_range;
  bool trivially_false = false;
  std::string false_reason;
};

/// Tseitin takes a 0/1 charge per vertex, Card a b per vertex, PM nothing
/// (or all ones). Negative b and charges outside {0,1} throw kRange; b above
/// the degree is flagged and makes the formula trivially false, as does an
/// odd charge on an isolated vertex.
Formula build_formula(FormulaKind kind, const Graph& g, std::span<const int> params = {});

bool evaluate(const Constraint& c, std::span<const char> assignment);
bool evaluate(const Formula& f, std::span<const char> assignment);

/// DIMACS-style: literal +-(var+1).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

bool evaluate(const CnfFormula& f, std::span<const char> assignment);

/// Same variables, no auxiliaries. Cardinality axioms become at-most
/// clauses over (b+1)-subsets of negations plus at-least clauses over
/// (m-b+1)-subsets; parity axioms block each wrong-parity assignment.
/// Throws kSize when an axiom has more than `degree_cap` variables.
CnfFormula to_cnf(const Formula& f, int degree_cap = 16);

std::string to_dimacs(const CnfFormula& f, std::span<const std::string> comments = {});
CnfFormula from_dimacs(const std::string& text);

/// One `lhs = rhs` line per axiom plus boolean axioms, tokens x<e> and ~x<e>.
std::string to_polynomials(const Formula& f);

enum class LiftEdgeKind { kClique, kLifted };

struct LiftProvenance {
  LiftEdgeKind kind = LiftEdgeKind::kClique;
  /// Clique owner (kClique) or edge id of G (kLifted).
  int source = -1;
};

struct Lift {
  Graph graph;
  /// Per edge id of the lifted graph.
  std::vector<LiftProvenance> provenance;
  int d = 0;
};

/// Each vertex v becomes the clique {v*, v_1..v_d} (ids v(d+1) + 0..d); the
/// edge {u, v}, v the i-th neighbor of u and u the j-th neighbor of v,
/// becomes {u_i, v_j}. Throws kNonRegular.
Lift lift_tseitin_to_pm(const Graph& g);

enum class ImageKind { kZero, kOne, kPos, kNeg };

struct Image {
  ImageKind kind = ImageKind::kPos;
  int var = -1;

  bool operator==(const Image&) const = default;
};

/// Unmapped variables are left alone.
struct Restriction {
  int num_vars = 0;
  std::vector<std::optional<Image>> map;

  explicit Restriction(int n = 0) : num_vars(n), map(static_cast<std::size_t>(n)) {}
  void set(int var, Image image) { map[static_cast<std::size_t>(var)] = image; }
  int assigned() const;
};

/// Throws kChain when some image variable is itself mapped elsewhere.
void check_chains(const Restriction& rho);

/// Matching edges to 1, other edges off the embedding to 0, and each path
/// alternately to x_e / ~x_e of its first edge e, ends positive. Throws
/// kParity for an even path and kMismatch when M is not a perfect matching
/// of G minus the embedding's vertices.
Restriction restriction_from_embedding(const Graph& g, const TopologicalEmbedding& emb, std::span<const int> m);

struct CardReduction {
  Restriction rho;
  /// The degree-(d - 2 floor(t'/2)) layer as a graph on V(G).
  Graph g0;
  /// G edge id -> G0 edge id, or -1.
  std::vector<int> renaming;
  /// t > d/2: rho applies to the complemented formula, which is Card(G, d - t).
  bool flipped = false;
  int effective_t = 0;
};

/// Fixes every 2-factor layer to 1, leaving PM(G0). Throws kMismatch when the
/// layer shapes do not match t.
CardReduction card_to_pm_restriction(const OplusSample& sample, int t);

/// Every literal negated, then normalized.
Formula complement(const Formula& f);

/// Substitutes, cancels x / ~x pairs, drops constant-true axioms and marks a
/// constant-false one. Throws kChain.
Formula apply_restriction(const Formula& f, const Restriction& rho);
CnfFormula apply_restriction(const CnfFormula& f, const Restriction& rho);

/// Variables used by some axiom, ascending.
std::vector<int> used_variables(const Formula& f);

enum class EquivalenceMode { kSyntactic, kSemantic };

struct EquivalenceReport {
  bool equivalent = false;
  /// Semantic mode only.
  bool left_satisfiable = false;
  bool right_satisfiable = false;
};

/// With `renaming` (left var -> right var) the variables are matched
/// through it; otherwise both sides are renamed by first occurrence.
/// Semantic mode enumerates assignments and throws kSize above 20
/// variables.
EquivalenceReport formulas_equivalent(const Formula& left, const Formula& right, EquivalenceMode mode,
                                      std::optional<std::span<const int>> renaming = std::nullopt);

/// Brute force over the used variables (at most 24).
bool brute_force_satisfiable(const Formula& f);

}  // namespace minorforge
