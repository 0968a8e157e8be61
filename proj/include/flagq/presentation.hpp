#ifndef FLAGQ_PRESENTATION_HPP
#define FLAGQ_PRESENTATION_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "flagq/diagram.hpp"
#include "json.hpp"

namespace flagq {

/// Axiom flags imposed on top of the base quandle axioms (i)-(iii), which
/// are always active. n_quandle(2) coincides with involutory.
struct AxiomSet {
  bool involutory = false;
  bool abelian = false;
  bool anti_abelian = false;
  bool left_distributive = false;
  bool commutative_operator = false;
  bool latin = false;
  int n_quandle = 0;  // 0 = not imposed, else >= 2

  /// Parses "involutory,anti-abelian,n-quandle=4" style lists.
  static std::optional<AxiomSet> parse(std::string_view csv);
  std::string to_string() const;
  bool operator==(const AxiomSet&) const = default;
};

/// Completed finite quandle: total operation table, optionally with a
/// virtual automorphism. Elements are 1..n; table[i-1][j-1] = x_i > x_j.
struct FiniteQuandle {
  int n = 0;
  std::vector<std::vector<int>> table;
  std::optional<std::vector<int>> v;

  int op(int x, int y) const { return table[x - 1][y - 1]; }
  int vmap(int x) const { return (*v)[x - 1]; }

  /// Bracketed matrix layout; the v column, when present, is separated
  /// by '|'.
  std::string render() const;
  nlohmann::json to_json() const;  // {"n":..,"table":[[..]],"v":[..]|null}
  static FiniteQuandle from_json(const nlohmann::json& j);
  bool operator==(const FiniteQuandle&) const = default;
};

/// Partial presentation: n x n tables over {0..n} with 0 = unknown, the dual
/// table kept synchronized (M[i][j] = k iff D[k][j] = i), an optional v map,
/// and a union-find merge structure over generators.
class PresentationMatrix {
 public:
  /// Builds the matrix from relations over generators 1..n, introducing
  /// abbreviation generators until every relation is short. Dual-operation
  /// relations land in D; v(..) relations require with_virtual.
  static PresentationMatrix from_relations(int n,
                                           const std::vector<Relation>& relations,
                                           const AxiomSet& axioms,
                                           bool with_virtual);

  int generator_count() const { return count_; }
  bool is_virtual() const { return virtual_; }
  const AxiomSet& axioms() const { return axioms_; }

  /// M / D / v entries by 1-based generator index; 0 = unknown.
  int entry(int i, int j) const { return m_[i][j]; }
  int dual_entry(int i, int j) const { return d_[i][j]; }
  int v_entry(int i) const { return v_[i]; }
  /// Number of known (nonzero) M entries.
  int known_count() const;

  std::string render() const;

 private:
  friend class CompletionEngine;
  PresentationMatrix() = default;

  int count_ = 0;
  bool virtual_ = false;
  AxiomSet axioms_;
  std::vector<std::vector<int>> m_, d_;      // (count+1)^2, row/col 0 unused
  std::vector<int> v_, vinv_;                // (count+1)
  std::deque<std::pair<int, int>> pending_;  // merges discovered while building
};

enum class ZeroStrategy { RowMajor, ColumnMajor, MostConstrainedRow };

struct CompletionBudget {
  int max_generators = 4096;
  long max_rounds = -1;  // < 0: unbounded
};

struct CompletionStats {
  int generators_introduced = 0;
  int merges = 0;
  long rounds = 0;
};

struct CompletionResult {
  enum Status { Completed, BudgetExceeded };
  Status status = BudgetExceeded;
  std::optional<FiniteQuandle> quandle;
  CompletionStats stats;
  /// original generator (1-based) -> element of the completed quandle
  std::vector<int> generator_map;
};

/// Fixpoint completion: saturate axiom consequences, process merges through
/// the union-find (smallest live index survives), and when quiescent with
/// unknowns left introduce a fresh generator at the strategy's chosen zero.
CompletionResult complete(const PresentationMatrix& p, const AxiomSet& axioms,
                          const CompletionBudget& budget = {},
                          ZeroStrategy strategy = ZeroStrategy::RowMajor);

/// Exhaustive check of the base axioms plus every flagged axiom.
bool verify_axioms(const FiniteQuandle& q, const AxiomSet& axioms);

/// Every row and every column a permutation.
bool is_latin(const FiniteQuandle& q);

/// Alexander quandle on Z_n: x > y = t*x + (1-t)*y mod n. Requires
/// gcd(t, n) = 1.
FiniteQuandle alexander_quandle(int n, int t);

/// Core quandle of the cyclic group: x > y = 2y - x mod n. Involutory.
FiniteQuandle core_cyclic(int n);

/// Quandle isomorphism (respecting v when present on both sides), by
/// backtracking with column-cycle-structure pruning.
bool are_isomorphic(const FiniteQuandle& a, const FiniteQuandle& b);

/// Evaluates a quandle word in q under a map from generator indices to
/// elements. Used to check that completions satisfy their defining
/// relations.
int eval_word(const FiniteQuandle& q, const std::vector<int>& gen_to_elem,
              const QTerm& term);

}  // namespace flagq

#endif
