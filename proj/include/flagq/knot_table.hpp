#ifndef FLAGQ_KNOT_TABLE_HPP
#define FLAGQ_KNOT_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "flagq/diagram.hpp"
#include "flagq/flag.hpp"
#include "flagq/presentation.hpp"
#include "json.hpp"

namespace flagq {

/// One bundled knot: a diagram code plus optional expected values.
struct KnotTableEntry {
  std::string name;
  std::string pd;     // exactly one of pd / gauss is set
  std::string gauss;
  std::string source;

  KnotDiagram diagram() const;
};

struct KnotTable {
  std::vector<KnotTableEntry> entries;

  static KnotTable load(const std::string& path);
  const KnotTableEntry* find(const std::string& name) const;
};

/// Expectations checked by the regression runner.
struct Flag1Expectation {
  std::string name;
  int cardinality = 0;
  std::vector<std::string> basis;  // polynomial text
};

struct QuotientExpectation {
  std::string name;
  std::string axioms;
  bool with_virtual = false;
  int size = 0;  // expected element count
  std::optional<FiniteQuandle> quandle;  // expected table up to isomorphism
  int max_generators = 4096;
};

struct ExpectationTable {
  std::string order = "sinv>tinv>s>t";
  std::vector<Flag1Expectation> flag1;
  std::vector<QuotientExpectation> quotients;

  static ExpectationTable load(const std::string& path);
};

enum class Grade { Match, IdealMatchOnly, Mismatch, BudgetExceeded };

std::string grade_name(Grade g);

struct EntryReport {
  std::string name;
  std::string kind;  // "flag1" | "quotient"
  Grade grade = Grade::Mismatch;
  double ms = 0;
  nlohmann::json detail;  // diffs and diagnostics
};

struct RunReport {
  std::vector<EntryReport> entries;

  bool all_ok() const;  // every entry match or ideal-match-only
  /// Deterministic when timings are excluded.
  nlohmann::json to_json(bool include_timings) const;
};

/// Computes every expectation entry against the bundled diagrams and grades
/// the results. FLAG_1 comparison is set-wise up to per-element sign with an
/// ideal_equal fallback (expected elements plus the ring relations).
RunReport run_regress(const KnotTable& knots, const ExpectationTable& expect);

/// Derives a presentation from a diagram: crossing relations in semiarc mode
/// with a v map when with_virtual, classical arcs otherwise.
PresentationMatrix diagram_presentation(const KnotDiagram& d, const AxiomSet& ax,
                                        bool with_virtual);

}  // namespace flagq

#endif
