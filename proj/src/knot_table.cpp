#include "flagq/knot_table.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace flagq {

using nlohmann::json;

KnotDiagram KnotTableEntry::diagram() const {
  KnotDiagram d = pd.empty() ? parse_gauss(gauss) : parse_pd(pd);
  d.name = name;
  return d;
}

KnotTable KnotTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knot table: " + path);
  json j = json::parse(in);
  KnotTable table;
  for (const auto& e : j.at("knots")) {
    KnotTableEntry entry;
    entry.name = e.at("name").get<std::string>();
    if (e.contains("pd")) entry.pd = e.at("pd").get<std::string>();
    if (e.contains("gauss")) entry.gauss = e.at("gauss").get<std::string>();
    if (e.contains("source")) entry.source = e.at("source").get<std::string>();
    if (entry.pd.empty() == entry.gauss.empty())
      throw std::runtime_error("knot " + entry.name +
                               ": exactly one of pd/gauss required");
    table.entries.push_back(std::move(entry));
  }
  return table;
}

const KnotTableEntry* KnotTable::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

ExpectationTable ExpectationTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open expectation table: " + path);
  json j = json::parse(in);
  ExpectationTable t;
  if (j.contains("order")) t.order = j.at("order").get<std::string>();
  for (const auto& e : j.value("flag1", json::array())) {
    Flag1Expectation f;
    f.name = e.at("name").get<std::string>();
    f.cardinality = e.at("cardinality").get<int>();
    for (const auto& b : e.at("basis")) f.basis.push_back(b.get<std::string>());
    t.flag1.push_back(std::move(f));
  }
  for (const auto& e : j.value("quotients", json::array())) {
    QuotientExpectation q;
    q.name = e.at("name").get<std::string>();
    q.axioms = e.at("axioms").get<std::string>();
    q.with_virtual = e.value("virtual", false);
    q.size = e.at("size").get<int>();
    if (e.contains("table")) {
      FiniteQuandle fq;
      fq.table = e.at("table").get<std::vector<std::vector<int>>>();
      fq.n = static_cast<int>(fq.table.size());
      if (e.contains("v")) fq.v = e.at("v").get<std::vector<int>>();
      q.quandle = std::move(fq);
    }
    if (e.contains("max_generators"))
      q.max_generators = e.at("max_generators").get<int>();
    t.quotients.push_back(std::move(q));
  }
  return t;
}

std::string grade_name(Grade g) {
  switch (g) {
    case Grade::Match: return "match";
    case Grade::IdealMatchOnly: return "ideal-match-only";
    case Grade::Mismatch: return "mismatch";
    case Grade::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

bool RunReport::all_ok() const {
  for (const auto& e : entries)
    if (e.grade != Grade::Match && e.grade != Grade::IdealMatchOnly) return false;
  return true;
}

json RunReport::to_json(bool include_timings) const {
  json arr = json::array();
  for (const auto& e : entries) {
    json ej;
    ej["name"] = e.name;
    ej["kind"] = e.kind;
    ej["status"] = grade_name(e.grade);
    if (include_timings) ej["timing_ms"] = e.ms;
    if (!e.detail.is_null()) ej["detail"] = e.detail;
    arr.push_back(ej);
  }
  json out;
  out["entries"] = arr;
  out["ok"] = all_ok();
  return out;
}

PresentationMatrix diagram_presentation(const KnotDiagram& d, const AxiomSet& ax,
                                        bool with_virtual) {
  ArcLabeling lab = label_arcs(
      d, with_virtual ? ArcMode::VirtualSemiarcs : ArcMode::ClassicalArcs);
  std::vector<Relation> rels = crossing_relations(d, lab);
  int n = std::max(lab.arc_count, 1);
  return PresentationMatrix::from_relations(n, rels, ax, with_virtual);
}

namespace {

struct Flag1Comparison {
  Grade grade;
  json detail;
};

Flag1Comparison compare_flag1(const GroebnerBasis& computed,
                              const Flag1Expectation& expect,
                              MonomialOrder ord) {
  std::vector<Polynomial> want;
  for (const auto& text : expect.basis) {
    Polynomial p = Polynomial::parse(text, ord);
    if (!p.is_zero() && p.leading_coeff() < 0) p = -p;
    want.push_back(std::move(p));
  }
  auto key = [](const Polynomial& p) { return p.to_string(); };
  std::vector<std::string> got_keys, want_keys;
  for (const auto& p : computed.elements) got_keys.push_back(key(p));
  for (const auto& p : want) want_keys.push_back(key(p));
  std::sort(got_keys.begin(), got_keys.end());
  std::sort(want_keys.begin(), want_keys.end());

  json detail;
  if (got_keys == want_keys &&
      static_cast<int>(computed.elements.size()) == expect.cardinality)
    return {Grade::Match, detail};

  json missing = json::array(), extra = json::array();
  for (const auto& k : want_keys)
    if (!std::binary_search(got_keys.begin(), got_keys.end(), k))
      missing.push_back(k);
  for (const auto& k : got_keys)
    if (!std::binary_search(want_keys.begin(), want_keys.end(), k))
      extra.push_back(k);
  detail["missing"] = missing;
  detail["extra"] = extra;
  detail["cardinality"] = computed.elements.size();
  detail["expected_cardinality"] = expect.cardinality;

  // fallback: same ideal? (expected elements together with the ring
  // relations, which the printed references leave implicit)
  std::vector<Polynomial> gens = want;
  auto rels = ring_relations(ord);
  gens.insert(gens.end(), rels.begin(), rels.end());
  GroebnerBasis expected_basis = canonical_groebner(Ideal::of(gens, ord));
  if (ideal_equal(computed, expected_basis))
    return {Grade::IdealMatchOnly, detail};
  return {Grade::Mismatch, detail};
}

}  // namespace

RunReport run_regress(const KnotTable& knots, const ExpectationTable& expect) {
  RunReport report;
  auto ord_opt = MonomialOrder::parse(expect.order);
  if (!ord_opt) throw std::runtime_error("bad order spec: " + expect.order);
  MonomialOrder ord = *ord_opt;

  for (const auto& fe : expect.flag1) {
    EntryReport er;
    er.name = fe.name;
    er.kind = "flag1";
    auto t0 = std::chrono::steady_clock::now();
    const KnotTableEntry* ke = knots.find(fe.name);
    if (!ke) {
      er.grade = Grade::Mismatch;
      er.detail = {{"error", "no bundled diagram"}};
    } else {
      GroebnerBasis basis = flag_invariant(ke->diagram(), 1, ord);
      auto cmp = compare_flag1(basis, fe, ord);
      er.grade = cmp.grade;
      er.detail = cmp.detail;
    }
    er.ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();
    report.entries.push_back(std::move(er));
  }

  for (const auto& qe : expect.quotients) {
    EntryReport er;
    er.name = qe.name;
    er.kind = "quotient";
    auto t0 = std::chrono::steady_clock::now();
    const KnotTableEntry* ke = knots.find(qe.name);
    auto ax = AxiomSet::parse(qe.axioms);
    if (!ke || !ax) {
      er.grade = Grade::Mismatch;
      er.detail = {{"error", !ke ? "no bundled diagram" : "bad axiom list"}};
    } else {
      KnotDiagram d = ke->diagram();
      bool with_virtual = qe.with_virtual || d.virtual_count() > 0;
      PresentationMatrix p = diagram_presentation(d, *ax, with_virtual);
      CompletionBudget budget;
      budget.max_generators = qe.max_generators;
      CompletionResult res = complete(p, *ax, budget);
      if (res.status != CompletionResult::Completed) {
        er.grade = Grade::BudgetExceeded;
        er.detail = {{"generators_introduced", res.stats.generators_introduced},
                     {"merges", res.stats.merges},
                     {"rounds", res.stats.rounds}};
      } else {
        const FiniteQuandle& q = *res.quandle;
        bool ok = q.n == qe.size;
        if (ok && qe.quandle) ok = are_isomorphic(q, *qe.quandle);
        er.grade = ok ? Grade::Match : Grade::Mismatch;
        if (!ok) {
          er.detail = {{"size", q.n}, {"expected_size", qe.size}};
          if (qe.quandle) er.detail["isomorphic"] = false;
        }
      }
    }
    er.ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();
    report.entries.push_back(std::move(er));
  }
  return report;
}

}  // namespace flagq
