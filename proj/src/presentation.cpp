#include "flagq/presentation.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagq {

namespace {

[[noreturn]] void bad(const std::string& why) {
  throw std::invalid_argument("presentation: " + why);
}

// ----- compiled axiom rules: equations between quandle word trees -----

struct RNode {
  enum Kind { Leaf, Tri, VMap };
  Kind kind;
  int var = -1;   // Leaf
  int l = -1, r = -1;
};

struct Rule {
  std::vector<RNode> nodes;
  int lhs = -1, rhs = -1;
  int nvars = 0;
};

class RuleBuilder {
 public:
  int leaf(int v) { return add({RNode::Leaf, v, -1, -1}); }
  int tri(int a, int b) { return add({RNode::Tri, -1, a, b}); }
  int vmap(int a) { return add({RNode::VMap, -1, a, -1}); }
  Rule done(int lhs, int rhs, int nvars) { return Rule{nodes_, lhs, rhs, nvars}; }

 private:
  int add(RNode n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }
  std::vector<RNode> nodes_;
};

std::vector<Rule> build_rules(const AxiomSet& ax, bool with_virtual) {
  std::vector<Rule> rules;
  {
    // (x > y) > z = (x > z) > (y > z)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1), z = b.leaf(2);
    int lhs = b.tri(b.tri(x, y), z);
    int rhs = b.tri(b.tri(x, z), b.tri(y, z));
    rules.push_back(b.done(lhs, rhs, 3));
  }
  auto chain = [](int n) {
    // (..((x > y) > y)..) > y = x, n applications
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1);
    int acc = x;
    for (int i = 0; i < n; ++i) acc = b.tri(acc, y);
    return b.done(acc, x, 2);
  };
  if (ax.involutory) rules.push_back(chain(2));
  if (ax.n_quandle >= 2 && !(ax.involutory && ax.n_quandle == 2))
    rules.push_back(chain(ax.n_quandle));
  if (ax.abelian) {
    // (x > y) > (z > w) = (x > z) > (y > w)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1), z = b.leaf(2), w = b.leaf(3);
    rules.push_back(b.done(b.tri(b.tri(x, y), b.tri(z, w)),
                           b.tri(b.tri(x, z), b.tri(y, w)), 4));
  }
  if (ax.anti_abelian) {
    // (x > y) > (z > w) = (w > y) > (z > x)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1), z = b.leaf(2), w = b.leaf(3);
    rules.push_back(b.done(b.tri(b.tri(x, y), b.tri(z, w)),
                           b.tri(b.tri(w, y), b.tri(z, x)), 4));
  }
  if (ax.left_distributive) {
    // x > (y > z) = (x > y) > (x > z)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1), z = b.leaf(2);
    rules.push_back(b.done(b.tri(x, b.tri(y, z)),
                           b.tri(b.tri(x, y), b.tri(x, z)), 3));
  }
  if (ax.commutative_operator) {
    // x > (y > z) = x > (z > y)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1), z = b.leaf(2);
    rules.push_back(b.done(b.tri(x, b.tri(y, z)),
                           b.tri(x, b.tri(z, y)), 3));
  }
  if (with_virtual) {
    // v(x > y) = v(x) > v(y)
    RuleBuilder b;
    int x = b.leaf(0), y = b.leaf(1);
    rules.push_back(b.done(b.vmap(b.tri(x, y)),
                           b.tri(b.vmap(x), b.vmap(y)), 2));
    if (ax.involutory) {
      RuleBuilder b2;
      rules.push_back(b2.done(b2.vmap(b2.vmap(b2.leaf(0))), 0, 1));
    }
  }
  return rules;
}

// ----- shared partial-table mutation helpers (matrix build + engine) -----

struct Tables {
  std::vector<std::vector<int>>& m;
  std::vector<std::vector<int>>& d;
  std::vector<int>& v;
  std::vector<int>& vinv;
  std::deque<std::pair<int, int>>& pending;
  bool* changed = nullptr;

  void mark() { if (changed) *changed = true; }

  // x_i > x_j = x_k; keeps D synchronized and reports collisions as merges
  void set_m(int i, int j, int k) {
    int cur = m[i][j];
    if (cur == k) {
      sync_d(k, j, i);
      return;
    }
    if (cur != 0) {
      pending.push_back({cur, k});
      return;
    }
    m[i][j] = k;
    mark();
    sync_d(k, j, i);
  }
  void sync_d(int k, int j, int i) {
    int cur = d[k][j];
    if (cur == i) return;
    if (cur != 0) {
      pending.push_back({cur, i});
      return;
    }
    d[k][j] = i;
    mark();
  }
  // x_i >^-1 x_j = x_k, i.e. x_k > x_j = x_i
  void set_d(int i, int j, int k) { set_m(k, j, i); }
  void set_v(int i, int k) {
    int cur = v[i];
    if (cur != k) {
      if (cur != 0) {
        pending.push_back({cur, k});
        return;
      }
      v[i] = k;
      mark();
    }
    int inv = vinv[k];
    if (inv == i) return;
    if (inv != 0) {
      pending.push_back({inv, i});
      return;
    }
    vinv[k] = i;
    mark();
  }
};

}  // namespace

// ----- AxiomSet -----

std::optional<AxiomSet> AxiomSet::parse(std::string_view csv) {
  AxiomSet ax;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    std::string_view tok = csv.substr(
        pos, comma == csv.npos ? csv.npos : comma - pos);
    if (!tok.empty()) {
      if (tok == "involutory") ax.involutory = true;
      else if (tok == "abelian") ax.abelian = true;
      else if (tok == "anti-abelian" || tok == "anti_abelian") ax.anti_abelian = true;
      else if (tok == "left-distributive" || tok == "left_distributive")
        ax.left_distributive = true;
      else if (tok == "commutative-operator" || tok == "commutative_operator")
        ax.commutative_operator = true;
      else if (tok == "latin") ax.latin = true;
      else if (tok.substr(0, 9) == "n-quandle" || tok.substr(0, 9) == "n_quandle") {
        size_t eq = tok.find('=');
        if (eq == tok.npos) return std::nullopt;
        int n = 0;
        for (char ch : tok.substr(eq + 1)) {
          if (ch < '0' || ch > '9') return std::nullopt;
          n = n * 10 + (ch - '0');
        }
        if (n < 2) return std::nullopt;
        ax.n_quandle = n;
      } else {
        return std::nullopt;
      }
    }
    if (comma == csv.npos) break;
    pos = comma + 1;
  }
  return ax;
}

std::string AxiomSet::to_string() const {
  std::vector<std::string> parts;
  if (involutory) parts.push_back("involutory");
  if (abelian) parts.push_back("abelian");
  if (anti_abelian) parts.push_back("anti-abelian");
  if (left_distributive) parts.push_back("left-distributive");
  if (commutative_operator) parts.push_back("commutative-operator");
  if (latin) parts.push_back("latin");
  if (n_quandle >= 2) parts.push_back("n-quandle=" + std::to_string(n_quandle));
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

// ----- FiniteQuandle -----

std::string FiniteQuandle::render() const {
  int width = 1;
  for (int x = n; x >= 10; x /= 10) ++width;
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    out << "[";
    for (int j = 0; j < n; ++j) {
      out << " ";
      std::string s = std::to_string(table[i][j]);
      out << std::string(width - s.size(), ' ') << s;
    }
    if (v) {
      std::string s = std::to_string((*v)[i]);
      out << " | " << std::string(width - s.size(), ' ') << s;
    }
    out << " ]\n";
  }
  return out.str();
}

nlohmann::json FiniteQuandle::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["table"] = table;
  if (v) j["v"] = *v;
  else j["v"] = nullptr;
  return j;
}

FiniteQuandle FiniteQuandle::from_json(const nlohmann::json& j) {
  FiniteQuandle q;
  q.n = j.at("n").get<int>();
  q.table = j.at("table").get<std::vector<std::vector<int>>>();
  if (j.contains("v") && !j.at("v").is_null())
    q.v = j.at("v").get<std::vector<int>>();
  return q;
}

// ----- PresentationMatrix -----

namespace {

void grow_tables(std::vector<std::vector<int>>& m, std::vector<std::vector<int>>& d,
                 std::vector<int>& v, std::vector<int>& vinv, int count) {
  size_t dim = static_cast<size_t>(count) + 1;
  if (m.size() < dim) {
    m.resize(dim);
    d.resize(dim);
  }
  for (auto& row : m) row.resize(dim, 0);
  for (auto& row : d) row.resize(dim, 0);
  v.resize(dim, 0);
  vinv.resize(dim, 0);
}

}  // namespace

PresentationMatrix PresentationMatrix::from_relations(
    int n, const std::vector<Relation>& relations, const AxiomSet& axioms,
    bool with_virtual) {
  if (n < 1) bad("generator count must be positive");
  PresentationMatrix p;
  p.count_ = n;
  p.virtual_ = with_virtual;
  p.axioms_ = axioms;
  grow_tables(p.m_, p.d_, p.v_, p.vinv_, n);
  Tables t{p.m_, p.d_, p.v_, p.vinv_, p.pending_, nullptr};

  auto alloc = [&]() {
    ++p.count_;
    grow_tables(p.m_, p.d_, p.v_, p.vinv_, p.count_);
    return p.count_;
  };

  // shorten a word to a single generator, introducing abbreviations
  auto shorten = [&](auto&& self, const QTerm& w) -> int {
    switch (w.kind) {
      case QTerm::Gen:
        if (w.gen < 1 || w.gen > n) bad("generator index out of range");
        return w.gen;
      case QTerm::Tri: {
        int i = self(self, *w.a), j = self(self, *w.b);
        if (int k = p.m_[i][j]; k != 0) return k;
        int g = alloc();
        t.set_m(i, j, g);
        return g;
      }
      case QTerm::TriInv: {
        int i = self(self, *w.a), j = self(self, *w.b);
        if (int k = p.d_[i][j]; k != 0) return k;
        int g = alloc();
        t.set_d(i, j, g);
        return g;
      }
      case QTerm::VMap: {
        if (!with_virtual) bad("v(..) relation in a non-virtual presentation");
        int i = self(self, *w.a);
        if (int k = p.v_[i]; k != 0) return k;
        int g = alloc();
        t.set_v(i, g);
        return g;
      }
    }
    bad("unreachable");
  };

  for (const Relation& rel : relations) {
    const QTerm* lhs = &rel.lhs;
    const QTerm* rhs = &rel.rhs;
    if (lhs->kind == QTerm::Gen && rhs->kind != QTerm::Gen) std::swap(lhs, rhs);
    int k = shorten(shorten, *rhs);
    switch (lhs->kind) {
      case QTerm::Gen: {
        int i = shorten(shorten, *lhs);
        if (i != k) p.pending_.push_back({i, k});
        break;
      }
      case QTerm::Tri:
        t.set_m(shorten(shorten, *lhs->a), shorten(shorten, *lhs->b), k);
        break;
      case QTerm::TriInv:
        t.set_d(shorten(shorten, *lhs->a), shorten(shorten, *lhs->b), k);
        break;
      case QTerm::VMap:
        if (!with_virtual) bad("v(..) relation in a non-virtual presentation");
        t.set_v(shorten(shorten, *lhs->a), k);
        break;
    }
  }
  return p;
}

int PresentationMatrix::known_count() const {
  int known = 0;
  for (int i = 1; i <= count_; ++i)
    for (int j = 1; j <= count_; ++j) known += m_[i][j] != 0;
  return known;
}

std::string PresentationMatrix::render() const {
  int width = 1;
  for (int x = count_; x >= 10; x /= 10) ++width;
  std::ostringstream out;
  for (int i = 1; i <= count_; ++i) {
    out << "[";
    for (int j = 1; j <= count_; ++j) {
      std::string s = std::to_string(m_[i][j]);
      out << " " << std::string(width - s.size(), ' ') << s;
    }
    if (virtual_) {
      std::string s = std::to_string(v_[i]);
      out << " | " << std::string(width - s.size(), ' ') << s;
    }
    out << " ]\n";
  }
  return out.str();
}

// ----- completion engine -----

class CompletionEngine {
 public:
  CompletionEngine(const PresentationMatrix& p, const AxiomSet& ax,
                   const CompletionBudget& budget)
      : ax_(ax),
        virtual_(p.is_virtual()),
        budget_(budget),
        count_(p.generator_count()),
        input_gens_(p.generator_count()) {
    grow_tables(m_, d_, v_, vinv_, count_);
    for (int i = 1; i <= count_; ++i)
      for (int j = 1; j <= count_; ++j) {
        m_[i][j] = p.entry(i, j);
        d_[i][j] = p.dual_entry(i, j);
      }
    if (virtual_)
      for (int i = 1; i <= count_; ++i) {
        v_[i] = p.v_entry(i);
        if (v_[i]) vinv_[v_[i]] = i;
      }
    parent_.resize(count_ + 1);
    std::iota(parent_.begin(), parent_.end(), 0);
    live_.assign(count_ + 1, 1);
    pending_ = p.pending_;  // merges discovered while shortening
    rules_ = build_rules(ax, virtual_);
  }

  CompletionResult run(ZeroStrategy strategy) {
    fill_idempotent();
    process_merges();
    while (true) {
      if (budget_.max_rounds >= 0 && stats_.rounds >= budget_.max_rounds)
        return exhausted();
      bool changed = run_round();
      ++stats_.rounds;
      bool merged = !pending_.empty();
      process_merges();
      if (changed || merged) continue;
      auto zero = pick_zero(strategy);
      if (!zero) break;
      if (count_ >= budget_.max_generators) return exhausted();
      int g = alloc();
      ++stats_.generators_introduced;
      Tables t = tables();
      if (zero->is_v) t.set_v(zero->i, g);
      else t.set_m(zero->i, zero->j, g);
      process_merges();
    }
    return completed();
  }

 private:
  struct Zero { bool is_v; int i, j; };

  AxiomSet ax_;
  bool virtual_;
  CompletionBudget budget_;
  int count_;
  int input_gens_;
  std::vector<std::vector<int>> m_, d_;
  std::vector<int> v_, vinv_;
  std::vector<int> parent_;
  std::vector<char> live_;
  std::deque<std::pair<int, int>> pending_;
  std::vector<Rule> rules_;
  CompletionStats stats_;
  bool changed_ = false;

  Tables tables() { return Tables{m_, d_, v_, vinv_, pending_, &changed_}; }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void fill_idempotent() {
    Tables t = tables();
    for (int i = 1; i <= count_; ++i)
      if (live_[i]) t.set_m(i, i, i);
  }

  int alloc() {
    ++count_;
    grow_tables(m_, d_, v_, vinv_, count_);
    parent_.push_back(count_);
    live_.push_back(1);
    Tables t = tables();
    t.set_m(count_, count_, count_);
    return count_;
  }

  // drain the merge queue: union (smallest live index survives), then
  // rewrite all facts through the union-find, cascading new collisions
  void process_merges() {
    while (!pending_.empty()) {
      bool any = false;
      while (!pending_.empty()) {
        auto [a, b] = pending_.front();
        pending_.pop_front();
        a = find(a);
        b = find(b);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        live_[b] = 0;
        ++stats_.merges;
        any = true;
      }
      if (!any) break;
      std::vector<std::array<int, 3>> facts;
      for (int i = 1; i <= count_; ++i)
        for (int j = 1; j <= count_; ++j)
          if (m_[i][j]) facts.push_back({i, j, m_[i][j]});
      std::vector<std::pair<int, int>> vfacts;
      if (virtual_)
        for (int i = 1; i <= count_; ++i)
          if (v_[i]) vfacts.push_back({i, v_[i]});
      for (int i = 1; i <= count_; ++i) {
        std::fill(m_[i].begin(), m_[i].end(), 0);
        std::fill(d_[i].begin(), d_[i].end(), 0);
      }
      std::fill(v_.begin(), v_.end(), 0);
      std::fill(vinv_.begin(), vinv_.end(), 0);
      Tables t = tables();
      for (auto& [i, j, k] : facts) t.set_m(find(i), find(j), find(k));
      for (auto& [i, k] : vfacts) t.set_v(find(i), find(k));
    }
  }

  int eval(const Rule& rule, int node, const std::vector<int>& asg) {
    const RNode& nd = rule.nodes[node];
    switch (nd.kind) {
      case RNode::Leaf:
        return asg[nd.var];
      case RNode::Tri: {
        int a = eval(rule, nd.l, asg);
        if (!a) return 0;
        int b = eval(rule, nd.r, asg);
        if (!b) return 0;
        int k = m_[a][b];
        return k ? find(k) : 0;
      }
      case RNode::VMap: {
        int a = eval(rule, nd.l, asg);
        if (!a) return 0;
        int k = v_[a];
        return k ? find(k) : 0;
      }
    }
    return 0;
  }

  // propagate a known value of a word downward, filling the single missing
  // table cell when everything else in the word is known
  void solve(const Rule& rule, int node, const std::vector<int>& asg, int target) {
    const RNode& nd = rule.nodes[node];
    Tables t = tables();
    switch (nd.kind) {
      case RNode::Leaf: {
        int x = asg[nd.var];
        if (x != target) pending_.push_back({x, target});
        return;
      }
      case RNode::Tri: {
        int a = eval(rule, nd.l, asg);
        int b = eval(rule, nd.r, asg);
        if (a && b) {
          t.set_m(a, b, target);
        } else if (!a && b) {
          if (int w = d_[target][b]; w) solve(rule, nd.l, asg, find(w));
        }
        return;
      }
      case RNode::VMap: {
        int a = eval(rule, nd.l, asg);
        if (a) {
          t.set_v(a, target);
        } else if (int w = vinv_[target]; w) {
          solve(rule, nd.l, asg, find(w));
        }
        return;
      }
    }
  }

  void apply(const Rule& rule, const std::vector<int>& asg) {
    int l = eval(rule, rule.lhs, asg);
    int r = eval(rule, rule.rhs, asg);
    if (l && r) {
      if (l != r) pending_.push_back({l, r});
    } else if (l) {
      solve(rule, rule.rhs, asg, l);
    } else if (r) {
      solve(rule, rule.lhs, asg, r);
    }
  }

  bool run_round() {
    changed_ = false;
    std::vector<int> gens;
    for (int i = 1; i <= count_; ++i)
      if (live_[i]) gens.push_back(i);
    std::vector<int> asg;
    for (const Rule& rule : rules_) {
      asg.assign(rule.nvars, 0);
      size_t total = 1;
      for (int k = 0; k < rule.nvars; ++k) total *= gens.size();
      for (size_t it = 0; it < total; ++it) {
        size_t rest = it;
        bool stale = false;
        for (int k = 0; k < rule.nvars; ++k) {
          asg[k] = gens[rest % gens.size()];
          rest /= gens.size();
          if (!live_[asg[k]]) stale = true;
        }
        if (stale) continue;
        apply(rule, asg);
      }
    }
    if (ax_.latin) latin_scan();
    return changed_;
  }

  // Latin axiom: x > y = x > z forces y = z
  void latin_scan() {
    for (int i = 1; i <= count_; ++i) {
      if (!live_[i]) continue;
      std::map<int, int> first;
      for (int j = 1; j <= count_; ++j) {
        if (!live_[j] || !m_[i][j]) continue;
        int k = find(m_[i][j]);
        auto [it, fresh] = first.try_emplace(k, j);
        if (!fresh && it->second != j) pending_.push_back({it->second, j});
      }
    }
  }

  std::optional<Zero> pick_zero(ZeroStrategy strategy) {
    std::vector<int> gens;
    for (int i = 1; i <= count_; ++i)
      if (live_[i]) gens.push_back(i);
    auto m_zero = [&]() -> std::optional<Zero> {
      if (strategy == ZeroStrategy::ColumnMajor) {
        for (int j : gens)
          for (int i : gens)
            if (!m_[i][j]) return Zero{false, i, j};
        return std::nullopt;
      }
      if (strategy == ZeroStrategy::MostConstrainedRow) {
        int best = -1;
        size_t best_zeros = 0;
        for (int i : gens) {
          size_t zeros = 0;
          for (int j : gens) zeros += m_[i][j] == 0;
          if (zeros > 0 && (best < 0 || zeros < best_zeros)) {
            best = i;
            best_zeros = zeros;
          }
        }
        if (best < 0) return std::nullopt;
        for (int j : gens)
          if (!m_[best][j]) return Zero{false, best, j};
        return std::nullopt;
      }
      for (int i : gens)
        for (int j : gens)
          if (!m_[i][j]) return Zero{false, i, j};
      return std::nullopt;
    };
    if (auto z = m_zero()) return z;
    if (virtual_)
      for (int i : gens)
        if (!v_[i]) return Zero{true, i, 0};
    return std::nullopt;
  }

  CompletionResult exhausted() {
    CompletionResult res;
    res.status = CompletionResult::BudgetExceeded;
    res.stats = stats_;
    return res;
  }

  CompletionResult completed() {
    std::vector<int> gens;
    for (int i = 1; i <= count_; ++i)
      if (live_[i]) gens.push_back(i);
    std::vector<int> label(count_ + 1, 0);
    for (size_t idx = 0; idx < gens.size(); ++idx)
      label[gens[idx]] = static_cast<int>(idx) + 1;

    FiniteQuandle q;
    q.n = static_cast<int>(gens.size());
    q.table.assign(q.n, std::vector<int>(q.n, 0));
    for (int a = 0; a < q.n; ++a)
      for (int b = 0; b < q.n; ++b)
        q.table[a][b] = label[find(m_[gens[a]][gens[b]])];
    if (virtual_) {
      std::vector<int> vv(q.n);
      for (int a = 0; a < q.n; ++a) vv[a] = label[find(v_[gens[a]])];
      q.v = vv;
    }

    CompletionResult res;
    res.status = CompletionResult::Completed;
    res.quandle = std::move(q);
    res.stats = stats_;
    res.generator_map.assign(input_gens_ + 1, 0);
    for (int g = 1; g <= input_gens_; ++g) res.generator_map[g] = label[find(g)];
    return res;
  }
};

CompletionResult complete(const PresentationMatrix& p, const AxiomSet& axioms,
                          const CompletionBudget& budget, ZeroStrategy strategy) {
  CompletionEngine engine(p, axioms, budget);
  return engine.run(strategy);
}

// ----- verifiers and constructors -----

bool verify_axioms(const FiniteQuandle& q, const AxiomSet& axioms) {
  int n = q.n;
  if (n <= 0) return false;
  for (int x = 1; x <= n; ++x)
    if (q.op(x, x) != x) return false;
  // axiom (ii): every column a permutation
  for (int y = 1; y <= n; ++y) {
    std::vector<bool> seen(n + 1, false);
    for (int x = 1; x <= n; ++x) {
      int k = q.op(x, y);
      if (k < 1 || k > n || seen[k]) return false;
      seen[k] = true;
    }
  }
  if (axioms.latin && !is_latin(q)) return false;
  bool with_v = q.v.has_value();
  if (with_v) {
    std::vector<bool> seen(n + 1, false);
    for (int x = 1; x <= n; ++x) {
      int k = q.vmap(x);
      if (k < 1 || k > n || seen[k]) return false;
      seen[k] = true;
    }
  }
  std::vector<Rule> rules = build_rules(axioms, with_v);
  auto eval = [&](const Rule& rule, const std::vector<int>& asg) {
    auto rec = [&](auto&& self, int node) -> int {
      const RNode& nd = rule.nodes[node];
      switch (nd.kind) {
        case RNode::Leaf: return asg[nd.var];
        case RNode::Tri: return q.op(self(self, nd.l), self(self, nd.r));
        case RNode::VMap: return q.vmap(self(self, nd.l));
      }
      return 0;
    };
    return std::pair{rec(rec, rule.lhs), rec(rec, rule.rhs)};
  };
  std::vector<int> asg;
  for (const Rule& rule : rules) {
    asg.assign(rule.nvars, 1);
    size_t total = 1;
    for (int k = 0; k < rule.nvars; ++k) total *= n;
    for (size_t it = 0; it < total; ++it) {
      size_t rest = it;
      for (int k = 0; k < rule.nvars; ++k) {
        asg[k] = static_cast<int>(rest % n) + 1;
        rest /= n;
      }
      auto [l, r] = eval(rule, asg);
      if (l != r) return false;
    }
  }
  return true;
}

bool is_latin(const FiniteQuandle& q) {
  for (int x = 1; x <= q.n; ++x) {
    std::vector<bool> seen(q.n + 1, false);
    for (int y = 1; y <= q.n; ++y) {
      int k = q.op(x, y);
      if (k < 1 || k > q.n || seen[k]) return false;
      seen[k] = true;
    }
  }
  for (int y = 1; y <= q.n; ++y) {
    std::vector<bool> seen(q.n + 1, false);
    for (int x = 1; x <= q.n; ++x) {
      int k = q.op(x, y);
      if (seen[k]) return false;
      seen[k] = true;
    }
  }
  return true;
}

FiniteQuandle alexander_quandle(int n, int t) {
  if (n < 1) bad("alexander_quandle: n must be positive");
  int tm = ((t % n) + n) % n;
  if (std::gcd(tm, n) != 1) bad("alexander_quandle: t must be a unit mod n");
  FiniteQuandle q;
  q.n = n;
  q.table.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      long long val = (1LL * tm * x + 1LL * ((1 - tm) % n + n) * y) % n;
      q.table[x][y] = static_cast<int>(val) + 1;
    }
  return q;
}

FiniteQuandle core_cyclic(int n) {
  if (n < 1) bad("core_cyclic: n must be positive");
  FiniteQuandle q;
  q.n = n;
  q.table.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) q.table[x][y] = ((2 * y - x) % n + n) % n + 1;
  return q;
}

namespace {

// sorted cycle type of the column permutation f_x, plus the v-orbit length
std::vector<int> element_profile(const FiniteQuandle& q, int x) {
  std::vector<int> prof;
  std::vector<bool> seen(q.n + 1, false);
  std::vector<int> cycles;
  for (int y = 1; y <= q.n; ++y) {
    if (seen[y]) continue;
    int len = 0, z = y;
    while (!seen[z]) {
      seen[z] = true;
      z = q.op(z, x);
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end());
  prof = cycles;
  if (q.v) {
    int len = 1, z = q.vmap(x);
    while (z != x) {
      z = q.vmap(z);
      ++len;
    }
    prof.push_back(-len);
  }
  return prof;
}

bool extend_iso(const FiniteQuandle& a, const FiniteQuandle& b,
                std::vector<int>& phi, std::vector<bool>& used, int x,
                const std::vector<std::vector<int>>& prof_a,
                const std::vector<std::vector<int>>& prof_b) {
  if (x > a.n) return true;
  for (int y = 1; y <= b.n; ++y) {
    if (used[y] || prof_a[x] != prof_b[y]) continue;
    phi[x] = y;
    used[y] = true;
    bool ok = true;
    for (int z = 1; z <= a.n && ok; ++z) {
      if (!phi[z]) continue;
      int xz = a.op(x, z), zx = a.op(z, x);
      if (phi[xz] && b.op(y, phi[z]) != phi[xz]) ok = false;
      if (ok && phi[zx] && b.op(phi[z], y) != phi[zx]) ok = false;
    }
    if (ok && a.v) {
      int vx = a.vmap(x);
      if (phi[vx] && b.vmap(y) != phi[vx]) ok = false;
      // also the preimage side
      for (int z = 1; z <= a.n && ok; ++z)
        if (phi[z] && a.vmap(z) == x && b.vmap(phi[z]) != y) ok = false;
    }
    if (ok && extend_iso(a, b, phi, used, x + 1, prof_a, prof_b)) return true;
    phi[x] = 0;
    used[y] = false;
  }
  return false;
}

}  // namespace

bool are_isomorphic(const FiniteQuandle& a, const FiniteQuandle& b) {
  if (a.n != b.n) return false;
  if (a.v.has_value() != b.v.has_value())
    bad("are_isomorphic: one quandle has v, the other does not");
  std::vector<std::vector<int>> prof_a(a.n + 1), prof_b(b.n + 1);
  for (int x = 1; x <= a.n; ++x) {
    prof_a[x] = element_profile(a, x);
    prof_b[x] = element_profile(b, x);
  }
  {
    auto sa = prof_a, sb = prof_b;
    std::sort(sa.begin() + 1, sa.end());
    std::sort(sb.begin() + 1, sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> phi(a.n + 1, 0);
  std::vector<bool> used(b.n + 1, false);
  return extend_iso(a, b, phi, used, 1, prof_a, prof_b);
}

int eval_word(const FiniteQuandle& q, const std::vector<int>& gen_to_elem,
              const QTerm& term) {
  switch (term.kind) {
    case QTerm::Gen:
      return gen_to_elem.at(term.gen);
    case QTerm::Tri:
      return q.op(eval_word(q, gen_to_elem, *term.a),
                  eval_word(q, gen_to_elem, *term.b));
    case QTerm::TriInv: {
      int target = eval_word(q, gen_to_elem, *term.a);
      int y = eval_word(q, gen_to_elem, *term.b);
      for (int z = 1; z <= q.n; ++z)
        if (q.op(z, y) == target) return z;
      bad("eval_word: dual lookup failed");
    }
    case QTerm::VMap:
      return q.vmap(eval_word(q, gen_to_elem, *term.a));
  }
  bad("eval_word: unreachable");
}

}  // namespace flagq
