#include "flagq/flag.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace flagq {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

std::vector<Int> trim(std::vector<Int> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

std::vector<Int> primitive_positive(std::vector<Int> c) {
  c = trim(std::move(c));
  if (c.empty()) return c;
  Int g = 0;
  for (const Int& x : c) g = gcd(g, abs_int(x));
  for (Int& x : c) x /= g;
  if (c.back() < 0)
    for (Int& x : c) x = -x;
  return c;
}

}  // namespace

PolyMatrix flaq_matrix(const KnotDiagram& d, MonomialOrder ord,
                       CrossingConvention conv) {
  PolyMatrix P;
  P.diagram_name = d.name;
  P.labeling = label_arcs(d, ArcMode::ClassicalArcs);
  P.cols = P.labeling.arc_count;
  for (const auto& c : d.crossings) {
    if (c.kind != Crossing::Classical) continue;  // FLAG ignores virtual crossings
    int a_in = P.labeling.arc_of(c.under_in);
    int a_out = P.labeling.arc_of(c.under_out);
    int a_over = P.labeling.arc_of(c.over_in);
    bool t_into_in = (conv == CrossingConvention::TIntoUnderIn) == (c.sign > 0);
    std::vector<Polynomial> row(P.cols, Polynomial::zero(ord));
    auto add = [&](int arc, Polynomial p) { row[arc - 1] = row[arc - 1] + p; };
    add(t_into_in ? a_in : a_out, Polynomial::term(1, Monomial::var(VT), ord));
    add(a_over, Polynomial::term(1, Monomial::var(VS), ord));
    add(t_into_in ? a_out : a_in, Polynomial::constant(-1, ord));
    P.entries.push_back(std::move(row));
  }
  P.rows = static_cast<int>(P.entries.size());
  return P;
}

std::vector<Polynomial> minors(const PolyMatrix& P, int size) {
  if (size == 0)
    return {Polynomial::constant(1, MonomialOrder::grevlex_default())};
  if (size < 0 || size > std::min(P.rows, P.cols))
    throw std::invalid_argument("minors: size out of range");
  MonomialOrder ord = P.rows ? P.entries[0][0].order()
                             : MonomialOrder::grevlex_default();

  std::map<std::pair<uint64_t, uint64_t>, Polynomial> memo;
  auto det = [&](auto&& self, const std::vector<int>& rs,
                 const std::vector<int>& cs) -> Polynomial {
    if (rs.empty()) return Polynomial::constant(1, ord);
    uint64_t rk = 0, ck = 0;
    for (int r : rs) rk |= uint64_t{1} << r;
    for (int c : cs) ck |= uint64_t{1} << c;
    auto it = memo.find({rk, ck});
    if (it != memo.end()) return it->second;
    Polynomial total = Polynomial::zero(ord);
    std::vector<int> rest(rs.begin() + 1, rs.end());
    for (size_t pos = 0; pos < cs.size(); ++pos) {
      const Polynomial& a = P.entries[rs[0]][cs[pos]];
      if (a.is_zero()) continue;
      std::vector<int> sub_cols;
      for (size_t q = 0; q < cs.size(); ++q)
        if (q != pos) sub_cols.push_back(cs[q]);
      Polynomial term = a * self(self, rest, sub_cols);
      total = (pos % 2) ? total - term : total + term;
    }
    memo.insert({{rk, ck}, total});
    return total;
  };

  std::vector<Polynomial> out;
  std::vector<int> rs(size), cs(size);
  // enumerate size-subsets of rows and columns
  auto subsets = [](int n, int k) {
    std::vector<std::vector<int>> all;
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == k) {
        all.push_back(cur);
        return;
      }
      for (int i = start; i <= n - (k - depth); ++i) {
        cur[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    return all;
  };
  auto row_sets = subsets(P.rows, size);
  auto col_sets = subsets(P.cols, size);
  for (const auto& r : row_sets)
    for (const auto& c : col_sets) {
      Polynomial m = det(det, r, c);
      if (!m.is_zero()) out.push_back(std::move(m));
    }
  // dedupe up to sign
  std::vector<Polynomial> uniq;
  for (auto& p : out) {
    Polynomial pos = p.leading_coeff() < 0 ? -p : p;
    if (std::find(uniq.begin(), uniq.end(), pos) == uniq.end())
      uniq.push_back(std::move(pos));
  }
  return uniq;
}

std::vector<Polynomial> ring_relations(MonomialOrder ord) {
  Polynomial ss = Polynomial::from_terms(
      {{Monomial::var(VS) * Monomial::var(VSI), 1}, {Monomial::one(), -1}}, ord);
  Polynomial tt = Polynomial::from_terms(
      {{Monomial::var(VT) * Monomial::var(VTI), 1}, {Monomial::one(), -1}}, ord);
  Polynomial ts = Polynomial::from_terms(
      {{Monomial::one(), 1}, {Monomial::var(VT), -1}, {Monomial::var(VS), -1}},
      ord);
  return {ss, tt, ts};
}

FlagIdeal flag_ideal(const KnotDiagram& d, int k, MonomialOrder ord,
                     CrossingConvention conv) {
  if (k < 0) throw std::invalid_argument("flag_ideal: k must be >= 0");
  FlagIdeal ideal;
  ideal.k = k;
  ideal.ord = ord;
  if (d.classical_count() == 0) {
    ideal.generators = ring_relations(ord);
    return ideal;
  }
  PolyMatrix P = flaq_matrix(d, ord, conv);
  int size = P.cols - k;
  std::vector<Polynomial> gens;
  if (size <= 0)
    gens = {Polynomial::constant(1, ord)};
  else if (size > std::min(P.rows, P.cols))
    gens = {};
  else
    gens = minors(P, size);
  auto rels = ring_relations(ord);
  gens.insert(gens.end(), rels.begin(), rels.end());
  ideal.generators = std::move(gens);
  return ideal;
}

GroebnerBasis flag_invariant(const KnotDiagram& d, int k, MonomialOrder ord,
                             CrossingConvention conv) {
  FlagIdeal fi = flag_ideal(d, k, ord, conv);
  // pre-reduce the generators against each other to shrink the input
  std::vector<Polynomial> gens = fi.generators;
  std::sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
    return Polynomial::compare(a, b) < 0;
  });
  std::vector<Polynomial> kept;
  for (const auto& g : gens) {
    Polynomial r = strong_reduce(g, kept);
    if (r.is_zero()) continue;
    if (r.leading_coeff() < 0) r = -r;
    kept.push_back(std::move(r));
  }
  return canonical_groebner(Ideal::of(std::move(kept), ord));
}

std::vector<Int> specialize_to_t(const Polynomial& p) {
  if (p.is_zero()) return {};
  uint32_t A = 0, B = 0;
  for (const auto& [m, c] : p.terms()) {
    A = std::max(A, m.e[VTI]);
    B = std::max(B, m.e[VSI]);
  }
  // sum of c * t^(e_t + A - e_ti) * (1-t)^(e_s + B - e_si)
  std::vector<Int> out;
  auto bump = [&](size_t deg, const Int& c) {
    if (out.size() <= deg) out.resize(deg + 1, 0);
    out[deg] += c;
  };
  for (const auto& [m, c] : p.terms()) {
    uint32_t pt = m.e[VT] + A - m.e[VTI];
    uint32_t ps = m.e[VS] + B - m.e[VSI];
    // expand (1-t)^ps
    Int binom = 1;
    for (uint32_t j = 0; j <= ps; ++j) {
      Int coef = c * binom;
      if (j % 2) coef = -coef;
      bump(pt + j, coef);
      binom = binom * (ps - j) / (j + 1);
    }
  }
  return trim(std::move(out));
}

std::vector<Int> rem_qt(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r = trim(a);
  std::vector<Int> d = trim(b);
  if (d.empty()) throw std::domain_error("rem_qt: division by zero");
  // fraction-free: multiply remainder through by lc(d) each step
  while (r.size() >= d.size()) {
    Int lead = r.back();
    size_t shift = r.size() - d.size();
    for (size_t i = 0; i < r.size(); ++i) r[i] *= d.back();
    for (size_t i = 0; i < d.size(); ++i) r[i + shift] -= lead * d[i];
    r = trim(std::move(r));
    if (r.empty()) break;
    // keep numbers small
    Int g = 0;
    for (const Int& x : r) g = gcd(g, abs_int(x));
    if (g > 1)
      for (Int& x : r) x /= g;
  }
  return r;
}

std::vector<Int> gcd_qt(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> x = primitive_positive(a);
  std::vector<Int> y = primitive_positive(b);
  while (!y.empty()) {
    std::vector<Int> r = rem_qt(x, y);
    x = std::move(y);
    y = primitive_positive(std::move(r));
  }
  return primitive_positive(std::move(x));
}

Polynomial alexander_poly(const KnotDiagram& d, MonomialOrder ord,
                          CrossingConvention conv) {
  GroebnerBasis basis = flag_invariant(d, 1, ord, conv);
  std::vector<Int> g;
  bool any = false;
  for (const auto& el : basis.elements) {
    std::vector<Int> num = specialize_to_t(el);
    if (num.empty()) continue;
    g = any ? gcd_qt(g, num) : primitive_positive(num);
    any = true;
  }
  if (!any) {
    if (d.classical_count() == 0) return Polynomial::constant(1, ord);
    return Polynomial::zero(ord);
  }
  std::vector<Polynomial::Term> terms;
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0)
      terms.push_back({Monomial::var(VT, static_cast<uint32_t>(i)), g[i]});
  return Polynomial::from_terms(std::move(terms), ord);
}

Int determinant(const KnotDiagram& d, MonomialOrder ord, CrossingConvention conv) {
  Polynomial delta = alexander_poly(d, ord, conv);
  if (delta.is_zero())
    throw std::domain_error("determinant: Alexander polynomial vanishes");
  Int acc = 0;
  for (const auto& [m, c] : delta.terms())
    acc += (m.e[VT] % 2) ? Int(-c) : c;
  return abs_int(acc);
}

bool alexander_symmetric(const std::vector<Int>& coeffs) {
  std::vector<Int> c = trim(coeffs);
  if (c.empty()) return false;
  std::vector<Int> rev(c.rbegin(), c.rend());
  if (c == rev) return true;
  for (Int& x : rev) x = -x;
  return c == rev;
}

}  // namespace flagq
