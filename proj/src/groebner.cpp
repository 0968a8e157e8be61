#include "flagq/groebner.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace flagq {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Polynomial normalize_sign(Polynomial p) {
  if (!p.is_zero() && p.leading_coeff() < 0) return -p;
  return p;
}

// deterministic order used to sort basis elements and pick reducers
bool element_less(const Polynomial& a, const Polynomial& b) {
  const auto& ord = a.order();
  if (auto c = ord.cmp(a.leading_monomial(), b.leading_monomial()); c != 0)
    return c < 0;
  if (a.leading_coeff() != b.leading_coeff())
    return a.leading_coeff() < b.leading_coeff();
  return Polynomial::compare(a, b) < 0;
}

struct Reducer {
  Int abs_lc;
  const Polynomial* poly;
};

std::vector<Reducer> make_reducers(const std::vector<Polynomial>& G) {
  std::vector<Reducer> red;
  red.reserve(G.size());
  for (const auto& g : G)
    if (!g.is_zero()) red.push_back({abs_int(g.leading_coeff()), &g});
  std::sort(red.begin(), red.end(), [](const Reducer& a, const Reducer& b) {
    if (a.abs_lc != b.abs_lc) return a.abs_lc < b.abs_lc;
    return element_less(*a.poly, *b.poly);
  });
  return red;
}

Polynomial reduce_with(const Polynomial& f, const std::vector<Reducer>& red) {
  Polynomial r = f;
  size_t i = 0;
  while (i < r.terms().size()) {
    const Monomial m = r.terms()[i].first;
    const Int c = r.terms()[i].second;
    bool acted = false;
    for (const auto& g : red) {
      auto q = m.divide_by(g.poly->leading_monomial());
      if (!q) continue;
      // least non-negative remainder of c mod |b|
      Int rem = c % g.abs_lc;
      if (rem < 0) rem += g.abs_lc;
      if (rem == c) continue;
      Int k = (c - rem) / g.poly->leading_coeff();
      r.add_scaled(*g.poly, -k, *q);
      acted = true;
      break;
    }
    if (!acted) ++i;
    // after reducing by the smallest applicable |lc| the monomial is settled:
    // if it vanished the same index now holds the next monomial, else advance
    else if (i < r.terms().size() && r.terms()[i].first == m)
      ++i;
  }
  return r;
}

}  // namespace

Ideal Ideal::of(std::vector<Polynomial> gens, MonomialOrder ord) {
  Ideal ideal{{}, ord};
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    Polynomial p = normalize_sign(g.order() == ord ? g : g.with_order(ord));
    if (std::find(ideal.generators.begin(), ideal.generators.end(), p) ==
        ideal.generators.end())
      ideal.generators.push_back(std::move(p));
  }
  return ideal;
}

Polynomial strong_reduce(const Polynomial& f, const std::vector<Polynomial>& G) {
  return reduce_with(f, make_reducers(G));
}

namespace detail {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& [mf, cf] = f.leading_term();
  const auto& [mg, cg] = g.leading_term();
  Monomial l = Monomial::lcm(mf, mg);
  Int c = lcm(abs_int(cf), abs_int(cg));
  Polynomial r = f.mul_term(c / cf, *l.divide_by(mf));
  r.add_scaled(g, -(c / cg), *l.divide_by(mg));
  return r;
}

Polynomial g_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& [mf, cf] = f.leading_term();
  const auto& [mg, cg] = g.leading_term();
  Int u, v;
  Int d = gcd(cf, cg);
  if (d == abs_int(cf) || d == abs_int(cg))
    return Polynomial::zero(f.order());
  // extended gcd
  Int r0 = cf, r1 = cg, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) { s0 = -s0; t0 = -t0; }
  Monomial l = Monomial::lcm(mf, mg);
  Polynomial r = f.mul_term(s0, *l.divide_by(mf));
  r.add_scaled(g, t0, *l.divide_by(mg));
  return r;
}

}  // namespace detail

GroebnerBasis strong_groebner(const Ideal& ideal) {
  std::vector<Polynomial> G;
  for (const auto& g : ideal.generators) G.push_back(normalize_sign(g));

  struct Pair { size_t i, j; Monomial lcm; };
  std::deque<Pair> pairs;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i)
      pairs.push_back({i, j, Monomial::lcm(G[i].leading_monomial(),
                                           G[j].leading_monomial())});
  };
  for (size_t j = 0; j < G.size(); ++j) push_pairs(j);

  const MonomialOrder& ord = ideal.ord;
  while (!pairs.empty()) {
    // normal selection: minimal lcm monomial first
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      if (auto c = ord.cmp(it->lcm, best->lcm); c < 0) best = it;
      else if (c == 0 && std::tie(it->i, it->j) < std::tie(best->i, best->j))
        best = it;
    }
    Pair pr = *best;
    pairs.erase(best);

    const Polynomial& f = G[pr.i];
    const Polynomial& g = G[pr.j];
    std::vector<Polynomial> candidates;
    bool units = f.leading_coeff() == 1 && g.leading_coeff() == 1;
    bool coprime_mons = f.leading_monomial().coprime(g.leading_monomial());
    if (!(units && coprime_mons))
      candidates.push_back(detail::s_polynomial(f, g));
    Polynomial gp = detail::g_polynomial(f, g);
    if (!gp.is_zero()) candidates.push_back(std::move(gp));

    for (auto& cand : candidates) {
      Polynomial h = normalize_sign(strong_reduce(cand, G));
      if (h.is_zero()) continue;
      G.push_back(std::move(h));
      push_pairs(G.size() - 1);
      if (G.size() > 20000)
        throw std::runtime_error("groebner basis size limit exceeded");
    }
  }
  return GroebnerBasis{std::move(G), ideal.ord, false};
}

GroebnerBasis canonicalize(const GroebnerBasis& basis) {
  std::vector<Polynomial> work;
  for (const auto& g : basis.elements)
    if (!g.is_zero()) work.push_back(normalize_sign(g));
  std::sort(work.begin(), work.end(), element_less);
  work.erase(std::unique(work.begin(), work.end()), work.end());

  // minimalize: keep an element only if no kept element's leading term
  // strong-divides its own (divisor monomial + divisor coefficient)
  std::vector<Polynomial> kept;
  for (const auto& g : work) {
    bool redundant = false;
    for (const auto& h : kept) {
      if (h.leading_monomial().divides(g.leading_monomial()) &&
          g.leading_coeff() % h.leading_coeff() == 0) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(g);
  }

  // tail-reduce each element by the others until stable
  for (int round = 0; round < 64; ++round) {
    bool stable = true;
    std::vector<Polynomial> next;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<Polynomial> others;
      others.reserve(kept.size() - 1);
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      Polynomial r = normalize_sign(strong_reduce(kept[i], others));
      if (!(r == kept[i])) stable = false;
      if (!r.is_zero()) next.push_back(std::move(r));
    }
    kept = std::move(next);
    if (stable) break;
  }
  std::sort(kept.begin(), kept.end(), element_less);
  return GroebnerBasis{std::move(kept), basis.ord, true};
}

GroebnerBasis canonical_groebner(const Ideal& ideal) {
  return canonicalize(strong_groebner(ideal));
}

bool ideal_member(const Polynomial& f, const GroebnerBasis& basis) {
  return strong_reduce(f, basis.elements).is_zero();
}

bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (!(a.ord == b.ord))
    throw std::invalid_argument("ideal_equal: monomial orders differ");
  for (const auto& f : a.elements)
    if (!ideal_member(f, b)) return false;
  for (const auto& g : b.elements)
    if (!ideal_member(g, a)) return false;
  return true;
}

bool is_strong_groebner(const std::vector<Polynomial>& G) {
  for (size_t i = 0; i < G.size(); ++i) {
    for (size_t j = i + 1; j < G.size(); ++j) {
      if (!strong_reduce(detail::s_polynomial(G[i], G[j]), G).is_zero())
        return false;
      Polynomial gp = detail::g_polynomial(G[i], G[j]);
      if (!gp.is_zero() && !strong_reduce(gp, G).is_zero()) return false;
    }
  }
  return true;
}

json GroebnerBasis::to_json() const {
  json j;
  j["order"] = ord.to_string();
  j["canonical"] = canonical;
  j["count"] = elements.size();
  json arr = json::array();
  for (const auto& g : elements) arr.push_back(g.to_json());
  j["elements"] = arr;
  return j;
}

}  // namespace flagq
