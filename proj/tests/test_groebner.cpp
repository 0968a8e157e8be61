#include <random>

#include "doctest.h"
#include "flagq/flag.hpp"
#include "flagq/groebner.hpp"

using namespace flagq;

namespace {

const MonomialOrder kOrd = MonomialOrder::grevlex_default();

Polynomial P(const std::string& text) { return Polynomial::parse(text, kOrd); }

GroebnerBasis basis_of(std::vector<std::string> gens) {
  std::vector<Polynomial> ps;
  for (auto& g : gens) ps.push_back(P(g));
  return canonical_groebner(Ideal::of(ps, kOrd));
}

std::vector<std::string> names(const GroebnerBasis& b) {
  std::vector<std::string> out;
  for (const auto& p : b.elements) out.push_back(p.to_string());
  return out;
}

Polynomial random_poly(std::mt19937& rng, int max_terms, int max_deg, int max_coeff) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  std::uniform_int_distribution<uint32_t> pick(0, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Polynomial::Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m.e[pick(rng)] += 1;
    terms.push_back({m, coeff(rng)});
  }
  return Polynomial::from_terms(terms, kOrd);
}

// ---- independent univariate oracle: canonical strong basis of an ideal in
// Z[t] generated by univariate polynomials, via the Hermite normal form of
// the lattice spanned by all shifts t^i * g_j up to a degree bound ----

using UPoly = std::vector<Int>;  // dense, degree 0 first

UPoly to_upoly(const Polynomial& p) {
  UPoly u;
  for (const auto& [m, c] : p.terms()) {
    REQUIRE(m.e[VS] == 0);
    REQUIRE(m.e[VTI] == 0);
    REQUIRE(m.e[VSI] == 0);
    if (u.size() <= m.e[VT]) u.resize(m.e[VT] + 1, 0);
    u[m.e[VT]] = c;
  }
  while (!u.empty() && u.back() == 0) u.pop_back();
  return u;
}

Polynomial from_upoly(const UPoly& u) {
  std::vector<Polynomial::Term> terms;
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) terms.push_back({Monomial::var(VT, static_cast<uint32_t>(i)), u[i]});
  return Polynomial::from_terms(terms, kOrd);
}

// rows as coefficient vectors of length D+1; HNF with pivots at the highest
// degree, off-pivot entries above each pivot reduced to [0, pivot)
std::vector<UPoly> hnf_canonical(const std::vector<UPoly>& gens, int bound) {
  size_t width = bound + 1;
  std::vector<std::vector<Int>> rows;
  for (const auto& g : gens) {
    if (g.empty()) continue;
    for (size_t shift = 0; shift + g.size() <= width; ++shift) {
      std::vector<Int> row(width, 0);
      for (size_t i = 0; i < g.size(); ++i) row[i + shift] = g[i];
      rows.push_back(std::move(row));
    }
  }
  // eliminate column by column from the top degree
  std::vector<std::vector<Int>> pivots(width);
  for (int col = bound; col >= 0; --col) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::vector<Int>> keep;
      std::vector<Int>* piv = pivots[col].empty() ? nullptr : &pivots[col];
      for (auto& row : rows) {
        bool top_is_col = false;
        for (int c = bound; c >= col; --c)
          if (row[c] != 0) {
            top_is_col = c == col;
            break;
          }
        if (!top_is_col) {
          keep.push_back(std::move(row));
          continue;
        }
        if (!piv) {
          pivots[col] = std::move(row);
          if (pivots[col][col] < 0)
            for (auto& x : pivots[col]) x = -x;
          piv = &pivots[col];
          progress = true;
          continue;
        }
        // gcd step between row and pivot at this column
        std::vector<Int>& p = *piv;
        while (row[col] != 0) {
          Int q = p[col] / row[col];
          for (size_t i = 0; i < width; ++i) p[i] -= q * row[i];
          std::swap(p, row);
        }
        if (p[col] < 0)
          for (auto& x : p) x = -x;
        // the residual row now tops out below this column; keep it around
        bool residual = false;
        for (const auto& x : row)
          if (x != 0) residual = true;
        if (residual) keep.push_back(std::move(row));
        progress = true;
      }
      rows = std::move(keep);
    }
  }
  // reduce entries above each pivot into the canonical range
  for (int col = bound; col >= 0; --col) {
    if (pivots[col].empty()) continue;
    for (int c = col - 1; c >= 0; --c) {
      if (pivots[c].empty()) continue;
      Int v = pivots[col][c];
      Int m = pivots[c][c];
      Int r = v % m;
      if (r < 0) r += m;
      Int q = (v - r) / m;
      if (q != 0)
        for (size_t i = 0; i < width; ++i) pivots[col][i] -= q * pivots[c][i];
    }
  }
  // canonical basis: lowest-degree pivot, plus degrees where the leading
  // coefficient properly drops
  std::vector<UPoly> out;
  Int prev = 0;
  for (int col = 0; col <= bound; ++col) {
    if (pivots[col].empty()) continue;
    Int lead = pivots[col][col];
    if (prev == 0 || lead != prev) {
      UPoly u(pivots[col].begin(), pivots[col].begin() + col + 1);
      out.push_back(u);
      prev = lead;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("strong reduction: euclidean remainder") {
  CHECK(strong_reduce(P("3t"), {P("2t")}) == P("t"));
  CHECK(strong_reduce(P("t*s^-1"), {P("s*s^-1 - 1")}) == P("t*s^-1"));
  CHECK(strong_reduce(P("t*t^-1*s"), {P("t*t^-1 - 1")}) == P("s"));
  CHECK(strong_reduce(Polynomial::zero(kOrd), {P("t")}).is_zero());
}

TEST_CASE("single monic generator") {
  CHECK(names(basis_of({"t"})) == std::vector<std::string>{"t"});
}

TEST_CASE("gcd polynomial reaches the coefficient gcd") {
  CHECK(names(basis_of({"2t", "3t"})) == std::vector<std::string>{"t"});
  // 1 is not in <4, 2t> over Z: the degree-0 content stays 4
  CHECK(names(basis_of({"4", "2t"})) == std::vector<std::string>{"4", "2*t"});
}

TEST_CASE("canonicalize drops redundant elements and fixes signs") {
  GroebnerBasis b{{P("t"), P("2t")}, kOrd, false};
  CHECK(names(canonicalize(b)) == std::vector<std::string>{"t"});
  GroebnerBasis c{{P("-t + 1")}, kOrd, false};
  CHECK(names(canonicalize(c)) == std::vector<std::string>{"t - 1"});
}

TEST_CASE("canonical basis of the ring-relations ideal (frozen oracle value)") {
  GroebnerBasis b = basis_of({"t*t^-1 - 1", "s*s^-1 - 1", "1 - t - s"});
  CHECK(names(b) == std::vector<std::string>{
                        "s + t - 1",
                        "t^-1*t - 1",
                        "s^-1*t - s^-1 + 1",
                        "s^-1*t^-1 - s^-1 - t^-1",
                    });
  CHECK(is_strong_groebner(b.elements));
  // canonicalize is idempotent
  GroebnerBasis again = canonicalize(b);
  CHECK(names(again) == names(b));
}

TEST_CASE("weak bases are completed: <2t+1, 3s+1> needs the gcd element") {
  GroebnerBasis b = basis_of({"2t + 1", "3s + 1"});
  bool has_st = false;
  for (const auto& p : b.elements)
    if (p.leading_monomial() == Monomial::var(VS) * Monomial::var(VT)) has_st = true;
  CHECK(has_st);
  CHECK(is_strong_groebner(b.elements));
  CHECK(ideal_member(P("s*t + t - s"), b));
}

TEST_CASE("ideal membership") {
  GroebnerBasis b = basis_of({"s + t - 1", "2t^2 - 3t + 2"});
  CHECK(ideal_member(Polynomial::zero(kOrd), b));
  CHECK(ideal_member(P("s + t - 1") * P("t^5"), b));
  CHECK(!ideal_member(P("1"), b));
}

TEST_CASE("ideal equality") {
  GroebnerBasis b1 = basis_of({"t"});
  GroebnerBasis b2 = basis_of({"2t"});
  CHECK(ideal_equal(b1, b1));
  CHECK(!ideal_equal(b1, b2));
  GroebnerBasis other{{P("t")}, *MonomialOrder::parse("t>s>tinv>sinv"), true};
  CHECK_THROWS_AS(ideal_equal(b1, other), std::invalid_argument);
}

TEST_CASE("random small ideals: soundness, strong property, canonical form") {
  std::mt19937 rng(123456);
  std::uniform_int_distribution<int> ngens(1, 4);
  for (int round = 0; round < 60; ++round) {
    std::vector<Polynomial> gens;
    int n = ngens(rng);
    for (int i = 0; i < n; ++i) {
      Polynomial p = random_poly(rng, 3, 3, 5);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    GroebnerBasis b = canonical_groebner(Ideal::of(gens, kOrd));
    for (const auto& g : gens) CHECK(ideal_member(g, b));
    CHECK(is_strong_groebner(b.elements));
    // canonicalize idempotent
    CHECK(names(canonicalize(b)) == names(b));
    // permutation invariance
    std::vector<Polynomial> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    GroebnerBasis b2 = canonical_groebner(Ideal::of(shuffled, kOrd));
    CHECK(names(b2) == names(b));
    // every basis element certified in the input ideal by the shuffled run
    CHECK(ideal_equal(b, b2));
  }
}

TEST_CASE("univariate ideals agree with the HNF lattice oracle") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> ngens(1, 3), deg(0, 3), coeff(-6, 6);
  for (int round = 0; round < 60; ++round) {
    std::vector<Polynomial> gens;
    std::vector<UPoly> ugens;
    int n = ngens(rng);
    for (int i = 0; i < n; ++i) {
      int d = deg(rng);
      std::vector<Polynomial::Term> terms;
      for (int e = 0; e <= d; ++e)
        terms.push_back({Monomial::var(VT, e), coeff(rng)});
      Polynomial p = Polynomial::from_terms(terms, kOrd);
      if (p.is_zero()) continue;
      gens.push_back(p);
      ugens.push_back(to_upoly(p));
    }
    if (gens.empty()) continue;
    GroebnerBasis b = canonical_groebner(Ideal::of(gens, kOrd));
    int maxdeg = 0, gmax = 0;
    for (const auto& g : b.elements)
      maxdeg = std::max<int>(maxdeg, static_cast<int>(g.leading_monomial().e[VT]));
    for (const auto& g : ugens)
      gmax = std::max<int>(gmax, static_cast<int>(g.size()) - 1);
    // the shift lattice is truncated, so pivots very close to the bound can
    // overstate the leading coefficient; compare up to the computed degree
    // and check the discarded rows are plain members
    std::vector<UPoly> oracle = hnf_canonical(ugens, maxdeg + gmax + 4);
    std::vector<std::string> got = names(b), want;
    for (const auto& u : oracle) {
      if (static_cast<int>(u.size()) - 1 > maxdeg) {
        CHECK(ideal_member(from_upoly(u), b));
        continue;
      }
      want.push_back(from_upoly(u).to_string());
    }
    CHECK(got == want);
  }
}
