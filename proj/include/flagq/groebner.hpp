#ifndef FLAGQ_GROEBNER_HPP
#define FLAGQ_GROEBNER_HPP

#include <vector>

#include "flagq/polyring.hpp"

namespace flagq {

/// Ideal of Z[t, s, t^-1, s^-1] given by generators under a fixed order.
struct Ideal {
  std::vector<Polynomial> generators;  // nonzero, deduplicated
  MonomialOrder ord;

  static Ideal of(std::vector<Polynomial> gens, MonomialOrder ord);
};

/// Strong Groebner basis over Z: every element of the ideal strong-reduces
/// to zero. Canonical form: positive leading coefficients, no element has a
/// term strong-reducible by the others, sorted ascending by (leading
/// monomial, leading coefficient).
struct GroebnerBasis {
  std::vector<Polynomial> elements;
  MonomialOrder ord;
  bool canonical = false;

  json to_json() const;
};

/// Full strong normal form of f modulo G. Each step takes the highest term
/// c*M reducible by some g with lt(g) = b*N, N | M, and replaces c by its
/// least non-negative remainder mod |b|; the reducer with the smallest
/// (|lc|, lm) is used, which settles each monomial in one step.
Polynomial strong_reduce(const Polynomial& f, const std::vector<Polynomial>& G);

/// Buchberger completion over Z processing S-polynomials and GCD-polynomials
/// for all pairs. The result is a (non-minimal) strong Groebner basis.
GroebnerBasis strong_groebner(const Ideal& ideal);

/// Minimalize (drop elements whose leading term is strong-divisible by
/// another's), tail-reduce every element by the rest, normalize leading
/// coefficients positive and sort. Idempotent.
GroebnerBasis canonicalize(const GroebnerBasis& basis);

/// Convenience: completion followed by canonicalization.
GroebnerBasis canonical_groebner(const Ideal& ideal);

bool ideal_member(const Polynomial& f, const GroebnerBasis& basis);

/// True iff the two bases generate the same ideal (mutual reduction to zero).
/// Throws std::invalid_argument when the orders differ.
bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b);

/// Post-hoc strong Groebner test: all S- and G-polynomials of the basis
/// reduce to zero. Used by the soundness test suites.
bool is_strong_groebner(const std::vector<Polynomial>& G);

namespace detail {
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);
/// GCD-polynomial with leading term gcd(lc f, lc g) * lcm(lm f, lm g);
/// zero when one leading coefficient divides the other (pair is redundant).
Polynomial g_polynomial(const Polynomial& f, const Polynomial& g);
}  // namespace detail

}  // namespace flagq

#endif
