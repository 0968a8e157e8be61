#ifndef FLAGQ_POLYRING_HPP
#define FLAGQ_POLYRING_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace flagq {

using Int = boost::multiprecision::cpp_int;
using json = nlohmann::json;

/// Variable indices in Z[t, s, t^-1, s^-1]. The inverse variables are
/// independent formal variables; nothing cancels until the ring relations
/// t*t^-1 - 1 and s*s^-1 - 1 are imposed as ideal generators.
enum Var : unsigned { VT = 0, VS = 1, VTI = 2, VSI = 3 };

/// Monomial = exponent vector over the four variables.
struct Monomial {
  std::array<uint32_t, 4> e{0, 0, 0, 0};

  static Monomial one() { return {}; }
  static Monomial var(Var v, uint32_t k = 1) {
    Monomial m;
    m.e[v] = k;
    return m;
  }

  uint64_t degree() const {
    return uint64_t{e[0]} + e[1] + e[2] + e[3];
  }
  bool is_one() const { return e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  /// Exact division; nullopt if any exponent would go negative.
  std::optional<Monomial> divide_by(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < 4; ++i) {
      if (e[i] < o.e[i]) return std::nullopt;
      r.e[i] = e[i] - o.e[i];
    }
    return r;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < 4; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  bool coprime(const Monomial& o) const {
    for (int i = 0; i < 4; ++i)
      if (e[i] && o.e[i]) return false;
    return true;
  }
  bool operator==(const Monomial&) const = default;
};

/// Graded reverse lexicographic order with a configurable precedence
/// permutation. Default encodes t < s < t^-1 < s^-1, i.e. precedence
/// s^-1 > t^-1 > s > t.
struct MonomialOrder {
  std::array<uint8_t, 4> prec{VSI, VTI, VS, VT};  // highest precedence first

  static MonomialOrder grevlex_default() { return {}; }
  /// Parses "sinv>tinv>s>t" style precedence strings.
  static std::optional<MonomialOrder> parse(std::string_view spec);
  std::string to_string() const;

  /// Grevlex: higher total degree wins; on ties the rightmost nonzero entry
  /// of exp(a)-exp(b), variables arranged from highest to lowest precedence,
  /// decides (negative means a is greater).
  std::strong_ordering cmp(const Monomial& a, const Monomial& b) const {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (int r = 3; r >= 0; --r) {
      uint32_t ea = a.e[prec[r]], eb = b.e[prec[r]];
      if (ea != eb) return ea < eb ? std::strong_ordering::greater
                                   : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }
  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
  bool operator==(const MonomialOrder&) const = default;
};

/// Sparse polynomial with arbitrary-precision integer coefficients.
/// Terms are kept sorted descending under the attached order, so the leading
/// term is terms().front().
class Polynomial {
 public:
  using Term = std::pair<Monomial, Int>;

  explicit Polynomial(MonomialOrder ord = MonomialOrder::grevlex_default())
      : ord_(ord) {}
  static Polynomial zero(MonomialOrder ord) { return Polynomial(ord); }
  static Polynomial constant(Int c, MonomialOrder ord);
  static Polynomial term(Int c, Monomial m, MonomialOrder ord);
  /// From unsorted term list; merges duplicates, drops zeros.
  static Polynomial from_terms(std::vector<Term> terms, MonomialOrder ord);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const MonomialOrder& order() const { return ord_; }
  size_t size() const { return terms_.size(); }

  /// Leading (maximal) term under the attached order. Precondition: nonzero.
  const Term& leading_term() const;
  const Int& leading_coeff() const { return leading_term().second; }
  const Monomial& leading_monomial() const { return leading_term().first; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const {
    return ord_ == o.ord_ && terms_ == o.terms_;
  }

  Polynomial scaled(const Int& c) const;
  /// f * (c * m), a single-term multiple.
  Polynomial mul_term(const Int& c, const Monomial& m) const;
  /// In-place f += c * m * g. The workhorse of strong reduction.
  void add_scaled(const Polynomial& g, const Int& c, const Monomial& m);

  /// Re-sorts the terms under a different order.
  Polynomial with_order(MonomialOrder ord) const;

  /// Total deterministic order on polynomials sharing an order: compares
  /// (monomial, coefficient) term lists lexicographically from the top.
  static std::strong_ordering compare(const Polynomial& a, const Polynomial& b);

  /// Coefficient of a specific monomial (0 if absent).
  Int coeff(const Monomial& m) const;

  /// Rendering in the form "s^-1*t^-1 - s^-1 - t^-1"; inverse variables print
  /// as negative powers, factors ordered by descending precedence.
  std::string to_string() const;
  /// Parses the same grammar; whitespace-insensitive, '*' optional.
  static Polynomial parse(std::string_view text, MonomialOrder ord);

  /// JSON: [[coeff, [e_t, e_s, e_tinv, e_sinv]], ...] sorted descending.
  /// Coefficients emit as numbers when they fit in int64, else as strings.
  json to_json() const;
  static Polynomial from_json(const json& j, MonomialOrder ord);

 private:
  MonomialOrder ord_;
  std::vector<Term> terms_;  // sorted descending, no zero coefficients
};

}  // namespace flagq

#endif
