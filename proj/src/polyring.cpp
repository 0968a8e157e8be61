#include "flagq/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace flagq {

namespace {

const char* var_name(unsigned v) {
  switch (v) {
    case VT: return "t";
    case VS: return "s";
    case VTI: return "t^-1";
    case VSI: return "s^-1";
  }
  return "?";
}

}  // namespace

std::optional<MonomialOrder> MonomialOrder::parse(std::string_view spec) {
  MonomialOrder ord;
  size_t pos = 0;
  int slot = 0;
  bool seen[4] = {};
  while (pos < spec.size() && slot < 4) {
    size_t next = spec.find('>', pos);
    std::string_view tok = spec.substr(pos, next == spec.npos ? spec.npos : next - pos);
    unsigned v;
    if (tok == "t") v = VT;
    else if (tok == "s") v = VS;
    else if (tok == "tinv" || tok == "t^-1") v = VTI;
    else if (tok == "sinv" || tok == "s^-1") v = VSI;
    else return std::nullopt;
    if (seen[v]) return std::nullopt;
    seen[v] = true;
    ord.prec[slot++] = static_cast<uint8_t>(v);
    if (next == spec.npos) { pos = spec.size(); break; }
    pos = next + 1;
  }
  if (slot != 4 || pos != spec.size()) return std::nullopt;
  return ord;
}

std::string MonomialOrder::to_string() const {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (i) out += '>';
    switch (prec[i]) {
      case VT: out += "t"; break;
      case VS: out += "s"; break;
      case VTI: out += "tinv"; break;
      case VSI: out += "sinv"; break;
    }
  }
  return out;
}

Polynomial Polynomial::constant(Int c, MonomialOrder ord) {
  return term(std::move(c), Monomial::one(), ord);
}

Polynomial Polynomial::term(Int c, Monomial m, MonomialOrder ord) {
  Polynomial p(ord);
  if (c != 0) p.terms_.emplace_back(m, std::move(c));
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms, MonomialOrder ord) {
  Polynomial p(ord);
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ord.cmp(a.first, b.first) > 0;
  });
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    if (!p.terms_.empty() && p.terms_.back().first == m) {
      p.terms_.back().second += c;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else {
      p.terms_.emplace_back(m, std::move(c));
    }
  }
  return p;
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.front();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(ord_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && ord_.cmp(terms_[i].first, o.terms_[j].first) > 0)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() ||
               ord_.cmp(o.terms_[j].first, terms_[i].first) > 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Int c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(terms_[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ord_);
  r.terms_.reserve(terms_.size());
  for (auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  auto lt = [&](const Monomial& a, const Monomial& b) { return ord_.cmp(a, b) > 0; };
  std::map<Monomial, Int, decltype(lt)> acc(lt);
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
  Polynomial r(ord_);
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace_back(m, std::move(c));
  return r;
}

Polynomial Polynomial::scaled(const Int& c) const {
  if (c == 0) return Polynomial(ord_);
  Polynomial r(ord_);
  r.terms_.reserve(terms_.size());
  for (auto& [m, k] : terms_) r.terms_.emplace_back(m, k * c);
  return r;
}

Polynomial Polynomial::mul_term(const Int& c, const Monomial& m) const {
  if (c == 0) return Polynomial(ord_);
  Polynomial r(ord_);
  r.terms_.reserve(terms_.size());
  for (auto& [mm, k] : terms_) r.terms_.emplace_back(mm * m, k * c);
  return r;
}

void Polynomial::add_scaled(const Polynomial& g, const Int& c, const Monomial& m) {
  if (c == 0 || g.is_zero()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + g.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      merged.push_back(std::move(terms_[i++]));
      continue;
    }
    Monomial gm = g.terms_[j].first * m;
    if (i == terms_.size()) {
      merged.emplace_back(gm, g.terms_[j].second * c);
      ++j;
    } else if (auto o = ord_.cmp(terms_[i].first, gm); o > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (o < 0) {
      merged.emplace_back(gm, g.terms_[j].second * c);
      ++j;
    } else {
      Int k = terms_[i].second + g.terms_[j].second * c;
      if (k != 0) merged.emplace_back(gm, std::move(k));
      ++i, ++j;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0; });
  terms_ = std::move(merged);
}

Polynomial Polynomial::with_order(MonomialOrder ord) const {
  Polynomial r(ord);
  r.terms_ = terms_;
  std::sort(r.terms_.begin(), r.terms_.end(), [&](const Term& a, const Term& b) {
    return ord.cmp(a.first, b.first) > 0;
  });
  return r;
}

std::strong_ordering Polynomial::compare(const Polynomial& a, const Polynomial& b) {
  const auto& ord = a.ord_;
  for (size_t i = 0; i < std::min(a.terms_.size(), b.terms_.size()); ++i) {
    if (auto c = ord.cmp(a.terms_[i].first, b.terms_[i].first); c != 0) return c;
    const Int& ca = a.terms_[i].second;
    const Int& cb = b.terms_[i].second;
    if (ca != cb)
      return ca < cb ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Int Polynomial::coeff(const Monomial& m) const {
  for (auto& [mm, c] : terms_)
    if (mm == m) return c;
  return 0;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int r = 0; r < 4; ++r) {
      unsigned v = ord_.prec[r];
      uint32_t ex = m.e[v];
      if (!ex) continue;
      if (!mono.empty()) mono += '*';
      if (v == VTI || v == VSI) {
        mono += (v == VTI) ? "t^-" : "s^-";
        mono += std::to_string(ex);
      } else {
        mono += var_name(v);
        if (ex > 1) mono += "^" + std::to_string(ex);
      }
    }
    if (mono.empty()) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += mono;
    }
  }
  return out;
}

Polynomial Polynomial::parse(std::string_view text, MonomialOrder ord) {
  std::string src;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) src += ch;
  std::vector<Term> terms;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(i) + ": " + why);
  };
  if (src.empty()) fail("empty input");
  while (i < src.size()) {
    int sign = 1;
    while (i < src.size() && (src[i] == '+' || src[i] == '-')) {
      if (src[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= src.size()) fail("dangling sign");
    Int coef = 1;
    bool saw_digits = false;
    if (std::isdigit(static_cast<unsigned char>(src[i]))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      coef = Int(src.substr(i, j - i));
      saw_digits = true;
      i = j;
    }
    Monomial m;
    bool saw_var = false;
    while (i < src.size() && (src[i] == 't' || src[i] == 's' || src[i] == '*')) {
      if (src[i] == '*') { ++i; continue; }
      char v = src[i++];
      long long ex = 1;
      if (i < src.size() && src[i] == '^') {
        ++i;
        bool neg = false;
        if (i < src.size() && src[i] == '-') { neg = true; ++i; }
        if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
          fail("exponent expected");
        size_t j = i;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        ex = std::stoll(src.substr(i, j - i));
        if (neg) ex = -ex;
        i = j;
      }
      unsigned idx = (v == 't') ? VT : VS;
      if (ex < 0) m.e[idx + 2] += static_cast<uint32_t>(-ex);
      else m.e[idx] += static_cast<uint32_t>(ex);
      saw_var = true;
    }
    if (!saw_digits && !saw_var) fail("term expected");
    terms.emplace_back(m, sign < 0 ? Int(-coef) : coef);
  }
  return from_terms(std::move(terms), ord);
}

json Polynomial::to_json() const {
  json arr = json::array();
  static const Int kMax = Int(std::numeric_limits<int64_t>::max());
  static const Int kMin = Int(std::numeric_limits<int64_t>::min());
  for (auto& [m, c] : terms_) {
    json coeff;
    if (c >= kMin && c <= kMax) coeff = static_cast<int64_t>(c);
    else coeff = c.str();
    arr.push_back(json::array(
        {coeff, json::array({m.e[0], m.e[1], m.e[2], m.e[3]})}));
  }
  return arr;
}

Polynomial Polynomial::from_json(const json& j, MonomialOrder ord) {
  std::vector<Term> terms;
  for (auto& el : j) {
    Int c = el.at(0).is_string() ? Int(el.at(0).get<std::string>())
                                 : Int(el.at(0).get<int64_t>());
    Monomial m;
    for (int i = 0; i < 4; ++i) m.e[i] = el.at(1).at(i).get<uint32_t>();
    terms.emplace_back(m, std::move(c));
  }
  return from_terms(std::move(terms), ord);
}

}  // namespace flagq
