#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bruhat/errors.hpp"
#include "bruhat/poset.hpp"

namespace bruhat::flags {

using Json = nlohmann::ordered_json;

/* A word over a two-letter alphabet, packed into a machine word. Letter i
   (0 = leftmost) sits at bit len-1-i, so that for equal lengths the numeric
   order of `bits` is the lexicographic order with letter 0 < letter 1. */
struct Word {
  std::uint32_t len = 0;
  std::uint64_t bits = 0;

  static constexpr std::uint32_t max_len = 63;

  int letter(std::uint32_t i) const { return (bits >> (len - 1 - i)) & 1u; }

  Word append(int letter) const {
    if (len >= max_len) throw ResourceCapError("word length cap");
    return Word{len + 1, (bits << 1) | static_cast<std::uint64_t>(letter)};
  }

  std::vector<int> letters() const {
    std::vector<int> out(len);
    for (std::uint32_t i = 0; i < len; ++i) out[i] = letter(i);
    return out;
  }

  static Word of(const std::vector<int>& letters) {
    Word w;
    for (int l : letters) w = w.append(l);
    return w;
  }

  bool operator==(const Word&) const = default;

  /* Lexicographic with letter 0 < letter 1; a proper prefix comes first. */
  bool lex_less(const Word& o) const {
    std::uint32_t n = len < o.len ? len : o.len;
    for (std::uint32_t i = 0; i < n; ++i)
      if (letter(i) != o.letter(i)) return letter(i) < o.letter(i);
    return len < o.len;
  }
};

struct AbAlphabet {
  static constexpr char names[2] = {'a', 'b'};
  static int degree(const Word& w) { return static_cast<int>(w.len); }
};

struct CdAlphabet {
  static constexpr char names[2] = {'c', 'd'};  // deg c = 1, deg d = 2
  static int degree(const Word& w) {
    return static_cast<int>(w.len) + __builtin_popcountll(w.bits);
  }
};

template <class Alphabet>
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    int da = Alphabet::degree(a), db = Alphabet::degree(b);
    if (da != db) return da < db;
    return a.lex_less(b);
  }
};

/* Sparse polynomial in noncommuting variables with 64-bit checked integer
   coefficients, terms kept in degree-lex order. */
template <class Alphabet>
class Polynomial {
 public:
  using Terms = std::map<Word, long long, DegLexLess<Alphabet>>;

  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial one() { return monomial(Word{}); }
  static Polynomial monomial(Word w, long long c = 1) {
    Polynomial p;
    if (c != 0) p.terms_[w] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long long coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  /* Degree of a nonzero homogeneous polynomial; -1 for zero. Throws on
     inhomogeneous input. */
  int degree() const {
    if (terms_.empty()) return -1;
    int d = Alphabet::degree(terms_.begin()->first);
    for (const auto& [w, c] : terms_)
      if (Alphabet::degree(w) != d) throw std::logic_error("inhomogeneous polynomial");
    return d;
  }

  void add_term(const Word& w, long long c) {
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
      terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, checked_mul(c, -1));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        if (wa.len + wb.len > Word::max_len) throw ResourceCapError("word length cap");
        Word w{wa.len + wb.len, (wa.bits << wb.len) | wb.bits};
        out.add_term(w, checked_mul(ca, cb));
      }
    return out;
  }

  Polynomial scaled(long long k) const {
    Polynomial out;
    for (const auto& [w, c] : terms_) out.add_term(w, checked_mul(c, k));
    return out;
  }

  /* Exact halving; throws on an odd coefficient. */
  Polynomial halved() const {
    Polynomial out;
    for (const auto& [w, c] : terms_) {
      if (c % 2 != 0) throw std::logic_error("coefficient not even");
      out.add_term(w, c / 2);
    }
    return out;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  static std::string word_str(const Word& w) {
    if (w.len == 0) return "1";
    std::string s;
    for (std::uint32_t i = 0; i < w.len; ++i) s += Alphabet::names[w.letter(i)];
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      long long a = c < 0 ? -c : c;
      if (a != 1 || w.len == 0) s += std::to_string(a);
      if (w.len > 0) s += word_str(w);
    }
    return s;
  }

  Json to_json(const std::string& basis) const {
    Json terms = Json::object();
    for (const auto& [w, c] : terms_) terms[word_str(w)] = c;
    return Json{{"basis", basis}, {"degree", is_zero() ? -1 : degree()}, {"terms", terms}};
  }

 private:
  Terms terms_;
};

using AbPolynomial = Polynomial<AbAlphabet>;
using CdPolynomial = Polynomial<CdAlphabet>;

inline Json ab_json(const AbPolynomial& p) { return p.to_json("ab"); }
inline Json cd_json(const CdPolynomial& p) { return p.to_json("cd"); }

/* Flag vector of a bounded graded poset of rank n+1: value[mask] is indexed
   by the set of proper ranks 1..n, bit r-1 standing for rank r. */
struct FlagVector {
  int n = 0;
  std::vector<long long> value;  // size 1 << n

  long long at(std::uint32_t mask) const { return value.at(mask); }
};

FlagVector flag_f(const poset::GradedPoset& p);   // chains by exact rank set
FlagVector flag_h(const FlagVector& f);           // inclusion-exclusion transform

AbPolynomial flag_index(const FlagVector& f);     // sum of f(S) u_S

/* Substitute a -> a-b, b -> b. */
AbPolynomial substitute_a_minus_b(const AbPolynomial& p);

/* ab-index from the flag h-vector; cross-checked against the substitution
   identity applied to the flag index. */
AbPolynomial ab_index(const poset::GradedPoset& p);

/* Triangular elimination in deg-lex order; throws NotInCdSpanError when a
   residue survives. */
CdPolynomial ab_to_cd(const AbPolynomial& p);
AbPolynomial cd_to_ab(const CdPolynomial& p);     // c -> a+b, d -> ab+ba

CdPolynomial cd_index(const poset::GradedPoset& p);

/* The derivation with c -> d, d -> dc, extended by the Leibniz rule. */
CdPolynomial cd_derivation(const CdPolynomial& p);

CdPolynomial pyramid_cd(const CdPolynomial& psi);  // c*psi + derivation(psi)

/* psi + derivation(flank) where flank is the cd-index of the upper interval
   over the shaved atom; degrees must differ by one. */
CdPolynomial shave_cd(const CdPolynomial& psi, const CdPolynomial& flank);

/* Coproduct forms; both enumerate the sub-interval cd-indices of p directly
   and halve an even polynomial. */
CdPolynomial pyramid_cd_sum(const poset::GradedPoset& p);
CdPolynomial shave_cd_sum(const poset::GradedPoset& p, int atom);

/* whole - below*d*above, with degree bookkeeping (rejects improper data). */
CdPolynomial zip_cd(const CdPolynomial& whole, const CdPolynomial& below,
                    const CdPolynomial& above);
AbPolynomial zip_ab(const AbPolynomial& whole, const AbPolynomial& below,
                    const AbPolynomial& above);
/* Flag-index level: subtract below * (2bb+ab+ba) * above. */
AbPolynomial zip_flag_index(const AbPolynomial& whole, const AbPolynomial& below,
                            const AbPolynomial& above);

/* Number of cd-words of the given ab-degree, by direct enumeration. Equals
   the Fibonacci numbers: degree n-1 gives F_n with F_1 = F_2 = 1. */
long long cd_monomial_count(int degree);
long long fibonacci(int n);

}  // namespace bruhat::flags
