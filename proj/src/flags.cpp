#include "bruhat/flags.hpp"

#include <algorithm>
#include <stdexcept>

namespace bruhat::flags {

FlagVector flag_f(const poset::GradedPoset& p) {
  if (!p.has_bounds()) throw std::invalid_argument("flag vectors need a bounded poset");
  int n = p.height() - 1;  // number of proper ranks
  if (n < 0) throw std::invalid_argument("poset rank must be at least 1");
  if (n > 25) throw ResourceCapError("flag vector rank cap");

  std::vector<std::vector<int>> levels(n + 1);
  for (int x = 0; x < p.size(); ++x)
    if (x != p.bottom() && x != p.top()) levels[p.rank(x)].push_back(x);

  // cnt[x][m]: chains through proper ranks with top element x, where m lists
  // the ranks below x (bit r-1 for rank r). Build upward by rank.
  std::vector<std::vector<long long>> cnt(p.size());
  for (int r = 1; r <= n; ++r)
    for (int x : levels[r]) {
      auto& cx = cnt[x];
      cx.assign(std::size_t{1} << (r - 1), 0);
      cx[0] = 1;
      for (int t = 1; t < r; ++t)
        for (int y : levels[t]) {
          if (!p.less(y, x)) continue;
          const auto& cy = cnt[y];
          std::uint32_t top = 1u << (t - 1);
          for (std::uint32_t sub = 0; sub < cy.size(); ++sub)
            if (cy[sub] != 0) cx[sub | top] = checked_add(cx[sub | top], cy[sub]);
        }
    }

  FlagVector f;
  f.n = n;
  f.value.assign(std::size_t{1} << n, 0);
  f.value[0] = 1;
  for (std::uint32_t mask = 1; mask < f.value.size(); ++mask) {
    int t = 31 - __builtin_clz(mask);  // highest set bit: top rank is t+1
    std::uint32_t rest = mask ^ (1u << t);
    long long acc = 0;
    for (int x : levels[t + 1]) acc = checked_add(acc, cnt[x][rest]);
    f.value[mask] = acc;
  }
  return f;
}

FlagVector flag_h(const FlagVector& f) {
  FlagVector h = f;
  for (int b = 0; b < h.n; ++b)
    for (std::uint32_t mask = 0; mask < h.value.size(); ++mask)
      if (mask & (1u << b))
        h.value[mask] = checked_add(h.value[mask], -h.value[mask ^ (1u << b)]);
  return h;
}

static Word mask_word(std::uint32_t mask, int n) {
  Word w;
  for (int r = 1; r <= n; ++r) w = w.append((mask >> (r - 1)) & 1u);
  return w;
}

AbPolynomial flag_index(const FlagVector& f) {
  AbPolynomial out;
  for (std::uint32_t mask = 0; mask < f.value.size(); ++mask)
    out.add_term(mask_word(mask, f.n), f.value[mask]);
  return out;
}

AbPolynomial substitute_a_minus_b(const AbPolynomial& p) {
  AbPolynomial out;
  AbPolynomial a_minus_b =
      AbPolynomial::monomial(Word{1, 0}) - AbPolynomial::monomial(Word{1, 1});
  AbPolynomial b = AbPolynomial::monomial(Word{1, 1});
  for (const auto& [w, c] : p.terms()) {
    AbPolynomial acc = AbPolynomial::monomial(Word{}, c);
    for (std::uint32_t i = 0; i < w.len; ++i) acc = acc * (w.letter(i) ? b : a_minus_b);
    out += acc;
  }
  return out;
}

AbPolynomial ab_index(const poset::GradedPoset& p) {
  FlagVector f = flag_f(p);
  AbPolynomial psi = flag_index(flag_h(f));
  if (psi != substitute_a_minus_b(flag_index(f)))
    throw std::logic_error("flag transform disagrees with the a -> a-b substitution");
  return psi;
}

AbPolynomial cd_to_ab(const CdPolynomial& p) {
  AbPolynomial out;
  AbPolynomial c = AbPolynomial::monomial(Word{1, 0}) + AbPolynomial::monomial(Word{1, 1});
  AbPolynomial d = AbPolynomial::monomial(Word{2, 0b01}) + AbPolynomial::monomial(Word{2, 0b10});
  for (const auto& [w, k] : p.terms()) {
    AbPolynomial acc = AbPolynomial::monomial(Word{}, k);
    for (std::uint32_t i = 0; i < w.len; ++i) acc = acc * (w.letter(i) ? d : c);
    out += acc;
  }
  return out;
}

CdPolynomial ab_to_cd(const AbPolynomial& p) {
  AbPolynomial rem = p;
  CdPolynomial out;
  while (!rem.is_zero()) {
    const auto& [w, k] = *rem.terms().begin();
    // The deg-lex least ab-word of a cd-monomial's expansion spells it out:
    // each c contributes a, each d contributes ab.
    Word m;
    std::uint32_t i = 0;
    while (i < w.len) {
      if (w.letter(i) == 1)
        throw NotInCdSpanError("not in the cd span; leading residue " +
                               AbPolynomial::word_str(w));
      if (i + 1 < w.len && w.letter(i + 1) == 1) {
        m = m.append(1);
        i += 2;
      } else {
        m = m.append(0);
        i += 1;
      }
    }
    out.add_term(m, k);
    rem -= cd_to_ab(CdPolynomial::monomial(m, k));
  }
  return out;
}

CdPolynomial cd_index(const poset::GradedPoset& p) { return ab_to_cd(ab_index(p)); }

CdPolynomial cd_derivation(const CdPolynomial& p) {
  CdPolynomial out;
  for (const auto& [w, k] : p.terms()) {
    auto letters = w.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      std::vector<int> repl = letters;
      if (letters[i] == 0) {
        repl[i] = 1;  // c -> d
      } else {
        repl[i] = 1;  // d -> dc
        repl.insert(repl.begin() + i + 1, 0);
      }
      out.add_term(Word::of(repl), k);
    }
  }
  return out;
}

CdPolynomial pyramid_cd(const CdPolynomial& psi) {
  return CdPolynomial::monomial(Word{1, 0}) * psi + cd_derivation(psi);
}

CdPolynomial shave_cd(const CdPolynomial& psi, const CdPolynomial& flank) {
  if (psi.is_zero() || flank.is_zero())
    throw std::invalid_argument("shaving needs nonzero cd-indices");
  if (psi.degree() != flank.degree() + 1)
    throw std::invalid_argument("flank degree must be one below the poset degree");
  return psi + cd_derivation(flank);
}

CdPolynomial pyramid_cd_sum(const poset::GradedPoset& p) {
  CdPolynomial psi = cd_index(p);
  CdPolynomial c = CdPolynomial::monomial(Word{1, 0});
  CdPolynomial d = CdPolynomial::monomial(Word{1, 1});
  CdPolynomial acc = psi * c + c * psi;
  for (int x = 0; x < p.size(); ++x) {
    if (x == p.bottom() || x == p.top()) continue;
    CdPolynomial below = cd_index(closed_interval(p, p.bottom(), x).poset);
    CdPolynomial above = cd_index(closed_interval(p, x, p.top()).poset);
    acc += below * d * above;
  }
  return acc.halved();
}

CdPolynomial shave_cd_sum(const poset::GradedPoset& p, int atom) {
  if (!p.has_bounds() || p.rank(atom) != 1)
    throw std::invalid_argument("shaving is defined at an atom of a bounded poset");
  CdPolynomial psi = cd_index(p);
  CdPolynomial c = CdPolynomial::monomial(Word{1, 0});
  CdPolynomial d = CdPolynomial::monomial(Word{1, 1});
  // The commutator runs over the flank [atom, top], not the whole poset.
  CdPolynomial flank = cd_index(closed_interval(p, atom, p.top()).poset);
  CdPolynomial acc = flank * c - c * flank;
  for (int x = 0; x < p.size(); ++x) {
    if (!p.less(atom, x) || x == p.top()) continue;
    CdPolynomial below = cd_index(closed_interval(p, atom, x).poset);
    CdPolynomial above = cd_index(closed_interval(p, x, p.top()).poset);
    acc += below * d * above;
  }
  return psi + acc.halved();
}

CdPolynomial zip_cd(const CdPolynomial& whole, const CdPolynomial& below,
                    const CdPolynomial& above) {
  if (whole.is_zero() || below.is_zero() || above.is_zero())
    throw std::invalid_argument("zip subtraction needs nonzero cd-indices");
  if (whole.degree() != below.degree() + 2 + above.degree())
    throw std::invalid_argument("zip degree mismatch: the zipped element must not be maximal");
  return whole - below * CdPolynomial::monomial(Word{1, 1}) * above;
}

AbPolynomial zip_ab(const AbPolynomial& whole, const AbPolynomial& below,
                    const AbPolynomial& above) {
  if (whole.is_zero() || below.is_zero() || above.is_zero())
    throw std::invalid_argument("zip subtraction needs nonzero polynomials");
  if (whole.degree() != below.degree() + 2 + above.degree())
    throw std::invalid_argument("zip degree mismatch: the zipped element must not be maximal");
  AbPolynomial mid =
      AbPolynomial::monomial(Word{2, 0b01}) + AbPolynomial::monomial(Word{2, 0b10});
  return whole - below * mid * above;
}

AbPolynomial zip_flag_index(const AbPolynomial& whole, const AbPolynomial& below,
                            const AbPolynomial& above) {
  if (whole.is_zero() || below.is_zero() || above.is_zero())
    throw std::invalid_argument("zip subtraction needs nonzero polynomials");
  if (whole.degree() != below.degree() + 2 + above.degree())
    throw std::invalid_argument("zip degree mismatch: the zipped element must not be maximal");
  AbPolynomial mid = AbPolynomial::monomial(Word{2, 0b11}, 2) +
                     AbPolynomial::monomial(Word{2, 0b01}) +
                     AbPolynomial::monomial(Word{2, 0b10});
  return whole - below * mid * above;
}

static void count_cd_words(int remaining, long long& acc) {
  if (remaining == 0) {
    acc = checked_add(acc, 1);
    return;
  }
  count_cd_words(remaining - 1, acc);             // append c
  if (remaining >= 2) count_cd_words(remaining - 2, acc);  // append d
}

long long cd_monomial_count(int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  long long acc = 0;
  count_cd_words(degree, acc);
  return acc;
}

long long fibonacci(int n) {
  if (n < 1) throw std::invalid_argument("Fibonacci index starts at 1");
  long long a = 1, b = 1;  // F_1, F_2
  for (int i = 2; i < n; ++i) {
    long long next = checked_add(a, b);
    a = b;
    b = next;
  }
  return n == 1 ? 1 : b;
}

}  // namespace bruhat::flags
