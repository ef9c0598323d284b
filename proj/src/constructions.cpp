#include "bruhat/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bruhat::constructions {

using coxeter::bruhat_interval;
using coxeter::bruhat_leq;
using coxeter::CoxeterMatrix;
using coxeter::CoxeterSystem;
using coxeter::Element;
using flags::CdPolynomial;
using flags::Word;
using poset::GradedPoset;

BooleanInterval boolean_interval(int n) {
  if (n < 0) throw std::invalid_argument("negative rank");
  if (n > 12) throw ResourceCapError("Boolean lattice rank cap");

  std::vector<int> ranks(std::size_t{1} << n);
  std::vector<std::string> labels(ranks.size());
  std::vector<std::pair<int, int>> covers;
  for (std::uint32_t mask = 0; mask < ranks.size(); ++mask) {
    ranks[mask] = __builtin_popcount(mask);
    std::string l = "{";
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        if (l.size() > 1) l += ",";
        l += std::to_string(i + 1);
      }
    labels[mask] = l + "}";
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) covers.emplace_back(mask, mask | (1u << i));
  }
  GradedPoset direct(std::move(ranks), std::move(covers), std::move(labels));

  auto sys = CoxeterSystem::universal(std::max(n, 1));
  std::vector<int> word(n);
  for (int i = 0; i < n; ++i) word[i] = i;
  coxeter::Interval iv = bruhat_interval(sys->identity(), sys->from_word(word));
  if (iv.poset.size() != direct.size())
    throw std::logic_error("Boolean interval has the wrong size");

  auto iso = poset::isomorphism(direct, iv.poset);
  if (!iso) throw std::logic_error("Boolean interval is not a Boolean lattice");
  return BooleanInterval{std::move(direct), std::move(iv), std::move(*iso)};
}

CdPolynomial boolean_cd(int n) {
  if (n < 0) throw std::invalid_argument("negative rank");
  CdPolynomial q = CdPolynomial::one();
  for (int i = 1; i < n; ++i) q = pyramid_cd(q);
  return q;
}

DualStacked dual_stacked_interval(int d, int k) {
  if (d < 2) throw std::invalid_argument("dual stacked polytopes need dimension >= 2");
  if (k < 0) throw std::invalid_argument("negative stacking count");
  if (d + k + 1 > 24) throw ResourceCapError("dual stacked size cap");

  auto sys = CoxeterSystem::universal(d + 1);
  auto c_word = [&](int m) {
    std::vector<int> w(m);
    for (int i = 0; i < m; ++i) w[i] = i % (d + 1);
    return sys->from_word(w);
  };

  DualStacked out;
  out.d = d;
  out.k = k;
  out.interval = bruhat_interval(c_word(k), c_word(d + k + 1));
  int top = out.interval.poset.top();
  if (static_cast<int>(out.interval.poset.lower_covers(top).size()) != d + k + 1)
    throw std::logic_error("dual stacked interval has the wrong facet count");

  out.cd = boolean_cd(d + 1);
  for (int j = 1; j <= k; ++j) {
    int s = (j - 1) % (d + 1);
    // Shaving [C_{j-1}, C_{d+j}] at its atom C_j: the zipping run must be
    // empty, landing directly on [C_j, C_{d+j+1}].
    recursion::ZippingSequence seq = recursion::zipping_sequence(
        c_word(j - 1), c_word(d + j), s, recursion::Variant::shaved);
    if (!seq.steps.empty())
      throw std::logic_error("dual stacked shaving unexpectedly needed zipping steps");
    CdPolynomial flank = flags::cd_index(bruhat_interval(c_word(j), c_word(d + j)).poset);
    out.cd = shave_cd(out.cd, flank);
  }
  out.cd_bruteforce = flags::cd_index(out.interval.poset);
  return out;
}

long long matrix_rank_exact(std::vector<std::vector<long long>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");

  long long prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        __int128 t = static_cast<__int128>(m[i][j]) * m[row][col] -
                     static_cast<__int128>(m[i][col]) * m[row][j];
        t /= prev;  // exact by the fraction-free elimination identity
        if (t > INT64_MAX || t < INT64_MIN) throw OverflowError("matrix entry overflow");
        m[i][j] = static_cast<long long>(t);
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return static_cast<long long>(row);
}

namespace {

void cd_words_of_degree(int remaining, Word w, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(w);
    return;
  }
  cd_words_of_degree(remaining - 1, w.append(0), out);
  if (remaining >= 2) cd_words_of_degree(remaining - 2, w.append(1), out);
}

std::vector<Word> cd_basis(int degree) {
  std::vector<Word> out;
  cd_words_of_degree(degree, Word{}, out);
  std::sort(out.begin(), out.end(), flags::DegLexLess<flags::CdAlphabet>{});
  return out;
}

}  // namespace

SpanningFamily spanning_family(int n) {
  if (n < 1) throw std::invalid_argument("the family starts at n = 1");
  if (n > 8) throw ResourceCapError("spanning family size cap");

  SpanningFamily out;
  out.n = n;
  out.sys = CoxeterSystem::generic(CoxeterMatrix::complete_graph(n, 3), std::max(12, n));

  std::vector<std::vector<std::vector<int>>> f(n + 1);
  f[1] = {{0}};
  if (n >= 2) f[2] = {{0, 1}};
  for (int i = 3; i <= n; ++i) {
    for (auto w : f[i - 1]) {
      w.push_back(i - 1);
      f[i].push_back(std::move(w));
    }
    for (const auto& w : f[i - 2]) {
      std::vector<int> v{i - 1};
      v.insert(v.end(), w.begin(), w.end());
      v.push_back(i - 1);
      f[i].push_back(std::move(v));
    }
  }

  for (const auto& word : f[n]) {
    Element e = out.sys->from_word(word);
    if (e.length() != n) throw std::logic_error("family word is not reduced");
    out.words.push_back(std::move(e));
  }
  if (static_cast<long long>(out.words.size()) != flags::fibonacci(n))
    throw std::logic_error("family size is not the Fibonacci number");

  Element id = out.sys->identity();
  for (const Element& w : out.words)
    out.cds.push_back(n == 1 ? CdPolynomial::one()
                             : flags::cd_index(bruhat_interval(id, w).poset));

  std::vector<Word> basis = cd_basis(n - 1);
  std::map<std::uint64_t, std::size_t> col;
  for (std::size_t j = 0; j < basis.size(); ++j)
    col[(static_cast<std::uint64_t>(basis[j].len) << 56) | basis[j].bits] = j;
  for (const CdPolynomial& p : out.cds) {
    std::vector<long long> row(basis.size(), 0);
    for (const auto& [w, c] : p.terms())
      row[col.at((static_cast<std::uint64_t>(w.len) << 56) | w.bits)] = c;
    out.matrix.push_back(std::move(row));
  }
  out.rank = matrix_rank_exact(out.matrix);
  return out;
}

long long spanning_rank(int n) { return spanning_family(n).rank; }

long long type_a_lower_interval_rank(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("supported range is 1 <= n <= 6");
  auto sys = CoxeterSystem::symmetric(n);
  auto elements = coxeter::enumerate_elements(sys, n * (n - 1) / 2);
  recursion::CdEngine engine(sys);

  std::map<std::pair<std::uint32_t, std::uint64_t>, std::size_t> col;
  std::vector<std::vector<std::pair<std::size_t, long long>>> sparse;
  Element id = sys->identity();
  for (const Element& w : elements) {
    CdPolynomial p = engine.cd_index(id, w);
    std::vector<std::pair<std::size_t, long long>> row;
    for (const auto& [word, c] : p.terms()) {
      auto key = std::make_pair(word.len, word.bits);
      auto [it, fresh] = col.emplace(key, col.size());
      row.emplace_back(it->second, c);
    }
    sparse.push_back(std::move(row));
  }
  std::vector<std::vector<long long>> m(sparse.size(),
                                        std::vector<long long>(col.size(), 0));
  for (std::size_t i = 0; i < sparse.size(); ++i)
    for (const auto& [j, c] : sparse[i]) m[i][j] = c;
  return matrix_rank_exact(std::move(m));
}

/****************************************************************************

  Inequality scans.

****************************************************************************/

Json CheckReport::to_json() const {
  return Json{{"name", name},
              {"scope", scope},
              {"class", theorem_class ? "theorem" : "conjecture"},
              {"checked", checked},
              {"violations", violations},
              {"notes", notes},
              {"ok", ok()}};
}

namespace {

int scan_length(const coxeter::SystemPtr& sys, int max_len) {
  if (sys->backend() == coxeter::Backend::symmetric)
    return sys->degree() * (sys->degree() - 1) / 2;  // whole group
  return max_len;
}

std::string scan_scope(const coxeter::SystemPtr& sys, int len) {
  return sys->describe() + ", lengths <= " + std::to_string(len);
}

void record_excess(CheckReport& report, const std::string& u, const std::string& w,
                   const CdPolynomial& value, const CdPolynomial& bound) {
  for (const auto& [word, c] : value.terms()) {
    long long b = bound.coeff(word);
    if (c > b && report.violations.size() < 20)
      report.violations.push_back(Json{{"u", u},
                                       {"w", w},
                                       {"monomial", CdPolynomial::word_str(word)},
                                       {"coefficient", c},
                                       {"bound", b}});
  }
}

}  // namespace

CheckReport check_nonnegativity(const coxeter::SystemPtr& sys, int max_len,
                                recursion::Method method) {
  int len = scan_length(sys, max_len);
  auto elements = coxeter::enumerate_elements(sys, len);
  recursion::CdEngine engine(sys);

  CheckReport report;
  report.name = "cd-coefficient nonnegativity";
  report.scope = scan_scope(sys, len);
  report.theorem_class = false;

  std::map<int, std::pair<long long, long long>> per_rank;  // rank -> (intervals, min coeff)
  for (const Element& u : elements)
    for (const Element& w : elements) {
      if (!bruhat_leq(u, w)) continue;
      ++report.checked;
      int gap = w.length() - u.length();
      CdPolynomial p;
      switch (method) {
        case recursion::Method::recursion:
          p = engine.cd_index(u, w);
          break;
        case recursion::Method::bruteforce:
          p = gap == 0 ? CdPolynomial::one()
                       : flags::cd_index(engine.interval(u, w).poset);
          break;
        case recursion::Method::both: {
          p = engine.cd_index(u, w);
          CdPolynomial brute = gap == 0 ? CdPolynomial::one()
                                        : flags::cd_index(engine.interval(u, w).poset);
          if (!(p == brute))
            throw std::logic_error("recursion disagrees with enumeration on [" +
                                   u.str() + ", " + w.str() + "]");
          break;
        }
      }
      auto& [count, least] = per_rank[gap];
      if (count == 0) least = p.terms().begin()->second;
      ++count;
      for (const auto& [word, c] : p.terms()) {
        least = std::min(least, c);
        if (c < 0 && report.violations.size() < 20)
          report.violations.push_back(Json{{"u", u.str()},
                                           {"w", w.str()},
                                           {"monomial", CdPolynomial::word_str(word)},
                                           {"coefficient", c}});
      }
    }

  for (const auto& [rank, stat] : per_rank)
    report.notes.push_back(
        Json{{"rank", rank}, {"intervals", stat.first}, {"min_coeff", stat.second}});
  return report;
}

CheckReport check_boolean_bound(const coxeter::SystemPtr& sys, int max_len) {
  int len = scan_length(sys, max_len);
  auto elements = coxeter::enumerate_elements(sys, len);

  CheckReport report;
  report.name = "Boolean ab-bound on lower intervals";
  report.scope = scan_scope(sys, len);
  report.theorem_class = true;

  std::vector<flags::AbPolynomial> bounds;  // by rank
  Element id = sys->identity();
  for (const Element& w : elements) {
    ++report.checked;
    int l = w.length();
    while (static_cast<int>(bounds.size()) <= l)
      bounds.push_back(flags::cd_to_ab(boolean_cd(static_cast<int>(bounds.size()))));
    flags::AbPolynomial psi =
        l == 0 ? flags::AbPolynomial::one()
               : flags::ab_index(bruhat_interval(id, w).poset);
    for (const auto& [word, c] : psi.terms()) {
      long long b = bounds[l].coeff(word);
      if (c > b && report.violations.size() < 20)
        report.violations.push_back(Json{{"u", "e"},
                                         {"w", w.str()},
                                         {"monomial", flags::AbPolynomial::word_str(word)},
                                         {"coefficient", c},
                                         {"bound", b}});
    }
  }
  return report;
}

CheckReport check_boolean_bound_cd(const coxeter::SystemPtr& sys, int max_len) {
  int len = scan_length(sys, max_len);
  auto elements = coxeter::enumerate_elements(sys, len);
  recursion::CdEngine engine(sys);

  CheckReport report;
  report.name = "Boolean cd-bound on all intervals";
  report.scope = scan_scope(sys, len);
  report.theorem_class = false;  // known to fail in general; reported, not asserted

  std::vector<CdPolynomial> bounds;
  for (const Element& u : elements)
    for (const Element& w : elements) {
      if (!bruhat_leq(u, w)) continue;
      ++report.checked;
      int gap = w.length() - u.length();
      while (static_cast<int>(bounds.size()) <= gap)
        bounds.push_back(boolean_cd(static_cast<int>(bounds.size())));
      record_excess(report, u.str(), w.str(), engine.cd_index(u, w), bounds[gap]);
    }
  return report;
}

CheckReport check_dual_stacked_bound(const coxeter::SystemPtr& sys, int d, int k,
                                     int max_len) {
  CdPolynomial bound = dual_stacked_interval(d, k).cd;
  int len = scan_length(sys, max_len);
  auto elements = coxeter::enumerate_elements(sys, len);
  recursion::CdEngine engine(sys);

  CheckReport report;
  report.name = "dual stacked cd-bound";
  report.scope = scan_scope(sys, len) + ", l(u) = " + std::to_string(k) +
                 ", l(w) = " + std::to_string(d + k + 1);
  report.theorem_class = false;

  for (const Element& u : elements) {
    if (u.length() != k) continue;
    for (const Element& w : elements) {
      if (w.length() != d + k + 1 || !bruhat_leq(u, w)) continue;
      ++report.checked;
      record_excess(report, u.str(), w.str(), engine.cd_index(u, w), bound);
    }
  }
  return report;
}

}  // namespace bruhat::constructions
