#include "bruhat/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bruhat::coxeter {

/****************************************************************************

  Coxeter matrices.

****************************************************************************/

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<int> entries)
    : rank_(rank), m_(std::move(entries)) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  if (m_.size() != static_cast<std::size_t>(rank) * rank)
    throw std::invalid_argument("matrix entry count does not match rank");
  for (int s = 0; s < rank; ++s) {
    if (entry(s, s) != 1) throw std::invalid_argument("diagonal entries must be 1");
    for (int t = s + 1; t < rank; ++t) {
      if (entry(s, t) != entry(t, s)) throw std::invalid_argument("matrix must be symmetric");
      if (entry(s, t) != infinite && entry(s, t) < 2)
        throw std::invalid_argument("off-diagonal entries must be >= 2 or infinite");
    }
  }
}

static std::vector<int> filled_matrix(int rank, int off) {
  std::vector<int> m(static_cast<std::size_t>(rank) * rank, off);
  for (int s = 0; s < rank; ++s) m[s * rank + s] = 1;
  return m;
}

CoxeterMatrix CoxeterMatrix::type_a(int rank) {
  auto m = filled_matrix(rank, 2);
  for (int s = 0; s + 1 < rank; ++s) m[s * rank + s + 1] = m[(s + 1) * rank + s] = 3;
  return CoxeterMatrix(rank, std::move(m));
}

CoxeterMatrix CoxeterMatrix::universal(int rank) {
  return CoxeterMatrix(rank, filled_matrix(rank, infinite));
}

CoxeterMatrix CoxeterMatrix::complete_graph(int rank, int label) {
  return CoxeterMatrix(rank, filled_matrix(rank, label));
}

CoxeterMatrix CoxeterMatrix::dihedral(int m) {
  return CoxeterMatrix(2, filled_matrix(2, m));
}

CoxeterMatrix CoxeterMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  int rank;
  if (!(in >> rank) || rank < 0) throw std::invalid_argument("matrix file: bad rank");
  auto m = filled_matrix(rank, 2);
  for (int s = 0; s < rank; ++s)
    for (int t = s + 1; t < rank; ++t) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("matrix file: missing entries");
      int v;
      if (tok == "inf") {
        v = infinite;
      } else {
        try {
          v = std::stoi(tok);
        } catch (const std::exception&) {
          throw std::invalid_argument("matrix file: bad entry '" + tok + "'");
        }
      }
      m[s * rank + t] = m[t * rank + s] = v;
    }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("matrix file: trailing tokens");
  return CoxeterMatrix(rank, std::move(m));
}

std::string CoxeterMatrix::format() const {
  std::ostringstream out;
  out << rank_ << "\n";
  for (int s = 0; s < rank_; ++s) {
    bool any = false;
    for (int t = s + 1; t < rank_; ++t) {
      if (any) out << ' ';
      if (entry(s, t) == infinite) out << "inf";
      else out << entry(s, t);
      any = true;
    }
    if (any) out << "\n";
  }
  return out.str();
}

/****************************************************************************

  Elements.

  The symmetric backend stores the one-line permutation with 0-based values;
  the length is the inversion count. Word backends store the shortlex-least
  reduced word, which the universal group reaches by free cancellation and
  generic systems reach through the braid-move closure.

****************************************************************************/

bool Element::operator==(const Element& o) const {
  if (sys_.get() != o.sys_.get()) {
    if (!sys_ || !o.sys_ || !(*sys_ == *o.sys_))
      throw std::invalid_argument("elements belong to different systems");
  }
  return repr_ == o.repr_;
}

bool Element::operator<(const Element& o) const {
  if (sys_.get() != o.sys_.get()) {
    if (!sys_ || !o.sys_ || !(*sys_ == *o.sys_))
      throw std::invalid_argument("elements belong to different systems");
  }
  if (length_ != o.length_) return length_ < o.length_;
  return repr_ < o.repr_;
}

std::size_t Element::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  mix(static_cast<std::size_t>(length_));
  for (int v : repr_) mix(static_cast<std::size_t>(v) + 0x9e3779b9);
  return h;
}

std::string Element::str() const {
  if (!sys_) return "e";
  if (sys_->backend() == Backend::symmetric) {
    std::string out;
    bool digits = repr_.size() <= 9;
    for (std::size_t i = 0; i < repr_.size(); ++i) {
      if (!digits && i) out += ' ';
      out += std::to_string(repr_[i] + 1);
    }
    return out;
  }
  if (repr_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < repr_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(repr_[i] + 1);
  }
  return out;
}

/****************************************************************************

  Coxeter systems.

****************************************************************************/

SystemPtr CoxeterSystem::symmetric(int n) {
  if (n < 1) throw std::invalid_argument("symmetric group needs n >= 1");
  if (n > 12) throw ResourceCapError("symmetric group degree cap");
  return SystemPtr(new CoxeterSystem(Backend::symmetric, CoxeterMatrix::type_a(n - 1), n, -1));
}

SystemPtr CoxeterSystem::universal(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  return SystemPtr(new CoxeterSystem(Backend::universal, CoxeterMatrix::universal(rank), 0, -1));
}

SystemPtr CoxeterSystem::generic(CoxeterMatrix m, int max_length) {
  if (m.rank() < 1) throw std::invalid_argument("rank must be positive");
  if (max_length < 1) throw std::invalid_argument("max_length must be positive");
  return SystemPtr(new CoxeterSystem(Backend::generic, std::move(m), 0, max_length));
}

Element CoxeterSystem::make(std::vector<int> repr, int length) const {
  return Element(shared_from_this(), std::move(repr), length);
}

Element CoxeterSystem::identity() const {
  if (backend_ == Backend::symmetric) {
    std::vector<int> id(degree_);
    for (int i = 0; i < degree_; ++i) id[i] = i;
    return make(std::move(id), 0);
  }
  return make({}, 0);
}

Element CoxeterSystem::generator(int s) const {
  if (s < 0 || s >= rank()) throw std::invalid_argument("generator index out of range");
  return multiply(identity(), s);
}

static void free_cancel(std::vector<int>& word) {
  std::vector<int> stack;
  for (int s : word) {
    if (!stack.empty() && stack.back() == s) stack.pop_back();
    else stack.push_back(s);
  }
  word = std::move(stack);
}

/* All words reachable from a reduced word by braid moves alone. */
std::vector<std::vector<int>> CoxeterSystem::braid_closure(const std::vector<int>& reduced) const {
  std::set<std::vector<int>> seen{reduced};
  std::vector<std::vector<int>> out{reduced};
  for (std::size_t qi = 0; qi < out.size(); ++qi) {
    std::vector<int> w = out[qi];
    int len = static_cast<int>(w.size());
    for (int i = 0; i + 1 < len; ++i) {
      int s = w[i], t = w[i + 1];
      if (s == t) continue;
      int m = matrix_.entry(s, t);
      if (m == CoxeterMatrix::infinite || i + m > len) continue;
      bool match = true;
      for (int j = 0; j < m && match; ++j) match = w[i + j] == (j % 2 == 0 ? s : t);
      if (!match) continue;
      std::vector<int> w2 = w;
      for (int j = 0; j < m; ++j) w2[i + j] = (j % 2 == 0 ? t : s);
      if (seen.insert(w2).second) {
        if (seen.size() > (1u << 20)) throw ResourceCapError("braid closure cap");
        out.push_back(std::move(w2));
      }
    }
  }
  return out;
}

/* Word problem: interleave braid closures with deletion of equal adjacent
   pairs until the closure is deletion-free; it then consists of all reduced
   words and the shortlex-least one is the normal form. */
std::vector<int> CoxeterSystem::normalize_generic(std::vector<int> word) const {
  free_cancel(word);
  for (;;) {
    std::set<std::vector<int>> seen{word};
    std::vector<std::vector<int>> queue{word};
    bool shortened = false;
    for (std::size_t qi = 0; qi < queue.size() && !shortened; ++qi) {
      std::vector<int> w = queue[qi];
      int len = static_cast<int>(w.size());
      for (int i = 0; i + 1 < len && !shortened; ++i) {
        int s = w[i], t = w[i + 1];
        if (s == t) {
          w.erase(w.begin() + i, w.begin() + i + 2);
          free_cancel(w);
          word = std::move(w);
          shortened = true;
          break;
        }
        int m = matrix_.entry(s, t);
        if (m == CoxeterMatrix::infinite || i + m > len) continue;
        bool match = true;
        for (int j = 0; j < m && match; ++j) match = w[i + j] == (j % 2 == 0 ? s : t);
        if (!match) continue;
        std::vector<int> w2 = w;
        for (int j = 0; j < m; ++j) w2[i + j] = (j % 2 == 0 ? t : s);
        if (seen.insert(w2).second) {
          if (seen.size() > (1u << 20)) throw ResourceCapError("braid closure cap");
          queue.push_back(std::move(w2));
        }
      }
    }
    if (!shortened) return *std::min_element(seen.begin(), seen.end());
  }
}

Element CoxeterSystem::multiply(const Element& v, int s) const {
  if (s < 0 || s >= rank()) throw std::invalid_argument("generator index out of range");
  if (!v.system() || !(*v.system() == *this))
    throw std::invalid_argument("element belongs to a different system");
  switch (backend_) {
    case Backend::symmetric: {
      std::vector<int> p = v.repr();
      bool up = p[s] < p[s + 1];
      std::swap(p[s], p[s + 1]);
      return make(std::move(p), v.length() + (up ? 1 : -1));
    }
    case Backend::universal: {
      std::vector<int> w = v.repr();
      if (!w.empty() && w.back() == s) {
        w.pop_back();
        return make(std::move(w), v.length() - 1);
      }
      w.push_back(s);
      return make(std::move(w), v.length() + 1);
    }
    case Backend::generic: {
      std::vector<int> w = v.repr();
      w.push_back(s);
      std::string key(w.size(), ' ');
      for (std::size_t i = 0; i < w.size(); ++i) key[i] = static_cast<char>('!' + w[i]);
      {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = canon_cache_.find(key);
        if (it != canon_cache_.end())
          return make(it->second, static_cast<int>(it->second.size()));
      }
      std::vector<int> canon = normalize_generic(std::move(w));
      int len = static_cast<int>(canon.size());
      if (len > max_length_) throw ResourceCapError("word length cap exceeded");
      {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        canon_cache_.emplace(std::move(key), canon);
      }
      return make(std::move(canon), len);
    }
  }
  throw std::logic_error("unreachable");
}

Element CoxeterSystem::from_word(const std::vector<int>& word) const {
  Element v = identity();
  for (int s : word) v = multiply(v, s);
  return v;
}

std::vector<int> CoxeterSystem::reduced_word(const Element& v) const {
  if (backend_ != Backend::symmetric) return v.repr();
  // Shortlex-least reduced word: peel off the smallest left descent. The
  // left descents of a permutation are the values written out of order.
  std::vector<int> p = v.repr();
  int n = degree_;
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[p[i]] = i;
  std::vector<int> word;
  word.reserve(v.length());
  int remaining = v.length();
  while (remaining > 0) {
    int s = -1;
    for (int i = 0; i + 1 < n; ++i)
      if (pos[i] > pos[i + 1]) { s = i; break; }
    if (s < 0) throw std::logic_error("length bookkeeping broke");
    std::swap(p[pos[s]], p[pos[s + 1]]);
    std::swap(pos[s], pos[s + 1]);
    word.push_back(s);
    --remaining;
  }
  return word;
}

std::vector<std::vector<int>> CoxeterSystem::reduced_words(const Element& v) const {
  switch (backend_) {
    case Backend::universal:
      return {v.repr()};
    case Backend::generic: {
      auto out = braid_closure(v.repr());
      std::sort(out.begin(), out.end());
      return out;
    }
    case Backend::symmetric: {
      // Expand along left descents.
      std::vector<std::vector<int>> out;
      std::vector<int> prefix;
      auto rec = [&](auto&& self, const Element& x) -> void {
        if (x.is_identity()) {
          out.push_back(prefix);
          return;
        }
        for (int s : left_descents(x)) {
          // left multiplication by s swaps the values s and s+1
          std::vector<int> p = x.repr();
          int a = -1, b = -1;
          for (int i = 0; i < degree_; ++i) {
            if (p[i] == s) a = i;
            if (p[i] == s + 1) b = i;
          }
          std::swap(p[a], p[b]);
          prefix.push_back(s);
          self(self, make(std::move(p), x.length() - 1));
          prefix.pop_back();
        }
      };
      rec(rec, v);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<int> CoxeterSystem::right_descents(const Element& v) const {
  std::vector<int> out;
  switch (backend_) {
    case Backend::symmetric: {
      const auto& p = v.repr();
      for (int s = 0; s + 1 < degree_; ++s)
        if (p[s] > p[s + 1]) out.push_back(s);
      return out;
    }
    case Backend::universal:
      if (!v.repr().empty()) out.push_back(v.repr().back());
      return out;
    case Backend::generic:
      for (int s = 0; s < rank(); ++s)
        if (multiply(v, s).length() < v.length()) out.push_back(s);
      return out;
  }
  throw std::logic_error("unreachable");
}

std::vector<int> CoxeterSystem::left_descents(const Element& v) const {
  std::vector<int> out;
  switch (backend_) {
    case Backend::symmetric: {
      const auto& p = v.repr();
      std::vector<int> pos(degree_);
      for (int i = 0; i < degree_; ++i) pos[p[i]] = i;
      for (int s = 0; s + 1 < degree_; ++s)
        if (pos[s] > pos[s + 1]) out.push_back(s);
      return out;
    }
    case Backend::universal:
      if (!v.repr().empty()) out.push_back(v.repr().front());
      return out;
    case Backend::generic: {
      // s is a left descent iff some reduced word starts with s.
      std::set<int> firsts;
      for (const auto& w : braid_closure(v.repr()))
        if (!w.empty()) firsts.insert(w.front());
      return std::vector<int>(firsts.begin(), firsts.end());
    }
  }
  throw std::logic_error("unreachable");
}

Element CoxeterSystem::parse(const std::string& text) const {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || backend_ != Backend::symmetric) t += c;
  if (t == "e" || t.empty()) return identity();
  if (backend_ == Backend::symmetric) {
    if (static_cast<int>(t.size()) != degree_)
      throw std::invalid_argument("permutation must list " + std::to_string(degree_) + " digits");
    std::vector<int> p(degree_);
    std::vector<bool> used(degree_, false);
    int inversions = 0;
    for (int i = 0; i < degree_; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("permutation must be a digit string");
      int v = t[i] - '1';
      if (v < 0 || v >= degree_ || used[v])
        throw std::invalid_argument("not a permutation of 1.." + std::to_string(degree_));
      used[v] = true;
      p[i] = v;
      for (int j = 0; j < i; ++j)
        if (p[j] > v) ++inversions;
    }
    return make(std::move(p), inversions);
  }
  std::vector<int> word;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    int v;
    try {
      v = std::stoi(cur);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad generator index '" + cur + "'");
    }
    if (v < 1 || v > rank()) throw std::invalid_argument("generator index out of range");
    word.push_back(v - 1);
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') flush();
    else cur += c;
  }
  flush();
  return from_word(word);
}

std::string CoxeterSystem::describe() const {
  switch (backend_) {
    case Backend::symmetric: return "sym:" + std::to_string(degree_);
    case Backend::universal: return "universal:" + std::to_string(rank());
    case Backend::generic: return "generic:" + std::to_string(rank());
  }
  return "?";
}

/****************************************************************************

  Bruhat order.

  The comparison scans a fixed reduced word of w from the right, applying
  each letter to u whenever it is a descent; u <= w exactly when the scan
  ends at the identity. Intervals are enumerated downward from w by deleting
  single letters of reduced words, pruned to the up-set of u.

****************************************************************************/

bool bruhat_leq_scan(const Element& u, const std::vector<int>& word_of_w) {
  const auto& sys = *u.system();
  Element x = u;
  for (auto it = word_of_w.rbegin(); it != word_of_w.rend(); ++it) {
    if (x.is_identity()) return true;
    Element xs = sys.multiply(x, *it);
    if (xs.length() < x.length()) x = std::move(xs);
  }
  return x.is_identity();
}

bool bruhat_leq(const Element& u, const Element& w) {
  if (!u.system() || !w.system() || !(*u.system() == *w.system()))
    throw std::invalid_argument("elements belong to different systems");
  if (u.length() > w.length()) return false;
  if (u.length() == w.length()) return u == w;
  return bruhat_leq_scan(u, u.system()->reduced_word(w));
}

int sigma(const Element& v, int s) {
  return v.system()->multiply(v, s).length() > v.length() ? 1 : -1;
}

std::optional<int> Interval::index_of(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Interval bruhat_interval(const Element& u, const Element& w, long long max_elements) {
  if (!bruhat_leq(u, w)) throw std::invalid_argument("u is not below w in Bruhat order");
  const auto sys = w.system();

  std::unordered_map<Element, bool, ElementHash> seen;  // true = in the interval
  std::vector<Element> frontier{w};
  seen.emplace(w, true);
  std::vector<std::pair<Element, Element>> edges;  // (lower cover, element)

  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& v : frontier) {
      std::vector<int> word = sys->reduced_word(v);
      std::set<Element> covers;
      for (std::size_t j = 0; j < word.size(); ++j) {
        std::vector<int> sub = word;
        sub.erase(sub.begin() + j);
        Element c = sys->from_word(sub);
        if (c.length() == v.length() - 1) covers.insert(std::move(c));
      }
      for (const Element& c : covers) {
        auto it = seen.find(c);
        bool keep;
        if (it != seen.end()) {
          keep = it->second;
        } else {
          keep = bruhat_leq(u, c);
          seen.emplace(c, keep);
          if (keep) {
            next.push_back(c);
            if (static_cast<long long>(seen.size()) > max_elements)
              throw ResourceCapError("interval element budget exceeded");
          }
        }
        if (keep) edges.emplace_back(c, v);
      }
    }
    frontier = std::move(next);
  }

  Interval out;
  out.system = sys;
  out.u = u;
  out.w = w;
  for (const auto& [e, keep] : seen)
    if (keep) out.elements.push_back(e);
  std::sort(out.elements.begin(), out.elements.end());
  for (std::size_t i = 0; i < out.elements.size(); ++i)
    out.index_.emplace(out.elements[i], static_cast<int>(i));

  std::vector<int> ranks(out.elements.size());
  std::vector<std::string> labels(out.elements.size());
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    ranks[i] = out.elements[i].length() - u.length();
    labels[i] = out.elements[i].str();
  }
  std::vector<std::pair<int, int>> covers;
  covers.reserve(edges.size());
  for (const auto& [c, v] : edges)
    covers.emplace_back(*out.index_of(c), *out.index_of(v));
  out.poset = poset::GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
  return out;
}

std::vector<Element> enumerate_elements(const SystemPtr& sys, int max_len,
                                        long long max_elements) {
  if (max_len < 0) throw std::invalid_argument("negative length bound");
  if (sys->backend() == Backend::generic && max_len > sys->max_length())
    throw std::invalid_argument("length bound exceeds the system word cap");
  std::unordered_map<Element, bool, ElementHash> seen;
  std::vector<Element> all{sys->identity()};
  seen.emplace(all[0], true);
  std::vector<Element> level = all;
  for (int len = 0; len < max_len && !level.empty(); ++len) {
    std::vector<Element> next;
    for (const Element& v : level)
      for (int s = 0; s < sys->rank(); ++s) {
        Element t = sys->multiply(v, s);
        if (t.length() != len + 1) continue;
        if (seen.emplace(t, true).second) {
          if (static_cast<long long>(seen.size()) > max_elements)
            throw ResourceCapError("enumeration budget exceeded");
          next.push_back(std::move(t));
        }
      }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace bruhat::coxeter
