#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/poset.hpp"

namespace bruhat::coxeter {

inline constexpr long long kDefaultBudget = 1 << 20;

/* Symmetric matrix of pairwise orders: m(s,s) = 1, off-diagonal entries are
   2, 3, ... or `infinite`. Generators are 0-based in code; all text I/O is
   1-based. */
class CoxeterMatrix {
 public:
  static constexpr int infinite = 0;

  CoxeterMatrix(int rank, std::vector<int> entries);  // row-major rank*rank

  static CoxeterMatrix type_a(int rank);       // m(s_i, s_{i+1}) = 3, else 2
  static CoxeterMatrix universal(int rank);    // all off-diagonal infinite
  static CoxeterMatrix complete_graph(int rank, int label);
  static CoxeterMatrix dihedral(int m);

  int rank() const { return rank_; }
  int entry(int s, int t) const { return m_[s * rank_ + t]; }
  bool operator==(const CoxeterMatrix&) const = default;

  /* Text format: first token the rank, then the strict upper triangle row by
     row; `inf` marks an infinite order. */
  static CoxeterMatrix parse(const std::string& text);
  std::string format() const;

 private:
  int rank_;
  std::vector<int> m_;
};

enum class Backend { symmetric, universal, generic };

class CoxeterSystem;
using SystemPtr = std::shared_ptr<const CoxeterSystem>;

/* Group element. Symmetric systems carry the one-line permutation (0-based
   values); the other backends carry the shortlex-least reduced word. */
class Element {
 public:
  Element() = default;

  int length() const { return length_; }
  const std::vector<int>& repr() const { return repr_; }
  const SystemPtr& system() const { return sys_; }
  bool is_identity() const { return length_ == 0; }

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const;  // by (length, repr)

  std::string str() const;  // 1-based; identity words print as "e"
  std::size_t hash() const;

 private:
  friend class CoxeterSystem;
  Element(SystemPtr sys, std::vector<int> repr, int length)
      : sys_(std::move(sys)), repr_(std::move(repr)), length_(length) {}

  SystemPtr sys_;
  std::vector<int> repr_;
  int length_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

class CoxeterSystem : public std::enable_shared_from_this<CoxeterSystem> {
 public:
  static SystemPtr symmetric(int n);  // S_n acting on 1..n, rank n-1
  static SystemPtr universal(int rank);
  static SystemPtr generic(CoxeterMatrix m, int max_length = 12);

  Backend backend() const { return backend_; }
  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  int degree() const { return degree_; }          // symmetric backend: the n of S_n
  int max_length() const { return max_length_; }  // generic backend word cap

  bool operator==(const CoxeterSystem& o) const {
    return backend_ == o.backend_ && matrix_ == o.matrix_;
  }

  Element identity() const;
  Element generator(int s) const;
  Element multiply(const Element& v, int s) const;  // v * s_s
  Element from_word(const std::vector<int>& word) const;

  std::vector<int> reduced_word(const Element& v) const;  // shortlex-least
  std::vector<std::vector<int>> reduced_words(const Element& v) const;
  std::vector<int> right_descents(const Element& v) const;
  std::vector<int> left_descents(const Element& v) const;

  Element parse(const std::string& text) const;  // "3412", "1 2 1", or "e"
  std::string describe() const;                  // "sym:4", "universal:3", ...

 private:
  CoxeterSystem(Backend b, CoxeterMatrix m, int degree, int max_length)
      : backend_(b), matrix_(std::move(m)), degree_(degree), max_length_(max_length) {}

  Element make(std::vector<int> repr, int length) const;
  std::vector<int> normalize_generic(std::vector<int> word) const;
  std::vector<std::vector<int>> braid_closure(const std::vector<int>& reduced) const;

  Backend backend_;
  CoxeterMatrix matrix_;
  int degree_;
  int max_length_;

  /* Generic-backend memo for Tits-style normalization; synchronized. */
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, std::vector<int>> canon_cache_;
};

/* u <= w in Bruhat order: right-to-left descent scan over the given reduced
   word for w. Exposed with an explicit word so tests can vary the word. */
bool bruhat_leq_scan(const Element& u, const std::vector<int>& word_of_w);
bool bruhat_leq(const Element& u, const Element& w);

/* Length change of right multiplication: +1 or -1. */
int sigma(const Element& v, int s);

/* The closed interval [u, w], enumerated by deleting letters downward from w
   and keeping the up-set of u. Elements are sorted by (length, repr) and that
   order gives the poset ids; ranks are lengths relative to u. */
struct Interval {
  SystemPtr system;
  Element u, w;
  std::vector<Element> elements;
  poset::GradedPoset poset;

  std::optional<int> index_of(const Element& e) const;

 private:
  friend Interval bruhat_interval(const Element&, const Element&, long long);
  std::unordered_map<Element, int, ElementHash> index_;
};

Interval bruhat_interval(const Element& u, const Element& w,
                         long long max_elements = kDefaultBudget);

/* All elements of length <= max_len, sorted by (length, repr). */
std::vector<Element> enumerate_elements(const SystemPtr& sys, int max_len,
                                        long long max_elements = kDefaultBudget);

}  // namespace bruhat::coxeter
