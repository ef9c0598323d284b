#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bruhat/coxeter.hpp"
#include "bruhat/flags.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/recursion.hpp"

namespace bruhat::constructions {

using Json = nlohmann::ordered_json;

/* The Boolean lattice, built directly on subsets and as the Bruhat interval
   [e, s_1...s_n] of the universal group; the two are matched elementwise. */
struct BooleanInterval {
  poset::GradedPoset direct;    // ids are subset masks
  coxeter::Interval bruhat;
  std::vector<int> iso;         // direct id -> bruhat poset id
};
BooleanInterval boolean_interval(int n);

/* cd-index of B_n by iterating the pyramid formula from the 2-chain. */
flags::CdPolynomial boolean_cd(int n);

/* Dual stacked polytope face lattice as the interval [C_k, C_{d+k+1}] in the
   universal group of rank d+1, where C_m = s_1 s_2 ... with indices cycling
   mod d+1. Shaving the vertex C_k off [C_{k-1}, C_{d+k}] needs no zipping
   steps here (no interior element is shortened on the right by the new last
   letter; asserted), so the cd-index follows by iterating shave_cd from the
   simplex. Both that iteration and direct enumeration are returned. */
struct DualStacked {
  int d = 0, k = 0;
  coxeter::Interval interval;
  flags::CdPolynomial cd;             // shave_cd iteration from boolean_cd(d+1)
  flags::CdPolynomial cd_bruteforce;  // enumeration of the interval
};
DualStacked dual_stacked_interval(int d, int k);

/* Words F_n in the rank-n system with all pairwise orders 3:
   F_1 = {s_1}, F_2 = {s_1 s_2}, F_n = F_{n-1} s_n  u  s_n F_{n-2} s_n.
   |F_n| is the n-th Fibonacci number and the lower-interval cd-indices are
   linearly independent, spanning all of degree n-1. */
struct SpanningFamily {
  int n = 0;
  coxeter::SystemPtr sys;
  std::vector<coxeter::Element> words;
  std::vector<flags::CdPolynomial> cds;
  std::vector<std::vector<long long>> matrix;  // rows over deg-lex cd-words
  long long rank = 0;
};
SpanningFamily spanning_family(int n);
long long spanning_rank(int n);

/* Exact rank of an integer matrix by fraction-free elimination. */
long long matrix_rank_exact(std::vector<std::vector<long long>> m);

/* Rank of the span of cd-indices of all lower intervals [e, w] of S_n.
   Exposed as an experiment; nothing is asserted about the value. */
long long type_a_lower_interval_rank(int n);

struct CheckReport {
  std::string name;
  std::string scope;
  bool theorem_class = false;  // violations indicate a bug, not a refutation
  long long checked = 0;
  std::vector<Json> violations;
  std::vector<Json> notes;
  bool ok() const { return violations.empty(); }
  Json to_json() const;
};

/* Every cd-coefficient of every interval is >= 0 (conjecture class). */
CheckReport check_nonnegativity(const coxeter::SystemPtr& sys, int max_len = 8,
                                recursion::Method method = recursion::Method::recursion);

/* ab-indices of lower intervals are bounded by the Boolean lattice of the
   same rank, coefficientwise (theorem class). */
CheckReport check_boolean_bound(const coxeter::SystemPtr& sys, int max_len = 8);

/* The same comparison at the cd level over all intervals; known to fail in
   general, so report-only. */
CheckReport check_boolean_bound_cd(const coxeter::SystemPtr& sys, int max_len = 8);

/* cd-indices of intervals [u, v] with l(u) = k, l(v) = d+k+1 are bounded by
   the dual stacked polytope with those parameters (conjecture class). */
CheckReport check_dual_stacked_bound(const coxeter::SystemPtr& sys, int d, int k,
                                     int max_len = 8);

}  // namespace bruhat::constructions
