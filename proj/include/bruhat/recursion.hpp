#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "bruhat/coxeter.hpp"
#include "bruhat/flags.hpp"
#include "bruhat/poset.hpp"

namespace bruhat::recursion {

using Json = nlohmann::ordered_json;
using coxeter::Element;

/* A surjection from a structured domain onto a Bruhat interval together with
   its certificate: the map is an order-projection and each fiber matches the
   predicted inverse image. */
struct ProjectionResult {
  coxeter::Interval base;        // [u, w]
  poset::GradedPoset domain;     // [u,w] x [1,s] for eta, Sh_us[u,w] for theta
  coxeter::Interval target;      // [u, ws] or [us, ws]
  std::vector<int> map;          // domain id -> target id
  bool order_projection = false;
  bool fibers_match = false;
};

/* (v, 1) -> v and (v, s) -> max(v, vs); needs u < us, w < ws, u <= w.
   Domain ids follow the product layout: interval id * 2 + (0 for 1, 1 for s). */
ProjectionResult eta(const Element& u, const Element& w, int s);

/* Domain Sh_us[u,w]; the adjoined bottom maps to us, pairs (v, hat0) map to v
   and pairs (v, a) to max(v, vs). Additionally needs us <= w. */
ProjectionResult theta(const Element& u, const Element& w, int s);

enum class Variant { interval, shaved };

struct ZipStep {
  Element v;                  // the descent element driving this step
  int x, y, z;                // zipper ids in the poset before the step
  poset::GradedPoset result;  // poset after the step
  std::vector<int> old_to_new;
  int merged;
};

/* The zipping run from the structured base poset down to the target interval.
   Steps process {v in the open base interval : vs < v} by rank, ties broken
   by (length, repr). Each step asserts the triple is a proper zipper, that
   the lower and upper intervals pinned by the step agree with their images in
   the starting product, and the final poset is matched to the target. */
struct ZippingSequence {
  Variant variant;
  Element u, w;
  int s;
  poset::GradedPoset base;    // P_0: the product (interval) or Sh_us[u,w] (shaved)
  std::vector<ZipStep> steps;
  coxeter::Interval target;   // [u, ws] or [us, ws]
  std::vector<int> final_iso; // bijection last poset -> target.poset
};

ZippingSequence zipping_sequence(const Element& u, const Element& w, int s,
                                 Variant variant);

enum class Method { bruteforce, recursion, both };

struct DescentPolicy {
  enum class Kind { smallest, largest, random };
  Kind kind = Kind::smallest;
  std::uint32_t seed = 0;
};

/* Memoized evaluation of the structural recursion for cd-indices of Bruhat
   intervals. The recursion strips a right descent s off the top element and
   rebuilds the interval from pyramid or shaving formulas, subtracting one
   d-term per interior element shortened by s. Caches are engine-local; use
   one engine per thread. */
class CdEngine {
 public:
  explicit CdEngine(coxeter::SystemPtr sys, DescentPolicy policy = {});

  /* Subtraction form. */
  flags::CdPolynomial cd_index(const Element& u, const Element& w);

  /* The sigma half-forms, evaluated at the top call with memoized children;
     must equal cd_index(u, w). */
  flags::CdPolynomial cd_index_half(const Element& u, const Element& w);

  const coxeter::Interval& interval(const Element& u, const Element& w);

 private:
  int pick_descent(const Element& w) const;

  coxeter::SystemPtr sys_;
  DescentPolicy policy_;
  struct PairHash {
    std::size_t operator()(const std::pair<Element, Element>& p) const;
  };
  std::unordered_map<std::pair<Element, Element>, flags::CdPolynomial, PairHash> memo_;
  std::unordered_map<std::pair<Element, Element>, coxeter::Interval, PairHash> intervals_;
};

/* One-shot convenience. Method::both computes brute force and recursion and
   throws std::logic_error if they disagree. */
flags::CdPolynomial cd_index_interval(const Element& u, const Element& w,
                                      Method method = Method::both);

struct RankStats {
  int rank = 0;
  long long intervals = 0;
  long long min_coeff = 0, max_coeff = 0;
};

struct RecursionReport {
  std::string group;
  long long pairs = 0;
  std::vector<RankStats> per_rank;
  std::vector<Json> mismatches;  // witnesses; empty on success
  bool ok() const { return mismatches.empty(); }
  Json to_json() const;
};

/* Compare brute force, the subtraction recursion and the half-forms on every
   comparable pair of elements of length <= max_len (ignored for symmetric
   systems, which are covered whole). inject_fault perturbs one recursion
   result so callers can exercise the failure path. */
RecursionReport verify_recursion(const coxeter::SystemPtr& sys, int max_len = 8,
                                 bool inject_fault = false);

}  // namespace bruhat::recursion
