#pragma once

#include <boost/dynamic_bitset.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bruhat/errors.hpp"

namespace bruhat::poset {

using Json = nlohmann::ordered_json;
using Bitset = boost::dynamic_bitset<>;

/* A finite graded poset, presented by its cover relations. Element ids are
   dense 0..size()-1. Construction validates that covers step ranks by exactly
   one, that all minimal elements sit at rank 0 and all maximal elements at the
   common top rank (so every maximal chain has the same length), and caches the
   full reachability relation as bitsets. Instances are immutable. */
class GradedPoset {
 public:
  GradedPoset() = default;  // empty placeholder; assign a real poset before use
  GradedPoset(std::vector<int> ranks, std::vector<std::pair<int, int>> covers,
              std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(int x) const { return rank_.at(x); }
  int height() const { return height_; }  // largest rank
  const std::string& label(int x) const { return label_.at(x); }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& upper_covers(int x) const { return up_.at(x); }
  const std::vector<int>& lower_covers(int x) const { return down_.at(x); }

  bool leq(int x, int y) const { return above_[x].test(y); }
  bool less(int x, int y) const { return x != y && leq(x, y); }

  /* The row {y : x <= y} as a bitset; do not outlive the poset. */
  const Bitset& up_set(int x) const { return above_.at(x); }

  bool has_bounds() const { return bottom_ >= 0 && top_ >= 0; }
  int bottom() const;
  int top() const;

  std::vector<int> elements_of_rank(int r) const;
  std::vector<int> open_interval(int x, int y) const;  // {z : x < z < y}

  Json to_json() const;
  static GradedPoset from_json(const Json& j);

 private:
  std::vector<int> rank_;
  std::vector<std::string> label_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<Bitset> above_;
  int height_ = 0;
  int bottom_ = -1, top_ = -1;
};

/* Build a poset from a reflexive order relation given as row bitsets
   (rel[x][y] iff x <= y). Checks antisymmetry and transitivity, takes covers
   by transitive reduction and ranks by longest chains from the minimal
   elements; the constructor then enforces gradedness. */
GradedPoset poset_from_relation(const std::vector<Bitset>& rel,
                                std::vector<std::string> labels = {});

GradedPoset chain(int length);  // length+1 elements, ranks 0..length

long long mobius(const GradedPoset& p, int x, int y);

/* mu(x,y) = (-1)^(rank(y)-rank(x)) on every closed interval. */
bool is_eulerian(const GradedPoset& p);

/* Every interval of rank two has exactly four elements. */
bool is_thin(const GradedPoset& p);

struct SubPoset {
  GradedPoset poset;
  std::vector<int> orig;  // orig[new id] = id in the ambient poset
};
SubPoset closed_interval(const GradedPoset& p, int x, int y);

/* Componentwise order on pairs; element (a,b) has id a*q.size()+b. */
GradedPoset product(const GradedPoset& p, const GradedPoset& q);

/* product(p, chain(1)): id of (a, i) is 2*a+i. */
GradedPoset pyramid(const GradedPoset& p);

struct ZipperCheck {
  bool ok = false;
  bool proper = false;
  std::string reason;  // set when !ok
};

/* (x, y, z) is a zipper when z covers exactly x and y, z is their unique
   join, and x and y have the same strict down-set. Proper: z is not maximal. */
ZipperCheck is_zipper(const GradedPoset& p, int x, int y, int z);

struct ZipResult {
  GradedPoset poset;
  std::vector<int> old_to_new;  // z maps to -1; x and y both map to `merged`
  int merged;
};

/* Delete z and identify x with y. Requires is_zipper(...).ok; improper
   zippers are accepted. Surviving elements keep their relative order and the
   merged element is placed last. */
ZipResult zip(const GradedPoset& p, int x, int y, int z);

struct ShaveResult {
  GradedPoset poset;
  /* origin[e] = (v, part): part 1 is the pair (v, a), part 0 is (v, hat0)
     for v above the atom, and the adjoined bottom (hat0, hat0). */
  std::vector<std::pair<int, int>> origin;
  int bottom;
};

/* Vertex shaving at an atom: the induced subposet of p x [hat0, a] on
   ((p - {hat0, a}) x {a}) u ((a, hat1] x {hat0}) u {(hat0, hat0)}. Also built
   a second way (zip (a,hat0),(hat0,a),(a,a) inside the product, then take the
   interval up to (hat1, a)) and the two are checked isomorphic. */
ShaveResult shave(const GradedPoset& p, int atom);

/* eta maps p onto q: order-preserving and every relation of q lifts. */
bool is_order_projection(const GradedPoset& p, const GradedPoset& q,
                         const std::vector<int>& eta);

/* Poset of nonempty fibers of eta, ordered by F <= F' iff some a in F lies
   below some b in F'. Throws if that relation is not a partial order. */
GradedPoset fiber_poset(const GradedPoset& p, const GradedPoset& q,
                        const std::vector<int>& eta);

/* Rank-preserving bijection matching covers both ways, or nullopt. The search
   orders candidates by (rank, up-degree, down-degree) signatures. */
std::optional<std::vector<int>> isomorphism(const GradedPoset& p, const GradedPoset& q);

inline bool is_isomorphic(const GradedPoset& p, const GradedPoset& q) {
  return isomorphism(p, q).has_value();
}

struct OrderComplexStats {
  std::vector<long long> faces;  // faces[i] = chains of the open interval with i+1 elements
  long long reduced_euler = 0;   // -1 + f_0 - f_1 + ... ; empty complex gives -1
};
OrderComplexStats order_complex_stats(const GradedPoset& p);

}  // namespace bruhat::poset
