#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bruhat/coxeter.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/poset.hpp"
#include "util.hpp"

using namespace bruhat::coxeter;

namespace {

// Oracle: number of inversions of a one-line permutation string.
int inversions(const std::string& oneline) {
  int inv = 0;
  for (std::size_t i = 0; i < oneline.size(); ++i)
    for (std::size_t j = i + 1; j < oneline.size(); ++j)
      if (oneline[i] > oneline[j]) ++inv;
  return inv;
}

// Oracle: the set of products of all subwords of one reduced word of w.
// This set is exactly the lower interval [e, w].
std::set<Element> subword_products(const SystemPtr& sys, const Element& w) {
  std::vector<int> word = sys->reduced_word(w);
  std::set<Element> out;
  int n = static_cast<int>(word.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    Element v = sys->identity();
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) v = sys->multiply(v, word[i]);
    out.insert(v);
  }
  return out;
}

std::vector<Element> whole_group(const SystemPtr& sys, int max_len) {
  return enumerate_elements(sys, max_len, 1 << 20);
}

}  // namespace

TEST_CASE("permutation lengths equal inversion counts") {
  auto s4 = CoxeterSystem::symmetric(4);
  for (const Element& w : whole_group(s4, 6)) CHECK(w.length() == inversions(w.str()));

  auto s7 = CoxeterSystem::symmetric(7);
  std::mt19937 rng(7);
  std::string line = "1234567";
  for (int rep = 0; rep < 50; ++rep) {
    std::shuffle(line.begin(), line.end(), rng);
    Element w = s7->parse(line);
    CHECK(w.length() == inversions(line));
    CHECK(w.str() == line);
  }
}

TEST_CASE("reduced words evaluate back and the stored word is shortlex least") {
  auto s4 = CoxeterSystem::symmetric(4);
  for (const Element& w : whole_group(s4, 6)) {
    std::vector<std::vector<int>> words = s4->reduced_words(w);
    CHECK(std::set<std::vector<int>>(words.begin(), words.end()).size() == words.size());
    for (const auto& word : words) {
      CHECK(static_cast<int>(word.size()) == w.length());
      CHECK(s4->from_word(word) == w);
    }
    std::vector<int> canon = s4->reduced_word(w);
    CHECK(s4->from_word(canon) == w);
    CHECK(*std::min_element(words.begin(), words.end()) == canon);
  }

  Element w0 = s4->parse("4321");
  CHECK(s4->reduced_words(w0).size() == 16);
  auto s3 = CoxeterSystem::symmetric(3);
  CHECK(s3->reduced_words(s3->parse("321")).size() == 2);
}

TEST_CASE("bruhat comparison matches the subword oracle on all of S4") {
  auto s4 = CoxeterSystem::symmetric(4);
  std::vector<Element> all = whole_group(s4, 6);
  for (const Element& w : all) {
    std::set<Element> below = subword_products(s4, w);
    for (const Element& u : all) CHECK(bruhat_leq(u, w) == (below.count(u) > 0));
  }
}

TEST_CASE("bruhat comparison is word independent") {
  auto s4 = CoxeterSystem::symmetric(4);
  std::vector<Element> all = whole_group(s4, 6);
  for (const Element& w : all) {
    std::vector<std::vector<int>> words = s4->reduced_words(w);
    for (const Element& u : all) {
      bool expect = bruhat_leq(u, w);
      for (const auto& word : words) CHECK(bruhat_leq_scan(u, word) == expect);
    }
  }
}

TEST_CASE("lifting property, exhaustively on S4") {
  // With ws < w and us > u, the three relations u <= w, us <= w, u <= ws
  // are all equivalent.
  auto s4 = CoxeterSystem::symmetric(4);
  std::vector<Element> all = whole_group(s4, 6);
  for (const Element& w : all)
    for (const Element& u : all)
      for (int s = 0; s < 3; ++s) {
        Element ws = s4->multiply(w, s), us = s4->multiply(u, s);
        if (ws.length() > w.length() || us.length() < u.length()) continue;
        bool a = bruhat_leq(u, w), b = bruhat_leq(us, w), c = bruhat_leq(u, ws);
        CHECK(a == b);
        CHECK(a == c);
      }
}

TEST_CASE("descent sets and sigma") {
  auto s3 = CoxeterSystem::symmetric(3);
  Element w0 = s3->parse("321");
  CHECK(s3->right_descents(w0) == std::vector<int>{0, 1});
  CHECK(s3->left_descents(w0) == std::vector<int>{0, 1});
  CHECK(s3->right_descents(s3->identity()).empty());
  Element s1 = s3->generator(0);
  CHECK(sigma(s3->identity(), 0) == 1);
  CHECK(sigma(s1, 0) == -1);

  // right and left descents agree with length changes everywhere in S4
  auto s4 = CoxeterSystem::symmetric(4);
  for (const Element& w : whole_group(s4, 6))
    for (int s = 0; s < 3; ++s) {
      auto rd = s4->right_descents(w);
      bool is_rd = std::find(rd.begin(), rd.end(), s) != rd.end();
      CHECK(is_rd == (s4->multiply(w, s).length() < w.length()));
      auto ld = s4->left_descents(w);
      bool is_ld = std::find(ld.begin(), ld.end(), s) != ld.end();
      auto lw = s4->reduced_word(w);
      lw.insert(lw.begin(), s);
      CHECK(is_ld == (s4->from_word(lw).length() < w.length()));
    }
}

TEST_CASE("parsing rejects malformed input") {
  auto s4 = CoxeterSystem::symmetric(4);
  CHECK_THROWS_AS(s4->parse("1325"), std::invalid_argument);
  CHECK_THROWS_AS(s4->parse("1123"), std::invalid_argument);
  CHECK_THROWS_AS(s4->parse("12"), std::invalid_argument);
  CHECK(s4->parse("e") == s4->identity());
  CHECK(s4->parse("3 1 2 4") == s4->parse("3124"));  // stray spaces are fine
  CHECK_THROWS_AS(s4->parse("1 4"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::symmetric(13), bruhat::ResourceCapError);
  CHECK_THROWS_AS(CoxeterSystem::symmetric(0), std::invalid_argument);
}

TEST_CASE("elements of different systems do not mix") {
  auto a = CoxeterSystem::symmetric(3);
  auto b = CoxeterSystem::symmetric(4);
  CHECK_THROWS_AS((void)a->multiply(b->identity(), 0), std::invalid_argument);
  CHECK_THROWS_AS((void)bruhat_leq(a->identity(), b->identity()), std::invalid_argument);
}

TEST_CASE("universal system has unique reduced words") {
  auto u2 = CoxeterSystem::universal(2);
  CHECK(whole_group(u2, 3).size() == 7);  // e, 1, 2, 12, 21, 121, 212
  Element g = u2->from_word({0, 1, 0});
  CHECK(g.length() == 3);
  CHECK(u2->reduced_words(g) == std::vector<std::vector<int>>{{0, 1, 0}});
  CHECK(u2->multiply(u2->generator(0), 0) == u2->identity());

  Element w = u2->from_word({0, 1, 0});
  Interval iv = bruhat_interval(u2->identity(), w);
  CHECK(iv.elements.size() == 6);  // e, 1, 2, 12, 21, 121
  CHECK(bruhat::poset::is_eulerian(iv.poset));
  CHECK(!bruhat_leq(u2->from_word({1, 0, 1}), w));
}

TEST_CASE("generic backend on the S3 matrix agrees with the permutation backend") {
  CoxeterMatrix m = CoxeterMatrix::type_a(2);
  auto gen = CoxeterSystem::generic(m, 8);
  auto s3 = CoxeterSystem::symmetric(3);
  std::vector<Element> ge = whole_group(gen, 3);
  REQUIRE(ge.size() == 6);
  CHECK(gen->multiply(gen->from_word({0, 1}), 0) == gen->from_word({1, 0, 1}));
  CHECK(gen->from_word({0, 1, 0}).str() == "1 2 1");  // shortlex canonical word

  // map each element across by a reduced word; all Bruhat relations agree
  std::vector<Element> mates;
  for (const Element& g : ge) mates.push_back(s3->from_word(gen->reduced_word(g)));
  for (std::size_t i = 0; i < ge.size(); ++i) {
    CHECK(ge[i].length() == mates[i].length());
    for (std::size_t j = 0; j < ge.size(); ++j)
      CHECK(bruhat_leq(ge[i], ge[j]) == bruhat_leq(mates[i], mates[j]));
  }
}

TEST_CASE("generic backend enforces its word cap") {
  auto gen = CoxeterSystem::generic(CoxeterMatrix::dihedral(0), 4);
  Element w = gen->from_word({0, 1, 0, 1});
  CHECK(w.length() == 4);
  CHECK_THROWS_AS((void)gen->multiply(w, 0), bruhat::ResourceCapError);
}

TEST_CASE("coxeter matrix parsing") {
  CoxeterMatrix m = CoxeterMatrix::parse("3\n3 2\ninf\n");
  CHECK(m.rank() == 3);
  CHECK(m.entry(0, 1) == 3);
  CHECK(m.entry(0, 2) == 2);
  CHECK(m.entry(1, 2) == CoxeterMatrix::infinite);
  CHECK(m.entry(2, 1) == CoxeterMatrix::infinite);
  CHECK(CoxeterMatrix::parse(m.format()).format() == m.format());
  CHECK_THROWS_AS(CoxeterMatrix::parse("2\n1\n"), std::invalid_argument);    // order below 2
  CHECK_THROWS_AS(CoxeterMatrix::parse("2\n3\nstray"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterMatrix::parse("3\n3 2\n"), std::invalid_argument);  // missing entry
  CHECK_THROWS_AS(CoxeterMatrix::parse("-1\n"), std::invalid_argument);
}

TEST_CASE("interval enumeration matches the subword oracle") {
  auto s4 = CoxeterSystem::symmetric(4);
  std::vector<Element> all = whole_group(s4, 6);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int done = 0;
  while (done < 40) {
    Element u = all[pick(rng)], w = all[pick(rng)];
    if (!bruhat_leq(u, w)) continue;
    ++done;
    Interval iv = bruhat_interval(u, w);
    std::set<Element> expect;
    for (const Element& v : subword_products(s4, w))
      if (bruhat_leq(u, v)) expect.insert(v);
    CHECK(expect == std::set<Element>(iv.elements.begin(), iv.elements.end()));
    for (std::size_t i = 0; i < iv.elements.size(); ++i) {
      CHECK(iv.index_of(iv.elements[i]) == static_cast<int>(i));
      CHECK(iv.poset.rank(static_cast<int>(i)) == iv.elements[i].length() - u.length());
    }
  }
}

TEST_CASE("the full lower interval of a coxeter element is boolean") {
  auto s4 = CoxeterSystem::symmetric(4);
  Interval iv = bruhat_interval(s4->identity(), s4->parse("2341"));
  REQUIRE(iv.elements.size() == 8);
  CHECK(bruhat::poset::is_isomorphic(iv.poset, testutil::boolean_lattice(3)));
}

TEST_CASE("interval preconditions and budget") {
  auto s4 = CoxeterSystem::symmetric(4);
  CHECK_THROWS_AS(bruhat_interval(s4->parse("2134"), s4->parse("1243")),
                  std::invalid_argument);
  CHECK_THROWS_AS(bruhat_interval(s4->identity(), s4->parse("4321"), 5),
                  bruhat::ResourceCapError);
}
