#include "doctest.h"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/flags.hpp"
#include "bruhat/poset.hpp"
#include "util.hpp"

using namespace bruhat::flags;
using bruhat::NotInCdSpanError;
using testutil::boolean_lattice;
using testutil::polygon_face_lattice;

namespace {

Word word_of(const std::string& s) {
  Word w;
  for (char ch : s) w = w.append(ch == 'b' || ch == 'd' ? 1 : 0);
  return w;
}

template <class P>
P poly(std::initializer_list<std::pair<const char*, long long>> terms) {
  P p;
  for (const auto& [w, c] : terms) p.add_term(word_of(w), c);
  return p;
}

const AbPolynomial kBoolean3Ab =
    poly<AbPolynomial>({{"aa", 1}, {"ab", 2}, {"ba", 2}, {"bb", 1}});
const CdPolynomial kBoolean3Cd = poly<CdPolynomial>({{"cc", 1}, {"d", 1}});
const CdPolynomial kSquareCd = poly<CdPolynomial>({{"cc", 1}, {"d", 2}});

}  // namespace

TEST_CASE("word packing and orderings") {
  Word ba = word_of("ba");
  CHECK(ba.len == 2);
  CHECK(ba.letter(0) == 1);
  CHECK(ba.letter(1) == 0);
  CHECK(Word::of({1, 0}) == ba);
  CHECK(word_of("ab").lex_less(ba));
  CHECK(word_of("a").lex_less(word_of("ab")));  // proper prefix first

  // degree-lex on cd-words: degree counts c once and d twice
  DegLexLess<CdAlphabet> less;
  CHECK(CdAlphabet::degree(word_of("d")) == 2);
  CHECK(less(word_of("c"), word_of("d")));
  CHECK(less(word_of("cc"), word_of("d")));   // same degree, lex
  CHECK(less(word_of("d"), word_of("ccc")));  // lower degree first
}

TEST_CASE("polynomial arithmetic") {
  AbPolynomial c = poly<AbPolynomial>({{"a", 1}, {"b", 1}});
  CHECK(c * c == poly<AbPolynomial>({{"aa", 1}, {"ab", 1}, {"ba", 1}, {"bb", 1}}));
  CHECK((c + c).halved() == c);
  CHECK((c - c).is_zero());
  CHECK(c.scaled(3).coeff(word_of("a")) == 3);
  CHECK_THROWS_AS(c.scaled(3).halved(), std::logic_error);
  CHECK(AbPolynomial::zero().degree() == -1);
  CHECK(AbPolynomial::one().degree() == 0);
}

TEST_CASE("degree rejects inhomogeneous polynomials") {
  AbPolynomial p = poly<AbPolynomial>({{"a", 1}, {"aa", 1}});
  CHECK_THROWS_AS(p.degree(), std::logic_error);
}

TEST_CASE("string forms") {
  CHECK(kBoolean3Cd.str() == "cc + d");
  CHECK(poly<CdPolynomial>({{"d", -2}}).str() == "-2d");
  CHECK(CdPolynomial::one().str() == "1");
  CHECK(CdPolynomial::zero().str() == "0");
  Json j = cd_json(kSquareCd);
  CHECK(j["basis"] == "cd");
  CHECK(j["degree"] == 2);
  CHECK(j["terms"]["d"] == 2);
}

TEST_CASE("flag vectors of the rank three subset lattice") {
  FlagVector f = flag_f(boolean_lattice(3));
  REQUIRE(f.n == 2);
  CHECK(f.at(0b00) == 1);
  CHECK(f.at(0b01) == 3);  // rank set {1}
  CHECK(f.at(0b10) == 3);  // rank set {2}
  CHECK(f.at(0b11) == 6);
  FlagVector h = flag_h(f);
  CHECK(h.at(0b00) == 1);
  CHECK(h.at(0b01) == 2);
  CHECK(h.at(0b10) == 2);
  CHECK(h.at(0b11) == 1);

  CHECK(flag_index(f) ==
        poly<AbPolynomial>({{"aa", 1}, {"ba", 3}, {"ab", 3}, {"bb", 6}}));
  CHECK(substitute_a_minus_b(flag_index(f)) == kBoolean3Ab);
  CHECK(ab_index(boolean_lattice(3)) == kBoolean3Ab);
}

TEST_CASE("flag vectors of polygons") {
  for (int m = 2; m <= 6; ++m) {
    FlagVector f = flag_f(polygon_face_lattice(m));
    CHECK(f.at(0b01) == m);
    CHECK(f.at(0b10) == m);
    CHECK(f.at(0b11) == 2 * m);
    CHECK(cd_index(polygon_face_lattice(m)) ==
          poly<CdPolynomial>({{"cc", 1}, {"d", m - 2}}));
  }
}

TEST_CASE("flag counting needs at least one proper rank") {
  CHECK_THROWS_AS(flag_f(bruhat::poset::chain(0)), std::invalid_argument);
  FlagVector f = flag_f(bruhat::poset::chain(1));
  CHECK(f.n == 0);
  CHECK(f.at(0) == 1);
}

TEST_CASE("ab to cd conversion and back") {
  CHECK(ab_to_cd(kBoolean3Ab) == kBoolean3Cd);
  CHECK(cd_to_ab(kBoolean3Cd) == kBoolean3Ab);
  CHECK(cd_to_ab(poly<CdPolynomial>({{"d", 1}})) ==
        poly<AbPolynomial>({{"ab", 1}, {"ba", 1}}));

  // round trips on assorted cd polynomials
  std::vector<CdPolynomial> samples{
      CdPolynomial::one(),
      kSquareCd,
      poly<CdPolynomial>({{"ccc", 1}, {"cd", 2}, {"dc", 2}}),
      poly<CdPolynomial>({{"dd", 5}, {"ccd", -3}, {"cccc", 1}}),
  };
  for (const auto& q : samples) CHECK(ab_to_cd(cd_to_ab(q)) == q);
}

TEST_CASE("polynomials outside the cd span are rejected") {
  CHECK_THROWS_AS(ab_to_cd(poly<AbPolynomial>({{"a", 1}})), NotInCdSpanError);
  // a three element chain fails the symmetry the span encodes
  CHECK_THROWS_AS(ab_to_cd(ab_index(bruhat::poset::chain(3))), NotInCdSpanError);
}

TEST_CASE("the cd derivation follows the product rule") {
  CHECK(cd_derivation(poly<CdPolynomial>({{"c", 1}})) == poly<CdPolynomial>({{"d", 1}}));
  CHECK(cd_derivation(poly<CdPolynomial>({{"d", 1}})) == poly<CdPolynomial>({{"dc", 1}}));
  CHECK(cd_derivation(poly<CdPolynomial>({{"cc", 1}})) ==
        poly<CdPolynomial>({{"cd", 1}, {"dc", 1}}));
  CHECK(cd_derivation(poly<CdPolynomial>({{"cd", 1}})) ==
        poly<CdPolynomial>({{"dd", 1}, {"cdc", 1}}));
}

TEST_CASE("pyramids at the polynomial level track pyramids of posets") {
  CHECK(pyramid_cd(CdPolynomial::one()) == poly<CdPolynomial>({{"c", 1}}));
  CHECK(pyramid_cd(poly<CdPolynomial>({{"c", 1}})) == kBoolean3Cd);
  CHECK(pyramid_cd(kBoolean3Cd) ==
        poly<CdPolynomial>({{"ccc", 1}, {"cd", 2}, {"dc", 2}}));

  for (const auto& p : {boolean_lattice(2), boolean_lattice(3), polygon_face_lattice(4)}) {
    CHECK(pyramid_cd(cd_index(p)) == cd_index(bruhat::poset::pyramid(p)));
    CHECK(pyramid_cd_sum(p) == pyramid_cd(cd_index(p)));
  }
}

TEST_CASE("shaving at the polynomial level tracks shaving of posets") {
  bruhat::poset::GradedPoset b3 = boolean_lattice(3);
  CdPolynomial flank = cd_index(bruhat::poset::closed_interval(b3, 1, 7).poset);
  CHECK(flank == poly<CdPolynomial>({{"c", 1}}));
  CHECK(shave_cd(kBoolean3Cd, flank) == kSquareCd);
  CHECK(cd_index(bruhat::poset::shave(b3, 1).poset) == kSquareCd);
  CHECK(shave_cd_sum(b3, 1) == kSquareCd);
  CHECK_THROWS_AS(shave_cd(kBoolean3Cd, kBoolean3Cd), std::invalid_argument);
}

TEST_CASE("zip subtraction in all three bases") {
  bruhat::poset::GradedPoset sq = polygon_face_lattice(4);
  bruhat::poset::GradedPoset tri = polygon_face_lattice(3);
  CHECK(zip_cd(kSquareCd, CdPolynomial::one(), CdPolynomial::one()) == kBoolean3Cd);
  CHECK(zip_ab(ab_index(sq), AbPolynomial::one(), AbPolynomial::one()) == ab_index(tri));
  CHECK(zip_flag_index(flag_index(flag_f(sq)), AbPolynomial::one(), AbPolynomial::one()) ==
        flag_index(flag_f(tri)));
  // degrees must satisfy whole = below + 2 + above
  CHECK_THROWS_AS(zip_cd(kSquareCd, CdPolynomial::one(), poly<CdPolynomial>({{"c", 1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(zip_cd(kSquareCd, CdPolynomial::one(), CdPolynomial::zero()),
                  std::invalid_argument);
}

TEST_CASE("cd word counts follow the fibonacci numbers") {
  CHECK(fibonacci(1) == 1);
  CHECK(fibonacci(2) == 1);
  CHECK(fibonacci(10) == 55);
  for (int d = 0; d <= 10; ++d) CHECK(cd_monomial_count(d) == fibonacci(d + 1));
}
