#include "doctest.h"

#include <string>
#include <vector>

#include "bruhat/constructions.hpp"
#include "bruhat/coxeter.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/flags.hpp"
#include "bruhat/poset.hpp"
#include "util.hpp"

using namespace bruhat::constructions;
using bruhat::coxeter::CoxeterSystem;
using bruhat::flags::CdPolynomial;
using bruhat::flags::fibonacci;
using testutil::boolean_lattice;
using testutil::polygon_face_lattice;

namespace {

CdPolynomial cd_word(const std::string& s, long long c = 1) {
  bruhat::flags::Word w;
  for (char ch : s) w = w.append(ch == 'd' ? 1 : 0);
  return CdPolynomial::monomial(w, c);
}

}  // namespace

TEST_CASE("boolean intervals match the subset lattice") {
  for (int n = 1; n <= 4; ++n) {
    BooleanInterval b = boolean_interval(n);
    CHECK(b.direct.size() == (1 << n));
    CHECK(bruhat::poset::is_isomorphic(b.direct, boolean_lattice(n)));
    CHECK(b.bruhat.poset.size() == (1 << n));
  }
}

TEST_CASE("boolean cd-indices against independent enumeration") {
  CHECK(boolean_cd(0) == CdPolynomial::one());
  CHECK(boolean_cd(1) == CdPolynomial::one());
  CHECK(boolean_cd(2) == cd_word("c"));
  CHECK(boolean_cd(3) == cd_word("cc") + cd_word("d"));
  for (int n = 2; n <= 6; ++n)
    CHECK(boolean_cd(n) == bruhat::flags::cd_index(boolean_lattice(n)));
}

TEST_CASE("exact matrix rank") {
  CHECK(matrix_rank_exact({{1, 0}, {0, 1}}) == 2);
  CHECK(matrix_rank_exact({{1, 2}, {2, 4}}) == 1);
  CHECK(matrix_rank_exact({{0, 1}, {1, 0}}) == 2);
  CHECK(matrix_rank_exact({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
  CHECK(matrix_rank_exact({{2, 3}, {4, 6}, {6, 9}}) == 1);
  CHECK(matrix_rank_exact({{0, 0}, {0, 0}}) == 0);
  CHECK(matrix_rank_exact({}) == 0);
  long long big = 1000000;  // keeps intermediates inside 64 bits
  CHECK(matrix_rank_exact({{big, 0, 0}, {0, big, 0}, {0, 0, big}}) == 3);
  long long huge = 1000000000;  // determinant overflows: refuse, never lie
  CHECK_THROWS_AS(matrix_rank_exact({{huge, 0, 0}, {0, huge, 0}, {0, 0, huge}}),
                  bruhat::OverflowError);
}

TEST_CASE("the fibonacci family spans exactly") {
  SpanningFamily fam = spanning_family(3);
  REQUIRE(fam.words.size() == 2);
  CHECK(fam.cds[0] == cd_word("cc") + cd_word("d"));
  CHECK(fam.cds[1] == cd_word("cc"));
  CHECK(fam.rank == 2);
  for (int n = 1; n <= 5; ++n) {
    SpanningFamily f = spanning_family(n);
    CHECK(static_cast<long long>(f.words.size()) == fibonacci(n));
    CHECK(spanning_rank(n) == fibonacci(n));
    for (const auto& w : f.words) CHECK(w.length() == n);
  }
  CHECK_THROWS_AS(spanning_family(0), std::invalid_argument);
}

TEST_CASE("lower interval span experiment stays in range") {
  long long r3 = type_a_lower_interval_rank(3);
  CHECK(r3 >= 1);
  CHECK(r3 <= fibonacci(1) + fibonacci(2) + fibonacci(3) + fibonacci(4));
  CHECK(type_a_lower_interval_rank(3) == r3);  // deterministic
}

TEST_CASE("dual stacked intervals for the polygon dimension") {
  for (int k = 0; k <= 3; ++k) {
    DualStacked ds = dual_stacked_interval(2, k);
    CHECK(ds.cd == ds.cd_bruteforce);
    CHECK(ds.cd == cd_word("cc") + cd_word("d", k + 1));
    CHECK(bruhat::poset::is_isomorphic(ds.interval.poset, polygon_face_lattice(3 + k)));
  }
  CHECK_THROWS_AS(dual_stacked_interval(1, 0), std::invalid_argument);
}

TEST_CASE("dual stacked intervals in dimension three") {
  DualStacked simplex = dual_stacked_interval(3, 0);
  CHECK(simplex.cd == boolean_cd(4));
  DualStacked ds = dual_stacked_interval(3, 1);
  CHECK(ds.cd == ds.cd_bruteforce);
  const auto& p = ds.interval.poset;
  CHECK(p.lower_covers(p.top()).size() == 5);
  CHECK(bruhat::poset::is_eulerian(p));
  CHECK(bruhat::poset::is_thin(p));
}

TEST_CASE("nonnegativity survey is clean on S4") {
  auto s4 = CoxeterSystem::symmetric(4);
  CheckReport rep = check_nonnegativity(s4, 6, bruhat::recursion::Method::recursion);
  CHECK(!rep.theorem_class);
  CHECK(rep.ok());
  CHECK(rep.checked > 0);
  CHECK(!rep.notes.empty());
  Json j = rep.to_json();
  CHECK(j["class"] == "conjecture");
  CHECK(j["violations"].empty());

  CheckReport both = check_nonnegativity(s4, 6, bruhat::recursion::Method::both);
  CHECK(both.ok());
  CHECK(both.checked == rep.checked);
}

TEST_CASE("lower intervals stay under the boolean ab bound") {
  auto s4 = CoxeterSystem::symmetric(4);
  CheckReport rep = check_boolean_bound(s4, 6);
  CHECK(rep.theorem_class);
  CHECK(rep.ok());
  CHECK(rep.checked == 24);
  CHECK(rep.to_json()["class"] == "theorem");
}

TEST_CASE("the cd level version of the boolean bound fails where expected") {
  auto s4 = CoxeterSystem::symmetric(4);
  CheckReport rep = check_boolean_bound_cd(s4, 6);
  CHECK(!rep.theorem_class);
  CHECK(!rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v["u"] == "1324" && v["w"] == "3412") found = true;
  CHECK(found);
}

TEST_CASE("general intervals stay under the dual stacked cd bound") {
  auto s4 = CoxeterSystem::symmetric(4);
  for (int k = 0; k <= 2; ++k) {
    CheckReport rep = check_dual_stacked_bound(s4, 2, k, 6);
    CHECK(!rep.theorem_class);
    CHECK(rep.ok());
    if (k <= 1) CHECK(rep.checked > 0);
  }
}
