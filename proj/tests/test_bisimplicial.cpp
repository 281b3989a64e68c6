#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "skan/bisimplicial.hpp"

using namespace skan;

namespace {

std::vector<SSetP> samples() {
  return {point(), simplex(1), simplex(2), circle_min(), generate_standard(StdKind::Boundary, 2)};
}

}  // namespace

TEST_CASE("constant and decalage bisimplicial sets satisfy the identities") {
  for (auto& X : samples()) {
    const_bisimplicial(X, 3, 3).validate();
    total_dec(X, 2, 2).validate();
  }
}

TEST_CASE("total of a constant object recovers it") {
  for (auto& X : samples()) {
    auto B = const_bisimplicial(X, 3, 3);
    auto M = diagonal_to_total(B, 3);
    for (int n = 0; n <= 3; ++n) CHECK(M.tot.X->size(n) == X->size(n));
    check_identities(oracle::levels_of(*M.tot.X, 3));
    CHECK(is_iso(M.d_to_total));
  }
}

TEST_CASE("total tuples satisfy the matching condition") {
  auto X = circle_min();
  auto B = total_dec(X, 3, 3);
  auto T = total(B, 3);
  check_identities(oracle::levels_of(*T.X, 3));
  for (int n = 1; n <= 3; ++n)
    for (auto& t : T.tuples[n])
      for (int p = 0; p < n; ++p) CHECK(B.vface[p][n - p][0][t[p]] == B.hface[p + 1][n - p - 1][p + 1][t[p + 1]]);
}

TEST_CASE("dec0 is a disjoint union of contractible pieces") {
  for (auto& X : samples()) {
    auto R = dec0(X, 3);
    CHECK(pi0_count(*R.D) == static_cast<int>(X->size(0)));
    CHECK(R.retract.validate());
    R.proj.validate();
    for (Idx x = 0; x < R.D->size(0); ++x) CHECK(R.proj.at(0, x) == X->face(1, 1, R.of[0][x]));
  }
}

TEST_CASE("row zero of the total decalage is dec0") {
  auto X = simplex(2);
  auto B = total_dec(X, 2, 2);
  auto R = dec0(X, 2);
  for (int q = 0; q <= 2; ++q) CHECK(B.size(0, q) == X->size(q + 1));
  // vertical faces on row 0 are d_1.. of X, matching the faces of Dec0 shifted by one
  for (Idx x = 0; x < B.size(0, 1); ++x) CHECK(B.vface[0][1][0][x] == X->face(2, 1, x));
  CHECK(R.D->size(1) == X->size(2));
}

TEST_CASE("unit into the total decalage is a weak equivalence") {
  for (auto& X : {simplex(1), circle_min(), generate_standard(StdKind::Boundary, 2)}) {
    auto U = total_unit(X, 3);
    U.unit.validate();
    auto c = we_certify(U.unit, Policy::Invariants, 2);
    CHECK(c.validate());
  }
}

TEST_CASE("bisimplicial maps out of Dec match maps into the total") {
  auto B = total_dec(circle_min(), 3, 3);
  auto T = total(B, 3);
  for (auto& X : {point(), simplex(1), generate_standard(StdKind::Boundary, 2)})
    CHECK(hom_bis_count(X, B) == hom_set(X, T.X).size());
  auto C = const_bisimplicial(simplex(1), 3, 3);
  auto TC = total(C, 3);
  for (auto& X : {point(), simplex(1), simplex(2)}) CHECK(hom_bis_count(X, C) == hom_set(X, TC.X).size());
}
