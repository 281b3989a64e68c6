#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "skan/core.hpp"

using namespace skan;

namespace {

void identities_hold(const SSet& X, int N) { check_identities(oracle::levels_of(X, N)); }

std::vector<std::size_t> gens(const SSet& X) {
  std::vector<std::size_t> g;
  for (int k = 0; k <= X.top(); ++k) g.push_back(X.ngen(k));
  return g;
}

}  // namespace

TEST_CASE("standard simplices have the expected generators") {
  auto D2 = simplex(2);
  CHECK(gens(*D2) == std::vector<std::size_t>{3, 3, 1});
  auto H = generate_standard(StdKind::Horn, 2, 1);
  CHECK(gens(*H) == std::vector<std::size_t>{3, 2});
  CHECK(H->find_gen(1, "01"));
  CHECK(H->find_gen(1, "12"));
  CHECK_FALSE(H->find_gen(1, "02"));
  auto B = generate_standard(StdKind::Boundary, 3);
  CHECK(gens(*B) == std::vector<std::size_t>{4, 6, 4});
  CHECK_THROWS_AS(generate_standard(StdKind::Horn, 2, 3), Error);
}

TEST_CASE("level sizes follow the Eilenberg-Zilber count") {
  for (int n = 0; n <= 3; ++n) {
    auto D = simplex(n);
    for (int m = 0; m <= 5; ++m) {
      CHECK(D->size(m) == oracle::level_count(gens(*D), m));
      CHECK(D->size(m) == oracle::monotone(m, n).size());
    }
  }
}

TEST_CASE("constructor outputs satisfy the simplicial identities") {
  std::vector<SSetP> xs = {simplex(3), generate_standard(StdKind::Boundary, 3),
                           generate_standard(StdKind::Horn, 3, 0), circle_min(),
                           generate_standard(StdKind::SphereMin, 1)};
  xs.push_back(product(simplex(1), simplex(2)).X);
  xs.push_back(product(circle_min(), simplex(1)).X);
  xs.push_back(reduce_n(simplex(2), 0));
  xs.push_back(coskeleton(skeleton(simplex(1), 0), 0, 3));
  for (auto& X : xs) CHECK_NOTHROW(identities_hold(*X, std::min(X->limit(), 4)));
}

TEST_CASE("circle_min is the quotient of the interval by its boundary") {
  auto I = simplex(1);
  auto q = quotient_by_relation(I, {{nondeg(0, 0), nondeg(0, 1)}});
  CHECK(gens(*q.X) == std::vector<std::size_t>{1, 1});
  CHECK(find_iso(q.X, circle_min()));
  CHECK_NOTHROW(q.proj.validate());
  auto same = quotient_by_relation(I, {});
  CHECK(find_iso(same.X, I));
}

TEST_CASE("relations incompatible with faces are rejected") {
  auto I = simplex(1);
  Cell e = nondeg(1, 0);
  Cell s = I->cell(1, I->point_at(1, 0));
  CHECK_THROWS_MATCHES(quotient_by_relation(I, {{e, s}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& x) { return x.kind() == ErrorKind::RelationNotSimplicial; }));
}

TEST_CASE("normalize validates raw data") {
  std::vector<RawSimplex> raw = {{"a", 0, {}, ""}, {"b", 0, {}, ""}, {"c", 0, {}, ""},
                                 {"ab", 1, {"b", "a"}, ""}, {"bc", 1, {"c", "b"}, ""},
                                 {"ac", 1, {"c", "a"}, ""}, {"abc", 2, {"bc", "ac", "ab"}, ""}};
  auto X = normalize(raw);
  CHECK(find_iso(X, simplex(2)));
  auto bad = raw;
  bad[6].faces = {"bc", "ab", "ac"};
  try {
    normalize(bad);
    FAIL("expected an identity violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SimplicialIdentityViolation);
  }
  auto deg = raw;
  deg.push_back({"s0(a)", 1, {"a", "a"}, ""});
  try {
    normalize(deg);
    FAIL("expected a rejected degenerate entry");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateGeneratorListed);
  }
  auto dangling = raw;
  dangling[3].faces = {"zz", "a"};
  try {
    normalize(dangling);
    FAIL("expected a dangling face");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DanglingFace);
  }
}

TEST_CASE("products") {
  auto I = simplex(1);
  auto P = product(I, I);
  CHECK(gens(*P.X) == std::vector<std::size_t>{oracle::product_nondeg(1, 1, 0),
                                               oracle::product_nondeg(1, 1, 1),
                                               oracle::product_nondeg(1, 1, 2)});
  CHECK(gens(*P.X) == std::vector<std::size_t>{4, 5, 2});
  auto Q = product(simplex(1), simplex(2));
  for (int m = 0; m <= 3; ++m) CHECK(Q.X->ngen(m) == oracle::product_nondeg(1, 2, m));
  auto U = product(point(), generate_standard(StdKind::Boundary, 2));
  CHECK(is_iso(U.p2));
  CHECK_NOTHROW(P.p1.validate());
  CHECK_NOTHROW(P.p2.validate());
}

TEST_CASE("fiber product of identities is the object") {
  auto X = generate_standard(StdKind::Horn, 2, 0);
  auto id = SMap::identity(X);
  auto F = fiber_product(id, id);
  CHECK(is_iso(F.p1));
}

TEST_CASE("hom_set sizes") {
  std::vector<SSetP> xs = {simplex(1), circle_min(), generate_standard(StdKind::Boundary, 2)};
  for (auto& X : xs)
    for (int n = 0; n <= 3; ++n) CHECK(hom_raw(*simplex(n), *X).size() == X->size(n));
  // shared vertex forces f0 <= f1 <= f2: monotone triples in {0,1}
  auto horn = generate_standard(StdKind::Horn, 2, 1);
  CHECK(hom_raw(*horn, *simplex(1)).size() == oracle::monotone(2, 1).size());
  CHECK(hom_raw(*horn, *simplex(1)).size() == 4);
  auto maps = hom_set(generate_standard(StdKind::Boundary, 2), circle_min());
  // each edge goes to e or the degenerate edge; the single triangle relation is absent
  CHECK(maps.size() == 8);
  for (auto& m : maps) CHECK_NOTHROW(m.validate());
}

TEST_CASE("coskeleta and the sk-cosk adjunction") {
  auto two = skeleton(simplex(1), 0);
  auto C = coskeleton(two, 0, 4);
  for (int q = 0; q <= 4; ++q) CHECK(C->size(q) == (std::size_t(1) << (q + 1)));
  CHECK(C->coskeletal_above == 0);
  std::vector<SSetP> As = {simplex(2), generate_standard(StdKind::Boundary, 2), simplex(1)};
  std::vector<SSetP> Xs = {circle_min(), simplex(1), generate_standard(StdKind::Horn, 2, 0)};
  for (auto& A : As)
    for (auto& X : Xs)
      for (int n = 0; n <= 2; ++n) {
        auto lhs = hom_raw(*skeleton(A, n), *X).size();
        auto rhs = hom_raw(*A, *coskeleton(X, n, std::max(A->top(), 0))).size();
        CHECK(lhs == rhs);
      }
  CHECK(skeleton(simplex(2), 0)->ngen(0) == 3);
  CHECK(skeleton(simplex(2), 0)->top() == 0);
}

TEST_CASE("reduction") {
  CHECK(find_iso(reduce_n(simplex(1), 0), circle_min()));
  CHECK(find_iso(reduce_n(circle_min(), 0), circle_min()));
  auto R = reduce_n(simplex(2), 1);
  CHECK(is_n_reduced(*R, 1));
  CHECK(R->ngen(2) == 1);
  CHECK_THROWS_AS(reduce_n(empty_sset(), 0), Error);
}

TEST_CASE("Eilenberg subcomplex") {
  auto two = coproduct({point(), simplex(1)}).X;
  auto E = eilenberg_subcomplex(two, 0, 1);
  CHECK(gens(*E.X) == std::vector<std::size_t>{1});
  auto E2 = eilenberg_subcomplex(circle_min(), 0, 1);
  CHECK(find_iso(E2.X, circle_min()));
  auto E3 = eilenberg_subcomplex(circle_min(), 0, 2);
  CHECK(gens(*E3.X) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(eilenberg_subcomplex(circle_min(), 3, 1), Error);
}

TEST_CASE("Kan checks on small objects") {
  auto r = check_kan(simplex(1), 2);
  CHECK_FALSE(r.ok);
  CHECK(r.dimension >= 1);
  CHECK_FALSE(r.detail.empty());
  CHECK(check_kan(point(), 3).ok);
  CHECK(check_kan(empty_sset(), 2).ok);
  CHECK(check_kan(coskeleton(skeleton(simplex(1), 0), 0, 4), 3).ok);
  CHECK(check_acyclic_fibration(SMap::identity(simplex(2)), 3).ok);
}

TEST_CASE("function complexes") {
  CHECK(function_complex(simplex(1), simplex(1), 0)->size(0) == 3);
  auto X = generate_standard(StdKind::Boundary, 2);
  auto F = function_complex(point(), X, 2);
  for (int q = 0; q <= 2; ++q) CHECK(F->size(q) == X->size(q));
  auto P = path_object(simplex(1), 1);
  CHECK_NOTHROW(P.ev0.validate());
  CHECK_NOTHROW(P.ev1.validate());
  CHECK(same_map(compose(P.ev0, P.constant_paths), SMap::identity(simplex(1))));
}

TEST_CASE("Ex") {
  auto E = ex(point(), 1, 2);
  for (int q = 0; q <= 2; ++q) CHECK(E.X->size(q) == 1);
  auto C = ex(circle_min(), 1, 2);
  // (Ex X)_0 = hom(sd Delta[0], X) = X_0; edges are pairs of edges of X with a common d0
  CHECK(C.X->size(0) == 1);
  CHECK(C.X->size(1) == 4);
  CHECK(C.X->size(1) > circle_min()->size(1));
  CHECK_NOTHROW(C.unit.validate());
}
