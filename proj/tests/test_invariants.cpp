#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "skan/invariants.hpp"

using namespace skan;

namespace {

// One vertex, one loop a, one triangle with faces (a, *, a): H1 = Z/2.
SSetP moore2() {
  auto X = std::make_shared<SSet>();
  X->add_generator(0, "v", {});
  X->add_generator(1, "a", {nondeg(0, 0), nondeg(0, 0)});
  X->add_generator(2, "t", {nondeg(1, 0), degenerate_cell({0, 0}, 0, 0), nondeg(1, 0)});
  return X;
}

AbelianGroup Z(int r, std::vector<long long> t = {}) {
  AbelianGroup g;
  g.rank = r;
  g.torsion = std::move(t);
  return g;
}

long long euler(const SSet& X) {
  long long e = 0;
  for (int k = 0; k <= X.top(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long long>(X.ngen(k));
  return e;
}

}  // namespace

TEST_CASE("smith normal form") {
  CHECK(smith_diagonal(2, 2, {{0, 0, 2}, {0, 1, 4}, {1, 0, 6}, {1, 1, 8}}) == std::vector<long long>{2, 4});
  CHECK(smith_diagonal(2, 3, {{0, 0, 2}, {1, 1, 3}}) == std::vector<long long>{1, 6});
  CHECK(smith_diagonal(1, 1, {}).empty());
}

TEST_CASE("pi0 counts components") {
  CHECK(pi0_count(*simplex(2)) == 1);
  CHECK(pi0_count(*coproduct({simplex(1), point(), circle_min()}).X) == 3);
  CHECK(pi0_count(*empty_sset()) == 0);
}

TEST_CASE("homology of small objects") {
  CHECK(homology(*simplex(2), 2) == HomologyProfile{Z(1), Z(0), Z(0)});
  CHECK(homology(*generate_standard(StdKind::Boundary, 3), 2) == HomologyProfile{Z(1), Z(0), Z(1)});
  CHECK(homology(*circle_min(), 1) == HomologyProfile{Z(1), Z(1)});
  CHECK(homology(*moore2(), 2) == HomologyProfile{Z(1), Z(0, {2}), Z(0)});
  CHECK(homology(*product(circle_min(), circle_min()).X, 2) == HomologyProfile{Z(1), Z(2), Z(1)});
}

TEST_CASE("homology agrees with the Euler characteristic and mod-p ranks") {
  std::vector<SSetP> xs = {generate_standard(StdKind::Boundary, 2), generate_standard(StdKind::Horn, 3, 1),
                           moore2(), product(circle_min(), simplex(1)).X};
  for (auto& X : xs) {
    auto h = homology(*X, X->top());
    long long e = 0;
    for (std::size_t k = 0; k < h.size(); ++k) e += (k % 2 ? -1 : 1) * h[k].rank;
    CHECK(e == euler(*X));
  }
}

TEST_CASE("fundamental groups") {
  auto c = pi1(*circle_min(), 0);
  CHECK(c.abelianization() == Z(1));
  auto m = pi1(*moore2(), 0);
  CHECK(m.order() == 2);
  CHECK(pi1(*generate_standard(StdKind::Boundary, 3), 0).is_trivial());
  auto b = pi1(*generate_standard(StdKind::Boundary, 2), 0);
  CHECK(b.abelianization() == Z(1));
  auto t = pi1(*product(circle_min(), circle_min()).X, 0);
  CHECK(t.abelianization() == Z(2));
}

TEST_CASE("coset enumeration") {
  FPGroup s3{{"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}};
  CHECK(s3.order() == 6);
  FPGroup q8{{"i", "j"}, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}};
  CHECK(q8.order() == 8);
  FPGroup free1{{"x"}, {}};
  CHECK_THROWS_AS(free1.order(50), Error);
}

TEST_CASE("certificates") {
  auto pt = point();
  auto I = simplex(1);
  auto inc0 = SMap::from_function(pt, I, [](int, Idx) { return Idx(0); });
  auto inc = SMap::from_function(pt, I, [](int, Idx) { return Idx(1); });
  CHECK_THROWS_AS(we_certify(inc, Policy::RequireIso), Error);
  // homotopies run from the identity, so only the terminal vertex retracts
  CHECK_THROWS_AS(we_certify(inc0, Policy::TryRetract), Error);
  auto c = we_certify(inc, Policy::TryRetract);
  CHECK(c.level == CertLevel::Retract);
  CHECK(c.validate());

  auto B = generate_standard(StdKind::Boundary, 2);
  auto S = circle_min();
  int we = 0, fails = 0;
  for (auto& f : hom_set(B, S)) {
    try {
      auto w = we_certify(f, Policy::Invariants);
      CHECK(w.level == CertLevel::Invariants);
      CHECK(w.validate());
      ++we;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CertificateNotFound);
      ++fails;
    }
  }
  // degree +-1 maps pass, the rest change H1
  CHECK(we > 0);
  CHECK(fails > 0);
  auto id = SMap::identity(S);
  CHECK(we_certify(id, Policy::RequireIso).level == CertLevel::Iso);
}

TEST_CASE("homotopy classes into contractible and non-Kan targets") {
  auto hc = homotopy_classes(circle_min(), point());
  CHECK(hc.count == 1);
  try {
    homotopy_classes(circle_min(), simplex(1));
    FAIL("expected TargetNotKan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TargetNotKan);
  }
}
