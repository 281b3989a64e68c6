#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "oracles.hpp"
#include "skan/groups.hpp"

using namespace skan;

namespace {

FinGroupP Zn(int n) { return std::make_shared<FinGroup>(cyclic_group(n)); }
FinGroupP S3() { return std::make_shared<FinGroup>(symmetric3()); }

AbelianGroup ab(int r, std::vector<long long> t = {}) {
  AbelianGroup g;
  g.rank = r;
  g.torsion = std::move(t);
  return g;
}

std::vector<std::vector<int>> table_of(const FinGroup& G) {
  std::vector<std::vector<int>> t(G.order(), std::vector<int>(G.order()));
  for (Idx a = 0; a < G.order(); ++a)
    for (Idx b = 0; b < G.order(); ++b) t[a][b] = static_cast<int>(G.mul(a, b));
  return t;
}

}  // namespace

TEST_CASE("finite groups") {
  auto s3 = symmetric3();
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.abelian());
  CHECK(oracle::conjugacy_classes(table_of(s3), static_cast<int>(s3.e)) == 3);
  CHECK(cyclic_group(4).abelian());
  auto p = direct_product({Zn(2), Zn(3)});
  CHECK(p.order() == 6);
  CHECK(p.abelian());
  CHECK(p.mul(p.join({1, 1}), p.join({1, 2})) == p.join({0, 0}));
  CHECK_THROWS_AS(group_from_table({"a", "b"}, {0, 0, 0, 0}), Error);
}

TEST_CASE("constant simplicial groups") {
  auto G = const_sgroup(Zn(2), 4);
  G->validate();
  for (int n = 0; n <= 4; ++n) CHECK(G->set->size(n) == 2);
  auto T = const_sgroup(Zn(1), 3);
  for (int n = 0; n <= 3; ++n) CHECK(T->set->size(n) == 1);
}

TEST_CASE("wbar level formula agrees with the total of the nerve") {
  for (auto H : {Zn(1), Zn(2), Zn(3), S3()}) {
    auto G = const_sgroup(H, 4);
    auto t0 = std::chrono::steady_clock::now();
    Wbar W = wbar(G, 4);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 5.0);
    std::vector<std::size_t> orders(5, H->order());
    for (int n = 0; n <= 4; ++n) CHECK(W.X()->size(n) == oracle::wbar_level(orders, n));
    CHECK(is_n_reduced(*W.X(), 0));
    check_identities(oracle::levels_of(*W.X(), 4));
  }
}

TEST_CASE("wbar of Z/2 has the homology of RP^infinity") {
  Wbar W = wbar(const_sgroup(Zn(2), 4), 4);
  auto h = homology(*W.X(), 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(h[n].rank == (n == 0 ? 1 : 0));
    CHECK(h[n].torsion == oracle::cyclic_homology_torsion(2, n));
  }
  auto h3 = homology(*wbar(const_sgroup(Zn(3), 4), 4).X(), 3);
  CHECK(h3[1].torsion == std::vector<long long>{3});
  CHECK(h3[2] == ab(0));
}

TEST_CASE("wbar is Kan and Delta[1] is not") {
  CHECK(check_kan(wbar(const_sgroup(Zn(2), 4), 4).X(), 4).ok);
  CHECK(check_kan(wbar(const_sgroup(S3(), 4), 4).X(), 3).ok);
  auto r = check_kan(simplex(1), 2);
  CHECK_FALSE(r.ok);
  CHECK(r.dimension == 2);
}

TEST_CASE("universal bundle") {
  auto G = const_sgroup(Zn(2), 4);
  WBundle U = w_bundle(G, 3);
  for (int n = 0; n <= 3; ++n) CHECK(U.WG.X->size(n) == (std::size_t{1} << (n + 1)));
  U.bundle.validate();
  CHECK(U.bundle.action.free());
  auto h = homology(*U.WG.X, 2);
  CHECK(h == HomologyProfile{ab(1), ab(0), ab(0)});
  CHECK(pi0_count(*U.WG.X) == 1);
  CHECK(check_kan(U.fib, 3).ok);
  // fiber over the base point is G
  auto pt = point();
  auto b = SMap::from_function(pt, U.W.X(), [](int, Idx) { return Idx(0); });
  auto F = fiber_product(U.fib, b);
  CHECK(find_iso(F.X, const_sgroup(Zn(2), 3)->set));
  auto T = w_bundle(const_sgroup(Zn(1), 3), 3);
  for (int n = 0; n <= 3; ++n) CHECK(T.WG.X->size(n) == 1);
}

TEST_CASE("wbar of an abelian group is a simplicial abelian group") {
  auto A = const_sgroup(Zn(2), 4);
  auto W = wbar_group(A, 4);
  W->validate();
  CHECK(W->abelian());
  CHECK(find_iso(W->set, wbar(A, 4).X()));
  CHECK(wbar_iter(A, 0, 4) == A->set);
  CHECK_THROWS_AS(wbar_group(const_sgroup(S3(), 3), 3), Error);
  auto K2 = wbar_iter(A, 2, 3);
  auto h = homology(*K2, 2);
  CHECK(h[1] == ab(0));
  CHECK(h[2] == ab(0, {2}));
}

TEST_CASE("Dold-Kan Eilenberg-MacLane objects") {
  auto E0 = dold_kan_em(Zn(2), 0, 3);
  E0->validate();
  CHECK(find_iso(E0->set, const_sgroup(Zn(2), 3)->set));
  auto E1 = dold_kan_em(Zn(2), 1, 3);
  E1->validate();
  auto W = wbar(const_sgroup(Zn(2), 3), 3);
  CHECK(find_iso(E1->set, W.X()));
  CHECK(homology(*E1->set, 2) == homology(*W.X(), 2));
  auto E2 = dold_kan_em(Zn(3), 2, 3);
  E2->validate();
  auto h = homology(*E2->set, 2);
  CHECK(h[1] == ab(0));
  CHECK(h[2] == ab(0, {3}));
  CHECK_THROWS_AS(dold_kan_em(S3(), 1, 3), Error);
}

TEST_CASE("Kan loop group") {
  auto L = kan_loop_group(point(), 2);
  for (auto& lv : L.levels) CHECK(lv.gens.empty());
  auto C = kan_loop_group(circle_min(), 2);
  CHECK(C.levels[0].gens.size() == 1);
  CHECK(C.pi0().abelianization() == pi1(*circle_min(), 0).abelianization());
  CHECK(C.pi0().abelianization() == ab(1));
  CHECK_THROWS_AS(kan_loop_group(simplex(1), 2), Error);
}

TEST_CASE("G_0 fiber sequence") {
  auto c = g0_sequence(const_sgroup(Zn(2), 3));
  for (int n = 0; n <= 3; ++n) CHECK(c.quot.X->size(n) == 1);
  auto G = sgroup_product(const_sgroup(Zn(2), 3), dold_kan_em(Zn(2), 1, 3));
  G->validate();
  auto s = g0_sequence(G);
  CHECK(s.fibration.ok);
  CHECK(s.fiber_iso);
  auto t = g0_sequence(dold_kan_em(Zn(2), 1, 3));
  CHECK(find_iso(t.quot.X, dold_kan_em(Zn(2), 1, 3)->set));
}

TEST_CASE("Postnikov stages") {
  auto W = wbar(const_sgroup(Zn(2), 4), 4);
  auto P1 = postnikov_stage(W.X(), 1);
  CHECK(is_iso(P1.Q.proj));
  auto P0 = postnikov_stage(W.X(), 0);
  for (int n = 0; n <= 3; ++n) CHECK(P0.Q.X->size(n) == 1);
  auto K2 = wbar_iter(const_sgroup(Zn(2), 4), 2, 4);
  auto Q = postnikov_stage(K2, 1);
  auto h = homology(*Q.Q.X, 2);
  CHECK(h[1] == ab(0));
  CHECK(h[2] == ab(0));
  try {
    postnikov_stage(simplex(1), 0);
    FAIL("expected SourceNotKan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SourceNotKan);
  }
}
