#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "skan/bundles.hpp"

using namespace skan;

namespace {

FinGroupP Zn(int n) { return std::make_shared<FinGroup>(cyclic_group(n)); }
FinGroupP S3() { return std::make_shared<FinGroup>(symmetric3()); }

// X x G over X, from the constant twisting.
GBundle trivial_bundle(SSetP X, SGroupP G) { return twisted_product(constant_twisting(X, G)).bundle; }

}  // namespace

TEST_CASE("action groupoid of a point") {
  auto G = const_sgroup(Zn(2), 3);
  ActionGroupoid AG = action_groupoid(trivial_action(point(), G), 3);
  AG.B.validate();
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) CHECK(AG.B.size(p, q) == (std::size_t{1} << q));
  auto [x, g] = AG.decode(1, 2, 3);
  CHECK(x == 0);
  CHECK(g == Key{1, 1});
}

TEST_CASE("homotopy quotient of a point is wbar") {
  for (auto H : {Zn(2), Zn(3), S3()}) {
    auto G = const_sgroup(H, 3);
    HomotopyQuotient Q = homotopy_quotient(trivial_action(point(), G), 3);
    CHECK(Q.level_formula_holds);
    Wbar W = wbar(G, 3);
    auto f = SMap::from_function(Q.tot.X, W.X(), [&](int n, Idx x) { return W.index_of(n, Q.wbar_key(n, x)); });
    f.validate();
    CHECK(is_iso(f));
  }
}

TEST_CASE("homotopy quotient level formula and Borel comparison") {
  auto Z2 = const_sgroup(Zn(2), 3);
  auto Z3 = const_sgroup(Zn(3), 3);
  std::vector<GAction> actions = {translation_action(Z2), translation_action(Z3),
                                  trivial_action(generate_standard(StdKind::Boundary, 2), Z2),
                                  trivial_action(simplex(1), Z3), trivial_action(circle_min(), Z2)};
  for (auto& a : actions) {
    a.validate();
    HomotopyQuotient Q = homotopy_quotient(a, 2);
    for (int n = 0; n <= 2; ++n) {
      std::size_t c = a.P->size(n);
      for (int p = 0; p < n; ++p) c *= a.G->at(p).order();
      CHECK(Q.tot.X->size(n) == c);
    }
    CHECK(is_iso(Q.iso));
  }
  // a free action: G//G is contractible
  HomotopyQuotient T = homotopy_quotient(translation_action(Z3), 3);
  CHECK(pi0_count(*T.tot.X) == 1);
  auto pt = point();
  auto to_pt = SMap::from_function(T.tot.X, pt, [](int, Idx) { return Idx{0}; });
  CHECK(check_acyclic_fibration(to_pt, 2).ok);
}

TEST_CASE("shear maps") {
  auto G = const_sgroup(Zn(2), 3);
  WBundle U = w_bundle(G, 3);
  CHECK(is_iso(shear(U.bundle, 1).map));
  CHECK(is_iso(shear(U.bundle, 2).map));
  GBundle triv = trivial_bundle(generate_standard(StdKind::Boundary, 2), const_sgroup(S3(), 3));
  Shear S = shear(triv, 1);
  CHECK(S.src.X->size(1) == 6 * 6 * 6);
  CHECK(is_iso(S.map));
  CHECK_THROWS_AS(shear(triv, 0), Error);
  // a non-free action: the shear collapses
  GBundle bad{trivial_action(point(), G), point(), SMap::from_function(point(), point(), [](int, Idx) { return Idx{0}; })};
  CHECK_FALSE(is_iso(shear(bad, 1).map));
}

TEST_CASE("principality classification") {
  auto G = const_sgroup(Zn(2), 3);
  WBundle U = w_bundle(G, 3);
  auto r = classify_principality(U.bundle, Policy::RequireIso);
  CHECK(r.kind == Principality::Strict);
  CHECK(std::string(principality_name(r.kind)) == "STRICT");

  auto pt = point();
  GBundle bad{trivial_action(pt, G), pt, SMap::from_function(pt, pt, [](int, Idx) { return Idx{0}; })};
  CHECK(classify_principality(bad, Policy::Invariants).kind == Principality::Fail);
  CHECK(classify_principality(bad, Policy::TryRetract).kind == Principality::Inconclusive);

  auto tw = twisted_product(constant_twisting(circle_min(), G));
  CHECK(classify_principality(tw.bundle, Policy::RequireIso).kind == Principality::Strict);
}

TEST_CASE("orbit quotient of the universal bundle") {
  auto G = const_sgroup(Zn(3), 3);
  WBundle U = w_bundle(G, 3);
  OrbitQuotient O = orbit_quotient(U.bundle);
  CHECK(is_iso(O.to_base, 3));
  CHECK(check_kan(O.Q.proj, 3).ok);
}

TEST_CASE("pullback and pushforward") {
  auto G = const_sgroup(Zn(2), 3);
  WBundle U = w_bundle(G, 3);
  auto pt = point();
  auto base = SMap::from_function(pt, U.bundle.base, [](int, Idx) { return Idx{0}; });
  GBundle F = pullback_bundle(base, U.bundle);
  CHECK(F.action.free());
  CHECK(find_iso(F.action.P, G->set).has_value());

  // WG -> * is an acyclic fibration
  GBundle triv = trivial_bundle(U.WG.X, G);
  auto collapse = SMap::from_function(U.WG.X, pt, [](int, Idx) { return Idx{0}; });
  GBundle P = pushforward_bundle(collapse, triv);
  CHECK(P.base == pt);
  CHECK(P.action.P->size(2) == 8 * 2);

  auto B = generate_standard(StdKind::Boundary, 2);
  GBundle tb = trivial_bundle(B, G);
  auto crush = SMap::from_function(B, pt, [](int, Idx) { return Idx{0}; });
  try {
    pushforward_bundle(crush, tb);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CertificateMissing);
  }
}

TEST_CASE("twisting functions") {
  auto Z2 = const_sgroup(Zn(2), 3);
  auto S3g = const_sgroup(S3(), 3);
  CHECK(enumerate_twistings(circle_min(), Z2).size() == 2);
  CHECK(enumerate_twistings(circle_min(), S3g).size() == 6);
  CHECK(enumerate_twistings(point(), Z2).size() == 1);
  CHECK(enumerate_twistings(generate_standard(StdKind::Boundary, 2), Z2).size() == 8);
  // on Delta[2] the 2-simplex forces tau(12) = tau(01)^-1 tau(02)
  CHECK(enumerate_twistings(simplex(2), Z2).size() == 4);
  CHECK(enumerate_twistings(simplex(2), S3g).size() == 36);
  CHECK_THROWS_AS(enumerate_twistings(generate_standard(StdKind::Boundary, 2), S3g, 10), Error);

  auto ts = enumerate_twistings(circle_min(), Z2);
  for (auto& t : ts) {
    t.validate();
    auto P = twisted_product(t);
    P.bundle.validate();
    CHECK(P.bundle.action.free());
  }
  std::size_t nontrivial = ts[0].gen[1][0] == 0 ? 1 : 0;
  CHECK(pi0_count(*twisted_product(ts[1 - nontrivial]).K.X) == 2);
  CHECK(pi0_count(*twisted_product(ts[nontrivial]).K.X) == 1);
  CHECK_FALSE(twisting_gauge(ts[0], ts[1]).has_value());
  CHECK(twisting_gauge(ts[0], ts[0]).has_value());

  // over Delta[1] every twisting is gauge trivial
  auto D1 = simplex(1);
  auto triv = constant_twisting(D1, S3g);
  for (auto& t : enumerate_twistings(D1, S3g)) CHECK(twisting_gauge(triv, t).has_value());
}

TEST_CASE("classifying map of a twisting") {
  auto G = const_sgroup(Zn(3), 3);
  Wbar W = wbar(G, 3);
  for (auto& t : enumerate_twistings(generate_standard(StdKind::Boundary, 2), G)) {
    SMap f = t.classifying_map(W);
    CHECK(f.src == t.X);
  }
}

TEST_CASE("gauge classes on a circle") {
  for (int n : {2, 3}) {
    auto G = const_sgroup(Zn(n), 3);
    auto ts = enumerate_twistings(circle_min(), G);
    std::vector<int> cls(ts.size(), -1);
    int classes = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (cls[i] >= 0) continue;
      cls[i] = classes;
      for (std::size_t j = i + 1; j < ts.size(); ++j)
        if (cls[j] < 0 && twisting_gauge(ts[i], ts[j])) cls[j] = classes;
      ++classes;
    }
    CHECK(classes == n);
  }
  // S3: twistings up to conjugation
  auto G = const_sgroup(S3(), 3);
  auto ts = enumerate_twistings(circle_min(), G);
  std::vector<int> cls(ts.size(), -1);
  int classes = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (cls[j] < 0 && twisting_gauge(ts[i], ts[j])) cls[j] = classes;
    ++classes;
  }
  CHECK(classes == 3);
}

TEST_CASE("Cech nerve of a cover") {
  auto B = generate_standard(StdKind::Boundary, 2);
  Cover C = make_cover(B, {{"01"}, {"02"}, {"12"}});
  CHECK(C.U.X->size(0) == 6);
  CechNerve N = cech_nerve(C.map, 3);
  N.B.validate();
  N.total_proj.validate();
  // vertex 0 lies in two members, so its fiber in B_{0,q} has 2^(q+1) tuples
  CHECK(N.B.size(0, 2) == 3 * 8);
  WeCert cert = we_certify(N.total_proj, Policy::Invariants, 2);
  CHECK(cert.validate());
  CHECK_THROWS_AS(make_cover(B, {}), Error);
  CHECK_THROWS_AS(make_cover(B, {{"01"}, {"02"}}), Error);
  CHECK_THROWS_AS(make_cover(B, {{"xx"}}), Error);
}

TEST_CASE("associated bundles") {
  auto G = const_sgroup(Zn(2), 3);
  WBundle U = w_bundle(G, 3);
  // G acting on itself: back to the total space
  Associated A = associated(U.bundle, translation_action(G));
  CHECK(A.plain);
  for (int n = 0; n <= 3; ++n) CHECK(A.E->size(n) == U.WG.X->size(n));
  // G acting on a point: back to the base
  Associated P = associated(U.bundle, trivial_action(point(), G));
  CHECK(P.plain);
  for (int n = 0; n <= 3; ++n) CHECK(P.E->size(n) == U.bundle.base->size(n));
  // a non-free total action uses the homotopy quotient
  auto pt = point();
  GBundle bad{trivial_action(pt, G), pt, SMap::from_function(pt, pt, [](int, Idx) { return Idx{0}; })};
  Associated H = associated(bad, trivial_action(point(), G), 2);
  CHECK_FALSE(H.plain);
  std::vector<std::size_t> orders(3, 2);
  for (int n = 0; n <= 2; ++n) CHECK(H.E->size(n) == oracle::wbar_level(orders, n));
}
