#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "skan/classification.hpp"

using namespace skan;

namespace {

FinGroupP Zn(int n) { return std::make_shared<FinGroup>(cyclic_group(n)); }
FinGroupP S3() { return std::make_shared<FinGroup>(symmetric3()); }

std::vector<std::vector<int>> table_of(const FinGroup& G) {
  std::vector<std::vector<int>> t(G.order(), std::vector<int>(G.order()));
  for (Idx a = 0; a < G.order(); ++a)
    for (Idx b = 0; b < G.order(); ++b) t[a][b] = static_cast<int>(G.mul(a, b));
  return t;
}

// Index of the twisting with value e on the edge of circle_min.
std::size_t trivial_index(const std::vector<TwistingFunction>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i].gen[1][0] == ts[i].G->at(0).e) return i;
  return ts.size();
}

SSetP subdivided_circle(int m) {
  std::vector<RawSimplex> raw;
  for (int i = 0; i < m; ++i) raw.push_back({"v" + std::to_string(i), 0, {}, ""});
  for (int i = 0; i < m; ++i)
    raw.push_back({"e" + std::to_string(i), 1, {"v" + std::to_string((i + 1) % m), "v" + std::to_string(i)}, ""});
  return normalize(raw);
}

}  // namespace

TEST_CASE("h1 by twistings and by mapping spaces") {
  auto pt = h1(point(), const_sgroup(Zn(2), 3));
  CHECK(pt.count == 1);
  for (int n : {2, 3}) {
    auto r = h1(circle_min(), const_sgroup(Zn(n), 3));
    CHECK(r.count == static_cast<std::size_t>(n));
    CHECK(r.maps.count == static_cast<std::size_t>(n));
    CHECK(r.twistings.size() == static_cast<std::size_t>(n));
  }
  auto s3 = h1(circle_min(), const_sgroup(S3(), 3));
  CHECK(s3.count == static_cast<std::size_t>(oracle::conjugacy_classes(table_of(*S3()), static_cast<int>(S3()->e))));
  CHECK(s3.twistings.size() == 6);
  // the matching is a bijection
  std::vector<int> m = s3.matching;
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<int>{0, 1, 2});
}

TEST_CASE("cocycles from bundles") {
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  auto X = circle_min();
  auto r = h1(X, G);
  auto ts = enumerate_twistings(X, G);
  std::size_t triv = trivial_index(ts);
  REQUIRE(triv < 2);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto b = twisted_product(ts[i]).bundle;
    Extraction E = extr(b, 3, U);
    E.c.validate();
    CHECK(E.c.left_fibration.ok);
    int cls = h1_class(r, section_map(E.c), U->W);
    CHECK(cls == h1_class(r, ts[i].classifying_map(U->W), U->W));
    // the trivial bundle extracts the class of the constant map
    CHECK((cls == h1_class(r, SMap::constant(X, U->W.X(), 0), U->W)) == (i == triv));
  }
}

TEST_CASE("reconstruction") {
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  auto X = circle_min();
  auto ts = enumerate_twistings(X, G);
  std::size_t triv = trivial_index(ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Cocycle c = make_cocycle(SMap::identity(X), ts[i].classifying_map(U->W), 3, U);
    Reconstruction R = rec(c);
    CHECK(R.bundle.action.free());
    CHECK(pi0_count(*R.bundle.action.P) == (i == triv ? 2 : 1));
    auto tp = twisted_product(ts[i]);
    for (int n = 0; n <= 3; ++n) CHECK(R.bundle.action.P->size(n) == tp.K.X->size(n));
  }
}

TEST_CASE("universal cocycle and q") {
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  Extraction u = universal_cocycle(U);
  CHECK(u.c.left_fibration.ok);
  CHECK(check_acyclic_fibration(u.c.right, 3).ok);
  CHECK(we_certify(u.c.right, Policy::Invariants, 3).validate());
  // rec of the universal cocycle: contractible total space
  Reconstruction R = rec(u.c);
  CHECK(pi0_count(*R.bundle.action.P) == 1);
  CHECK(homology(*R.bundle.action.P, 2) == HomologyProfile{AbelianGroup{1, {}}, AbelianGroup{}, AbelianGroup{}});

  // q of the identity cocycle on Wbar G is the universal cocycle
  auto W = U->W.X();
  Cocycle id = make_cocycle(SMap::identity(W), SMap::identity(W), 3, U);
  SpanComposite s = q(id, u);
  CHECK(is_iso(s.F.p2, 3));

  // q keeps the class, and applying it twice agrees with once
  auto X = circle_min();
  auto r = h1(X, G);
  for (auto& t : enumerate_twistings(X, G)) {
    Cocycle c = make_cocycle(SMap::identity(X), t.classifying_map(U->W), 3, U);
    SpanComposite once = q(c, u);
    int k = h1_class(r, section_map(c), U->W);
    CHECK(h1_class(r, section_map(once.c), U->W) == k);
    SpanComposite twice = q(once.c, u);
    CHECK(h1_class(r, section_map(twice.c), U->W) == k);
  }
}

TEST_CASE("free resolution and round trips") {
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  auto X = circle_min();
  for (auto& t : enumerate_twistings(X, G)) {
    auto b = twisted_product(t).bundle;
    FreeResolution F = free_resolution(b, 3, U);
    CHECK(F.cert.validate());
    CHECK(F.R.bundle.action.free());
    for (int n = 0; n <= 3; ++n) CHECK(F.to_P.at(n, 0) < b.action.P->size(n));
    // equivariant over the base
    CHECK(same_map(compose(b.proj, F.to_P), F.R.bundle.proj));
    auto kind = classify_principality(F.R.bundle, Policy::Invariants).kind;
    CHECK((kind == Principality::Weak || kind == Principality::Strict));
  }
  auto ts = enumerate_twistings(X, G);
  auto U2 = universal_bundle(G, 2);
  Extraction u = universal_cocycle(U2);
  for (auto& t : ts) {
    Extraction E = extr(twisted_product(t).bundle, 2, U2);
    CocycleRoundTrip T = cocycle_roundtrip(E.c, u);
    CHECK(T.left_commutes);
    CHECK(T.right_commutes);
  }
}

TEST_CASE("strictification") {
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  auto X = circle_min();
  auto r = h1(X, G);
  for (auto& t : enumerate_twistings(X, G)) {
    auto b = twisted_product(t).bundle;
    int k = h1_class(r, t.classifying_map(U->W), U->W);
    Strictification S = strictify(b, 3, U);
    CHECK(S.cert.validate());
    CHECK(S.Ps.bundle.action.free());
    CHECK(h1_class(r, S.sc.right, U->W) == k);
    CHECK(classify_principality(S.Ps.bundle, Policy::RequireIso).kind == Principality::Strict);
  }
}

TEST_CASE("strictifying a free resolution") {
  auto G = const_sgroup(Zn(2), 2);
  auto U = universal_bundle(G, 2);
  auto X = circle_min();
  auto r = h1(X, G);
  for (auto& t : enumerate_twistings(X, G)) {
    FreeResolution F = free_resolution(twisted_product(t).bundle, 2, U);
    Strictification S = strictify(F.R.bundle, 2, U);
    CHECK(h1_class(r, S.sc.right, U->W) == h1_class(r, t.classifying_map(U->W), U->W));
  }
}

TEST_CASE("factoring spans") {
  auto G = const_sgroup(Zn(2), 4);
  Wbar A = wbar(G, 4);
  Wbar B = wbar(G, 4);
  // an isomorphism between two copies of Wbar Z/2
  SMap iso = SMap::from_function(B.X(), A.X(), [&](int n, Idx x) { return A.index_of(n, B.K.tuple_of(n, x)); });
  Factorization F = factor_span(iso, SMap::identity(B.X()), 2);
  CHECK(F.c.left_fibration.ok);
  CHECK(F.cert.validate());
  F.from_old.map.validate();

  // the section const X_0 -> Dec0 X is a weak equivalence but not a fibration
  Dec0Result D = dec0(A.X(), 3);
  CHECK_FALSE(check_kan(D.section, 2).ok);
  Factorization S = factor_span(D.section, SMap::identity(D.vertices), 2);
  CHECK(S.c.left_fibration.ok);
  CHECK(pi0_count(*S.c.Y) == 1);
}

TEST_CASE("Cech cohomology") {
  auto A = const_sgroup(Zn(2), 4);
  auto B2 = generate_standard(StdKind::Boundary, 2);
  Cover c2 = make_cover(B2, {{"01"}, {"02"}, {"12"}});
  auto h = hn_cech(c2, A, 1);
  int e1 = oracle::cochain_cohomology_dim({{0, 1}, {0, 2}, {1, 2}}, 1, 2);
  CHECK(h.count == (std::size_t{1} << e1));
  CHECK(h.count == 2);
  CHECK(h.count == h1(circle_min(), A).count);

  auto B3 = generate_standard(StdKind::Boundary, 3);
  Cover c3 = make_cover(B3, {{"012"}, {"013"}, {"023"}, {"123"}});
  auto h2 = hn_cech(c3, A, 2);
  int e2 = oracle::cochain_cohomology_dim({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 2, 2);
  CHECK(h2.count == (std::size_t{1} << e2));
  CHECK(h2.count == 2);

  auto D0 = point();
  Cover c0 = make_cover(D0, {{"0"}});
  for (int n : {1, 2}) CHECK(hn_cech(c0, A, n).count == 1);
}

TEST_CASE("nerve of a cover") {
  auto D1 = simplex(1);
  auto P = nerve_complex(make_cover(D1, {{"01"}}));
  CHECK(P->size(0) == 1);
  CHECK(P->top() == 0);

  auto B2 = generate_standard(StdKind::Boundary, 2);
  auto N = nerve_complex(make_cover(B2, {{"01"}, {"02"}, {"12"}}));
  CHECK(find_iso(N, B2).has_value());
  CHECK(homology(*N, 1)[1] == AbelianGroup{1, {}});

  auto C8 = subdivided_circle(8);
  auto N8 = nerve_complex(make_cover(C8, {{"e0", "e1", "e2"}, {"e2", "e3", "e4"}, {"e4", "e5", "e6"}, {"e6", "e7", "e0"}}));
  CHECK(N8->size(0) == 4);
  CHECK(homology(*N8, 1)[1] == AbelianGroup{1, {}});

  try {
    nerve_complex(make_cover(B2, {{"01", "12"}, {"02"}}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IntersectionNotContractible);
  }
}
