// One line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

#include "oracles.hpp"
#include "skan/cli.hpp"
#include "skan/classification.hpp"

using namespace skan;

namespace {

FinGroupP Zn(int n) { return std::make_shared<FinGroup>(cyclic_group(n)); }
FinGroupP S3() { return std::make_shared<FinGroup>(symmetric3()); }

AbelianGroup ab(int rank, std::vector<long long> t = {}) { return AbelianGroup{rank, std::move(t)}; }

struct Result {
  bool ok = true;
  std::string note;
};

// Records the first failed condition.
struct Expect {
  Result& r;
  void operator()(bool cond, const std::string& what) {
    if (!cond && r.ok) {
      r.ok = false;
      r.note = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Result wbar_cross_construction() {
  Result r;
  Expect ex{r};
  for (auto H : {Zn(1), Zn(2), Zn(3), S3()}) {
    auto t0 = std::chrono::steady_clock::now();
    Wbar W = wbar(const_sgroup(H, 4), 4);  // throws CrossCheckMismatch on disagreement
    double s = seconds_since(t0);
    std::vector<std::size_t> orders(5, H->order());
    for (int n = 0; n <= 4; ++n)
      ex(W.X()->size(n) == oracle::wbar_level(orders, n), "level size of Wbar for order " + std::to_string(H->order()));
    ex(s < 5.0, "Wbar for order " + std::to_string(H->order()) + " took " + std::to_string(s) + " s");
  }
  return r;
}

Result kan_conditions() {
  Result r;
  Expect ex{r};
  for (auto H : {Zn(2), Zn(3)}) {
    auto G = const_sgroup(H, 5);
    ex(check_kan(wbar(G, 4).X(), 4).ok, "Wbar G is not Kan through 4");
    ex(check_kan(w_bundle(G, 4).fib, 4).ok, "WG -> Wbar G is not a fibration through 4");
  }
  auto k = check_kan(simplex(1), 2);
  ex(!k.ok && k.dimension == 2 && !k.detail.empty(), "Delta[1] has no horn counterexample");
  return r;
}

Result universal_bundle_checks() {
  Result r;
  Expect ex{r};
  for (auto H : {Zn(2), S3()}) {
    auto G = const_sgroup(H, 4);
    WBundle U = w_bundle(G, 3);
    ex(is_iso(shear(U.bundle, 1).map), "shear is not an isomorphism");
    ex(is_iso(orbit_quotient(U.bundle).to_base, 3), "WG/G is not Wbar G");
    auto pt = point();
    auto F = fiber_product(U.fib, SMap::constant(pt, U.W.X(), 0));
    ex(find_iso(F.X, const_sgroup(H, 3)->set).has_value(), "fiber is not G");
  }
  WBundle U = w_bundle(const_sgroup(Zn(2), 4), 3);
  ex(homology(*U.WG.X, 2) == HomologyProfile{ab(1), ab(0), ab(0)}, "H_1, H_2 of W Z/2 not zero");
  ex(pi0_count(*U.WG.X) == 1, "W Z/2 not connected");
  return r;
}

Result decalage() {
  Result r;
  Expect ex{r};
  auto D1 = dec0(simplex(1), 3);
  auto sum = coproduct({point(), simplex(1)}).X;
  ex(find_iso(D1.D, sum).has_value(), "Dec0 Delta[1] is not Delta[0] + Delta[1]");
  auto D2 = dec0(simplex(2), 3);
  ex(D2.retract.level == CertLevel::Retract && D2.retract.validate(), "retraction of Dec0 Delta[2]");
  auto G = const_sgroup(Zn(2), 4);
  Wbar W = wbar(G, 3);
  auto DW = dec0(W.X(), 3);
  ex(DW.retract.level == CertLevel::Retract && DW.retract.validate(), "retraction of Dec0 Wbar Z/2");
  WBundle U = w_bundle(G, 3);
  ex(is_iso(U.iso), "Dec0 Wbar G is not WG");
  return r;
}

Result totalization() {
  Result r;
  Expect ex{r};
  for (auto& X : {point(), simplex(2), circle_min(), generate_standard(StdKind::Boundary, 2)})
    ex(is_iso(diagonal_to_total(const_bisimplicial(X, 3, 3), 3).d_to_total), "total of const X is not X");
  ActionGroupoid AG = action_groupoid(trivial_action(point(), const_sgroup(Zn(2), 4)), 4);
  auto hd = homology(*diagonal(AG.B), 3);
  auto ht = homology(*total(AG.B, 4).X, 3);
  HomologyProfile want{ab(1), ab(0, {2}), ab(0), ab(0, {2})};
  ex(hd == want, "homology of the diagonal is " + profile_str(hd));
  ex(ht == want, "homology of the total is " + profile_str(ht));
  return r;
}

Result borel() {
  Result r;
  Expect ex{r};
  auto Z2 = const_sgroup(Zn(2), 3);
  auto Z3 = const_sgroup(Zn(3), 3);
  std::vector<GAction> actions = {trivial_action(point(), Z2), translation_action(Z2), translation_action(Z3),
                                  trivial_action(simplex(1), Z3),
                                  twisted_product(enumerate_twistings(circle_min(), Z2)[1]).bundle.action};
  for (auto& a : actions) {
    HomotopyQuotient Q = homotopy_quotient(a, 3);
    for (int n = 0; n <= 3; ++n) {
      std::size_t c = a.P->size(n);
      for (int p = 0; p < n; ++p) c *= a.G->at(p).order();
      ex(Q.tot.X->size(n) == c, "level formula fails at " + std::to_string(n));
    }
    ex(is_iso(Q.iso), "Borel construction is not the homotopy quotient");
  }
  return r;
}

Result h1_circle() {
  Result r;
  Expect ex{r};
  std::vector<std::pair<FinGroupP, std::size_t>> cases = {{Zn(2), 2}, {Zn(3), 3}, {S3(), 3}};
  for (auto& [H, want] : cases) {
    H1Result h = h1(circle_min(), const_sgroup(H, 3));
    std::vector<int> m = h.matching;
    std::sort(m.begin(), m.end());
    std::vector<int> ids(m.size());
    std::iota(ids.begin(), ids.end(), 0);
    ex(h.count == want, "h1 count " + std::to_string(h.count));
    ex(h.reps.size() == want && h.maps.count == want, "routes disagree");
    ex(m == ids, "matching is not a bijection");
  }
  return r;
}

Result round_trips() {
  Result r;
  Expect ex{r};
  auto G = const_sgroup(Zn(2), 3);
  auto U = universal_bundle(G, 3);
  auto X = circle_min();
  for (auto& t : enumerate_twistings(X, G)) {
    auto b = twisted_product(t).bundle;
    FreeResolution F = free_resolution(b, 3, U);
    ex(F.cert.validate(), "rec(extr(b)) -> b not certified");
  }
  auto G2 = const_sgroup(Zn(2), 2);
  auto U2 = universal_bundle(G2, 2);
  H1Result h2 = h1(X, G2);
  for (auto& t : enumerate_twistings(X, G2)) {
    FreeResolution F = free_resolution(twisted_product(t).bundle, 2, U2);
    Strictification S = strictify(F.R.bundle, 2, U2);
    ex(h1_class(h2, S.sc.right, U2->W) == h1_class(h2, t.classifying_map(U2->W), U2->W), "strictify(P^f) changed the class");
  }
  return r;
}

Result cech() {
  Result r;
  Expect ex{r};
  auto B2 = generate_standard(StdKind::Boundary, 2);
  Cover c2 = make_cover(B2, {{"01"}, {"02"}, {"12"}});
  CechNerve N = cech_nerve(c2.map, 3);
  WeCert cert = we_certify(N.total_proj, Policy::Invariants, 2);
  ex(cert.validate(), "Cech total -> boundary not certified");
  auto A = const_sgroup(Zn(2), 4);
  ex(hn_cech(c2, A, 1).count == 2, "hn of the triangle cover");
  auto B3 = generate_standard(StdKind::Boundary, 3);
  Cover c3 = make_cover(B3, {{"012"}, {"013"}, {"023"}, {"123"}});
  ex(hn_cech(c3, A, 2).count == 2, "hn of the tetrahedron cover");
  return r;
}

Result eilenberg_maclane() {
  Result r;
  Expect ex{r};
  auto E = dold_kan_em(Zn(2), 1, 3);
  ex(find_iso(E->set, wbar(const_sgroup(Zn(2), 3), 3).X()).has_value(), "K(Z/2,1) is not Wbar Z/2");
  auto K2 = wbar_iter(const_sgroup(Zn(2), 3), 2, 3);
  auto h = homology(*K2, 2);
  ex(h[1] == ab(0) && h[2] == ab(0, {2}), "homology of Wbar^2 Z/2 is " + profile_str(h));
  return r;
}

Result loop_group() {
  Result r;
  Expect ex{r};
  auto L = kan_loop_group(circle_min(), 2);
  ex(L.pi0().abelianization() == ab(1), "pi0 of the loop group abelianizes to " + L.pi0().abelianization().str());
  return r;
}

Result suite_determinism() {
  Result r;
  Expect ex{r};
  std::filesystem::path src = SKAN_SOURCE_DIR;
  auto a = cli::run_command({"verify", "acceptance.suite"}, src);
  auto b = cli::run_command({"verify", "acceptance.suite"}, src);
  ex(a.exit == 0, "first run exited " + std::to_string(a.exit));
  ex(b.exit == 0, "second run exited " + std::to_string(b.exit));
  ex(cli::without_timing(a.report).dump() == cli::without_timing(b.report).dump(), "reports differ");
  return r;
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"Wbar cross-construction at bound 4", wbar_cross_construction},
      {"Kan conditions", kan_conditions},
      {"universal bundle", universal_bundle_checks},
      {"decalage", decalage},
      {"totalization", totalization},
      {"Borel construction and homotopy quotient", borel},
      {"H1 of the circle by two routes", h1_circle},
      {"extraction, reconstruction and strictification", round_trips},
      {"Cech descent and cohomology", cech},
      {"Eilenberg-MacLane objects", eilenberg_maclane},
      {"loop group", loop_group},
      {"suite determinism", suite_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, e.what()};
    }
    std::printf("criterion %2zu: %s  %s (%.2f s)%s%s\n", i + 1, r.ok ? "PASS" : "FAIL", criteria[i].first,
                seconds_since(t0), r.ok ? "" : ": ", r.note.c_str());
    if (!r.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
