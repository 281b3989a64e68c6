#include "skan/bundles.hpp"

#include <algorithm>

namespace skan {

GAction translation_action(SGroupP G) {
  GAction a;
  a.P = G->set;
  a.G = G;
  a.act.resize(G->bound + 1);
  for (int n = 0; n <= G->bound; ++n) {
    const FinGroup& Gn = G->at(n);
    a.act[n].resize(Gn.order() * Gn.order());
    for (Idx x = 0; x < Gn.order(); ++x)
      for (Idx g = 0; g < Gn.order(); ++g) a.act[n][x * Gn.order() + g] = G->to[n][Gn.mul(G->from[n][x], g)];
  }
  return a;
}

GAction trivial_action(SSetP P, SGroupP G) {
  GAction a;
  a.P = P;
  a.G = G;
  a.act.resize(a.bound() + 1);
  for (int n = 0; n <= a.bound(); ++n)
    for (Idx p = 0; p < P->size(n); ++p)
      for (Idx g = 0; g < G->at(n).order(); ++g) a.act[n].push_back(p);
  return a;
}

std::pair<Idx, Key> ActionGroupoid::decode(int p, int q, Idx x) const {
  Idx m = static_cast<Idx>(a.G->at(p).order());
  Key g(q);
  for (int j = q; j-- > 0;) {
    g[j] = static_cast<int>(x % m);
    x /= m;
  }
  return {x, g};
}

ActionGroupoid action_groupoid(const GAction& a, int bound) {
  ActionGroupoid R;
  R.a = a;
  const SGroup& G = *a.G;
  if (a.bound() < bound) fail(ErrorKind::InsufficientDimensionBound, "action groupoid needs the action through " +
                                                                         std::to_string(bound));
  std::vector<std::vector<std::vector<Key>>> elems(bound + 1, std::vector<std::vector<Key>>(bound + 1));
  for (int p = 0; p <= bound; ++p)
    for (int q = 0; q <= bound; ++q) {
      std::vector<Key> out;
      for (Idx x = 0; x < a.P->size(p); ++x) out.push_back({static_cast<int>(x)});
      for (int j = 0; j < q; ++j) {
        std::vector<Key> next;
        for (auto& k : out)
          for (Idx g = 0; g < G.at(p).order(); ++g) {
            next.push_back(k);
            next.back().push_back(static_cast<int>(g));
          }
        out = std::move(next);
      }
      elems[p][q] = std::move(out);
    }
  const GAction& A = R.a;
  BiKeyFns f;
  f.hface = [&](int p, int, int i, const Key& k) {
    Key r = {static_cast<int>(A.P->face(p, i, k[0]))};
    for (std::size_t j = 1; j < k.size(); ++j) r.push_back(static_cast<int>(G.face[p][i][k[j]]));
    return r;
  };
  f.hdegen = [&](int p, int, int i, const Key& k) {
    Key r = {static_cast<int>(A.P->degen(p, i, k[0]))};
    for (std::size_t j = 1; j < k.size(); ++j) r.push_back(static_cast<int>(G.degen[p][i][k[j]]));
    return r;
  };
  // (x, g_1..g_q): d_0 acts by g_1, middle faces multiply, d_q drops g_q
  f.vface = [&](int p, int q, int j, const Key& k) {
    Key r;
    if (j == 0) {
      r.push_back(static_cast<int>(A.apply(p, k[0], k[1])));
      r.insert(r.end(), k.begin() + 2, k.end());
      return r;
    }
    r.assign(k.begin(), k.begin() + j);
    if (j < q) {
      r.push_back(static_cast<int>(G.mul(p, k[j], k[j + 1])));
      r.insert(r.end(), k.begin() + j + 2, k.end());
    }
    return r;
  };
  f.vdegen = [&](int p, int, int j, const Key& k) {
    Key r = k;
    r.insert(r.begin() + 1 + j, static_cast<int>(G.at(p).e));
    return r;
  };
  f.name = [&](int p, int, const Key& k) {
    std::string s = "<" + A.P->name(p, k[0]);
    for (std::size_t j = 1; j < k.size(); ++j) s += "," + G.at(p).names[k[j]];
    return s + ">";
  };
  R.B = build_bisimplicial(bound, bound, elems, f);
  return R;
}

Key HomotopyQuotient::wbar_key(int n, Idx x) const {
  Key t = tot.tuple_of(n, x), b(n);
  for (int j = 0; j < n; ++j) b[j] = AG.decode(j, n - j, t[j]).second[0];
  return b;
}

Idx HomotopyQuotient::p_part(int n, Idx x) const { return AG.decode(n, 0, tot.tuple_of(n, x)[n]).first; }

Idx HomotopyQuotient::index_of(int n, Idx p, const Key& b) const {
  const GAction& a = AG.a;
  const SGroup& G = *a.G;
  // p_j = d_{j+1}(p_{j+1}) b_j^{-1}
  std::vector<Idx> pj(n + 1);
  pj[n] = p;
  for (int j = n - 1; j >= 0; --j) pj[j] = a.apply(j, a.P->face(j + 1, j + 1, pj[j + 1]), G.at(j).inv[b[j]]);
  Key t(n + 1);
  for (int j = 0; j <= n; ++j) {
    Idx m = static_cast<Idx>(G.at(j).order());
    Idx code = pj[j];
    for (int i = j; i < n; ++i) {
      Idx y = b[i];
      for (int k = i; k > j; --k) y = G.face[k][k][y];
      code = code * m + y;
    }
    t[j] = static_cast<int>(code);
  }
  return tot.index_of(n, t);
}

HomotopyQuotient homotopy_quotient(const GAction& a, int bound) {
  HomotopyQuotient H;
  const SGroup& G = *a.G;
  H.AG = action_groupoid(a, bound);
  H.tot = total(H.AG.B, bound);
  H.level_formula_holds = true;
  for (int n = 0; n <= bound; ++n) {
    std::size_t c = a.P->size(n);
    for (int p = 0; p < n; ++p) c *= G.at(p).order();
    if (H.tot.X->size(n) != c) H.level_formula_holds = false;
  }
  if (!H.level_formula_holds) fail(ErrorKind::CrossCheckMismatch, "homotopy quotient violates the level formula");
  // Borel side: (P x WG)/G under the diagonal right action
  H.U = w_bundle(a.G, bound);
  const GAction& W = H.U.bundle.action;
  H.PW = product(a.P, H.U.WG.X);
  int N = std::min(bound, H.PW.X->limit());
  std::vector<std::vector<Idx>> cls(N + 1);
  std::vector<std::vector<std::pair<Idx, Idx>>> rep(N + 1);
  for (int n = 0; n <= N; ++n) {
    const FinGroup& Gn = G.at(n);
    cls[n].resize(H.PW.X->size(n));
    for (Idx x = 0; x < cls[n].size(); ++x) {
      Idx p = H.PW.p1.at(n, x), w = H.PW.p2.at(n, x);
      Idx m = x;
      for (Idx g = 0; g < Gn.order(); ++g) m = std::min(m, pair_index(H.PW, n, a.apply(n, p, g), W.apply(n, w, g)));
      cls[n][x] = m;
    }
  }
  H.borel = quotient_by_labels(H.PW.X, N, cls, false);
  for (int n = 0; n <= N; ++n) {
    rep[n].assign(H.borel.X->size(n), {UINT32_MAX, UINT32_MAX});
    for (Idx x = 0; x < cls[n].size(); ++x) {
      Idx c = H.borel.proj.at(n, x);
      if (rep[n][c].first == UINT32_MAX) rep[n][c] = {H.PW.p1.at(n, x), H.PW.p2.at(n, x)};
    }
  }
  // (p, b_0..b_n) ~ (p b_n^{-1}, b_0..b_{n-1}, e)
  H.iso = SMap::from_function(H.borel.X, H.tot.X, [&](int n, Idx c) {
    auto [p, w] = rep[n][c];
    Key b = H.U.WG.tuple_of(n, w);
    Idx last = a.apply(n, p, G.at(n).inv[b[n]]);
    b.pop_back();
    return H.index_of(n, last, b);
  });
  if (!is_iso(H.iso)) fail(ErrorKind::CrossCheckMismatch, "Borel construction is not isomorphic to the homotopy quotient");
  return H;
}

std::vector<Idx> Tuples::decode(int n, Idx x) const {
  std::vector<Idx> c;
  for (std::size_t k = stages.size(); k-- > 0;) {
    c.push_back(stages[k].p2.at(n, x));
    x = stages[k].p1.at(n, x);
  }
  c.push_back(x);
  std::reverse(c.begin(), c.end());
  return c;
}

Idx Tuples::encode(int n, const std::vector<Idx>& c) const {
  Idx x = c[0];
  for (std::size_t k = 0; k < stages.size(); ++k) x = pair_index(stages[k], n, x, c[k + 1]);
  return x;
}

Tuples iterated_product(const std::vector<SSetP>& parts) {
  Tuples T;
  T.X = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) {
    T.stages.push_back(product(T.X, parts[k]));
    T.X = T.stages.back().X;
  }
  return T;
}

Tuples iterated_fiber_product(const SMap& proj, int k) {
  Tuples T;
  T.X = proj.src;
  SMap last = proj;
  for (int j = 1; j < k; ++j) {
    T.stages.push_back(fiber_product(last, proj));
    T.X = T.stages.back().X;
    last = compose(proj, T.stages.back().p2);
  }
  return T;
}

Shear shear(const GBundle& b, int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "shear needs n >= 1");
  Shear S;
  const GAction& a = b.action;
  const SGroup& G = *a.G;
  std::vector<SSetP> parts = {a.P};
  for (int j = 0; j < n; ++j) parts.push_back(G.set);
  S.src = iterated_product(parts);
  S.tgt = iterated_fiber_product(b.proj, n + 1);
  S.map = SMap::from_function(S.src.X, S.tgt.X, [&](int m, Idx x) {
    auto c = S.src.decode(m, x);
    std::vector<Idx> out = {c[0]};
    for (int j = 1; j <= n; ++j) out.push_back(a.apply(m, c[0], G.from[m][c[j]]));
    return S.tgt.encode(m, out);
  });
  return S;
}

const char* principality_name(Principality p) {
  switch (p) {
    case Principality::Strict: return "STRICT";
    case Principality::Weak: return "WEAK";
    case Principality::Fail: return "FAIL";
    case Principality::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

OrbitQuotient orbit_quotient(const GBundle& b) {
  OrbitQuotient O;
  const GAction& a = b.action;
  int N = a.bound();
  O.Q = quotient_by_labels(a.P, N, a.orbits(), false);
  std::vector<std::vector<Idx>> rep(N + 1);
  for (int n = 0; n <= N; ++n) {
    rep[n].assign(O.Q.X->size(n), UINT32_MAX);
    for (Idx p = 0; p < a.P->size(n); ++p) {
      Idx c = O.Q.proj.at(n, p);
      if (rep[n][c] == UINT32_MAX) rep[n][c] = p;
    }
  }
  O.to_base = SMap::from_function(O.Q.X, b.base, [&](int n, Idx c) { return b.proj.at(n, rep[n][c]); });
  return O;
}

PrincipalityReport classify_principality(const GBundle& b, Policy policy, int bound) {
  PrincipalityReport R;
  b.validate();
  int upto = std::min(bound, b.action.bound());
  R.fibration = check_kan(b.proj, upto);
  if (!R.fibration.ok) fail(ErrorKind::ProjectionNotFibration, "projection is not a Kan fibration: " + R.fibration.detail);
  if (b.action.free()) {
    OrbitQuotient O = orbit_quotient(b);
    if (is_iso(O.to_base)) {
      R.kind = Principality::Strict;
      R.detail = "action degreewise free and P/G -> X an isomorphism";
      return R;
    }
  }
  Shear S = shear(b, 1);
  try {
    R.cert = we_certify(S.map, policy, upto);
    R.kind = Principality::Weak;
    R.detail = "shear map certified: " + R.cert->summary;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CertificateNotFound) throw;
    // only the invariants policy disproves; the others just did not find a certificate
    R.kind = policy == Policy::Invariants ? Principality::Fail : Principality::Inconclusive;
    R.detail = std::string("shear map: ") + e.what();
  }
  return R;
}

GBundle pullback_bundle(const SMap& f, const GBundle& b, ProductResult* fiber) {
  if (f.tgt != b.base) fail(ErrorKind::InvalidArgument, "pullback map does not land in the base");
  ProductResult F = fiber_product(b.proj, f);
  GBundle r;
  r.action.P = F.X;
  r.action.G = b.action.G;
  int N = r.action.bound();
  r.action.act.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::size_t m = b.action.G->at(n).order();
    r.action.act[n].resize(F.X->size(n) * m);
    for (Idx x = 0; x < F.X->size(n); ++x) {
      Idx p = F.p1.at(n, x), y = F.p2.at(n, x);
      for (Idx g = 0; g < m; ++g) r.action.act[n][x * m + g] = pair_index(F, n, b.action.apply(n, p, g), y);
    }
  }
  r.base = f.src;
  r.proj = F.p2;
  r.validate();
  if (fiber) *fiber = F;
  return r;
}

GBundle pushforward_bundle(const SMap& p, const GBundle& b, int bound) {
  if (p.src != b.base) fail(ErrorKind::InvalidArgument, "pushforward map does not start at the base");
  int upto = std::min(bound, b.action.bound());
  auto rep = check_acyclic_fibration(p, upto);
  if (!rep.ok) fail(ErrorKind::CertificateMissing, "pushforward needs an acyclic fibration: " + rep.detail);
  GBundle r = b;
  r.base = p.tgt;
  r.proj = compose(p, b.proj);
  r.validate();
  return r;
}

Associated associated(const GBundle& b, const GAction& V, int bound) {
  if (V.G != b.action.G) fail(ErrorKind::InvalidArgument, "associated bundle needs the same group");
  const GAction& a = b.action;
  const SGroup& G = *a.G;
  ProductResult PV = product(a.P, V.P);
  GAction d;
  d.P = PV.X;
  d.G = a.G;
  int N = std::min(d.bound(), bound);
  d.act.resize(d.bound() + 1);
  for (int n = 0; n <= d.bound(); ++n) {
    std::size_t m = G.at(n).order();
    d.act[n].resize(PV.X->size(n) * m);
    for (Idx x = 0; x < PV.X->size(n); ++x)
      for (Idx g = 0; g < m; ++g)
        d.act[n][x * m + g] = pair_index(PV, n, a.apply(n, PV.p1.at(n, x), g), V.apply(n, PV.p2.at(n, x), g));
  }
  Associated R;
  SMap toBase = compose(b.proj, PV.p1);
  if (d.free()) {
    GBundle db{d, b.base, toBase};
    OrbitQuotient O = orbit_quotient(db);
    R.E = O.Q.X;
    R.proj = O.to_base;
    return R;
  }
  R.plain = false;
  HomotopyQuotient H = homotopy_quotient(d, N);
  R.E = H.tot.X;
  R.proj = SMap::from_function(R.E, b.base, [&](int n, Idx x) { return toBase.at(n, H.p_part(n, x)); });
  return R;
}

}  // namespace skan
