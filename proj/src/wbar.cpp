#include <algorithm>

#include "skan/groups.hpp"

namespace skan {

Key wbar_face(const SGroup& G, int n, int i, const Key& b) {
  Key r;
  r.reserve(n - 1);
  if (i == 0) {
    for (int p = 0; p + 1 < n; ++p) r.push_back(static_cast<int>(G.face[p + 1][0][b[p + 1]]));
    return r;
  }
  for (int p = 0; p + 1 < i; ++p) r.push_back(b[p]);
  if (i == n) return r;
  r.push_back(static_cast<int>(G.mul(i - 1, b[i - 1], G.face[i][i][b[i]])));
  for (int p = i; p + 1 < n; ++p) r.push_back(static_cast<int>(G.face[p + 1][i][b[p + 1]]));
  return r;
}

Key wbar_degen(const SGroup& G, int n, int i, const Key& b) {
  Key r(b.begin(), b.begin() + i);
  r.push_back(static_cast<int>(G.at(i).e));
  for (int p = i; p < n; ++p) r.push_back(static_cast<int>(G.degen[p][i][b[p]]));
  return r;
}

namespace {

std::vector<Key> all_keys(const SGroup& G, int len) {
  std::vector<Key> out = {{}};
  for (int p = 0; p < len; ++p) {
    std::vector<Key> next;
    for (auto& k : out)
      for (Idx g = 0; g < G.at(p).order(); ++g) {
        next.push_back(k);
        next.back().push_back(static_cast<int>(g));
      }
    out = std::move(next);
  }
  return out;
}

std::string key_name(const SGroup& G, const Key& b) {
  std::string s = "[";
  for (std::size_t p = 0; p < b.size(); ++p) s += (p ? "," : "") + G.at(static_cast<int>(p)).names[b[p]];
  return s + "]";
}

}  // namespace

Wbar wbar_formula(SGroupP G, int bound) {
  if (G->bound < bound - 1)
    fail(ErrorKind::InsufficientDimensionBound, "wbar through " + std::to_string(bound) + " needs the group through " +
                                                    std::to_string(bound - 1));
  Wbar W;
  W.G = G;
  std::vector<std::vector<Key>> keys;
  for (int n = 0; n <= bound; ++n) keys.push_back(all_keys(*G, n));
  const SGroup& g = *G;
  W.K = keyed_levels(
      bound, std::move(keys), [&](int n, int i, const Key& b) { return wbar_face(g, n, i, b); },
      [&](int n, int i, const Key& b) { return wbar_degen(g, n, i, b); },
      [&](int, const Key& b) { return key_name(g, b); }, false);
  return W;
}

BiSSet group_nerve(SGroupP G, int P, int Q) {
  if (G->bound < P) fail(ErrorKind::InsufficientDimensionBound, "nerve needs the group through " + std::to_string(P));
  std::vector<std::vector<std::vector<Key>>> elems(P + 1);
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) {
      std::vector<Key> out = {{}};
      for (int j = 0; j < q; ++j) {
        std::vector<Key> next;
        for (auto& k : out)
          for (Idx g = 0; g < G->at(p).order(); ++g) {
            next.push_back(k);
            next.back().push_back(static_cast<int>(g));
          }
        out = std::move(next);
      }
      elems[p].push_back(std::move(out));
    }
  const SGroup& g = *G;
  BiKeyFns f;
  f.hface = [&](int p, int, int i, const Key& k) {
    Key r;
    for (int x : k) r.push_back(static_cast<int>(g.face[p][i][x]));
    return r;
  };
  f.hdegen = [&](int p, int, int i, const Key& k) {
    Key r;
    for (int x : k) r.push_back(static_cast<int>(g.degen[p][i][x]));
    return r;
  };
  f.vface = [&](int p, int q, int j, const Key& k) {
    Key r;
    for (int t = 0; t < q; ++t) {
      if ((j == 0 && t == 0) || (j == q && t == q - 1)) continue;
      if (j > 0 && j < q && t == j - 1) {
        r.push_back(static_cast<int>(g.mul(p, k[t], k[t + 1])));
        ++t;
        continue;
      }
      r.push_back(k[t]);
    }
    return r;
  };
  f.vdegen = [&](int p, int, int j, const Key& k) {
    Key r = k;
    r.insert(r.begin() + j, static_cast<int>(g.at(p).e));
    return r;
  };
  f.name = [&](int p, int, const Key& k) {
    std::string s = "<";
    for (std::size_t t = 0; t < k.size(); ++t) s += (t ? "," : "") + g.at(p).names[k[t]];
    return s + ">";
  };
  return build_bisimplicial(P, Q, elems, f);
}

void wbar_cross_check(const Wbar& W, int bound) {
  const SGroup& G = *W.G;
  int b = std::min({bound, G.bound, W.X()->limit()});
  BiSSet B = group_nerve(W.G, b, b);
  TotalResult T = total(B, b);
  // x_p = (b_p, d_{p+1} b_{p+1}, d_{p+1} d_{p+2} b_{p+2}, ...)
  auto image = [&](int n, const Key& k) {
    Key t(n + 1);
    for (int p = 0; p <= n; ++p) {
      Key x;
      for (int j = p; j < n; ++j) {
        Idx y = k[j];
        for (int m = j; m > p; --m) y = G.face[m][m][y];
        x.push_back(static_cast<int>(y));
      }
      // element index of x inside B_{p,n-p}: mixed radix, first entry slowest
      Idx code = 0;
      for (int v : x) code = code * static_cast<Idx>(G.at(p).order()) + static_cast<Idx>(v);
      t[p] = static_cast<int>(code);
    }
    return T.index_of(n, t);
  };
  std::vector<std::vector<Idx>> f(b + 1);
  for (int n = 0; n <= b; ++n) {
    const auto& keys = W.K.tuples[n];
    if (keys.size() != T.X->size(n))
      fail(ErrorKind::CrossCheckMismatch, "wbar level " + std::to_string(n) + " has " + std::to_string(keys.size()) +
                                              " elements, the total has " + std::to_string(T.X->size(n)));
    std::vector<char> hit(keys.size(), 0);
    f[n].resize(keys.size());
    for (const Key& k : keys) {
      Idx x = W.index_of(n, k), y = image(n, k);
      if (hit[y]) fail(ErrorKind::CrossCheckMismatch, "wbar comparison is not injective at " + W.X()->name(n, x));
      hit[y] = 1;
      f[n][x] = y;
    }
  }
  for (int n = 0; n <= b; ++n)
    for (Idx x = 0; x < f[n].size(); ++x) {
      for (int i = 0; n > 0 && i <= n; ++i)
        if (f[n - 1][W.X()->face(n, i, x)] != T.X->face(n, i, f[n][x]))
          fail(ErrorKind::CrossCheckMismatch, "wbar comparison does not commute with d" + std::to_string(i) + " at " +
                                                  W.X()->name(n, x));
      for (int i = 0; n < b && i <= n; ++i)
        if (f[n + 1][W.X()->degen(n, i, x)] != T.X->degen(n, i, f[n][x]))
          fail(ErrorKind::CrossCheckMismatch, "wbar comparison does not commute with s" + std::to_string(i) + " at " +
                                                  W.X()->name(n, x));
    }
}

Wbar wbar(SGroupP G, int bound) {
  Wbar W = wbar_formula(G, bound);
  wbar_cross_check(W, bound);
  if (!is_n_reduced(*W.X(), 0)) fail(ErrorKind::CrossCheckMismatch, "wbar is not reduced");
  return W;
}

SGroupP wbar_group(SGroupP A, int bound) {
  if (!A->abelian()) fail(ErrorKind::NotAbelian, "wbar carries a group structure only for abelian input");
  if (A->bound < bound - 1)
    fail(ErrorKind::InsufficientDimensionBound, "wbar group through " + std::to_string(bound) + " needs input through " +
                                                    std::to_string(bound - 1));
  SGroup G;
  G.bound = bound;
  for (int n = 0; n <= bound; ++n) {
    std::vector<FinGroupP> fs(A->levels.begin(), A->levels.begin() + n);
    G.levels.push_back(std::make_shared<FinGroup>(direct_product(fs, "[", ",", "]")));
  }
  G.face.resize(bound + 1);
  G.degen.resize(bound + 1);
  auto key = [](const std::vector<Idx>& c) { return Key(c.begin(), c.end()); };
  auto code = [](const Key& k) { return std::vector<Idx>(k.begin(), k.end()); };
  for (int n = 0; n <= bound; ++n) {
    const FinGroup& L = G.at(n);
    if (n > 0)
      for (int i = 0; i <= n; ++i) {
        G.face[n].emplace_back(L.order());
        for (Idx x = 0; x < L.order(); ++x) G.face[n][i][x] = G.at(n - 1).join(code(wbar_face(*A, n, i, key(L.split(x)))));
      }
    if (n < bound)
      for (int i = 0; i <= n; ++i) {
        G.degen[n].emplace_back(L.order());
        for (Idx x = 0; x < L.order(); ++x)
          G.degen[n][i][x] = G.at(n + 1).join(code(wbar_degen(*A, n, i, key(L.split(x)))));
      }
  }
  return finish_sgroup(std::move(G));
}

SGroupP wbar_iter_group(SGroupP A, int k, int bound) {
  if (!A->abelian()) fail(ErrorKind::NotAbelian, "iterated wbar needs an abelian simplicial group");
  SGroupP G = A;
  for (int j = 0; j < k; ++j) G = wbar_group(G, bound);
  return G;
}

SSetP wbar_iter(SGroupP A, int k, int bound) { return wbar_iter_group(A, k, bound)->set; }

WBundle w_bundle(SGroupP G, int bound) {
  WBundle R;
  R.W = wbar(G, bound + 1);
  R.D = dec0(R.W.X(), bound);
  const SGroup& g = *G;
  std::vector<std::vector<Key>> keys;
  for (int n = 0; n <= bound; ++n) keys.push_back(all_keys(g, n + 1));
  R.WG = keyed_levels(
      bound, std::move(keys), [&](int n, int i, const Key& b) { return wbar_face(g, n + 1, i, b); },
      [&](int n, int i, const Key& b) { return wbar_degen(g, n + 1, i, b); },
      [&](int, const Key& b) { return key_name(g, b); }, false);
  std::vector<std::vector<Idx>> to_dec(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    to_dec[n].resize(R.W.X()->size(n + 1));
    for (Idx x = 0; x < R.D.of[n].size(); ++x) to_dec[n][R.D.of[n][x]] = x;
  }
  R.iso = SMap::from_function(R.WG.X, R.D.D, [&](int n, Idx x) {
    return to_dec[n][R.W.index_of(n + 1, R.WG.tuple_of(n, x))];
  });
  if (!is_iso(R.iso)) fail(ErrorKind::CrossCheckMismatch, "WG level formula does not match Dec0 of wbar");
  R.fib = compose(R.D.proj, R.iso);
  GAction a;
  a.P = R.WG.X;
  a.G = G;
  a.act.resize(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    const FinGroup& Gn = g.at(n);
    a.act[n].resize(R.WG.X->size(n) * Gn.order());
    for (Idx x = 0; x < R.WG.X->size(n); ++x) {
      Key b = R.WG.tuple_of(n, x);
      for (Idx h = 0; h < Gn.order(); ++h) {
        Key c = b;
        c[n] = static_cast<int>(Gn.mul(b[n], h));
        a.act[n][x * Gn.order() + h] = R.WG.index_of(n, c);
      }
    }
  }
  R.bundle = GBundle{a, R.W.X(), R.fib};
  return R;
}

}  // namespace skan
