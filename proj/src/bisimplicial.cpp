#include "skan/bisimplicial.hpp"

#include <algorithm>

namespace skan {

void BiSSet::require(int p, int q, const char* who) const {
  if (p > P || q > Q)
    fail(ErrorKind::InsufficientDimensionBound,
         std::string(who) + " needs bidegree (" + std::to_string(p) + "," + std::to_string(q) +
             ") but data stops at (" + std::to_string(P) + "," + std::to_string(Q) + ")");
}

BiSSet build_bisimplicial(int P, int Q, const std::vector<std::vector<std::vector<Key>>>& elems,
                          const BiKeyFns& f) {
  BiSSet B;
  B.P = P;
  B.Q = Q;
  auto grid = [&](auto& v) {
    v.resize(P + 1);
    for (auto& row : v) row.resize(Q + 1);
  };
  grid(B.names);
  grid(B.hface);
  grid(B.vface);
  grid(B.hdegen);
  grid(B.vdegen);
  std::vector<std::vector<std::map<Key, Idx>>> index(P + 1, std::vector<std::map<Key, Idx>>(Q + 1));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q)
      for (Idx x = 0; x < elems[p][q].size(); ++x) {
        index[p][q].emplace(elems[p][q][x], x);
        B.names[p][q].push_back(f.name(p, q, elems[p][q][x]));
      }
  auto look = [&](int p, int q, const Key& k) {
    auto it = index[p][q].find(k);
    if (it == index[p][q].end())
      fail(ErrorKind::CrossCheckMismatch,
           "operator leaves bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
    return it->second;
  };
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) {
      const auto& E = elems[p][q];
      if (p > 0)
        for (int i = 0; i <= p; ++i) {
          B.hface[p][q].emplace_back();
          for (auto& k : E) B.hface[p][q][i].push_back(look(p - 1, q, f.hface(p, q, i, k)));
        }
      if (q > 0)
        for (int j = 0; j <= q; ++j) {
          B.vface[p][q].emplace_back();
          for (auto& k : E) B.vface[p][q][j].push_back(look(p, q - 1, f.vface(p, q, j, k)));
        }
      if (p < P)
        for (int i = 0; i <= p; ++i) {
          B.hdegen[p][q].emplace_back();
          for (auto& k : E) B.hdegen[p][q][i].push_back(look(p + 1, q, f.hdegen(p, q, i, k)));
        }
      if (q < Q)
        for (int j = 0; j <= q; ++j) {
          B.vdegen[p][q].emplace_back();
          for (auto& k : E) B.vdegen[p][q][j].push_back(look(p, q + 1, f.vdegen(p, q, j, k)));
        }
    }
  return B;
}

void BiSSet::validate() const {
  // rows and columns are simplicial sets
  for (int q = 0; q <= Q; ++q) {
    LevelData d;
    d.N = P;
    for (int p = 0; p <= P; ++p) {
      d.names.push_back(names[p][q]);
      d.face.push_back(hface[p][q]);
      d.degen.push_back(hdegen[p][q]);
    }
    check_identities(d);
  }
  for (int p = 0; p <= P; ++p) {
    LevelData d;
    d.N = Q;
    for (int q = 0; q <= Q; ++q) {
      d.names.push_back(names[p][q]);
      d.face.push_back(vface[p][q]);
      d.degen.push_back(vdegen[p][q]);
    }
    check_identities(d);
  }
  auto bad = [&](const std::string& what, int p, int q, Idx x) {
    fail(ErrorKind::SimplicialIdentityViolation,
         what + " do not commute at " + names[p][q][x] + " in bidegree (" + std::to_string(p) + "," +
             std::to_string(q) + ")");
  };
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q)
      for (Idx x = 0; x < size(p, q); ++x) {
        if (p > 0 && q > 0)
          for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j)
              if (hface[p][q - 1][i][vface[p][q][j][x]] != vface[p - 1][q][j][hface[p][q][i][x]])
                bad("horizontal and vertical faces", p, q, x);
        if (p > 0 && q < Q)
          for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j)
              if (hface[p][q + 1][i][vdegen[p][q][j][x]] != vdegen[p - 1][q][j][hface[p][q][i][x]])
                bad("horizontal faces and vertical degeneracies", p, q, x);
        if (p < P && q > 0)
          for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j)
              if (vface[p + 1][q][j][hdegen[p][q][i][x]] != hdegen[p][q - 1][i][vface[p][q][j][x]])
                bad("vertical faces and horizontal degeneracies", p, q, x);
        if (p < P && q < Q)
          for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j)
              if (vdegen[p + 1][q][j][hdegen[p][q][i][x]] != hdegen[p][q + 1][i][vdegen[p][q][j][x]])
                bad("degeneracies", p, q, x);
      }
}

BiSSet const_bisimplicial(SSetP X, int P, int Q) {
  X->require(Q, "const_bisimplicial");
  std::vector<std::vector<std::vector<Key>>> elems(P + 1, std::vector<std::vector<Key>>(Q + 1));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q)
      for (Idx x = 0; x < X->size(q); ++x) elems[p][q].push_back({static_cast<int>(x)});
  BiKeyFns f;
  f.hface = [](int, int, int, const Key& k) { return k; };
  f.hdegen = [](int, int, int, const Key& k) { return k; };
  f.vface = [&](int, int q, int j, const Key& k) { return Key{static_cast<int>(X->face(q, j, k[0]))}; };
  f.vdegen = [&](int, int q, int j, const Key& k) { return Key{static_cast<int>(X->degen(q, j, k[0]))}; };
  f.name = [&](int, int q, const Key& k) { return X->name(q, k[0]); };
  return build_bisimplicial(P, Q, elems, f);
}

namespace {

Built diagonal_built(const BiSSet& B) {
  int N = std::min(B.P, B.Q);
  std::vector<std::vector<Key>> elems(N + 1);
  for (int n = 0; n <= N; ++n)
    for (Idx x = 0; x < B.size(n, n); ++x) elems[n].push_back({static_cast<int>(x)});
  LevelData d = build_levels(
      N, elems,
      [&](int n, int i, const Key& k) {
        return Key{static_cast<int>(B.hface[n][n - 1][i][B.vface[n][n][i][k[0]]])};
      },
      [&](int n, int i, const Key& k) {
        return Key{static_cast<int>(B.hdegen[n][n + 1][i][B.vdegen[n][n][i][k[0]]])};
      },
      [&](int n, const Key& k) { return B.names[n][n][k[0]]; });
  return normalize_levels(d, false);
}

}  // namespace

SSetP diagonal(const BiSSet& B) { return diagonal_built(B).X; }

TotalResult total(const BiSSet& B, int bound) {
  B.require(bound, bound, "total");
  std::vector<std::vector<Key>> tuples(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    // byV0[p][y]: elements of B_{p,n-p} whose vertical d0 is y
    std::vector<std::vector<std::vector<Idx>>> byV0(n + 1);
    for (int p = 0; p < n; ++p) {
      int q = n - p;
      byV0[p].resize(B.size(p, q - 1));
      for (Idx x = 0; x < B.size(p, q); ++x) byV0[p][B.vface[p][q][0][x]].push_back(x);
    }
    Key cur(n + 1);
    std::function<void(int)> rec = [&](int p) {
      if (p < 0) {
        tuples[n].push_back(cur);
        return;
      }
      if (p == n) {
        for (Idx x = 0; x < B.size(n, 0); ++x) {
          cur[n] = static_cast<int>(x);
          rec(n - 1);
        }
        return;
      }
      Idx want = B.hface[p + 1][n - p - 1][p + 1][cur[p + 1]];
      for (Idx x : byV0[p][want]) {
        cur[p] = static_cast<int>(x);
        rec(p - 1);
      }
    };
    rec(n);
  }
  return keyed_levels(
      bound, std::move(tuples),
      [&](int n, int i, const Key& t) {
        Key y(n);
        for (int p = 0; p < n; ++p)
          y[p] = p < i ? static_cast<int>(B.vface[p][n - p][i - p][t[p]])
                       : static_cast<int>(B.hface[p + 1][n - p - 1][i][t[p + 1]]);
        return y;
      },
      [&](int n, int i, const Key& t) {
        Key y(n + 2);
        for (int p = 0; p <= n + 1; ++p)
          y[p] = p <= i ? static_cast<int>(B.vdegen[p][n - p][i - p][t[p]])
                        : static_cast<int>(B.hdegen[p - 1][n - p + 1][i][t[p - 1]]);
        return y;
      },
      [&](int n, const Key& t) {
        std::string s = "(";
        for (int p = 0; p <= n; ++p) s += (p ? ";" : "") + B.names[p][n - p][t[p]];
        return s + ")";
      },
      false);
}

BiSSet total_dec(SSetP X, int P, int Q) {
  X->require(P + Q + 1, "total_dec");
  std::vector<std::vector<std::vector<Key>>> elems(P + 1, std::vector<std::vector<Key>>(Q + 1));
  for (int k = 0; k <= P; ++k)
    for (int l = 0; l <= Q; ++l)
      for (Idx x = 0; x < X->size(k + l + 1); ++x) elems[k][l].push_back({static_cast<int>(x)});
  BiKeyFns f;
  f.hface = [&](int k, int l, int i, const Key& x) { return Key{static_cast<int>(X->face(k + l + 1, i, x[0]))}; };
  f.vface = [&](int k, int l, int j, const Key& x) {
    return Key{static_cast<int>(X->face(k + l + 1, k + 1 + j, x[0]))};
  };
  f.hdegen = [&](int k, int l, int i, const Key& x) { return Key{static_cast<int>(X->degen(k + l + 1, i, x[0]))}; };
  f.vdegen = [&](int k, int l, int j, const Key& x) {
    return Key{static_cast<int>(X->degen(k + l + 1, k + 1 + j, x[0]))};
  };
  f.name = [&](int k, int l, const Key& x) { return X->name(k + l + 1, x[0]); };
  return build_bisimplicial(P, Q, elems, f);
}

SSetP discrete(const std::vector<std::string>& names) {
  auto X = std::make_shared<SSet>();
  for (auto& n : names) X->add_generator(0, n, {});
  return X;
}

Dec0Result dec0(SSetP X, int bound) {
  Dec0Result R;
  bool finite = X->finite();
  // one level past the top so the cylinder on D stays inside the tables
  int N = finite ? std::max(X->top(), 0) + 1 : std::min(bound, X->limit() - 1);
  if (N < 0) fail(ErrorKind::InsufficientDimensionBound, "dec0 needs level 1 of its input");
  std::vector<std::vector<Key>> elems(N + 1);
  for (int n = 0; n <= N; ++n)
    for (Idx x = 0; x < X->size(n + 1); ++x) elems[n].push_back({static_cast<int>(x)});
  LevelData d = build_levels(
      N, elems, [&](int n, int i, const Key& k) { return Key{static_cast<int>(X->face(n + 1, i, k[0]))}; },
      [&](int n, int i, const Key& k) { return Key{static_cast<int>(X->degen(n + 1, i, k[0]))}; },
      [&](int n, const Key& k) { return X->name(n + 1, k[0]); });
  Built b = normalize_levels(d, finite);
  R.D = b.X;
  R.of.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    R.of[n].resize(elems[n].size());
    for (Idx e = 0; e < elems[n].size(); ++e) R.of[n][b.to[n][e]] = e;
  }
  auto ofAny = [&](int n, Idx x) {
    if (n <= N) return R.of[n][x];
    fail(ErrorKind::InsufficientDimensionBound, "dec0 level " + std::to_string(n));
  };
  R.proj = SMap::from_function(R.D, X, [&](int n, Idx x) { return X->face(n + 1, n + 1, ofAny(n, x)); });
  std::vector<std::string> vnames;
  for (Idx v = 0; v < X->ngen(0); ++v) vnames.push_back(X->gen_name(0, v));
  R.vertices = discrete(vnames);
  R.section = SMap::from_function(R.vertices, R.D, [&](int, Idx v) { return b.to[0][X->degen(0, 0, v)]; });
  R.retraction = SMap::from_function(R.D, R.vertices, [&](int n, Idx x) {
    return R.vertices->point_at(n, X->vertex(n + 1, ofAny(n, x), n + 1));
  });
  Cylinder C = cylinder(R.D);
  auto I = simplex(1);
  SMap H = SMap::from_function(C.P.X, R.D, [&](int n, Idx g) {
    auto [a, x] = C.P.pairs[n][g];
    Mono theta(n + 2, n + 1);
    for (int j = 0; j <= n; ++j)
      if (I->vertex(n, a, j) == 0) theta[j] = j;
    return b.to[n][X->act(theta, n + 1, ofAny(n, x))];
  });
  R.retract = retract_cert(R.section, R.retraction, H, C.P);
  return R;
}

CanonicalMaps diagonal_to_total(const BiSSet& B, int bound) {
  CanonicalMaps M;
  Built dB = diagonal_built(B);
  M.tot = total(B, bound);
  int N = std::min({bound, B.P, B.Q});
  std::vector<std::vector<Idx>> elem(N + 1);
  for (int n = 0; n <= N; ++n) {
    elem[n].resize(B.size(n, n));
    for (Idx e = 0; e < B.size(n, n); ++e) elem[n][dB.to[n][e]] = e;
  }
  M.d_to_total = SMap::from_function(dB.X, M.tot.X, [&](int n, Idx g) {
    Idx x = elem[n][g];
    Key t(n + 1);
    for (int p = 0; p <= n; ++p) {
      Idx y = x;
      for (int q = n; q > n - p; --q) y = B.vface[n][q][0][y];
      for (int m = n; m > p; --m) y = B.hface[m][n - p][m][y];
      t[p] = static_cast<int>(y);
    }
    return M.tot.index_of(n, t);
  });
  return M;
}

UnitMap total_unit(SSetP X, int bound) {
  UnitMap U;
  BiSSet D = total_dec(X, bound, bound);
  U.tot = total(D, bound);
  U.unit = SMap::from_function(X, U.tot.X, [&](int n, Idx x) {
    Key t(n + 1);
    for (int p = 0; p <= n; ++p) t[p] = static_cast<int>(X->degen(n, p, x));
    return U.tot.index_of(n, t);
  });
  return U;
}

std::size_t hom_bis_count(SSetP X, const BiSSet& B, std::size_t budget) {
  if (!X->finite()) fail(ErrorKind::InvalidArgument, "hom_bis_count needs a finite source");
  int d = std::max(X->top(), 0);
  B.require(d, d, "hom_bis_count");
  struct Item {
    int k, l;
    Idx x;
  };
  std::vector<Item> items;
  for (int t = 0; t <= d; ++t)
    for (int k = 0; k <= t; ++k)
      for (Idx x = 0; x < X->size(t + 1); ++x) items.push_back({k, t - k, x});
  std::map<std::tuple<int, int, Idx>, Idx> f;
  auto get = [&](int k, int l, Idx x) { return f.at({k, l, x}); };
  std::size_t count = 0, nodes = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (++nodes > budget) fail(ErrorKind::CombinatorialBlowup, "hom_bis_count exceeded its budget");
    if (pos == items.size()) {
      ++count;
      return;
    }
    auto [k, l, x] = items[pos];
    int n = k + l + 1;
    const Cell& c = X->cell(n, x);
    std::optional<Idx> forced;
    bool clash = false;
    for (int m = 0; m < n; ++m) {
      if (!(c.mask >> m & 1u) || m == k) continue;
      Idx y = X->face(n, m, x);
      Idx v = m < k ? B.hdegen[k - 1][l][m][get(k - 1, l, y)] : B.vdegen[k][l - 1][m - k - 1][get(k, l - 1, y)];
      if (forced && *forced != v) clash = true;
      forced = v;
    }
    if (clash) return;
    auto fits = [&](Idx b) {
      for (int i = 0; i <= k && k > 0; ++i)
        if (B.hface[k][l][i][b] != get(k - 1, l, X->face(n, i, x))) return false;
      for (int j = 0; j <= l && l > 0; ++j)
        if (B.vface[k][l][j][b] != get(k, l - 1, X->face(n, k + 1 + j, x))) return false;
      return true;
    };
    auto key = std::make_tuple(k, l, x);
    if (forced) {
      if (!fits(*forced)) return;
      f[key] = *forced;
      rec(pos + 1);
      f.erase(key);
      return;
    }
    for (Idx b = 0; b < B.size(k, l); ++b)
      if (fits(b)) {
        f[key] = b;
        rec(pos + 1);
      }
    f.erase(key);
  };
  rec(0);
  return count;
}

}  // namespace skan
