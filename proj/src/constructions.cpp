#include <algorithm>
#include <numeric>

#include "skan/core.hpp"

namespace skan {

CoproductResult coproduct(const std::vector<SSetP>& parts) {
  auto X = std::make_shared<SSet>();
  std::vector<std::vector<Idx>> offset(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const SSet& A = *parts[p];
    offset[p].resize(A.top() + 1);
    for (int k = 0; k <= A.top(); ++k) {
      offset[p][k] = static_cast<Idx>(X->ngen(k));
      for (Idx g = 0; g < A.ngen(k); ++g) {
        std::vector<Cell> faces;
        if (k > 0)
          for (int i = 0; i <= k; ++i) {
            Cell c = A.gen_face(k, g, i);
            c.gen += offset[p][c.k];
            faces.push_back(c);
          }
        X->add_generator(k, std::to_string(p) + ":" + A.gen_name(k, g), std::move(faces));
      }
    }
    if (!A.finite()) X->trunc = std::min(X->trunc.value_or(INT_MAX), *A.trunc);
  }
  CoproductResult r;
  r.X = X;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    SMap m;
    m.src = parts[p];
    m.tgt = X;
    m.img.resize(parts[p]->top() + 1);
    for (int k = 0; k <= parts[p]->top(); ++k)
      for (Idx g = 0; g < parts[p]->ngen(k); ++g) m.img[k].push_back(nondeg(k, g + offset[p][k]));
    r.inj.push_back(std::move(m));
  }
  return r;
}

namespace {

ProductResult pair_levels(SSetP A, SSetP B, int N, bool finite,
                          const std::function<bool(int, Idx, Idx)>& keep,
                          const std::function<std::vector<Idx>(int, Idx)>& partners) {
  std::vector<std::vector<Key>> elems(N + 1);
  for (int n = 0; n <= N; ++n)
    for (Idx x = 0; x < A->size(n); ++x)
      for (Idx y : partners(n, x))
        if (keep(n, x, y)) elems[n].push_back({static_cast<int>(x), static_cast<int>(y)});
  LevelData d = build_levels(
      N, elems,
      [&](int n, int i, const Key& k) {
        return Key{static_cast<int>(A->face(n, i, k[0])), static_cast<int>(B->face(n, i, k[1]))};
      },
      [&](int n, int i, const Key& k) {
        return Key{static_cast<int>(A->degen(n, i, k[0])), static_cast<int>(B->degen(n, i, k[1]))};
      },
      [&](int n, const Key& k) { return "(" + A->name(n, k[0]) + "," + B->name(n, k[1]) + ")"; });
  Built b = normalize_levels(d, finite);
  ProductResult r;
  r.X = b.X;
  r.pairs.resize(N + 1);
  r.index.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    r.pairs[n].resize(elems[n].size());
    for (Idx e = 0; e < elems[n].size(); ++e) {
      std::pair<Idx, Idx> xy{static_cast<Idx>(elems[n][e][0]), static_cast<Idx>(elems[n][e][1])};
      r.pairs[n][b.to[n][e]] = xy;
      r.index[n][xy] = b.to[n][e];
    }
  }
  r.p1 = SMap::from_function(r.X, A, [&](int k, Idx g) { return r.pairs[k][g].first; });
  r.p2 = SMap::from_function(r.X, B, [&](int k, Idx g) { return r.pairs[k][g].second; });
  return r;
}

int pair_bound(const SSet& A, const SSet& B, bool& finite) {
  finite = A.finite() && B.finite();
  if (finite) return std::max(0, A.top()) + std::max(0, B.top());
  return std::min(A.limit(), B.limit());
}

}  // namespace

ProductResult product(SSetP A, SSetP B) {
  bool finite;
  int N = pair_bound(*A, *B, finite);
  if (A->empty() || B->empty()) N = finite ? -1 : N;
  return pair_levels(
      A, B, N, finite, [](int, Idx, Idx) { return true; },
      [&](int n, Idx) {
        std::vector<Idx> all(B->size(n));
        std::iota(all.begin(), all.end(), 0);
        return all;
      });
}

ProductResult fiber_product(const SMap& f, const SMap& g) {
  bool finite;
  int N = pair_bound(*f.src, *g.src, finite);
  std::vector<std::vector<std::vector<Idx>>> byImage(N + 1);
  std::vector<std::vector<Idx>> fl(N + 1);
  for (int n = 0; n <= N; ++n) {
    byImage[n].resize(g.tgt->size(n));
    for (Idx y = 0; y < g.src->size(n); ++y) byImage[n][g.at(n, y)].push_back(y);
    fl[n] = f.level(n);
  }
  return pair_levels(
      f.src, g.src, N, finite, [](int, Idx, Idx) { return true; },
      [&](int n, Idx x) { return byImage[n][fl[n][x]]; });
}

Idx pair_index(const ProductResult& P, int n, Idx a, Idx b) {
  const SSet& A = *P.p1.tgt;
  const SSet& B = *P.p2.tgt;
  Cell ca = A.cell(n, a), cb = B.cell(n, b);
  std::uint32_t common = ca.mask & cb.mask;
  Mono surj(n + 1), sec;
  for (int j = 0; j <= n; ++j) {
    surj[j] = j == 0 ? 0 : surj[j - 1] + ((common >> (j - 1) & 1u) ? 0 : 1);
    if (j == 0 || surj[j] != surj[j - 1]) sec.push_back(j);
  }
  int m = static_cast<int>(sec.size()) - 1;
  if (m >= static_cast<int>(P.index.size()))
    fail(ErrorKind::CrossCheckMismatch, "pair lies above the stored product levels");
  auto it = P.index[m].find({A.act(sec, n, a), B.act(sec, n, b)});
  if (it == P.index[m].end()) fail(ErrorKind::CrossCheckMismatch, "pair is not in the product");
  return m == n ? it->second : P.X->act(surj, m, it->second);
}

SMap product_map(const ProductResult& from, const ProductResult& to, const SMap& f, const SMap& g) {
  return SMap::from_function(from.X, to.X, [&](int k, Idx x) {
    auto [a, b] = from.pairs[k][x];
    return pair_index(to, k, f.at(k, a), g.at(k, b));
  });
}

QuotientResult quotient_by_labels(SSetP X, int N, const std::vector<std::vector<Idx>>& labels,
                                  bool finite) {
  // labels may be sparse; renumber them densely in order of first use
  std::vector<std::vector<Idx>> cls(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::map<Idx, Idx> dense;
    cls[n].resize(X->size(n));
    for (Idx x = 0; x < X->size(n); ++x)
      cls[n][x] = dense.emplace(labels[n][x], static_cast<Idx>(dense.size())).first->second;
  }
  LevelData d;
  d.N = N;
  d.names.resize(N + 1);
  d.face.resize(N + 1);
  d.degen.resize(N + 1);
  std::vector<Idx> count(N + 1, 0);
  std::vector<std::vector<Idx>> rep(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (Idx x = 0; x < X->size(n); ++x) count[n] = std::max(count[n], cls[n][x] + 1);
    rep[n].assign(count[n], UINT32_MAX);
    d.names[n].assign(count[n], "");
    for (Idx x = 0; x < X->size(n); ++x) {
      Idx c = cls[n][x];
      std::string nm = X->name(n, x);
      if (rep[n][c] == UINT32_MAX || nm < d.names[n][c]) d.names[n][c] = nm;
      if (rep[n][c] == UINT32_MAX) rep[n][c] = x;
    }
  }
  auto mismatch = [&](const std::string& op, int n, Idx x) {
    fail(ErrorKind::RelationNotSimplicial,
         op + " does not respect the relation at " + X->name(n, x));
  };
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      d.face[n].assign(n + 1, std::vector<Idx>(count[n]));
      for (int i = 0; i <= n; ++i) {
        std::vector<Idx> seen(count[n], UINT32_MAX);
        for (Idx x = 0; x < X->size(n); ++x) {
          Idx f = cls[n - 1][X->face(n, i, x)];
          Idx& s = seen[cls[n][x]];
          if (s == UINT32_MAX) s = f;
          else if (s != f) mismatch("d" + std::to_string(i), n, x);
        }
        d.face[n][i] = seen;
      }
    }
    if (n < N) {
      d.degen[n].assign(n + 1, std::vector<Idx>(count[n]));
      for (int i = 0; i <= n; ++i) {
        std::vector<Idx> seen(count[n], UINT32_MAX);
        for (Idx x = 0; x < X->size(n); ++x) {
          Idx f = cls[n + 1][X->degen(n, i, x)];
          Idx& s = seen[cls[n][x]];
          if (s == UINT32_MAX) s = f;
          else if (s != f) mismatch("s" + std::to_string(i), n, x);
        }
        d.degen[n][i] = seen;
      }
    }
  }
  Built b = normalize_levels(d, finite);
  QuotientResult r;
  r.X = b.X;
  r.proj = SMap::from_function(X, b.X, [&](int k, Idx x) { return b.to[k][cls[k][x]]; });
  return r;
}

namespace {
struct UF {
  std::vector<Idx> p;
  explicit UF(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  Idx find(Idx x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(Idx a, Idx b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<Idx>> labels_from(std::vector<UF>& uf) {
  std::vector<std::vector<Idx>> cls(uf.size());
  for (std::size_t n = 0; n < uf.size(); ++n) {
    std::vector<Idx> id(uf[n].p.size(), UINT32_MAX);
    Idx next = 0;
    cls[n].resize(uf[n].p.size());
    for (Idx x = 0; x < uf[n].p.size(); ++x) {
      Idx r = uf[n].find(x);
      if (id[r] == UINT32_MAX) id[r] = next++;
      cls[n][x] = id[r];
    }
  }
  return cls;
}
}  // namespace

QuotientResult quotient_by_relation(SSetP X, const std::vector<std::pair<Cell, Cell>>& R) {
  int N = X->finite() ? std::max(0, X->top()) : X->limit();
  for (auto& [a, b] : R) {
    if (a.n != b.n) fail(ErrorKind::RelationNotSimplicial, "related cells lie in different levels");
    N = std::max(N, a.n);
  }
  std::vector<UF> uf;
  for (int n = 0; n <= N; ++n) uf.emplace_back(X->size(n));
  for (auto& [a, b] : R) uf[a.n].unite(X->index(a), X->index(b));
  for (int n = 0; n < N; ++n)
    for (Idx x = 0; x < X->size(n); ++x) {
      Idx r = uf[n].find(x);
      if (r == x) continue;
      for (int i = 0; i <= n; ++i) uf[n + 1].unite(X->degen(n, i, x), X->degen(n, i, r));
    }
  return quotient_by_labels(X, N, labels_from(uf), X->finite());
}

SubResult subcomplex(SSetP X, const std::function<bool(int, Idx)>& keep_gen) {
  int T = X->top();
  std::vector<std::vector<char>> keep(T + 1);
  for (int k = 0; k <= T; ++k) {
    keep[k].resize(X->ngen(k));
    for (Idx g = 0; g < X->ngen(k); ++g) keep[k][g] = keep_gen(k, g) ? 1 : 0;
  }
  // downward closure through all nondegenerate faces
  for (int k = T; k >= 1; --k)
    for (Idx g = 0; g < X->ngen(k); ++g)
      if (keep[k][g])
        for (int i = 0; i <= k; ++i) {
          const Cell& c = X->gen_face(k, g, i);
          keep[c.k][c.gen] = 1;
        }
  auto Y = std::make_shared<SSet>();
  std::vector<std::vector<Idx>> newIdx(T + 1);
  std::vector<std::vector<Idx>> oldIdx(T + 1);
  for (int k = 0; k <= T; ++k) {
    newIdx[k].assign(X->ngen(k), UINT32_MAX);
    for (Idx g = 0; g < X->ngen(k); ++g) {
      if (!keep[k][g]) continue;
      std::vector<Cell> faces;
      if (k > 0)
        for (int i = 0; i <= k; ++i) {
          Cell c = X->gen_face(k, g, i);
          c.gen = newIdx[c.k][c.gen];
          faces.push_back(c);
        }
      newIdx[k][g] = Y->add_generator(k, X->gen_name(k, g), std::move(faces));
      oldIdx[k].push_back(g);
    }
  }
  Y->trunc = X->trunc;
  SubResult r;
  r.X = Y;
  r.incl.src = Y;
  r.incl.tgt = X;
  r.incl.img.resize(Y->top() + 1);
  for (int k = 0; k <= Y->top(); ++k)
    for (Idx g : oldIdx[k]) r.incl.img[k].push_back(nondeg(k, g));
  return r;
}

SSetP skeleton(SSetP X, int n) {
  auto r = subcomplex(X, [n](int k, Idx) { return k <= n; });
  auto Y = std::const_pointer_cast<SSet>(r.X);
  if (X->finite() || n <= X->limit()) Y->trunc.reset();
  return Y;
}

SSetP truncate(SSetP X, int n) {
  if (X->finite() && X->top() <= n) return X;
  X->require(n, "truncate");
  auto Y = std::const_pointer_cast<SSet>(subcomplex(X, [n](int k, Idx) { return k <= n; }).X);
  Y->trunc = n;
  return Y;
}

SSetP reduce_n(SSetP X, int n) {
  if (X->empty()) fail(ErrorKind::EmptyInput, "reduce_n needs a nonempty simplicial set");
  int N = X->finite() ? std::max(X->top(), n) : X->limit();
  std::vector<std::vector<Idx>> cls(N + 1);
  for (int m = 0; m <= N; ++m) {
    cls[m].resize(X->size(m));
    Idx next = 1;
    for (Idx x = 0; x < X->size(m); ++x) cls[m][x] = X->cell(m, x).k <= n ? 0 : next++;
  }
  return quotient_by_labels(X, N, cls, X->finite()).X;
}

bool is_n_reduced(const SSet& X, int n) {
  for (int k = 0; k <= std::min(n, X.limit()); ++k)
    if (X.size(k) != 1) return false;
  return true;
}

SubResult eilenberg_subcomplex(SSetP X, Idx x, int m) {
  if (x >= X->ngen(0)) fail(ErrorKind::VertexNotFound, "vertex index " + std::to_string(x));
  return subcomplex(X, [&](int k, Idx g) {
    Cell c = nondeg(k, g);
    for (std::uint32_t S = 1; S < (1u << (k + 1)); ++S) {
      int sz = std::popcount(S);
      if (sz > m) continue;
      Mono inj;
      for (int j = 0; j <= k; ++j)
        if (S >> j & 1u) inj.push_back(j);
      Cell f = X->act_cell(inj, c);
      Cell at{sz - 1, 0, x, sz == 1 ? 0u : (1u << (sz - 1)) - 1};
      if (!(f == at)) return false;
    }
    return true;
  });
}

}  // namespace skan
