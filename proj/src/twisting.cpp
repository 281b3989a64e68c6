#include <algorithm>
#include <set>

#include "skan/bundles.hpp"

namespace skan {

namespace {

// Lowest i with x = s_i d_i x, or -1 for nondegenerate x.
int first_degeneracy(const Cell& c) {
  if (!c.degenerate()) return -1;
  for (int i = 0; i < c.n; ++i)
    if (c.mask >> i & 1u) return i;
  return -1;
}

int usable_top(const SSet& X, int cap) { return X.finite() ? std::min(X.top(), cap) : std::min(X.limit(), cap); }

}  // namespace

Idx TwistingFunction::at(int n, Idx x) const {
  const Cell& c = X->cell(n, x);
  int i = first_degeneracy(c);
  if (i < 0) return gen[n][c.gen];
  if (i == n - 1) return G->at(n - 1).e;
  return G->degen[n - 2][i][at(n - 1, X->face(n, i, x))];
}

void TwistingFunction::validate() const {
  int top = usable_top(*X, G->bound + 1);
  for (int n = 2; n <= top; ++n)
    for (Idx x = 0; x < X->size(n); ++x) {
      Idx t = at(n, x);
      for (int i = 0; i < n - 1; ++i)
        if (at(n - 1, X->face(n, i, x)) != G->face[n - 1][i][t])
          fail(ErrorKind::TwistingIdentityViolation,
               "tau d" + std::to_string(i) + " != d" + std::to_string(i) + " tau at " + X->name(n, x));
      if (at(n - 1, X->face(n, n - 1, x)) != G->mul(n - 2, at(n - 1, X->face(n, n, x)), G->face[n - 1][n - 1][t]))
        fail(ErrorKind::TwistingIdentityViolation, "last-face twisting identity fails at " + X->name(n, x));
    }
}

SMap TwistingFunction::classifying_map(const Wbar& W) const {
  SMap f = SMap::from_function(X, W.X(), [&](int n, Idx x) {
    Key b(n);
    for (int p = 0; p < n; ++p) {
      Mono front(p + 2);
      for (int j = 0; j <= p + 1; ++j) front[j] = j;
      b[p] = static_cast<int>(at(p + 1, X->act(front, n, x)));
    }
    return W.index_of(n, b);
  });
  f.validate();
  return f;
}

TwistingFunction constant_twisting(SSetP X, SGroupP G) {
  TwistingFunction t;
  t.X = X;
  t.G = G;
  int top = usable_top(*X, G->bound + 1);
  t.gen.resize(top + 1);
  for (int n = 1; n <= top; ++n) t.gen[n].assign(X->ngen(n), G->at(n - 1).e);
  return t;
}

TwistedProduct twisted_product(const TwistingFunction& t) {
  t.validate();
  TwistedProduct R;
  const SSet& X = *t.X;
  const SGroup& G = *t.G;
  int N = G.bound;
  X.require(N, "twisted_product");
  std::vector<std::vector<Key>> keys(N + 1);
  for (int n = 0; n <= N; ++n)
    for (Idx x = 0; x < X.size(n); ++x)
      for (Idx g = 0; g < G.at(n).order(); ++g) keys[n].push_back({static_cast<int>(x), static_cast<int>(g)});
  R.K = keyed_levels(
      N, std::move(keys),
      [&](int n, int i, const Key& k) {
        Idx x = X.face(n, i, k[0]), g = G.face[n][i][k[1]];
        if (i == n) g = G.mul(n - 1, t.at(n, k[0]), g);
        return Key{static_cast<int>(x), static_cast<int>(g)};
      },
      [&](int n, int i, const Key& k) {
        return Key{static_cast<int>(X.degen(n, i, k[0])), static_cast<int>(G.degen[n][i][k[1]])};
      },
      [&](int n, const Key& k) { return "(" + X.name(n, k[0]) + "," + G.at(n).names[k[1]] + ")"; }, false);
  GAction a;
  a.P = R.K.X;
  a.G = t.G;
  a.act.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::size_t m = G.at(n).order();
    a.act[n].resize(R.K.X->size(n) * m);
    for (Idx e = 0; e < R.K.X->size(n); ++e) {
      Key k = R.K.tuple_of(n, e);
      for (Idx h = 0; h < m; ++h)
        a.act[n][e * m + h] = R.K.index_of(n, {k[0], static_cast<int>(G.mul(n, k[1], h))});
    }
  }
  SMap proj = SMap::from_function(R.K.X, t.X, [&](int n, Idx e) { return static_cast<Idx>(R.K.tuple_of(n, e)[0]); });
  R.bundle = GBundle{a, t.X, proj};
  return R;
}

std::vector<TwistingFunction> enumerate_twistings(SSetP X, SGroupP G, std::size_t budget) {
  if (!X->finite()) fail(ErrorKind::InvalidArgument, "twistings are enumerated on finite simplicial sets");
  int top = X->top();
  if (G->bound < top - 1) fail(ErrorKind::InsufficientDimensionBound, "group bound too small for the base");
  TwistingFunction t = constant_twisting(X, G);
  std::vector<std::pair<int, Idx>> gens;
  double estimate = 1;
  for (int n = 1; n <= top; ++n)
    for (Idx g = 0; g < X->ngen(n); ++g) {
      gens.emplace_back(n, g);
      estimate *= static_cast<double>(G->at(n - 1).order());
    }
  std::vector<TwistingFunction> out;
  std::size_t nodes = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (++nodes > budget)
      fail(ErrorKind::CombinatorialBlowup,
           "twisting enumeration exceeded its budget (up to " + std::to_string(static_cast<long long>(estimate)) +
               " assignments)");
    if (pos == gens.size()) {
      out.push_back(t);
      return;
    }
    auto [n, g] = gens[pos];
    Idx x = X->index(nondeg(n, g));
    for (Idx v = 0; v < G->at(n - 1).order(); ++v) {
      t.gen[n][g] = v;
      bool ok = true;
      if (n >= 2) {
        for (int i = 0; i < n - 1 && ok; ++i) ok = t.at(n - 1, X->face(n, i, x)) == G->face[n - 1][i][v];
        ok = ok && t.at(n - 1, X->face(n, n - 1, x)) ==
                       G->mul(n - 2, t.at(n - 1, X->face(n, n, x)), G->face[n - 1][n - 1][v]);
      }
      if (ok) rec(pos + 1);
    }
    t.gen[n][g] = G->at(n - 1).e;
  };
  rec(0);
  return out;
}

std::optional<std::vector<std::vector<Idx>>> twisting_gauge(const TwistingFunction& a, const TwistingFunction& b) {
  const SSet& X = *a.X;
  const SGroup& G = *a.G;
  int top = X.top();
  if (G.bound < top) fail(ErrorKind::InsufficientDimensionBound, "gauge search needs the group through the base dimension");
  std::vector<std::vector<Idx>> phi(top + 1);
  for (int n = 0; n <= top; ++n) phi[n].assign(X.ngen(n), G.at(n).e);
  std::function<Idx(int, Idx)> at = [&](int n, Idx x) -> Idx {
    const Cell& c = X.cell(n, x);
    int i = first_degeneracy(c);
    if (i < 0) return phi[n][c.gen];
    return G.degen[n - 1][i][at(n - 1, X.face(n, i, x))];
  };
  std::vector<std::pair<int, Idx>> gens;
  for (int n = 0; n <= top; ++n)
    for (Idx g = 0; g < X.ngen(n); ++g) gens.emplace_back(n, g);
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == gens.size()) return true;
    auto [n, g] = gens[pos];
    Idx x = X.index(nondeg(n, g));
    for (Idx v = 0; v < G.at(n).order(); ++v) {
      phi[n][g] = v;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = at(n - 1, X.face(n, i, x)) == G.face[n][i][v];
      // phi(d_n x) tau_a(x) = tau_b(x) d_n phi(x)
      if (ok && n > 0)
        ok = G.mul(n - 1, at(n - 1, X.face(n, n, x)), a.at(n, x)) == G.mul(n - 1, b.at(n, x), G.face[n][n][v]);
      if (ok && rec(pos + 1)) return true;
    }
    phi[n][g] = G.at(n).e;
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return phi;
}

CechNerve cech_nerve(const SMap& f, int bound) {
  CechNerve C;
  const SSet& Y = *f.src;
  Y.require(bound, "cech_nerve");
  f.tgt->require(bound, "cech_nerve");
  C.keys.assign(bound + 1, std::vector<std::vector<Key>>(bound + 1));
  for (int p = 0; p <= bound; ++p) {
    std::map<Idx, std::vector<Idx>> fiber;
    for (Idx y = 0; y < Y.size(p); ++y) fiber[f.at(p, y)].push_back(y);
    for (int q = 0; q <= bound; ++q)
      for (auto& [x, ys] : fiber) {
        std::vector<Key> out = {{}};
        for (int j = 0; j <= q; ++j) {
          std::vector<Key> next;
          for (auto& k : out)
            for (Idx y : ys) {
              next.push_back(k);
              next.back().push_back(static_cast<int>(y));
            }
          out = std::move(next);
        }
        C.keys[p][q].insert(C.keys[p][q].end(), out.begin(), out.end());
      }
  }
  BiKeyFns fn;
  fn.hface = [&](int p, int, int i, const Key& k) {
    Key r;
    for (int y : k) r.push_back(static_cast<int>(Y.face(p, i, y)));
    return r;
  };
  fn.hdegen = [&](int p, int, int i, const Key& k) {
    Key r;
    for (int y : k) r.push_back(static_cast<int>(Y.degen(p, i, y)));
    return r;
  };
  fn.vface = [](int, int, int j, const Key& k) {
    Key r = k;
    r.erase(r.begin() + j);
    return r;
  };
  fn.vdegen = [](int, int, int j, const Key& k) {
    Key r = k;
    r.insert(r.begin() + j, k[j]);
    return r;
  };
  fn.name = [&](int p, int, const Key& k) {
    std::string s = "<";
    for (std::size_t j = 0; j < k.size(); ++j) s += (j ? "," : "") + Y.name(p, k[j]);
    return s + ">";
  };
  C.B = build_bisimplicial(bound, bound, C.keys, fn);
  C.tot = total(C.B, bound);
  C.total_proj = SMap::from_function(C.tot.X, f.tgt, [&](int n, Idx x) {
    return f.at(n, static_cast<Idx>(C.keys[n][0][C.tot.tuple_of(n, x)[n]][0]));
  });
  return C;
}

Cover make_cover(SSetP X, const std::vector<std::vector<std::string>>& generators) {
  if (generators.empty()) fail(ErrorKind::EmptyInput, "a cover needs at least one member");
  Cover C;
  C.X = X;
  std::vector<SSetP> parts;
  for (auto& names : generators) {
    std::set<std::pair<int, Idx>> keep;
    for (auto& nm : names) {
      bool found = false;
      for (int k = 0; k <= X->top() && !found; ++k)
        if (auto g = X->find_gen(k, nm)) keep.emplace(k, *g), found = true;
      if (!found) fail(ErrorKind::VertexNotFound, "cover member names unknown simplex " + nm);
    }
    C.parts.push_back(subcomplex(X, [&](int k, Idx g) { return keep.count({k, g}) > 0; }));
    parts.push_back(C.parts.back().X);
  }
  C.U = coproduct(parts);
  C.map.src = C.U.X;
  C.map.tgt = X;
  C.map.img.resize(C.U.X->top() + 1);
  for (int k = 0; k <= C.U.X->top(); ++k) C.map.img[k].resize(C.U.X->ngen(k));
  std::vector<std::vector<char>> hit(X->top() + 1);
  for (int k = 0; k <= X->top(); ++k) hit[k].assign(X->ngen(k), 0);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int k = 0; k <= parts[i]->top(); ++k)
      for (Idx g = 0; g < parts[i]->ngen(k); ++g) {
        Cell c = C.parts[i].incl.img[k][g];
        C.map.img[k][C.U.inj[i].img[k][g].gen] = c;
        hit[k][c.gen] = 1;
      }
  C.map.validate();
  for (int k = 0; k <= X->top(); ++k)
    for (Idx g = 0; g < X->ngen(k); ++g)
      if (!hit[k][g]) fail(ErrorKind::InvalidArgument, "cover misses " + X->gen_name(k, g));
  return C;
}

}  // namespace skan
