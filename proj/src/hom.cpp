#include <algorithm>
#include <sstream>

#include "skan/core.hpp"

namespace skan {
namespace {

struct Flat {
  std::vector<int> dim;
  std::vector<Idx> gen;
  std::vector<std::vector<Idx>> id;  // id[k][g]
  explicit Flat(const SSet& K) {
    id.resize(K.top() + 1);
    for (int k = 0; k <= K.top(); ++k)
      for (Idx g = 0; g < K.ngen(k); ++g) {
        id[k].push_back(static_cast<Idx>(dim.size()));
        dim.push_back(k);
        gen.push_back(g);
      }
  }
};

Idx eval_cell(const SSet& X, const Flat& F, const MapImage& m, const Cell& c) {
  Idx base = m[F.id[c.k][c.gen]];
  if (!c.degenerate()) return base;
  return X.act(c.surjection(), c.k, base);
}

}  // namespace

std::vector<MapImage> hom_raw(const SSet& K, const SSet& X, const HomOptions& opt) {
  std::vector<MapImage> out;
  if (K.empty()) {
    out.emplace_back();
    return out;
  }
  X.require(K.top(), "hom_set");
  Flat F(K);
  std::size_t total = F.dim.size();
  std::vector<std::vector<std::vector<Idx>>> byD0(K.top() + 1);
  for (int k = 1; k <= K.top(); ++k) {
    byD0[k].resize(X.size(k - 1));
    for (Idx y = 0; y < X.size(k); ++y) byD0[k][X.face(k, 0, y)].push_back(y);
  }
  std::vector<Idx> verts(X.size(0));
  for (Idx v = 0; v < verts.size(); ++v) verts[v] = v;
  MapImage m(total);
  std::vector<Idx> faceImg;
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == total) {
      out.push_back(m);
      if (out.size() > opt.budget)
        fail(ErrorKind::CombinatorialBlowup,
             "more than " + std::to_string(opt.budget) + " maps in hom_set");
      return opt.stop_at_first;
    }
    int k = F.dim[pos];
    Idx g = F.gen[pos];
    std::vector<Idx> want;
    if (k > 0)
      for (int i = 0; i <= k; ++i) want.push_back(eval_cell(X, F, m, K.gen_face(k, g, i)));
    const std::vector<Idx>& cand = k == 0 ? verts : byD0[k][want[0]];
    for (Idx y : cand) {
      bool ok = true;
      for (int i = 1; i <= k && ok; ++i) ok = X.face(k, i, y) == want[i];
      if (!ok) continue;
      if (opt.allow && !opt.allow(k, g, y)) continue;
      m[pos] = y;
      if (rec(pos + 1)) return true;
    }
    return false;
  };
  rec(0);
  return out;
}

SMap map_from_image(SSetP K, SSetP X, const MapImage& m) {
  SMap f;
  f.src = K;
  f.tgt = X;
  f.img.resize(K->top() + 1);
  std::size_t p = 0;
  for (int k = 0; k <= K->top(); ++k)
    for (Idx g = 0; g < K->ngen(k); ++g) f.img[k].push_back(X->cell(k, m[p++]));
  return f;
}

MapImage image_of(const SMap& f) {
  MapImage m;
  for (std::size_t k = 0; k < f.img.size(); ++k)
    for (auto& c : f.img[k]) m.push_back(f.tgt->index(c));
  return m;
}

std::vector<SMap> hom_set(SSetP K, SSetP X, const HomOptions& opt) {
  std::vector<SMap> out;
  for (auto& m : hom_raw(*K, *X, opt)) out.push_back(map_from_image(K, X, m));
  return out;
}

namespace {

MapImage precompose(const SSet& X, const SMap& d, const Flat& Fsrc, const Flat& Fd,
                    const MapImage& phi) {
  // phi : d.tgt -> X ; result : d.src -> X
  MapImage r(Fd.dim.size());
  for (std::size_t p = 0; p < r.size(); ++p) r[p] = eval_cell(X, Fsrc, phi, d.img[Fd.dim[p]][Fd.gen[p]]);
  return r;
}

std::string image_name(const SSet& X, const Flat& F, const MapImage& m) {
  std::string s = "[";
  for (std::size_t p = 0; p < m.size(); ++p) s += (p ? ";" : "") + X.name(F.dim[p], m[p]);
  return s + "]";
}

}  // namespace

HomComplex hom_complex(const CosimplicialFamily& A, SSetP X, int bound) {
  HomComplex H;
  H.X = X;
  H.elems.resize(bound + 1);
  std::vector<std::map<Key, Idx>> lookup(bound + 1);
  std::vector<std::vector<Key>> keys(bound + 1);
  for (int q = 0; q <= bound; ++q) {
    H.elems[q] = hom_raw(*A.obj[q], *X);
    for (Idx e = 0; e < H.elems[q].size(); ++e) {
      Key k(H.elems[q][e].begin(), H.elems[q][e].end());
      lookup[q][k] = e;
      keys[q].push_back(std::move(k));
    }
  }
  std::map<std::pair<int, int>, SMap> cof, cod;
  auto getCof = [&](int q, int i) -> const SMap& {
    auto it = cof.find({q, i});
    if (it == cof.end()) it = cof.emplace(std::make_pair(q, i), A.coface(q, i)).first;
    return it->second;
  };
  auto getCod = [&](int q, int i) -> const SMap& {
    auto it = cod.find({q, i});
    if (it == cod.end()) it = cod.emplace(std::make_pair(q, i), A.codegen(q, i)).first;
    return it->second;
  };
  std::vector<Flat> flats;
  for (int q = 0; q <= bound; ++q) flats.emplace_back(*A.obj[q]);
  auto conv = [](const Key& k) { return MapImage(k.begin(), k.end()); };
  auto back = [](const MapImage& m) { return Key(m.begin(), m.end()); };
  LevelData d = build_levels(
      bound, keys,
      [&](int q, int i, const Key& k) {
        return back(precompose(*X, getCof(q, i), flats[q], flats[q - 1], conv(k)));
      },
      [&](int q, int i, const Key& k) {
        return back(precompose(*X, getCod(q, i), flats[q], flats[q + 1], conv(k)));
      },
      [&](int q, const Key& k) { return image_name(*X, flats[q], conv(k)); });
  H.built = normalize_levels(d, false);
  return H;
}

namespace {

struct FunctionComplexData {
  std::vector<SSetP> simp;
  std::vector<ProductResult> prods;
  HomComplex H;
};

FunctionComplexData function_complex_data(SSetP K, SSetP X, int bound) {
  FunctionComplexData F;
  for (int q = 0; q <= bound + 1; ++q) F.simp.push_back(simplex(q));
  for (int q = 0; q <= bound; ++q) F.prods.push_back(product(F.simp[q], K));
  CosimplicialFamily A;
  for (int q = 0; q <= bound; ++q) A.obj.push_back(F.prods[q].X);
  SMap idK = SMap::identity(K);
  A.coface = [&](int q, int i) {
    return product_map(F.prods[q - 1], F.prods[q], simplex_map(F.simp[q - 1], F.simp[q], face_map(q, i)), idK);
  };
  A.codegen = [&](int q, int i) {
    return product_map(F.prods[q + 1], F.prods[q], simplex_map(F.simp[q + 1], F.simp[q], degen_map(q, i)), idK);
  };
  F.H = hom_complex(A, X, bound);
  return F;
}

}  // namespace

SSetP function_complex(SSetP K, SSetP X, int bound) {
  SSetP Y = function_complex_data(K, X, bound).H.built.X;
  return Y;
}

PathObject path_object(SSetP X, int bound) {
  auto I = simplex(1);
  FunctionComplexData F = function_complex_data(I, X, bound);
  const Built& B = F.H.built;
  PathObject P;
  P.XI = B.X;
  std::vector<std::vector<Idx>> elemOf(bound + 1);
  for (int q = 0; q <= bound; ++q) {
    elemOf[q].resize(B.X->size(q));
    for (Idx e = 0; e < B.to[q].size(); ++e) elemOf[q][B.to[q][e]] = e;
  }
  auto ev = [&](int j) {
    return SMap::from_function(P.XI, X, [&, j](int q, Idx xi) {
      const MapImage& phi = F.H.elems[q][elemOf[q][xi]];
      Idx top = static_cast<Idx>(F.simp[q]->ngen(q) - 1);
      Idx pj = F.simp[1]->point_at(q, static_cast<Idx>(j));
      Idx s = pair_index(F.prods[q], q, top, pj);
      Flat Fl(*F.prods[q].X);
      return eval_cell(*X, Fl, phi, F.prods[q].X->cell(q, s));
    });
  };
  P.ev0 = ev(0);
  P.ev1 = ev(1);
  std::vector<std::map<Key, Idx>> lookup(bound + 1);
  for (int q = 0; q <= bound; ++q)
    for (Idx e = 0; e < F.H.elems[q].size(); ++e)
      lookup[q][Key(F.H.elems[q][e].begin(), F.H.elems[q][e].end())] = e;
  SSetP Xb = X->top() > bound ? truncate(X, bound) : X;
  P.constant_paths = SMap::from_function(Xb, P.XI, [&](int q, Idx x) {
    const ProductResult& pr = F.prods[q];
    Flat Fl(*pr.X);
    Key k(Fl.dim.size());
    for (std::size_t p = 0; p < k.size(); ++p) {
      int kd = Fl.dim[p];
      Idx a = pr.pairs[kd][Fl.gen[p]].first;
      Mono seq;
      for (int j = 0; j <= kd; ++j) seq.push_back(std::stoi(F.simp[q]->gen_name(0, F.simp[q]->vertex(kd, a, j))));
      k[p] = static_cast<int>(X->act(seq, q, X->index(Xb->cell(q, x))));
    }
    return B.to[q][lookup[q].at(k)];
  });
  return P;
}

namespace {

struct SdData {
  std::vector<std::uint32_t> subsets;  // poset element -> vertex set
  SSetP nerve;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[k][g]
};

SdData sd_data(int q) {
  SdData D;
  for (std::uint32_t S = 1; S < (1u << (q + 1)); ++S) D.subsets.push_back(S);
  Poset P;
  for (auto S : D.subsets) {
    std::string l = "{";
    for (int j = 0; j <= q; ++j)
      if (S >> j & 1u) l += std::to_string(j);
    P.labels.push_back(l + "}");
  }
  P.leq = [&D](int a, int b) { return (D.subsets[a] & ~D.subsets[b]) == 0; };
  D.nerve = poset_nerve(P);
  std::map<std::string, int> lab;
  for (int a = 0; a < static_cast<int>(P.labels.size()); ++a) lab[P.labels[a]] = a;
  D.chains.resize(D.nerve->top() + 1);
  for (int k = 0; k <= D.nerve->top(); ++k)
    for (Idx g = 0; g < D.nerve->ngen(k); ++g) {
      std::vector<int> c;
      std::stringstream ss(D.nerve->gen_name(k, g));
      std::string part;
      while (std::getline(ss, part, '<')) c.push_back(lab.at(part));
      D.chains[k].push_back(c);
    }
  return D;
}

// element of the poset for a vertex set
int subset_elem(std::uint32_t S) { return static_cast<int>(S) - 1; }

SMap sd_map(const SdData& A, const SdData& B, const Mono& theta) {
  SMap m;
  m.src = A.nerve;
  m.tgt = B.nerve;
  m.img.resize(A.nerve->top() + 1);
  for (int k = 0; k <= A.nerve->top(); ++k)
    for (Idx g = 0; g < A.nerve->ngen(k); ++g) {
      std::vector<int> chain;
      for (int e : A.chains[k][g]) {
        std::uint32_t S = A.subsets[e], T = 0;
        for (int j = 0; j < 32; ++j)
          if (S >> j & 1u) T |= 1u << theta[j];
        chain.push_back(subset_elem(T));
      }
      m.img[k].push_back(chain_cell(*B.nerve, chain));
    }
  m.validate();
  return m;
}

}  // namespace

SSetP subdivision(int q) { return sd_data(q).nerve; }

ExResult ex(SSetP X, int iterations, int bound) {
  ExResult R;
  R.X = X;
  R.unit = SMap::identity(X);
  if (iterations <= 0) return R;
  std::vector<SdData> sd;
  for (int q = 0; q <= bound + 1; ++q) sd.push_back(sd_data(q));
  for (int it = 0; it < iterations; ++it) {
    SSetP Y = R.X;
    CosimplicialFamily A;
    for (int q = 0; q <= bound; ++q) A.obj.push_back(sd[q].nerve);
    A.coface = [&](int q, int i) { return sd_map(sd[q - 1], sd[q], face_map(q, i)); };
    A.codegen = [&](int q, int i) { return sd_map(sd[q + 1], sd[q], degen_map(q, i)); };
    HomComplex H = hom_complex(A, Y, bound);
    std::vector<std::map<Key, Idx>> lookup(bound + 1);
    for (int q = 0; q <= bound; ++q)
      for (Idx e = 0; e < H.elems[q].size(); ++e)
        lookup[q][Key(H.elems[q][e].begin(), H.elems[q][e].end())] = e;
    SSetP E = H.built.X;
    SMap unit = SMap::from_function(Y, E, [&](int q, Idx y) {
      Flat Fl(*sd[q].nerve);
      Key k(Fl.dim.size());
      for (std::size_t p = 0; p < k.size(); ++p) {
        Mono seq;
        for (int e : sd[q].chains[Fl.dim[p]][Fl.gen[p]]) seq.push_back(31 - std::countl_zero(sd[q].subsets[e]));
        k[p] = static_cast<int>(Y->act(seq, q, y));
      }
      return H.built.to[q][lookup[q].at(k)];
    });
    R.unit = compose(unit, R.unit);
    R.X = E;
  }
  return R;
}

SSetP coskeleton(SSetP X, int n, int bound) {
  std::vector<SSetP> full, sk;
  for (int q = 0; q <= bound + 1; ++q) {
    full.push_back(simplex(q));
    sk.push_back(skeleton(full[q], n));
  }
  auto restrict = [&](int a, int b, const Mono& theta) {
    SMap big = simplex_map(full[a], full[b], theta);
    SMap m;
    m.src = sk[a];
    m.tgt = sk[b];
    m.img.resize(sk[a]->top() + 1);
    for (int k = 0; k <= sk[a]->top(); ++k)
      for (Idx g = 0; g < sk[a]->ngen(k); ++g) {
        Idx gf = *full[a]->find_gen(k, sk[a]->gen_name(k, g));
        Cell c = big.img[k][gf];
        c.gen = *sk[b]->find_gen(c.k, full[b]->gen_name(c.k, c.gen));
        m.img[k].push_back(c);
      }
    return m;
  };
  CosimplicialFamily A;
  for (int q = 0; q <= bound; ++q) A.obj.push_back(sk[q]);
  A.coface = [&](int q, int i) { return restrict(q - 1, q, face_map(q, i)); };
  A.codegen = [&](int q, int i) { return restrict(q + 1, q, degen_map(q, i)); };
  auto Y = std::const_pointer_cast<SSet>(hom_complex(A, X, bound).built.X);
  Y->coskeletal_above = n;
  return Y;
}

std::optional<SMap> find_iso(SSetP X, SSetP Y) {
  if (X->finite() != Y->finite() || X->top() != Y->top() || X->limit() != Y->limit()) return std::nullopt;
  for (int k = 0; k <= X->top(); ++k)
    if (X->ngen(k) != Y->ngen(k)) return std::nullopt;
  Flat F(*X);
  std::vector<std::vector<Idx>> img(X->top() + 1);
  std::vector<std::vector<char>> used(X->top() + 1);
  for (int k = 0; k <= X->top(); ++k) {
    img[k].assign(X->ngen(k), UINT32_MAX);
    used[k].assign(Y->ngen(k), 0);
  }
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == F.dim.size()) return true;
    int k = F.dim[pos];
    Idx g = F.gen[pos];
    for (Idx y = 0; y < Y->ngen(k); ++y) {
      if (used[k][y]) continue;
      bool ok = true;
      for (int i = 0; i <= k && k > 0 && ok; ++i) {
        Cell c = X->gen_face(k, g, i);
        c.gen = img[c.k][c.gen];
        ok = c == Y->gen_face(k, y, i);
      }
      if (!ok) continue;
      used[k][y] = 1;
      img[k][g] = y;
      if (rec(pos + 1)) return true;
      used[k][y] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  SMap m;
  m.src = X;
  m.tgt = Y;
  m.img.resize(X->top() + 1);
  for (int k = 0; k <= X->top(); ++k)
    for (Idx g = 0; g < X->ngen(k); ++g) m.img[k].push_back(nondeg(k, img[k][g]));
  m.validate();
  return m;
}

}  // namespace skan
