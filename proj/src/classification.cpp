#include "skan/classification.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace skan {

namespace {

int first_degeneracy(const Cell& c) {
  for (int i = 0; i < c.n; ++i)
    if (c.mask >> i & 1u) return i;
  return -1;
}

void certify_left(Cocycle& c) {
  c.left_fibration = check_acyclic_fibration(c.left, c.bound);
  if (!c.left_fibration.ok)
    fail(ErrorKind::CertificateMissing, "left leg is not an acyclic fibration: " + c.left_fibration.detail);
  c.left_cert = we_certify(c.left, Policy::Invariants, c.bound);
}

}  // namespace

UniversalP universal_bundle(SGroupP G, int bound) { return std::make_shared<const WBundle>(w_bundle(G, bound)); }

void Cocycle::validate() const {
  if (left.src != Y || right.src != Y || left.tgt != X || right.tgt != A)
    fail(ErrorKind::InvalidArgument, "cocycle legs do not form a span");
  left.validate();
  right.validate();
  auto rep = check_acyclic_fibration(left, bound);
  if (!rep.ok) fail(ErrorKind::CertificateMissing, "left leg is not an acyclic fibration: " + rep.detail);
  if (!left_cert.validate()) fail(ErrorKind::CertificateMissing, "left leg certificate does not re-validate");
}

Cocycle make_cocycle(SMap left, SMap right, int bound, UniversalP U) {
  Cocycle c;
  c.X = left.tgt;
  c.Y = left.src;
  c.A = right.tgt;
  c.left = std::move(left);
  c.right = std::move(right);
  c.bound = bound;
  c.U = std::move(U);
  if (c.right.src != c.Y) fail(ErrorKind::InvalidArgument, "cocycle legs have different sources");
  certify_left(c);
  return c;
}

void CocycleMorphism::validate(const Cocycle& from, const Cocycle& to) const {
  if (map.src != from.Y || map.tgt != to.Y) fail(ErrorKind::InvalidArgument, "morphism does not connect the apexes");
  if (!same_map(compose(to.left, map), from.left))
    fail(ErrorKind::CrossCheckMismatch, "morphism does not commute with the left legs");
  if (!same_map(compose(to.right, map), from.right))
    fail(ErrorKind::CrossCheckMismatch, "morphism does not commute with the right legs");
}

Extraction extr(const GBundle& b, int bound, UniversalP U) {
  if (!U) U = universal_bundle(b.action.G, bound);
  Extraction E;
  E.H = homotopy_quotient(b.action, bound);
  const HomotopyQuotient& H = E.H;
  const Wbar& W = U->W;
  SMap left = SMap::from_function(H.tot.X, b.base, [&](int n, Idx x) { return b.proj.at(n, H.p_part(n, x)); });
  SMap right = SMap::from_function(H.tot.X, W.X(), [&](int n, Idx x) { return W.index_of(n, H.wbar_key(n, x)); });
  E.c = make_cocycle(std::move(left), std::move(right), bound, U);
  return E;
}

Reconstruction rec(const Cocycle& c) {
  if (!c.U) fail(ErrorKind::InvalidArgument, "reconstruction needs a cocycle with values in Wbar G");
  Reconstruction R;
  GBundle pb = pullback_bundle(c.right, c.U->bundle, &R.F);
  if (!pb.action.free()) fail(ErrorKind::ActionNotFree, "reconstructed action is not degreewise free");
  R.bundle = GBundle{pb.action, c.X, compose(c.left, pb.proj)};
  R.bundle.validate();
  return R;
}

Extraction universal_cocycle(UniversalP U) { return extr(U->bundle, U->bundle.action.bound(), U); }

SpanComposite q(const Cocycle& c, const Extraction& univ) {
  if (c.A != univ.c.X) fail(ErrorKind::InvalidArgument, "cocycle and universal cocycle do not compose");
  SpanComposite S;
  S.F = fiber_product(c.right, univ.c.left);
  int b = std::min(c.bound, univ.c.bound);
  S.c = make_cocycle(compose(c.left, S.F.p1), compose(univ.c.right, S.F.p2), b, c.U);
  return S;
}

FreeResolution free_resolution(const GBundle& b, int bound, UniversalP U) {
  FreeResolution R;
  R.E = extr(b, bound, U);
  R.R = rec(R.E.c);
  const HomotopyQuotient& H = R.E.H;
  const WBundle& W = *R.E.c.U;
  const ProductResult& F = R.R.F;
  // ([p, (b.., e)], (b.., g)) -> p g
  R.to_P = SMap::from_function(F.X, b.action.P, [&](int n, Idx x) {
    Key w = W.WG.tuple_of(n, F.p1.at(n, x));
    return b.action.apply(n, H.p_part(n, F.p2.at(n, x)), w[n]);
  });
  R.cert = we_certify(R.to_P, Policy::Invariants, bound);
  return R;
}

CocycleRoundTrip cocycle_roundtrip(const Cocycle& c, const Extraction& univ) {
  CocycleRoundTrip T;
  T.R = rec(c);
  T.E = extr(T.R.bundle, c.bound, c.U);
  T.qc = q(c, univ);
  const ProductResult& F = T.R.F;
  const ProductResult& Q = T.qc.F;
  T.map = SMap::from_function(T.E.c.Y, T.qc.c.Y, [&](int n, Idx x) {
    Idx p = T.E.H.p_part(n, x);
    Idx z = univ.H.index_of(n, F.p1.at(n, p), T.E.H.wbar_key(n, x));
    return pair_index(Q, n, F.p2.at(n, p), z);
  });
  T.left_commutes = same_map(compose(T.qc.c.left, T.map), T.E.c.left);
  T.right_commutes = same_map(compose(T.qc.c.right, T.map), T.E.c.right);
  return T;
}

SMap find_section(const Cocycle& c, std::size_t budget) {
  const SSet& X = *c.X;
  const SSet& Y = *c.Y;
  if (!X.finite()) fail(ErrorKind::InvalidArgument, "sections are searched over finite bases");
  int top = X.top();
  Y.require(top, "find_section");
  std::vector<std::vector<Idx>> sig(top + 1);
  for (int n = 0; n <= top; ++n) sig[n].assign(X.size(n), UINT32_MAX);
  // candidates over each generator, in index order
  std::vector<std::pair<int, Idx>> gens;
  std::vector<std::vector<std::vector<Idx>>> over(top + 1);
  for (int n = 0; n <= top; ++n) {
    over[n].resize(X.ngen(n));
    for (Idx g = 0; g < X.ngen(n); ++g) gens.emplace_back(n, g);
    for (Idx y = 0; y < Y.size(n); ++y) {
      Idx x = c.left.at(n, y);
      const Cell& cx = X.cell(n, x);
      if (!cx.degenerate()) over[n][cx.gen].push_back(y);
    }
  }
  auto fill_degenerate = [&](int n) {
    for (Idx x = 0; x < X.size(n); ++x) {
      int i = first_degeneracy(X.cell(n, x));
      if (i >= 0) sig[n][x] = Y.degen(n - 1, i, sig[n - 1][X.face(n, i, x)]);
    }
  };
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t pos) {
    if (pos == gens.size()) return true;
    auto [n, g] = gens[pos];
    int prev = pos == 0 ? 0 : gens[pos - 1].first;
    for (int k = prev + 1; k <= n; ++k) fill_degenerate(k);
    Idx x = X.index(nondeg(n, g));
    for (Idx y : over[n][g]) {
      if (++nodes > budget) fail(ErrorKind::SectionNotFound, "section search exceeded its budget");
      bool ok = true;
      for (int i = 0; n > 0 && i <= n && ok; ++i) ok = Y.face(n, i, y) == sig[n - 1][X.face(n, i, x)];
      if (!ok) continue;
      sig[n][x] = y;
      if (search(pos + 1)) return true;
    }
    sig[n][x] = UINT32_MAX;
    return false;
  };
  if (!search(0)) fail(ErrorKind::SectionNotFound, "the left leg has no section");
  return SMap::from_function(c.X, c.Y, [&](int n, Idx x) { return sig[n][x]; });
}

SMap section_map(const Cocycle& c, std::size_t budget) { return compose(c.right, find_section(c, budget)); }

Strictification strictify(const GBundle& b, int bound, UniversalP U) {
  Strictification S;
  S.Pf = free_resolution(b, bound, U);
  const Cocycle& c = S.Pf.E.c;
  S.section = find_section(c);
  S.sc = make_cocycle(SMap::identity(c.X), compose(c.right, S.section), bound, c.U);
  S.Ps = rec(S.sc);
  const ProductResult& Fs = S.Ps.F;
  const ProductResult& Ff = S.Pf.R.F;
  S.to_Pf = SMap::from_function(Fs.X, Ff.X, [&](int n, Idx x) {
    return pair_index(Ff, n, Fs.p1.at(n, x), S.section.at(n, Fs.p2.at(n, x)));
  });
  S.cert = we_certify(S.to_Pf, Policy::Invariants, bound);
  return S;
}

Factorization factor_span(const SMap& left, const SMap& right, int bound) {
  if (left.src != right.src) fail(ErrorKind::InvalidArgument, "span legs have different sources");
  we_certify(left, Policy::Invariants, bound);
  Factorization R;
  SSetP Yb = left.src->top() > bound ? truncate(left.src, bound) : left.src;
  Cocycle old;
  old.X = left.tgt;
  old.Y = Yb;
  old.A = right.tgt;
  old.left = SMap::from_function(Yb, left.tgt, [&](int n, Idx y) { return left.at(n, y); });
  old.right = SMap::from_function(Yb, right.tgt, [&](int n, Idx y) { return right.at(n, y); });
  R.path = path_object(left.tgt, bound);
  // pairs (y, gamma) with gamma ending at left(y); the new leg evaluates at the start
  R.F = fiber_product(old.left, R.path.ev1);
  R.c = make_cocycle(compose(R.path.ev0, R.F.p2), compose(old.right, R.F.p1), bound);
  R.from_old.map = SMap::from_function(Yb, R.F.X, [&](int n, Idx y) {
    return pair_index(R.F, n, y, R.path.constant_paths.at(n, old.left.at(n, y)));
  });
  R.from_old.validate(old, R.c);
  R.cert = we_certify(R.from_old.map, Policy::Invariants, bound);
  return R;
}

H1Result h1(SSetP X, SGroupP G, std::size_t budget) {
  H1Result R;
  int top = std::max(X->top(), 0);
  R.W = wbar(G, top + 1);
  R.twistings = enumerate_twistings(X, G, budget);
  R.gauge_class.assign(R.twistings.size(), -1);
  for (std::size_t i = 0; i < R.twistings.size(); ++i) {
    if (R.gauge_class[i] >= 0) continue;
    int cls = static_cast<int>(R.reps.size());
    R.reps.push_back(i);
    R.gauge_class[i] = cls;
    for (std::size_t j = i + 1; j < R.twistings.size(); ++j)
      if (R.gauge_class[j] < 0 && twisting_gauge(R.twistings[i], R.twistings[j])) R.gauge_class[j] = cls;
  }
  ClassOptions opt;
  opt.budget = budget;
  R.maps = homotopy_classes(X, R.W.X(), opt);
  std::map<MapImage, int> where;
  for (std::size_t i = 0; i < R.maps.all.size(); ++i) where[image_of(R.maps.all[i])] = R.maps.class_of[i];
  R.matching.assign(R.reps.size(), -1);
  for (std::size_t i = 0; i < R.twistings.size(); ++i) {
    auto it = where.find(image_of(R.twistings[i].classifying_map(R.W)));
    if (it == where.end()) fail(ErrorKind::CrossCheckMismatch, "classifying map missing from the mapping space");
    int& m = R.matching[R.gauge_class[i]];
    if (m >= 0 && m != it->second)
      fail(ErrorKind::CrossCheckMismatch, "gauge-equivalent twistings have non-homotopic classifying maps");
    m = it->second;
  }
  std::vector<int> hit(R.maps.count, 0);
  for (int m : R.matching)
    if (hit[m]++) fail(ErrorKind::CrossCheckMismatch, "non-isomorphic bundles have homotopic classifying maps");
  if (R.reps.size() != R.maps.count)
    fail(ErrorKind::CrossCheckMismatch, std::to_string(R.reps.size()) + " bundle classes but " +
                                            std::to_string(R.maps.count) + " homotopy classes");
  R.count = R.reps.size();
  return R;
}

int h1_class(const H1Result& r, const SMap& f, const Wbar& from) {
  SMap g = SMap::from_function(f.src, r.W.X(), [&](int n, Idx x) {
    return r.W.index_of(n, from.K.tuple_of(n, f.at(n, x)));
  });
  MapImage im = image_of(g);
  for (std::size_t i = 0; i < r.maps.all.size(); ++i)
    if (image_of(r.maps.all[i]) == im) return r.maps.class_of[i];
  fail(ErrorKind::CrossCheckMismatch, "map is not in the enumerated mapping space");
}

HnResult hn_cech(const Cover& cover, SGroupP A, int n, std::size_t budget) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "degree must be at least 1");
  HnResult R;
  int d = std::max(cover.X->top(), 0);
  R.C = cech_nerve(cover.map, d + 1);
  R.target = wbar_iter_group(A, n, d + 2);
  ClassOptions opt;
  opt.budget = budget;
  opt.source_dim = d + 1;
  std::optional<LinearTarget> lin;
  std::size_t order = A->at(0).order();
  int p = 2;
  while (order > 1 && order % p) ++p;
  try {
    lin = linear_target(*R.target, p);
    opt.linear = &*lin;
  } catch (const Error&) {
    // not elementary abelian: plain enumeration
  }
  R.classes = homotopy_classes(R.C.tot.X, R.target->set, opt);
  R.count = R.classes.count;
  return R;
}

SSetP nerve_complex(const Cover& cover, int bound) {
  std::size_t m = cover.parts.size();
  if (m > 20) fail(ErrorKind::CombinatorialBlowup, "too many cover members for the nerve");
  std::vector<std::set<std::pair<int, Idx>>> member(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SMap& inc = cover.parts[i].incl;
    for (int k = 0; k < static_cast<int>(inc.img.size()); ++k)
      for (const Cell& c : inc.img[k]) member[i].emplace(c.k, c.gen);
  }
  auto name = [](const std::vector<int>& s) {
    std::string r;
    for (int i : s) r += "U" + std::to_string(i);
    return r;
  };
  auto pt = point();
  std::vector<RawSimplex> raw;
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    std::vector<int> S;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1ul) S.push_back(static_cast<int>(i));
    SubResult inter = subcomplex(cover.X, [&](int k, Idx g) {
      for (int i : S)
        if (!member[i].count({k, g})) return false;
      return true;
    });
    if (inter.X->size(0) == 0) continue;
    try {
      we_certify(SMap::constant(inter.X, pt, 0), Policy::Invariants, bound);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CertificateNotFound) throw;
      fail(ErrorKind::IntersectionNotContractible, "intersection " + name(S) + " is not contractible");
    }
    RawSimplex r;
    r.name = name(S);
    r.dim = static_cast<int>(S.size()) - 1;
    for (std::size_t j = 0; r.dim > 0 && j < S.size(); ++j) {
      std::vector<int> f = S;
      f.erase(f.begin() + j);
      r.faces.push_back(name(f));
    }
    raw.push_back(std::move(r));
  }
  return normalize(raw);
}

}  // namespace skan
