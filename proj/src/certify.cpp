#include <algorithm>
#include <map>

#include "skan/invariants.hpp"

namespace skan {

const char* level_name(CertLevel l) {
  switch (l) {
    case CertLevel::Iso: return "ISO";
    case CertLevel::Retract: return "RETRACT";
    case CertLevel::Invariants: return "INVARIANTS";
  }
  return "?";
}

Cylinder cylinder(SSetP X) {
  Cylinder C;
  auto I = simplex(1);
  C.P = product(I, X);
  auto end = [&](Idx j) {
    return SMap::from_function(X, C.P.X, [&, j](int k, Idx g) { return pair_index(C.P, k, I->point_at(k, j), g); });
  };
  C.end0 = end(0);
  C.end1 = end(1);
  return C;
}

namespace {

bool is_identity(const SMap& f) {
  if (f.src != f.tgt) return false;
  for (std::size_t k = 0; k < f.img.size(); ++k)
    for (Idx g = 0; g < f.img[k].size(); ++g)
      if (!(f.img[k][g] == nondeg(static_cast<int>(k), g))) return false;
  return true;
}

int usable_bound(const SMap& f, int bound) {
  int b = bound;
  if (!f.src->finite()) b = std::min(b, f.src->limit() - 1);
  if (!f.tgt->finite()) b = std::min(b, f.tgt->limit() - 1);
  return b;
}

// Components of the source matched to components of the target through f.
std::optional<std::string> pi0_mismatch(const SMap& f, std::vector<std::pair<Idx, Idx>>& reps) {
  auto ls = pi0_labels(*f.src), lt = pi0_labels(*f.tgt);
  int ns = ls.empty() ? 0 : *std::max_element(ls.begin(), ls.end()) + 1;
  int nt = lt.empty() ? 0 : *std::max_element(lt.begin(), lt.end()) + 1;
  if (ns != nt) return "pi0 sizes differ: " + std::to_string(ns) + " vs " + std::to_string(nt);
  std::vector<int> img(ns, -1);
  std::vector<char> hit(nt, 0);
  for (Idx v = 0; v < ls.size(); ++v) {
    if (img[ls[v]] >= 0) continue;
    Idx w = f.at(0, v);
    img[ls[v]] = lt[w];
    if (hit[lt[w]]) return "two components map to the component of " + f.tgt->name(0, w);
    hit[lt[w]] = 1;
    reps.emplace_back(v, w);
  }
  return std::nullopt;
}


// Dense mod-p row reduction; returns the rank and leaves `rows` reduced.
int reduce_rows(std::vector<std::vector<int>>& rows, int p) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    long long iv = 1, b = rows[rank][c], e = p - 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) iv = iv * b % p;
    for (auto& v : rows[rank]) v = static_cast<int>(v * iv % p);
    for (std::size_t o = 0; o < rows.size(); ++o)
      if (o != static_cast<std::size_t>(rank) && rows[o][c]) {
        long long m = rows[o][c];
        for (std::size_t j = c; j < cols; ++j) rows[o][j] = static_cast<int>(((rows[o][j] - m * rows[rank][j]) % p + p) % p);
      }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

// Boundary of generator g of level n as a dense mod-p vector.
std::vector<int> boundary(const SSet& X, int n, Idx g, int p) {
  std::vector<int> v(X.ngen(n - 1), 0);
  for (int i = 0; i <= n; ++i) {
    const Cell& c = X.gen_face(n, g, i);
    if (!c.degenerate()) v[c.gen] = (v[c.gen] + (i % 2 ? p - 1 : 1)) % p;
  }
  return v;
}

// Cycles of level n, as a basis of the kernel of the boundary.
std::vector<std::vector<int>> cycles(const SSet& X, int n, int p) {
  std::size_t m = X.ngen(n);
  if (n == 0) {
    std::vector<std::vector<int>> z(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) z[i][i] = 1;
    return z;
  }
  std::size_t r = X.ngen(n - 1);
  // rows of [d^T | I]; rows whose boundary part vanishes span the kernel
  std::vector<std::vector<int>> rows;
  for (Idx g = 0; g < m; ++g) {
    auto b = boundary(X, n, g, p);
    b.resize(r + m, 0);
    b[r + g] = 1;
    rows.push_back(std::move(b));
  }
  reduce_rows(rows, p);
  std::vector<std::vector<int>> z;
  for (auto& row : rows)
    if (std::all_of(row.begin(), row.begin() + r, [](int v) { return v == 0; }))
      z.emplace_back(row.begin() + r, row.end());
  return z;
}

std::vector<std::vector<int>> boundaries(const SSet& X, int n, int p) {
  std::vector<std::vector<int>> b;
  for (Idx g = 0; g < X.ngen(n + 1); ++g) b.push_back(boundary(X, n + 1, g, p));
  return b;
}

constexpr std::size_t kDenseCap = 400;

// Whether f induces isomorphisms on mod-p homology through degree `bound`.
// Empty when the chain groups are too large for the dense check.
std::optional<std::string> induced_mismatch(const SMap& f, int bound, int p, bool& skipped) {
  const SSet& S = *f.src;
  const SSet& T = *f.tgt;
  for (int n = 0; n <= bound; ++n) {
    if (S.ngen(n) + S.ngen(n + 1) > kDenseCap || T.ngen(n) + T.ngen(n + 1) > kDenseCap) {
      skipped = true;
      return std::nullopt;
    }
    auto zs = cycles(S, n, p), zt = cycles(T, n, p);
    auto bs = boundaries(S, n, p), bt = boundaries(T, n, p);
    int rbs = reduce_rows(bs, p), rbt = reduce_rows(bt, p);
    int hs = static_cast<int>(zs.size()) - rbs, ht = static_cast<int>(zt.size()) - rbt;
    std::vector<std::vector<int>> img = bt;
    for (auto& z : zs) {
      std::vector<int> v(T.ngen(n), 0);
      for (Idx g = 0; g < z.size(); ++g) {
        if (!z[g]) continue;
        const Cell& c = f.img[n][g];
        if (!c.degenerate()) v[c.gen] = (v[c.gen] + z[g]) % p;
      }
      img.push_back(std::move(v));
    }
    int rk = img.empty() || img[0].empty() ? 0 : reduce_rows(img, p) - rbt;
    if (hs != ht || rk != hs)
      return "induced map on H" + std::to_string(n) + " mod " + std::to_string(p) + " has rank " +
             std::to_string(rk) + " between dimensions " + std::to_string(hs) + " and " + std::to_string(ht);
  }
  return std::nullopt;
}

}  // namespace

bool WeCert::validate() const {
  switch (level) {
    case CertLevel::Iso:
      return inverse && same_map(compose(*inverse, map), SMap::identity(map.src)) &&
             same_map(compose(map, *inverse), SMap::identity(map.tgt));
    case CertLevel::Retract: {
      if (!retraction || !homotopy || !cylinder) return false;
      if (!same_map(compose(*retraction, map), SMap::identity(map.src))) return false;
      homotopy->validate();
      auto I = simplex(1);
      auto end = [&](Idx j) {
        return SMap::from_function(map.tgt, cylinder->X, [&, j](int k, Idx g) {
          return pair_index(*cylinder, k, I->point_at(k, j), g);
        });
      };
      return same_map(compose(*homotopy, end(0)), SMap::identity(map.tgt)) &&
             same_map(compose(*homotopy, end(1)), compose(map, *retraction));
    }
    case CertLevel::Invariants: {
      std::vector<std::pair<Idx, Idx>> reps;
      if (pi0_mismatch(map, reps)) return false;
      bool skipped = false;
      for (int p : {2, 3, 32003})
        if (induced_mismatch(map, bound, p, skipped)) return false;
      return homology(*map.src, bound) == src_homology && homology(*map.tgt, bound) == tgt_homology &&
             src_homology == tgt_homology && src_pi1_ab == tgt_pi1_ab;
    }
  }
  return false;
}

WeCert retract_cert(const SMap& f, const SMap& r, const SMap& H, const ProductResult& cyl) {
  WeCert c;
  c.level = CertLevel::Retract;
  c.map = f;
  c.retraction = r;
  c.homotopy = H;
  c.cylinder = cyl;
  if (!c.validate()) fail(ErrorKind::CertificateNotFound, "retraction data does not verify");
  c.summary = "RETRACT: retraction and homotopy verified";
  return c;
}

namespace {

std::optional<WeCert> search_retract(const SMap& f) {
  const SSet& S = *f.src;
  const SSet& T = *f.tgt;
  if (!S.finite() || !T.finite()) return std::nullopt;
  // r must send f(x) to x whenever f(x) is a generator
  std::vector<std::vector<Idx>> req(T.top() + 1);
  for (int k = 0; k <= T.top(); ++k) req[k].assign(T.ngen(k), UINT32_MAX);
  for (int k = 0; k <= S.top(); ++k)
    for (Idx g = 0; g < S.ngen(k); ++g) {
      const Cell& c = f.img[k][g];
      if (c.degenerate()) continue;
      if (req[k][c.gen] != UINT32_MAX && req[k][c.gen] != g) return std::nullopt;
      req[k][c.gen] = g;
    }
  HomOptions o;
  o.budget = 20000;
  o.allow = [&](int k, Idx g, Idx y) { return req[k][g] == UINT32_MAX || req[k][g] == y; };
  std::vector<MapImage> rs;
  try {
    rs = hom_raw(T, S, o);
  } catch (const Error&) {
    return std::nullopt;
  }
  Cylinder C = cylinder(f.tgt);
  for (auto& rm : rs) {
    SMap r = map_from_image(f.tgt, f.src, rm);
    if (!same_map(compose(r, f), SMap::identity(f.src))) continue;
    SMap fr = compose(f, r);
    std::vector<std::vector<Idx>> want(C.P.X->top() + 1);
    for (int k = 0; k <= C.P.X->top(); ++k) want[k].assign(C.P.X->ngen(k), UINT32_MAX);
    for (int k = 0; k <= T.top(); ++k)
      for (Idx g = 0; g < T.ngen(k); ++g) {
        want[k][C.end0.img[k][g].gen] = g;
        want[k][C.end1.img[k][g].gen] = T.index(fr.img[k][g]);
      }
    HomOptions h;
    h.stop_at_first = true;
    h.allow = [&](int k, Idx g, Idx y) { return want[k][g] == UINT32_MAX || want[k][g] == y; };
    std::vector<MapImage> hs;
    try {
      hs = hom_raw(*C.P.X, T, h);
    } catch (const Error&) {
      continue;
    }
    if (hs.empty()) continue;
    return retract_cert(f, r, map_from_image(C.P.X, f.tgt, hs[0]), C.P);
  }
  return std::nullopt;
}

}  // namespace

WeCert we_certify(const SMap& f, Policy policy, int bound) {
  f.validate();
  WeCert c;
  c.map = f;
  if (is_identity(f) || is_iso(f)) {
    if (auto inv = inverse(f)) {
      c.level = CertLevel::Iso;
      c.inverse = *inv;
      c.summary = "ISO: inverse verified";
      if (c.validate()) return c;
    }
  }
  if (policy == Policy::RequireIso) fail(ErrorKind::CertificateNotFound, "map is not an isomorphism");
  if (policy == Policy::TryRetract) {
    if (auto r = search_retract(f)) return *r;
    fail(ErrorKind::CertificateNotFound, "no retraction with homotopy found");
  }
  c.level = CertLevel::Invariants;
  c.bound = usable_bound(f, bound);
  std::vector<std::pair<Idx, Idx>> reps;
  if (auto bad = pi0_mismatch(f, reps)) fail(ErrorKind::CertificateNotFound, *bad);
  bool hasPi1 = c.bound >= 1 && f.src->limit() >= 2 && f.tgt->limit() >= 2;
  if (hasPi1)
    for (auto [v, w] : reps) {
      FPGroup a = pi1(*f.src, v), b = pi1(*f.tgt, w);
      AbelianGroup aa = a.abelianization(), ab = b.abelianization();
      if (!(aa == ab))
        fail(ErrorKind::CertificateNotFound, "pi1 abelianizations differ at " + f.src->name(0, v) + ": " +
                                                 aa.str() + " vs " + ab.str());
      try {
        std::size_t oa = a.order(20000), ob = b.order(20000);
        if (oa != ob)
          fail(ErrorKind::CertificateNotFound, "pi1 orders differ at " + f.src->name(0, v) + ": " +
                                                   std::to_string(oa) + " vs " + std::to_string(ob));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
      }
      c.src_pi1_ab.push_back(aa);
      c.tgt_pi1_ab.push_back(ab);
    }
  c.src_homology = homology(*f.src, c.bound);
  c.tgt_homology = homology(*f.tgt, c.bound);
  if (c.src_homology != c.tgt_homology)
    fail(ErrorKind::CertificateNotFound, "homology differs: " + profile_str(c.src_homology) + " vs " +
                                             profile_str(c.tgt_homology));
  bool skipped = false;
  for (int p : {2, 3, 32003})
    if (auto bad = induced_mismatch(f, c.bound, p, skipped)) fail(ErrorKind::CertificateNotFound, *bad);
  c.summary = "INVARIANTS: pi0 bijective (" + std::to_string(reps.size()) + " components), " +
              (hasPi1 ? "pi1 abelianizations agree, " : "") + "homology " + profile_str(c.src_homology) +
              " through degree " + std::to_string(c.bound) +
              (skipped ? ", induced maps unchecked (chains too large)" : ", induced maps iso mod 2, 3, 32003");
  return c;
}

}  // namespace skan
