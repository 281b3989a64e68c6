#include <algorithm>
#include <map>

#include "skan/invariants.hpp"

namespace skan {

Idx LinearTarget::element(int n, const std::vector<int>& c) const {
  std::size_t code = 0, w = 1;
  for (int x : c) {
    code += static_cast<std::size_t>(((x % p) + p) % p) * w;
    w *= static_cast<std::size_t>(p);
  }
  return from_code[n][code];
}

LinearTarget make_linear_target(const SSet& A, int N, int p,
                                const std::function<Idx(int, Idx, Idx)>& add,
                                const std::function<Idx(int)>& zero) {
  LinearTarget L;
  L.p = p;
  for (int n = 0; n <= N; ++n) {
    std::size_t size = A.size(n);
    std::vector<std::vector<int>> coord(size);
    std::vector<char> in(size, 0);
    std::vector<Idx> span{zero(n)};
    in[zero(n)] = 1;
    std::vector<Idx> basis;
    for (Idx x = 0; x < size && span.size() < size; ++x) {
      if (in[x]) continue;
      // multiples of x
      std::vector<Idx> mult{zero(n), x};
      for (int c = 2; c <= p; ++c) mult.push_back(add(n, mult.back(), x));
      if (mult[p] != zero(n))
        fail(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " is not elementary abelian");
      std::vector<Idx> next;
      for (int c = 0; c < p; ++c)
        for (Idx s : span) {
          Idx y = add(n, s, mult[c]);
          if (c > 0 && in[y]) fail(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " has wrong exponent");
          if (c > 0) {
            in[y] = 1;
            coord[y] = coord[s];
            coord[y].push_back(c);
          }
          next.push_back(y);
        }
      for (Idx s : span) coord[s].push_back(0);
      span = std::move(next);
      basis.push_back(x);
    }
    int d = static_cast<int>(basis.size());
    std::size_t expect = 1;
    for (int j = 0; j < d; ++j) expect *= static_cast<std::size_t>(p);
    if (expect != size) fail(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " is not a vector space");
    for (auto& c : coord) c.resize(d, 0);
    std::vector<Idx> from(size);
    for (Idx x = 0; x < size; ++x) {
      std::size_t code = 0, w = 1;
      for (int j = 0; j < d; ++j) {
        code += static_cast<std::size_t>(coord[x][j]) * w;
        w *= static_cast<std::size_t>(p);
      }
      from[code] = x;
    }
    L.dim.push_back(d);
    L.basis.push_back(basis);
    L.coord.push_back(std::move(coord));
    L.from_code.push_back(std::move(from));
  }
  return L;
}

namespace {

using SparseRow = std::vector<std::pair<int, int>>;  // (column, value), sorted by column

int inv_mod(int a, int p) {
  int r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

SparseRow axpy(const SparseRow& a, int s, const SparseRow& b, int p) {
  // a + s*b
  SparseRow out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) {
      int v = (s * b[j].second) % p;
      if (v) out.push_back({b[j].first, v});
      ++j;
    } else {
      int v = (a[i].second + s * b[j].second) % p;
      if (v) out.push_back({a[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

/// Row echelon form over F_p built incrementally.
struct Echelon {
  int p;
  std::map<int, SparseRow> piv;  // leading column -> row with leading 1
  bool add(SparseRow r) {
    while (!r.empty()) {
      auto it = piv.find(r[0].first);
      if (it == piv.end()) {
        int iv = inv_mod(r[0].second, p);
        for (auto& e : r) e.second = e.second * iv % p;
        piv.emplace(r[0].first, std::move(r));
        return true;
      }
      r = axpy(r, p - r[0].second, it->second, p);
    }
    return false;
  }
};

// Linear operator of A between levels, as columns of coordinates.
struct OpCache {
  const SSet& A;
  const LinearTarget& L;
  std::map<std::tuple<int, int, std::uint32_t>, std::vector<std::vector<int>>> cache;
  // theta given by a Mono from level `from`
  const std::vector<std::vector<int>>& op(const Mono& theta, int from) {
    std::uint32_t key = 0;
    for (int x : theta) key = key * 33u + static_cast<std::uint32_t>(x + 1);
    auto k = std::make_tuple(from, static_cast<int>(theta.size()), key);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> cols;
    int to = static_cast<int>(theta.size()) - 1;
    for (int j = 0; j < L.dim[from]; ++j) cols.push_back(L.coord[to][A.act(theta, from, L.basis[from][j])]);
    return cache.emplace(k, std::move(cols)).first->second;
  }
};

// Equations saying that an assignment of coordinates to the generators of K
// is a simplicial map. start[k][g] is the first column of generator g, or -1
// when its image is fixed to zero.
std::vector<SparseRow> map_equations(const SSet& K, const SSet& A, const LinearTarget& L,
                                     const std::vector<std::vector<int>>& start) {
  OpCache ops{A, L, {}};
  int p = L.p;
  std::vector<SparseRow> rows;
  for (int k = 1; k <= K.top(); ++k)
    for (Idx g = 0; g < K.ngen(k); ++g)
      for (int i = 0; i <= k; ++i) {
        const Cell& c = K.gen_face(k, g, i);
        const auto& D = ops.op(face_map(k, i), k);
        const auto& S = ops.op(c.surjection(), c.k);
        for (int r = 0; r < L.dim[k - 1]; ++r) {
          std::map<int, int> acc;
          if (start[k][g] >= 0)
            for (int j = 0; j < L.dim[k]; ++j)
              if (D[j][r]) acc[start[k][g] + j] += D[j][r];
          if (start[c.k][c.gen] >= 0)
            for (int j = 0; j < L.dim[c.k]; ++j)
              if (S[j][r]) acc[start[c.k][c.gen] + j] -= S[j][r];
          SparseRow row;
          for (auto [col, v] : acc) {
            int m = ((v % p) + p) % p;
            if (m) row.push_back({col, m});
          }
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
  return rows;
}

std::size_t power(int p, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > SIZE_MAX / static_cast<std::size_t>(p)) return SIZE_MAX;
    r *= static_cast<std::size_t>(p);
  }
  return r;
}

HomotopyClasses linear_classes(SSetP Xs, SSetP A, const LinearTarget& L, const ClassOptions& opt) {
  HomotopyClasses R;
  R.linear = true;
  R.source_dim = Xs->top();
  int p = L.p;
  // hom(Xs, A)
  std::vector<std::vector<int>> startX(Xs->top() + 1);
  int nx = 0;
  for (int k = 0; k <= Xs->top(); ++k)
    for (Idx g = 0; g < Xs->ngen(k); ++g) {
      startX[k].push_back(nx);
      nx += L.dim[k];
    }
  Echelon EX{p, {}};
  for (auto& r : map_equations(*Xs, *A, L, startX)) EX.add(std::move(r));
  int homDim = nx - static_cast<int>(EX.piv.size());
  // homotopies from zero: end-1 columns placed last
  Cylinder C = cylinder(Xs);
  const SSet& P = *C.P.X;
  std::vector<std::vector<int>> startC(P.top() + 1);
  std::vector<std::vector<char>> role(P.top() + 1);  // 0 other, 1 end0, 2 end1
  for (int k = 0; k <= P.top(); ++k) {
    startC[k].assign(P.ngen(k), -1);
    role[k].assign(P.ngen(k), 0);
  }
  for (int k = 0; k <= Xs->top(); ++k)
    for (Idx g = 0; g < Xs->ngen(k); ++g) {
      role[k][C.end0.img[k][g].gen] = 1;
      role[k][C.end1.img[k][g].gen] = 2;
    }
  int nc = 0;
  for (int k = 0; k <= P.top(); ++k)
    for (Idx g = 0; g < P.ngen(k); ++g)
      if (role[k][g] == 0) {
        startC[k][g] = nc;
        nc += L.dim[k];
      }
  int end1Base = nc;
  for (int k = 0; k <= Xs->top(); ++k)
    for (Idx g = 0; g < Xs->ngen(k); ++g) startC[k][C.end1.img[k][g].gen] = end1Base + startX[k][g];
  Echelon EC{p, {}};
  for (auto& r : map_equations(P, *A, L, startC)) EC.add(std::move(r));
  // rows led by end-1 columns cut out the null-homotopic maps inside hom
  std::vector<SparseRow> cut;
  for (auto& [lead, row] : EC.piv)
    if (lead >= end1Base) {
      SparseRow r;
      for (auto [c, v] : row) r.push_back({c - end1Base, v});
      cut.push_back(std::move(r));
    }
  // cut rows restricted to hom: rank of the combined system minus rank of hom
  Echelon both = EX;
  int extra = 0;
  for (auto& r : cut) extra += both.add(r) ? 1 : 0;
  int classDim = extra;
  R.count = power(p, classDim);
  R.maps = power(p, homDim);
  if (!opt.want_reps) return R;
  if (R.count > 4096) fail(ErrorKind::CombinatorialBlowup, "too many classes to list: " + std::to_string(p) + "^" + std::to_string(classDim));
  // basis of hom by back substitution
  std::vector<char> isPiv(nx, 0);
  for (auto& [lead, row] : EX.piv) isPiv[lead] = 1;
  std::vector<std::vector<int>> homBasis;
  for (int fcol = 0; fcol < nx; ++fcol) {
    if (isPiv[fcol]) continue;
    std::vector<int> v(nx, 0);
    v[fcol] = 1;
    for (auto it = EX.piv.rbegin(); it != EX.piv.rend(); ++it) {
      long s = 0;
      for (auto [c, val] : it->second)
        if (c != it->first) s += static_cast<long>(val) * v[c];
      v[it->first] = static_cast<int>(((-s) % p + p) % p);
    }
    homBasis.push_back(std::move(v));
  }
  // complement of the null-homotopic subspace, detected through the cut rows
  auto evalCut = [&](const std::vector<int>& v) {
    SparseRow out;
    for (std::size_t i = 0; i < cut.size(); ++i) {
      long s = 0;
      for (auto [c, val] : cut[i]) s += static_cast<long>(val) * v[c];
      int m = static_cast<int>(s % p);
      if (m) out.push_back({static_cast<int>(i), m});
    }
    return out;
  };
  Echelon img{p, {}};
  std::vector<std::vector<int>> comp;
  for (auto& v : homBasis)
    if (img.add(evalCut(v))) comp.push_back(v);
  std::size_t total = power(p, static_cast<int>(comp.size()));
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> v(nx, 0);
    std::size_t c = code;
    for (auto& b : comp) {
      int a = static_cast<int>(c % p);
      c /= p;
      for (int j = 0; j < nx; ++j) v[j] = (v[j] + a * b[j]) % p;
    }
    MapImage m;
    for (int k = 0; k <= Xs->top(); ++k)
      for (Idx g = 0; g < Xs->ngen(k); ++g) {
        std::vector<int> co(v.begin() + startX[k][g], v.begin() + startX[k][g] + L.dim[k]);
        m.push_back(L.element(k, co));
      }
    R.reps.push_back(map_from_image(Xs, A, m));
  }
  return R;
}

}  // namespace

bool homotopic(const SMap& f, const SMap& g, std::size_t budget) {
  Cylinder C = cylinder(f.src);
  const SSet& P = *C.P.X;
  std::vector<std::vector<Idx>> want(P.top() + 1);
  for (int k = 0; k <= P.top(); ++k) want[k].assign(P.ngen(k), UINT32_MAX);
  for (int k = 0; k <= f.src->top(); ++k)
    for (Idx x = 0; x < f.src->ngen(k); ++x) {
      want[k][C.end0.img[k][x].gen] = f.tgt->index(f.img[k][x]);
      Idx w1 = f.tgt->index(g.img[k][x]);
      Idx& slot = want[k][C.end1.img[k][x].gen];
      slot = w1;
    }
  HomOptions o;
  o.budget = budget;
  o.stop_at_first = true;
  o.allow = [&](int k, Idx gg, Idx y) { return want[k][gg] == UINT32_MAX || want[k][gg] == y; };
  return !hom_raw(P, *f.tgt, o).empty();
}

HomotopyClasses homotopy_classes(SSetP X, SSetP A, const ClassOptions& opt) {
  SSetP Xs = X;
  if (opt.source_dim) {
    if (X->top() > *opt.source_dim || !X->finite()) Xs = skeleton(X, *opt.source_dim);
  } else if (!X->finite()) {
    fail(ErrorKind::InvalidArgument, "truncated source needs an explicit source dimension");
  }
  int d = std::max(Xs->top(), 0);
  A->require(d + 1, "homotopy_classes");
  if (opt.check_target) {
    auto rep = check_kan(A, d + 1);
    if (!rep.ok) fail(ErrorKind::TargetNotKan, rep.detail);
  }
  if (opt.linear) return linear_classes(Xs, A, *opt.linear, opt);
  HomotopyClasses R;
  R.source_dim = Xs->top();
  HomOptions ho;
  ho.budget = opt.budget;
  std::vector<MapImage> all = hom_raw(*Xs, *A, ho);
  R.maps = all.size();
  std::map<MapImage, int> where;
  for (std::size_t i = 0; i < all.size(); ++i) where[all[i]] = static_cast<int>(i);
  Cylinder C = cylinder(Xs);
  const SSet& P = *C.P.X;
  // flat positions of the end-1 generators inside cylinder images
  std::vector<std::vector<std::size_t>> flatP(P.top() + 1);
  std::size_t pos = 0;
  for (int k = 0; k <= P.top(); ++k)
    for (Idx g = 0; g < P.ngen(k); ++g) flatP[k].push_back(pos++);
  R.class_of.assign(all.size(), -1);
  std::size_t work = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (R.class_of[i] >= 0) continue;
    int cls = static_cast<int>(R.reps.size());
    R.class_of[i] = cls;
    R.reps.push_back(map_from_image(Xs, A, all[i]));
    std::vector<std::vector<Idx>> want(P.top() + 1);
    for (int k = 0; k <= P.top(); ++k) want[k].assign(P.ngen(k), UINT32_MAX);
    std::size_t q = 0;
    for (int k = 0; k <= Xs->top(); ++k)
      for (Idx g = 0; g < Xs->ngen(k); ++g) want[k][C.end0.img[k][g].gen] = all[i][q++];
    HomOptions h;
    h.budget = opt.budget;
    h.allow = [&](int k, Idx g, Idx y) { return want[k][g] == UINT32_MAX || want[k][g] == y; };
    for (auto& H : hom_raw(P, *A, h)) {
      MapImage end;
      for (int k = 0; k <= Xs->top(); ++k)
        for (Idx g = 0; g < Xs->ngen(k); ++g) end.push_back(H[flatP[k][C.end1.img[k][g].gen]]);
      int j = where.at(end);
      if (R.class_of[j] >= 0 && R.class_of[j] != cls)
        fail(ErrorKind::CrossCheckMismatch, "homotopy relation is not transitive");
      R.class_of[j] = cls;
      if (++work > opt.budget) fail(ErrorKind::CombinatorialBlowup, "homotopy enumeration exceeded budget");
    }
  }
  R.count = R.reps.size();
  for (auto& m : all) R.all.push_back(map_from_image(Xs, A, m));
  return R;
}

}  // namespace skan
