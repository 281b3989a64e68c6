#pragma once
// Independent reference computations used to freeze expected values.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "skan/core.hpp"

namespace oracle {

using skan::Idx;

/// Level tables of a materialized simplicial set, for identity checks.
inline skan::LevelData levels_of(const skan::SSet& X, int N) {
  skan::LevelData d;
  d.N = N;
  d.names.resize(N + 1);
  d.face.resize(N + 1);
  d.degen.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (Idx x = 0; x < X.size(n); ++x) d.names[n].push_back(X.name(n, x));
    if (n > 0) {
      d.face[n].assign(n + 1, {});
      for (int i = 0; i <= n; ++i)
        for (Idx x = 0; x < X.size(n); ++x) d.face[n][i].push_back(X.face(n, i, x));
    }
    if (n < N) {
      d.degen[n].assign(n + 1, {});
      for (int i = 0; i <= n; ++i)
        for (Idx x = 0; x < X.size(n); ++x) d.degen[n][i].push_back(X.degen(n, i, x));
    }
  }
  return d;
}

/// All monotone sequences of length m+1 with values in [0, n].
inline std::vector<std::vector<int>> monotone(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == m + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Nondegenerate m-simplices of Delta[a] x Delta[b]: pairs of monotone
/// sequences with no repeated consecutive pair.
inline std::size_t product_nondeg(int a, int b, int m) {
  std::size_t c = 0;
  for (auto& x : monotone(m, a))
    for (auto& y : monotone(m, b)) {
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) ok = !(x[j] == x[j + 1] && y[j] == y[j + 1]);
      c += ok;
    }
  return c;
}

/// Number of simplices in level n of a finite set with g[k] generators in dim k.
inline std::size_t level_count(const std::vector<std::size_t>& g, int n) {
  auto binom = [](int a, int b) {
    std::size_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::size_t c = 0;
  for (int k = 0; k < static_cast<int>(g.size()) && k <= n; ++k) c += binom(n, k) * g[k];
  return c;
}

/// Union-find component count of a graph given by an edge list.
inline int components(int nv, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> p(nv);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (auto [a, b] : edges) p[find(a)] = find(b);
  int c = 0;
  for (int v = 0; v < nv; ++v) c += find(v) == v;
  return c;
}

/// Rank over F_p of an integer matrix (rows of residues).
inline int rank_mod_p(std::vector<std::vector<long>> M, long p) {
  int r = 0;
  int rows = static_cast<int>(M.size());
  int cols = rows ? static_cast<int>(M[0].size()) : 0;
  auto inv = [p](long a) {
    long r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (((M[i][c] % p) + p) % p) piv = i;
    if (piv < 0) continue;
    std::swap(M[piv], M[r]);
    long iv = inv(((M[r][c] % p) + p) % p);
    for (auto& v : M[r]) v = ((v % p + p) % p) * iv % p;
    for (int i = 0; i < rows; ++i)
      if (i != r && M[i][c] % p) {
        long f = ((M[i][c] % p) + p) % p;
        for (int j = 0; j < cols; ++j) M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

/// Conjugacy classes of a group given by its multiplication table.
inline int conjugacy_classes(const std::vector<std::vector<int>>& mul, int e) {
  int n = static_cast<int>(mul.size());
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == e) inv[a] = b;
  std::set<std::set<int>> cls;
  for (int a = 0; a < n; ++a) {
    std::set<int> c;
    for (int g = 0; g < n; ++g) c.insert(mul[mul[g][a]][inv[g]]);
    cls.insert(c);
  }
  return static_cast<int>(cls.size());
}

/// Integral homology of Z/m from the periodic resolution: torsion in odd degrees.
inline std::vector<long long> cyclic_homology_torsion(int m, int n) {
  if (n == 0 || n % 2 == 0 || m == 1) return {};
  return {m};
}

/// Sizes of the level formula prod_{p<n} |G_p|.
inline std::size_t wbar_level(const std::vector<std::size_t>& orders, int n) {
  std::size_t c = 1;
  for (int p = 0; p < n; ++p) c *= orders[p];
  return c;
}

/// dim over F_p of the simplicial cochain group H^n of the complex spanned by `facets`.
inline int cochain_cohomology_dim(const std::vector<std::vector<int>>& facets, int n, long p) {
  std::vector<std::set<std::vector<int>>> simp(n + 2);
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    int m = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      if (static_cast<int>(s.size()) <= n + 2) simp[s.size() - 1].insert(s);
    }
  }
  // boundary matrix from dimension k to k-1
  auto boundary = [&](int k) {
    std::vector<std::vector<int>> lo(simp[k - 1].begin(), simp[k - 1].end());
    std::vector<std::vector<long>> M;
    for (auto& s : simp[k]) {
      std::vector<long> row(lo.size(), 0);
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto f = s;
        f.erase(f.begin() + static_cast<long>(j));
        row[std::lower_bound(lo.begin(), lo.end(), f) - lo.begin()] = j % 2 ? -1 : 1;
      }
      M.push_back(row);
    }
    return M;
  };
  int up = simp[n + 1].empty() ? 0 : rank_mod_p(boundary(n + 1), p);
  int down = n == 0 || simp[n].empty() ? 0 : rank_mod_p(boundary(n), p);
  return static_cast<int>(simp[n].size()) - up - down;
}

}  // namespace oracle
