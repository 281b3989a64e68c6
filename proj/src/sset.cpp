#include <algorithm>
#include <bit>
#include <sstream>

#include "skan/core.hpp"

namespace skan {

Mono face_map(int n, int i) {
  Mono m(n);
  for (int j = 0; j < n; ++j) m[j] = j < i ? j : j + 1;
  return m;
}

Mono degen_map(int n, int i) {
  Mono m(n + 2);
  for (int j = 0; j < n + 2; ++j) m[j] = j <= i ? j : j - 1;
  return m;
}

Mono compose(const Mono& a, const Mono& b) {
  Mono r(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) r[j] = a[b[j]];
  return r;
}

Mono identity_map(int n) {
  Mono m(n + 1);
  for (int j = 0; j <= n; ++j) m[j] = j;
  return m;
}

std::vector<int> Cell::word() const {
  std::vector<int> w;
  for (int j = n - 1; j >= 0; --j)
    if (mask >> j & 1u) w.push_back(j);
  return w;
}

Mono Cell::surjection() const {
  Mono s(n + 1);
  s[0] = 0;
  for (int j = 0; j < n; ++j) s[j + 1] = s[j] + ((mask >> j & 1u) ? 0 : 1);
  return s;
}

Cell degenerate_cell(const Mono& surj, int k, Idx g) {
  Cell c;
  c.n = static_cast<int>(surj.size()) - 1;
  c.k = k;
  c.gen = g;
  for (int j = 0; j < c.n; ++j)
    if (surj[j] == surj[j + 1]) c.mask |= 1u << j;
  return c;
}

std::optional<Idx> SSet::find_gen(int k, const std::string& name) const {
  if (k < 0 || k > top()) return std::nullopt;
  auto it = by_name_[k].find(name);
  if (it == by_name_[k].end()) return std::nullopt;
  return it->second;
}

std::size_t SSet::total_generators() const {
  std::size_t t = 0;
  for (auto& v : names_) t += v.size();
  return t;
}

Idx SSet::add_generator(int k, std::string name, std::vector<Cell> faces) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "negative dimension");
  int want = k == 0 ? 0 : k + 1;
  if (static_cast<int>(faces.size()) != want)
    fail(ErrorKind::DanglingFace, "generator " + name + " needs " + std::to_string(want) + " faces");
  for (auto& f : faces)
    if (f.n != k - 1 || f.k > top() || f.gen >= ngen(f.k))
      fail(ErrorKind::DanglingFace, "generator " + name + " has a face outside dimension " +
                                        std::to_string(k - 1));
  while (top() < k) {
    names_.emplace_back();
    faces_.emplace_back();
    by_name_.emplace_back();
  }
  if (by_name_[k].count(name))
    fail(ErrorKind::SchemaError, "duplicate generator name " + name + " in dimension " +
                                     std::to_string(k));
  Idx g = static_cast<Idx>(names_[k].size());
  by_name_[k][name] = g;
  names_[k].push_back(std::move(name));
  faces_[k].push_back(std::move(faces));
  levels_.clear();
  return g;
}

void SSet::require(int n, const char* who) const {
  if (n > limit())
    fail(ErrorKind::InsufficientDimensionBound,
         std::string(who) + (who[0] ? ": " : "") + "level " + std::to_string(n) +
             " requested, data stops at " + std::to_string(limit()));
}

std::uint64_t SSet::key(const Cell& c) {
  return (static_cast<std::uint64_t>(c.k) << 58) | (static_cast<std::uint64_t>(c.gen) << 22) |
         c.mask;
}

const Cell& SSet::sub(int k, Idx g, std::uint32_t subset) const {
  if (static_cast<int>(subs_.size()) <= k) {
    subs_.resize(k + 1);
    sub_ready_.resize(k + 1);
  }
  if (subs_[k].size() < ngen(k)) {
    subs_[k].resize(ngen(k));
    sub_ready_[k].resize(ngen(k));
  }
  auto& slot = subs_[k][g];
  auto& ready = sub_ready_[k][g];
  if (slot.empty()) {
    slot.resize(std::size_t(1) << (k + 1));
    ready.assign(slot.size(), 0);
  }
  if (ready[subset]) return slot[subset];
  std::uint32_t full = (1u << (k + 1)) - 1;
  Cell out;
  if (subset == full) {
    out = nondeg(k, g);
  } else {
    int i = 0;
    while (subset >> i & 1u) ++i;
    const Cell& c = faces_[k][g][i];
    Mono inj;
    for (int j = 0; j <= k; ++j)
      if (subset >> j & 1u) inj.push_back(j < i ? j : j - 1);
    out = act_cell(inj, c);
  }
  slot[subset] = out;
  ready[subset] = 1;
  return slot[subset];
}

Cell SSet::act_cell(const Mono& theta, const Cell& c) const {
  Mono sigma = c.surjection();
  Mono tau = compose(sigma, theta);
  std::uint32_t S = 0;
  for (int v : tau) S |= 1u << v;
  // rank of each vertex inside S
  std::vector<int> rank(c.k + 1, -1);
  int r = 0;
  for (int v = 0; v <= c.k; ++v)
    if (S >> v & 1u) rank[v] = r++;
  Mono squash(tau.size());
  for (std::size_t j = 0; j < tau.size(); ++j) squash[j] = rank[tau[j]];
  const Cell& d = sub(c.k, c.gen, S);
  return degenerate_cell(compose(d.surjection(), squash), d.k, d.gen);
}

void SSet::materialize(int n) const {
  require(n);
  while (static_cast<int>(levels_.size()) <= n) {
    int m = static_cast<int>(levels_.size());
    levels_.emplace_back();
    Level& L = levels_.back();
    for (int k = std::min(m, top()); k >= 0; --k) {
      int r = m - k;
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != r) continue;
        for (Idx g = 0; g < ngen(k); ++g) {
          Cell c{m, k, g, mask};
          L.index.emplace(key(c), static_cast<Idx>(L.cells.size()));
          L.cells.push_back(c);
        }
      }
    }
    if (m >= 1) {
      L.face.assign(m + 1, std::vector<Idx>(L.cells.size()));
      for (int i = 0; i <= m; ++i) {
        Mono th = face_map(m, i);
        for (Idx x = 0; x < L.cells.size(); ++x) {
          Cell f = act_cell(th, L.cells[x]);
          L.face[i][x] = levels_[m - 1].index.at(key(f));
        }
      }
      Level& P = levels_[m - 1];
      P.degen.assign(m, std::vector<Idx>(P.cells.size()));
      for (int i = 0; i < m; ++i) {
        Mono th = degen_map(m - 1, i);
        for (Idx y = 0; y < P.cells.size(); ++y)
          P.degen[i][y] = L.index.at(key(act_cell(th, P.cells[y])));
      }
    }
  }
}

std::size_t SSet::size(int n) const {
  materialize(n);
  return levels_[n].cells.size();
}

Idx SSet::face(int n, int i, Idx x) const {
  materialize(n);
  return levels_[n].face[i][x];
}

Idx SSet::degen(int n, int i, Idx x) const {
  materialize(n + 1);
  return levels_[n].degen[i][x];
}

Idx SSet::act(const Mono& theta, int n, Idx x) const {
  Cell c = act_cell(theta, cell(n, x));
  return index(c);
}

const Cell& SSet::cell(int n, Idx x) const {
  materialize(n);
  return levels_[n].cells[x];
}

Idx SSet::index(const Cell& c) const {
  auto r = find(c);
  if (!r) fail(ErrorKind::DanglingFace, "cell " + cell_name(c) + " not present");
  return *r;
}

std::optional<Idx> SSet::find(const Cell& c) const {
  if (c.k > top() || c.gen >= ngen(c.k)) return std::nullopt;
  materialize(c.n);
  auto it = levels_[c.n].index.find(key(c));
  if (it == levels_[c.n].index.end()) return std::nullopt;
  return it->second;
}

Idx SSet::point_at(int n, Idx v) const {
  Cell c{n, 0, v, n == 0 ? 0u : (1u << n) - 1};
  return index(c);
}

Idx SSet::vertex(int n, Idx x, int j) const { return act(Mono{j}, n, x); }

std::string SSet::cell_name(const Cell& c) const {
  const std::string& b = names_[c.k][c.gen];
  if (!c.degenerate()) return b;
  std::string s;
  for (int j : c.word()) s += "s" + std::to_string(j);
  return s + "(" + b + ")";
}

void check_identities(const LevelData& d) {
  auto bad = [&](const std::string& what, int n, Idx x) {
    fail(ErrorKind::SimplicialIdentityViolation,
         what + " fails on " + d.names[n][x] + " at level " + std::to_string(n));
  };
  for (int n = 0; n <= d.N; ++n) {
    for (Idx x = 0; x < d.size(n); ++x) {
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (d.face[n - 1][i][d.face[n][j][x]] != d.face[n - 1][j - 1][d.face[n][i][x]])
              bad("d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                      std::to_string(j - 1) + "d" + std::to_string(i),
                  n, x);
      if (n < d.N) {
        for (int j = 0; j <= n; ++j) {
          Idx sx = d.degen[n][j][x];
          for (int i = 0; i <= n + 1; ++i) {
            Idx lhs = d.face[n + 1][i][sx];
            bool ok;
            if (i == j || i == j + 1)
              ok = lhs == x;
            else if (i < j)
              ok = lhs == d.degen[n - 1][j - 1][d.face[n][i][x]];
            else
              ok = lhs == d.degen[n - 1][j][d.face[n][i - 1][x]];
            if (!ok) bad("d" + std::to_string(i) + "s" + std::to_string(j), n, x);
          }
        }
        if (n + 1 < d.N)
          for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
              if (d.degen[n + 1][i][d.degen[n][j][x]] != d.degen[n + 1][j + 1][d.degen[n][i][x]])
                bad("s" + std::to_string(i) + "s" + std::to_string(j) + " = s" +
                        std::to_string(j + 1) + "s" + std::to_string(i),
                    n, x);
      }
    }
  }
}

Built normalize_levels(const LevelData& d, bool finite) {
  auto X = std::make_shared<SSet>();
  std::vector<std::vector<Cell>> cellOf(d.N + 1);
  for (int n = 0; n <= d.N; ++n) {
    std::size_t sz = d.size(n);
    cellOf[n].resize(sz);
    std::vector<int> via(sz, -1);
    if (n > 0)
      for (int i = 0; i < n; ++i)
        for (Idx y = 0; y < d.size(n - 1); ++y) {
          Idx x = d.degen[n - 1][i][y];
          if (via[x] < 0) via[x] = i;
        }
    std::vector<Idx> nd;
    for (Idx x = 0; x < sz; ++x)
      if (via[x] < 0) nd.push_back(x);
    std::stable_sort(nd.begin(), nd.end(),
                     [&](Idx a, Idx b) { return d.names[n][a] < d.names[n][b]; });
    for (Idx x : nd) {
      std::vector<Cell> faces;
      if (n > 0)
        for (int i = 0; i <= n; ++i) faces.push_back(cellOf[n - 1][d.face[n][i][x]]);
      Idx g = X->add_generator(n, d.names[n][x], std::move(faces));
      cellOf[n][x] = nondeg(n, g);
    }
    for (Idx x = 0; x < sz; ++x)
      if (via[x] >= 0) {
        int i = via[x];
        Idx y = d.face[n][i][x];
        cellOf[n][x] = X->act_cell(degen_map(n - 1, i), cellOf[n - 1][y]);
      }
  }
  if (!finite) X->trunc = d.N;
  Built b;
  b.to.resize(d.N + 1);
  for (int n = 0; n <= d.N; ++n) {
    if (X->size(n) != d.size(n))
      fail(ErrorKind::SimplicialIdentityViolation,
           "level " + std::to_string(n) + " does not match its normal form (" +
               std::to_string(d.size(n)) + " vs " + std::to_string(X->size(n)) + ")");
    b.to[n].resize(d.size(n));
    for (Idx x = 0; x < d.size(n); ++x) b.to[n][x] = X->index(cellOf[n][x]);
    if (n > 0)
      for (int i = 0; i <= n; ++i)
        for (Idx x = 0; x < d.size(n); ++x)
          if (X->face(n, i, b.to[n][x]) != b.to[n - 1][d.face[n][i][x]])
            fail(ErrorKind::SimplicialIdentityViolation,
                 "face d" + std::to_string(i) + " of " + d.names[n][x] + " is inconsistent");
  }
  b.X = X;
  return b;
}

LevelData build_levels(int N, const std::vector<std::vector<Key>>& elems, const KeyFn& face,
                       const KeyFn& degen, const std::function<std::string(int, const Key&)>& name) {
  LevelData d;
  d.N = N;
  d.names.resize(N + 1);
  d.face.resize(N + 1);
  d.degen.resize(N + 1);
  std::vector<std::map<Key, Idx>> index(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (Idx x = 0; x < elems[n].size(); ++x) {
      if (!index[n].emplace(elems[n][x], x).second)
        fail(ErrorKind::CrossCheckMismatch, "duplicate element at level " + std::to_string(n));
      d.names[n].push_back(name(n, elems[n][x]));
    }
  }
  auto look = [&](int n, const Key& k, const char* what) {
    auto it = index[n].find(k);
    if (it == index[n].end())
      fail(ErrorKind::CrossCheckMismatch,
           std::string(what) + " leaves level " + std::to_string(n) + " element set");
    return it->second;
  };
  for (int n = 1; n <= N; ++n) {
    d.face[n].assign(n + 1, std::vector<Idx>(elems[n].size()));
    for (int i = 0; i <= n; ++i)
      for (Idx x = 0; x < elems[n].size(); ++x) d.face[n][i][x] = look(n - 1, face(n, i, elems[n][x]), "face");
  }
  for (int n = 0; n < N; ++n) {
    d.degen[n].assign(n + 1, std::vector<Idx>(elems[n].size()));
    for (int i = 0; i <= n; ++i)
      for (Idx x = 0; x < elems[n].size(); ++x)
        d.degen[n][i][x] = look(n + 1, degen(n, i, elems[n][x]), "degeneracy");
  }
  return d;
}

}  // namespace skan

namespace skan {

Idx KeyedSet::index_of(int n, const Key& t) const {
  auto it = lookup[n].find(t);
  if (it == lookup[n].end()) fail(ErrorKind::CrossCheckMismatch, "key is not an element of level " + std::to_string(n));
  return built.to[n][it->second];
}

KeyedSet keyed_levels(int N, std::vector<std::vector<Key>> keys, const KeyFn& face, const KeyFn& degen,
                      const std::function<std::string(int, const Key&)>& name, bool finite) {
  KeyedSet R;
  for (auto& level : keys) std::sort(level.begin(), level.end());
  R.tuples = std::move(keys);
  R.built = normalize_levels(build_levels(N, R.tuples, face, degen, name), finite);
  R.X = R.built.X;
  R.lookup.resize(N + 1);
  R.elem_of.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    R.elem_of[n].resize(R.tuples[n].size());
    for (Idx e = 0; e < R.tuples[n].size(); ++e) {
      R.lookup[n].emplace(R.tuples[n][e], e);
      R.elem_of[n][R.built.to[n][e]] = e;
    }
  }
  return R;
}

}  // namespace skan
