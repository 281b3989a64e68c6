#include "skan/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

namespace skan {

// --- Smith normal form

namespace {

void dense_smith(IntMatrix& M, std::vector<long long>& diag) {
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = rows, pc = cols;
    long long best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (M[i][j] && (best == 0 || std::llabs(M[i][j]) < best)) {
          best = std::llabs(M[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(M[t], M[pr]);
    for (auto& row : M) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (!M[i][t]) continue;
        long long q = M[i][t] / M[t][t];
        for (std::size_t j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t]) {
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (!M[t][j]) continue;
        long long q = M[t][j] / M[t][t];
        for (std::size_t i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        if (M[t][j]) {
          for (auto& row : M) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (M[i][j] % M[t][t]) {
            for (std::size_t k = t; k < cols; ++k) M[t][k] += M[i][k];
            clean = false;
            break;
          }
    }
    diag.push_back(std::llabs(M[t][t]));
    ++t;
  }
}

}  // namespace

std::vector<long long> smith_diagonal(std::size_t rows, std::size_t cols,
                                      const std::vector<std::tuple<std::size_t, std::size_t, long long>>& entries) {
  std::vector<std::map<std::size_t, long long>> R(rows);
  std::vector<std::set<std::size_t>> C(cols);
  for (auto& [r, c, v] : entries) {
    if (!v) continue;
    long long& x = R[r][c];
    x += v;
    if (x) C[c].insert(r);
    else {
      R[r].erase(c);
      C[c].erase(r);
    }
  }
  std::vector<long long> diag;
  // sparse elimination on unit pivots
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (R[r].empty()) continue;
      auto it = std::find_if(R[r].begin(), R[r].end(), [](auto& e) { return e.second == 1 || e.second == -1; });
      if (it == R[r].end()) continue;
      std::size_t c = it->first;
      long long v = it->second;
      std::vector<std::size_t> others(C[c].begin(), C[c].end());
      for (std::size_t r2 : others) {
        if (r2 == r) continue;
        long long a = R[r2][c] * v;
        for (auto [c2, w] : R[r]) {
          long long& x = R[r2][c2];
          x -= a * w;
          if (x) C[c2].insert(r2);
          else {
            R[r2].erase(c2);
            C[c2].erase(r2);
          }
        }
      }
      for (auto [c2, w] : R[r]) C[c2].erase(r);
      R[r].clear();
      diag.push_back(1);
      progress = true;
    }
  }
  std::vector<std::size_t> liveR;
  std::map<std::size_t, std::size_t> colPos;
  for (std::size_t r = 0; r < rows; ++r)
    if (!R[r].empty()) {
      liveR.push_back(r);
      for (auto& [c, v] : R[r]) colPos.emplace(c, 0);
    }
  std::size_t k = 0;
  for (auto& [c, pos] : colPos) pos = k++;
  if (!liveR.empty()) {
    IntMatrix M(liveR.size(), std::vector<long long>(colPos.size(), 0));
    for (std::size_t i = 0; i < liveR.size(); ++i)
      for (auto& [c, v] : R[liveR[i]]) M[i][colPos[c]] = v;
    dense_smith(M, diag);
  }
  // enforce the divisibility chain
  std::sort(diag.begin(), diag.end());
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      long long g = std::gcd(diag[i], diag[j]);
      long long l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

std::string AbelianGroup::str() const {
  std::string s;
  auto add = [&](const std::string& t) { s += (s.empty() ? "" : " + ") + t; };
  if (rank == 1) add("Z");
  else if (rank > 1) add("Z^" + std::to_string(rank));
  for (long long t : torsion) add("Z/" + std::to_string(t));
  return s.empty() ? "0" : s;
}

// --- components

std::vector<int> pi0_labels(const SSet& X) {
  std::size_t nv = X.ngen(0);
  std::vector<Idx> p(nv);
  std::iota(p.begin(), p.end(), 0);
  std::function<Idx(Idx)> find = [&](Idx v) { return p[v] == v ? v : p[v] = find(p[v]); };
  for (Idx e = 0; e < X.ngen(1); ++e) {
    Idx a = find(X.gen_face(1, e, 0).gen), b = find(X.gen_face(1, e, 1).gen);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(nv, -1), id(nv, -1);
  int next = 0;
  for (Idx v = 0; v < nv; ++v) {
    Idx r = find(v);
    if (id[r] < 0) id[r] = next++;
    label[v] = id[r];
  }
  return label;
}

int pi0_count(const SSet& X) {
  auto l = pi0_labels(X);
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

// --- finitely presented groups

Word free_reduce(Word w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(std::move(w));
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  return Word(w.begin() + a, w.begin() + b);
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

}  // namespace

FPGroup simplify(FPGroup G) {
  auto clean = [](std::vector<Word>& rels) {
    std::set<Word> seen;
    std::vector<Word> out;
    for (auto& r : rels) {
      Word c = cyclic_reduce(r);
      if (c.empty() || !seen.insert(c).second) continue;
      out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
    rels = std::move(out);
  };
  clean(G.relators);
  for (;;) {
    // a generator occurring exactly once in some relator can be eliminated
    int ri = -1, pos = -1;
    for (std::size_t r = 0; r < G.relators.size() && ri < 0; ++r) {
      std::map<int, int> cnt;
      for (int x : G.relators[r]) ++cnt[std::abs(x)];
      for (std::size_t j = 0; j < G.relators[r].size(); ++j)
        if (cnt[std::abs(G.relators[r][j])] == 1) {
          ri = static_cast<int>(r);
          pos = static_cast<int>(j);
          break;
        }
    }
    if (ri < 0) break;
    Word r = G.relators[ri];
    std::rotate(r.begin(), r.begin() + pos, r.end());
    int g = std::abs(r[0]);
    Word rest(r.begin() + 1, r.end());
    // g^e rest = 1, so g = rest^-1 when e = 1 and g = rest when e = -1
    Word val = r[0] > 0 ? inverse_word(rest) : rest;
    Word valInv = inverse_word(val);
    std::vector<Word> rels;
    for (std::size_t q = 0; q < G.relators.size(); ++q) {
      if (static_cast<int>(q) == ri) continue;
      Word w;
      for (int x : G.relators[q]) {
        if (x == g) w.insert(w.end(), val.begin(), val.end());
        else if (x == -g) w.insert(w.end(), valInv.begin(), valInv.end());
        else w.push_back(x);
      }
      rels.push_back(std::move(w));
    }
    for (auto& w : rels)
      for (int& x : w)
        if (std::abs(x) > g) x = x > 0 ? x - 1 : x + 1;
    G.gens.erase(G.gens.begin() + (g - 1));
    G.relators = std::move(rels);
    clean(G.relators);
  }
  return G;
}

AbelianGroup FPGroup::abelianization() const {
  std::vector<std::tuple<std::size_t, std::size_t, long long>> e;
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (int x : relators[r]) e.emplace_back(r, std::abs(x) - 1, x > 0 ? 1 : -1);
  auto d = smith_diagonal(relators.size(), gens.size(), e);
  AbelianGroup A;
  A.rank = static_cast<int>(gens.size() - d.size());
  for (long long t : d)
    if (t > 1) A.torsion.push_back(t);
  return A;
}

std::size_t FPGroup::order(std::size_t budget) const {
  if (gens.empty()) return 1;
  int ncol = static_cast<int>(2 * gens.size());
  auto col = [](int x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; };
  std::vector<std::vector<int>> t;
  std::vector<int> p;
  auto newCoset = [&]() {
    if (t.size() >= budget)
      fail(ErrorKind::BudgetExceeded, "coset enumeration exceeded " + std::to_string(budget) + " cosets");
    t.emplace_back(ncol, -1);
    p.push_back(static_cast<int>(p.size()));
    return static_cast<int>(t.size()) - 1;
  };
  std::function<int(int)> rep = [&](int c) {
    int r = c;
    while (p[r] != r) r = p[r];
    while (p[c] != r) {
      int n = p[c];
      p[c] = r;
      c = n;
    }
    return r;
  };
  auto coincidence = [&](int a, int b) {
    std::vector<int> q;
    auto merge = [&](int k, int l) {
      k = rep(k);
      l = rep(l);
      if (k == l) return;
      if (k > l) std::swap(k, l);
      p[l] = k;
      q.push_back(l);
    };
    merge(a, b);
    for (std::size_t i = 0; i < q.size(); ++i) {
      int e = q[i];
      for (int x = 0; x < ncol; ++x) {
        int f = t[e][x];
        if (f < 0) continue;
        if (t[f][x ^ 1] == e) t[f][x ^ 1] = -1;
        int e1 = rep(e), f1 = rep(f);
        if (t[e1][x] >= 0) merge(f1, t[e1][x]);
        else if (t[f1][x ^ 1] >= 0) merge(e1, t[f1][x ^ 1]);
        else {
          t[e1][x] = f1;
          t[f1][x ^ 1] = e1;
        }
      }
    }
  };
  auto alive = [&](int c) { return p[c] == c; };
  auto scan_fill = [&](int c, const Word& w) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && t[f][col(w[i])] >= 0) f = t[f][col(w[i++])];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && t[b][col(w[j]) ^ 1] >= 0) b = t[b][col(w[j--]) ^ 1];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        t[f][col(w[i])] = b;
        t[b][col(w[i]) ^ 1] = f;
        return;
      }
      int n = newCoset();
      t[f][col(w[i])] = n;
      t[n][col(w[i]) ^ 1] = f;
    }
  };
  newCoset();
  for (int c = 0; c < static_cast<int>(t.size()); ++c) {
    for (const Word& r : relators) {
      if (!alive(c)) break;
      scan_fill(c, r);
    }
    if (!alive(c)) continue;
    for (int x = 0; x < ncol; ++x)
      if (t[c][x] < 0) {
        int n = newCoset();
        t[c][x] = n;
        t[n][x ^ 1] = c;
      }
  }
  std::size_t live = 0;
  for (int c = 0; c < static_cast<int>(t.size()); ++c) live += alive(c);
  return live;
}

std::string FPGroup::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i];
  s += " | ";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    if (r) s += ", ";
    for (int x : relators[r]) s += gens[std::abs(x) - 1] + (x < 0 ? "^-1" : "");
  }
  return s + ">";
}

FPGroup pi1(const SSet& X, Idx x) {
  if (x >= X.ngen(0)) fail(ErrorKind::VertexNotFound, "vertex index " + std::to_string(x));
  if (X.top() >= 2 || !X.finite()) X.require(2, "pi1");
  auto comp = pi0_labels(X);
  int mine = comp[x];
  // BFS spanning tree
  std::vector<std::vector<std::pair<Idx, Idx>>> adj(X.ngen(0));
  for (Idx e = 0; e < X.ngen(1); ++e) {
    Idx a = X.gen_face(1, e, 1).gen, b = X.gen_face(1, e, 0).gen;
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<char> seen(X.ngen(0), 0), tree(X.ngen(1), 0);
  std::queue<Idx> q;
  q.push(x);
  seen[x] = 1;
  while (!q.empty()) {
    Idx v = q.front();
    q.pop();
    for (auto [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        tree[e] = 1;
        q.push(w);
      }
  }
  FPGroup G;
  std::vector<int> genOf(X.ngen(1), 0);
  for (Idx e = 0; e < X.ngen(1); ++e)
    if (comp[X.gen_face(1, e, 0).gen] == mine && !tree[e]) {
      G.gens.push_back(X.gen_name(1, e));
      genOf[e] = static_cast<int>(G.gens.size());
    }
  auto letter = [&](const Cell& c) -> Word {
    if (c.degenerate() || !genOf[c.gen]) return {};
    return {genOf[c.gen]};
  };
  for (Idx s = 0; s < X.ngen(2); ++s) {
    if (comp[X.vertex(2, s, 0)] != mine) continue;
    Word w = letter(X.gen_face(2, s, 2));
    Word b = letter(X.gen_face(2, s, 0));
    Word c = letter(X.gen_face(2, s, 1));
    w.insert(w.end(), b.begin(), b.end());
    for (auto it = c.rbegin(); it != c.rend(); ++it) w.push_back(-*it);
    G.relators.push_back(w);
  }
  return simplify(G);
}

// --- homology

HomologyProfile homology(const SSet& X, int r) {
  if (r < 0) return {};
  if (!X.finite()) X.require(r + 1, "homology");
  std::vector<std::vector<long long>> diag(r + 3);
  for (int n = 1; n <= r + 1; ++n) {
    std::map<std::pair<std::size_t, std::size_t>, long long> acc;
    for (Idx g = 0; g < X.ngen(n); ++g)
      for (int i = 0; i <= n; ++i) {
        const Cell& c = X.gen_face(n, g, i);
        if (!c.degenerate()) acc[{c.gen, g}] += (i % 2 ? -1 : 1);
      }
    std::vector<std::tuple<std::size_t, std::size_t, long long>> e;
    for (auto& [rc, v] : acc)
      if (v) e.emplace_back(rc.first, rc.second, v);
    diag[n] = smith_diagonal(X.ngen(n - 1), X.ngen(n), e);
  }
  HomologyProfile H(r + 1);
  for (int n = 0; n <= r; ++n) {
    long long rk = static_cast<long long>(X.ngen(n)) - static_cast<long long>(diag[n].size()) -
                   static_cast<long long>(diag[n + 1].size());
    H[n].rank = static_cast<int>(rk);
    for (long long t : diag[n + 1])
      if (t > 1) H[n].torsion.push_back(t);
  }
  return H;
}

std::string profile_str(const HomologyProfile& h) {
  std::string s = "(";
  for (std::size_t n = 0; n < h.size(); ++n) s += (n ? ", " : "") + h[n].str();
  return s + ")";
}

}  // namespace skan
