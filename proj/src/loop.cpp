#include <algorithm>
#include <set>

#include "skan/groups.hpp"

namespace skan {

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (int l : w) {
    const Word& im = images[std::abs(l) - 1];
    if (l > 0) {
      out.insert(out.end(), im.begin(), im.end());
    } else {
      for (auto it = im.rbegin(); it != im.rend(); ++it) out.push_back(-*it);
    }
  }
  return free_reduce(out);
}

namespace {

Word inverse_word(const Word& w) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return free_reduce(a);
}

}  // namespace

void SGroupPresentation::validate() const {
  auto op = [&](bool isFace, int n, int i) -> const std::vector<Word>& { return isFace ? face[n][i] : degen[n][i]; };
  // composite of operators applied right to left, evaluated on generator g of level n
  auto eval = [&](const std::vector<std::pair<bool, int>>& ops, int n, std::size_t g) {
    Word w = {static_cast<int>(g) + 1};
    int lvl = n;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      w = substitute(w, op(it->first, lvl, it->second));
      lvl += it->first ? -1 : 1;
    }
    return w;
  };
  auto bad = [&](const std::string& what, int n, std::size_t g) {
    fail(ErrorKind::SimplicialIdentityViolation, what + " fails on generator " + levels[n].gens[g]);
  };
  for (int n = 0; n <= bound; ++n)
    for (std::size_t g = 0; g < levels[n].gens.size(); ++g) {
      for (int j = 1; n >= 2 && j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (eval({{true, i}, {true, j}}, n, g) != eval({{true, j - 1}, {true, i}}, n, g)) bad("d_i d_j", n, g);
      if (n < bound)
        for (int j = 0; j <= n; ++j) {
          Word id = {static_cast<int>(g) + 1};
          for (int i = 0; i <= n + 1; ++i) {
            Word l = eval({{true, i}, {false, j}}, n, g);
            if (i < j && l != eval({{false, j - 1}, {true, i}}, n, g)) bad("d_i s_j", n, g);
            if ((i == j || i == j + 1) && l != id) bad("d_j s_j", n, g);
            if (i > j + 1 && l != eval({{false, j}, {true, i - 1}}, n, g)) bad("d_i s_j", n, g);
          }
          for (int i = 0; n + 1 < bound && i <= j; ++i)
            if (eval({{false, i}, {false, j}}, n, g) != eval({{false, j + 1}, {false, i}}, n, g)) bad("s_i s_j", n, g);
        }
    }
}

FPGroup SGroupPresentation::pi0() const {
  FPGroup G;
  G.gens = levels[0].gens;
  if (bound < 1) fail(ErrorKind::InsufficientDimensionBound, "pi0 of a loop group needs level 1");
  for (std::size_t h = 0; h < levels[1].gens.size(); ++h) {
    Word r = concat(face[1][0][h], inverse_word(face[1][1][h]));
    if (!r.empty()) G.relators.push_back(r);
  }
  return G;
}

SGroupPresentation kan_loop_group(SSetP Y, int bound) {
  if (!is_n_reduced(*Y, 0)) fail(ErrorKind::NotReduced, "the loop group needs a reduced simplicial set");
  Y->require(bound + 1, "kan_loop_group");
  SGroupPresentation L;
  L.bound = bound;
  // generator index of each simplex of Y_{n+1}, or -1 in the image of s_0
  std::vector<std::vector<int>> gen(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    FPGroup F;
    gen[n].assign(Y->size(n + 1), -1);
    for (Idx y = 0; y < Y->size(n + 1); ++y)
      if (!(Y->cell(n + 1, y).mask & 1u)) {
        gen[n][y] = static_cast<int>(F.gens.size());
        F.gens.push_back(Y->name(n + 1, y));
      }
    L.levels.push_back(std::move(F));
  }
  auto word = [&](int n, Idx y) { return gen[n][y] < 0 ? Word{} : Word{gen[n][y] + 1}; };
  L.face.resize(bound + 1);
  L.degen.resize(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    std::vector<Idx> ys;
    for (Idx y = 0; y < Y->size(n + 1); ++y)
      if (gen[n][y] >= 0) ys.push_back(y);
    if (n > 0)
      for (int i = 0; i <= n; ++i) {
        L.face[n].emplace_back();
        for (Idx y : ys)
          L.face[n][i].push_back(i == 0 ? concat(word(n - 1, Y->face(n + 1, 1, y)),
                                                 inverse_word(word(n - 1, Y->face(n + 1, 0, y))))
                                        : word(n - 1, Y->face(n + 1, i + 1, y)));
      }
    if (n < bound)
      for (int i = 0; i <= n; ++i) {
        L.degen[n].emplace_back();
        for (Idx y : ys) L.degen[n][i].push_back(word(n + 1, Y->degen(n + 1, i + 1, y)));
      }
  }
  L.validate();
  return L;
}

SGroupP dold_kan_em(FinGroupP pi, int n, int bound) {
  if (!pi->abelian()) fail(ErrorKind::NotAbelian, "Eilenberg-MacLane objects need an abelian group");
  if (bound < n) fail(ErrorKind::InsufficientDimensionBound, "bound must reach the degree " + std::to_string(n));
  // surjections [m] -> [n], as monotone sequences
  std::vector<std::vector<Mono>> surj(bound + 2);
  for (int m = 0; m <= bound + 1; ++m) {
    Mono cur;
    std::function<void(int)> rec = [&](int lo) {
      if (static_cast<int>(cur.size()) == m + 1) {
        if (cur.back() == n) surj[m].push_back(cur);
        return;
      }
      for (int v = lo; v <= std::min(n, lo + 1); ++v) {
        if (cur.empty() && v != 0) continue;
        cur.push_back(v);
        rec(v);
        cur.pop_back();
      }
    };
    rec(0);
  }
  SGroup G;
  G.bound = bound;
  for (int m = 0; m <= bound; ++m) {
    std::vector<FinGroupP> fs(surj[m].size(), pi);
    G.levels.push_back(std::make_shared<FinGroup>(direct_product(fs)));
  }
  G.face.resize(bound + 1);
  G.degen.resize(bound + 1);
  // theta^*(a)_tau = sum over sigma with sigma theta = tau of a_sigma
  auto pullback = [&](int m, int k, const Mono& theta) {
    std::vector<int> where(surj[m].size(), -1);
    for (std::size_t s = 0; s < surj[m].size(); ++s) {
      Mono c = compose(surj[m][s], theta);
      auto it = std::find(surj[k].begin(), surj[k].end(), c);
      if (it != surj[k].end()) where[s] = static_cast<int>(it - surj[k].begin());
    }
    const FinGroup& A = G.at(m);
    const FinGroup& B = G.at(k);
    std::vector<Idx> out(A.order());
    for (Idx a = 0; a < A.order(); ++a) {
      auto c = A.split(a);
      std::vector<Idx> r(surj[k].size(), pi->e);
      for (std::size_t s = 0; s < c.size(); ++s)
        if (where[s] >= 0) r[where[s]] = pi->mul(r[where[s]], c[s]);
      out[a] = B.join(r);
    }
    return out;
  };
  for (int m = 0; m <= bound; ++m) {
    if (m > 0)
      for (int i = 0; i <= m; ++i) G.face[m].push_back(pullback(m, m - 1, face_map(m, i)));
    if (m < bound)
      for (int i = 0; i <= m; ++i) G.degen[m].push_back(pullback(m, m + 1, degen_map(m, i)));
  }
  return finish_sgroup(std::move(G));
}

G0Sequence g0_sequence(SGroupP G) {
  G0Sequence R;
  R.G0 = const_sgroup(G->levels[0], G->bound);
  const SGroup& g = *G;
  // total degeneracy G_0 -> G_n
  std::vector<std::vector<Idx>> s(g.bound + 1);
  for (Idx h = 0; h < g.at(0).order(); ++h) s[0].push_back(h);
  for (int n = 1; n <= g.bound; ++n)
    for (Idx h : s[0]) s[n].push_back(g.degen[n - 1][0][s[n - 1][h]]);
  for (int n = 0; n <= g.bound; ++n) {
    std::set<Idx> img(s[n].begin(), s[n].end());
    if (img.size() != s[n].size())
      fail(ErrorKind::ActionNotFree, "G_0 does not act freely at level " + std::to_string(n));
  }
  R.incl = SMap::from_function(R.G0->set, G->set, [&](int n, Idx x) { return g.to[n][s[n][R.G0->from[n][x]]]; });
  std::vector<std::vector<Idx>> cls(g.bound + 1);
  for (int n = 0; n <= g.bound; ++n) {
    cls[n].resize(G->set->size(n));
    for (Idx x = 0; x < cls[n].size(); ++x) {
      Idx m = x;
      for (Idx h : s[n]) m = std::min(m, g.to[n][g.mul(n, g.from[n][x], h)]);
      cls[n][x] = m;
    }
  }
  R.quot = quotient_by_labels(G->set, g.bound, cls, false);
  R.fibration = check_kan(R.quot.proj, g.bound);
  Idx base = R.quot.proj.at(0, g.to[0][g.at(0).e]);
  auto pt = point();
  SMap b = SMap::from_function(pt, R.quot.X, [&](int, Idx) { return base; });
  ProductResult F = fiber_product(R.quot.proj, b);
  R.fiber_iso = find_iso(F.X, R.G0->set);
  return R;
}

PostnikovStage postnikov_stage(SSetP X, int n) {
  PostnikovStage R;
  int N = X->finite() ? std::max(X->top(), n + 2) : X->limit();
  int upto = std::min(N, n + 2);
  R.source_kan = check_kan(X, upto);
  if (!R.source_kan.ok) fail(ErrorKind::SourceNotKan, "postnikov stage needs a Kan source: " + R.source_kan.detail);
  std::vector<std::vector<Idx>> cls(N + 1);
  for (int q = 0; q <= N; ++q) {
    cls[q].resize(X->size(q));
    if (q <= n) {
      for (Idx x = 0; x < cls[q].size(); ++x) cls[q][x] = x;
      continue;
    }
    // restrictions to all n-dimensional faces of Delta[q]
    std::vector<Mono> faces;
    Mono cur;
    std::function<void(int)> rec = [&](int lo) {
      if (static_cast<int>(cur.size()) == n + 1) {
        faces.push_back(cur);
        return;
      }
      for (int v = lo; v <= q; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
    std::map<std::vector<Idx>, Idx> first;
    for (Idx x = 0; x < cls[q].size(); ++x) {
      std::vector<Idx> key;
      for (auto& th : faces) key.push_back(X->act(th, q, x));
      cls[q][x] = first.emplace(key, x).first->second;
    }
  }
  R.Q = quotient_by_labels(X, N, cls, X->finite());
  return R;
}

}  // namespace skan
