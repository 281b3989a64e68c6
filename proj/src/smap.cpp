#include <algorithm>
#include <set>

#include "skan/core.hpp"

namespace skan {

Cell SMap::at_cell(const Cell& c) const {
  const Cell& b = img[c.k][c.gen];
  if (!c.degenerate()) return b;
  return tgt->act_cell(c.surjection(), b);
}

Idx SMap::at(int n, Idx x) const { return tgt->index(at_cell(src->cell(n, x))); }

std::vector<Idx> SMap::level(int n) const {
  std::vector<Idx> out(src->size(n));
  for (Idx x = 0; x < out.size(); ++x) out[x] = at(n, x);
  return out;
}

void SMap::validate() const {
  if (static_cast<int>(img.size()) != src->top() + 1)
    fail(ErrorKind::SchemaError, "map does not cover every source dimension");
  for (int k = 0; k <= src->top(); ++k) {
    if (img[k].size() != src->ngen(k))
      fail(ErrorKind::SchemaError, "map misses generators in dimension " + std::to_string(k));
    for (Idx g = 0; g < src->ngen(k); ++g) {
      const Cell& y = img[k][g];
      if (y.n != k || !tgt->find(y))
        fail(ErrorKind::DanglingFace, "image of " + src->gen_name(k, g) + " is not a " +
                                          std::to_string(k) + "-simplex of the target");
      if (k == 0) continue;
      for (int i = 0; i <= k; ++i)
        if (!(at_cell(src->gen_face(k, g, i)) == tgt->face_cell(i, y)))
          fail(ErrorKind::SimplicialIdentityViolation,
               "map does not commute with d" + std::to_string(i) + " on " + src->gen_name(k, g));
    }
  }
}

SMap SMap::from_function(SSetP s, SSetP t, const std::function<Idx(int, Idx)>& f) {
  SMap m;
  m.src = s;
  m.tgt = t;
  m.img.resize(s->top() + 1);
  for (int k = 0; k <= s->top(); ++k)
    for (Idx g = 0; g < s->ngen(k); ++g) m.img[k].push_back(t->cell(k, f(k, g)));
  m.validate();
  return m;
}

SMap SMap::identity(SSetP X) {
  SMap m;
  m.src = X;
  m.tgt = X;
  m.img.resize(X->top() + 1);
  for (int k = 0; k <= X->top(); ++k)
    for (Idx g = 0; g < X->ngen(k); ++g) m.img[k].push_back(nondeg(k, g));
  return m;
}

SMap SMap::constant(SSetP s, SSetP t, Idx v) {
  SMap m;
  m.src = s;
  m.tgt = t;
  m.img.resize(s->top() + 1);
  for (int k = 0; k <= s->top(); ++k)
    for (Idx g = 0; g < s->ngen(k); ++g) m.img[k].push_back(t->cell(k, t->point_at(k, v)));
  return m;
}

SMap compose(const SMap& g, const SMap& f) {
  SMap m;
  m.src = f.src;
  m.tgt = g.tgt;
  m.img.resize(f.img.size());
  for (std::size_t k = 0; k < f.img.size(); ++k)
    for (auto& c : f.img[k]) m.img[k].push_back(g.at_cell(c));
  return m;
}

bool same_map(const SMap& a, const SMap& b) {
  if (a.img.size() != b.img.size()) return false;
  for (std::size_t k = 0; k < a.img.size(); ++k) {
    if (a.img[k].size() != b.img[k].size()) return false;
    for (std::size_t g = 0; g < a.img[k].size(); ++g)
      if (!(a.img[k][g] == b.img[k][g])) return false;
  }
  return true;
}

bool is_iso(const SMap& f, int upto) {
  const SSet& S = *f.src;
  const SSet& T = *f.tgt;
  int L;
  if (S.finite() && T.finite()) {
    if (S.top() != T.top()) return false;
    L = S.top();
  } else {
    L = std::min(S.limit(), T.limit());
    if (upto >= 0) L = std::min(L, upto);
    if (S.finite()) L = std::min(L, std::max(S.top(), 0));
  }
  for (int k = 0; k <= L; ++k) {
    if (S.ngen(k) != T.ngen(k)) return false;
    std::vector<char> hit(T.ngen(k), 0);
    for (Idx g = 0; g < S.ngen(k); ++g) {
      const Cell& c = f.img[k][g];
      if (c.degenerate() || hit[c.gen]) return false;
      hit[c.gen] = 1;
    }
  }
  return true;
}

std::optional<SMap> inverse(const SMap& f) {
  if (!is_iso(f)) return std::nullopt;
  SMap g;
  g.src = f.tgt;
  g.tgt = f.src;
  int L = std::min(f.src->top(), f.tgt->top());
  g.img.resize(f.tgt->top() + 1);
  for (int k = 0; k <= f.tgt->top(); ++k) g.img[k].resize(f.tgt->ngen(k));
  for (int k = 0; k <= L; ++k)
    for (Idx x = 0; x < f.src->ngen(k); ++x) g.img[k][f.img[k][x].gen] = nondeg(k, x);
  if (f.tgt->top() != L) return std::nullopt;
  g.validate();
  return g;
}

}  // namespace skan
