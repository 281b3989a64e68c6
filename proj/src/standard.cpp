#include <algorithm>
#include <regex>

#include "skan/core.hpp"

namespace skan {
namespace {

std::string subset_name(const std::vector<int>& verts, int n) {
  std::string s;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (n >= 10 && j) s += "_";
    s += std::to_string(verts[j]);
  }
  return s;
}

// Subcomplex of Delta[n] spanned by the vertex sets accepted by `keep`.
SSetP simplex_like(int n, const std::function<bool(std::uint32_t)>& keep) {
  auto X = std::make_shared<SSet>();
  for (int k = 0; k <= n; ++k) {
    std::vector<std::pair<std::string, std::uint32_t>> gens;
    for (std::uint32_t S = 1; S < (1u << (n + 1)); ++S) {
      if (std::popcount(S) != k + 1 || !keep(S)) continue;
      std::vector<int> v;
      for (int j = 0; j <= n; ++j)
        if (S >> j & 1u) v.push_back(j);
      gens.emplace_back(subset_name(v, n), S);
    }
    std::sort(gens.begin(), gens.end());
    for (auto& [name, S] : gens) {
      std::vector<int> v;
      for (int j = 0; j <= n; ++j)
        if (S >> j & 1u) v.push_back(j);
      std::vector<Cell> faces;
      if (k > 0)
        for (int i = 0; i <= k; ++i) {
          std::vector<int> w = v;
          w.erase(w.begin() + i);
          faces.push_back(nondeg(k - 1, *X->find_gen(k - 1, subset_name(w, n))));
        }
      X->add_generator(k, name, std::move(faces));
    }
  }
  return X;
}

}  // namespace

SSetP simplex(int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "negative simplex dimension");
  return simplex_like(n, [](std::uint32_t) { return true; });
}

SSetP point() { return simplex(0); }

SSetP empty_sset() { return std::make_shared<SSet>(); }

SSetP circle_min() {
  auto X = std::make_shared<SSet>();
  X->add_generator(0, "v", {});
  Cell v1{0, 0, 0, 0};
  X->add_generator(1, "e", {v1, v1});
  return X;
}

SSetP generate_standard(StdKind kind, int n, int k) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "n must be non-negative");
  std::uint32_t full = (1u << (n + 1)) - 1;
  switch (kind) {
    case StdKind::Simplex:
      return simplex(n);
    case StdKind::Boundary:
      return simplex_like(n, [full](std::uint32_t S) { return S != full; });
    case StdKind::Horn: {
      if (k < 0 || k > n) fail(ErrorKind::InvalidArgument, "horn needs 0 <= k <= n");
      std::uint32_t opp = full & ~(1u << k);
      return simplex_like(n, [full, opp](std::uint32_t S) { return S != full && S != opp; });
    }
    case StdKind::SphereMin: {
      std::uint32_t f2 = (1u << (n + 2)) - 1;
      return simplex_like(n + 1, [f2](std::uint32_t S) { return S != f2; });
    }
    case StdKind::CircleMin:
      return circle_min();
  }
  fail(ErrorKind::InvalidArgument, "unknown standard kind");
}

Idx simplex_index(const SSet& Dn, const Mono& seq) {
  std::vector<int> verts;
  for (int v : seq)
    if (verts.empty() || verts.back() != v) verts.push_back(v);
  int n = 0;
  for (Idx v = 0; v < Dn.ngen(0); ++v) n = std::max(n, std::stoi(Dn.gen_name(0, v)));
  auto g = Dn.find_gen(static_cast<int>(verts.size()) - 1, subset_name(verts, n));
  if (!g) fail(ErrorKind::DanglingFace, "vertex sequence outside the simplex");
  Mono surj(seq.size());
  int r = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j && seq[j] != seq[j - 1]) ++r;
    surj[j] = r;
  }
  return Dn.index(degenerate_cell(surj, static_cast<int>(verts.size()) - 1, *g));
}

SMap simplex_map(SSetP Dm, SSetP Dn, const Mono& theta) {
  return SMap::from_function(Dm, Dn, [&](int k, Idx g) {
    Mono seq;
    for (int j = 0; j <= k; ++j) seq.push_back(theta[std::stoi(Dm->gen_name(0, Dm->vertex(k, g, j)))]);
    return simplex_index(*Dn, seq);
  });
}

namespace {
std::string chain_name(const Poset& P, const std::vector<int>& c) {
  std::string s;
  for (std::size_t j = 0; j < c.size(); ++j) s += (j ? "<" : "") + P.labels[c[j]];
  return s;
}
}  // namespace

SSetP poset_nerve(const Poset& P) {
  auto X = std::make_shared<SSet>();
  int m = static_cast<int>(P.labels.size());
  std::vector<std::vector<int>> cur;
  for (int a = 0; a < m; ++a) cur.push_back({a});
  int k = 0;
  while (!cur.empty()) {
    std::vector<std::pair<std::string, std::vector<int>>> named;
    for (auto& c : cur) named.emplace_back(chain_name(P, c), c);
    if (k > 0) std::sort(named.begin(), named.end());  // vertices keep poset order
    for (auto& [name, c] : named) {
      std::vector<Cell> faces;
      if (k > 0)
        for (int i = 0; i <= k; ++i) {
          auto w = c;
          w.erase(w.begin() + i);
          faces.push_back(nondeg(k - 1, *X->find_gen(k - 1, chain_name(P, w))));
        }
      X->add_generator(k, name, std::move(faces));
    }
    std::vector<std::vector<int>> next;
    for (auto& c : cur)
      for (int b = 0; b < m; ++b)
        if (b != c.back() && P.leq(c.back(), b)) {
          auto w = c;
          w.push_back(b);
          next.push_back(w);
        }
    cur = std::move(next);
    ++k;
  }
  return X;
}

Cell chain_cell(const SSet& nerve, const std::vector<int>& chain) {
  // names are rebuilt from the level-0 labels
  std::vector<int> base;
  Mono surj;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (base.empty() || base.back() != chain[j]) base.push_back(chain[j]);
    surj.push_back(static_cast<int>(base.size()) - 1);
  }
  std::string name;
  for (std::size_t j = 0; j < base.size(); ++j)
    name += (j ? "<" : "") + nerve.gen_name(0, static_cast<Idx>(base[j]));
  auto g = nerve.find_gen(static_cast<int>(base.size()) - 1, name);
  if (!g) fail(ErrorKind::DanglingFace, "chain " + name + " is not in the nerve");
  return degenerate_cell(surj, static_cast<int>(base.size()) - 1, *g);
}

Cell parse_cell(const SSet& X, const std::string& expr, int level) {
  static const std::regex deg(R"(^((?:s[0-9])+)\((.*)\)$)");
  std::smatch m;
  std::vector<int> word;
  std::string base = expr;
  if (std::regex_match(expr, m, deg)) {
    std::string w = m[1];
    for (std::size_t j = 1; j < w.size(); j += 2) word.push_back(w[j] - '0');
    base = m[2];
  }
  int k = level - static_cast<int>(word.size());
  auto g = X.find_gen(k, base);
  if (!g)
    fail(ErrorKind::DanglingFace, "face target " + expr + " is not a generator of dimension " +
                                      std::to_string(k));
  Cell c = nondeg(k, *g);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it > c.n) fail(ErrorKind::DanglingFace, "degeneracy index out of range in " + expr);
    c = X.degen_cell(*it, c);
  }
  return c;
}

SSetP normalize(const std::vector<RawSimplex>& raw, std::optional<int> trunc) {
  static const std::regex deg(R"(^(s[0-9])+\(.*\)$)");
  int top = -1;
  for (auto& r : raw) {
    if (!r.degenerate_of.empty() || std::regex_match(r.name, deg))
      fail(ErrorKind::DegenerateGeneratorListed,
           r.name + " is degenerate and cannot be listed as a generator");
    if (r.dim < 0) fail(ErrorKind::SchemaError, "negative dimension for " + r.name);
    top = std::max(top, r.dim);
  }
  auto X = std::make_shared<SSet>();
  for (int k = 0; k <= top; ++k) {
    std::vector<const RawSimplex*> here;
    for (auto& r : raw)
      if (r.dim == k) here.push_back(&r);
    std::sort(here.begin(), here.end(),
              [](const RawSimplex* a, const RawSimplex* b) { return a->name < b->name; });
    for (auto* r : here) {
      int want = k == 0 ? 0 : k + 1;
      if (static_cast<int>(r->faces.size()) != want)
        fail(ErrorKind::DanglingFace, r->name + " lists " + std::to_string(r->faces.size()) +
                                          " faces, expected " + std::to_string(want));
      std::vector<Cell> faces;
      for (auto& f : r->faces) faces.push_back(parse_cell(*X, f, k - 1));
      X->add_generator(k, r->name, std::move(faces));
    }
  }
  for (int k = 2; k <= X->top(); ++k)
    for (Idx g = 0; g < X->ngen(k); ++g)
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i) {
          Cell a = X->face_cell(i, X->gen_face(k, g, j));
          Cell b = X->face_cell(j - 1, X->gen_face(k, g, i));
          if (!(a == b))
            fail(ErrorKind::SimplicialIdentityViolation,
                 "d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                     std::to_string(j - 1) + "d" + std::to_string(i) + " fails on " +
                     X->gen_name(k, g));
        }
  X->trunc = trunc;
  return X;
}

}  // namespace skan
