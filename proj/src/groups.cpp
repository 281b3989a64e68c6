#include "skan/groups.hpp"

#include <algorithm>

namespace skan {

Idx FinGroup::mul(Idx a, Idx b) const {
  if (!table.empty()) return table[a * order() + b];
  auto ca = split(a), cb = split(b);
  for (std::size_t i = 0; i < factors.size(); ++i) ca[i] = factors[i]->mul(ca[i], cb[i]);
  return join(ca);
}

std::vector<Idx> FinGroup::split(Idx a) const {
  std::vector<Idx> c(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    Idx m = static_cast<Idx>(factors[i]->order());
    c[i] = a % m;
    a /= m;
  }
  return c;
}

Idx FinGroup::join(const std::vector<Idx>& c) const {
  Idx a = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) a = a * static_cast<Idx>(factors[i]->order()) + c[i];
  return a;
}

bool FinGroup::abelian() const {
  if (table.empty()) return std::all_of(factors.begin(), factors.end(), [](auto& f) { return f->abelian(); });
  for (Idx a = 0; a < order(); ++a)
    for (Idx b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<Idx> FinGroup::find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Idx>(it - names.begin());
}

void FinGroup::validate() const {
  if (names.empty()) fail(ErrorKind::SchemaError, "group has no elements");
  if (table.empty()) {
    for (auto& f : factors) f->validate();
    return;
  }
  std::size_t n = order();
  if (table.size() != n * n) fail(ErrorKind::SchemaError, "multiplication table has the wrong size");
  for (Idx v : table)
    if (v >= n) fail(ErrorKind::SchemaError, "multiplication table entry out of range");
  for (Idx a = 0; a < n; ++a) {
    if (mul(e, a) != a || mul(a, e) != a) fail(ErrorKind::SchemaError, "identity law fails at " + names[a]);
    if (mul(a, inv[a]) != e || mul(inv[a], a) != e) fail(ErrorKind::SchemaError, "inverse law fails at " + names[a]);
    for (Idx b = 0; b < n; ++b)
      for (Idx c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(ErrorKind::SchemaError, "associativity fails at " + names[a] + "," + names[b] + "," + names[c]);
  }
}

FinGroup group_from_table(std::vector<std::string> names, std::vector<Idx> table) {
  FinGroup G;
  G.names = std::move(names);
  G.table = std::move(table);
  std::size_t n = G.order();
  if (n == 0 || G.table.size() != n * n) fail(ErrorKind::SchemaError, "multiplication table has the wrong size");
  for (Idx v : G.table)
    if (v >= n) fail(ErrorKind::SchemaError, "multiplication table entry out of range");
  bool found = false;
  for (Idx a = 0; a < n && !found; ++a) {
    bool ok = true;
    for (Idx b = 0; b < n && ok; ++b) ok = G.table[a * n + b] == b && G.table[b * n + a] == b;
    if (ok) G.e = a, found = true;
  }
  if (!found) fail(ErrorKind::SchemaError, "table has no identity element");
  G.inv.assign(n, 0);
  for (Idx a = 0; a < n; ++a) {
    Idx b = 0;
    while (b < n && G.table[a * n + b] != G.e) ++b;
    if (b == n) fail(ErrorKind::SchemaError, G.names[a] + " has no inverse");
    G.inv[a] = b;
  }
  G.validate();
  return G;
}

FinGroup cyclic_group(int n) {
  std::vector<std::string> names;
  std::vector<Idx> t;
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t.push_back(static_cast<Idx>((a + b) % n));
  }
  return group_from_table(names, t);
}

FinGroup trivial_group() { return cyclic_group(1); }

FinGroup symmetric3() {
  // permutations of {0,1,2} in lexicographic order; ab means apply b first
  std::vector<std::vector<int>> perms;
  std::vector<int> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (auto& q : perms) names.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  std::vector<Idx> t;
  for (auto& a : perms)
    for (auto& b : perms) {
      std::vector<int> c = {a[b[0]], a[b[1]], a[b[2]]};
      t.push_back(static_cast<Idx>(std::find(perms.begin(), perms.end(), c) - perms.begin()));
    }
  return group_from_table(names, t);
}

FinGroup direct_product(const std::vector<FinGroupP>& factors, const std::string& open, const std::string& sep,
                        const std::string& close) {
  FinGroup G;
  G.factors = factors;
  std::size_t n = 1;
  for (auto& f : factors) n *= f->order();
  G.names.resize(n);
  G.inv.resize(n);
  std::vector<Idx> c(factors.size());
  std::vector<Idx> ec(factors.size()), ic(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) ec[i] = factors[i]->e;
  G.e = G.join(ec);
  for (Idx a = 0; a < n; ++a) {
    c = G.split(a);
    std::string s = open;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      s += (i ? sep : "") + factors[i]->names[c[i]];
      ic[i] = factors[i]->inv[c[i]];
    }
    G.names[a] = s + close;
    G.inv[a] = G.join(ic);
  }
  return G;
}

FinGroup direct_product(const std::vector<FinGroupP>& factors) { return direct_product(factors, "(", ",", ")"); }

bool SGroup::abelian() const {
  return std::all_of(levels.begin(), levels.end(), [](auto& g) { return g->abelian(); });
}

namespace {

// Elements whose left translates reach every element; enough to test homomorphisms.
std::vector<Idx> generators(const FinGroup& G) {
  if (!G.table.empty()) {
    std::vector<Idx> all(G.order());
    for (Idx a = 0; a < G.order(); ++a) all[a] = a;
    return all;
  }
  std::vector<Idx> gens;
  std::vector<Idx> c(G.factors.size());
  for (std::size_t i = 0; i < G.factors.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = G.factors[j]->e;
    for (Idx g : generators(*G.factors[i])) {
      c[i] = g;
      gens.push_back(G.join(c));
    }
  }
  return gens;
}

void check_hom(const FinGroup& A, const FinGroup& B, const std::vector<Idx>& f, const std::string& what) {
  if (f.size() != A.order()) fail(ErrorKind::SchemaError, what + " has the wrong number of entries");
  for (Idx v : f)
    if (v >= B.order()) fail(ErrorKind::SchemaError, what + " leaves its target group");
  if (f[A.e] != B.e) fail(ErrorKind::SchemaError, what + " does not preserve the identity");
  // f(gb) = f(g)f(b) for generators g forces f to be a homomorphism
  for (Idx g : generators(A))
    for (Idx b = 0; b < A.order(); ++b)
      if (f[A.mul(g, b)] != B.mul(f[g], f[b]))
        fail(ErrorKind::SchemaError, what + " is not a homomorphism at " + A.names[g] + "," + A.names[b]);
}

LevelData group_levels(const SGroup& G) {
  LevelData d;
  d.N = G.bound;
  for (int n = 0; n <= G.bound; ++n) {
    d.names.push_back(G.at(n).names);
    d.face.push_back(G.face[n]);
    d.degen.push_back(n < G.bound ? G.degen[n] : std::vector<std::vector<Idx>>{});
  }
  return d;
}

}  // namespace

void SGroup::validate() const {
  for (int n = 0; n <= bound; ++n) {
    at(n).validate();
    if (n > 0)
      for (int i = 0; i <= n; ++i)
        check_hom(at(n), at(n - 1), face[n][i], "d" + std::to_string(i) + " at level " + std::to_string(n));
    if (n < bound)
      for (int i = 0; i <= n; ++i)
        check_hom(at(n), at(n + 1), degen[n][i], "s" + std::to_string(i) + " at level " + std::to_string(n));
  }
  check_identities(group_levels(*this));
}

SGroupP finish_sgroup(SGroup G) {
  G.face.resize(G.bound + 1);
  G.degen.resize(G.bound + 1);
  Built b = normalize_levels(group_levels(G), false);
  G.set = b.X;
  G.to = b.to;
  G.from.resize(G.bound + 1);
  for (int n = 0; n <= G.bound; ++n) {
    G.from[n].resize(G.to[n].size());
    for (Idx g = 0; g < G.to[n].size(); ++g) G.from[n][G.to[n][g]] = g;
  }
  return std::make_shared<const SGroup>(std::move(G));
}

SGroupP const_sgroup(FinGroupP H, int bound) {
  SGroup G;
  G.bound = bound;
  std::vector<Idx> id(H->order());
  for (Idx a = 0; a < id.size(); ++a) id[a] = a;
  G.levels.assign(bound + 1, H);
  G.face.resize(bound + 1);
  G.degen.resize(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    if (n > 0) G.face[n].assign(n + 1, id);
    if (n < bound) G.degen[n].assign(n + 1, id);
  }
  return finish_sgroup(std::move(G));
}

SGroupP sgroup_product(SGroupP A, SGroupP B) {
  SGroup G;
  G.bound = std::min(A->bound, B->bound);
  G.face.resize(G.bound + 1);
  G.degen.resize(G.bound + 1);
  for (int n = 0; n <= G.bound; ++n) G.levels.push_back(std::make_shared<FinGroup>(direct_product({A->levels[n], B->levels[n]})));
  auto pair = [&](int from, int to, const std::vector<Idx>& fa, const std::vector<Idx>& fb) {
    std::vector<Idx> out(G.at(from).order());
    for (Idx x = 0; x < out.size(); ++x) {
      auto c = G.at(from).split(x);
      out[x] = G.at(to).join({fa[c[0]], fb[c[1]]});
    }
    return out;
  };
  for (int n = 0; n <= G.bound; ++n) {
    if (n > 0)
      for (int i = 0; i <= n; ++i) G.face[n].push_back(pair(n, n - 1, A->face[n][i], B->face[n][i]));
    if (n < G.bound)
      for (int i = 0; i <= n; ++i) G.degen[n].push_back(pair(n, n + 1, A->degen[n][i], B->degen[n][i]));
  }
  return finish_sgroup(std::move(G));
}

int GAction::bound() const { return P->finite() ? G->bound : std::min(G->bound, P->limit()); }

void GAction::validate() const {
  int N = bound();
  if (static_cast<int>(act.size()) < N + 1) fail(ErrorKind::SchemaError, "action is missing levels");
  for (int n = 0; n <= N; ++n) {
    const FinGroup& Gn = G->at(n);
    if (act[n].size() != P->size(n) * Gn.order())
      fail(ErrorKind::SchemaError, "action table at level " + std::to_string(n) + " has the wrong size");
    for (Idx p = 0; p < P->size(n); ++p) {
      if (apply(n, p, Gn.e) != p) fail(ErrorKind::SchemaError, "unit law fails at " + P->name(n, p));
      for (Idx g = 0; g < Gn.order(); ++g) {
        Idx pg = apply(n, p, g);
        for (Idx h = 0; h < Gn.order(); ++h)
          if (apply(n, pg, h) != apply(n, p, Gn.mul(g, h)))
            fail(ErrorKind::SchemaError, "associativity fails at " + P->name(n, p));
        if (n > 0)
          for (int i = 0; i <= n; ++i)
            if (P->face(n, i, pg) != apply(n - 1, P->face(n, i, p), G->face[n][i][g]))
              fail(ErrorKind::SimplicialIdentityViolation,
                   "action does not commute with d" + std::to_string(i) + " at " + P->name(n, p));
        if (n < N)
          for (int i = 0; i <= n; ++i)
            if (P->degen(n, i, pg) != apply(n + 1, P->degen(n, i, p), G->degen[n][i][g]))
              fail(ErrorKind::SimplicialIdentityViolation,
                   "action does not commute with s" + std::to_string(i) + " at " + P->name(n, p));
      }
    }
  }
}

bool GAction::free() const {
  for (int n = 0; n <= bound(); ++n) {
    const FinGroup& Gn = G->at(n);
    for (Idx p = 0; p < P->size(n); ++p)
      for (Idx g = 0; g < Gn.order(); ++g)
        if (g != Gn.e && apply(n, p, g) == p) return false;
  }
  return true;
}

std::vector<std::vector<Idx>> GAction::orbits() const {
  std::vector<std::vector<Idx>> cls(bound() + 1);
  for (int n = 0; n <= bound(); ++n) {
    cls[n].resize(P->size(n));
    for (Idx p = 0; p < P->size(n); ++p) {
      Idx m = p;
      for (Idx g = 0; g < G->at(n).order(); ++g) m = std::min(m, apply(n, p, g));
      cls[n][p] = m;
    }
  }
  return cls;
}

void GBundle::validate() const {
  action.validate();
  proj.validate();
  if (proj.src != action.P) fail(ErrorKind::SchemaError, "projection does not start at the total space");
  for (int n = 0; n <= action.bound(); ++n)
    for (Idx p = 0; p < action.P->size(n); ++p) {
      Idx b = proj.at(n, p);
      for (Idx g = 0; g < action.G->at(n).order(); ++g)
        if (proj.at(n, action.apply(n, p, g)) != b)
          fail(ErrorKind::SchemaError, "projection is not invariant at " + action.P->name(n, p));
    }
}

LinearTarget linear_target(const SGroup& A, int p) {
  return make_linear_target(
      *A.set, A.bound, p, [&](int n, Idx a, Idx b) { return A.to[n][A.mul(n, A.from[n][a], A.from[n][b])]; },
      [&](int n) { return A.to[n][A.at(n).e]; });
}

}  // namespace skan
