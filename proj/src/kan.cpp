#include <unordered_set>

#include "skan/core.hpp"

namespace skan {
namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Idx>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Idx x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Lifting of (d_i x_i for i != k) together with a target simplex; k = -1 means
// the whole boundary is prescribed.
std::optional<std::string> lift_check(const SMap& f, int n, int k) {
  const SSet& X = *f.src;
  const SSet& Y = *f.tgt;
  std::vector<Idx> fn = f.level(n), fn1 = f.level(n - 1);
  std::unordered_set<std::vector<Idx>, VecHash> fill;
  for (Idx x = 0; x < X.size(n); ++x) {
    std::vector<Idx> key{fn[x]};
    for (int i = 0; i <= n; ++i)
      if (i != k) key.push_back(X.face(n, i, x));
    fill.insert(std::move(key));
  }
  std::vector<std::vector<Idx>> byF(Y.size(n - 1));
  for (Idx x = 0; x < X.size(n - 1); ++x) byF[fn1[x]].push_back(x);
  std::vector<int> slots;
  for (int i = 0; i <= n; ++i)
    if (i != k) slots.push_back(i);
  std::vector<Idx> chosen(n + 1);
  std::optional<std::string> bad;
  for (Idx y = 0; y < Y.size(n) && !bad; ++y) {
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
      if (bad) return;
      if (p == slots.size()) {
        std::vector<Idx> key{y};
        for (int i : slots) key.push_back(chosen[i]);
        if (!fill.count(key)) {
          std::string s = (k < 0 ? "boundary" : "horn") + std::string(" of dimension ") +
                          std::to_string(n) + (k < 0 ? "" : " missing face " + std::to_string(k)) +
                          " over " + Y.name(n, y) + ": ";
          for (std::size_t q = 0; q < slots.size(); ++q)
            s += (q ? ", " : "") + std::string("d") + std::to_string(slots[q]) + "=" +
                 X.name(n - 1, chosen[slots[q]]);
          bad = s;
        }
        return;
      }
      int j = slots[p];
      for (Idx x : byF[Y.face(n, j, y)]) {
        bool ok = true;
        for (std::size_t q = 0; q < p && ok; ++q) {
          int i = slots[q];  // i < j
          if (n >= 2) ok = X.face(n - 1, i, x) == X.face(n - 1, j - 1, chosen[i]);
        }
        if (!ok) continue;
        chosen[j] = x;
        rec(p + 1);
        if (bad) return;
      }
    };
    rec(0);
  }
  return bad;
}

}  // namespace

KanReport check_kan(const SMap& f, int upto) {
  KanReport r;
  f.src->require(upto, "check_kan");
  f.tgt->require(upto, "check_kan");
  for (int n = 1; n <= upto; ++n) {
    for (int k = 0; k <= n; ++k) {
      if (auto bad = lift_check(f, n, k)) {
        r.ok = false;
        r.dimension = n;
        r.horn = k;
        r.detail = *bad;
        r.checked_upto = n - 1;
        return r;
      }
    }
    r.checked_upto = n;
  }
  return r;
}

KanReport check_kan(SSetP X, int upto) {
  auto pt = point();
  return check_kan(SMap::constant(X, pt, 0), upto);
}

KanReport check_acyclic_fibration(const SMap& f, int upto) {
  KanReport r;
  f.src->require(upto, "check_acyclic_fibration");
  f.tgt->require(upto, "check_acyclic_fibration");
  std::vector<Idx> f0 = f.level(0);
  std::vector<char> hit(f.tgt->size(0), 0);
  for (Idx v : f0) hit[v] = 1;
  for (Idx v = 0; v < hit.size(); ++v)
    if (!hit[v]) {
      r.ok = false;
      r.dimension = 0;
      r.detail = "vertex " + f.tgt->name(0, v) + " has empty fiber";
      return r;
    }
  for (int n = 1; n <= upto; ++n) {
    if (auto bad = lift_check(f, n, -1)) {
      r.ok = false;
      r.dimension = n;
      r.detail = *bad;
      r.checked_upto = n - 1;
      return r;
    }
    r.checked_upto = n;
  }
  return r;
}

}  // namespace skan
