#pragma once

#include "skan/core.hpp"
#include "skan/invariants.hpp"

namespace skan {

/**
 * Bisimplicial set stored as explicit tables for bidegrees p <= P, q <= Q.
 * The first index is horizontal.
 */
struct BiSSet {
  int P = -1, Q = -1;
  std::vector<std::vector<std::vector<std::string>>> names;              // [p][q][x]
  std::vector<std::vector<std::vector<std::vector<Idx>>>> hface, vface;  // [p][q][i][x]
  std::vector<std::vector<std::vector<std::vector<Idx>>>> hdegen, vdegen;

  std::size_t size(int p, int q) const { return names[p][q].size(); }
  void require(int p, int q, const char* who) const;
  /// Identities in each direction and commutation of the two directions.
  void validate() const;
};

/// Builder from keyed elements; operators are computed on keys.
struct BiKeyFns {
  std::function<Key(int p, int q, int i, const Key&)> hface, vface, hdegen, vdegen;
  std::function<std::string(int p, int q, const Key&)> name;
};
BiSSet build_bisimplicial(int P, int Q, const std::vector<std::vector<std::vector<Key>>>& elems,
                          const BiKeyFns& f);

/// Constant in the horizontal direction: B_{p,q} = X_q.
BiSSet const_bisimplicial(SSetP X, int P, int Q);

SSetP diagonal(const BiSSet& B);

using TotalResult = KeyedSet;
TotalResult total(const BiSSet& B, int bound);

/// Total decalage: (Dec X)_{k,l} = X_{k+l+1}.
BiSSet total_dec(SSetP X, int P, int Q);

struct Dec0Result {
  SSetP D;
  SMap proj;                          // d_{n+1}
  std::vector<std::vector<Idx>> of;   // of[n][x]: the simplex of X_{n+1}
  SSetP vertices;                     // const X_0
  SMap section;                       // const X_0 -> Dec0 X
  SMap retraction;                    // Dec0 X -> const X_0 (last vertex)
  WeCert retract;                     // section is a deformation retract
};
Dec0Result dec0(SSetP X, int bound);

/// Discrete simplicial set on the vertices of X.
SSetP discrete(const std::vector<std::string>& names);

struct CanonicalMaps {
  SMap d_to_total;  // dB -> total B
  TotalResult tot;
};
CanonicalMaps diagonal_to_total(const BiSSet& B, int bound);
struct UnitMap {
  SMap unit;  // X -> total Dec X
  TotalResult tot;
};
UnitMap total_unit(SSetP X, int bound);

/// Number of bisimplicial maps Dec X -> B, for finite X of dimension < min(P, Q).
std::size_t hom_bis_count(SSetP X, const BiSSet& B, std::size_t budget = 1'000'000);

}  // namespace skan
