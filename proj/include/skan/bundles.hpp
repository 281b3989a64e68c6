#pragma once

#include "skan/bisimplicial.hpp"
#include "skan/groups.hpp"

namespace skan {

/// Right action of G on itself by multiplication, and the trivial action.
GAction translation_action(SGroupP G);
GAction trivial_action(SSetP P, SGroupP G);

/// (P//G)_{p,q} = P_p x G_p^q; the first index is the simplicial direction of P.
struct ActionGroupoid {
  BiSSet B;
  GAction a;
  /// Decode an element of bidegree (p, q) into (p-index, g_1..g_q).
  std::pair<Idx, Key> decode(int p, int q, Idx x) const;
};
ActionGroupoid action_groupoid(const GAction& a, int bound);

struct HomotopyQuotient {
  TotalResult tot;          // total of the action groupoid
  ProductResult PW;         // P x WG
  WBundle U;                // universal bundle used for the Borel side
  QuotientResult borel;     // (P x WG)/G
  SMap iso;                 // borel -> tot
  /// Level formula check: |tot_n| = |P_n| * prod_{p<n} |G_p|.
  bool level_formula_holds = false;
  Key wbar_key(int n, Idx x) const;  // (b_0..b_{n-1}) of a total simplex
  Idx p_part(int n, Idx x) const;    // P-component at level n
  /// The total simplex with P-component p and wbar part b.
  Idx index_of(int n, Idx p, const Key& b) const;
  ActionGroupoid AG;
};
HomotopyQuotient homotopy_quotient(const GAction& a, int bound);

/// Iterated product and fiber product with componentwise access.
struct Tuples {
  SSetP X;
  std::vector<ProductResult> stages;
  std::vector<Idx> decode(int n, Idx x) const;
  Idx encode(int n, const std::vector<Idx>& c) const;
};
Tuples iterated_product(const std::vector<SSetP>& parts);
/// P x_X P x_X ... (k factors) for proj: P -> X.
Tuples iterated_fiber_product(const SMap& proj, int k);

struct Shear {
  Tuples src;  // P x G^n
  Tuples tgt;  // P^{x_X (n+1)}
  SMap map;    // (p, g_1..g_n) -> (p, p g_1, ..., p g_n)
};
Shear shear(const GBundle& b, int n);

enum class Principality { Strict, Weak, Fail, Inconclusive };
const char* principality_name(Principality p);
struct PrincipalityReport {
  Principality kind = Principality::Inconclusive;
  std::optional<WeCert> cert;
  KanReport fibration;
  std::string detail;
};
PrincipalityReport classify_principality(const GBundle& b, Policy policy, int bound = 3);

/// Plain quotient P/G, with the induced map to the base.
struct OrbitQuotient {
  QuotientResult Q;
  SMap to_base;
};
OrbitQuotient orbit_quotient(const GBundle& b);

GBundle pullback_bundle(const SMap& f, const GBundle& b, ProductResult* fiber = nullptr);
GBundle pushforward_bundle(const SMap& p, const GBundle& b, int bound = 3);

struct TwistingFunction {
  SSetP X;
  SGroupP G;
  std::vector<std::vector<Idx>> gen;  // gen[n][g]: value on generator g of level n >= 1
  Idx at(int n, Idx x) const;         // any simplex of level n >= 1, in G_{n-1}
  void validate() const;
  /// The classifying map X -> Wbar G.
  SMap classifying_map(const Wbar& W) const;
};
TwistingFunction constant_twisting(SSetP X, SGroupP G);

struct TwistedProduct {
  KeyedSet K;  // keys (x, g)
  GBundle bundle;
};
TwistedProduct twisted_product(const TwistingFunction& t);

std::vector<TwistingFunction> enumerate_twistings(SSetP X, SGroupP G, std::size_t budget = 1'000'000);
/// A gauge transformation identifying the two twisted products, if one exists.
std::optional<std::vector<std::vector<Idx>>> twisting_gauge(const TwistingFunction& a, const TwistingFunction& b);

struct CechNerve {
  BiSSet B;
  TotalResult tot;
  SMap total_proj;  // sigma* C -> X
  std::vector<std::vector<std::vector<Key>>> keys;  // keys[p][q][x]: (y_0..y_q)
};
CechNerve cech_nerve(const SMap& f, int bound);

/// A cover by subcomplexes, with its coproduct map.
struct Cover {
  SSetP X;
  std::vector<SubResult> parts;
  CoproductResult U;
  SMap map;  // U -> X
};
Cover make_cover(SSetP X, const std::vector<std::vector<std::string>>& generators);

struct Associated {
  SSetP E;
  SMap proj;
  bool plain = true;  // false when the homotopy quotient was used
};
Associated associated(const GBundle& b, const GAction& V, int bound = 3);

}  // namespace skan
