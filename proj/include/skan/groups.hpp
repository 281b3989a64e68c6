#pragma once

#include "skan/bisimplicial.hpp"
#include "skan/core.hpp"
#include "skan/invariants.hpp"

namespace skan {

/// Finite group. Either a full multiplication table or a direct product of
/// factors multiplied componentwise (elements in mixed radix, first factor
/// slowest).
struct FinGroup {
  std::vector<std::string> names;
  std::vector<Idx> table;  // table[a * order + b]
  std::vector<std::shared_ptr<const FinGroup>> factors;
  Idx e = 0;
  std::vector<Idx> inv;

  std::size_t order() const { return names.size(); }
  Idx mul(Idx a, Idx b) const;
  std::vector<Idx> split(Idx a) const;  // product coordinates
  Idx join(const std::vector<Idx>& c) const;
  bool abelian() const;
  std::optional<Idx> find(const std::string& name) const;
  /// Full table check of the group axioms (factors are checked separately).
  void validate() const;
};
using FinGroupP = std::shared_ptr<const FinGroup>;

/// From a table; identity and inverses are derived and the axioms checked.
FinGroup group_from_table(std::vector<std::string> names, std::vector<Idx> table);
FinGroup cyclic_group(int n);
FinGroup trivial_group();
FinGroup symmetric3();
FinGroup direct_product(const std::vector<FinGroupP>& factors);
/// The same product, named by factor names joined with `sep` inside `open`/`close`.
FinGroup direct_product(const std::vector<FinGroupP>& factors, const std::string& open, const std::string& sep,
                        const std::string& close);

/// Levelwise finite simplicial group through `bound`.
struct SGroup {
  int bound = -1;
  std::vector<FinGroupP> levels;
  std::vector<std::vector<std::vector<Idx>>> face, degen;  // [n][i][g]
  SSetP set;                                               // underlying simplicial set, truncated at bound
  std::vector<std::vector<Idx>> to, from;                  // group element <-> set index

  const FinGroup& at(int n) const { return *levels[n]; }
  bool abelian() const;
  /// Operators are homomorphisms and satisfy the simplicial identities.
  void validate() const;
  Idx mul(int n, Idx a, Idx b) const { return levels[n]->mul(a, b); }
};
using SGroupP = std::shared_ptr<const SGroup>;

/// Builds the underlying simplicial set; call after filling levels and operators.
SGroupP finish_sgroup(SGroup G);
SGroupP const_sgroup(FinGroupP H, int bound);
SGroupP sgroup_product(SGroupP A, SGroupP B);

/// Group action P x G -> P, given levelwise on P's level indices.
struct GAction {
  SSetP P;
  SGroupP G;
  std::vector<std::vector<Idx>> act;  // act[n][p * |G_n| + g]

  Idx apply(int n, Idx p, Idx g) const { return act[n][p * G->at(n).order() + g]; }
  int bound() const;
  /// Unit, associativity and compatibility with the simplicial operators.
  void validate() const;
  bool free() const;
  /// Orbit labels (smallest element of each orbit) through bound().
  std::vector<std::vector<Idx>> orbits() const;
};

struct GBundle {
  GAction action;
  SSetP base;
  SMap proj;
  /// Action validity and equivariance of proj.
  void validate() const;
};

/// Classifying simplicial set, by the level formula with a verified
/// isomorphism to the total of the levelwise nerve.
struct Wbar {
  SGroupP G;
  KeyedSet K;  // keys (b_0..b_{n-1}) with b_p in G_p
  SSetP X() const { return K.X; }
  Idx index_of(int n, const Key& b) const { return K.index_of(n, b); }
};
Wbar wbar(SGroupP G, int bound);
/// Level formula only; the cross-check is skipped.
Wbar wbar_formula(SGroupP G, int bound);
/// Levelwise nerve: B_{p,q} = G_p^q.
BiSSet group_nerve(SGroupP G, int P, int Q);
/// Checks that the level formula and the total of the nerve agree through
/// `bound` by an explicit bijection commuting with all operators; throws
/// CrossCheckMismatch otherwise.
void wbar_cross_check(const Wbar& W, int bound);
/// Operators of the level formula on keys (b_0..b_{n-1}).
Key wbar_face(const SGroup& G, int n, int i, const Key& b);
Key wbar_degen(const SGroup& G, int n, int i, const Key& b);

/// For abelian A, the simplicial abelian group structure on the level formula.
SGroupP wbar_group(SGroupP A, int bound);
SGroupP wbar_iter_group(SGroupP A, int k, int bound);
SSetP wbar_iter(SGroupP A, int k, int bound);

struct WBundle {
  Wbar W;        // at bound + 1
  Dec0Result D;  // WG = Dec0 of W
  KeyedSet WG;   // level formula (b_0..b_n), b_p in G_p
  SMap fib;      // WG -> Wbar G
  SMap iso;      // level formula -> Dec0
  GBundle bundle;
};
WBundle w_bundle(SGroupP G, int bound);

/// Kan loop group as a levelwise presentation.
struct SGroupPresentation {
  int bound = -1;
  std::vector<FPGroup> levels;
  std::vector<std::vector<std::vector<Word>>> face, degen;  // [n][i][gen]
  void validate() const;
  FPGroup pi0() const;
};
Word substitute(const Word& w, const std::vector<Word>& images);
SGroupPresentation kan_loop_group(SSetP Y, int bound);

SGroupP dold_kan_em(FinGroupP pi, int n, int bound);

struct G0Sequence {
  SGroupP G0;  // constant on G_0
  SMap incl;   // G0 -> G
  QuotientResult quot;
  KanReport fibration;
  std::optional<SMap> fiber_iso;  // fiber over the base vertex -> G0
};
G0Sequence g0_sequence(SGroupP G);

struct PostnikovStage {
  QuotientResult Q;
  KanReport source_kan;
};
PostnikovStage postnikov_stage(SSetP X, int n);

/// F_p coordinates for an elementary abelian simplicial group.
LinearTarget linear_target(const SGroup& A, int p);

}  // namespace skan
