#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skan/error.hpp"

namespace skan {

using Idx = std::uint32_t;

/// Monotone map [m] -> [n]; entry j is the image of j.
using Mono = std::vector<int>;

Mono face_map(int n, int i);    // coface [n-1] -> [n] skipping i
Mono degen_map(int n, int i);   // codegeneracy [n+1] -> [n] hitting i twice
Mono compose(const Mono& a, const Mono& b);  // a after b
Mono identity_map(int n);

/**
 * A simplex in Eilenberg-Zilber normal form: the degeneracy of a
 * nondegenerate generator along a surjection [n] -> [k]. Bit j of `mask`
 * is set when the surjection sends j and j+1 to the same vertex.
 */
struct Cell {
  int n = 0;
  int k = 0;
  Idx gen = 0;
  std::uint32_t mask = 0;

  bool degenerate() const { return n != k; }
  std::vector<int> word() const;  // degeneracy indices, outermost first (strictly decreasing)
  Mono surjection() const;
  friend bool operator==(const Cell& a, const Cell& b) {
    return a.n == b.n && a.k == b.k && a.gen == b.gen && a.mask == b.mask;
  }
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.k != b.k) return a.k > b.k;
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.gen < b.gen;
  }
};

inline Cell nondeg(int k, Idx g) { return Cell{k, k, g, 0}; }
Cell degenerate_cell(const Mono& surj, int k, Idx g);

/**
 * Finite (or explicitly truncated) simplicial set stored by its
 * nondegenerate generators and their faces. Levels are materialized on
 * demand; in every level the nondegenerate simplices come first, in
 * generator order.
 */
class SSet {
 public:
  SSet() = default;

  // --- generators
  int top() const { return static_cast<int>(names_.size()) - 1; }
  std::size_t ngen(int k) const { return k >= 0 && k <= top() ? names_[k].size() : 0; }
  const std::string& gen_name(int k, Idx g) const { return names_[k][g]; }
  const Cell& gen_face(int k, Idx g, int i) const { return faces_[k][g][i]; }
  std::optional<Idx> find_gen(int k, const std::string& name) const;
  std::size_t total_generators() const;

  Idx add_generator(int k, std::string name, std::vector<Cell> faces);

  /// Highest level with known data. Truncated sets refuse to go further.
  std::optional<int> trunc;
  std::optional<int> coskeletal_above;
  int limit() const { return trunc ? *trunc : INT_MAX; }
  bool finite() const { return !trunc.has_value(); }
  void require(int n, const char* who = "") const;
  bool empty() const { return ngen(0) == 0; }

  // --- simplices
  std::size_t size(int n) const;
  Idx face(int n, int i, Idx x) const;
  Idx degen(int n, int i, Idx x) const;
  Idx act(const Mono& theta, int n, Idx x) const;
  const Cell& cell(int n, Idx x) const;
  Idx index(const Cell& c) const;
  std::optional<Idx> find(const Cell& c) const;
  Cell act_cell(const Mono& theta, const Cell& c) const;
  Cell face_cell(int i, const Cell& c) const { return act_cell(face_map(c.n, i), c); }
  Cell degen_cell(int i, const Cell& c) const { return act_cell(degen_map(c.n, i), c); }
  /// The totally degenerate n-simplex on vertex v.
  Idx point_at(int n, Idx v) const;
  Idx vertex(int n, Idx x, int j) const;  // j-th vertex of a level-n simplex

  std::string cell_name(const Cell& c) const;
  std::string name(int n, Idx x) const { return cell_name(cell(n, x)); }

 private:
  struct Level {
    std::vector<Cell> cells;
    std::unordered_map<std::uint64_t, Idx> index;
    std::vector<std::vector<Idx>> face;   // face[i][x]
    std::vector<std::vector<Idx>> degen;  // degen[i][x], filled once level n+1 exists
  };
  void materialize(int n) const;
  const Cell& sub(int k, Idx g, std::uint32_t subset) const;
  static std::uint64_t key(const Cell& c);

  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<Cell>>> faces_;
  std::vector<std::unordered_map<std::string, Idx>> by_name_;
  mutable std::vector<Level> levels_;
  mutable std::vector<std::vector<std::vector<Cell>>> subs_;
  mutable std::vector<std::vector<std::vector<char>>> sub_ready_;
};

using SSetP = std::shared_ptr<const SSet>;

/// Explicit level tables, the common output format of constructions.
struct LevelData {
  int N = -1;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<Idx>>> face;   // face[n][i][x]
  std::vector<std::vector<std::vector<Idx>>> degen;  // degen[n][i][x], n < N
  std::size_t size(int n) const { return names[n].size(); }
};

/// Throws SimplicialIdentityViolation naming the identity and element.
void check_identities(const LevelData& d);

struct Built {
  SSetP X;
  std::vector<std::vector<Idx>> to;  // to[n][x]: index of element x inside X
};

/// Convert level tables to normal form. With `finite`, every simplex above N
/// is taken to be degenerate; otherwise the result is truncated at N.
Built normalize_levels(const LevelData& d, bool finite);

using Key = std::vector<int>;
using KeyFn = std::function<Key(int n, int i, const Key&)>;
LevelData build_levels(int N, const std::vector<std::vector<Key>>& elems, const KeyFn& face,
                       const KeyFn& degen, const std::function<std::string(int, const Key&)>& name);

/// A normalized simplicial set that remembers the key of every element.
struct KeyedSet {
  SSetP X;
  std::vector<std::vector<Key>> tuples;  // tuples[n][e], sorted
  Built built;
  std::vector<std::map<Key, Idx>> lookup;
  std::vector<std::vector<Idx>> elem_of;  // X index -> element
  Idx index_of(int n, const Key& t) const;
  Key tuple_of(int n, Idx x) const { return tuples[n][elem_of[n][x]]; }
};
/// Keys are sorted per level before building.
KeyedSet keyed_levels(int N, std::vector<std::vector<Key>> keys, const KeyFn& face, const KeyFn& degen,
                      const std::function<std::string(int, const Key&)>& name, bool finite);

/// Simplicial map, stored as one target cell per source generator.
struct SMap {
  SSetP src, tgt;
  std::vector<std::vector<Cell>> img;

  Cell at_cell(const Cell& c) const;
  Idx at(int n, Idx x) const;
  std::vector<Idx> level(int n) const;
  void validate() const;

  static SMap from_function(SSetP s, SSetP t, const std::function<Idx(int, Idx)>& f);
  static SMap identity(SSetP X);
  static SMap constant(SSetP s, SSetP t, Idx vertex);
};

SMap compose(const SMap& g, const SMap& f);  // g after f
bool same_map(const SMap& a, const SMap& b);
/// Bijective on every level through `upto` (or on generators when both are finite).
bool is_iso(const SMap& f, int upto = -1);
std::optional<SMap> inverse(const SMap& f);

// --- standard objects
enum class StdKind { Simplex, Boundary, Horn, SphereMin, CircleMin };
SSetP generate_standard(StdKind kind, int n, int k = -1);
SSetP simplex(int n);
SSetP point();
SSetP empty_sset();
SSetP circle_min();
/// Index of the simplex of Delta[n] given by a monotone vertex sequence.
Idx simplex_index(const SSet& Dn, const Mono& seq);
/// Simplicial map Delta[m] -> Delta[n] induced by a monotone map.
SMap simplex_map(SSetP Dm, SSetP Dn, const Mono& theta);

/// Nerve of a finite poset; names by element labels.
struct Poset {
  std::vector<std::string> labels;
  std::function<bool(int, int)> leq;
};
SSetP poset_nerve(const Poset& P);
/// Cell of a poset nerve spanned by a weakly increasing chain.
Cell chain_cell(const SSet& nerve, const std::vector<int>& chain);

struct RawSimplex {
  std::string name;
  int dim = 0;
  std::vector<std::string> faces;  // cell expressions, d_0 first
  std::string degenerate_of;       // non-empty when the entry declares itself degenerate
};
SSetP normalize(const std::vector<RawSimplex>& raw, std::optional<int> trunc = std::nullopt);
Cell parse_cell(const SSet& X, const std::string& expr, int level);

// --- limits, colimits, truncations
struct CoproductResult {
  SSetP X;
  std::vector<SMap> inj;
};
CoproductResult coproduct(const std::vector<SSetP>& parts);

struct ProductResult {
  SSetP X;
  SMap p1, p2;
  std::vector<std::vector<std::pair<Idx, Idx>>> pairs;  // pairs[n][x] in X
  std::vector<std::map<std::pair<Idx, Idx>, Idx>> index;
};
/// Index of the pair (a, b) of level-n simplices, at any level of a finite product.
Idx pair_index(const ProductResult& P, int n, Idx a, Idx b);
ProductResult product(SSetP A, SSetP B);
ProductResult fiber_product(const SMap& f, const SMap& g);
SMap product_map(const ProductResult& from, const ProductResult& to, const SMap& f, const SMap& g);

struct QuotientResult {
  SSetP X;
  SMap proj;
};
/// Quotient by the simplicial equivalence relation generated levelwise by R
/// and degeneracies; R must be compatible with faces.
QuotientResult quotient_by_relation(SSetP X, const std::vector<std::pair<Cell, Cell>>& R);
/// Quotient by a class labelling cls[n][x], through level N.
QuotientResult quotient_by_labels(SSetP X, int N, const std::vector<std::vector<Idx>>& cls,
                                  bool finite);

struct SubResult {
  SSetP X;
  SMap incl;
};
SubResult subcomplex(SSetP X, const std::function<bool(int, Idx)>& keep_gen);
SSetP skeleton(SSetP X, int n);
/// Levels 0..n only; higher levels are unknown rather than degenerate.
SSetP truncate(SSetP X, int n);
SSetP coskeleton(SSetP X, int n, int bound);
SSetP reduce_n(SSetP X, int n);
bool is_n_reduced(const SSet& X, int n);
SubResult eilenberg_subcomplex(SSetP X, Idx x, int m);

// --- hom sets and function complexes
using MapImage = std::vector<Idx>;  // image of each generator, flat order (dimension, then index)
struct HomOptions {
  std::size_t budget = 2'000'000;
  std::function<bool(int k, Idx g, Idx y)> allow;  // optional pruning
  bool stop_at_first = false;
};
std::vector<MapImage> hom_raw(const SSet& K, const SSet& X, const HomOptions& opt = {});
std::vector<SMap> hom_set(SSetP K, SSetP X, const HomOptions& opt = {});
SMap map_from_image(SSetP K, SSetP X, const MapImage& m);
MapImage image_of(const SMap& f);

/// Levels q = 0..bound of hom(A^q, X) for a cosimplicial family A.
struct CosimplicialFamily {
  std::vector<SSetP> obj;                       // A^0..A^bound (A^{bound+1} not needed)
  std::function<SMap(int q, int i)> coface;     // A^{q-1} -> A^q
  std::function<SMap(int q, int i)> codegen;    // A^{q+1} -> A^q
};
struct HomComplex {
  SSetP X;
  std::vector<std::vector<MapImage>> elems;  // elems[q][x]: map A^q -> target, by level element order
  Built built;
};
HomComplex hom_complex(const CosimplicialFamily& A, SSetP X, int bound);

SSetP function_complex(SSetP K, SSetP X, int bound);
/// Path object X^{Delta[1]} with evaluations at 0 and 1.
struct PathObject {
  SSetP XI;
  SMap ev0, ev1;
  SMap constant_paths;  // X -> X^I, on X truncated at the bound
};
PathObject path_object(SSetP X, int bound);

SSetP subdivision(int q);  // sd Delta[q]
struct ExResult {
  SSetP X;
  SMap unit;  // X -> Ex^it X
};
ExResult ex(SSetP X, int iterations, int bound);

std::optional<SMap> find_iso(SSetP X, SSetP Y);

// --- Kan conditions
struct KanReport {
  bool ok = true;
  int checked_upto = 0;
  int dimension = -1;  // of the counterexample
  int horn = -1;
  std::string detail;
};
KanReport check_kan(const SMap& f, int upto);
KanReport check_kan(SSetP X, int upto);
/// Lifting against all boundary inclusions through dimension `upto`.
KanReport check_acyclic_fibration(const SMap& f, int upto);

}  // namespace skan
