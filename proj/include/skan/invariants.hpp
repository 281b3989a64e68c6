#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skan/core.hpp"

namespace skan {

// --- integer linear algebra

using IntMatrix = std::vector<std::vector<long long>>;

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
std::vector<long long> smith_diagonal(std::size_t rows, std::size_t cols,
                                      const std::vector<std::tuple<std::size_t, std::size_t, long long>>& entries);

/// Finitely generated abelian group Z^rank + sum Z/t.
struct AbelianGroup {
  int rank = 0;
  std::vector<long long> torsion;
  std::string str() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

// --- components

/// Component label of each vertex; labels are numbered by least vertex.
std::vector<int> pi0_labels(const SSet& X);
int pi0_count(const SSet& X);

// --- fundamental group

/// Letters are +-(generator index + 1).
using Word = std::vector<int>;

struct FPGroup {
  std::vector<std::string> gens;
  std::vector<Word> relators;

  AbelianGroup abelianization() const;
  /// Order by coset enumeration; throws BudgetExceeded past `budget` cosets.
  std::size_t order(std::size_t budget = 100000) const;
  bool is_trivial(std::size_t budget = 100000) const { return gens.empty() || order(budget) == 1; }
  std::string str() const;
};

Word free_reduce(Word w);
FPGroup simplify(FPGroup G);

/// Edge-path presentation of the component of x, spanning tree rooted at x.
FPGroup pi1(const SSet& X, Idx x);

// --- homology

using HomologyProfile = std::vector<AbelianGroup>;
HomologyProfile homology(const SSet& X, int r);
std::string profile_str(const HomologyProfile& h);

// --- weak equivalence certificates

enum class CertLevel { Iso = 0, Retract = 1, Invariants = 2 };
enum class Policy { RequireIso, TryRetract, Invariants };
const char* level_name(CertLevel l);

struct WeCert {
  CertLevel level = CertLevel::Invariants;
  SMap map;
  std::optional<SMap> inverse;
  // RETRACT: r after f = id and a homotopy on Delta[1] x target from id (end 0) to f after r (end 1)
  std::optional<SMap> retraction;
  std::optional<SMap> homotopy;
  std::optional<ProductResult> cylinder;
  // INVARIANTS
  int bound = -1;
  HomologyProfile src_homology, tgt_homology;
  std::vector<AbelianGroup> src_pi1_ab, tgt_pi1_ab;
  std::string summary;

  /// Re-checks the payload from scratch.
  bool validate() const;
};

/// Certificate for a map with a given retraction and homotopy.
WeCert retract_cert(const SMap& f, const SMap& r, const SMap& H, const ProductResult& cyl);
WeCert we_certify(const SMap& f, Policy policy, int bound = 3);

/// Cylinder Delta[1] x X with its two end inclusions.
struct Cylinder {
  ProductResult P;
  SMap end0, end1;
};
Cylinder cylinder(SSetP X);

// --- mapping space components

struct HomotopyClasses {
  std::vector<SMap> reps;
  std::size_t count = 0;  // equals reps.size() unless representatives were skipped
  std::size_t maps = 0;   // |hom(X, A)| (may be reported as a power of p on the linear path)
  bool linear = false;
  int source_dim = 0;
  std::vector<int> class_of;  // enumeration route: class index of each map in `all`
  std::vector<SMap> all;
};

/// Target whose levels are F_p vector spaces with linear operators, indexed
/// compatibly with its underlying simplicial set.
struct LinearTarget {
  int p = 2;
  std::vector<int> dim;
  std::vector<std::vector<Idx>> basis;                 // basis[n][j], level index
  std::vector<std::vector<std::vector<int>>> coord;    // coord[n][x]
  std::vector<std::vector<Idx>> from_code;             // code = sum c_j p^j

  Idx element(int n, const std::vector<int>& c) const;
};

/// Coordinates for a simplicial abelian group given levelwise by its
/// addition; every level must be elementary abelian for the prime p.
LinearTarget make_linear_target(const SSet& A, int N, int p,
                                const std::function<Idx(int n, Idx a, Idx b)>& add,
                                const std::function<Idx(int n)>& zero);

struct ClassOptions {
  std::size_t budget = 2'000'000;
  /// Truncate the source at this dimension (targets coskeletal above it).
  std::optional<int> source_dim;
  const LinearTarget* linear = nullptr;
  bool want_reps = true;
  bool check_target = true;
};

HomotopyClasses homotopy_classes(SSetP X, SSetP A, const ClassOptions& opt = {});
/// Whether there is a homotopy from f (end 0) to g (end 1).
bool homotopic(const SMap& f, const SMap& g, std::size_t budget = 2'000'000);

}  // namespace skan
