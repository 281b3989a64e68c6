#pragma once

#include <memory>

#include "skan/bundles.hpp"

namespace skan {

using UniversalP = std::shared_ptr<const WBundle>;
UniversalP universal_bundle(SGroupP G, int bound);

/// A span X <- Y -> A whose left leg is a certified acyclic fibration.
struct Cocycle {
  SSetP X, Y, A;
  SMap left, right;
  int bound = 3;
  KanReport left_fibration;
  WeCert left_cert;
  UniversalP U;  // set when A is Wbar G of this bundle

  /// Re-runs the lifting check and the certificate.
  void validate() const;
};
Cocycle make_cocycle(SMap left, SMap right, int bound, UniversalP U = nullptr);

/// Y_1 -> Y_2 commuting with both legs.
struct CocycleMorphism {
  SMap map;
  void validate(const Cocycle& from, const Cocycle& to) const;
};

struct Extraction {
  HomotopyQuotient H;
  Cocycle c;  // X <- P/hG -> Wbar G
};
Extraction extr(const GBundle& b, int bound = 3, UniversalP U = nullptr);

struct Reconstruction {
  ProductResult F;  // WG x_{Wbar G} Y
  GBundle bundle;   // over X through the left leg
};
Reconstruction rec(const Cocycle& c);

/// Wbar G <- WG/hG -> Wbar G, the extraction of the universal bundle.
Extraction universal_cocycle(UniversalP U);

struct SpanComposite {
  ProductResult F;  // Y x_{Wbar G} WG/hG
  Cocycle c;
};
SpanComposite q(const Cocycle& c, const Extraction& univ);

/// P^f = rec(extr(b)) with the comparison P^f -> P.
struct FreeResolution {
  Extraction E;
  Reconstruction R;
  SMap to_P;
  WeCert cert;
};
FreeResolution free_resolution(const GBundle& b, int bound = 3, UniversalP U = nullptr);

/// Extr(Rec(c)) -> q(c) through Y.
struct CocycleRoundTrip {
  Reconstruction R;
  Extraction E;
  SpanComposite qc;
  SMap map;
  bool left_commutes = false, right_commutes = false;
};
CocycleRoundTrip cocycle_roundtrip(const Cocycle& c, const Extraction& univ);

/// Lexicographically least section of the left leg.
SMap find_section(const Cocycle& c, std::size_t budget = 2'000'000);
/// right after a section: X -> A.
SMap section_map(const Cocycle& c, std::size_t budget = 2'000'000);

struct Strictification {
  FreeResolution Pf;
  SMap section;
  Cocycle sc;        // X <- X -> Wbar G
  Reconstruction Ps;
  SMap to_Pf;
  WeCert cert;       // Ps -> Pf
};
Strictification strictify(const GBundle& b, int bound = 3, UniversalP U = nullptr);

/// Replaces a weak equivalence Y -> X by the mapping path fibration Y x_X X^I -> X.
struct Factorization {
  PathObject path;
  ProductResult F;
  Cocycle c;
  CocycleMorphism from_old;  // Y -> F, y -> (y, constant path)
  WeCert cert;               // of from_old
};
Factorization factor_span(const SMap& left, const SMap& right, int bound = 3);

struct H1Result {
  Wbar W;
  std::vector<TwistingFunction> twistings;
  std::vector<int> gauge_class;  // per twisting
  std::vector<std::size_t> reps;  // one twisting per gauge class
  HomotopyClasses maps;           // [X, Wbar G]
  std::vector<int> matching;      // gauge class -> homotopy class
  std::size_t count = 0;
};
H1Result h1(SSetP X, SGroupP G, std::size_t budget = 2'000'000);
/// Class index of f: X -> Wbar G, where f lands in `from`.
int h1_class(const H1Result& r, const SMap& f, const Wbar& from);

struct HnResult {
  CechNerve C;
  SGroupP target;
  HomotopyClasses classes;
  std::size_t count = 0;
};
HnResult hn_cech(const Cover& cover, SGroupP A, int n, std::size_t budget = 2'000'000);

/// Nerve of the cover, after checking every nonempty intersection is contractible.
SSetP nerve_complex(const Cover& cover, int bound = 3);

}  // namespace skan
