#include "skan/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "skan/io.hpp"

namespace skan::cli {

namespace fs = std::filesystem;

namespace {

struct Args {
  std::vector<std::string> files;
  std::string group, base, bundle, action, map, cover, cocycle, vertex, wbar, universal, compare;
  int degree = 1, n = 1, iterate = 1;
  bool resolve = false;
};

struct Flags {
  int bound = 3;
  std::string policy = "invariants";
  std::size_t budget = 2'000'000;
  std::string out, report;
  bool json = false;
};

[[noreturn]] void usage(const std::string& what) { fail(ErrorKind::InvalidArgument, what); }

struct Ctx {
  std::string op;
  Args a;
  Flags f;
  fs::path base;
  io::Loader L;
  Json outputs = Json::object();
  Json certs = Json::array();
  Json checks = Json::array();

  Ctx(fs::path b, int bound) : base(std::move(b)), L(base, bound) {}

  int bound() const { return f.bound; }
  Policy policy() const {
    if (f.policy == "iso") return Policy::RequireIso;
    if (f.policy == "retract") return Policy::TryRetract;
    return Policy::Invariants;
  }
  void put(const std::string& key, Json v) { outputs[key] = std::move(v); }
  void check(const std::string& name, bool ok) { checks.push_back({{"name", name}, {"ok", ok}}); }
  /// A weak equivalence claim with its certificate level.
  void cert(const std::string& claim, const WeCert& c) {
    bool ok = c.validate();
    certs.push_back({{"claim", claim}, {"level", level_name(c.level)}, {"valid", ok}, {"summary", c.summary}});
    check(claim, ok);
  }
  /// An isomorphism claim; a failed one carries no level.
  void iso(const std::string& claim, bool ok) {
    certs.push_back({{"claim", claim}, {"level", ok ? Json(level_name(CertLevel::Iso)) : Json(nullptr)}, {"valid", ok}});
    check(claim, ok);
  }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["ok"].get<bool>(); });
  }
  std::string file(std::size_t i, const char* what) const {
    if (a.files.size() <= i) usage(op + " needs " + what);
    return a.files[i];
  }
  std::string need(const std::string& v, const char* flag) const {
    if (v.empty()) usage(op + " needs " + flag);
    return v;
  }
  void write_out(const std::string& text) {
    if (f.out.empty()) return;
    fs::path p = base / f.out;
    std::ofstream o(p, std::ios::binary);
    if (!o) usage("cannot write " + f.out);
    o << text;
    put("written", true);
  }
};

Json sizes(const SSet& X, int upto) {
  Json s = Json::array();
  for (int n = 0; n <= std::min(upto, X.limit()); ++n) s.push_back(X.size(n));
  return s;
}

// Highest degree whose homology is determined by the stored levels.
int homology_degree(const SSet& X, int bound) { return X.finite() ? bound : std::min(bound, X.limit() - 1); }

void put_homology(Ctx& c, const SSet& X, const std::string& key = "homology") {
  int r = homology_degree(X, c.bound());
  if (r < 0) return;
  HomologyProfile h = homology(X, r);
  Json a = Json::array();
  for (auto& g : h) a.push_back(g.str());
  c.put(key, a);
  if (key == "homology")
    for (int i = 0; i <= r; ++i) c.put("H" + std::to_string(i), h[i].str());
}

// The simplicial set a command works on: a file, or an iterated classifying space.
SSetP space(Ctx& c) {
  if (!c.a.files.empty()) return c.L.sset(c.a.files[0]);
  if (c.a.wbar.empty()) usage(c.op + " needs an input simplicial set or --wbar");
  if (c.a.iterate < 1) usage("--iterate must be positive");
  SGroupP G = c.L.sgroup(c.a.wbar);
  if (c.a.iterate == 1) return wbar(G, c.bound()).X();
  return wbar_iter(G, c.a.iterate, c.bound());
}

void compare(Ctx& c, SSetP X, const std::string& what) {
  if (c.a.compare.empty()) return;
  SSetP Y = c.L.sset(c.a.compare);
  SSetP Xb = X;
  if (X->finite() && !Y->finite()) Xb = truncate(X, *Y->trunc);
  c.iso(what + " -> " + c.a.compare, find_iso(Xb, Y).has_value());
}

// Class indices are positions in the h1 enumeration; the trivial flag compares
// with the constant map.
void put_class(Ctx& c, const std::string& key, const H1Result& r, const SMap& f, const Wbar& W) {
  int k = h1_class(r, f, W);
  c.put(key, k);
  c.put(key + "_trivial", k == h1_class(r, SMap::constant(f.src, W.X(), 0), W));
}

// --- commands

void cmd_normalize(Ctx& c) {
  std::string path = c.file(0, "an input document");
  const io::Document& d = c.L.document(path);
  c.put("kind", d.kind);
  std::string text;
  auto token = [&](const char* directive) {
    for (auto& l : d.body)
      if (l.directive() == directive && l.tok.size() > 1) return l.tok[1].text;
    return std::string();
  };
  if (d.kind == "sset") {
    SSetP X = c.L.sset(path);
    text = io::serialize_sset(*X);
    Json g = Json::array();
    for (int k = 0; k <= X->top(); ++k) g.push_back(X->ngen(k));
    c.put("generators", g);
    c.put("sizes", sizes(*X, c.bound()));
  } else if (d.kind == "sgroup") {
    SGroupP G = c.L.sgroup(path);
    G->validate();
    text = io::serialize_sgroup(*G);
    Json o = Json::array();
    for (int n = 0; n <= std::min(c.bound(), G->bound); ++n) o.push_back(G->at(n).order());
    c.put("orders", o);
    c.put("abelian", G->abelian());
  } else if (d.kind == "map") {
    SMap f = c.L.map(path);
    text = io::serialize_map(f, token("source"), token("target"));
  } else if (d.kind == "cover") {
    Cover cv = c.L.cover(path);
    text = io::serialize_cover(cv, token("base"));
    c.put("members", cv.parts.size());
  } else {
    if (d.kind == "bundle") c.L.bundle(path).validate();
    if (d.kind == "action") c.L.action(path).validate();
    if (d.kind == "cocycle") c.L.cocycle(path).validate();
    if (d.kind == "suite") c.put("checks", io::read_suite(d).checks.size());
    text = io::serialize_document(d);
  }
  c.put("canonical_hash", io::content_hash(text));
  c.write_out(text);
}

void cmd_product(Ctx& c) {
  SSetP A = c.L.sset(c.file(0, "two input simplicial sets"));
  SSetP B = c.L.sset(c.file(1, "two input simplicial sets"));
  ProductResult P = product(A, B);
  c.put("sizes", sizes(*P.X, c.bound()));
  c.write_out(io::serialize_sset(*P.X));
}

void cmd_kan_check(Ctx& c) {
  KanReport r;
  if (!c.a.universal.empty()) {
    UniversalP U = c.L.universal(c.L.sgroup(c.a.universal));
    c.put("object", "WG -> Wbar G");
    r = check_kan(U->fib, c.bound());
  } else if (!c.a.files.empty() && c.L.kind(c.a.files[0]) == "map") {
    c.put("object", "map");
    r = check_kan(c.L.map(c.a.files[0]), c.bound());
  } else {
    c.put("object", "simplicial set");
    r = check_kan(space(c), c.bound());
  }
  c.put("kan", r.ok);
  c.put("checked_upto", r.checked_upto);
  if (!r.ok) {
    c.put("counterexample_dimension", r.dimension);
    c.put("counterexample_horn", r.horn);
    c.put("counterexample", r.detail);
  }
  c.check("kan", r.ok);
}

void cmd_homology(Ctx& c) {
  SSetP X = space(c);
  c.put("sizes", sizes(*X, c.bound()));
  put_homology(c, *X);
}

void cmd_pi0(Ctx& c) {
  SSetP X = space(c);
  c.put("components", pi0_count(*X));
  c.put("labels", pi0_labels(*X));
}

void cmd_pi1(Ctx& c) {
  SSetP X = space(c);
  Idx v = 0;
  if (!c.a.vertex.empty()) {
    auto g = X->find_gen(0, c.a.vertex);
    if (!g) fail(ErrorKind::VertexNotFound, "no vertex " + c.a.vertex);
    v = *g;
  }
  FPGroup P = simplify(pi1(*X, v));
  c.put("presentation", P.str());
  c.put("abelianization", P.abelianization().str());
  try {
    c.put("order", P.order(c.f.budget));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    c.put("order", "unknown");
  }
}

void cmd_dec0(Ctx& c) {
  SSetP X = space(c);
  Dec0Result R = dec0(X, c.bound());
  c.put("sizes", sizes(*R.D, c.bound()));
  int comps = pi0_count(*R.D);
  c.put("components", comps);
  c.check("one component per vertex", comps == static_cast<int>(X->size(0)));
  c.cert("section const X_0 -> Dec0 X", R.retract);
  if (!c.a.wbar.empty() && c.a.iterate == 1) {
    UniversalP U = c.L.universal(c.L.sgroup(c.a.wbar));
    c.iso("WG -> Dec0 Wbar G", is_iso(U->iso));
  }
  compare(c, R.D, "Dec0 X");
}

void cmd_total(Ctx& c) {
  int b = c.bound();
  if (!c.a.action.empty()) {
    GAction act = c.L.action(c.a.action);
    ActionGroupoid AG = action_groupoid(act, b + 1);
    CanonicalMaps M = diagonal_to_total(AG.B, b + 1);
    SSetP dB = diagonal(AG.B);
    c.put("sizes_diagonal", sizes(*dB, b));
    c.put("sizes_total", sizes(*M.tot.X, b));
    HomologyProfile hd = homology(*dB, b), ht = homology(*M.tot.X, b);
    Json jd = Json::array(), jt = Json::array();
    for (auto& g : hd) jd.push_back(g.str());
    for (auto& g : ht) jt.push_back(g.str());
    c.put("homology_diagonal", jd);
    c.put("homology_total", jt);
    c.check("homology agrees", hd == ht);
    c.cert("diagonal -> total", we_certify(M.d_to_total, c.policy(), b));
    return;
  }
  if (!c.a.group.empty()) {
    SGroupP G = c.L.sgroup(c.a.group);
    TotalResult T = total(group_nerve(G, b, b), b);
    Wbar W = wbar_formula(G, b);
    c.put("sizes", sizes(*T.X, b));
    bool same = true;
    for (int n = 0; n <= b; ++n) same = same && T.X->size(n) == W.X()->size(n);
    c.check("level sizes agree with Wbar G", same);
    wbar_cross_check(W, b);
    c.iso("Wbar G -> total of the nerve", true);
    return;
  }
  SSetP X = space(c);
  CanonicalMaps M = diagonal_to_total(const_bisimplicial(X, b, b), b);
  c.put("sizes", sizes(*M.tot.X, b));
  c.iso("X -> total of const X", is_iso(M.d_to_total));
}

void cmd_wbar(Ctx& c) {
  SGroupP G = c.L.sgroup(c.need(c.a.group, "--group"));
  Wbar W = wbar(G, c.bound());
  c.put("sizes", sizes(*W.X(), c.bound()));
  c.put("cross_check", "ok");
  c.iso("level formula -> total of the nerve", true);
  c.write_out(io::serialize_sset(*W.X()));
}

void cmd_w_bundle(Ctx& c) {
  SGroupP G = c.L.sgroup(c.need(c.a.group, "--group"));
  UniversalP U = c.L.universal(G);
  int b = c.bound();
  c.put("sizes", sizes(*U->WG.X, b));
  c.put("components", pi0_count(*U->WG.X));
  put_homology(c, *U->WG.X);
  c.check("free action", U->bundle.action.free());
  KanReport k = check_kan(U->fib, b);
  c.put("fibration", k.ok);
  c.check("WG -> Wbar G is a Kan fibration", k.ok);
  c.iso("shear WG x G -> WG x_{Wbar G} WG", is_iso(shear(U->bundle, 1).map));
  c.iso("WG -> Dec0 Wbar G", is_iso(U->iso));
  c.iso("WG/G -> Wbar G", is_iso(orbit_quotient(U->bundle).to_base, b));
  SSetP pt = point();
  ProductResult F = fiber_product(U->fib, SMap::constant(pt, U->W.X(), 0));
  c.iso("fiber over the base point -> G", find_iso(F.X, truncate(G->set, b)).has_value());
}

void cmd_loop_group(Ctx& c) {
  SSetP Y = space(c);
  SGroupPresentation L = kan_loop_group(Y, c.bound());
  Json g = Json::array();
  for (auto& lv : L.levels) g.push_back(lv.gens.size());
  c.put("generators", g);
  FPGroup P = simplify(L.pi0());
  c.put("pi0", P.str());
  AbelianGroup ab = P.abelianization();
  c.put("pi0_abelianization", ab.str());
  c.check("agrees with pi1", ab == pi1(*Y, 0).abelianization());
}

void cmd_em(Ctx& c) {
  FinGroupP H = c.L.fingroup(c.need(c.a.group, "--group"));
  int b = c.bound(), n = c.a.degree;
  SGroupP E = dold_kan_em(H, n, b);
  E->validate();
  c.put("sizes", sizes(*E->set, b));
  put_homology(c, *E->set);
  SSetP W = n == 0 ? const_sgroup(H, b)->set : wbar_iter(const_sgroup(H, b + 1), n, b);
  c.iso("K(pi, n) -> Wbar^n pi", find_iso(E->set, W).has_value());
}

void cmd_postnikov(Ctx& c) {
  SSetP X = space(c);
  PostnikovStage P = postnikov_stage(X, c.a.degree);
  c.put("sizes", sizes(*P.Q.X, c.bound()));
  c.put("source_kan", P.source_kan.ok);
  put_homology(c, *P.Q.X);
}

void cmd_action_groupoid(Ctx& c) {
  GAction act = c.L.action(c.need(c.a.action, "--action"));
  ActionGroupoid AG = action_groupoid(act, c.bound());
  AG.B.validate();
  Json s = Json::array();
  for (int p = 0; p <= AG.B.P; ++p) {
    Json row = Json::array();
    for (int q = 0; q <= AG.B.Q; ++q) row.push_back(AG.B.size(p, q));
    s.push_back(row);
  }
  c.put("bisizes", s);
  c.put("free", act.free());
}

void cmd_hquot(Ctx& c) {
  GAction act = c.L.action(c.need(c.a.action, "--action"));
  HomotopyQuotient H = homotopy_quotient(act, c.bound());
  c.put("sizes", sizes(*H.tot.X, c.bound()));
  c.put("components", pi0_count(*H.tot.X));
  c.check("level formula", H.level_formula_holds);
  c.iso("Borel construction -> total of P//G", is_iso(H.iso));
}

void cmd_shear(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  Shear S = shear(b, c.a.n);
  c.put("sizes_source", sizes(*S.src.X, c.bound()));
  c.put("sizes_target", sizes(*S.tgt.X, c.bound()));
  c.iso("shear P x G^n -> P^(n+1) over X", is_iso(S.map, c.bound()));
}

void cmd_classify(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  PrincipalityReport r = classify_principality(b, c.policy(), c.bound());
  c.put("principality", principality_name(r.kind));
  c.put("fibration", r.fibration.ok);
  if (!r.detail.empty()) c.put("detail", r.detail);
  if (r.cert) c.cert("P/hG -> X", *r.cert);
  c.check("principal", r.kind == Principality::Strict || r.kind == Principality::Weak);
}

void cmd_pullback(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  SMap f = c.L.map(c.need(c.a.map, "--map"));
  if (f.tgt != b.base) usage("the target of the map is not the base of the bundle");
  GBundle p = pullback_bundle(f, b);
  p.validate();
  c.put("sizes", sizes(*p.action.P, c.bound()));
  c.put("components", pi0_count(*p.action.P));
  c.check("free action", p.action.free());
  c.write_out(io::serialize_sset(*p.action.P));
}

void cmd_pushforward(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  SMap p = c.L.map(c.need(c.a.map, "--map"));
  if (p.src != b.base) usage("the source of the map is not the base of the bundle");
  GBundle q = pushforward_bundle(p, b, c.bound());
  q.validate();
  c.put("sizes", sizes(*q.action.P, c.bound()));
  c.check("free action", q.action.free());
}

void cmd_twistings(Ctx& c) {
  SSetP X = c.L.sset(c.need(c.a.base, "--base"));
  SGroupP G = c.L.sgroup(c.need(c.a.group, "--group"));
  auto ts = enumerate_twistings(X, G, c.f.budget);
  std::vector<int> cls(ts.size(), -1);
  int classes = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (cls[j] < 0 && twisting_gauge(ts[i], ts[j])) cls[j] = classes;
    ++classes;
  }
  c.put("twistings", ts.size());
  c.put("gauge_classes", classes);
}

void cmd_cech(Ctx& c) {
  Cover cv = c.L.cover(c.need(c.a.cover, "--cover"));
  CechNerve N = cech_nerve(cv.map, c.bound());
  N.B.validate();
  c.put("sizes", sizes(*N.tot.X, c.bound()));
  c.cert("total of the Cech nerve -> X", we_certify(N.total_proj, c.policy(), c.bound() - 1));
}

void cmd_associated(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  GAction V = c.L.action(c.need(c.a.action, "--action"));
  Associated A = associated(b, V, c.bound());
  c.put("sizes", sizes(*A.E, c.bound()));
  c.put("plain", A.plain);
  c.put("components", pi0_count(*A.E));
}

void cmd_extr(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  UniversalP U = c.L.universal(b.action.G);
  Extraction E = extr(b, c.bound(), U);
  c.put("sizes", sizes(*E.c.Y, c.bound()));
  c.check("left leg is an acyclic fibration", E.c.left_fibration.ok);
  c.cert("P/hG -> X", E.c.left_cert);
  if (b.base->finite()) put_class(c, "class", h1(b.base, b.action.G, c.f.budget), section_map(E.c, c.f.budget), U->W);
}

void cmd_rec(Ctx& c) {
  if (!c.a.bundle.empty()) {
    GBundle b = c.L.bundle(c.a.bundle);
    FreeResolution F = free_resolution(b, c.bound(), c.L.universal(b.action.G));
    c.put("sizes", sizes(*F.R.bundle.action.P, c.bound()));
    c.check("free action", F.R.bundle.action.free());
    c.cert("rec(extr(P)) -> P", F.cert);
    return;
  }
  Cocycle k = c.L.cocycle(c.need(c.a.cocycle, "--cocycle or --bundle"));
  Reconstruction R = rec(k);
  R.bundle.validate();
  c.put("sizes", sizes(*R.bundle.action.P, c.bound()));
  c.put("components", pi0_count(*R.bundle.action.P));
  c.check("free action", R.bundle.action.free());
}

void cmd_strictify(Ctx& c) {
  GBundle b = c.L.bundle(c.need(c.a.bundle, "--bundle"));
  UniversalP U = c.L.universal(b.action.G);
  H1Result r = h1(b.base, b.action.G, c.f.budget);
  Extraction E = extr(b, c.bound(), U);
  SMap before = section_map(E.c, c.f.budget);
  int want = h1_class(r, before, U->W);
  GBundle src = b;
  if (c.a.resolve) {
    FreeResolution F = free_resolution(b, c.bound(), U);
    src = F.R.bundle;
  }
  Strictification S = strictify(src, c.bound(), U);
  int got = h1_class(r, S.sc.right, U->W);
  put_class(c, "class", r, before, U->W);
  put_class(c, "strict_class", r, S.sc.right, U->W);
  c.check("class preserved", want == got);
  c.cert("strictification -> P^f", S.cert);
  c.check("strict", classify_principality(S.Ps.bundle, Policy::RequireIso, c.bound()).kind == Principality::Strict);
}

void cmd_h1(Ctx& c) {
  SSetP X = c.L.sset(c.need(c.a.base, "--base"));
  SGroupP G = c.L.sgroup(c.need(c.a.group, "--group"));
  H1Result r = h1(X, G, c.f.budget);
  std::vector<int> m = r.matching;
  std::sort(m.begin(), m.end());
  std::vector<int> ids(m.size());
  std::iota(ids.begin(), ids.end(), 0);
  bool agree = r.reps.size() == r.maps.count && m == ids;
  c.put("classes", r.count);
  c.put("twistings", r.twistings.size());
  c.put("gauge_classes", r.reps.size());
  c.put("homotopy_classes", r.maps.count);
  c.put("routes_agree", agree);
  c.check("routes agree", agree);
}

void cmd_hn(Ctx& c) {
  Cover cv = c.L.cover(c.need(c.a.cover, "--cover"));
  int d = cv.X->top();
  SGroupP A = c.L.sgroup(c.need(c.a.group, "--group"), std::max(c.bound(), d + 2));
  HnResult r = hn_cech(cv, A, c.a.degree, c.f.budget);
  c.put("classes", r.count);
  c.put("linear", r.classes.linear);
}

void cmd_nerve(Ctx& c) {
  Cover cv = c.L.cover(c.need(c.a.cover, "--cover"));
  SSetP N = nerve_complex(cv, c.bound());
  c.put("sizes", sizes(*N, c.bound()));
  put_homology(c, *N);
  compare(c, N, "nerve");
  c.write_out(io::serialize_sset(*N));
}

int run_suite(Ctx& c, std::ostream* out, std::ostream* err);

using Handler = std::function<void(Ctx&)>;

struct Command {
  const char* name;
  const char* help;
  Handler run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"normalize", "canonical form of a document", cmd_normalize},
      {"product", "product of two simplicial sets", cmd_product},
      {"kan-check", "Kan condition through the bound", cmd_kan_check},
      {"homology", "integral homology", cmd_homology},
      {"pi0", "connected components", cmd_pi0},
      {"pi1", "edge-path presentation of the fundamental group", cmd_pi1},
      {"dec0", "decalage and its deformation retraction", cmd_dec0},
      {"total", "total simplicial set of a bisimplicial object", cmd_total},
      {"wbar", "classifying simplicial set of a simplicial group", cmd_wbar},
      {"w-bundle", "universal bundle WG -> Wbar G", cmd_w_bundle},
      {"loop-group", "Kan loop group", cmd_loop_group},
      {"em", "Eilenberg-MacLane object from a chain complex", cmd_em},
      {"postnikov", "Postnikov stage", cmd_postnikov},
      {"action-groupoid", "action groupoid of an action", cmd_action_groupoid},
      {"hquot", "homotopy quotient and Borel comparison", cmd_hquot},
      {"shear", "shear map of a bundle", cmd_shear},
      {"classify", "strict or weak principality", cmd_classify},
      {"pullback", "pullback of a bundle along a map", cmd_pullback},
      {"pushforward", "descent along an acyclic fibration", cmd_pushforward},
      {"twistings", "twisting functions up to gauge", cmd_twistings},
      {"cech", "Cech nerve of a cover", cmd_cech},
      {"associated", "associated bundle", cmd_associated},
      {"extr", "cocycle of a bundle", cmd_extr},
      {"rec", "bundle of a cocycle", cmd_rec},
      {"strictify", "strict bundle in the class of a bundle", cmd_strictify},
      {"h1", "nonabelian H1 by twistings and by maps to Wbar G", cmd_h1},
      {"hn", "Cech cohomology with abelian coefficients", cmd_hn},
      {"nerve", "nerve of a good cover", cmd_nerve},
  };
  return all;
}

void summarize(std::ostream& o, const Json& r) {
  o << "operation: " << r["operation"].get<std::string>() << "\n";
  for (auto& [k, v] : r["outputs"].items())
    if (!(v.is_array() && !v.empty() && v[0].is_object())) o << k << ": " << render(v) << "\n";
  for (auto& c : r["certificates"])
    o << "weak equivalence " << c["claim"].get<std::string>() << ": "
      << (c["level"].is_null() ? std::string("none") : c["level"].get<std::string>()) << "\n";
  for (auto& c : r["checks"]) o << "check " << c["name"].get<std::string>() << ": " << (c["ok"].get<bool>() ? "pass" : "fail") << "\n";
  if (r.contains("error")) o << "error: " << r["error"].get<std::string>() << "\n";
  o << "status: " << r["status"].get<std::string>() << "\n";
}

int exit_for(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::SchemaError || k == ErrorKind::InvalidArgument ? 2 : 1;
}

}  // namespace

std::string render(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + render(v[i]);
    return s;
  }
  return v.dump();
}

Json without_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) v = without_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timing(v);
  }
  return j;
}

Outcome run_command(const std::vector<std::string>& args, const fs::path& base, std::ostream* out,
                    std::ostream* err) {
  auto t0 = std::chrono::steady_clock::now();
  Args a;
  Flags f;
  std::string chosen;
  CLI::App app{"Finite simplicial sets, simplicial groups and their bundles", "skan"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--bound", f.bound, "dimension bound")->check(CLI::NonNegativeNumber);
    s->add_option("--policy", f.policy, "certificate policy")->check(CLI::IsMember({"iso", "retract", "invariants"}));
    s->add_option("--budget", f.budget, "enumeration budget");
    s->add_option("--out", f.out, "output document");
    s->add_option("--report", f.report, "JSON report path");
    s->add_flag("--json", f.json, "print the JSON report instead of the summary");
  };
  for (auto& cmd : commands()) {
    CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
    common(s);
    s->add_option("files", a.files, "input documents");
    s->add_option("--group", a.group, "simplicial group document");
    s->add_option("--base", a.base, "base simplicial set");
    s->add_option("--bundle", a.bundle, "bundle document");
    s->add_option("--action", a.action, "action document");
    s->add_option("--map", a.map, "map document");
    s->add_option("--cover", a.cover, "cover document");
    s->add_option("--cocycle", a.cocycle, "cocycle document");
    s->add_option("--vertex", a.vertex, "base vertex");
    s->add_option("--wbar", a.wbar, "use Wbar of this group as the input");
    s->add_option("--iterate", a.iterate, "iterate Wbar this many times");
    s->add_option("--universal", a.universal, "check WG -> Wbar G for this group");
    s->add_option("--compare", a.compare, "compare the result with this simplicial set");
    s->add_option("--degree", a.degree, "degree");
    s->add_option("--n", a.n, "number of group factors");
    s->add_flag("--resolve", a.resolve, "strictify the free resolution");
    s->callback([&chosen, name = cmd.name] { chosen = name; });
  }
  CLI::App* v = app.add_subcommand("verify", "run a suite of checks");
  common(v);
  v->add_option("suite", a.files, "suite document")->required();
  v->callback([&chosen] { chosen = "verify"; });

  Outcome o;
  std::ostringstream sink;
  std::ostream& eo = err ? *err : sink;
  std::ostream& so = out ? *out : sink;
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, so, eo);
    o.exit = code == 0 ? 0 : 2;
    o.report = {{"operation", "usage"}, {"status", code == 0 ? "pass" : "error"}, {"error", e.what()}};
    return o;
  }

  Ctx c(base, f.bound);
  c.op = chosen;
  c.a = a;
  c.f = f;
  std::string error;
  int code = 0;
  try {
    if (chosen == "verify") {
      code = run_suite(c, out, err);
    } else {
      for (auto& cmd : commands())
        if (chosen == cmd.name) cmd.run(c);
      code = c.passed() ? 0 : 1;
    }
  } catch (const Error& e) {
    error = e.what();
    code = exit_for(e.kind());
  } catch (const std::exception& e) {
    error = std::string("internal: ") + e.what();
    code = 1;
  }

  Json r;
  r["format"] = io::kFormatVersion;
  r["operation"] = chosen;
  r["arguments"] = args;
  r["flags"] = {{"bound", f.bound}, {"policy", f.policy}, {"budget", f.budget}};
  Json in = Json::object();
  for (auto& [p, h] : c.L.inputs()) in[p] = h;
  r["inputs"] = in;
  r["outputs"] = c.outputs;
  r["certificates"] = c.certs;
  r["checks"] = c.checks;
  r["status"] = code == 0 ? "pass" : error.empty() ? "fail" : "error";
  if (!error.empty()) r["error"] = error;
  r["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  o.exit = code;
  o.report = r;

  if (!error.empty()) eo << "skan " << chosen << ": " << error << "\n";
  if (f.json)
    so << r.dump(2) << "\n";
  else
    summarize(so, r);
  if (!f.report.empty()) {
    std::ofstream rep(base / f.report, std::ios::binary);
    if (!rep) {
      eo << "skan: cannot write " << f.report << "\n";
      o.exit = 2;
    } else {
      rep << r.dump(2) << "\n";
    }
  }
  return o;
}

namespace {

// Runs every check of the suite in order; relative paths in a check resolve
// against the suite's directory.
int run_suite(Ctx& c, std::ostream* out, std::ostream* err) {
  std::string path = c.file(0, "a suite document");
  io::Suite S = io::read_suite(c.L.document(path));
  fs::path dir = fs::path(c.L.resolve(path)).parent_path();
  Json results = Json::array();
  int failed = 0;
  std::string broken;
  for (auto& k : S.checks) {
    Outcome sub = run_command(k.args, dir, nullptr, nullptr);
    Json res;
    res["name"] = k.name;
    res["command"] = k.args;
    res["exit"] = sub.exit;
    res["expected_exit"] = k.exit;
    bool ok = sub.exit == k.exit;
    Json ex = Json::array();
    for (auto& [key, want] : k.expect) {
      const Json& outs = sub.report.contains("outputs") ? sub.report["outputs"] : Json::object();
      std::string got = key == "status" ? render(sub.report["status"]) : outs.contains(key) ? render(outs[key]) : "<missing>";
      bool hit = got == want;
      ok = ok && hit;
      ex.push_back({{"key", key}, {"expected", want}, {"actual", got}, {"ok", hit}});
    }
    res["expectations"] = ex;
    res["certificates"] = sub.report.contains("certificates") ? sub.report["certificates"] : Json::array();
    res["inputs"] = sub.report.contains("inputs") ? sub.report["inputs"] : Json::object();
    if (sub.report.contains("error")) res["error"] = sub.report["error"];
    res["ok"] = ok;
    res["timing"] = sub.report.contains("timing") ? sub.report["timing"] : Json(nullptr);
    if (!ok) ++failed;
    if (sub.exit == 2 && k.exit != 2 && broken.empty())
      broken = "check " + k.name + ": " + (sub.report.contains("error") ? render(sub.report["error"]) : "usage error");
    if (out) *out << "check " << k.name << ": " << (ok ? "pass" : "fail") << "\n";
    if (err && !ok) {
      for (auto& e : ex)
        if (!e["ok"].get<bool>())
          *err << "  " << k.name << ": " << e["key"].get<std::string>() << " expected " << e["expected"].get<std::string>()
               << ", got " << e["actual"].get<std::string>() << "\n";
      if (sub.exit != k.exit) *err << "  " << k.name << ": exit " << sub.exit << ", expected " << k.exit << "\n";
      if (sub.report.contains("error")) *err << "  " << k.name << ": " << render(sub.report["error"]) << "\n";
    }
    results.push_back(res);
  }
  c.put("checks", S.checks.size());
  c.put("failed", failed);
  c.outputs["results"] = results;
  if (!broken.empty()) fail(ErrorKind::InvalidArgument, broken);
  c.check("all checks pass", failed == 0);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args, ".", &std::cout, &std::cerr).exit;
}

}  // namespace skan::cli
