#include "skan/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace skan::io {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKinds = {"sset", "sgroup", "map", "action", "bundle", "cocycle", "cover", "suite"};

[[noreturn]] void schema(const Document& d, const Line* l, const std::string& field, const std::string& what) {
  std::string at = d.path + (l ? ":" + std::to_string(l->no) : "");
  fail(ErrorKind::SchemaError, at + ": field '" + field + "': " + what);
}

int to_int(const Line& l, std::size_t i) {
  if (i >= l.tok.size()) {
    const Token& last = l.tok.back();
    throw ParseFailure(l.no, last.col + static_cast<int>(last.text.size()), "expected an integer");
  }
  const Token& t = l.tok[i];
  try {
    std::size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseFailure(l.no, t.col, "expected an integer, found '" + t.text + "'");
}

void arity(const Line& l, std::size_t lo, std::size_t hi = SIZE_MAX) {
  if (l.tok.size() < lo) {
    const Token& last = l.tok.back();
    throw ParseFailure(l.no, last.col + static_cast<int>(last.text.size()),
                       "'" + l.directive() + "' needs " + std::to_string(lo - 1) + " argument(s)");
  }
  if (l.tok.size() > hi) throw ParseFailure(l.no, l.tok[hi].col, "unexpected token '" + l.tok[hi].text + "'");
}

[[noreturn]] void unknown(const Document& d, const Line& l) {
  throw ParseFailure(l.no, l.tok[0].col, "unknown directive '" + l.directive() + "' in a " + d.kind + " document");
}

std::string token_name(std::string s) {
  for (char& c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') c = '_';
  return s.empty() ? "_" : s;
}

std::string header(const std::string& kind) { return "ssx " + std::to_string(kFormatVersion) + "\nkind " + kind + "\n"; }

// Generators of X, by dimension then name.
std::vector<std::pair<int, Idx>> sorted_generators(const SSet& X) {
  std::vector<std::pair<int, Idx>> gs;
  int top = X.trunc ? std::min(X.top(), *X.trunc) : X.top();
  for (int k = 0; k <= top; ++k)
    for (Idx g = 0; g < X.ngen(k); ++g) gs.push_back({k, g});
  std::stable_sort(gs.begin(), gs.end(), [&](auto a, auto b) {
    if (a.first != b.first) return a.first < b.first;
    return X.gen_name(a.first, a.second) < X.gen_name(b.first, b.second);
  });
  return gs;
}

const Line* find_line(const Document& d, const std::string& directive) {
  const Line* found = nullptr;
  for (auto& l : d.body)
    if (l.directive() == directive) {
      if (found) throw ParseFailure(l.no, l.tok[0].col, "'" + directive + "' given twice");
      found = &l;
    }
  return found;
}

const Line& need_line(const Document& d, const std::string& directive) {
  const Line* l = find_line(d, directive);
  if (!l) schema(d, nullptr, directive, "missing");
  return *l;
}

void require_kind(const Document& d, const std::string& kind) {
  if (d.kind != kind) schema(d, nullptr, "kind", "expected " + kind + ", found " + d.kind);
}

void allow(const Document& d, const std::set<std::string>& directives) {
  for (auto& l : d.body)
    if (!directives.count(l.directive())) unknown(d, l);
}

std::vector<std::string> rest(const Line& l, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < l.tok.size(); ++i) out.push_back(l.tok[i].text);
  return out;
}

FinGroup table_group(const Document& d, const std::vector<const Line*>& lines) {
  std::vector<std::string> names;
  std::vector<Idx> table;
  const Line* el = nullptr;
  for (const Line* l : lines) {
    if (l->directive() == "elements") {
      if (el) throw ParseFailure(l->no, l->tok[0].col, "'elements' given twice");
      arity(*l, 2);
      el = l;
      names = rest(*l, 1);
    } else if (l->directive() == "row") {
      if (!el) throw ParseFailure(l->no, l->tok[0].col, "'row' before 'elements'");
      arity(*l, names.size() + 1, names.size() + 1);
      for (std::size_t i = 1; i < l->tok.size(); ++i) {
        int v = to_int(*l, i);
        if (v < 0 || static_cast<std::size_t>(v) >= names.size())
          throw ParseFailure(l->no, l->tok[i].col, "element index out of range");
        table.push_back(static_cast<Idx>(v));
      }
    }
  }
  if (!el) schema(d, nullptr, "elements", "missing");
  if (table.size() != names.size() * names.size())
    schema(d, el, "row", "expected " + std::to_string(names.size()) + " rows");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) schema(d, el, "elements", "duplicate element name");
  return group_from_table(names, table);
}

}  // namespace

std::string content_hash(const std::string& text) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << std::hash<std::string>{}(text);
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Document parse_document(const std::string& text, const std::string& path) {
  Document d;
  d.path = path;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  int stage = 0;
  while (std::getline(in, raw)) {
    ++no;
    Line l;
    l.no = no;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == '#') break;
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) && raw[j] != '#') ++j;
      l.tok.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (l.tok.empty()) continue;
    if (stage == 0) {
      if (l.directive() != "ssx") throw ParseFailure(no, l.tok[0].col, "expected header 'ssx <version>'");
      arity(l, 2, 2);
      d.version = to_int(l, 1);
      if (d.version != kFormatVersion)
        throw ParseFailure(no, l.tok[1].col, "unsupported format version " + l.tok[1].text);
      stage = 1;
    } else if (stage == 1) {
      if (l.directive() != "kind") throw ParseFailure(no, l.tok[0].col, "expected 'kind <kind>'");
      arity(l, 2, 2);
      d.kind = l.tok[1].text;
      if (!kKinds.count(d.kind)) schema(d, &l, "kind", "unknown kind " + d.kind);
      stage = 2;
    } else {
      d.body.push_back(std::move(l));
    }
  }
  if (stage == 0) throw ParseFailure(no + 1, 1, "empty document");
  if (stage == 1) throw ParseFailure(no + 1, 1, "missing 'kind' line");
  return d;
}

std::string serialize_document(const Document& d) {
  std::string s = header(d.kind);
  for (auto& l : d.body) {
    for (std::size_t i = 0; i < l.tok.size(); ++i) s += (i ? " " : "") + l.tok[i].text;
    s += "\n";
  }
  return s;
}

// --- sset

SSetP read_sset(const Document& d) {
  require_kind(d, "sset");
  allow(d, {"simplex", "truncated"});
  std::optional<int> trunc;
  if (const Line* t = find_line(d, "truncated")) {
    arity(*t, 2, 2);
    trunc = to_int(*t, 1);
    if (*trunc < 0) throw ParseFailure(t->no, t->tok[1].col, "negative truncation");
  }
  std::vector<RawSimplex> raw;
  std::map<std::pair<int, std::string>, const Line*> seen;
  for (auto& l : d.body) {
    if (l.directive() != "simplex") continue;
    arity(l, 3);
    RawSimplex r{l.tok[1].text, to_int(l, 2), rest(l, 3), ""};
    std::size_t want = r.dim == 0 ? 0 : static_cast<std::size_t>(r.dim) + 1;
    if (r.faces.size() != want)
      schema(d, &l, "faces", r.name + " needs " + std::to_string(want) + " faces, found " +
                                 std::to_string(r.faces.size()));
    if (!seen.emplace(std::pair{r.dim, r.name}, &l).second) schema(d, &l, "simplex", "duplicate name " + r.name);
    raw.push_back(std::move(r));
  }
  try {
    return normalize(raw, trunc);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DanglingFace) schema(d, nullptr, "faces", e.what());
    throw;
  }
}

std::string serialize_sset(const SSet& X) {
  std::string s = header("sset");
  if (X.trunc) s += "truncated " + std::to_string(*X.trunc) + "\n";
  for (auto [k, g] : sorted_generators(X)) {
    s += "simplex " + token_name(X.gen_name(k, g)) + " " + std::to_string(k);
    if (k > 0)
      for (int i = 0; i <= k; ++i) s += " " + token_name(X.cell_name(X.gen_face(k, g, i)));
    s += "\n";
  }
  return s;
}

// --- groups

FinGroup read_fingroup(const Document& d) {
  require_kind(d, "sgroup");
  if (!find_line(d, "constant")) schema(d, nullptr, "constant", "the group is not constant");
  allow(d, {"constant", "elements", "row"});
  std::vector<const Line*> lines;
  for (auto& l : d.body) lines.push_back(&l);
  return table_group(d, lines);
}

namespace {

SGroupP read_general_sgroup(const Document& d) {
  allow(d, {"bound", "level", "elements", "row", "face", "degen"});
  const Line& b = need_line(d, "bound");
  arity(b, 2, 2);
  SGroup G;
  G.bound = to_int(b, 1);
  if (G.bound < 0) throw ParseFailure(b.no, b.tok[1].col, "negative bound");
  std::vector<std::vector<const Line*>> per(G.bound + 1);
  int cur = -1;
  G.face.resize(G.bound + 1);
  G.degen.resize(G.bound + 1);
  for (auto& l : d.body) {
    const std::string& w = l.directive();
    if (w == "level") {
      arity(l, 2, 2);
      cur = to_int(l, 1);
      if (cur < 0 || cur > G.bound) throw ParseFailure(l.no, l.tok[1].col, "level outside the bound");
    } else if (w == "elements" || w == "row") {
      if (cur < 0) throw ParseFailure(l.no, l.tok[0].col, "'" + w + "' before 'level'");
      per[cur].push_back(&l);
    }
  }
  for (int n = 0; n <= G.bound; ++n) {
    if (per[n].empty()) schema(d, nullptr, "level", "level " + std::to_string(n) + " missing");
    G.levels.push_back(std::make_shared<FinGroup>(table_group(d, per[n])));
  }
  for (int n = 0; n <= G.bound; ++n) {
    if (n > 0) G.face[n].resize(n + 1);
    if (n < G.bound) G.degen[n].resize(n + 1);
  }
  for (auto& l : d.body) {
    const std::string& w = l.directive();
    if (w != "face" && w != "degen") continue;
    arity(l, 3);
    int n = to_int(l, 1), i = to_int(l, 2);
    bool face = w == "face";
    if (n < 0 || n > G.bound || (face && n == 0) || (!face && n == G.bound) || i < 0 || i > n)
      throw ParseFailure(l.no, l.tok[1].col, "operator index out of range");
    const FinGroup& src = *G.levels[n];
    const FinGroup& tgt = *G.levels[face ? n - 1 : n + 1];
    arity(l, src.order() + 3, src.order() + 3);
    std::vector<Idx> v;
    for (std::size_t j = 3; j < l.tok.size(); ++j) {
      int x = to_int(l, j);
      if (x < 0 || static_cast<std::size_t>(x) >= tgt.order())
        throw ParseFailure(l.no, l.tok[j].col, "element index out of range");
      v.push_back(static_cast<Idx>(x));
    }
    (face ? G.face : G.degen)[n][i] = std::move(v);
  }
  for (int n = 0; n <= G.bound; ++n) {
    for (int i = 0; n > 0 && i <= n; ++i)
      if (G.face[n][i].empty()) schema(d, nullptr, "face", "d" + std::to_string(i) + " on level " + std::to_string(n) + " missing");
    for (int i = 0; n < G.bound && i <= n; ++i)
      if (G.degen[n][i].empty()) schema(d, nullptr, "degen", "s" + std::to_string(i) + " on level " + std::to_string(n) + " missing");
  }
  auto P = finish_sgroup(std::move(G));
  P->validate();
  return P;
}

void write_table(std::string& s, const FinGroup& H) {
  s += "elements";
  for (auto& n : H.names) s += " " + token_name(n);
  s += "\n";
  for (Idx a = 0; a < H.order(); ++a) {
    s += "row";
    for (Idx b = 0; b < H.order(); ++b) s += " " + std::to_string(H.mul(a, b));
    s += "\n";
  }
}

bool is_constant(const SGroup& G) {
  for (int n = 0; n <= G.bound; ++n) {
    if (G.levels[n] != G.levels[0]) return false;
    auto identity = [&](const std::vector<Idx>& v) {
      for (Idx a = 0; a < v.size(); ++a)
        if (v[a] != a) return false;
      return true;
    };
    for (auto& v : G.face[n])
      if (!identity(v)) return false;
    for (auto& v : G.degen[n])
      if (!identity(v)) return false;
  }
  return true;
}

}  // namespace

std::string serialize_sgroup(const SGroup& G) {
  std::string s = header("sgroup");
  if (is_constant(G)) {
    s += "constant\n";
    write_table(s, G.at(0));
    return s;
  }
  s += "bound " + std::to_string(G.bound) + "\n";
  for (int n = 0; n <= G.bound; ++n) {
    s += "level " + std::to_string(n) + "\n";
    write_table(s, G.at(n));
  }
  auto ops = [&](const char* w, const std::vector<std::vector<std::vector<Idx>>>& t) {
    for (int n = 0; n <= G.bound; ++n)
      for (std::size_t i = 0; i < t[n].size(); ++i) {
        s += std::string(w) + " " + std::to_string(n) + " " + std::to_string(i);
        for (Idx v : t[n][i]) s += " " + std::to_string(v);
        s += "\n";
      }
  };
  ops("face", G.face);
  ops("degen", G.degen);
  return s;
}

// --- maps and covers

std::string serialize_map(const SMap& f, const std::string& src_path, const std::string& tgt_path) {
  std::string s = header("map");
  s += "source " + src_path + "\ntarget " + tgt_path + "\n";
  for (auto [k, g] : sorted_generators(*f.src))
    s += "image " + std::to_string(k) + " " + token_name(f.src->gen_name(k, g)) + " " +
         token_name(f.tgt->cell_name(f.img[k][g])) + "\n";
  return s;
}

std::string serialize_cover(const Cover& c, const std::string& base_path) {
  std::string s = header("cover");
  s += "base " + base_path + "\n";
  const SSet& X = *c.X;
  for (auto& part : c.parts) {
    std::set<std::pair<int, Idx>> gens, below;
    for (int k = 0; k <= part.X->top(); ++k)
      for (Idx g = 0; g < part.X->ngen(k); ++g) gens.insert({k, part.incl.img[k][g].gen});
    std::function<void(int, Idx)> mark = [&](int k, Idx g) {
      for (int i = 0; k > 0 && i <= k; ++i) {
        const Cell& f = X.gen_face(k, g, i);
        if (below.insert({f.k, f.gen}).second) mark(f.k, f.gen);
      }
    };
    for (auto [k, g] : gens) mark(k, g);
    std::vector<std::pair<int, std::string>> top;
    for (auto [k, g] : gens)
      if (!below.count({k, g})) top.push_back({k, X.gen_name(k, g)});
    std::sort(top.begin(), top.end());
    s += "member";
    for (auto& [k, n] : top) s += " " + token_name(n);
    s += "\n";
  }
  return s;
}

// --- suites

Suite read_suite(const Document& d) {
  require_kind(d, "suite");
  allow(d, {"check", "run", "expect", "exit"});
  Suite S;
  std::set<std::string> names;
  for (auto& l : d.body) {
    const std::string& w = l.directive();
    if (w == "check") {
      arity(l, 2, 2);
      if (!names.insert(l.tok[1].text).second) schema(d, &l, "check", "duplicate check name " + l.tok[1].text);
      S.checks.push_back({l.tok[1].text, l.no, {}, {}, 0});
      continue;
    }
    if (S.checks.empty()) throw ParseFailure(l.no, l.tok[0].col, "'" + w + "' outside a check");
    SuiteCheck& c = S.checks.back();
    if (w == "run") {
      arity(l, 2);
      if (!c.args.empty()) throw ParseFailure(l.no, l.tok[0].col, "'run' given twice");
      c.args = rest(l, 1);
    } else if (w == "expect") {
      arity(l, 3);
      std::string v;
      for (std::size_t i = 2; i < l.tok.size(); ++i) v += (i > 2 ? " " : "") + l.tok[i].text;
      c.expect.push_back({l.tok[1].text, v});
    } else {
      arity(l, 2, 2);
      c.exit = to_int(l, 1);
    }
  }
  for (auto& c : S.checks) {
    if (c.args.empty()) {
      Line at{c.line, {}};
      schema(d, &at, "run", "check " + c.name + " has no command");
    }
  }
  return S;
}

// --- loader

Loader::Loader(fs::path base, int bound) : base_(fs::absolute(base).lexically_normal()), bound_(bound) {}

std::string Loader::resolve(const std::string& path, const std::string& from) const {
  fs::path p(path);
  fs::path dir = from.empty() ? base_ : fs::path(from).parent_path();
  return (dir / p).lexically_normal().string();
}

std::string Loader::key_of(const std::string& full) const {
  auto r = fs::path(full).lexically_relative(base_);
  return r.empty() ? full : r.string();
}

std::string Loader::ref(const Document& d, const Line& l, std::size_t i) const {
  arity(l, i + 1, i + 1);
  return resolve(l.tok[i].text, d.path);
}

const Document& Loader::document(const std::string& path) {
  std::string full = resolve(path);
  auto it = docs_.find(full);
  if (it != docs_.end()) return it->second;
  std::ifstream in(full, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + key_of(full));
  std::ostringstream s;
  s << in.rdbuf();
  std::string text = s.str();
  inputs_[key_of(full)] = content_hash(text);
  Document d = parse_document(text, full);
  return docs_.emplace(full, std::move(d)).first->second;
}

SSetP Loader::sset(const std::string& path) {
  std::string full = resolve(path);
  auto it = ssets_.find(full);
  if (it != ssets_.end()) return it->second;
  const Document& d = document(full);
  try {
    SSetP X = read_sset(d);
    ssets_[full] = X;
    return X;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::SchemaError) throw;
    fail(e.kind(), key_of(full) + ": " + e.what());
  }
}

FinGroupP Loader::fingroup(const std::string& path) {
  std::string full = resolve(path);
  auto it = fingroups_.find(full);
  if (it != fingroups_.end()) return it->second;
  auto H = std::make_shared<const FinGroup>(read_fingroup(document(full)));
  fingroups_[full] = H;
  return H;
}

SGroupP Loader::sgroup(const std::string& path, int bound) {
  std::string full = resolve(path);
  const Document& d = document(full);
  require_kind(d, "sgroup");
  bool constant = find_line(d, "constant") != nullptr;
  auto key = std::pair{full, constant ? bound : -1};
  auto it = groups_.find(key);
  if (it != groups_.end()) return it->second;
  SGroupP G = constant ? const_sgroup(fingroup(full), bound) : read_general_sgroup(d);
  groups_[key] = G;
  return G;
}

SMap Loader::map(const std::string& path) {
  std::string full = resolve(path);
  const Document& d = document(full);
  require_kind(d, "map");
  allow(d, {"source", "target", "image"});
  SMap f;
  f.src = sset(ref(d, need_line(d, "source"), 1));
  f.tgt = sset(ref(d, need_line(d, "target"), 1));
  const SSet& S = *f.src;
  f.img.resize(S.top() + 1);
  std::vector<std::vector<char>> set(S.top() + 1);
  for (int k = 0; k <= S.top(); ++k) {
    f.img[k].resize(S.ngen(k));
    set[k].assign(S.ngen(k), 0);
  }
  for (auto& l : d.body) {
    if (l.directive() != "image") continue;
    arity(l, 4, 4);
    int k = to_int(l, 1);
    auto g = S.find_gen(k, l.tok[2].text);
    if (!g) schema(d, &l, "image", "no generator " + l.tok[2].text + " of dimension " + std::to_string(k) + " in the source");
    if (set[k][*g]) schema(d, &l, "image", "generator " + l.tok[2].text + " given twice");
    try {
      f.img[k][*g] = parse_cell(*f.tgt, l.tok[3].text, k);
    } catch (const Error& e) {
      schema(d, &l, "image", e.what());
    }
    set[k][*g] = 1;
  }
  for (int k = 0; k <= S.top(); ++k)
    for (Idx g = 0; g < S.ngen(k); ++g)
      if (!set[k][g]) schema(d, nullptr, "image", "generator " + S.gen_name(k, g) + " has no image");
  f.validate();
  return f;
}

UniversalP Loader::universal(SGroupP G) {
  auto it = universal_.find(G.get());
  if (it != universal_.end()) return it->second;
  return universal_[G.get()] = universal_bundle(G, bound_);
}

TwistingFunction Loader::twisting(const Document& d, SSetP X, SGroupP G) {
  TwistingFunction t = constant_twisting(X, G);
  for (auto& l : d.body) {
    if (l.directive() != "twist") continue;
    arity(l, 4, 4);
    int k = to_int(l, 1);
    if (k < 1 || k >= static_cast<int>(t.gen.size()))
      throw ParseFailure(l.no, l.tok[1].col, "twist dimension outside 1.." + std::to_string(t.gen.size() - 1));
    auto g = X->find_gen(k, l.tok[2].text);
    if (!g) schema(d, &l, "twist", "no generator " + l.tok[2].text + " of dimension " + std::to_string(k));
    auto v = G->at(k - 1).find(l.tok[3].text);
    if (!v) schema(d, &l, "twist", "no element " + l.tok[3].text + " in the group");
    t.gen[k][*g] = *v;
  }
  t.validate();
  return t;
}

SGroupP Loader::bundle_group(const Document& d) { return sgroup(ref(d, need_line(d, "group"), 1)); }

GAction Loader::action(const std::string& path) {
  std::string full = resolve(path);
  const Document& d = document(full);
  require_kind(d, "action");
  allow(d, {"group", "construction", "space", "bundle"});
  const Line& c = need_line(d, "construction");
  arity(c, 2, 2);
  const std::string& how = c.tok[1].text;
  if (how == "bundle") {
    if (find_line(d, "group")) schema(d, find_line(d, "group"), "group", "taken from the bundle");
    return bundle(ref(d, need_line(d, "bundle"), 1)).action;
  }
  SGroupP G = bundle_group(d);
  if (how == "translation") return translation_action(G);
  if (how == "trivial") return trivial_action(sset(ref(d, need_line(d, "space"), 1)), G);
  schema(d, &c, "construction", "unknown action construction " + how);
}

GBundle Loader::bundle(const std::string& path) {
  std::string full = resolve(path);
  auto it = bundles_.find(full);
  if (it != bundles_.end()) return it->second;
  const Document& d = document(full);
  require_kind(d, "bundle");
  allow(d, {"group", "base", "construction", "twist", "space"});
  const Line& c = need_line(d, "construction");
  arity(c, 2, 2);
  const std::string& how = c.tok[1].text;
  SGroupP G = bundle_group(d);
  GBundle b;
  if (how == "twisted") {
    b = twisted_product(twisting(d, sset(ref(d, need_line(d, "base"), 1)), G)).bundle;
  } else if (how == "universal") {
    b = universal(G)->bundle;
  } else if (how == "trivial") {
    SSetP P = sset(ref(d, need_line(d, "space"), 1));
    SSetP pt = point();
    b = GBundle{trivial_action(P, G), pt, SMap::constant(P, pt, 0)};
  } else {
    schema(d, &c, "construction", "unknown bundle construction " + how);
  }
  bundles_[full] = b;
  return b;
}

Cocycle Loader::cocycle(const std::string& path) {
  std::string full = resolve(path);
  const Document& d = document(full);
  require_kind(d, "cocycle");
  allow(d, {"group", "base", "construction", "twist", "bundle"});
  const Line& c = need_line(d, "construction");
  arity(c, 2, 2);
  const std::string& how = c.tok[1].text;
  if (how == "extraction") {
    GBundle b = bundle(ref(d, need_line(d, "bundle"), 1));
    return extr(b, bound_, universal(b.action.G)).c;
  }
  if (how != "twisting") schema(d, &c, "construction", "unknown cocycle construction " + how);
  SGroupP G = bundle_group(d);
  SSetP X = sset(ref(d, need_line(d, "base"), 1));
  UniversalP U = universal(G);
  TwistingFunction t = twisting(d, X, G);
  return make_cocycle(SMap::identity(X), t.classifying_map(U->W), bound_, U);
}

Cover Loader::cover(const std::string& path) {
  std::string full = resolve(path);
  const Document& d = document(full);
  require_kind(d, "cover");
  allow(d, {"base", "member"});
  SSetP X = sset(ref(d, need_line(d, "base"), 1));
  std::vector<std::vector<std::string>> members;
  for (auto& l : d.body)
    if (l.directive() == "member") {
      arity(l, 2);
      members.push_back(rest(l, 1));
    }
  try {
    return make_cover(X, members);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::VertexNotFound || e.kind() == ErrorKind::EmptyInput) schema(d, nullptr, "member", e.what());
    throw;
  }
}

}  // namespace skan::io
