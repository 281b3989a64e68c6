#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "skan/cli.hpp"
#include "skan/io.hpp"

using namespace skan;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SKAN_SOURCE_DIR;
const fs::path kData = kSource / "data";

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "skan_test_cli";
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream o(p, std::ios::binary);
  o << text;
}

cli::Outcome run(const std::vector<std::string>& args, std::string* text = nullptr) {
  std::ostringstream out, err;
  auto o = cli::run_command(args, kData, &out, &err);
  if (text) *text = out.str();
  return o;
}

const char* kTriangle =
    "ssx 1\n"
    "kind sset\n"
    "simplex 0 0\n"
    "simplex 1 0\n"
    "simplex 2 0\n"
    "simplex 01 1 1 0\n"
    "simplex 02 1 2 0\n"
    "simplex 12 1 2 1\n"
    "simplex 012 2 12 02 01\n";

}  // namespace

TEST_CASE("canonical documents round trip") {
  auto X = io::read_sset(io::parse_document(kTriangle));
  CHECK(io::serialize_sset(*X) == kTriangle);
  CHECK(find_iso(X, simplex(2)).has_value());

  // comments, spacing and generator order do not matter
  std::string messy = "# a triangle\nssx 1\nkind   sset\nsimplex 012 2 12 02 01  # top\nsimplex 12 1 2 1\n"
                      "simplex 02 1 2 0\nsimplex 01 1 1 0\nsimplex 2 0\nsimplex 1 0\n\nsimplex 0 0\n";
  CHECK(io::serialize_sset(*io::read_sset(io::parse_document(messy))) == kTriangle);

  // a truncated object
  Wbar W = wbar(const_sgroup(std::make_shared<FinGroup>(cyclic_group(3)), 3), 3);
  std::string t = io::serialize_sset(*W.X());
  auto Y = io::read_sset(io::parse_document(t));
  CHECK(io::serialize_sset(*Y) == t);
  for (int n = 0; n <= 3; ++n) CHECK(Y->size(n) == W.X()->size(n));

  // groups: constant and general
  auto Z2 = std::make_shared<FinGroup>(cyclic_group(2));
  std::string g = io::serialize_sgroup(*const_sgroup(Z2, 3));
  CHECK(g.find("constant") != std::string::npos);
  auto E = dold_kan_em(Z2, 1, 2);
  std::string ge = io::serialize_sgroup(*E);
  CHECK(ge.find("bound 2") != std::string::npos);
  fs::path dir = scratch();
  write(dir / "em.sgx", ge);
  io::Loader L(dir, 2);
  auto F = L.sgroup("em.sgx");
  F->validate();
  CHECK(io::serialize_sgroup(*F) == ge);
  CHECK(find_iso(F->set, E->set).has_value());
}

TEST_CASE("parse and schema errors") {
  try {
    io::read_sset(io::parse_document("ssx 1\nkind sset\nsimplex v 0\nsimplex e x v v\n"));
    FAIL("expected a parse error");
  } catch (const ParseFailure& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 11);
  }
  try {
    io::parse_document("kind sset\n");
    FAIL("expected a parse error");
  } catch (const ParseFailure& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(io::parse_document("ssx 2\nkind sset\n"), ParseFailure);
  try {
    io::read_sset(io::parse_document("ssx 1\nkind sset\nsimplex v 0\nsimplex e 1 v w\n"));
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaError);
    CHECK(std::string(e.what()).find("faces") != std::string::npos);
  }
  try {
    io::read_suite(io::parse_document("ssx 1\nkind suite\ncheck a\nexpect x 1\n"));
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaError);
    CHECK(std::string(e.what()).find("'run'") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_document("ssx 1\nkind widget\n"), Error);
  CHECK_THROWS_AS(io::read_sset(io::parse_document("ssx 1\nkind sset\nvertex v\n")), ParseFailure);
}

TEST_CASE("composite documents load through their references") {
  io::Loader L(kData, 3);
  GBundle b = L.bundle("dbl.bdl");
  b.validate();
  CHECK(b.action.free());
  CHECK(b.base == L.sset("s1.ssx"));
  CHECK(b.base->size(1) == 2);
  CHECK(pi0_count(*b.action.P) == 1);
  CHECK(L.inputs().size() == 3);

  SMap f = L.map("basepoint.map");
  CHECK(f.tgt == b.base);
  std::string m = io::serialize_map(f, "point.ssx", "s1.ssx");
  CHECK(m.find("image 0 0 v") != std::string::npos);

  Cover c = L.cover("b3_faces.cov");
  std::string cv = io::serialize_cover(c, "b3.ssx");
  CHECK(cv == "ssx 1\nkind cover\nbase b3.ssx\nmember 012\nmember 013\nmember 023\nmember 123\n");

  Cocycle k = L.cocycle("s1_twist.ccy");
  k.validate();
  CHECK(k.left_fibration.ok);
  CHECK(L.action("dbl.act").free());
  CHECK_THROWS_AS(L.bundle("missing.bdl"), Error);
}

TEST_CASE("wbar command") {
  fs::path out = scratch() / "wbar.ssx";
  std::string text;
  auto o = run({"wbar", "--group", "z2.sgx", "--bound", "4", "--out", out.string()}, &text);
  CHECK(o.exit == 0);
  std::vector<std::size_t> orders(5, 2);
  std::vector<std::size_t> want;
  for (int n = 0; n <= 4; ++n) want.push_back(oracle::wbar_level(orders, n));
  CHECK(o.report["outputs"]["sizes"].get<std::vector<std::size_t>>() == want);
  CHECK(text.find("sizes: 1,2,4,8,16") != std::string::npos);
  CHECK(o.report["certificates"][0]["level"] == "ISO");
  auto W = io::read_sset(io::parse_document(io::read_file(out.string())));
  CHECK(find_iso(W, wbar(const_sgroup(std::make_shared<FinGroup>(cyclic_group(2)), 4), 4).X()).has_value());
  CHECK(o.report["inputs"].contains("z2.sgx"));
}

TEST_CASE("h1 and classify commands") {
  std::string text;
  auto o = run({"h1", "--base", "s1.ssx", "--group", "z2.sgx"}, &text);
  CHECK(o.exit == 0);
  CHECK(text.find("classes: 2") != std::string::npos);
  CHECK(text.find("routes_agree: true") != std::string::npos);

  auto c = run({"classify", "--bundle", "dbl.bdl"});
  CHECK(c.exit == 0);
  CHECK(c.report["outputs"]["principality"] == "STRICT");
  auto bad = run({"classify", "--bundle", "collapse.bdl"});
  CHECK(bad.exit == 1);
  CHECK(bad.report["outputs"]["principality"] == "FAIL");
}

TEST_CASE("exit codes") {
  auto k = run({"kan-check", "d1.ssx", "--bound", "2"});
  CHECK(k.exit == 1);
  CHECK(k.report["outputs"]["counterexample_dimension"] == 2);
  CHECK(run({"no-such-command"}).exit == 2);
  CHECK(run({"wbar"}).exit == 2);
  CHECK(run({"wbar", "--group", "z2.sgx", "--policy", "maybe"}).exit == 2);
  auto m = run({"homology", "nowhere.ssx"});
  CHECK(m.exit == 2);
  CHECK(m.report["error"].get<std::string>().find("nowhere.ssx") != std::string::npos);
  fs::path dir = scratch();
  write(dir / "broken.ssx", "ssx 1\nkind sset\nsimplex v zero\n");
  auto p = cli::run_command({"homology", "broken.ssx"}, dir);
  CHECK(p.exit == 2);
  CHECK(p.report["error"].get<std::string>().find("line 3, column 11") != std::string::npos);
}

TEST_CASE("suites") {
  fs::path dir = scratch();
  std::string d = kData.string();
  write(dir / "wrong.suite",
        "ssx 1\nkind suite\n"
        "check h1-wrong\nrun h1 --base " + d + "/s1.ssx --group " + d + "/z2.sgx\nexpect classes 3\n"
        "check h1-right\nrun h1 --base " + d + "/s1.ssx --group " + d + "/z3.sgx\nexpect classes 3\n"
        "check interval\nrun kan-check " + d + "/d1.ssx --bound 2\nexit 1\n");
  auto w = cli::run_command({"verify", "wrong.suite"}, dir);
  CHECK(w.exit == 1);
  auto& res = w.report["outputs"]["results"];
  REQUIRE(res.size() == 3);
  CHECK_FALSE(res[0]["ok"].get<bool>());
  CHECK(res[0]["expectations"][0]["actual"] == "2");
  CHECK(res[1]["ok"].get<bool>());
  CHECK(res[2]["ok"].get<bool>());
  CHECK(w.report["outputs"]["failed"] == 1);

  write(dir / "missing.suite",
        "ssx 1\nkind suite\ncheck fine\nrun pi0 " + d + "/s1.ssx\ncheck gone\nrun homology data/absent.ssx\n");
  auto m = cli::run_command({"verify", "missing.suite"}, dir);
  CHECK(m.exit == 2);
  CHECK(m.report["error"].get<std::string>().find("data/absent.ssx") != std::string::npos);
  CHECK(cli::run_command({"verify", "no.suite"}, dir).exit == 2);

  // two runs agree once timings are removed
  auto a = cli::run_command({"verify", "wrong.suite"}, dir);
  auto b = cli::run_command({"verify", "wrong.suite"}, dir);
  CHECK(cli::without_timing(a.report).dump() == cli::without_timing(b.report).dump());
  CHECK(a.report.dump() != cli::without_timing(a.report).dump());
}
