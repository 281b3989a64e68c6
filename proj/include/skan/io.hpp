#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "skan/classification.hpp"

namespace skan::io {

constexpr int kFormatVersion = 1;

/**
 * Line-oriented text documents. The first line is `ssx <version>`, the
 * second `kind <kind>`; every further line is a directive followed by
 * whitespace-separated tokens. `#` starts a comment.
 */
struct Token {
  std::string text;
  int col = 1;
};
struct Line {
  int no = 0;
  std::vector<Token> tok;
  const std::string& directive() const { return tok[0].text; }
};
struct Document {
  std::string path;
  int version = kFormatVersion;
  std::string kind;
  std::vector<Line> body;
};

Document parse_document(const std::string& text, const std::string& path = "<input>");
/// Throws InvalidArgument naming the path when the file cannot be read.
std::string read_file(const std::string& path);

// --- canonical text
std::string serialize_sset(const SSet& X);
/// The constant form is used when every level is the same group with identity operators.
std::string serialize_sgroup(const SGroup& G);
std::string serialize_map(const SMap& f, const std::string& src_path, const std::string& tgt_path);
std::string serialize_cover(const Cover& c, const std::string& base_path);
/// Directives in input order, comments dropped, single spaces.
std::string serialize_document(const Document& d);

// --- typed readers from documents
SSetP read_sset(const Document& d);
FinGroup read_fingroup(const Document& d);  // constant groups only

struct SuiteCheck {
  std::string name;
  int line = 0;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> expect;
  int exit = 0;
};
struct Suite {
  std::vector<SuiteCheck> checks;
};
Suite read_suite(const Document& d);

/**
 * Loads documents and everything they reference. Paths inside a document
 * are relative to its directory; each file is parsed once and the loaded
 * objects are shared, so a map and a bundle naming the same base agree.
 */
class Loader {
 public:
  Loader(std::filesystem::path base, int bound);

  const Document& document(const std::string& path);
  std::string kind(const std::string& path) { return document(path).kind; }

  SSetP sset(const std::string& path);
  /// Constant groups are built at `bound`, one past the loader bound by
  /// default; stored groups keep their own bound.
  SGroupP sgroup(const std::string& path, int bound);
  SGroupP sgroup(const std::string& path) { return sgroup(path, bound_ + 1); }
  FinGroupP fingroup(const std::string& path);
  SMap map(const std::string& path);
  GAction action(const std::string& path);
  GBundle bundle(const std::string& path);
  Cocycle cocycle(const std::string& path);
  Cover cover(const std::string& path);
  /// Universal bundle of G at the loader bound, built once per group.
  UniversalP universal(SGroupP G);

  int bound() const { return bound_; }
  /// Every file read so far, relative to the base directory, with its content hash.
  const std::map<std::string, std::string>& inputs() const { return inputs_; }
  std::string resolve(const std::string& path, const std::string& from = "") const;

 private:
  std::string key_of(const std::string& full) const;
  std::string ref(const Document& d, const Line& l, std::size_t i) const;
  SGroupP bundle_group(const Document& d);
  TwistingFunction twisting(const Document& d, SSetP X, SGroupP G);

  std::filesystem::path base_;
  int bound_;
  std::map<std::string, Document> docs_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, SSetP> ssets_;
  std::map<std::pair<std::string, int>, SGroupP> groups_;
  std::map<std::string, FinGroupP> fingroups_;
  std::map<std::string, GBundle> bundles_;
  std::map<const SGroup*, UniversalP> universal_;
};

/// Hex digest of file contents, used to identify report inputs.
std::string content_hash(const std::string& text);

}  // namespace skan::io
