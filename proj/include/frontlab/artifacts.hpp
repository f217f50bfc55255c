#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

class MissingManifest : public std::runtime_error {
 public:
  explicit MissingManifest(const std::string& w) : std::runtime_error(w) {}
};

std::string fnv1a_hex(const std::string& bytes);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

struct ManifestCheck {
  std::string name;
  bool pass;
  std::string detail;
};

// Run ledger written next to every command's outputs: configuration hash,
// code version, per-file content hashes, and the pass/fail checks the
// command performed.  Wall-clock lives in a separate field so the rest of
// the file is reproducible byte for byte.
struct Manifest {
  std::string command;
  std::string config_json;
  std::string code_version;
  std::vector<std::pair<std::string, std::string>> files;  // name -> hash
  std::vector<ManifestCheck> checks;
  long wall_clock_ms = 0;

  void add_file(const std::string& dir, const std::string& name);
  void add_check(const std::string& name, bool pass, const std::string& detail);
  bool all_passed() const;
  void save(const std::string& dir) const;
  static Manifest load(const std::string& dir);
};

}  // namespace frontlab
