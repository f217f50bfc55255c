#include "frontlab/artifacts.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef FRONTLAB_VERSION
#define FRONTLAB_VERSION "0.1.0"
#endif

namespace frontlab {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void Manifest::add_file(const std::string& dir, const std::string& name) {
  files.push_back({name, fnv1a_hex(read_text_file(dir + "/" + name))});
}

void Manifest::add_check(const std::string& name, bool pass, const std::string& detail) {
  checks.push_back({name, pass, detail});
}

bool Manifest::all_passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Manifest::save(const std::string& dir) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["code_version"] = std::string(FRONTLAB_VERSION);
  j["config"] = nlohmann::json::parse(config_json.empty() ? "{}" : config_json);
  j["config_hash"] = fnv1a_hex(config_json);
  j["files"] = nlohmann::json::array();
  for (const auto& [name, hash] : files) {
    nlohmann::ordered_json f;
    f["name"] = name;
    f["hash"] = hash;
    j["files"].push_back(f);
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json f;
    f["name"] = c.name;
    f["pass"] = c.pass;
    f["detail"] = c.detail;
    j["checks"].push_back(f);
  }
  j["wall_clock_ms"] = wall_clock_ms;
  write_text_file(dir + "/manifest.json", j.dump(2) + "\n");
}

Manifest Manifest::load(const std::string& dir) {
  std::ifstream in(dir + "/manifest.json");
  if (!in) throw MissingManifest("no manifest.json in " + dir);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw MissingManifest("corrupt manifest in " + dir + ": " + e.what());
  }
  Manifest m;
  m.command = j.at("command").get<std::string>();
  m.code_version = j.at("code_version").get<std::string>();
  m.config_json = j.at("config").dump();
  for (const auto& f : j.at("files"))
    m.files.push_back({f.at("name").get<std::string>(), f.at("hash").get<std::string>()});
  for (const auto& c : j.at("checks"))
    m.checks.push_back(
        {c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>()});
  m.wall_clock_ms = j.value("wall_clock_ms", 0L);
  return m;
}

}  // namespace frontlab
