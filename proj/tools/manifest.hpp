#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pauliprop::cli {

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Run record written next to every result file.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv);

  void flag(const std::string& name, nlohmann::json value) { flags_[name] = std::move(value); }
  void note(const std::string& name, nlohmann::json value) { notes_[name] = std::move(value); }
  void seed(std::uint64_t s) { seed_ = s; }
  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  /// Writes the manifest to `path` with digests of every listed file.
  void write(const std::string& path) const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  nlohmann::json flags_ = nlohmann::json::object();
  nlohmann::json notes_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace pauliprop::cli
