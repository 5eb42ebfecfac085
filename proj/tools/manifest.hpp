#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cbundle::cli {

/// Record of one CLI run. Replaying `argv` reproduces every output whose
/// digest is listed; "<stdout>" stands for the text printed on stdout.
struct RunManifest {
  std::string tool = "cbundle";
  std::string version;
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::map<std::string, std::string> outputs;  // path -> sha256
};

inline constexpr const char* kStdoutKey = "<stdout>";

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

std::string sha256_hex(const std::string& bytes);
/// Throws cbundle::InvalidInputError if the file cannot be read.
std::string sha256_file(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace cbundle::cli
