#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cbundle/errors.hpp"

namespace cbundle::cli {

nlohmann::json to_json(const RunManifest& m) {
  return {{"tool", m.tool},       {"version", m.version}, {"command", m.command},
          {"argv", m.argv},       {"inputs", m.inputs},   {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

}  // namespace cbundle::cli
