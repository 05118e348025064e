#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "pauliprop/errors.hpp"

namespace pauliprop::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw ResourceError("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

Manifest::Manifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {}

void Manifest::write(const std::string& path) const {
  using nlohmann::json;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  auto digests = [](const std::vector<std::string>& files) {
    json arr = json::array();
    for (const auto& f : files) arr.push_back({{"path", f}, {"sha256", sha256_file(f)}});
    return arr;
  };
  json doc = {
      {"command", command_},
      {"argv", argv_},
      {"flags", flags_},
      {"seed", seed_ ? json(*seed_) : json(nullptr)},
      {"version", PAULIPROP_VERSION},
      {"wall_seconds", wall},
      {"inputs", digests(inputs_)},
      {"outputs", digests(outputs_)},
  };
  if (!notes_.empty()) doc["results"] = notes_;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write manifest " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace pauliprop::cli
