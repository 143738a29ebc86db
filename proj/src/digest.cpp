#include "symgen/digest.hpp"

#include <stdexcept>

#include <openssl/evp.h>

namespace symgen {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("SHA-256 digest failed");
  return out;
}

std::string sha256_hex(std::string_view data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex;
  for (std::uint8_t b : sha256(data)) {
    hex += digits[b >> 4];
    hex += digits[b & 0xf];
  }
  return hex;
}

} // namespace symgen
