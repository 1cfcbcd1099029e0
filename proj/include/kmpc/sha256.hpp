#pragma once

#include <cstdint>
#include <string>

namespace kmpc {

// SHA-256 (FIPS 180-4) of a byte string, as lowercase hex. Used for the
// pipeline provenance hashes embedded in every artifact.
std::string sha256_hex(const std::string& bytes);

}  // namespace kmpc
