#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace truelearn {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's contents. Throws DataError when it cannot be read.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace truelearn
