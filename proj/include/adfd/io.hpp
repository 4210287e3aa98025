#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace adfd {

// Reads a whole file; throws ModelError(IO_ERROR).
std::string read_file(const std::string& path);

// Parses a JSON document; throws ModelError(INVALID_DOCUMENT) with the
// parser's position message.
nlohmann::json parse_json(const std::string& text);

// 64-bit FNV-1a content fingerprint, 16 hex digits. Not cryptographic;
// used to tie a report to the exact input bytes it was produced from.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace adfd
