#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hinbench {

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Escapes '%' and ' ' so names survive space-separated token files.
std::string escape_token(std::string_view s);
std::string unescape_token(std::string_view s);

// FNV-1a, used for content-addressed stage caching.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a_file(const std::string& path);

std::string hex64(std::uint64_t v);

// Locale-independent float formatting (17 significant digits round-trips doubles).
std::string format_double(double v, int precision = 17);

}  // namespace hinbench
