#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geneqa::util {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
bool contains_ci(std::string_view haystack, std::string_view needle);

// Splits on any of the single-character separators, dropping empty pieces.
std::vector<std::string> split_any(std::string_view s, std::string_view seps);

// Splits free text into whitespace-delimited words.
std::vector<std::string> split_words(std::string_view s);

std::size_t count_words(std::string_view s);

// Query-string encoding used for E-utils terms: space becomes '+',
// unreserved characters pass through, everything else is %XX.
std::string url_encode_query_value(std::string_view s);

// Inverse of url_encode_query_value ('+' decodes to space).
std::string url_decode_query_value(std::string_view s);

// FNV-1a 64-bit, rendered as 16 hex chars. Used for golden hashes of
// fixture files and for stable transcript file names.
std::uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Formats a double with fixed decimals (no locale surprises).
std::string format_fixed(double v, int decimals);

}  // namespace geneqa::util
