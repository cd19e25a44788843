#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synthcorp::text {

// ASCII case folding. Bytes outside ASCII are left untouched, so offsets are
// preserved between a string and its folded copy.
std::string fold(std::string_view s);

// Bytes that belong to a word: ASCII letters plus any non-ASCII byte (UTF-8
// sequences are treated as letters).
bool is_letter(unsigned char c);

// Maximal runs of letters.
std::vector<std::string_view> letter_runs(std::string_view s);

// Splits on spaces and hyphens, keeping empty pieces. The separators between
// pieces are returned in `separators` (size = pieces - 1).
std::vector<std::string_view> split_words(std::string_view s, std::vector<char>* separators = nullptr);

enum class CaseClass { lower, capitalized, upper, mixed };

CaseClass classify_case(std::string_view word);

// Re-cases a lowercase word; `mixed` leaves it lowercase.
std::string apply_case(std::string_view lower_word, CaseClass cls);

std::string trim(std::string_view s);

// FNV-1a 64-bit over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t v);

}  // namespace synthcorp::text
