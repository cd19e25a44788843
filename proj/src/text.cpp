#include "synthcorp/text.hpp"

#include "synthcorp/errors.hpp"

#include <cstdio>

namespace synthcorp {

ReferentialError::ReferentialError(std::vector<std::string> offenders)
    : Error([&] {
        std::string msg = "dangling relation targets:";
        for (const auto& o : offenders) msg += " " + o;
        return msg;
      }()),
      offenders_(std::move(offenders)) {}

AlignmentError::AlignmentError(std::vector<std::string> unmatched)
    : Error([&] {
        std::string msg = "unaligned instance keys:";
        for (const auto& k : unmatched) msg += " " + k;
        return msg;
      }()),
      unmatched_(std::move(unmatched)) {}

namespace text {

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::vector<std::string_view> letter_runs(std::string_view s) {
  std::vector<std::string_view> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_letter(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_letter(static_cast<unsigned char>(s[j]))) ++j;
    runs.push_back(s.substr(i, j - i));
    i = j;
  }
  return runs;
}

std::vector<std::string_view> split_words(std::string_view s, std::vector<char>* separators) {
  std::vector<std::string_view> words;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ' || s[i] == '-') {
      words.push_back(s.substr(start, i - start));
      if (separators) separators->push_back(s[i]);
      start = i + 1;
    }
  }
  words.push_back(s.substr(start));
  return words;
}

CaseClass classify_case(std::string_view word) {
  bool any_upper = false, any_lower = false, first_upper = false, rest_upper = false;
  bool first = true;
  for (char c : word) {
    bool up = c >= 'A' && c <= 'Z';
    bool low = c >= 'a' && c <= 'z';
    if (first && (up || low)) {
      first_upper = up;
      first = false;
    } else if (up) {
      rest_upper = true;
    }
    any_upper |= up;
    any_lower |= low;
  }
  if (!any_upper) return CaseClass::lower;
  if (first_upper && !rest_upper) return CaseClass::capitalized;
  if (!any_lower) return CaseClass::upper;
  return CaseClass::mixed;
}

std::string apply_case(std::string_view lower_word, CaseClass cls) {
  std::string out(lower_word);
  switch (cls) {
    case CaseClass::capitalized:
      for (char& c : out) {
        if (c >= 'a' && c <= 'z') {
          c = static_cast<char>(c - 'a' + 'A');
          break;
        }
        if (c >= 'A' && c <= 'Z') break;
      }
      break;
    case CaseClass::upper:
      for (char& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      }
      break;
    case CaseClass::lower:
    case CaseClass::mixed:
      break;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && static_cast<unsigned char>(s[b]) <= ' ') ++b;
  while (e > b && static_cast<unsigned char>(s[e - 1]) <= ' ') --e;
  return std::string(s.substr(b, e - b));
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace text
}  // namespace synthcorp
