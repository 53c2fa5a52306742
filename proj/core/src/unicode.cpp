#include "unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <vector>

namespace qgen::uni {

namespace {

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, err);
  if (!err) out.append(buf, static_cast<size_t>(len));
}

bool is_punct(UChar32 c) {
  switch (u_charType(c)) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_mark(UChar32 c) {
  switch (u_charType(c)) {
    case U_NON_SPACING_MARK:
    case U_ENCLOSING_MARK:
    case U_COMBINING_SPACING_MARK:
      return true;
    default:
      return false;
  }
}

template <typename Fn>
void for_each_cp(std::string_view s, Fn&& fn) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  auto n = static_cast<int32_t>(s.size());
  while (i < n) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, n, c);
    fn(c, s.substr(static_cast<size_t>(start), static_cast<size_t>(i - start)));
  }
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_cp(s, [&](UChar32 c, std::string_view raw) {
    if (c < 0) {
      out.append(raw);
    } else {
      append_utf8(out, u_tolower(c));
    }
  });
  return out;
}

std::string remove_punctuation(std::string_view s) {
  std::string stripped;
  stripped.reserve(s.size());
  for_each_cp(s, [&](UChar32 c, std::string_view raw) {
    if (c < 0 || !is_punct(c)) stripped.append(raw);
  });
  // Collapse whitespace the removals may have exposed.
  std::string out;
  out.reserve(stripped.size());
  bool in_space = true;  // also trims leading spaces
  for_each_cp(stripped, [&](UChar32 c, std::string_view raw) {
    bool space = c >= 0 && u_isUWhiteSpace(c);
    if (space) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.append(raw);
      in_space = false;
    }
  });
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string remove_diacritics(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2* nfd = unorm2_getNFDInstance(&status);
  if (U_FAILURE(status)) return std::string(s);

  // UTF-8 -> UTF-16
  std::vector<UChar> u16(s.size() + 1);
  int32_t u16len = 0;
  status = U_ZERO_ERROR;
  u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16len,
                s.data(), static_cast<int32_t>(s.size()), &status);
  if (U_FAILURE(status)) return std::string(s);

  std::vector<UChar> dec(static_cast<size_t>(u16len) * 4 + 16);
  status = U_ZERO_ERROR;
  int32_t declen = unorm2_normalize(nfd, u16.data(), u16len, dec.data(),
                                    static_cast<int32_t>(dec.size()), &status);
  if (U_FAILURE(status)) return std::string(s);

  std::string out;
  out.reserve(s.size());
  int32_t i = 0;
  while (i < declen) {
    UChar32 c;
    U16_NEXT(dec.data(), i, declen, c);
    if (!is_mark(c)) append_utf8(out, c);
  }
  return out;
}

bool all_punctuation(std::string_view s) {
  if (s.empty()) return false;
  bool ok = true;
  for_each_cp(s, [&](UChar32 c, std::string_view) {
    if (c < 0 || !is_punct(c)) ok = false;
  });
  return ok;
}

}  // namespace qgen::uni
