#ifndef NOUNCLASS_UNICODE_HPP
#define NOUNCLASS_UNICODE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include "core.hpp"

/**
 * @file unicode.hpp
 *
 * @brief Word normalization and UTF-8 helpers (ICU-backed).
 *
 * Words are NFC-normalized and lowercased at every ingest point. ASCII apostrophe U+0027
 * is a word character; the typographic apostrophe U+2019 is folded onto it.
 */

namespace nounclass::unicode {

inline constexpr UChar32 apostrophe = 0x27;
inline constexpr UChar32 right_single_quote = 0x2019;

/**
 * Decode UTF-8, replacing malformed sequences with U+FFFD.
 * `substitutions` receives the number of replacements.
 */
inline icu::UnicodeString decode_utf8(std::string_view bytes, std::size_t* substitutions = nullptr) {
    if (bytes.empty()) {
        if (substitutions) *substitutions = 0;
        return {};
    }
    UErrorCode status = U_ZERO_ERROR;
    int32_t needed = 0;
    int32_t subs = 0;
    u_strFromUTF8WithSub(nullptr, 0, &needed, bytes.data(), static_cast<int32_t>(bytes.size()), 0xFFFD, &subs, &status);
    if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
        throw ValidationError("UTF-8 decode failed: " + std::string(u_errorName(status)));
    }
    icu::UnicodeString out;
    status = U_ZERO_ERROR;
    UChar* buffer = out.getBuffer(needed + 1);
    u_strFromUTF8WithSub(buffer, needed + 1, &needed, bytes.data(), static_cast<int32_t>(bytes.size()), 0xFFFD, &subs, &status);
    out.releaseBuffer(needed);
    if (U_FAILURE(status)) {
        throw ValidationError("UTF-8 decode failed: " + std::string(u_errorName(status)));
    }
    if (substitutions) *substitutions = static_cast<std::size_t>(subs);
    return out;
}

inline std::string to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

/**
 * Lowercase (root locale), fold U+2019 to U+0027, then NFC.
 */
inline icu::UnicodeString normalize(icu::UnicodeString s) {
    s.toLower(icu::Locale::getRoot());
    s.findAndReplace(icu::UnicodeString(right_single_quote), icu::UnicodeString(apostrophe));
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw ValidationError("ICU NFC normalizer unavailable: " + std::string(u_errorName(status)));
    }
    icu::UnicodeString out = nfc->normalize(s, status);
    if (U_FAILURE(status)) {
        throw ValidationError("NFC normalization failed: " + std::string(u_errorName(status)));
    }
    return out;
}

inline std::string normalize_word(std::string_view word) {
    return to_utf8(normalize(decode_utf8(word)));
}

inline bool is_letter(UChar32 c) {
    const auto mask = U_GET_GC_MASK(c);
    return (mask & (U_GC_L_MASK | U_GC_M_MASK)) != 0;
}

/// Token boundary: whitespace or punctuation, apostrophes excluded.
inline bool is_separator(UChar32 c) {
    if (c == apostrophe || c == right_single_quote) {
        return false;
    }
    return u_isUWhiteSpace(c) || u_ispunct(c);
}

/// Number of code points in valid UTF-8.
inline std::size_t length(std::string_view utf8) {
    std::size_t n = 0;
    for (unsigned char ch : utf8) {
        if ((ch & 0xC0) != 0x80) ++n;
    }
    return n;
}

/// First `n` code points, or nothing when the word is shorter.
inline std::optional<std::string_view> prefix(std::string_view utf8, std::size_t n) {
    std::size_t seen = 0;
    std::size_t pos = 0;
    while (pos < utf8.size() && seen < n) {
        ++pos;
        while (pos < utf8.size() && (static_cast<unsigned char>(utf8[pos]) & 0xC0) == 0x80) ++pos;
        ++seen;
    }
    if (seen < n) {
        return std::nullopt;
    }
    return utf8.substr(0, pos);
}

}

#endif
