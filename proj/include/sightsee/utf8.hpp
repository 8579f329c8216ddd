#pragma once

#include <string>
#include <string_view>

namespace sightsee::utf8 {

// Invalid byte sequences decode to U+FFFD one byte at a time.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

bool is_space(char32_t c);
// ASCII punctuation, CJK symbols and punctuation, and the fullwidth ASCII
// punctuation block.
bool is_punctuation(char32_t c);

}  // namespace sightsee::utf8
