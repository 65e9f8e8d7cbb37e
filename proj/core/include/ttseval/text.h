#ifndef TTSEVAL_TEXT_H_
#define TTSEVAL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace ttseval {

std::string_view trim(std::string_view text);
std::string ascii_lower(std::string_view text);
bool contains_ci(std::string_view haystack, std::string_view needle);

// Splits on '\n' and drops a trailing '\r' from each line. A final newline
// does not open an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);

// Trim, collapse internal whitespace runs to one space, ASCII casefold.
std::string normalize_finding_text(std::string_view text);

// Decodes UTF-8 into code points. Invalid sequences decode byte-wise as
// U+FFFD so distances stay defined on arbitrary input.
std::u32string utf8_to_u32(std::string_view text);
bool is_valid_utf8(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace ttseval

#endif  // TTSEVAL_TEXT_H_
