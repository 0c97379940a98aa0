#ifndef TERMDATA_TEXT_HPP
#define TERMDATA_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace termdata {

// Splits on runs of ASCII whitespace; never returns empty tokens.
std::vector<std::string> split_ws(std::string_view line);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split_char(std::string_view line, char delim);

std::string join(const std::vector<std::string>& tokens, std::string_view sep);

// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

bool is_blank(std::string_view s);

// True iff s is well-formed UTF-8.
bool valid_utf8(std::string_view s);

// Lowercases ASCII plus the Latin-1 Supplement and Latin Extended-A blocks
// (covers Baltic, German and most other Latin-script orthographies).
// Characters outside those blocks pass through unchanged.
std::string fold_lower(std::string_view s);

// Reads all lines of a UTF-8 text file. Accepts LF and CRLF endings; the
// returned lines carry neither. Throws InputError on a missing file or on
// invalid UTF-8 (naming the 1-based line).
std::vector<std::string> read_lines(const std::string& path);

// Writes lines joined with LF, with a trailing LF after the last line.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace termdata

#endif  // TERMDATA_TEXT_HPP
