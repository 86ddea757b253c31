#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hgen {

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

// Lowercased alphanumeric token runs ("Hero.java" -> {"hero", "java"}).
std::vector<std::string> tokenize(std::string_view text);

// Whitespace-separated word count.
int word_count(std::string_view text);

// Number of lines; a trailing fragment without '\n' counts as a line.
int line_count(std::string_view text);

// Splits into lines keeping the terminator, so concatenation round-trips.
std::vector<std::string> split_lines_keep_ends(std::string_view text);

// Replaces invalid UTF-8 byte sequences with '?'.
std::string sanitize_utf8(std::string_view bytes);

// Glob match with '*' (within a path segment), '?' and '**' (across
// segments). Paths use '/' separators.
bool glob_match(std::string_view pattern, std::string_view path);

// Renders "{{key}}" placeholders. Throws ArgumentError on a placeholder
// missing from `values`.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

}  // namespace hgen
