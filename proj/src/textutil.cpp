#include "hgen/textutil.hpp"

#include <cctype>

#include "hgen/errors.hpp"

namespace hgen {

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

int word_count(std::string_view text) {
  int count = 0;
  bool in_word = false;
  for (char ch : text) {
    bool space = std::isspace(static_cast<unsigned char>(ch)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

int line_count(std::string_view text) {
  if (text.empty()) return 0;
  int count = 0;
  for (char ch : text)
    if (ch == '\n') ++count;
  if (text.back() != '\n') ++count;
  return count;
}

std::vector<std::string> split_lines_keep_ends(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      lines.emplace_back(text.substr(start, i - start + 1));
      start = i + 1;
    }
  }
  if (start < text.size()) lines.emplace_back(text.substr(start));
  return lines;
}

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    unsigned char lead = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    if (lead < 0x80) len = 1;
    else if ((lead >> 5) == 0x6) len = 2;
    else if ((lead >> 4) == 0xe) len = 3;
    else if ((lead >> 3) == 0x1e) len = 4;
    if (len == 0 || i + len > bytes.size()) {
      out.push_back('?');
      ++i;
      continue;
    }
    bool valid = true;
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(bytes[i + j]) >> 6) != 0x2) {
        valid = false;
        break;
      }
    }
    if (valid) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out.push_back('?');
      ++i;
    }
  }
  return out;
}

namespace {

bool glob_match_impl(std::string_view pattern, std::string_view path) {
  // Iterative wildcard match with backtracking; "**" may cross '/'.
  std::size_t p = 0, s = 0;
  std::size_t star_p = std::string_view::npos, star_s = 0;
  bool star_crosses = false;
  while (s < path.size()) {
    if (p < pattern.size() && (pattern[p] == path[s] || pattern[p] == '?') &&
        !(pattern[p] == '?' && path[s] == '/')) {
      ++p;
      ++s;
    } else if (p < pattern.size() && pattern[p] == '*') {
      bool double_star = p + 1 < pattern.size() && pattern[p + 1] == '*';
      star_crosses = double_star;
      p += double_star ? 2 : 1;
      // "**/" also matches zero directories.
      if (double_star && p < pattern.size() && pattern[p] == '/') ++p;
      star_p = p;
      star_s = s;
    } else if (star_p != std::string_view::npos &&
               (star_crosses || path[star_s] != '/')) {
      p = star_p;
      ++star_s;
      s = star_s;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') {
    if (p + 1 < pattern.size() && pattern[p + 1] == '*') ++p;
    ++p;
    if (p < pattern.size() && pattern[p] == '/') ++p;
  }
  return p == pattern.size();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return glob_match_impl(pattern, path);
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos)
      throw ArgumentError("unterminated placeholder in template");
    std::string key(tmpl.substr(open + 2, close - open - 2));
    auto it = values.find(key);
    if (it == values.end())
      throw ArgumentError("unresolved template placeholder: " + key);
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace hgen
