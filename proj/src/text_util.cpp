#include "cama/text_util.hpp"

#include <algorithm>
#include <cctype>

namespace cama {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string_view trim_view(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string trim(std::string_view s) { return std::string(trim_view(s)); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](char c) { return lower(c); });
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : trim_view(s)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    std::string_view line =
        nl == std::string_view::npos ? s.substr(start) : s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::size_t find_phrase_ci(std::string_view text, std::string_view phrase,
                           std::size_t from) {
  if (phrase.empty() || phrase.size() > text.size()) return std::string_view::npos;
  for (std::size_t i = from; i + phrase.size() <= text.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < phrase.size(); ++j) {
      if (lower(text[i + j]) != lower(phrase[j])) {
        hit = false;
        break;
      }
    }
    if (!hit) continue;
    bool left_ok = i == 0 || !is_word_char(text[i - 1]);
    std::size_t end = i + phrase.size();
    bool right_ok = end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) return i;
  }
  return std::string_view::npos;
}

std::string_view strip_list_marker(std::string_view line) {
  std::string_view s = trim_view(line);
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i >= s.size()) return s;
  if (s[i] != '.' && s[i] != ')') return s;
  ++i;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

bool is_bare_integer(std::string_view s) {
  std::string_view t = trim_view(s);
  if (t.empty()) return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool equal_normalized(std::string_view a, std::string_view b) {
  return to_lower(collapse_ws(a)) == to_lower(collapse_ws(b));
}

}  // namespace cama
