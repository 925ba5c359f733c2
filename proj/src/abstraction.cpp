#include "cama/abstraction.hpp"

#include <array>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {

namespace {

struct RelationPhrase {
  std::string_view text;
  Polarity polarity;
  Certainty certainty;
};

// Longer phrases listed first so that an equal-position tie resolves to
// the longest match.
constexpr std::array<RelationPhrase, 10> kPhrases = {{
    {"SHOULD BE NECCESSARY", Polarity::CONTRIBUTES, Certainty::CONFIDENT},
    {"SHOULD BE NECESSARY", Polarity::CONTRIBUTES, Certainty::CONFIDENT},
    {"MAY BE NECCESSARY", Polarity::CONTRIBUTES, Certainty::UNCERTAIN},
    {"MAY NOT CONTRIBUTE", Polarity::DOES_NOT_CONTRIBUTE, Certainty::UNCERTAIN},
    {"DOES NOT CONTRIBUTE", Polarity::DOES_NOT_CONTRIBUTE, Certainty::CONFIDENT},
    {"MAY BE CONTRIBUTE", Polarity::CONTRIBUTES, Certainty::UNCERTAIN},
    {"MAY BE NECESSARY", Polarity::CONTRIBUTES, Certainty::UNCERTAIN},
    {"MAY CONTRIBUTE", Polarity::CONTRIBUTES, Certainty::UNCERTAIN},
    {"IS NECCESSARY", Polarity::CONTRIBUTES, Certainty::CONFIDENT},
    {"IS NECESSARY", Polarity::CONTRIBUTES, Certainty::CONFIDENT},
}};

// Finds the first standalone occurrence of `word` and returns the index
// just past it, or npos.
std::size_t find_connector(std::string_view text, std::string_view word) {
  std::size_t pos = find_phrase_ci(text, word);
  if (pos == std::string_view::npos) return pos;
  return pos + word.size();
}

}  // namespace

bool operator==(const CausalAbstraction& a, const CausalAbstraction& b) {
  return a.x == b.x && a.y == b.y && a.polarity == b.polarity &&
         a.certainty == b.certainty;
}

bool operator!=(const CausalAbstraction& a, const CausalAbstraction& b) {
  return !(a == b);
}

CausalAbstraction parse_abstraction(std::string_view line) {
  std::string_view sentence = strip_list_marker(line);
  if (sentence.empty()) throw MalformedAbstraction("empty memory line");

  std::size_t best_pos = std::string_view::npos;
  const RelationPhrase* best = nullptr;
  for (const RelationPhrase& p : kPhrases) {
    std::size_t pos = find_phrase_ci(sentence, p.text);
    if (pos == std::string_view::npos) continue;
    if (best == nullptr || pos < best_pos ||
        (pos == best_pos && p.text.size() > best->text.size())) {
      best_pos = pos;
      best = &p;
    }
  }
  if (best == nullptr) {
    throw MalformedAbstraction("no relation phrase in: " + std::string(sentence));
  }

  CausalAbstraction out;
  out.polarity = best->polarity;
  out.certainty = best->certainty;
  out.raw_text = std::string(sentence);
  out.x = trim(sentence.substr(0, best_pos));
  if (out.x.empty()) {
    throw MalformedAbstraction("empty antecedent in: " + std::string(sentence));
  }

  std::string_view rest = sentence.substr(best_pos + best->text.size());
  std::size_t after = find_connector(rest, "to");
  if (after == std::string_view::npos) {
    // Alternate connector, accepted only at the head of the remainder
    // ("... MAY BE NECESSARY for more accurate results.").
    std::size_t for_pos = find_phrase_ci(rest, "for");
    if (for_pos != std::string_view::npos &&
        trim_view(rest.substr(0, for_pos)).empty()) {
      after = for_pos + 3;
    }
  }
  if (after == std::string_view::npos) {
    throw MalformedAbstraction("no connector in: " + std::string(sentence));
  }

  std::string_view y = trim_view(rest.substr(after));
  if (!y.empty() && y.back() == '.') y.remove_suffix(1);
  y = trim_view(y);
  if (y.empty()) {
    throw MalformedAbstraction("empty consequent in: " + std::string(sentence));
  }
  out.y = std::string(y);
  return out;
}

std::string format_abstraction(const CausalAbstraction& a) {
  const char* relation = nullptr;
  if (a.polarity == Polarity::CONTRIBUTES) {
    relation = a.certainty == Certainty::CONFIDENT ? "SHOULD BE NECESSARY"
                                                   : "MAY BE NECESSARY";
  } else {
    relation = a.certainty == Certainty::CONFIDENT ? "DOES NOT CONTRIBUTE"
                                                   : "MAY NOT CONTRIBUTE";
  }
  return a.x + " " + relation + " to " + a.y + ".";
}

const char* to_string(Polarity p) {
  return p == Polarity::CONTRIBUTES ? "contributes" : "does_not_contribute";
}

const char* to_string(Certainty c) {
  return c == Certainty::CONFIDENT ? "confident" : "uncertain";
}

}  // namespace cama
