#pragma once

#include <string>
#include <string_view>

namespace cama {

enum class Polarity { CONTRIBUTES, DOES_NOT_CONTRIBUTE };
enum class Certainty { UNCERTAIN, CONFIDENT };

// One causal insight: antecedent X relates to consequent Y with a polarity
// and a certainty level ("may" vs "should").
struct CausalAbstraction {
  std::string x;
  std::string y;
  Polarity polarity = Polarity::CONTRIBUTES;
  Certainty certainty = Certainty::UNCERTAIN;
  // The sentence as produced by the generator (list marker stripped).
  std::string raw_text;
};

// Equality on the four canonical fields; raw_text is provenance only.
bool operator==(const CausalAbstraction& a, const CausalAbstraction& b);
bool operator!=(const CausalAbstraction& a, const CausalAbstraction& b);

// Parses one memory sentence, optionally prefixed by a list marker
// ("12. "). Accepted relation phrases, case-insensitive and tolerant of
// common misspellings ("NECCESSARY"):
//   MAY BE NECESSARY | MAY CONTRIBUTE | MAY BE CONTRIBUTE -> contributes, uncertain
//   SHOULD BE NECESSARY | IS NECESSARY                    -> contributes, confident
//   MAY NOT CONTRIBUTE                                    -> does not contribute, uncertain
//   DOES NOT CONTRIBUTE                                   -> does not contribute, confident
// The earliest phrase occurrence wins; at equal positions the longest
// phrase wins. X is the text before the phrase. Y is the text after the
// first standalone word "to" following the phrase; when no such "to"
// exists and the remainder opens with the word "for", Y is the text after
// that "for" (generators occasionally use the alternate connector). One
// trailing period is stripped from Y.
// Throws MalformedAbstraction when no relation phrase is found, no
// connector is found, or X/Y is empty after trimming.
CausalAbstraction parse_abstraction(std::string_view line);

// Renders exactly one of the four canonical templates:
//   "X MAY BE NECESSARY to Y." / "X SHOULD BE NECESSARY to Y." /
//   "X MAY NOT CONTRIBUTE to Y." / "X DOES NOT CONTRIBUTE to Y."
// parse_abstraction(format_abstraction(a)) == a on the canonical fields,
// provided x and y do not themselves embed a relation phrase.
std::string format_abstraction(const CausalAbstraction& a);

const char* to_string(Polarity p);
const char* to_string(Certainty c);

}  // namespace cama
