#include "collabrec/corpus/porter.hpp"

#include <algorithm>

namespace collabrec::corpus {
namespace {

// Working state for one word. `end` is one past the last live character,
// `stem_end` marks where a matched suffix begins.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word), end_(word.size()) {}

  std::string run() {
    step1ab();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return b_.substr(0, end_);
  }

 private:
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, stem_end_).
  int measure() const {
    int n = 0;
    std::size_t i = 0;
    const std::size_t j = stem_end_;
    while (true) {
      if (i >= j) return n;
      if (!consonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= j) return n;
        if (consonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= j) return n;
        if (!consonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (std::size_t i = 0; i < stem_end_; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  // b_[i-1], b_[i] is a double consonant.
  bool double_consonant(std::size_t i) const {
    if (i < 1) return false;
    if (b_[i] != b_[i - 1]) return false;
    return consonant(i);
  }

  // b_[i-2..i] is consonant-vowel-consonant and b_[i] is not w, x or y.
  bool cvc(std::size_t i) const {
    if (i < 2 || !consonant(i) || consonant(i - 1) || !consonant(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view suffix) {
    if (suffix.size() > end_) return false;
    if (std::string_view(b_).substr(end_ - suffix.size(), suffix.size()) != suffix) return false;
    stem_end_ = end_ - suffix.size();
    return true;
  }

  void set_to(std::string_view replacement) {
    b_.replace(stem_end_, end_ - stem_end_, replacement);
    end_ = stem_end_ + replacement.size();
    b_.resize(end_);
  }

  void replace_if_measured(std::string_view replacement) {
    if (measure() > 0) set_to(replacement);
  }

  char last() const { return b_[end_ - 1]; }
  char penultimate() const { return end_ >= 2 ? b_[end_ - 2] : '\0'; }

  void step1ab() {
    if (last() == 's') {
      if (ends("sses")) {
        end_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (penultimate() != 's') {
        --end_;
      }
    }
    if (ends("eed")) {
      if (measure() > 0) --end_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      end_ = stem_end_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(end_ - 1)) {
        --end_;
        const char ch = b_[end_ - 1];
        if (ch == 'l' || ch == 's' || ch == 'z') ++end_;
      } else {
        stem_end_ = end_;
        if (measure() == 1 && cvc(end_ - 1)) set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[end_ - 1] = 'i';
  }

  void step2() {
    if (end_ < 2) return;
    struct Rule {
      std::string_view suffix;
      std::string_view replacement;
    };
    static constexpr Rule kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        {"logi", "log"}};
    apply_first(kRules, penultimate());
  }

  void step3() {
    struct Rule {
      std::string_view suffix;
      std::string_view replacement;
    };
    static constexpr Rule kRules[] = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"},
                                      {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""},
                                      {"ness", ""}};
    for (const auto& rule : kRules) {
      if (rule.suffix.back() != last()) continue;
      if (ends(rule.suffix)) {
        replace_if_measured(rule.replacement);
        return;
      }
    }
  }

  // The reference implementation dispatches on a single character of the
  // word and tests only the suffixes in that bucket, in table order. Bucket
  // keys are the suffix's second-to-last letter.
  template <typename Rules>
  void apply_first(const Rules& rules, char key) {
    for (const auto& rule : rules) {
      if (rule.suffix[rule.suffix.size() - 2] != key) continue;
      if (ends(rule.suffix)) {
        replace_if_measured(rule.replacement);
        return;
      }
    }
  }

  void step4() {
    if (end_ < 2) return;
    static constexpr std::string_view kSuffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    const char key = penultimate();
    bool matched = false;
    for (auto suffix : kSuffixes) {
      if (suffix[suffix.size() - 2] != key) continue;
      if (!ends(suffix)) continue;
      if (suffix == "ion" && !(stem_end_ > 0 && (b_[stem_end_ - 1] == 's' || b_[stem_end_ - 1] == 't'))) {
        continue;
      }
      matched = true;
      break;
    }
    if (matched && measure() > 1) end_ = stem_end_;
  }

  void step5() {
    stem_end_ = end_;
    if (last() == 'e') {
      const int m = measure();
      if (m > 1 || (m == 1 && !(end_ >= 2 && cvc(end_ - 2)))) --end_;
    }
    if (last() == 'l' && double_consonant(end_ - 1) && measure() > 1) --end_;
  }

  std::string b_;
  std::size_t end_;
  std::size_t stem_end_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
    return std::string(word);
  }
  return Stemmer(word).run();
}

}  // namespace collabrec::corpus
