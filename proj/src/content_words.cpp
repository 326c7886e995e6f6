#include "delsumm/content_words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace delsumm {

namespace {

bool is_capitalized(const Word& w) { return !w.raw.empty() && w.raw[0] >= 'A' && w.raw[0] <= 'Z'; }

bool starts_with_digit(const Word& w) {
  return !w.raw.empty() && std::isdigit(static_cast<unsigned char>(w.raw[0])) != 0;
}

bool is_year(const Word& w) {
  return w.raw.size() == 4 &&
         std::all_of(w.raw.begin(), w.raw.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

bool only_spaces(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
}

std::string_view gap_after(std::string_view text, const std::vector<Word>& words, std::size_t k) {
  return text.substr(words[k].end, words[k + 1].begin - words[k].end);
}

// Words k and k+1 belong to the same run when only whitespace separates them.
bool adjacent(std::string_view text, const std::vector<Word>& words, std::size_t k) {
  return only_spaces(gap_after(text, words, k));
}

std::string join_lower(const std::vector<Word>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t k = begin; k < end; ++k) {
    if (!out.empty()) out.push_back(' ');
    out += words[k].lower;
  }
  return out;
}

// Matches tokenized phrases against a word sequence at token boundaries.
class PhraseMatcher {
 public:
  template <typename Range>
  explicit PhraseMatcher(const Range& phrases) {
    for (const auto& phrase : phrases) {
      auto tokens = tokenize(phrase);
      if (tokens.empty()) continue;
      by_first_[tokens.front()].push_back(std::move(tokens));
    }
  }

  std::vector<WordSpan> find(const std::vector<Word>& words) const {
    std::vector<WordSpan> spans;
    for (std::size_t k = 0; k < words.size(); ++k) {
      auto it = by_first_.find(words[k].lower);
      if (it == by_first_.end()) continue;
      for (const auto& tokens : it->second) {
        if (k + tokens.size() > words.size()) continue;
        bool match = true;
        for (std::size_t t = 1; t < tokens.size() && match; ++t)
          match = words[k + t].lower == tokens[t];
        if (match) spans.push_back({k, k + tokens.size(), join_lower(words, k, k + tokens.size())});
      }
    }
    return spans;
  }

 private:
  std::unordered_map<std::string, std::vector<std::vector<std::string>>> by_first_;
};

// Leftmost-longest selection of non-overlapping spans.
std::vector<WordSpan> resolve_overlaps(std::vector<WordSpan> spans) {
  std::sort(spans.begin(), spans.end(), [](const WordSpan& a, const WordSpan& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.surface < b.surface;
  });
  std::vector<WordSpan> kept;
  for (auto& s : spans) {
    if (!kept.empty() && kept.back().overlaps(s)) continue;
    kept.push_back(std::move(s));
  }
  return kept;
}

std::vector<WordSpan> without_overlaps(std::vector<WordSpan> spans,
                                       const std::vector<WordSpan>& claimed) {
  std::erase_if(spans, [&](const WordSpan& s) {
    return std::any_of(claimed.begin(), claimed.end(),
                       [&](const WordSpan& c) { return c.overlaps(s); });
  });
  return spans;
}

std::string canonical_section_word(const std::string& lower) {
  if (lower == "section" || lower == "sections" || lower == "sec") return "section";
  if (lower == "article" || lower == "articles") return "article";
  return {};
}

std::vector<WordSpan> section_reference_spans(const std::vector<Word>& words) {
  std::vector<WordSpan> spans;
  for (std::size_t k = 0; k < words.size(); ++k) {
    std::string head = canonical_section_word(words[k].lower);
    if (head.empty()) continue;
    for (std::size_t t = k + 1; t <= k + 3 && t < words.size(); ++t) {
      if (starts_with_digit(words[t])) {
        spans.push_back({k, t + 1, head + " " + words[t].lower});
        break;
      }
    }
  }
  return spans;
}

std::vector<WordSpan> act_name_spans(std::string_view text, const std::vector<Word>& words,
                                     const std::set<std::string>& stopwords) {
  std::vector<WordSpan> spans;
  for (std::size_t k = 1; k < words.size(); ++k) {
    if (words[k].raw != "Act") continue;
    std::size_t begin = k;
    while (begin > 0 && is_capitalized(words[begin - 1]) && adjacent(text, words, begin - 1)) --begin;
    while (begin < k && stopwords.contains(words[begin].lower)) ++begin;
    if (begin == k) continue;
    std::size_t end = k + 1;
    if (end < words.size() && is_year(words[end])) {
      std::string_view gap = gap_after(text, words, k);
      if (gap.size() > 0 && gap.front() == ',') gap.remove_prefix(1);
      if (only_spaces(gap)) ++end;
    }
    spans.push_back({begin, end, join_lower(words, begin, end)});
  }
  return spans;
}

std::vector<WordSpan> statute_spans(std::string_view text, const std::vector<Word>& words,
                                    const PhraseMatcher& statutes, const Lexicons& lexicons) {
  std::vector<WordSpan> spans = statutes.find(words);
  for (auto& s : section_reference_spans(words)) spans.push_back(std::move(s));
  for (auto& s : act_name_spans(text, words, lexicons.stopwords)) spans.push_back(std::move(s));
  return resolve_overlaps(std::move(spans));
}

bool precedent_in(std::string_view text, const std::vector<Word>& words) {
  for (std::size_t k = 1; k + 1 < words.size(); ++k) {
    const auto& sep = words[k].lower;
    if (sep != "v" && sep != "vs" && sep != "versus") continue;
    if (!is_capitalized(words[k - 1]) || !is_capitalized(words[k + 1])) continue;
    if (!adjacent(text, words, k - 1)) continue;
    std::string_view gap = gap_after(text, words, k);
    if (!gap.empty() && gap.front() == '.' && sep != "versus") gap.remove_prefix(1);
    if (only_spaces(gap)) return true;
  }
  return false;
}

}  // namespace

std::string_view kind_name(ContentKind kind) {
  switch (kind) {
    case ContentKind::StatuteMention: return "statute_mention";
    case ContentKind::LegalKeyword: return "legal_keyword";
    case ContentKind::NounPhrase: return "noun_phrase";
  }
  return "unknown";
}

int ContentScores::of(ContentKind kind) const {
  switch (kind) {
    case ContentKind::StatuteMention: return statute;
    case ContentKind::LegalKeyword: return keyword;
    case ContentKind::NounPhrase: return noun_phrase;
  }
  return 0;
}

std::vector<WordSpan> find_statute_spans(std::string_view text, const Lexicons& lexicons) {
  PhraseMatcher statutes(lexicons.statute_names);
  return statute_spans(text, scan_words(text), statutes, lexicons);
}

std::vector<WordSpan> find_keyword_spans(std::string_view text, const Lexicons& lexicons) {
  PhraseMatcher keywords(lexicons.legal_keywords);
  return resolve_overlaps(keywords.find(scan_words(text)));
}

bool detect_statute(const Sentence& sentence, const Lexicons& lexicons) {
  return !find_statute_spans(sentence.text, lexicons).empty();
}

bool detect_precedent(const Sentence& sentence) {
  return precedent_in(sentence.text, scan_words(sentence.text));
}

std::vector<WordSpan> CapitalizedRunExtractor::extract(std::string_view text,
                                                       const Lexicons& lexicons,
                                                       const std::vector<WordSpan>& claimed) const {
  const auto words = scan_words(text);
  std::vector<WordSpan> runs;
  std::size_t k = 0;
  while (k < words.size()) {
    if (!is_capitalized(words[k])) {
      ++k;
      continue;
    }
    std::size_t end = k + 1;
    while (end < words.size() && is_capitalized(words[end]) && adjacent(text, words, end - 1)) ++end;
    WordSpan run{k, end, {}};
    k = end;
    if (run.begin == 0 && run.end == 1) continue;
    if (std::any_of(claimed.begin(), claimed.end(), [&](const WordSpan& c) { return c.overlaps(run); }))
      continue;
    while (run.begin < run.end && lexicons.stopwords.contains(words[run.begin].lower)) ++run.begin;
    if (run.begin == run.end) continue;
    run.surface = join_lower(words, run.begin, run.end);
    runs.push_back(std::move(run));
  }
  return runs;
}

std::set<std::string> extract_noun_phrases(const Sentence& sentence, const Lexicons& lexicons) {
  auto claimed = find_statute_spans(sentence.text, lexicons);
  std::set<std::string> out;
  for (auto& span : CapitalizedRunExtractor{}.extract(sentence.text, lexicons, claimed))
    out.insert(std::move(span.surface));
  return out;
}

ContentIndex build_content_index(const LabeledDocument& doc, const Lexicons& lexicons,
                                 const ContentScores& scores,
                                 const NounPhraseExtractor* extractor) {
  const CapitalizedRunExtractor default_extractor;
  if (extractor == nullptr) extractor = &default_extractor;
  const PhraseMatcher statutes(lexicons.statute_names);
  const PhraseMatcher keywords(lexicons.legal_keywords);

  const std::size_t n = doc.size();
  ContentIndex index;
  index.statute_flag.assign(n, false);
  index.precedent_flag.assign(n, false);

  // surface -> strongest kind seen anywhere in the document
  std::map<std::string, ContentKind> kind_of;
  std::vector<std::vector<std::string>> surfaces(n);

  auto note = [&](std::size_t i, const std::string& surface, ContentKind kind) {
    auto [it, inserted] = kind_of.emplace(surface, kind);
    if (!inserted && kind < it->second) it->second = kind;
    surfaces[i].push_back(surface);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::string& text = doc.sentences[i].text;
    const auto words = scan_words(text);
    auto claimed = statute_spans(text, words, statutes, lexicons);
    index.statute_flag[i] = !claimed.empty();
    index.precedent_flag[i] = precedent_in(text, words);
    for (const auto& s : claimed) note(i, s.surface, ContentKind::StatuteMention);

    auto keyword_spans = resolve_overlaps(without_overlaps(keywords.find(words), claimed));
    for (const auto& s : keyword_spans) note(i, s.surface, ContentKind::LegalKeyword);
    claimed.insert(claimed.end(), keyword_spans.begin(), keyword_spans.end());

    for (const auto& s : extractor->extract(text, lexicons, claimed))
      note(i, s.surface, ContentKind::NounPhrase);
  }

  for (const auto& [surface, kind] : kind_of)
    index.words.push_back({surface, kind, scores.of(kind)});
  std::sort(index.words.begin(), index.words.end(), [](const ContentWord& a, const ContentWord& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.surface < b.surface;
  });

  std::unordered_map<std::string, std::size_t> word_id;
  for (std::size_t j = 0; j < index.words.size(); ++j) word_id.emplace(index.words[j].surface, j);

  index.per_sentence.assign(n, {});
  index.per_word.assign(index.words.size(), {});
  for (std::size_t i = 0; i < n; ++i) {
    auto& ci = index.per_sentence[i];
    for (const auto& surface : surfaces[i]) ci.push_back(word_id.at(surface));
    std::sort(ci.begin(), ci.end());
    ci.erase(std::unique(ci.begin(), ci.end()), ci.end());
    for (std::size_t j : ci) index.per_word[j].push_back(i);
  }
  return index;
}

}  // namespace delsumm
