#include "delsumm/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace delsumm {

namespace {

using Role = RhetoricalRole;

const std::vector<std::string> kParties = {
    "Ramesh Kumar", "Sunita Devi", "Mohan Lal", "Harbans Singh", "Lakshmi Narayan", "Abdul Rashid",
    "Kavita Sharma", "Joseph Mathew", "Prakash Rao", "Gurdev Kaur", "the State of Punjab",
    "the Union of India", "the State of Maharashtra", "Bharat Petroleum Corporation"};

const std::vector<std::string> kPlaces = {"Ludhiana", "Nagpur", "Patna", "Madurai", "Jaipur", "Cuttack",
                                          "Shimla", "Guwahati", "Bhopal", "Kochi"};

const std::vector<std::string> kActs = {"Indian Penal Code", "Code of Criminal Procedure",
                                        "Indian Evidence Act", "Arms Act", "Land Acquisition Act",
                                        "Industrial Disputes Act", "Prevention of Corruption Act"};

const std::vector<std::string> kCases = {
    "Sharad Birdhichand Sarda v. State of Maharashtra", "Maneka Gandhi v. Union of India",
    "Bachan Singh v. State of Punjab", "Kesavananda Bharati v. State of Kerala",
    "Vishaka v. State of Rajasthan", "Olga Tellis v. Bombay Municipal Corporation",
    "Gurbaksh Singh Sibbia v. State of Punjab", "Hussainara Khatoon v. Home Secretary",
    "Arnesh Kumar vs State of Bihar", "Lalita Kumari versus Government of Uttar Pradesh"};

const std::vector<std::string> kKeywords = {
    "anticipatory bail", "bail",          "mens rea",      "cognizance",        "acquittal",
    "conviction",        "writ petition", "natural justice", "res judicata",    "burden of proof",
    "circumstantial evidence", "dying declaration", "compensation", "limitation", "cross examination",
    "reasonable doubt",  "locus standi",  "mandamus",      "injunction",        "specific performance"};

const std::vector<std::string> kStopwords = {
    "a",     "about", "above", "after",  "again",  "against", "all",   "also",  "am",    "an",
    "and",   "any",   "are",   "as",     "at",     "be",      "been",  "before", "being", "below",
    "between", "both", "but",  "by",     "can",    "could",   "did",   "do",    "does",  "doing",
    "down",  "during", "each", "few",    "for",    "from",    "further", "had", "has",   "have",
    "having", "he",   "her",   "here",   "hers",   "him",     "his",   "how",   "i",     "if",
    "in",    "into",  "is",    "it",     "its",    "itself",  "may",   "me",    "more",  "most",
    "must",  "my",    "no",    "nor",    "not",    "of",      "off",   "on",    "once",  "only",
    "or",    "other", "our",   "ours",   "out",    "over",    "own",   "same",  "shall", "she",
    "should", "so",   "some",  "such",   "than",   "that",    "the",   "their", "theirs", "them",
    "then",  "there", "these", "they",   "this",   "those",   "through", "to",  "too",   "under",
    "until", "up",    "upon",  "very",   "was",    "we",      "were",  "what",  "when",  "where",
    "which", "while", "who",   "whom",   "whether", "why",    "will",  "with",  "would", "you",
    "your"};

// {party} {place} {act} {section} {case} {kw} {num} {year}
const std::vector<std::string> kFactTemplates = {
    "The appellant {party} was working as a clerk in {place} since {year}.",
    "On the night of the incident {party} was travelling from {place} with two companions.",
    "A complaint was lodged by {party} at the police station in {place} alleging {kw}.",
    "The deceased was last seen in the company of {party} near the market at {place}.",
    "The land in question measuring {num} acres was acquired in {year} for a public purpose.",
    "The respondent was served with a notice on the ground of {kw} and replied within time.",
    "Recoveries were effected at the instance of {party} from a house in {place}."};

const std::vector<std::string> kIssueTemplates = {
    "The question for consideration is whether the prosecution has proved {kw} under {section}.",
    "The issue that arises is whether the High Court was justified in granting {kw} to {party}.",
    "Whether the plea of {kw} is available to the respondent is the question before us."};

const std::vector<std::string> kLowerCourtTemplates = {
    "The Sessions Court at {place} convicted {party} under {section} and imposed imprisonment for {num} years.",
    "The High Court dismissed the appeal filed by {party} and confirmed the order of {kw}.",
    "The Trial Court recorded an order of {kw} which was reversed in revision."};

const std::vector<std::string> kPrecedentTemplates = {
    "In {case} this Court held that {kw} must be established by clear evidence.",
    "Reliance was placed on {case} where the principles of {kw} were explained.",
    "The decision in {case} lays down the tests applicable to {kw}.",
    "The view taken in {case} was followed in a number of later decisions on {kw}."};

const std::vector<std::string> kStatuteTemplates = {
    "{section} provides that whoever commits the offence shall be punished with imprisonment for {num} years.",
    "Under {section} the court may take cognizance only upon a complaint in writing.",
    "The {act}, {year} was enacted to regulate matters relating to {kw}.",
    "Article 21 of the Constitution guarantees that no person shall be deprived of life or personal liberty."};

const std::vector<std::string> kArgumentTemplates = {
    "Learned counsel for the appellant contended that the evidence of {kw} was unreliable.",
    "It was argued on behalf of {party} that the witnesses from {place} were interested.",
    "Counsel for the State submitted that the chain of {kw} was complete.",
    "The respondent urged that the claim was barred by {kw} and could not be entertained."};

const std::vector<std::string> kRatioTemplates = {
    "In our opinion the material on record does not establish {kw} beyond reasonable doubt.",
    "Having regard to {section} we are of the view that the conviction cannot be sustained.",
    "The principle laid down in {case} squarely applies to the facts of the present case.",
    "We find that the High Court failed to consider the settled law on {kw}.",
    "The finding on {kw} is perverse and cannot be allowed to stand."};

const std::vector<std::string> kJudgementTemplates = {
    "The appeal is accordingly allowed and the conviction of {party} is set aside.",
    "The appeal fails and is dismissed with costs.",
    "The appellant shall be released forthwith if not required in any other case.",
    "The matter is remitted to the High Court for fresh consideration in accordance with law."};

const std::vector<std::string>& templates_for(Role role) {
  switch (role) {
    case Role::Fact: return kFactTemplates;
    case Role::Issue: return kIssueTemplates;
    case Role::RulingByLowerCourt: return kLowerCourtTemplates;
    case Role::Precedent: return kPrecedentTemplates;
    case Role::Statute: return kStatuteTemplates;
    case Role::Argument: return kArgumentTemplates;
    case Role::Ratio: return kRatioTemplates;
    case Role::FinalJudgement: return kJudgementTemplates;
  }
  throw std::logic_error("no templates for role");
}

const std::string& pick(std::mt19937_64& gen, const std::vector<std::string>& items) {
  return items[draw_index(gen, items.size())];
}

std::string section_reference(std::mt19937_64& gen) {
  const std::size_t number = 100 + draw_index(gen, 400);
  return "Section " + std::to_string(number) + " of the " + pick(gen, kActs);
}

std::string fill(std::string text, std::mt19937_64& gen) {
  auto replace_all = [&](const std::string& key, auto make) {
    for (auto at = text.find(key); at != std::string::npos; at = text.find(key, at)) {
      const std::string value = make();
      text.replace(at, key.size(), value);
      at += value.size();
    }
  };
  replace_all("{party}", [&] { return pick(gen, kParties); });
  replace_all("{place}", [&] { return pick(gen, kPlaces); });
  replace_all("{act}", [&] { return pick(gen, kActs); });
  replace_all("{section}", [&] { return section_reference(gen); });
  replace_all("{case}", [&] { return pick(gen, kCases); });
  replace_all("{kw}", [&] { return pick(gen, kKeywords); });
  replace_all("{num}", [&] { return std::to_string(2 + draw_index(gen, 20)); });
  replace_all("{year}", [&] { return std::to_string(1950 + draw_index(gen, 70)); });
  // sentence-initial placeholder values may start lowercase
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z') text[0] = static_cast<char>(text[0] - 'a' + 'A');
  return text;
}

}  // namespace

std::size_t draw_index(std::mt19937_64& gen, std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("draw_index needs a positive bound");
  // rejection sampling keeps the draw exactly uniform
  const std::uint64_t b = bound;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t v = gen();
  while (v >= limit) v = gen();
  return static_cast<std::size_t>(v % b);
}

std::vector<std::string> default_stopwords() { return kStopwords; }
std::vector<std::string> default_legal_keywords() { return kKeywords; }

std::vector<std::string> default_statute_names() {
  std::vector<std::string> out;
  for (const auto& act : kActs) {
    std::string lower = act;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    out.push_back(lower);
  }
  out.push_back("constitution of india");
  return out;
}

Lexicons default_lexicons() {
  Lexicons lex;
  lex.legal_keywords = {kKeywords.begin(), kKeywords.end()};
  lex.statute_names = default_statute_names();
  lex.stopwords = {kStopwords.begin(), kStopwords.end()};
  return lex;
}

LabeledDocument generate_document(const std::string& doc_id, std::mt19937_64& gen, const SyntheticOptions& options) {
  if (options.min_sentences < kRoleCount || options.max_sentences < options.min_sentences)
    throw std::invalid_argument("synthetic documents need at least one sentence per role");
  const std::size_t n = options.min_sentences + draw_index(gen, options.max_sentences - options.min_sentences + 1);

  // One sentence per role, the rest spread with judgment-like proportions.
  std::array<std::size_t, kRoleCount> count{};
  count.fill(1);
  const std::array<std::size_t, kRoleCount> share = {6, 1, 2, 3, 2, 4, 5, 1};
  const std::size_t share_total = std::accumulate(share.begin(), share.end(), std::size_t{0});
  for (std::size_t k = kRoleCount; k < n; ++k) {
    std::size_t r = draw_index(gen, share_total);
    std::size_t role = 0;
    while (r >= share[role]) r -= share[role++];
    ++count[role];
  }

  // Judgment order: facts, issue, lower court, arguments, statutes,
  // precedents, ratio, final judgement.
  const std::array<Role, kRoleCount> order = {Role::Fact,      Role::Issue,     Role::RulingByLowerCourt,
                                              Role::Argument,  Role::Statute,   Role::Precedent,
                                              Role::Ratio,     Role::FinalJudgement};
  std::vector<std::tuple<int, std::string, Role>> rows;
  int id = 1;
  for (Role role : order)
    for (std::size_t k = 0; k < count[role_index(role)]; ++k)
      rows.emplace_back(id++, fill(pick(gen, templates_for(role)), gen), role);
  return make_document(doc_id, rows);
}

TextSummary generate_reference(const LabeledDocument& doc, std::mt19937_64& gen, double fraction) {
  long long total = 0;
  for (const auto& s : doc.sentences) total += s.word_count;
  const auto target = static_cast<long long>(std::llround(fraction * static_cast<double>(total)));

  std::vector<bool> take(doc.size(), false);
  long long used = 0;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Role r = doc.sentences[i].role;
    if (r == Role::FinalJudgement || r == Role::Issue) {
      take[i] = true;
      used += doc.sentences[i].word_count;
    } else {
      rest.push_back(i);
    }
  }
  // Fisher-Yates with the portable draw
  for (std::size_t k = rest.size(); k > 1; --k) std::swap(rest[k - 1], rest[draw_index(gen, k)]);
  for (std::size_t i : rest) {
    if (used >= target) break;
    take[i] = true;
    used += doc.sentences[i].word_count;
  }

  TextSummary out;
  out.doc_id = doc.doc_id;
  for (std::size_t i = 0; i < doc.size(); ++i)
    if (take[i]) out.sentences.push_back({doc.sentences[i].role, doc.sentences[i].text});
  return out;
}

SyntheticCorpus generate_corpus(std::size_t documents, std::uint64_t seed, const SyntheticOptions& options) {
  SyntheticCorpus corpus;
  corpus.lexicons = default_lexicons();
  corpus.reference_files.resize(options.annotators);
  std::mt19937_64 gen(seed);
  for (std::size_t d = 0; d < documents; ++d) {
    char id[32];
    std::snprintf(id, sizeof id, "case_%04zu", d + 1);
    corpus.documents.push_back(generate_document(id, gen, options));
    for (auto& file : corpus.reference_files)
      file.push_back(generate_reference(corpus.documents.back(), gen, options.summary_fraction));
  }
  return corpus;
}

}  // namespace delsumm
