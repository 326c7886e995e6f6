#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "delsumm/corpus.hpp"
#include "delsumm/synthetic.hpp"

using namespace delsumm;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "delsumm_corpus_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Tokenize, SplitsOnPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("The cat sat."), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("Section 302, IPC"), (std::vector<std::string>{"section", "302", "ipc"}));
}

TEST(Tokenize, KeepsUtf8BytesInsideWords) {
  EXPECT_EQ(tokenize("caf\xc3\xa9 au-lait"), (std::vector<std::string>{"caf\xc3\xa9", "au", "lait"}));
}

TEST(Tokenize, ScanWordsKeepsOffsetsAndCase) {
  const auto words = scan_words("Ram v. State");
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(words[0].raw, "Ram");
  EXPECT_EQ(words[2].lower, "state");
  EXPECT_EQ(words[1].begin, 4u);
  EXPECT_EQ(words[1].end, 5u);
}

TEST(Roles, ParseAcceptsSpellingVariants) {
  EXPECT_EQ(parse_role("final_judgement"), RhetoricalRole::FinalJudgement);
  EXPECT_EQ(parse_role("FinalJudgement"), RhetoricalRole::FinalJudgement);
  EXPECT_EQ(parse_role("Final Judgement"), RhetoricalRole::FinalJudgement);
  EXPECT_EQ(parse_role("ruling-by-lower-court"), RhetoricalRole::RulingByLowerCourt);
  EXPECT_THROW(parse_role("Verdict"), UnknownRole);
  for (RhetoricalRole r : kAllRoles) EXPECT_EQ(parse_role(role_name(r)), r);
}

TEST(ParseDocument, SingleRecord) {
  const auto doc = parse_document(R"({"doc_id":"d1","sent_id":7,"text":"The facts.","role":"Fact"})");
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc.doc_id, "d1");
  EXPECT_EQ(doc.sentences[0].position, 1);
  EXPECT_EQ(doc.sentences[0].id, 7);
  EXPECT_EQ(doc.sentences[0].word_count, 2);
}

TEST(ParseDocument, UnknownRoleReportsLine) {
  const std::string text =
      "{\"doc_id\":\"d\",\"sent_id\":1,\"text\":\"a b\",\"role\":\"Fact\"}\n"
      "{\"doc_id\":\"d\",\"sent_id\":2,\"text\":\"c d\",\"role\":\"Verdict\"}\n";
  try {
    parse_document(text);
    FAIL() << "expected UnknownRole";
  } catch (const UnknownRole& e) {
    EXPECT_EQ(e.label(), "Verdict");
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseDocument, PositionsAreContiguous) {
  const std::string text =
      "{\"doc_id\":\"d\",\"sent_id\":10,\"text\":\"one\",\"role\":\"Fact\"}\n"
      "{\"doc_id\":\"d\",\"sent_id\":20,\"text\":\"two\",\"role\":\"Issue\"}\n"
      "\n"
      "{\"doc_id\":\"d\",\"sent_id\":30,\"text\":\"three\",\"role\":\"Ratio\"}\n";
  const auto doc = parse_document(text);
  ASSERT_EQ(doc.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(doc.sentences[static_cast<std::size_t>(k)].position, k + 1);
}

TEST(ParseDocument, DocumentRecordForm) {
  const auto doc = parse_document(
      R"({"doc_id":"x","sentences":[{"sent_id":1,"text":"A b.","role":"issue"},{"sent_id":2,"text":"C.","role":"ratio"}]})");
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc.sentences[1].role, RhetoricalRole::Ratio);
}

TEST(ParseDocument, RejectsEmptySentence) {
  EXPECT_THROW(parse_document(R"({"doc_id":"d","sent_id":1,"text":" ... ","role":"Fact"})"), EmptySentence);
}

TEST(ParseDocument, RejectsMalformedJson) {
  EXPECT_THROW(parse_document("{not json"), MalformedRecord);
  EXPECT_THROW(parse_document(R"({"doc_id":"d","text":"a","role":"Fact"})"), MalformedRecord);
}

TEST(ParseDocument, RejectsDuplicateIds) {
  const std::string text =
      "{\"doc_id\":\"d\",\"sent_id\":1,\"text\":\"one\",\"role\":\"Fact\"}\n"
      "{\"doc_id\":\"d\",\"sent_id\":1,\"text\":\"two\",\"role\":\"Fact\"}\n";
  EXPECT_THROW(parse_document(text), MalformedRecord);
}

TEST(ParseCorpus, GroupsByDocId) {
  const std::string text =
      "{\"doc_id\":\"a\",\"sent_id\":1,\"text\":\"one\",\"role\":\"Fact\"}\n"
      "{\"doc_id\":\"a\",\"sent_id\":2,\"text\":\"two\",\"role\":\"Issue\"}\n"
      "{\"doc_id\":\"b\",\"sent_id\":1,\"text\":\"three\",\"role\":\"Ratio\"}\n";
  std::istringstream in(text);
  const auto docs = parse_corpus(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].size(), 2u);
  EXPECT_EQ(docs[1].doc_id, "b");
}

TEST(ParseCorpus, EmptySentenceBecomesLineError) {
  std::istringstream in(
      "{\"doc_id\":\"a\",\"sent_id\":1,\"text\":\"one\",\"role\":\"Fact\"}\n"
      "{\"doc_id\":\"a\",\"sent_id\":2,\"text\":\"!!\",\"role\":\"Fact\"}\n");
  try {
    parse_corpus(in);
    FAIL();
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Serialization, RoundTripsSyntheticDocuments) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 20; ++k) {
    const auto doc = generate_document("doc" + std::to_string(k), gen);
    EXPECT_EQ(parse_document(serialize_document(doc)), doc);
  }
}

TEST(Summaries, RoleAndIdOptional) {
  std::istringstream in(
      "{\"doc_id\":\"a\",\"text\":\"first\"}\n"
      "{\"doc_id\":\"a\",\"text\":\"second\",\"role\":\"issue\"}\n"
      "{\"doc_id\":\"b\",\"text\":\"third\"}\n");
  const auto s = parse_summaries(in);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_FALSE(s[0].sentences[0].role.has_value());
  EXPECT_EQ(s[0].sentences[1].role, RhetoricalRole::Issue);
  EXPECT_EQ(s[0].joined_text(), "first second");
}

TEST(Summaries, IndexMergesAnnotators) {
  TextSummary a{"d1", {{std::nullopt, "x"}}};
  TextSummary b{"d1", {{std::nullopt, "y"}}};
  TextSummary c{"d2", {{std::nullopt, "z"}}};
  const auto idx = index_references({{a, c}, {b}});
  EXPECT_EQ(idx.at("d1").size(), 2u);
  EXPECT_EQ(idx.at("d2").size(), 1u);
}

TEST(Lexicons, DeduplicatesAfterLowercasing) {
  const auto kw = temp_file("kw.txt", "Mens Rea\nmens rea\n");
  const auto st = temp_file("st.txt", "# comment only\n");
  const auto sw = temp_file("sw.txt", "");
  const auto lex = load_lexicons(kw, st, sw);
  EXPECT_EQ(lex.legal_keywords.size(), 1u);
  EXPECT_TRUE(lex.statute_names.empty());
  EXPECT_TRUE(lex.stopwords.empty());
  EXPECT_FALSE(lex.warnings.empty());
}

TEST(Lexicons, MissingFileThrows) {
  EXPECT_THROW(read_list_file("/nonexistent/delsumm/list.txt"), FileUnreadable);
}

TEST(Lexicons, BundledDirectoryLoads) {
  const auto lex = load_lexicon_dir(std::string(DELSUMM_DATA_DIR) + "/lexicons");
  EXPECT_TRUE(lex.stopwords.contains("the"));
  EXPECT_TRUE(lex.legal_keywords.contains("mens rea"));
  EXPECT_TRUE(lex.warnings.empty());
}

TEST(Document, SegmentListsRoleIndices) {
  const auto doc = make_document("d", {{1, "a", RhetoricalRole::Fact},
                                       {2, "b", RhetoricalRole::Issue},
                                       {3, "c", RhetoricalRole::Fact}});
  EXPECT_EQ(doc.segment(RhetoricalRole::Fact), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(doc.segment(RhetoricalRole::Ratio).empty());
}
