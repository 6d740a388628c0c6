#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "spreader/corpus.hpp"
#include "test_support.hpp"

namespace spreader {
namespace {

using testing::TempDir;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

AuthorDocument make_author(const std::string& id, std::size_t tweets,
                           std::optional<Label> label = std::nullopt) {
  AuthorDocument doc;
  doc.author_id = id;
  for (std::size_t i = 0; i < tweets; ++i) doc.tweets.push_back("tweet " + std::to_string(i));
  doc.label = label;
  return doc;
}

Corpus balanced_corpus(std::size_t per_class) {
  std::vector<AuthorDocument> authors;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    authors.push_back(make_author("a" + std::to_string(1000 + i), 1,
                                  i % 2 ? Label::kFakeNewsSpreader : Label::kTrueNewsSpreader));
  }
  return Corpus(Language::kEn, std::move(authors));
}

TEST(ParseAuthorXml, SingleCdataDocument) {
  const auto doc =
      parse_author_xml("<documents><document><![CDATA[hi #URL#]]></document></documents>", "a1");
  EXPECT_EQ(doc.author_id, "a1");
  EXPECT_EQ(doc.tweets, std::vector<std::string>{"hi #URL#"});
  EXPECT_FALSE(doc.label.has_value());
}

TEST(ParseAuthorXml, HundredDocumentsUnderAuthorRoot) {
  std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<author lang=\"en\">\n<documents>\n";
  for (int i = 0; i < 100; ++i) {
    xml += "<document><![CDATA[tweet " + std::to_string(i) + "]]></document>\n";
  }
  xml += "</documents>\n</author>\n";
  Diagnostics diag;
  const auto doc = parse_author_xml(xml, "abc123", &diag);
  ASSERT_EQ(doc.tweets.size(), 100u);
  EXPECT_EQ(doc.tweets.front(), "tweet 0");
  EXPECT_EQ(doc.tweets.back(), "tweet 99");
  EXPECT_TRUE(diag.warnings.empty());
}

TEST(ParseAuthorXml, DecodesEntitiesInPlainText) {
  const auto doc = parse_author_xml(
      "<documents><document>a &amp; b &lt;3 &#233;&#x1F600;</document></documents>", "x");
  EXPECT_EQ(doc.tweets.front(), "a & b <3 é\U0001F600");
}

TEST(ParseAuthorXml, EmptyContainerIsEmptyAuthor) {
  try {
    parse_author_xml("<documents></documents>", "a1");
    FAIL() << "expected EmptyAuthor";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAuthor);
  }
}

TEST(ParseAuthorXml, MalformedInput) {
  for (const char* bad : {"<documents><document>x</documents>", "not xml at all <", "<a><b></a>"}) {
    try {
      parse_author_xml(bad, "a1");
      FAIL() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedXml) << bad;
    }
  }
}

TEST(ParseAuthorXml, NonHundredCountIsAcceptedWithWarning) {
  Diagnostics diag;
  const auto doc = parse_author_xml(
      "<documents><document>a</document><document>b</document></documents>", "a1", &diag);
  EXPECT_EQ(doc.tweets.size(), 2u);
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings.front().find("2 tweets"), std::string::npos);
}

TEST(ParseAuthorXml, RejectsNonAlphanumericId) {
  EXPECT_THROW(parse_author_xml("<documents><document>a</document></documents>", "a-1"), Error);
  EXPECT_THROW(parse_author_xml("<documents><document>a</document></documents>", ""), Error);
}

TEST(ParseAuthorXml, WriteThenParseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    AuthorDocument doc;
    doc.author_id = "id" + std::to_string(trial);
    const std::size_t n = 1 + testing::pick(rng, 5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string tweet = testing::random_tweet_text(rng, 1 + testing::pick(rng, 12));
      if (trial % 7 == 0) tweet += "]]>&<'\"";
      // XML 1.0 cannot carry raw CR or most control characters.
      std::erase_if(tweet, [](char c) { return c == '\r'; });
      doc.tweets.push_back(tweet);
    }
    const auto parsed = parse_author_xml(write_author_xml(doc, Language::kEs), doc.author_id);
    EXPECT_EQ(parsed.tweets, doc.tweets);
  }
}

TEST(ParseTruthFile, FormatExercise) {
  const auto truth = parse_truth_file("a1b2:::1\nc3d4:::0");
  ASSERT_EQ(truth.size(), 2u);
  EXPECT_EQ(truth.at("a1b2"), Label::kFakeNewsSpreader);
  EXPECT_EQ(truth.at("c3d4"), Label::kTrueNewsSpreader);
}

TEST(ParseTruthFile, EmptyAndBlankLines) {
  EXPECT_TRUE(parse_truth_file("").empty());
  EXPECT_EQ(parse_truth_file("\n\na:::1\r\n\n").size(), 1u);
}

TEST(ParseTruthFile, InvalidLabelReportsLine) {
  try {
    parse_truth_file("ok:::0\na1b2:::2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedTruthLine);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_truth_file("a1b2::1"), Error);
  EXPECT_THROW(parse_truth_file(":::1"), Error);
}

TEST(ParseTruthFile, DuplicateId) {
  try {
    parse_truth_file("a:::1\na:::0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateAuthorId);
  }
}

TEST(LoadCorpus, UnlabeledDirectory) {
  TempDir dir("unlabeled");
  write_file(dir.path() / "bbb.xml", "<documents><document>x</document></documents>");
  write_file(dir.path() / "aaa.xml", "<documents><document>y</document></documents>");
  write_file(dir.path() / "notes.md", "ignored");
  const auto corpus = load_corpus(dir.path(), Language::kEn);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.authors()[0].author_id, "aaa");
  EXPECT_EQ(corpus.authors()[1].author_id, "bbb");
  EXPECT_FALSE(corpus.labeled());
  EXPECT_EQ(corpus.diagnostics().warnings.size(), 2u);
}

TEST(LoadCorpus, BalancedLabeledCorpus) {
  TempDir dir("balanced");
  std::vector<AuthorDocument> authors;
  for (int i = 0; i < 300; ++i) {
    authors.push_back(make_author("u" + std::to_string(i), 100,
                                  i < 150 ? Label::kTrueNewsSpreader : Label::kFakeNewsSpreader));
  }
  const Corpus original(Language::kEn, authors);
  save_corpus(original, dir.path());
  const auto loaded = load_corpus(dir.path(), Language::kEn);
  EXPECT_EQ(loaded, original);
  EXPECT_EQ(loaded.count(Label::kTrueNewsSpreader), 150u);
  EXPECT_EQ(loaded.count(Label::kFakeNewsSpreader), 150u);
  EXPECT_TRUE(loaded.diagnostics().warnings.empty());
}

TEST(LoadCorpus, TruthReferencesMissingFile) {
  TempDir dir("missing");
  write_file(dir.path() / "a1.xml", "<documents><document>x</document></documents>");
  write_file(dir.path() / "truth.txt", "a1:::0\nzz9:::1\n");
  try {
    load_corpus(dir.path(), Language::kEn);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAuthorFile);
  }
}

TEST(LoadCorpus, AuthorAbsentFromTruth) {
  TempDir dir("unlabeled_author");
  write_file(dir.path() / "a1.xml", "<documents><document>x</document></documents>");
  write_file(dir.path() / "b2.xml", "<documents><document>x</document></documents>");
  write_file(dir.path() / "truth.txt", "a1:::0\n");
  try {
    load_corpus(dir.path(), Language::kEn);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledAuthor);
  }
}

TEST(LoadCorpus, ResultIndependentOfCreationOrder) {
  TempDir first("order1");
  TempDir second("order2");
  std::vector<std::string> ids;
  for (int i = 0; i < 40; ++i) ids.push_back("id" + std::to_string(i * 7919 % 1000));
  auto reversed = ids;
  std::reverse(reversed.begin(), reversed.end());
  std::string truth;
  for (const auto& id : ids) {
    write_file(first.path() / (id + ".xml"), "<documents><document>" + id + "</document></documents>");
    truth += id + ":::" + std::to_string(id.size() % 2) + "\n";
  }
  for (const auto& id : reversed) {
    write_file(second.path() / (id + ".xml"), "<documents><document>" + id + "</document></documents>");
  }
  write_file(first.path() / "truth.txt", truth);
  write_file(second.path() / "truth.txt", truth);
  EXPECT_EQ(load_corpus(first.path(), Language::kEn), load_corpus(second.path(), Language::kEn));
}

TEST(Corpus, RejectsDuplicateIdsAndMixedLabels) {
  EXPECT_THROW(Corpus(Language::kEn, {make_author("a", 1), make_author("a", 1)}), Error);
  EXPECT_THROW(Corpus(Language::kEn, {make_author("a", 1, Label::kFakeNewsSpreader),
                                      make_author("b", 1)}),
               Error);
}

TEST(SplitCorpus, SeventyThirtyOnBalancedCorpus) {
  const auto corpus = balanced_corpus(150);
  const auto [train, test] = split_corpus(corpus, SplitSpec{7, 10, 1});
  EXPECT_EQ(train.count(Label::kTrueNewsSpreader), 105u);
  EXPECT_EQ(train.count(Label::kFakeNewsSpreader), 105u);
  EXPECT_EQ(test.count(Label::kTrueNewsSpreader), 45u);
  EXPECT_EQ(test.count(Label::kFakeNewsSpreader), 45u);
}

TEST(SplitCorpus, DegenerateFraction) {
  const auto corpus = balanced_corpus(3);
  try {
    split_corpus(corpus, SplitSpec{1, 10, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSplit);
  }
}

TEST(SplitCorpus, UnlabeledCorpus) {
  const Corpus corpus(Language::kEn, {make_author("a", 1), make_author("b", 1)});
  try {
    split_corpus(corpus, SplitSpec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledCorpus);
  }
}

TEST(SplitCorpus, SameSeedSamePartitionDifferentSeedDiffers) {
  const auto corpus = balanced_corpus(50);
  const auto a = split_corpus(corpus, SplitSpec{7, 10, 99});
  const auto b = split_corpus(corpus, SplitSpec{7, 10, 99});
  const auto c = split_corpus(corpus, SplitSpec{7, 10, 100});
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_NE(a.first, c.first);
}

TEST(SplitCorpus, PartitionProperty) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_true = 2 + testing::pick(rng, 40);
    const std::size_t n_fake = 2 + testing::pick(rng, 40);
    std::vector<AuthorDocument> authors;
    for (std::size_t i = 0; i < n_true + n_fake; ++i) {
      authors.push_back(make_author("p" + std::to_string(i), 1,
                                    i < n_true ? Label::kTrueNewsSpreader
                                               : Label::kFakeNewsSpreader));
    }
    const Corpus corpus(Language::kEs, authors);
    const SplitSpec spec{1 + testing::pick(rng, 8), 10, rng()};
    std::pair<Corpus, Corpus> parts;
    try {
      parts = split_corpus(corpus, spec);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateSplit);
      continue;
    }
    std::set<std::string> train_ids;
    std::set<std::string> all_ids;
    for (const auto& a : parts.first.authors()) train_ids.insert(a.author_id);
    for (const auto& a : parts.second.authors()) {
      EXPECT_FALSE(train_ids.contains(a.author_id));
      all_ids.insert(a.author_id);
    }
    all_ids.insert(train_ids.begin(), train_ids.end());
    EXPECT_EQ(all_ids.size(), corpus.size());
    for (Label cls : {Label::kTrueNewsSpreader, Label::kFakeNewsSpreader}) {
      const double wanted = static_cast<double>(corpus.count(cls) * spec.numerator) /
                            static_cast<double>(spec.denominator);
      EXPECT_LE(std::abs(static_cast<double>(parts.first.count(cls)) - wanted), 1.0);
    }
  }
}

TEST(KFold, StratifiedAndDisjoint) {
  const auto corpus = balanced_corpus(10);
  const auto folds = kfold_corpus(corpus, 5, 3);
  ASSERT_EQ(folds.size(), 5u);
  std::set<std::string> seen;
  for (const auto& [train, test] : folds) {
    EXPECT_EQ(train.size() + test.size(), corpus.size());
    EXPECT_EQ(test.count(Label::kFakeNewsSpreader), 2u);
    for (const auto& a : test.authors()) EXPECT_TRUE(seen.insert(a.author_id).second);
  }
  EXPECT_EQ(seen.size(), corpus.size());
}

}  // namespace
}  // namespace spreader
