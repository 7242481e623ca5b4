#include <gtest/gtest.h>

#include "phishrev/kb.hpp"
#include "phishrev/text.hpp"
#include "test_support.hpp"

using namespace phishrev;

TEST(Kb, InstanceNineteenEncoding) {
  const std::vector<InitialBelief> b{{ClassifierKind::rf, 19, Label::phishing}};
  const auto fb = kb::encode(b, {{19, true}});
  EXPECT_EQ(kb::to_text(fb), "meta(19,yes).\npred(rf,19,phishing).\n");
}

TEST(Kb, EmptyBeliefsEmptyBase) {
  const auto fb = kb::encode({}, {});
  EXPECT_TRUE(fb.empty());
  testkit::TempDir dir;
  EXPECT_EQ(kb::serialize(fb, dir.file("facts.lp")), 0u);
  EXPECT_EQ(text::read_file(dir.file("facts.lp")), "");
}

TEST(Kb, SingleFactSerialization) {
  kb::FactBase fb;
  fb.add({"pred", {std::string("svm"), std::int64_t{0}, std::string("benign")}});
  testkit::TempDir dir;
  EXPECT_EQ(kb::serialize(fb, dir.file("f.lp")), 20u);
  EXPECT_EQ(text::read_file(dir.file("f.lp")), "pred(svm,0,benign).\n");
}

TEST(Kb, CanonicalOrderByIdThenClassifier) {
  const std::vector<InitialBelief> b{{ClassifierKind::svm, 10, Label::phishing},
                                     {ClassifierKind::knn, 2, Label::legitimate},
                                     {ClassifierKind::dt, 10, Label::legitimate},
                                     {ClassifierKind::svm, 2, Label::phishing}};
  const auto fb = kb::encode(b, {{10, false}, {2, true}});
  EXPECT_EQ(kb::to_text(fb),
            "meta(2,yes).\nmeta(10,no).\n"
            "pred(knn,2,benign).\npred(svm,2,phishing).\n"
            "pred(dt,10,benign).\npred(svm,10,phishing).\n");
}

TEST(Kb, BenchmarkCardinality) {
  std::vector<InitialBelief> b;
  kb::MetaFlags meta;
  for (InstanceId id = 0; id < 2286; ++id) {
    meta[id] = id % 7 == 0;
    for (auto k : kAllKinds) b.push_back({k, id, id % 3 ? Label::legitimate : Label::phishing});
  }
  std::size_t visits = 0;
  const auto fb = kb::encode(b, meta, &visits);
  EXPECT_EQ(fb.size(), 11430u);
  EXPECT_EQ(visits, 9144u);
  std::size_t preds = 0;
  for (const auto& f : fb.facts()) preds += f.predicate == "pred";
  EXPECT_EQ(preds, 9144u);
}

TEST(Kb, VisitsLinear) {
  for (std::size_t n : {10, 100, 1000}) {
    Rng rng(n);
    const auto c = testkit::random_beliefs(rng, n);
    std::size_t visits = 0;
    const auto fb = kb::encode(c.beliefs, c.meta, &visits);
    EXPECT_EQ(visits, 4 * n);
    EXPECT_EQ(fb.size(), 5 * n);
  }
}

TEST(Kb, RoundTripRecoversBeliefsAndMeta) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto c = testkit::random_beliefs(rng, uniform_index(rng, 40));
    const auto fb = kb::encode(c.beliefs, c.meta);
    const auto parsed = kb::parse_facts(kb::to_text(fb));
    ASSERT_EQ(parsed, fb);
    const auto d = kb::decode(parsed);
    auto expected = c.beliefs;
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      return std::tie(a.instance_id, a.classifier) < std::tie(b.instance_id, b.classifier);
    });
    ASSERT_EQ(d.beliefs, expected);
    ASSERT_EQ(d.meta_flags, c.meta);
    ASSERT_EQ(kb::to_text(kb::encode(d.beliefs, d.meta_flags)), kb::to_text(fb));
  }
}

TEST(Kb, MissingMetaIsAnError) {
  const std::vector<InitialBelief> b{{ClassifierKind::svm, 3, Label::phishing}};
  EXPECT_THROW(kb::encode(b, {{4, true}}), kb::KbError);
}

TEST(Kb, FunctionalConstraints) {
  kb::FactBase fb;
  fb.add({"pred", {std::string("svm"), std::int64_t{1}, std::string("benign")}});
  fb.add({"pred", {std::string("svm"), std::int64_t{1}, std::string("benign")}});
  EXPECT_EQ(fb.size(), 1u);
  EXPECT_THROW(fb.add({"pred", {std::string("svm"), std::int64_t{1}, std::string("phishing")}}), kb::KbError);
  EXPECT_EQ(fb.missing_meta(), std::vector<InstanceId>{1});
  fb.add({"meta", {std::int64_t{1}, std::string("no")}});
  EXPECT_TRUE(fb.missing_meta().empty());
  EXPECT_THROW(fb.add({"meta", {std::int64_t{1}, std::string("yes")}}), kb::KbError);
}

TEST(Kb, ClassSymbols) {
  EXPECT_EQ(kb::class_symbol(Label::legitimate), "benign");
  EXPECT_EQ(kb::class_symbol(Label::phishing), "phishing");
  for (auto l : {Label::legitimate, Label::phishing}) EXPECT_EQ(kb::class_from_symbol(kb::class_symbol(l)), l);
  EXPECT_THROW(kb::class_from_symbol("legitimate"), kb::KbError);
}

TEST(Kb, ParseRejectsRulesAndBadFacts) {
  EXPECT_THROW(kb::parse_facts("a :- b.\nb."), kb::KbError);
  EXPECT_THROW(kb::decode(kb::parse_facts("pred(nb,1,benign).")), kb::KbError);
  EXPECT_THROW(kb::decode(kb::parse_facts("meta(1,maybe).")), kb::KbError);
  EXPECT_THROW(kb::decode(kb::parse_facts("other(1).")), kb::KbError);
  EXPECT_THROW(kb::parse_facts("pred(svm,x,benign)."), kb::KbError);
}
