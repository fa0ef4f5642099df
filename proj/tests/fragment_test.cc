#include "wikidash/fragment.h"

#include <random>

#include <gtest/gtest.h>

namespace wikidash {
namespace {

EntityId Q(std::uint64_t n) { return EntityId(EntityId::Prefix::kItem, n); }
EntityId L(std::uint64_t n) { return EntityId(EntityId::Prefix::kLexeme, n); }

TEST(EntityIdTest, ParsesItemsAndLexemes) {
  EXPECT_EQ(EntityId::Parse("Q18618629"), Q(18618629));
  EXPECT_EQ(EntityId::Parse("L2310"), L(2310));
  EXPECT_EQ(Q(42).str(), "Q42");
  EXPECT_EQ(L(7).str(), "L7");
}

TEST(EntityIdTest, RejectsOtherShapes) {
  for (const char *bad : {"", "Q", "Q0", "Q01", "q42", "P31", "X123", "Q12a",
                          "Q-1", " Q1", "Q99999999999999999999999"}) {
    EXPECT_FALSE(EntityId::Parse(bad)) << bad;
  }
}

TEST(ParseFragmentTest, ItemRoute) {
  AspectRoute route = ParseFragment("#author/Q18618629");
  EXPECT_EQ(route.kind, RouteKind::kItem);
  ASSERT_EQ(route.segments.size(), 1u);
  EXPECT_EQ(route.segments[0].aspect, "author");
  EXPECT_EQ(route.segments[0].ids, std::vector<EntityId>{Q(18618629)});
}

TEST(ParseFragmentTest, EmptyIsIndex) {
  EXPECT_EQ(ParseFragment("").kind, RouteKind::kIndex);
  EXPECT_EQ(ParseFragment("#").kind, RouteKind::kIndex);
  EXPECT_TRUE(ParseFragment("").segments.empty());
}

TEST(ParseFragmentTest, FacetedKeepsSegmentOrder) {
  AspectRoute route = ParseFragment("#venue/Q15817015/topic/Q2013");
  EXPECT_EQ(route.kind, RouteKind::kFaceted);
  ASSERT_EQ(route.segments.size(), 2u);
  EXPECT_EQ(route.segments[0], (AspectSegment{"venue", {Q(15817015)}}));
  EXPECT_EQ(route.segments[1], (AspectSegment{"topic", {Q(2013)}}));
}

TEST(ParseFragmentTest, AspectIndex) {
  AspectRoute route = ParseFragment("#venue");
  EXPECT_EQ(route.kind, RouteKind::kAspectIndex);
  EXPECT_EQ(route.segments, (std::vector<AspectSegment>{{"venue", {}}}));
}

TEST(ParseFragmentTest, MultipleIdsInOneSegment) {
  AspectRoute route = ParseFragment("#authors/Q20980928,Q20895241,Q20895785");
  EXPECT_EQ(route.kind, RouteKind::kItem);
  ASSERT_EQ(route.segments.size(), 1u);
  EXPECT_EQ(route.segments[0].ids,
            (std::vector<EntityId>{Q(20980928), Q(20895241), Q(20895785)}));
}

TEST(ParseFragmentTest, LeadingHashIsOptional) {
  EXPECT_EQ(ParseFragment("author/Q1"), ParseFragment("#author/Q1"));
}

TEST(ParseFragmentTest, DecodesPercentEscapesBeforeSplitting) {
  EXPECT_EQ(ParseFragment("#authors%2FQ1%2CQ2"), ParseFragment("#authors/Q1,Q2"));
}

TEST(ParseFragmentTest, RejectsMalformedFragments) {
  for (const char *bad :
       {"#author/X123", "#author/", "#/Q1", "#author//Q1", "#Q5", "#Author/Q1",
        "#author/Q1,", "#author/Q1,,Q2", "#venue/topic", "#venue/Q1/topic",
        "#author/P31", "#bogus id", "#9lives/Q1", "#-x/Q1", "#author/Q1/"}) {
    EXPECT_THROW(ParseFragment(bad), MalformedFragment) << bad;
  }
}

TEST(TemplatePageTitleTest, ReferenceFragments) {
  const std::string ns = "Wikidata:Synia:";
  EXPECT_EQ(TemplatePageTitle(ParseFragment(""), ns), "Wikidata:Synia:index");
  EXPECT_EQ(TemplatePageTitle(ParseFragment("#venue"), ns),
            "Wikidata:Synia:venue-index");
  EXPECT_EQ(TemplatePageTitle(ParseFragment("#author/Q18618629"), ns),
            "Wikidata:Synia:author");
  EXPECT_EQ(TemplatePageTitle(ParseFragment("#venue/Q15817015/topic/Q2013"), ns),
            "Wikidata:Synia:venue-topic");
  EXPECT_EQ(TemplatePageTitle(ParseFragment("#lexeme/L2310"), ns),
            "Wikidata:Synia:lexeme");
}

TEST(TemplatePageTitleTest, UsesGivenNamespace) {
  EXPECT_EQ(TemplatePageTitle(ParseFragment(""), "User:Fnielsen:Synia:"),
            "User:Fnielsen:Synia:index");
}

TEST(CanonicalFragmentTest, Examples) {
  EXPECT_EQ(CanonicalFragment(ParseFragment("#author/Q18618629")), "#author/Q18618629");
  EXPECT_EQ(CanonicalFragment(AspectRoute{}), "");
  AspectRoute authors{{{"authors", {Q(20980928), Q(20895241)}}}, RouteKind::kItem};
  EXPECT_EQ(CanonicalFragment(authors), "#authors/Q20980928,Q20895241");
  EXPECT_EQ(CanonicalFragment(ParseFragment("venue")), "#venue");
}

// Random valid routes rendered directly as text (not via CanonicalFragment).
std::string RandomValidFragment(std::mt19937 &rng) {
  std::uniform_int_distribution<int> segments(0, 4);
  std::uniform_int_distribution<int> name_len(1, 8);
  std::uniform_int_distribution<int> id_count(1, 3);
  std::uniform_int_distribution<std::uint64_t> number(1, 999999999);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-";
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> letter(0, 25);

  int n = segments(rng);
  if (n == 0) return "";
  std::string out = "#";
  for (int s = 0; s < n; ++s) {
    if (s > 0) out += '/';
    out += static_cast<char>('a' + letter(rng));
    for (int k = name_len(rng) - 1; k > 0; --k) out += alphabet[pick(rng)];
    if (n == 1 && rng() % 3 == 0) break;  // aspect index
    out += '/';
    for (int k = id_count(rng); k > 0; --k) {
      out += (rng() % 2 ? 'Q' : 'L') + std::to_string(number(rng));
      if (k > 1) out += ',';
    }
  }
  return out;
}

TEST(FragmentPropertyTest, CanonicalRoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 5000; ++i) {
    std::string fragment = RandomValidFragment(rng);
    AspectRoute route = ParseFragment(fragment);
    EXPECT_EQ(CanonicalFragment(route), fragment);
    EXPECT_EQ(ParseFragment(CanonicalFragment(route)), route);
  }
}

TEST(FragmentPropertyTest, KindMatchesShape) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    AspectRoute route = ParseFragment(RandomValidFragment(rng));
    switch (route.kind) {
      case RouteKind::kIndex:
        EXPECT_TRUE(route.segments.empty());
        break;
      case RouteKind::kAspectIndex:
        ASSERT_EQ(route.segments.size(), 1u);
        EXPECT_TRUE(route.segments[0].ids.empty());
        break;
      case RouteKind::kItem:
        ASSERT_EQ(route.segments.size(), 1u);
        EXPECT_FALSE(route.segments[0].ids.empty());
        break;
      case RouteKind::kFaceted:
        EXPECT_GE(route.segments.size(), 2u);
        for (const auto &s : route.segments) EXPECT_FALSE(s.ids.empty());
        break;
    }
  }
}

TEST(FragmentPropertyTest, TotalOverArbitraryBytes) {
  std::mt19937 rng(3);
  using namespace std::string_literals;
  const std::string alphabet = "#/,QLqlP0123456789abz-%2FC \x00\xff"s;
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += alphabet[pick(rng)];
    try {
      AspectRoute route = ParseFragment(s);
      EXPECT_EQ(ParseFragment(CanonicalFragment(route)), route) << s;
    } catch (const MalformedFragment &) {
    }
  }
}

}  // namespace
}  // namespace wikidash
