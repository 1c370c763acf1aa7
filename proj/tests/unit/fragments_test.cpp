#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "spf/fragments/fragment.hpp"
#include "spf/fragments/selector.hpp"

namespace spf::fragments {
namespace {

using rdf::Graph;
using rdf::SolutionMapping;
using rdf::StarPattern;
using testing::ex;
using testing::lit;
using testing::mapping;
using testing::var;

std::vector<SolutionMapping> mappings_of(const std::vector<TripleGroup>& groups) {
  std::vector<SolutionMapping> out;
  for (const auto& g : groups) out.push_back(g.mapping);
  return out;
}

class G0 : public ::testing::Test {
 protected:
  Graph g = Graph::build(testing::g0_triples());
};

TEST_F(G0, StarWithoutBindings) {
  auto groups = select_star(g, testing::s2_star(), {});
  ASSERT_EQ(groups.size(), 2u);
  auto list = mappings_of(groups);
  std::set<SolutionMapping> got(list.begin(), list.end());
  EXPECT_EQ(got, (std::set<SolutionMapping>{
                     mapping({{"p2", ex("bob")}, {"a", ex("X")}, {"bd2", lit("1980")}}),
                     mapping({{"p2", ex("carol")}, {"a", ex("Y")}, {"bd2", lit("1975")}})}));
  for (const auto& grp : groups) EXPECT_EQ(grp.triples.size(), 3u);
}

TEST_F(G0, StarRestrictedByBindings) {
  auto groups = select_star(g, testing::s2_star(), {mapping({{"a", ex("X")}})});
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].mapping, mapping({{"p2", ex("bob")}, {"a", ex("X")}, {"bd2", lit("1980")}}));
  EXPECT_EQ(groups[0].triples,
            (std::vector<rdf::Triple>{{ex("bob"), ex("country"), ex("Norway")},
                                      {ex("bob"), ex("award"), ex("X")},
                                      {ex("bob"), ex("birthDate"), lit("1980")}}));
}

TEST_F(G0, BindingOfForeignVariableSelectsNothing) {
  EXPECT_TRUE(select_star(g, testing::s2_star(), {mapping({{"bd1", lit("1970")}})}).empty());
  // A mapping that is partly foreign is equally unusable.
  EXPECT_TRUE(select_star(g, testing::s2_star(), {mapping({{"a", ex("X")}, {"p1", ex("alice")}})}).empty());
}

TEST_F(G0, EmptyMappingInOmegaSelectsEverything) {
  EXPECT_EQ(select_star(g, testing::s2_star(), {SolutionMapping{}}).size(), 2u);
}

TEST_F(G0, TriplePatternSelectors) {
  auto norway = select_triple_pattern(g, {var("p"), ex("country"), ex("Norway")}, {});
  EXPECT_EQ(mappings_of(norway),
            (std::vector<SolutionMapping>{mapping({{"p", ex("bob")}}), mapping({{"p", ex("carol")}})}));

  auto award = select_triple_pattern(g, {var("p"), ex("award"), var("a")}, {mapping({{"p", ex("bob")}})});
  EXPECT_EQ(mappings_of(award), (std::vector<SolutionMapping>{mapping({{"p", ex("bob")}, {"a", ex("X")}})}));

  EXPECT_TRUE(select_triple_pattern(g, {var("p"), ex("country"), ex("France")}, {}).empty());
  EXPECT_TRUE(select_triple_pattern(g, {var("p"), ex("country"), ex("France")}, {mapping({{"p", ex("bob")}})})
                  .empty());
}

TEST_F(G0, Fragments) {
  auto f2 = make_fragment("http://h/data/fragment", SelectorSpec::star(testing::s2_star(), {}), g);
  EXPECT_EQ(f2.metadata.cnt, 2u);
  EXPECT_TRUE(f2.controls.contains(kFragmentTemplateControl));
  EXPECT_EQ(make_fragment("u", SelectorSpec::star(testing::s1_star(), {}), g).metadata.cnt, 1u);
  auto none = make_fragment("u", SelectorSpec::tp({var("x"), ex("nonexistent"), var("y")}), g);
  EXPECT_EQ(none.metadata.cnt, 0u);
  EXPECT_TRUE(none.groups.empty());
  EXPECT_TRUE(none.controls.contains(kFragmentTemplateControl));
}

TEST(Selector, BratlieTwoStar) {
  auto g = Graph::build(testing::bratlie_triples());
  auto groups = select_star(g, testing::bratlie_star(), {});
  ASSERT_EQ(groups.size(), 1u);
  auto expected = testing::bratlie_triples();
  expected.resize(3);
  EXPECT_EQ(groups[0].triples, expected);
}

TEST(Selector, Validation) {
  Omega big;
  for (int i = 0; i < 31; ++i) big.push_back(mapping({{"a", ex("v" + std::to_string(i))}}));
  auto star = testing::s2_star();
  EXPECT_THROW(SelectorSpec::star(star, big).validate(30, 16), InvalidSelector);
  big.pop_back();
  EXPECT_NO_THROW(SelectorSpec::star(star, big).validate(30, 16));
  EXPECT_THROW(SelectorSpec::star(star, {mapping({{"a", ex("X")}}), mapping({{"a", ex("X")}})}).validate(30, 16),
               InvalidSelector);
  EXPECT_THROW(SelectorSpec::star(star, {}).validate(30, 2), InvalidSelector);
  EXPECT_EQ(SelectorSpec::tp({var("p"), ex("award"), var("a")}).kind(), SelectorKind::tp);
}

Fragment fragment_of_size(std::size_t n) {
  std::vector<rdf::Triple> triples;
  for (std::size_t i = 0; i < n; ++i) triples.push_back({ex("s" + std::to_string(i)), ex("p"), ex("o")});
  static std::vector<Graph> keep;  // graphs outlive the fragments built on them
  keep.push_back(Graph::build(triples));
  return make_fragment("http://h/d/fragment?p=x", SelectorSpec::tp({var("s"), ex("p"), ex("o")}), keep.back());
}

TEST(Paginate, Arithmetic) {
  auto f = fragment_of_size(120);
  auto p1 = paginate(f, 1, 50);
  auto p2 = paginate(f, 2, 50);
  auto p3 = paginate(f, 3, 50);
  EXPECT_EQ(p1.groups.size(), 50u);
  EXPECT_TRUE(p1.metadata.has_next);
  EXPECT_EQ(p2.groups.size(), 50u);
  EXPECT_TRUE(p2.metadata.has_next);
  EXPECT_EQ(p3.groups.size(), 20u);
  EXPECT_FALSE(p3.metadata.has_next);
  EXPECT_EQ(p1.metadata.cnt, 120u);
  EXPECT_TRUE(p1.controls.contains(kNextPageControl));
  EXPECT_FALSE(p3.controls.contains(kNextPageControl));
  EXPECT_TRUE(p3.controls.contains(kFragmentTemplateControl));
  EXPECT_NE(p1.page_uri, p1.fragment_uri);
  EXPECT_EQ(p1.controls.at(kNextPageControl), p2.page_uri);

  auto beyond = paginate(f, 4, 50);
  EXPECT_TRUE(beyond.groups.empty());
  EXPECT_FALSE(beyond.metadata.has_next);

  auto empty = paginate(fragment_of_size(0), 1, 50);
  EXPECT_TRUE(empty.groups.empty());
  EXPECT_EQ(empty.metadata.cnt, 0u);
  EXPECT_FALSE(empty.metadata.has_next);

  auto exact = paginate(fragment_of_size(50), 1, 50);
  EXPECT_EQ(exact.groups.size(), 50u);
  EXPECT_FALSE(exact.metadata.has_next);

  EXPECT_THROW(paginate(f, 0, 50), std::invalid_argument);
  EXPECT_THROW(paginate(f, 1, 0), std::invalid_argument);
}

TEST(Paginate, Uris) {
  EXPECT_EQ(page_uri("http://h/d/fragment", 2), "http://h/d/fragment?page=2");
  EXPECT_EQ(page_uri("http://h/d/fragment?s=x", 2), "http://h/d/fragment?s=x&page=2");
  EXPECT_EQ(collection_template("http://h/d/fragment?s=x"), "http://h/d/fragment{?s,p,o,page}");
}

// Property suite over random instances: oracle equality, restriction,
// backward compatibility, group soundness, metadata and paging.
TEST(SelectorProperties, RandomInstances) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 120; ++round) {
    auto inst = testing::random_instance(rng, 400, 4, 30);
    auto g = Graph::build(inst.triples);
    auto groups = select_star(g, inst.star, inst.omega);
    auto got = mappings_of(groups);
    std::set<SolutionMapping> got_set(got.begin(), got.end());
    ASSERT_EQ(got_set.size(), got.size()) << "duplicate groups";
    EXPECT_EQ(got_set, testing::brute_select_star(inst.triples, inst.star, inst.omega));

    std::set<rdf::Triple> graph_set(inst.triples.begin(), inst.triples.end());
    auto vars = inst.star.variables();
    for (const auto& grp : groups) {
      EXPECT_EQ(grp.mapping.size(), vars.size());
      std::vector<rdf::Triple> expected;
      auto ground = rdf::apply_mapping(grp.mapping, inst.star);
      for (const auto& tp : ground.patterns()) {
        expected.push_back(rdf::as_triple(tp));
      }
      EXPECT_EQ(grp.triples, expected);
      for (const auto& t : grp.triples) EXPECT_TRUE(graph_set.contains(t));
    }

    auto unrestricted = mappings_of(select_star(g, inst.star, {}));
    if (!inst.omega.empty()) {
      // An ordered subsequence of the unrestricted result.
      auto it = unrestricted.begin();
      for (const auto& m : got) {
        it = std::find(it, unrestricted.end(), m);
        ASSERT_NE(it, unrestricted.end());
        EXPECT_TRUE(std::any_of(inst.omega.begin(), inst.omega.end(),
                                [&](const auto& r) { return r.is_subset_of(m); }));
      }
    }

    if (inst.star.size() == 1) {
      EXPECT_EQ(select_triple_pattern(g, inst.star.patterns().front(), inst.omega), groups);
    }

    auto f = make_fragment("http://h/d/fragment", SelectorSpec::star(inst.star, inst.omega), g);
    EXPECT_EQ(f.metadata.cnt, f.groups.size());
    EXPECT_EQ(f.metadata.cnt == 0, f.groups.empty());
    for (std::size_t size : {1u, 3u, 50u}) {
      std::vector<TripleGroup> joined;
      std::size_t pages = f.metadata.cnt == 0 ? 1 : (f.metadata.cnt + size - 1) / size;
      for (std::size_t p = 1; p <= pages + 1; ++p) {
        auto page = paginate(f, p, size);
        EXPECT_LE(page.groups.size(), size);
        EXPECT_EQ(page.metadata.has_next, p < pages);
        if (page.metadata.has_next) {
          EXPECT_EQ(page.groups.size(), size);
        }
        auto fast = make_page("http://h/d/fragment", SelectorSpec::star(inst.star, inst.omega), g, p, size);
        EXPECT_EQ(fast.groups, page.groups);
        EXPECT_EQ(fast.metadata, page.metadata);
        joined.insert(joined.end(), page.groups.begin(), page.groups.end());
      }
      EXPECT_EQ(joined, f.groups);
    }
  }
}

}  // namespace
}  // namespace spf::fragments
