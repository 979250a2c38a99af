#include "doctest.h"
#include "oracles.hpp"

#include <random>
#include <set>

#include "torsionlab/errors.hpp"
#include "torsionlab/grigorchuk.hpp"
#include "torsionlab/group.hpp"

using namespace torsionlab;

namespace {

std::string letters(const GeneratorWord& w) {
    std::string s;
    for (auto x : w.symbols) s.push_back(static_cast<char>('a' + x));
    return s;
}

}  // namespace

TEST_CASE("multiply basics") {
    auto z = GroupCtx::integers();
    CHECK(multiply(z, parse_element(z, "3"), parse_element(z, "-1")).z == 2);

    auto s3 = GroupCtx::s3();
    auto t = parse_element(s3, "(12)");
    CHECK(is_identity(s3, multiply(s3, t, t)));
    CHECK(format_element(s3, multiply(s3, parse_element(s3, "(12)"), parse_element(s3, "(23)"))).size() == 5);

    auto g = GroupCtx::grigorchuk();
    auto a = parse_element(g, "a");
    CHECK(multiply(g, a, a).grig.empty());
    CHECK(oracle::grig_trivial_at_depth("aa", 4));

    CHECK_THROWS_AS(multiply(z, parse_element(z, "1"), t), ContextError);
}

TEST_CASE("is_identity examples") {
    auto z = GroupCtx::integers();
    CHECK(is_identity(z, parse_word(z, "+1 −1")));
    CHECK_FALSE(is_identity(z, parse_word(z, "+1 +1")));
    CHECK_THROWS_AS(parse_word(z, "+2"), ParseError);

    auto g = GroupCtx::grigorchuk();
    // with b = (a,c), c = (a,d), d = (1,b) the element ab has order 16
    CHECK_FALSE(oracle::grig_trivial_at_depth("abababababababab", 8));
    CHECK_FALSE(is_identity(g, parse_word(g, "abababab abababab")));
    CHECK(oracle::grig_trivial_at_depth("abababababababababababababababab", 10));
    CHECK(is_identity(g, parse_word(g, "abababababababab abababababababab")));
    CHECK_FALSE(oracle::grig_trivial_at_depth("ab", 8));
    CHECK_FALSE(is_identity(g, parse_word(g, "ab")));
}

TEST_CASE("Grigorchuk involutions and relators") {
    auto g = GroupCtx::grigorchuk();
    for (const char* w : {"aa", "bb", "cc", "dd", "bcdbcd", "bcd", "adadadad"}) CHECK(is_identity(g, parse_word(g, w)));
    // (ac)^8 = e but (ac)^4 != e
    std::string ac4, ac8;
    for (int i = 0; i < 4; ++i) ac4 += "ac";
    ac8 = ac4 + ac4;
    CHECK_FALSE(is_identity(g, parse_word(g, ac4)));
    CHECK(is_identity(g, parse_word(g, ac8)));
}

TEST_CASE("Grigorchuk word problem agrees with tree action, |w| <= 6") {
    auto g = GroupCtx::grigorchuk();
    std::vector<std::uint32_t> cur;
    std::size_t checked = 0, mismatches = 0;
    while (cur.size() <= 6) {
        GeneratorWord w{cur};
        if (is_identity(g, w) != oracle::grig_trivial_at_depth(letters(w), 6)) ++mismatches;
        ++checked;
        lenlex_next(cur, 4);
    }
    CHECK(checked == 5461);
    CHECK(mismatches == 0);
}

TEST_CASE("canonical key separates and identifies") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> letter(0, 3), len(0, 10);
    for (int i = 0; i < 300; ++i) {
        std::string u, v;
        for (int k = len(rng); k-- > 0;) u += static_cast<char>('a' + letter(rng));
        for (int k = len(rng); k-- > 0;) v += static_cast<char>('a' + letter(rng));
        const bool same = grigorchuk::is_identity(grigorchuk::inverse(u) + v);
        CHECK((grigorchuk::canonical_key(u) == grigorchuk::canonical_key(v)) == same);
        CHECK(same == (oracle::grig_level_action(u, 10) == oracle::grig_level_action(v, 10)));
    }
}

TEST_CASE("word_norm and distance") {
    auto z = GroupCtx::integers();
    CHECK(word_norm(z, identity(z)) == 0);
    CHECK(word_norm(z, parse_element(z, "5")) == 5);
    CHECK(distance(z, parse_element(z, "2"), parse_element(z, "5")) == 3);

    auto g = GroupCtx::grigorchuk();
    auto ad = parse_element(g, "ad");
    CHECK(word_norm(g, ad) == 2);
    CHECK(distance(g, parse_element(g, "a"), parse_element(g, "d")) == 2);
    CHECK(distance(g, ad, ad) == 0);
    // bc = d has norm 1
    CHECK(word_norm(g, parse_element(g, "bc")) == 1);
}

TEST_CASE("ball sizes and order") {
    auto z = GroupCtx::integers();
    CHECK(ball(z, 0)->size() == 1);
    auto b1 = ball(z, 1);
    REQUIRE(b1->size() == 3);
    CHECK(b1->element(0).z == 0);
    CHECK(b1->element(1).z == 1);
    CHECK(b1->element(2).z == -1);

    auto g = GroupCtx::grigorchuk();
    CHECK(ball(g, 1)->size() == 5);

    auto s3 = GroupCtx::s3();
    CHECK(ball(s3, 10)->size() == 6);
}

TEST_CASE("Grigorchuk ball matches Cayley BFS with tree-action equality") {
    auto g = GroupCtx::grigorchuk();
    const unsigned radius = 7;
    auto spheres = oracle::grig_sphere_sizes(radius, 10);
    auto b = ball(g, radius);
    std::vector<std::size_t> mine(radius + 1, 0);
    for (std::size_t i = 0; i < b->size(); ++i) ++mine[b->norm(i)];
    CHECK(mine == spheres);
}

TEST_CASE("ball is monotone and ordered shortlex") {
    auto g = GroupCtx::grigorchuk();
    auto b3 = ball(g, 3);
    auto b4 = ball(g, 4);
    REQUIRE(b3->size() <= b4->size());
    for (std::size_t i = 0; i < b3->size(); ++i) CHECK(b3->key(i) == b4->key(i));
    for (std::size_t i = 1; i < b4->size(); ++i) {
        const auto& u = b4->word(i - 1).symbols;
        const auto& v = b4->word(i).symbols;
        CHECK((u.size() < v.size() || (u.size() == v.size() && u < v)));
    }
}

TEST_CASE("left invariance of the metric") {
    auto g = GroupCtx::grigorchuk();
    auto b = ball(g, 4);
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, b->size() - 1);
    for (int i = 0; i < 60; ++i) {
        const auto& x = b->element(pick(rng));
        const auto& y = b->element(pick(rng));
        const auto& k = b->element(pick(rng));
        CHECK(distance(g, multiply(g, k, x), multiply(g, k, y)) == distance(g, x, y));
    }
}

TEST_CASE("element orders") {
    auto s3 = GroupCtx::s3();
    CHECK(element_order(s3, parse_element(s3, "(123)"), 10) == Order{3, false});
    auto g = GroupCtx::grigorchuk();
    CHECK(oracle::grig_order_at_depth("ab", 10, 100) == 16);
    CHECK(element_order(g, parse_element(g, "ab"), 100).value == 16);
    CHECK(oracle::grig_order_at_depth("ac", 10, 100) == 8);
    CHECK(element_order(g, parse_element(g, "ac"), 100).value == 8);
    CHECK(element_order(g, parse_element(g, "ad"), 100).value == 4);
    CHECK_THROWS_AS(element_order(g, parse_element(g, "ab"), 10), CapExceeded);

    auto z = GroupCtx::integers();
    CHECK(element_order(z, parse_element(z, "1"), 5).infinite);
    CHECK(element_order(z, identity(z), 5) == Order{1, false});

    auto zg = GroupCtx::parse("Z x grigorchuk");
    CHECK(element_order(zg, parse_element(zg, "<1,e>"), 5).infinite);
    CHECK(element_order(zg, parse_element(zg, "<0,ac>"), 100).value == 8);

    // order of g equals order of g^-1
    auto b = ball(g, 4);
    for (const auto& x : b->elements())
        CHECK(element_order(g, x, 1000) == element_order(g, inverse(g, x), 1000));
}

TEST_CASE("torsion function") {
    auto s3 = GroupCtx::s3();
    CHECK(torsion_function(s3, 5, 100) == 3);
    CHECK(torsion_function(s3, 0, 100) == 1);
    auto g = GroupCtx::grigorchuk();
    CHECK(torsion_function(g, 1, 100) == 2);
    CHECK(torsion_function(g, 0, 100) == 1);
    CHECK(torsion_function(g, 2, 100) == 16);
    CHECK_THROWS_AS(torsion_function(GroupCtx::integers(), 1, 10), PreconditionError);
}

TEST_CASE("length-lex enumeration") {
    auto z = GroupCtx::integers();
    CHECK(enumerate_words(z, 0).empty());
    CHECK(format_word(z, enumerate_words(z, 1)) == "+1");
    CHECK(format_word(z, enumerate_words(z, 2)) == "-1");
    CHECK(format_word(z, enumerate_words(z, 3)) == "+1 +1");
    auto g = GroupCtx::grigorchuk();
    for (unsigned k = 0; k < 10000; ++k) CHECK(word_index(g, enumerate_words(g, k)) == k);
    auto s3 = GroupCtx::s3();
    for (unsigned k = 0; k < 10000; ++k) CHECK(word_index(s3, enumerate_words(s3, k)) == k);
    // huge indices round-trip
    BigNat big = BigNat(1) << 300;
    CHECK(word_index(g, enumerate_words(g, big)) == big);
}

TEST_CASE("word problem prefix") {
    auto z = GroupCtx::integers();
    // eps, +1, -1, ++, +-, -+, --
    CHECK(wp_prefix(z, 7) == "1000110");
}

TEST_CASE("group ids") {
    CHECK(GroupCtx::parse("Z x grigorchuk").generator_count() == 6);
    auto zz = GroupCtx::parse("Z x Z");
    CHECK(zz.generator(0) == "l+1");
    CHECK(word_norm(zz, parse_element(zz, "<3,-2>")) == 5);
    CHECK_THROWS_AS(GroupCtx::parse("F2"), ParseError);
}

TEST_CASE("first element of each norm") {
    for (const auto& g : {GroupCtx::integers(), GroupCtx::grigorchuk(), GroupCtx::s3()}) {
        auto b = ball(g, 4);
        for (std::uint64_t n = 0; n <= 4; ++n) {
            std::optional<GeneratorWord> expect;
            for (std::size_t i = 0; i < b->size(); ++i)
                if (b->norm(i) == n) {
                    expect = b->word(i);
                    break;
                }
            CHECK(first_of_norm(g, n) == expect);
        }
    }
}
