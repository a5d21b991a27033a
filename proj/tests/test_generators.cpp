#include <catch_amalgamated.hpp>

#include <nefree/classification.hpp>
#include <nefree/generators.hpp>

#include "test_util.hpp"

using namespace nefree;

namespace {

using L = LabelledChain::Label;

// block size, block shape (chain or antichain), letter — enough to pin a
// label sequence exactly
struct LabelShape {
    int n;
    char kind; // 'c' or 'a'
    int r;
};

std::vector<LabelShape> shapes(const LabelledChain& c) {
    std::vector<LabelShape> out;
    for (auto& l : c.labels) {
        char kind = is_chain_poset(l.block) ? 'c' : 'a';
        if (l.block.n == 1)
            kind = 'c';
        out.push_back({l.block.n, kind, (int)l.r});
    }
    return out;
}

bool operator==(const LabelShape& x, const LabelShape& y) {
    return x.n == y.n && x.kind == y.kind && x.r == y.r;
}

LabelledChain period_window(int d) {
    std::vector<L> labels;
    for (int i = 0; i < d; ++i) {
        labels.push_back({Poset::chain(1), -1});
        labels.push_back({Poset::chain(1), 0});
    }
    return LabelledChain(std::move(labels));
}

} // namespace

TEST_CASE("named generators") {
    CHECK(gen_named("n") == n_pattern());
    CHECK(gen_named("c(1)") == gen_named("a(1)"));
    CHECK(gen_named("chain(4)") == Poset::chain(4));
    CHECK(gen_named("antichain(3)") == Poset::antichain(3));
    CHECK(gen_named("a(3)").n == 3);
    CHECK(is_antichain_poset(gen_named("a(3)")));
    CHECK(gen_named("A(2)") == linear_sum({Poset::antichain(2), Poset::antichain(2)}));
    CHECK(gen_named("B(1)") ==
          linear_sum({Poset::chain(1), Poset::antichain(2), Poset::chain(1)}));
    CHECK(gen_named(" c ( 3 ) ") == Poset::chain(3)); // whitespace is cosmetic

    REQUIRE_THROWS_AS(gen_named("x(2)"), parse_error);
    REQUIRE_THROWS_AS(gen_named("c"), parse_error);
    REQUIRE_THROWS_AS(gen_named("c(-1)"), parse_error);
    REQUIRE_THROWS_AS(gen_named("c(0)"), parse_error);
    REQUIRE_THROWS_AS(gen_A(0), parse_error);
    REQUIRE_THROWS_AS(gen_B(-1), parse_error);
}

TEST_CASE("ladder families") {
    for (int n = 1; n <= 5; ++n) {
        Poset a = gen_A(n);
        Poset b = gen_B(n);
        CHECK(a.n == 2 * n);
        CHECK(b.n == 2 * n + 2);
        CHECK(is_nfree(a));
        CHECK(is_nfree(b));
        if (n >= 2) {
            CHECK(is_connected(a)); // single layer is a bare two-antichain
            CHECK_FALSE(has_ccgc(a)); // the two-antichain layers are proper summands
        }
    }
    SECTION("gen_B(1) exact relations") {
        Poset b = gen_B(1);
        REQUIRE(b.n == 4);
        CHECK(b.less(0, 1));
        CHECK(b.less(0, 2));
        CHECK(b.less(1, 3));
        CHECK(b.less(2, 3));
        CHECK(b.less(0, 3));
        CHECK(b.incomparable(1, 2));
    }
    SECTION("classification sees the stacked layers") {
        auto c = classify(gen_A(2));
        REQUIRE(c.tag == ClassificationTag::linear_sum);
        CHECK(c.parts.size() == 2);
        for (auto& pp : c.part_posets)
            CHECK(has_ccgc(pp));
    }
}

TEST_CASE("anchors and windows") {
    LabelledChain mixed({L{Poset::antichain(2), -1}, L{Poset::chain(1), 0},
                         L{Poset::antichain(2), 1}});
    CHECK(insertion_anchors(mixed) == std::vector<int>{0, 2});
    CHECK(linear_anchors(mixed) == std::vector<int>{0, 2}); // non-trivial blocks

    LabelledChain singles({L{Poset::chain(1), -1}, L{Poset::chain(1), 0}});
    CHECK(insertion_anchors(singles) == std::vector<int>{0});
    CHECK(linear_anchors(singles).empty());

    REQUIRE_THROWS_AS(TruncationWindow(mixed, 3), anchor_error); // only two anchors
    REQUIRE_THROWS_AS(TruncationWindow(mixed, -1), anchor_error);
    TruncationWindow ok(mixed, 2);
    CHECK(ok.depth == 2);
}

TEST_CASE("gadget insertion, mixed letters") {
    LabelledChain base({L{Poset::antichain(2), -1}});
    TruncationWindow w(base, 1);

    SECTION("empty pattern only oddifies the blocks") {
        auto out = cf_window(w, {});
        CHECK(shapes(out) == std::vector<LabelShape>{{3, 'a', -1}});
    }
    SECTION("bit zero inserts the two-sized gadget above its anchor") {
        auto out = cf_window(w, {0});
        CHECK(shapes(out) ==
              std::vector<LabelShape>{{3, 'a', -1}, {2, 'a', 0}, {2, 'c', -1}});
        CHECK(out.points() == 7);
    }
    SECTION("bit one inserts the four-sized gadget") {
        auto out = cf_window(w, {1});
        CHECK(shapes(out) ==
              std::vector<LabelShape>{{3, 'a', -1}, {4, 'a', 0}, {4, 'c', -1}});
        CHECK(out.points() == 11);
    }
    SECTION("gadget chain copies the anchor letter, antichain reads zero") {
        LabelledChain two({L{Poset::antichain(2), -1}, L{Poset::chain(1), 0},
                           L{Poset::antichain(2), 1}});
        auto out = cf_window(TruncationWindow(two, 2), {1, 0});
        // first pattern bit lands on the higher anchor
        CHECK(shapes(out) == std::vector<LabelShape>{{3, 'a', -1},
                                                     {2, 'a', 0},
                                                     {2, 'c', -1},
                                                     {1, 'c', 0},
                                                     {3, 'a', 1},
                                                     {4, 'a', 0},
                                                     {4, 'c', 1}});
    }
    SECTION("patterns deeper than the window are refused") {
        REQUIRE_THROWS_AS(cf_window(w, {0, 1}), anchor_error);
        REQUIRE_THROWS_AS(cf_window(TruncationWindow(base, 0), {0}), anchor_error);
    }
    SECTION("sums of modified windows stay fence-free") {
        for (std::uint8_t b : {0, 1})
            CHECK(is_nfree(sum_labelled_chain(cf_window(w, {b}))));
    }
}

TEST_CASE("gadget insertion, all-down regime") {
    SECTION("letters other than minus one are refused") {
        LabelledChain bad({L{Poset::antichain(2), 0}});
        REQUIRE_THROWS_AS(cf_linear_window(TruncationWindow(bad, 0), {}), regime_error);
        LabelledChain bad2({L{Poset::antichain(2), 1}});
        REQUIRE_THROWS_AS(cf_linear_window(TruncationWindow(bad2, 0), {}), regime_error);
    }
    SECTION("runs of two non-trivial blocks get one patch block on top") {
        LabelledChain base({L{Poset::chain(1), -1}, L{Poset::antichain(2), -1},
                            L{Poset::antichain(2), -1}, L{Poset::chain(1), -1}});
        auto out = cf_linear_window(TruncationWindow(base, 0), {});
        CHECK(shapes(out) == std::vector<LabelShape>{{1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1}});
    }
    SECTION("runs of four are patched, runs of three are not") {
        LabelledChain four(std::vector<L>(4, L{Poset::antichain(2), -1}));
        auto out4 = cf_linear_window(TruncationWindow(four, 0), {});
        CHECK(out4.length() == 5);
        CHECK(out4.labels.back().block.n == 2);

        LabelledChain three(std::vector<L>(3, L{Poset::antichain(2), -1}));
        auto out3 = cf_linear_window(TruncationWindow(three, 0), {});
        CHECK(out3.length() == 3);
    }
    SECTION("single non-trivial blocks are left alone") {
        LabelledChain b1({L{Poset::chain(1), -1}, L{Poset::antichain(2), -1},
                          L{Poset::chain(1), -1}});
        auto out = cf_linear_window(TruncationWindow(b1, 0), {});
        CHECK(out.length() == 3);
    }
    SECTION("gadget is the ladder context chain, inserted covering its anchor") {
        LabelledChain base({L{Poset::chain(1), -1}, L{Poset::antichain(2), -1},
                            L{Poset::antichain(2), -1}, L{Poset::chain(1), -1}});
        auto out = cf_linear_window(TruncationWindow(base, 1), {0});
        // bit 0 sits on the lower anchor; the run patch still lands after the
        // upper run block
        CHECK(shapes(out) == std::vector<LabelShape>{{1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1}});
        CHECK(out.points() == 14);
        CHECK(is_nfree(sum_labelled_chain(out)));
    }
    SECTION("gadget goes before the run patch at a shared position") {
        LabelledChain base({L{Poset::chain(1), -1}, L{Poset::antichain(2), -1},
                            L{Poset::antichain(2), -1}, L{Poset::chain(1), -1}});
        auto out = cf_linear_window(TruncationWindow(base, 2), {1, 0});
        CHECK(shapes(out) == std::vector<LabelShape>{{1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1}, // low gadget, bit 0
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1}, // high gadget, bit 1
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {2, 'a', -1},
                                                     {1, 'c', -1},
                                                     {2, 'a', -1}, // run patch last
                                                     {1, 'c', -1}});
    }
}

TEST_CASE("window families") {
    LabelledChain base({L{Poset::antichain(2), -1}});
    TruncationWindow w(base, 1);

    SECTION("distinct bits give non-isomorphic sums") {
        auto rep = family_pairwise_noniso(
            {cf_window(w, {0}), cf_window(w, {1})});
        CHECK(rep.all_pairs_noniso);
        CHECK(rep.isomorphic[0][1] == 0);
        CHECK(rep.embeds_in_base.empty());
    }
    SECTION("identical windows are flagged") {
        auto rep = family_pairwise_noniso({cf_window(w, {0}), cf_window(w, {0})});
        CHECK_FALSE(rep.all_pairs_noniso);
        CHECK(rep.isomorphic[0][1] == 1);
        CHECK(rep.isomorphic[1][0] == 1);
        CHECK(rep.isomorphic[0][0] == 1);
    }
    SECTION("all two-bit patterns stay apart") {
        LabelledChain base2({L{Poset::antichain(2), -1}, L{Poset::antichain(2), -1}});
        TruncationWindow w2(base2, 2);
        std::vector<LabelledChain> windows;
        for (std::uint8_t b0 : {0, 1})
            for (std::uint8_t b1 : {0, 1})
                windows.push_back(cf_window(w2, {b0, b1}));
        auto rep = family_pairwise_noniso(windows, std::nullopt, 24);
        CHECK(rep.all_pairs_noniso);
        CHECK(rep.sums.size() == 4);
    }
    SECTION("oversized windows are refused") {
        REQUIRE_THROWS_AS(family_pairwise_noniso({cf_window(w, {1})}, std::nullopt, 10),
                          size_error);
        REQUIRE_THROWS_AS(family_pairwise_noniso({}), parse_error);
    }
    SECTION("modified window embeds into a deep un-modified window") {
        // one modified period against six clean ones
        auto modified = cf_window(TruncationWindow(period_window(1), 1), {0});
        auto rep = family_pairwise_noniso({modified}, period_window(6));
        REQUIRE(rep.embeds_in_base.size() == 1);
        REQUIRE(rep.embeds_in_base[0].has_value());
        CHECK(*rep.embeds_in_base[0]);
    }
    SECTION("pattern extension: shallow modified window embeds into the deeper one") {
        auto shallow = cf_window(TruncationWindow(period_window(1), 1), {0});
        auto deep = cf_window(TruncationWindow(period_window(2), 2), {0, 1});
        CHECK(find_embedding(sum_labelled_chain(shallow), sum_labelled_chain(deep), 16)
                  .has_value());
    }
}
