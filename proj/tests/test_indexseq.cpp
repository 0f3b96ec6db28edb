#include <gtest/gtest.h>

#include "mopr/index_seq.hpp"
#include "mopr/mop.hpp"

using namespace mopr;

namespace {

std::vector<MultiIndex> idx(std::initializer_list<std::initializer_list<int>> list) {
    std::vector<MultiIndex> out;
    for (auto l : list) out.emplace_back(l);
    return out;
}

System angelesco() { return System({MomentFunctional::lebesgue(0, 1), MomentFunctional::lebesgue(2, 3)}); }

std::size_t type2_rank(const System& s, const IndexSeq& seq) {
    std::size_t width = 0;
    for (const auto& e : seq.elements) width = std::max(width, static_cast<std::size_t>(e.total()) + 1);
    Matrix m(0, 0);
    for (const auto& e : seq.elements) {
        std::vector<Rat> row(width);
        const auto P = type2_monic(s, e);
        const auto& c = P.p.coefficients();
        std::copy(c.begin(), c.end(), row.begin());
        m.append_row(row);
    }
    return rank(m);
}

std::size_t type1_rank(const System& s, const IndexSeq& seq) {
    std::vector<std::size_t> width(s.r(), 0);
    for (const auto& e : seq.elements)
        for (std::size_t j = 0; j < s.r(); ++j) width[j] = std::max(width[j], static_cast<std::size_t>(e[j]));
    Matrix m(0, 0);
    for (const auto& e : seq.elements) {
        const auto A = type1_normalized(s, e);
        std::vector<Rat> row;
        for (std::size_t j = 0; j < s.r(); ++j) {
            const auto& c = A.a[j].coefficients();
            for (std::size_t i = 0; i < width[j]; ++i) row.push_back(i < c.size() ? c[i] : Rat(0));
        }
        m.append_row(row);
    }
    return rank(m);
}

}  // namespace

TEST(Path, StepLine) {
    auto p = path(MultiIndex{0, 0}, MultiIndex{3, 3}, {0, 1, 0, 1, 0, 1});
    EXPECT_EQ(p.elements, idx({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}}));
    EXPECT_EQ(p.witnesses, (std::vector<std::size_t>{0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(path(MultiIndex{0, 0}, MultiIndex{3, 3}).elements, p.elements);
}

TEST(Path, SingleComponentAndSingleton) {
    EXPECT_EQ(path(MultiIndex{2}, MultiIndex{5}, {0, 0, 0}).elements, idx({{2}, {3}, {4}, {5}}));
    auto s = path(MultiIndex{1, 1}, MultiIndex{1, 1}, {});
    EXPECT_EQ(s.elements, idx({{1, 1}}));
}

TEST(Path, Decreasing) {
    auto p = path(MultiIndex{2, 1}, MultiIndex{0, 0});
    EXPECT_EQ(p.direction, Direction::Decreasing);
    EXPECT_EQ(p.elements, idx({{2, 1}, {1, 1}, {1, 0}, {0, 0}}));
    EXPECT_EQ(p.offset(2), (MultiIndex{1, 1}));
}

TEST(Path, BadMultiset) {
    EXPECT_THROW(path(MultiIndex{0, 0}, MultiIndex{1, 1}, {0}), BadStepMultiset);
    EXPECT_THROW(path(MultiIndex{0, 0}, MultiIndex{1, 1}, {0, 0}), BadStepMultiset);
    EXPECT_THROW(path(MultiIndex{0, 0}, MultiIndex{1, 1}, {0, 2}), BadStepMultiset);
    EXPECT_THROW(path(MultiIndex{0, 1}, MultiIndex{1, 0}, {}), BadStepMultiset);
}

TEST(Frame, InterleavedFromOrigin) {
    auto f = frame(MultiIndex{0, 0}, MultiIndex{3, 3});
    EXPECT_EQ(f.elements, idx({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {3, 0}, {0, 3}}));
}

TEST(Frame, DecreasingTieBreaks) {
    EXPECT_EQ(frame(MultiIndex{1, 1}, MultiIndex{0, 0}, TieBreak::Interleaved).elements,
              idx({{1, 1}, {0, 1}, {1, 0}}));
    EXPECT_EQ(frame(MultiIndex{1, 1}, MultiIndex{0, 0}, TieBreak::ComponentMajor).elements,
              idx({{1, 1}, {1, 0}, {0, 1}}));
}

TEST(Frame, SingleComponentIsPath) {
    EXPECT_EQ(frame(MultiIndex{1}, MultiIndex{4}).elements, path(MultiIndex{1}, MultiIndex{4}).elements);
    EXPECT_EQ(frame(MultiIndex{4}, MultiIndex{1}).elements, path(MultiIndex{4}, MultiIndex{1}).elements);
}

TEST(Admissible, ExplicitWithWitnesses) {
    auto seq = explicit_sequence(MultiIndex{0, 0}, MultiIndex{3, 3},
                                 idx({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {3, 0}, {1, 3}}));
    auto res = is_admissible(seq, MultiIndex{0, 0}, MultiIndex{3, 3});
    EXPECT_TRUE(res.admissible) << res.reason;
    EXPECT_EQ(res.witnesses, (std::vector<std::size_t>{0, 1, 0, 1, 0, 1}));
}

TEST(Admissible, RepeatedIndexRejected) {
    auto seq = explicit_sequence(MultiIndex{0, 0}, MultiIndex{1, 1}, idx({{0, 0}, {1, 0}, {1, 0}}));
    EXPECT_FALSE(is_admissible(seq, MultiIndex{0, 0}, MultiIndex{1, 1}).admissible);
}

TEST(Admissible, BoundsAndStart) {
    auto outside = explicit_sequence(MultiIndex{0, 0}, MultiIndex{1, 1}, idx({{0, 0}, {2, 0}}));
    EXPECT_FALSE(is_admissible(outside, MultiIndex{0, 0}, MultiIndex{1, 1}).admissible);
    auto wrong_start = explicit_sequence(MultiIndex{0, 0}, MultiIndex{1, 1}, idx({{1, 0}, {1, 1}}));
    EXPECT_FALSE(is_admissible(wrong_start, MultiIndex{0, 0}, MultiIndex{1, 1}).admissible);
}

TEST(Admissible, GeneratedSequencesPass) {
    for (const auto& to : box(MultiIndex{3, 2, 2})) {
        const MultiIndex from{0, 0, 0};
        for (auto seq : {path(from, to), frame(from, to), frame(from, to, TieBreak::ComponentMajor),
                         path(to, from), frame(to, from), frame(to, from, TieBreak::ComponentMajor)}) {
            auto res = is_admissible(seq, seq.from, seq.to);
            EXPECT_TRUE(res.admissible) << seq.to_string() << ": " << res.reason;
            EXPECT_EQ(res.witnesses.size(), seq.witnesses.size());
        }
    }
}

TEST(LinearIndependence, Type2AlongDecreasingSequences) {
    const System s = angelesco();
    for (const auto& from : box(MultiIndex{3, 3})) {
        for (const auto& to : box(from)) {
            for (auto seq : {frame(from, to), frame(from, to, TieBreak::ComponentMajor), path(from, to)})
                EXPECT_EQ(type2_rank(s, seq), seq.size()) << seq.to_string();
        }
    }
}

TEST(LinearIndependence, Type1AlongIncreasingSequences) {
    const System s = angelesco();
    for (const auto& to : box(MultiIndex{3, 3})) {
        for (const auto& from : box(to)) {
            if (from.is_zero()) continue;
            for (auto seq : {frame(from, to), frame(from, to, TieBreak::ComponentMajor), path(from, to)})
                EXPECT_EQ(type1_rank(s, seq), seq.size()) << seq.to_string();
        }
    }
}
