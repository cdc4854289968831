#include <gtest/gtest.h>

#include "coarse/errors.hpp"
#include "coarse/product_theorem.hpp"
#include "support/generators.hpp"

using namespace coarse;
using coarse::testing::Rng;

namespace {

struct Instance {
    CoarseStructure sx;
    CoarseStructure sy;
    EntourageSequence seq;
};

// Metric factors with a sequence of boxes of metric entourages.
Instance metric_instance(Rng& rng, std::size_t max_points, std::size_t scales) {
    const FiniteMetric mx = coarse::testing::random_metric(coarse::testing::uniform(rng, 1, max_points), rng);
    const FiniteMetric my = coarse::testing::random_metric(coarse::testing::uniform(rng, 1, max_points), rng);
    const auto rx = coarse::testing::random_scales(mx, scales, rng);
    const auto ry = coarse::testing::random_scales(my, scales, rng);
    std::vector<Relation> items;
    for (std::size_t k = 0; k < scales; ++k)
        items.push_back(product_relation(metric_entourage(mx, rx[k]), metric_entourage(my, ry[k])));
    const GroundSet g = items.front().ground();
    return {metric_structure(mx, rx), metric_structure(my, ry), EntourageSequence(g, std::move(items))};
}

}  // namespace

TEST(ArrayIndex, Examples) {
    EXPECT_EQ(array_index(1, 1), 1u);
    EXPECT_EQ(array_index(2, 1), 2u);
    EXPECT_EQ(array_index(1, 2), 3u);
    for (std::uint64_t i = 1; i <= 20; ++i)
        for (std::uint64_t j = 1; j <= 20; ++j) EXPECT_EQ(array_position(array_index(i, j)), std::make_pair(i, j));
    EXPECT_THROW(array_index(0, 1), std::invalid_argument);
    EXPECT_THROW(array_index(1, 0), std::invalid_argument);
    EXPECT_THROW(array_position(0), std::invalid_argument);
}

TEST(ArrayIndex, MonotoneAlongRowsAndColumns) {
    for (std::uint64_t i = 1; i <= 30; ++i)
        for (std::uint64_t j = 1; j <= 30; ++j) {
            EXPECT_LT(array_index(i, j), array_index(i + 1, j));
            EXPECT_LT(array_index(i, j), array_index(i, j + 1));
        }
}

TEST(FactorSequences, RecoversBoxes) {
    Rng rng(30);
    const GroundSet x(3), y(2);
    std::vector<Relation> ks, ls, items;
    Relation k = Relation::diagonal(x), l = Relation::diagonal(y);
    for (int t = 0; t < 4; ++t) {
        k = unite(k, coarse::testing::random_relation(x, rng, 0.2));
        l = unite(l, coarse::testing::random_relation(y, rng, 0.2));
        ks.push_back(k);
        ls.push_back(l);
        items.push_back(product_relation(k, l));
    }
    const EntourageSequence seq(items.front().ground(), items);
    const FactorSequences f = factor_sequences(seq);
    EXPECT_EQ(f.length(), 4u);
    for (std::uint64_t p = 1; p <= 4; ++p) {
        EXPECT_EQ(f.left(p), ks[p - 1]);
        EXPECT_EQ(f.right(p), ls[p - 1]);
    }
    EXPECT_EQ(f.left(9), ks.back());
    EXPECT_THROW(factor_sequences(EntourageSequence(x, {Relation::diagonal(x)})), std::invalid_argument);
}

TEST(FactorSequences, ConstantSequence) {
    const GroundSet x(2), y(2);
    const Relation box = product_relation(Relation::full(x), Relation::diagonal(y));
    const FactorSequences f(EntourageSequence(box.ground(), {box, box, box}));
    for (std::uint64_t p = 1; p <= 5; ++p) {
        EXPECT_EQ(f.left(p), Relation::full(x));
        EXPECT_EQ(f.right(p), Relation::diagonal(y));
    }
}

TEST(FactorSequences, RandomProjectionsMatchEnumeration) {
    Rng rng(31);
    const GroundSet x(2);
    const GroundSet g = GroundSet::product(x, x);
    for (int trial = 0; trial < 30; ++trial) {
        const auto seq = coarse::testing::random_sequence(Relation::full(g), 3, rng);
        const FactorSequences f(seq);
        for (std::uint64_t p = 1; p <= 3; ++p) {
            Relation left(x), right(x);
            for (const auto& [a, b] : seq[p - 1].pairs()) {
                left.insert(a / 2, b / 2);
                right.insert(a % 2, b % 2);
            }
            EXPECT_EQ(f.left(p), left);
            EXPECT_EQ(f.right(p), right);
        }
    }
}

TEST(ColumnWitness, ConstantColumnMatchesProvider) {
    const GroundSet x(3), y(2);
    const CoarseStructure sx = generate(x, {Relation::from_pairs(x, {{0, 1}})});
    const Relation k = Relation::from_pairs(x, {{0, 1}, {1, 0}});
    const Relation box = product_relation(k, Relation::full(y));
    const FactorSequences f(EntourageSequence(box.ground(), {box}));
    for (std::uint64_t i = 1; i <= 3; ++i) {
        const ColumnWitnessRecord r = column_witness(sx, components_provider(), f, i);
        const PropertyCWitness expected = components_witness(sx, r.column_sequence);
        EXPECT_EQ(r.families, expected.families);
        EXPECT_EQ(r.length(), 1u);
        for (const Relation& item : r.column_sequence.items()) EXPECT_EQ(item, k);
    }
}

TEST(ColumnWitness, RejectsInvalidProvider) {
    const GroundSet x(2), y(1);
    const CoarseStructure sx = generate(x, {});
    const Relation box = product_relation(Relation::diagonal(x), Relation::diagonal(y));
    const FactorSequences f(EntourageSequence(box.ground(), {box}));
    const WitnessProvider bad = [](const CoarseStructure& s, const EntourageSequence&) {
        return PropertyCWitness{{Family(s.ground(), {PointSet{0}})}};
    };
    EXPECT_THROW(column_witness(sx, bad, f, 1), ProviderError);
}

TEST(ColumnWitness, StoredFamiliesAreDisjointForTheirEntries) {
    Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = metric_instance(rng, 5, coarse::testing::uniform(rng, 3, 5));
        const FactorSequences f(inst.seq);
        for (std::uint64_t i = 1; i <= 4; ++i) {
            const ColumnWitnessRecord r = column_witness(inst.sx, brute_force_provider(3), f, i);
            for (std::size_t j = 0; j < r.length(); ++j) EXPECT_TRUE(is_disjoint(r.families[j], r.column_sequence[j]));
        }
    }
}

TEST(Monotonize, Examples) {
    const GroundSet g(2);
    const Relation e = Relation::from_pairs(g, {{0, 1}});
    const std::vector<Relation> expected{e, e};
    EXPECT_EQ(monotonize({e, Relation::empty(g)}), expected);
    const std::vector<Relation> mono{Relation::diagonal(g), Relation::full(g)};
    EXPECT_EQ(monotonize(mono), mono);

    Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Relation> in;
        for (int k = 0; k < 5; ++k) in.push_back(coarse::testing::random_relation(GroundSet(4), rng, 0.2));
        const auto out = monotonize(in);
        for (std::size_t k = 0; k < in.size(); ++k) {
            EXPECT_TRUE(is_subset(in[k], out[k]));
            if (k > 0) EXPECT_TRUE(is_subset(out[k - 1], out[k]));
        }
    }
}

TEST(ProductWitness, SinglePoints) {
    const GroundSet pt(1);
    const CoarseStructure s = generate(pt, {});
    const Relation d = Relation::diagonal(GroundSet::product(pt, pt));
    const EntourageSequence seq(d.ground(), {d});
    const PropertyCWitness w = product_witness(s, s, seq, components_provider(), components_provider());
    ASSERT_FALSE(w.families.empty());
    EXPECT_EQ(w.families.front(), Family(d.ground(), {PointSet{0}}));
    EXPECT_TRUE(check_witness(product_structure(s, s), seq, w).passed());
}

TEST(ProductWitness, TwoPointUnitSpaces) {
    const FiniteMetric m(GroundSet(2), {Rational(0), Rational(1), Rational(1), Rational(0)});
    const CoarseStructure s = metric_structure(m, {Rational(1)});
    const GroundSet g = GroundSet::product(m.ground(), m.ground());
    const EntourageSequence seq(g, {Relation::diagonal(g), Relation::full(g)});
    for (const auto& provider : {components_provider(), brute_force_provider(2)}) {
        const PropertyCWitness w = product_witness(s, s, seq, provider, provider);
        PointSet covered;
        for (const Family& f : w.families) covered = covered | f.support();
        EXPECT_EQ(covered, PointSet::all(g));
        for (std::size_t k = 0; k < w.families.size(); ++k) {
            const Family& f = w.families[k];
            const Relation& e = seq[k];
            for (std::size_t a = 0; a < f.size(); ++a)
                for (std::size_t b = 0; b < f.size(); ++b)
                    if (a != b)
                        for (Point p : f[a])
                            for (Point q : f[b]) EXPECT_FALSE(e.contains(p, q));
        }
    }
}

TEST(ProductWitness, RejectsSequenceOutsideProduct) {
    const GroundSet x(2);
    const CoarseStructure s = generate(x, {});
    const Relation full = Relation::full(GroundSet::product(x, x));
    EXPECT_THROW(product_witness(s, s, EntourageSequence(full.ground(), {full}), components_provider(),
                                 components_provider()),
                 std::invalid_argument);
}

TEST(ProductWitness, SoundOnRandomMetricInstances) {
    Rng rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = metric_instance(rng, 6, 3);
        const PropertyCWitness w =
            product_witness(inst.sx, inst.sy, inst.seq, components_provider(), components_provider());
        EXPECT_TRUE(check_witness(product_structure(inst.sx, inst.sy), inst.seq, w).passed());
        EXPECT_GE(w.families.size(), inst.seq.size());
    }
}

TEST(ProductWitness, DisjointnessTransferPerPair) {
    Rng rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = metric_instance(rng, 4, coarse::testing::uniform(rng, 3, 5));
        const ProductConstruction c =
            build_product_witness(inst.sx, inst.sy, inst.seq, brute_force_provider(3), brute_force_provider(3));
        const FactorSequences f(inst.seq);
        const GroundSet& g = inst.seq.ground();
        for (const auto& [pos, fam] : c.grid) {
            const auto [i, j] = pos;
            const ColumnWitnessRecord& col = c.column(i);
            const Family& us = col.families[j - 1];
            const Family& vs = c.y_witness.families[i - 1];
            const Relation& k = col.column_sequence[j - 1];
            const Relation& l = c.y_sequence[i - 1];
            EXPECT_TRUE(is_subset(f.right(array_index(i, j)), l));
            for (const auto& u1 : us.members())
                for (const auto& v1 : vs.members())
                    for (const auto& u2 : us.members())
                        for (const auto& v2 : vs.members()) {
                            if (u1 == u2 && v1 == v2) continue;
                            if (u1 != u2) {
                                for (Point a : u1)
                                    for (Point b : u2) EXPECT_FALSE(k.contains(a, b));
                            } else {
                                for (Point a : v1)
                                    for (Point b : v2) EXPECT_FALSE(l.contains(a, b));
                            }
                            const PointSet w1 = product_set(g, u1, v1), w2 = product_set(g, u2, v2);
                            for (Point a : w1)
                                for (Point b : w2) EXPECT_FALSE(inst.seq[array_index(i, j) - 1].contains(a, b));
                        }
        }
    }
}

TEST(ProductWitness, BoundednessTransferByEnumeration) {
    Rng rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = metric_instance(rng, 4, 3);
        const ProductConstruction c =
            build_product_witness(inst.sx, inst.sy, inst.seq, components_provider(), brute_force_provider(2));
        const GroundSet& g = inst.seq.ground();
        for (const auto& [pos, fam] : c.grid) {
            Relation squares(g);
            Relation left(inst.sx.ground()), right(inst.sy.ground());
            for (const auto& w : fam.members()) {
                add_square(squares, w);
                PointSet us, vs;
                for (Point p : w) {
                    us = us | PointSet{g.split(p).first};
                    vs = vs | PointSet{g.split(p).second};
                }
                add_square(left, us);
                add_square(right, vs);
            }
            EXPECT_EQ(project(squares, Axis::Left), left);
            EXPECT_EQ(project(squares, Axis::Right), right);
        }
    }
}

TEST(ProductWitness, ReindexingIsTotal) {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = metric_instance(rng, 4, coarse::testing::uniform(rng, 3, 5));
        const ProductConstruction c =
            build_product_witness(inst.sx, inst.sy, inst.seq, brute_force_provider(3), components_provider());
        ASSERT_GE(c.witness.families.size(), inst.seq.size());
        for (std::uint64_t k = 1; k <= c.witness.families.size(); ++k) {
            const auto it = c.grid.find(array_position(k));
            if (it == c.grid.end())
                EXPECT_TRUE(c.witness.families[k - 1].empty());
            else
                EXPECT_EQ(c.witness.families[k - 1], it->second);
        }
        EXPECT_GE(array_index(c.stable_column, 1), inst.seq.size());
    }
}
