// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "coarse/decomposition.hpp"
#include "coarse/product_theorem.hpp"
#include "support/closure_oracle.hpp"
#include "support/decomposition_oracle.hpp"
#include "support/generators.hpp"

using namespace coarse;
using coarse::testing::Rng;
using coarse::testing::uniform;
namespace oracle = coarse::testing::oracle;

namespace {

struct Outcome {
    std::size_t passed = 0;
    std::size_t total = 0;
    std::string note;

    void record(bool ok) {
        ++total;
        if (ok) ++passed;
    }
    bool ok() const { return total > 0 && passed == total; }
};

EntourageSequence metric_sequence(const FiniteMetric& m, const std::vector<Rational>& scales) {
    std::vector<Relation> items;
    for (const auto& r : scales) items.push_back(metric_entourage(m, r));
    return EntourageSequence(m.ground(), std::move(items));
}

Outcome product_soundness() {
    Rng rng(1001);
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteMetric mx = coarse::testing::random_metric(uniform(rng, 1, 8), rng);
        const FiniteMetric my = coarse::testing::random_metric(uniform(rng, 1, 8), rng);
        const std::size_t count = uniform(rng, 3, 5);
        const auto rx = coarse::testing::random_scales(mx, count, rng);
        const auto ry = coarse::testing::random_scales(my, count, rng);
        std::vector<Relation> boxes;
        for (std::size_t k = 0; k < count; ++k)
            boxes.push_back(product_relation(metric_entourage(mx, rx[k]), metric_entourage(my, ry[k])));
        const EntourageSequence seq(boxes.front().ground(), boxes);
        const CoarseStructure sx = metric_structure(mx, rx), sy = metric_structure(my, ry);

        auto pick = [&](const CoarseStructure& s) {
            if (s.ground().size() <= BruteForceLimits::kMaxPoints && trial % 2 == 1) return brute_force_provider(3);
            return components_provider();
        };
        try {
            const PropertyCWitness w = product_witness(sx, sy, seq, pick(sx), pick(sy));
            o.record(check_witness(product_structure(sx, sy), seq, w).passed());
        } catch (const std::exception& e) {
            o.record(false);
            o.note = e.what();
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 60.0) o.record(false);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", seconds);
    o.note = o.note.empty() ? buf : o.note + "; " + buf;
    return o;
}

bool same_members(const Family& a, const Family& b) {
    auto x = a.members(), y = b.members();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

Outcome cad_round_trip() {
    Rng rng(1002);
    Outcome o;
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteMetric m = coarse::testing::random_metric(uniform(rng, 1, 8), rng);
        const auto scales = coarse::testing::random_scales(m, uniform(rng, 1, 6), rng);
        const CoarseStructure s = metric_structure(m, scales);
        const EntourageSequence l = metric_sequence(m, scales);
        std::vector<std::size_t> dims;
        for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) dims.push_back(uniform(rng, 1, 3));
        try {
            const SfcdcConversion c =
                convert_cad_to_sfcdc(s, l, chunking_cad_provider(dims, uniform(rng, 0, 3), trial));
            bool ok = check_sfcdc_certificate(s, l, c.certificate).passed();
            std::size_t offset = 0;
            for (std::size_t j = 0; j < c.refined.levels.size(); ++j) {
                ok = ok && offset < c.certificate.levels.size() &&
                     same_members(c.certificate.levels[offset], c.refined.levels[j]);
                offset += dims[std::min(j, dims.size() - 1)];
            }
            o.record(ok);
        } catch (const std::exception& e) {
            o.record(false);
            o.note = e.what();
        }
    }
    return o;
}

Outcome closure_exactness() {
    Rng rng(1003);
    Outcome o;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = uniform(rng, 1, 4);
        const GroundSet g(n);
        std::vector<Relation> gens;
        std::vector<oracle::Mask> masks;
        for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) {
            gens.push_back(coarse::testing::random_relation(g, rng, coarse::testing::coin(rng, 0.5) ? 0.1 : 0.25));
            masks.push_back(oracle::to_mask(gens.back()));
        }
        const CoarseStructure s = generate(g, gens);
        bool ok = true;
        const oracle::Mask total = oracle::Mask{1} << (n * n);
        if (n <= 3) {
            const auto member = oracle::literal_closure(n, masks);
            for (oracle::Mask m = 0; m < total && ok; ++m) ok = member[m] == s.contains(oracle::from_mask(g, m));
        } else {
            const auto maxima = oracle::closure_maxima(n, masks);
            for (oracle::Mask m = 0; m < total && ok; ++m)
                ok = oracle::below_some(maxima, m) == s.contains(oracle::from_mask(g, m));
        }
        o.record(ok);
    }
    return o;
}

Outcome bounded_remark() {
    Rng rng(1004);
    Outcome o;
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteMetric m1 = coarse::testing::random_metric(uniform(rng, 1, 6), rng);
        const FiniteMetric m2 = coarse::testing::random_metric(uniform(rng, 1, 6), rng);
        const FiniteMetric mp = max_metric_product(m1, m2);
        const CoarseStructure lhs = metric_structure(mp, mp.distances());
        const Relation rhs = product_relation(metric_structure(m1, m1.distances()).emax(),
                                              metric_structure(m2, m2.distances()).emax());
        o.record(lhs.emax() == rhs);
    }
    return o;
}

Outcome oracle_agreement() {
    Rng rng(1005);
    Outcome o;
    for (int trial = 0; trial < 400; ++trial) {
        const GroundSet g(uniform(rng, 1, 6));
        const Family over = coarse::testing::random_family(g, rng, 8);
        PointSet y = over.support();
        if (coarse::testing::coin(rng, 0.25)) y = y | PointSet{uniform(rng, 0, g.size() - 1)};
        const Relation e = coarse::testing::random_relation(g, rng, coarse::testing::coin(rng, 0.5) ? 0.1 : 0.3);
        const std::size_t n = uniform(rng, 0, 3);
        const auto found = find_decomposition(y, e, n, over);

        const std::size_t pts = g.size();
        std::vector<bool> yb(pts, false);
        for (Point p : y) yb[p] = true;
        std::vector<std::vector<bool>> pairs(pts, std::vector<bool>(pts, false));
        for (const auto& [a, b] : e.pairs()) pairs[a][b] = true;
        std::vector<std::vector<bool>> fam;
        for (const auto& u : over.members()) {
            std::vector<bool> row(pts, false);
            for (Point p : u) row[p] = true;
            fam.push_back(row);
        }
        const bool expected = oracle::admits_decomposition(pts, yb, pairs, n, fam);
        o.record(found.has_value() == expected &&
                 (!found || check_decomposition(y, e, n, *found, over).passed()));
    }
    for (int trial = 0; trial < 200; ++trial) {
        const GroundSet g(uniform(rng, 1, 6));
        const CoarseStructure s = coarse::testing::random_structure(g, rng, 2, 0.2);
        const auto seq = coarse::testing::random_sequence(
            coarse::testing::coin(rng, 0.8) ? s.emax() : Relation::full(g), uniform(rng, 1, 4), rng);
        const auto w = brute_force_witness(s, seq, uniform(rng, 1, 3), trial);
        o.record(!w || check_witness(s, seq, *w).passed());
    }
    return o;
}

Outcome algebra_laws() {
    Rng rng(1006);
    Outcome o;
    for (int trial = 0; trial < 1000; ++trial) {
        const GroundSet g(uniform(rng, 1, 10));
        const double density = coarse::testing::coin(rng, 0.5) ? 0.1 : 0.3;
        const Relation r = coarse::testing::random_relation(g, rng, density);
        const Relation s = coarse::testing::random_relation(g, rng, density);
        const Relation t = coarse::testing::random_relation(g, rng, density);
        bool ok = compose(compose(r, s), t) == compose(r, compose(s, t));
        ok = ok && inverse(compose(r, s)) == compose(inverse(s), inverse(r));
        const Relation cr = equivalence_closure(r);
        ok = ok && equivalence_closure(cr) == cr;
        ok = ok && is_subset(cr, equivalence_closure(unite(r, s)));
        const Family f = coarse::testing::random_family(g, rng, 4);
        const Relation small = coarse::testing::random_subrelation(r, rng, 0.5);
        ok = ok && (!is_disjoint(f, r) || is_disjoint(f, small));
        o.record(ok);
    }
    return o;
}

Outcome index_array() {
    Outcome o;
    constexpr std::uint64_t kMax = 50;
    std::vector<bool> seen(array_index(kMax, kMax) + 1, false);
    for (std::uint64_t i = 1; i <= kMax; ++i)
        for (std::uint64_t j = 1; j <= kMax; ++j) {
            const std::uint64_t k = array_index(i, j);
            bool ok = !seen[k] && array_position(k) == std::make_pair(i, j);
            seen[k] = true;
            if (i < kMax) ok = ok && array_index(i + 1, j) > k;
            if (j < kMax) ok = ok && array_index(i, j + 1) > k;
            o.record(ok);
        }
    // Every position on the first 50 anti-diagonals comes from some (i, j).
    const std::uint64_t diagonal_end = kMax * (kMax + 1) / 2;
    for (std::uint64_t k = 1; k <= diagonal_end; ++k) o.record(seen[k]);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 product theorem soundness (100 instances, < 60 s)", product_soundness},
        {"2 cad_to_sfcdc round trip and level identity (50 instances)", cad_round_trip},
        {"3 closure exactness (200 samples, |X| <= 4)", closure_exactness},
        {"4 bounded max-metric product equals product structure (50 pairs)", bounded_remark},
        {"5 oracle agreement (find_decomposition, brute_force_witness)", oracle_agreement},
        {"6 algebra laws (1000 checks)", algebra_laws},
        {"7 index array bijective and monotone (i, j <= 50)", index_array},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        const Outcome o = run();
        all = all && o.ok();
        std::cout << (o.ok() ? "PASS " : "FAIL ") << name << ": " << o.passed << "/" << o.total;
        if (!o.note.empty()) std::cout << " (" << o.note << ")";
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
