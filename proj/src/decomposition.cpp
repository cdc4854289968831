#include "coarse/decomposition.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::string show(const PointSet& s) {
    std::string out = "{";
    for (Point p : s) {
        if (out.size() > 1) out += ",";
        out += std::to_string(p);
    }
    return out + "}";
}

// Some (a, b) in e with a in u, b in v, or b in u, a in v.
std::optional<PointPair> touching_pair(const PointSet& u, const PointSet& v, const Relation& e) {
    for (Point a : u)
        for (Point b : v) {
            if (e.contains(a, b)) return PointPair{a, b};
            if (e.contains(b, a)) return PointPair{b, a};
        }
    return std::nullopt;
}

bool touches(const PointSet& u, const PointSet& v, const Relation& e) { return touching_pair(u, v, e).has_value(); }

void append_unique(std::vector<PointSet>& members, const PointSet& u) {
    if (std::find(members.begin(), members.end(), u) == members.end()) members.push_back(u);
}

std::size_t index_of(const Family& f, const PointSet& u) {
    const auto& m = f.members();
    auto it = std::find(m.begin(), m.end(), u);
    if (it == m.end()) throw std::logic_error("member " + show(u) + " not found in family");
    return static_cast<std::size_t>(it - m.begin());
}

template <typename DimFn>
HierarchyReport check_hierarchy(const CoarseStructure& s, const EntourageSequence& seq, DimFn&& dim,
                                const std::vector<Family>& levels,
                                const std::vector<std::vector<Decomposition>>& decompositions) {
    require_same_ground(s.ground(), seq.ground(), "check_sfcdc_certificate");
    HierarchyReport report;
    if (levels.empty()) {
        report.root_ok = false;
        report.detail = "no levels";
        return report;
    }
    for (const auto& f : levels) require_same_ground(s.ground(), f.ground(), "check_sfcdc_certificate");

    if (levels[0].size() != 1 || levels[0][0] != PointSet::all(s.ground())) {
        report.root_ok = false;
        report.level = 0;
        report.detail = "first level must be {X}";
        return report;
    }
    if (decompositions.size() + 1 != levels.size()) {
        report.shape_ok = false;
        report.detail = "expected " + std::to_string(levels.size() - 1) + " decomposition levels, got " +
                        std::to_string(decompositions.size());
        return report;
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const Family& level = levels[i];
        if (decompositions[i].size() != level.size()) {
            report.shape_ok = false;
            report.level = i;
            report.detail = "level " + std::to_string(i) + " has " + std::to_string(level.size()) +
                            " members but " + std::to_string(decompositions[i].size()) + " decompositions";
            return report;
        }
        for (std::size_t v = 0; v < level.size(); ++v) {
            const DecompositionReport r =
                check_decomposition(level[v], seq[i], dim(i), decompositions[i][v], levels[i + 1]);
            if (!r.passed()) {
                report.decompositions_ok = false;
                report.level = i;
                report.member = v;
                report.decomposition = r;
                report.detail = "member " + show(level[v]) + " at level " + std::to_string(i) + ": " + r.detail;
                return report;
            }
        }
    }
    if (auto pair = find_boundedness_violation(levels.back(), s)) {
        report.bounded_ok = false;
        report.level = levels.size() - 1;
        report.boundedness_pair = *pair;
        report.detail = "last level is not uniformly bounded";
    }
    return report;
}

}  // namespace

DecompositionReport check_decomposition(const PointSet& y, const Relation& e, std::size_t n,
                                        const Decomposition& d, const Family& over) {
    require_same_ground(e.ground(), over.ground(), "check_decomposition");
    DecompositionReport report;
    auto fail = [&](bool DecompositionReport::*flag, std::string why) {
        report.*flag = false;
        if (report.detail.empty()) report.detail = std::move(why);
    };

    if (d.parts.size() > n)
        fail(&DecompositionReport::part_count_ok,
             std::to_string(d.parts.size()) + " parts exceed n=" + std::to_string(n));
    if (d.target != y) fail(&DecompositionReport::union_ok, "target " + show(d.target) + " differs from " + show(y));

    PointSet covered;
    for (std::size_t a = 0; a < d.parts.size(); ++a) {
        const auto& part = d.parts[a];
        for (std::size_t m = 0; m < part.size(); ++m) {
            covered = covered | part[m];
            if (!over.has_member(part[m]))
                fail(&DecompositionReport::members_ok, "member " + show(part[m]) + " is not in the family");
            for (std::size_t m2 = 0; m2 < part.size(); ++m2) {
                if (m2 == m) continue;
                if (auto pr = touching_pair(part[m], part[m2], e); pr && report.disjoint_ok)
                    fail(&DecompositionReport::disjoint_ok,
                         "part " + std::to_string(a) + ": members " + show(part[m]) + " and " + show(part[m2]) +
                             " joined by (" + std::to_string(pr->first) + "," + std::to_string(pr->second) + ")");
            }
        }
    }
    if (covered != y) fail(&DecompositionReport::union_ok, "members cover " + show(covered) + ", not " + show(y));
    return report;
}

std::optional<Decomposition> find_decomposition(const PointSet& y, const Relation& e, std::size_t n,
                                                const Family& over, DecompositionGuard guard) {
    require_same_ground(e.ground(), over.ground(), "find_decomposition");
    if (n > guard.max_parts) throw GuardViolation("find_decomposition: n=" + std::to_string(n) + " over guard");
    std::vector<PointSet> candidates;
    for (const auto& u : over.members())
        if (u.is_subset_of(y)) candidates.push_back(u);
    if (candidates.size() > guard.max_candidates)
        throw GuardViolation("find_decomposition: " + std::to_string(candidates.size()) + " candidates over guard");

    if (y.empty()) return Decomposition{y, {}};
    if (n == 0) return std::nullopt;

    auto y_index = [&](Point p) {
        return static_cast<std::size_t>(std::lower_bound(y.begin(), y.end(), p) - y.begin());
    };
    // Index of the last candidate containing each point of y.
    std::vector<std::optional<std::size_t>> last(y.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (Point p : candidates[c]) last[y_index(p)] = c;
    for (const auto& l : last)
        if (!l) return std::nullopt;

    std::vector<std::vector<std::size_t>> parts(n);
    std::vector<int> cover_count(y.size(), 0);

    auto stranded = [&](std::size_t c) {
        for (Point p : candidates[c]) {
            const std::size_t k = y_index(p);
            if (*last[k] == c && cover_count[k] == 0) return true;
        }
        return false;
    };

    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t c, std::size_t used) -> bool {
        if (c == candidates.size()) return true;
        const std::size_t limit = std::min(n, used + 1);
        for (std::size_t a = 0; a < limit; ++a) {
            bool ok = true;
            for (std::size_t other : parts[a])
                if (touches(candidates[c], candidates[other], e)) { ok = false; break; }
            if (!ok) continue;
            parts[a].push_back(c);
            for (Point p : candidates[c]) ++cover_count[y_index(p)];
            if (search(c + 1, std::max(used, a + 1))) return true;
            for (Point p : candidates[c]) --cover_count[y_index(p)];
            parts[a].pop_back();
        }
        // Leaving c out is only possible if its points are covered already.
        if (stranded(c)) return false;
        return search(c + 1, used);
    };

    if (!search(0, 0)) return std::nullopt;
    Decomposition d{y, {}};
    for (const auto& part : parts) {
        if (part.empty()) continue;
        std::vector<PointSet> members;
        for (std::size_t c : part) members.push_back(candidates[c]);
        d.parts.push_back(std::move(members));
    }
    return d;
}

HierarchyReport check_sfcdc_certificate(const CoarseStructure& s, const EntourageSequence& l_seq,
                                        const SfcdcCertificate& c) {
    return check_hierarchy(s, l_seq, [](std::size_t) { return std::size_t{2}; }, c.levels, c.decompositions);
}

std::size_t CadProvider::dim(std::size_t level) const {
    if (dims.empty()) throw std::invalid_argument("CadProvider: empty dimension sequence");
    return dims[std::min(level, dims.size() - 1)];
}

HierarchyReport check_cad_data(const CoarseStructure& s, const EntourageSequence& k_seq,
                               const std::vector<std::size_t>& dims, const CadData& data) {
    if (dims.empty()) throw std::invalid_argument("check_cad_data: empty dimension sequence");
    auto dim = [&](std::size_t i) { return dims[std::min(i, dims.size() - 1)]; };
    return check_hierarchy(s, k_seq, dim, data.levels, data.decompositions);
}

std::vector<Family> refine_to_partition(const std::vector<Family>& families) {
    std::vector<Family> out;
    out.reserve(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
        const Family& family = families[f];
        const std::size_t n = family.ground().size();
        std::vector<std::vector<Point>> groups(family.size());
        for (Point p = 0; p < n; ++p) {
            std::size_t m = 0;
            while (m < family.size() && !family[m].contains(p)) ++m;
            if (m == family.size())
                throw std::invalid_argument("refine_to_partition: family " + std::to_string(f) +
                                            " does not cover point " + std::to_string(p));
            groups[m].push_back(p);
        }
        std::vector<PointSet> members;
        for (auto& g : groups)
            if (!g.empty()) members.emplace_back(std::move(g));
        out.emplace_back(family.ground(), std::move(members));
    }
    return out;
}

CadData refine_hierarchy(const CadData& data) {
    if (data.levels.empty()) return data;
    const GroundSet& ground = data.levels[0].ground();
    CadData out;
    out.levels.push_back(data.levels[0]);
    std::vector<std::size_t> origin(data.levels[0].size());
    for (std::size_t v = 0; v < origin.size(); ++v) origin[v] = v;

    for (std::size_t j = 0; j + 1 < data.levels.size(); ++j) {
        const Family& next_original = data.levels[j + 1];
        std::vector<PointSet> next_members;
        std::vector<std::size_t> next_origin;
        std::vector<Decomposition> decomps;
        const Family& current = out.levels.back();
        for (std::size_t p = 0; p < current.size(); ++p) {
            const PointSet& piece_of = current[p];
            const Decomposition& d = data.decompositions[j][origin[p]];
            std::vector<std::vector<std::vector<Point>>> buckets(d.parts.size());
            for (std::size_t a = 0; a < d.parts.size(); ++a) buckets[a].resize(d.parts[a].size());
            for (Point x : piece_of) {
                bool placed = false;
                for (std::size_t a = 0; a < d.parts.size() && !placed; ++a)
                    for (std::size_t m = 0; m < d.parts[a].size() && !placed; ++m)
                        if (d.parts[a][m].contains(x)) {
                            buckets[a][m].push_back(x);
                            placed = true;
                        }
                if (!placed) throw std::logic_error("refine_hierarchy: decomposition does not cover its target");
            }
            Decomposition refined{piece_of, {}};
            for (std::size_t a = 0; a < d.parts.size(); ++a) {
                std::vector<PointSet> part;
                for (std::size_t m = 0; m < d.parts[a].size(); ++m) {
                    if (buckets[a][m].empty()) continue;
                    PointSet q(std::move(buckets[a][m]));
                    next_members.push_back(q);
                    next_origin.push_back(index_of(next_original, d.parts[a][m]));
                    part.push_back(std::move(q));
                }
                refined.parts.push_back(std::move(part));
            }
            decomps.push_back(std::move(refined));
        }
        out.levels.emplace_back(ground, std::move(next_members));
        out.decompositions.push_back(std::move(decomps));
        origin = std::move(next_origin);
    }
    return out;
}

SfcdcConversion convert_cad_to_sfcdc(const CoarseStructure& s, const EntourageSequence& l_seq,
                                     const CadProvider& provider) {
    require_same_ground(s.ground(), l_seq.ground(), "cad_to_sfcdc");

    std::vector<Relation> k_items;
    for (std::size_t j = 0, position = 0;; ++j) {
        const std::size_t n = provider.dim(j);
        if (n == 0) throw std::invalid_argument("cad_to_sfcdc: dimensions must be positive");
        position += n;
        k_items.push_back(l_seq[position - 1]);
        if (position >= l_seq.size()) break;
    }
    EntourageSequence k_seq(s.ground(), std::move(k_items));

    CadData provided = provider.build(s, k_seq);
    const HierarchyReport check = check_hierarchy(
        s, k_seq, [&](std::size_t i) { return provider.dim(i); }, provided.levels, provided.decompositions);
    if (!check.passed()) throw ProviderError("cad provider data rejected: " + check.detail);

    CadData refined = refine_hierarchy(provided);

    const GroundSet& ground = s.ground();
    SfcdcCertificate cert;
    cert.levels.push_back(refined.levels[0]);
    std::vector<std::size_t> offsets{0};

    for (std::size_t j = 0; j + 1 < refined.levels.size(); ++j) {
        const std::size_t n = provider.dim(j);
        const Family& block_root = refined.levels[j];
        const auto& block_decomps = refined.decompositions[j];

        // Parts of each member, padded to n.
        std::vector<std::vector<std::vector<PointSet>>> parts(block_root.size());
        std::vector<std::vector<PointSet>> tails(block_root.size());
        for (std::size_t p = 0; p < block_root.size(); ++p) {
            parts[p] = block_decomps[p].parts;
            parts[p].resize(n);
            // tails[p][t] = union of parts t..n-1
            tails[p].assign(n + 1, PointSet{});
            for (std::size_t t = n; t-- > 0;) {
                tails[p][t] = tails[p][t + 1];
                for (const auto& piece : parts[p][t]) tails[p][t] = tails[p][t] | piece;
            }
        }

        for (std::size_t t = 1; t <= n; ++t) {
            std::vector<PointSet> members;
            std::vector<Decomposition> decomps;
            for (std::size_t p = 0; p < block_root.size(); ++p) {
                for (std::size_t a = 0; a + 1 < t; ++a)
                    for (const auto& piece : parts[p][a]) {
                        decomps.push_back(Decomposition{piece, {{piece}}});
                        members.push_back(piece);
                    }
                const PointSet& remainder = tails[p][t - 1];
                const PointSet& rest = tails[p][t];
                if (!remainder.empty()) {
                    Decomposition d{remainder, {}};
                    if (!parts[p][t - 1].empty()) d.parts.push_back(parts[p][t - 1]);
                    if (!rest.empty()) d.parts.push_back({rest});
                    decomps.push_back(std::move(d));
                }
                for (const auto& piece : parts[p][t - 1]) members.push_back(piece);
                if (!rest.empty()) members.push_back(rest);
            }
            cert.levels.emplace_back(ground, std::move(members));
            cert.decompositions.push_back(std::move(decomps));
        }
        offsets.push_back(offsets.back() + n);
    }

    const HierarchyReport final_check = check_sfcdc_certificate(s, l_seq, cert);
    if (!final_check.passed())
        throw std::logic_error("cad_to_sfcdc: produced certificate failed its check: " + final_check.detail);

    return SfcdcConversion{std::move(k_seq), std::move(provided), std::move(refined), std::move(offsets),
                           std::move(cert)};
}

SfcdcCertificate cad_to_sfcdc(const CoarseStructure& s, const EntourageSequence& l_seq, const CadProvider& provider) {
    return convert_cad_to_sfcdc(s, l_seq, provider).certificate;
}

CadProvider chunking_cad_provider(std::vector<std::size_t> dims, std::size_t depth, std::uint64_t seed, bool overlap) {
    CadProvider provider;
    provider.dims = std::move(dims);
    provider.build = [dims = provider.dims, depth, seed, overlap](const CoarseStructure& s,
                                                                  const EntourageSequence& k) {
        if (!s.contains(k.last())) throw std::invalid_argument("chunking provider: K is not an entourage");
        auto dim = [&](std::size_t i) { return dims[std::min(i, dims.size() - 1)]; };
        std::mt19937_64 rng(seed);
        const GroundSet& ground = s.ground();

        CadData data;
        data.levels.emplace_back(ground, std::vector<PointSet>{PointSet::all(ground)});

        for (std::size_t level = 0; level < depth; ++level) {
            const Relation& e = k[level];
            const std::size_t colours = dim(level);
            std::vector<PointSet> next;
            std::vector<Decomposition> decomps;
            for (const auto& v : data.levels.back().members()) {
                const std::size_t max_chunks = std::min<std::size_t>(3, v.size());
                const std::size_t want = std::uniform_int_distribution<std::size_t>(1, max_chunks)(rng);
                std::vector<std::vector<Point>> raw(want);
                for (Point p : v) raw[std::uniform_int_distribution<std::size_t>(0, want - 1)(rng)].push_back(p);
                std::vector<PointSet> chunks;
                for (auto& r : raw)
                    if (!r.empty()) chunks.emplace_back(std::move(r));

                std::vector<std::size_t> colour;
                for (;;) {
                    colour.assign(chunks.size(), 0);
                    std::optional<std::size_t> stuck;
                    for (std::size_t c = 0; c < chunks.size() && !stuck; ++c) {
                        std::vector<bool> taken(colours, false);
                        for (std::size_t o = 0; o < c; ++o)
                            if (touches(chunks[c], chunks[o], e)) taken[colour[o]] = true;
                        auto free = std::find(taken.begin(), taken.end(), false);
                        if (free == taken.end()) stuck = c;
                        else colour[c] = static_cast<std::size_t>(free - taken.begin());
                    }
                    if (!stuck) break;
                    std::size_t into = 0;
                    while (!touches(chunks[*stuck], chunks[into], e)) ++into;
                    chunks[into] = chunks[into] | chunks[*stuck];
                    chunks.erase(chunks.begin() + static_cast<std::ptrdiff_t>(*stuck));
                }

                Decomposition d{v, {}};
                for (std::size_t c = 0; c < colours; ++c) {
                    std::vector<PointSet> part;
                    for (std::size_t i = 0; i < chunks.size(); ++i)
                        if (colour[i] == c) part.push_back(chunks[i]);
                    if (part.empty()) continue;
                    for (const auto& u : part) append_unique(next, u);
                    d.parts.push_back(std::move(part));
                }
                decomps.push_back(std::move(d));
                if (overlap && chunks.size() >= 2 && rng() % 3 == 0) append_unique(next, chunks[0] | chunks[1]);
            }
            data.levels.emplace_back(ground, std::move(next));
            data.decompositions.push_back(std::move(decomps));
        }

        std::vector<PointSet> bounded;
        std::vector<Decomposition> decomps;
        for (const auto& v : data.levels.back().members()) {
            Decomposition d{v, {{}}};
            for (const auto& cls : s.classes()) {
                PointSet piece = v & cls;
                if (piece.empty()) continue;
                append_unique(bounded, piece);
                d.parts[0].push_back(std::move(piece));
            }
            decomps.push_back(std::move(d));
        }
        data.levels.emplace_back(ground, std::move(bounded));
        data.decompositions.push_back(std::move(decomps));
        return data;
    };
    return provider;
}

}  // namespace coarse
