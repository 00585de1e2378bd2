#pragma once

#include "psk/census.hpp"
#include "psk/certificate.hpp"
#include "psk/coloring.hpp"
#include "psk/diagram.hpp"
#include "psk/planar_dual.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace psk::test {

inline const std::filesystem::path kDataDir = PSK_DATA_DIR;
inline const std::filesystem::path kTestDataDir = PSK_TEST_DATA_DIR;

inline constexpr const char* kTrefoil = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
inline constexpr const char* kFigureEight = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
inline constexpr const char* kUnknot1 = "X(1,1,2,2)";
inline constexpr const char* k14n1527 =
    "X(3,1,4,28) X(1,7,2,6) X(7,3,8,2) X(11,5,12,4) X(5,11,6,10) X(8,15,9,16) X(16,9,17,10) "
    "X(17,13,18,12) X(13,21,14,20) X(21,15,22,14) X(25,19,26,18) X(19,25,20,24) X(27,22,28,23) "
    "X(23,26,24,27)";

inline std::vector<TableRow> load_table(const std::string& file) {
    return ingest(kDataDir / file).rows;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Strand holding the edge with this PD label.
inline StrandId strand_with_label(const Diagram& d, int label) {
    return d.strand_of_edge(d.edge_from_label(label));
}

// Brute-force oracle. Shares nothing with the engine's move finding: it scans
// PD tuples for the Wirtinger condition and enumerates every simple cycle of
// the dual multigraph for loop moves.
namespace oracle {

using Mask = unsigned long long;

inline bool wirtinger_ok(const Diagram& d, const std::vector<bool>& colored, StrandId s) {
    for (const Crossing& x : d.crossings()) {
        const StrandId a = d.strand_of_edge(x.edge[0]);
        const StrandId b = d.strand_of_edge(x.edge[2]);
        const StrandId over = d.strand_of_edge(x.edge[1]);
        if (over == s) continue;
        if ((a == s && b != s && colored[b] && colored[over]) || (b == s && a != s && colored[a] && colored[over])) {
            return true;
        }
    }
    return false;
}

// Every simple cycle as a sorted list of dual edge ids. Two parallel edges
// form a cycle of length two.
inline std::vector<std::vector<EdgeId>> simple_cycles(const DualGraph& g) {
    std::set<std::vector<EdgeId>> found;
    const int nf = g.face_count();
    std::vector<bool> on_path(nf, false);
    std::vector<EdgeId> edges;
    std::function<void(FaceId, FaceId)> dfs = [&](FaceId start, FaceId f) {
        for (EdgeId e : g.incident(f)) {
            if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
            const FaceId next = g.across(e, f);
            if (next == start) {
                std::vector<EdgeId> cyc = edges;
                cyc.push_back(e);
                std::sort(cyc.begin(), cyc.end());
                found.insert(cyc);
                continue;
            }
            if (next < start || on_path[next]) continue;
            on_path[next] = true;
            edges.push_back(e);
            dfs(start, next);
            edges.pop_back();
            on_path[next] = false;
        }
    };
    for (FaceId s = 0; s < nf; ++s) {
        on_path[s] = true;
        dfs(s, s);
        on_path[s] = false;
    }
    return {found.begin(), found.end()};
}

struct Oracle {
    const Diagram& d;
    const DualGraph& g;
    std::vector<std::vector<EdgeId>> cycles;

    Oracle(const Diagram& d_, const DualGraph& g_) : d(d_), g(g_), cycles(simple_cycles(g_)) {}

    bool loop_ok(const std::vector<bool>& colored, StrandId s) const {
        for (const auto& cyc : cycles) {
            int on_target = 0;
            bool rest_colored = true;
            for (EdgeId e : cyc) {
                const StrandId t = g.edge(e).strand;
                if (t == s) ++on_target;
                else if (!colored[t]) rest_colored = false;
            }
            if (on_target == 1 && rest_colored) return true;
        }
        return false;
    }

    std::vector<bool> closure(std::vector<bool> colored, Mode mode) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (StrandId s = 0; s < d.strand_count(); ++s) {
                if (colored[s]) continue;
                const bool ok = mode == Mode::Wirtinger ? wirtinger_ok(d, colored, s) : loop_ok(colored, s);
                if (ok) {
                    colored[s] = true;
                    changed = true;
                }
            }
        }
        return colored;
    }

    int minimum(Mode mode) const {
        const int n = d.strand_count();
        int best = n;
        for (Mask m = 1; m < (Mask{1} << n); ++m) {
            const int k = std::popcount(m);
            if (k >= best) continue;
            std::vector<bool> colored(n);
            for (int i = 0; i < n; ++i) colored[i] = (m >> i) & 1;
            auto c = closure(colored, mode);
            if (std::all_of(c.begin(), c.end(), [](bool b) { return b; })) best = k;
        }
        return best;
    }
};

}  // namespace oracle

// A closed curve in the sphere crosses each link component an even number of
// times.
inline bool loop_parity_ok(const Diagram& d, const Move& m) {
    std::vector<int> hits(d.component_count(), 0);
    ++hits[d.component_of_edge(d.edge_from_label(m.edge_label))];
    for (EdgeId e : m.path) ++hits[d.component_of_edge(e)];
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h % 2 == 0; });
}

inline Certificate certificate_from(const Diagram& d, std::vector<StrandId> seeds, Mode mode,
                                    std::vector<Move> moves) {
    Certificate c;
    c.diagram_hash = d.content_hash();
    c.mode = mode;
    c.seeds = std::move(seeds);
    c.moves = std::move(moves);
    c.tau = loop_intersections(c.moves);
    return c;
}

struct Mutation {
    std::string label;
    Certificate cert;
    std::set<RejectReason> expected;
};

// Single-field mutations of a valid certificate, each with the reasons a
// correct verifier may give. Face-list edits carry a matching tau so the
// replay, not the tau check, has to catch them.
inline std::vector<Mutation> mutate(const Diagram& d, const DualGraph& g, const Certificate& base) {
    using R = RejectReason;
    std::vector<Mutation> out;
    auto add = [&](std::string label, Certificate c, std::set<R> expected) {
        out.push_back({std::move(label), std::move(c), std::move(expected)});
    };
    auto retau = [](Certificate& c) { c.tau = loop_intersections(c.moves); };
    const int n = d.strand_count();

    std::vector<std::vector<bool>> before(base.moves.size() + 1, std::vector<bool>(n, false));
    for (StrandId s : base.seeds) before[0][s] = true;
    for (std::size_t i = 0; i < base.moves.size(); ++i) {
        before[i + 1] = before[i];
        before[i + 1][base.moves[i].target] = true;
    }

    {
        Certificate c = base;
        c.diagram_hash = "sha256:" + std::string(64, '0');
        add("hash", c, {R::HashMismatch});
        c = base;
        c.tau += 1;
        add("tau", c, {R::TauMismatch});
    }
    for (std::size_t i = 0; i < base.seeds.size(); ++i) {
        Certificate c = base;
        c.seeds.erase(c.seeds.begin() + i);
        add("drop seed", c, {R::WirtingerConditionFailed, R::CycleEdgeUncolored, R::CycleTargetCount, R::IncompleteColoring});
        c = base;
        c.seeds.push_back(base.seeds[i]);
        add("repeat seed", c, {R::TargetAlreadyColored});
    }
    {
        Certificate c = base;
        c.seeds.push_back(n);
        add("seed out of range", c, {R::UnknownStrand});
    }
    for (std::size_t i = 0; i < base.moves.size(); ++i) {
        const Move& m = base.moves[i];
        {
            Certificate c = base;
            c.seeds.push_back(m.target);
            add("extra seed", c, {R::TargetAlreadyColored});
        }
        {
            Certificate c = base;
            c.moves[i].target = base.seeds.front();
            add("target is a seed", c, {R::TargetAlreadyColored});
            c = base;
            c.moves[i].target = n + static_cast<int>(i);
            add("target out of range", c, {R::UnknownStrand});
            c = base;
            c.moves[i].target = -1;
            add("negative target", c, {R::UnknownStrand});
        }
        {
            Certificate c = base;
            c.moves.erase(c.moves.begin() + i);
            retau(c);
            add("drop move", c, {R::WirtingerConditionFailed, R::CycleEdgeUncolored, R::CycleTargetCount, R::IncompleteColoring});
            c = base;
            c.moves.insert(c.moves.begin() + i + 1, m);
            retau(c);
            add("repeat move", c, {R::TargetAlreadyColored});
        }
        const std::vector<bool>& seeds_only = before[0];
        const bool needs_earlier = m.kind == Move::Kind::Wirtinger
                                       ? !oracle::wirtinger_ok(d, seeds_only, m.target)
                                       : false;
        if (i > 0 && needs_earlier) {
            Certificate c = base;
            Move moved = c.moves[i];
            c.moves.erase(c.moves.begin() + i);
            c.moves.insert(c.moves.begin(), moved);
            add("hoist move", c, {R::WirtingerConditionFailed});
        }

        if (m.kind == Move::Kind::Wirtinger) {
            for (CrossingId x = 0; x < d.crossing_count(); ++x) {
                if (x == m.crossing) continue;
                const Crossing& cr = d.crossings()[x];
                const StrandId a = d.strand_of_edge(cr.edge[0]);
                const StrandId b = d.strand_of_edge(cr.edge[2]);
                const StrandId over = d.strand_of_edge(cr.edge[1]);
                const auto& col = before[i];
                const bool valid = over != m.target && ((a == m.target && b != m.target && col[b] && col[over]) ||
                                                        (b == m.target && a != m.target && col[a] && col[over]));
                if (valid) continue;
                Certificate c = base;
                c.moves[i].crossing = x;
                add("wrong crossing", c, {R::WirtingerConditionFailed});
            }
            Certificate c = base;
            c.moves[i].crossing = d.crossing_count();
            add("crossing out of range", c, {R::WirtingerConditionFailed});
            continue;
        }

        {
            Certificate c = base;
            c.mode = Mode::Wirtinger;
            add("loop in wirtinger mode", c, {R::LoopMoveInWirtingerMode});
        }
        for (std::size_t k = 0; k < m.faces.size(); ++k) {
            Certificate c = base;
            c.moves[i].faces.insert(c.moves[i].faces.begin() + k + 1, m.faces[k]);
            retau(c);
            add("repeat face", c, {R::CycleNotSimple});
            c = base;
            c.moves[i].faces[k] = g.face_count() + static_cast<int>(k);
            add("face out of range", c, {R::CycleEdgeMissing});
        }
        {
            Certificate c = base;
            c.moves[i].faces.resize(1);
            retau(c);
            add("short loop", c, {R::CycleEdgeMissing});
            c = base;
            c.moves[i].edge_label = 1 << 20;
            add("unknown edge", c, {R::CycleEdgeMissing});
        }
        for (EdgeId e = 0; e < d.edge_count(); ++e) {
            if (d.edge_label(e) == m.edge_label) continue;
            Certificate c = base;
            c.moves[i].edge_label = d.edge_label(e);
            if (d.strand_of_edge(e) != m.target) {
                add("edge off target", c, {R::CycleTargetCount});
                continue;
            }
            const DualEdge& de = g.edge(e);
            const bool closes = (de.a == m.faces.back() && de.b == m.faces.front()) ||
                                (de.b == m.faces.back() && de.a == m.faces.front());
            if (!closes) add("edge misses loop ends", c, {R::CycleEdgeMissing});
        }
        // Uncolor every strand the loop passes through by moving the loop to
        // the front, then check the verifier notices when that matters.
        if (i > 0) {
            bool seeds_suffice = true;
            for (std::size_t k = 0; k + 1 < m.faces.size() && seeds_suffice; ++k) {
                bool step = false;
                for (EdgeId e : g.incident(m.faces[k])) {
                    if (d.edge_label(e) == m.edge_label) continue;
                    if (g.across(e, m.faces[k]) == m.faces[k + 1] && seeds_only[g.edge(e).strand]) step = true;
                }
                seeds_suffice = step;
            }
            if (!seeds_suffice) {
                Certificate c = base;
                Move moved = c.moves[i];
                c.moves.erase(c.moves.begin() + i);
                c.moves.insert(c.moves.begin(), moved);
                add("hoist loop", c, {R::CycleEdgeUncolored, R::CycleTargetCount});
            }
        }
    }
    return out;
}

// Certificates exercising many loop moves: plain-sphere saturation from a
// random seed set in random move order, kept when it completes.
inline std::vector<Certificate> random_loop_certificates(const Diagram& d, const DualGraph& g, int want,
                                                         std::mt19937_64& rng) {
    std::vector<Certificate> out;
    const int n = d.strand_count();
    for (int attempt = 0; attempt < want * 20 && static_cast<int>(out.size()) < want; ++attempt) {
        std::vector<StrandId> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        const int k = 1 + static_cast<int>(rng() % std::max(1, n / 2));
        std::vector<StrandId> seeds(all.begin(), all.begin() + k);
        std::sort(seeds.begin(), seeds.end());
        SaturateOptions opts;
        opts.random_order = &rng;
        SaturationResult r = saturate(d, g, seeds, Mode::PlainSphere, opts);
        if (!r.complete()) continue;
        out.push_back(certificate_from(d, seeds, Mode::PlainSphere, std::move(r.moves)));
    }
    return out;
}

}  // namespace psk::test
