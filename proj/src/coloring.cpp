#include "psk/coloring.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace psk {

std::string_view to_string(Mode mode) {
    return mode == Mode::Wirtinger ? "wirtinger" : "plain-sphere";
}

long loop_intersections(const std::vector<Move>& moves) {
    long tau = 0;
    for (const Move& m : moves) {
        if (m.kind == Move::Kind::Loop) tau += static_cast<long>(m.faces.size());
    }
    return tau;
}

ColoringState::ColoringState(const Diagram& d, const DualGraph& g)
    : diagram_(&d), dual_(&g), colored_(d.strand_count(), false), regions_(g.face_count()) {}

void ColoringState::color(StrandId s) {
    if (colored_.at(s)) return;
    colored_[s] = true;
    ++count_;
    for (EdgeId e : diagram_->strands()[s].edges) {
        const DualEdge& de = dual_->edge(e);
        regions_.unite(de.a, de.b);
    }
}

namespace {

void require_uncolored(const ColoringState& state, StrandId s) {
    if (s < 0 || s >= state.diagram().strand_count()) {
        throw std::invalid_argument("unknown strand " + std::to_string(s));
    }
    if (state.is_colored(s)) {
        throw std::invalid_argument("strand " + std::to_string(s) + " is already colored");
    }
}

// Shortest path between two faces through dual edges of colored strands.
// Returns false when the faces are not connected that way.
bool colored_path(const ColoringState& state, FaceId from, FaceId to, std::vector<FaceId>& faces,
                  std::vector<EdgeId>& edges) {
    const DualGraph& g = state.dual();
    std::vector<EdgeId> via(g.face_count(), -1);
    std::vector<bool> reached(g.face_count(), false);
    std::deque<FaceId> queue{from};
    reached[from] = true;
    while (!queue.empty() && !reached[to]) {
        FaceId f = queue.front();
        queue.pop_front();
        for (EdgeId e : g.incident(f)) {
            if (!state.is_colored(g.edge(e).strand)) continue;
            FaceId next = g.across(e, f);
            if (reached[next]) continue;
            reached[next] = true;
            via[next] = e;
            queue.push_back(next);
        }
    }
    if (!reached[to]) return false;

    faces.clear();
    edges.clear();
    for (FaceId f = to; f != from; f = g.across(via[f], f)) {
        faces.push_back(f);
        edges.push_back(via[f]);
    }
    faces.push_back(from);
    std::reverse(faces.begin(), faces.end());
    std::reverse(edges.begin(), edges.end());
    return true;
}

// A closed loop in the plane meets every link component an even number of
// times.
void check_jordan_parity(const Diagram& d, const Move& m, EdgeId target_edge) {
    std::vector<int> hits(d.component_count(), 0);
    ++hits[d.component_of_edge(target_edge)];
    for (EdgeId e : m.path) ++hits[d.component_of_edge(e)];
    for (int h : hits) {
        if (h % 2 != 0) {
            throw std::logic_error("loop for strand " + std::to_string(m.target) +
                                   " crosses a link component an odd number of times");
        }
    }
}

}  // namespace

std::optional<Move> wirtinger_colorable_now(const ColoringState& state, StrandId s) {
    require_uncolored(state, s);
    for (const Adjacency& adj : state.diagram().adjacency_of(s)) {
        if (adj.other == s || adj.over == s) continue;
        if (state.is_colored(adj.other) && state.is_colored(adj.over)) {
            Move m;
            m.kind = Move::Kind::Wirtinger;
            m.target = s;
            m.crossing = adj.crossing;
            return m;
        }
    }
    return std::nullopt;
}

std::optional<Move> loop_colorable_now(ColoringState& state, StrandId s, bool with_witness) {
    require_uncolored(state, s);
    const Diagram& d = state.diagram();
    const DualGraph& g = state.dual();
    for (EdgeId e : d.strands()[s].edges) {
        const DualEdge& de = g.edge(e);
        if (!state.regions_connected(de.a, de.b)) continue;
        Move m;
        m.kind = Move::Kind::Loop;
        m.target = s;
        m.edge_label = d.edge_label(e);
        if (with_witness) {
            if (!colored_path(state, de.a, de.b, m.faces, m.path)) {
                throw std::logic_error("region connectivity disagrees with colored dual subgraph");
            }
            check_jordan_parity(d, m, e);
        }
        return m;
    }
    return std::nullopt;
}

bool SaturationResult::complete() const {
    return std::all_of(colored.begin(), colored.end(), [](bool b) { return b; });
}

std::vector<StrandId> SaturationResult::colored_strands() const {
    std::vector<StrandId> out;
    for (std::size_t i = 0; i < colored.size(); ++i) {
        if (colored[i]) out.push_back(static_cast<StrandId>(i));
    }
    return out;
}

namespace {

// Crossings whose Wirtinger condition can change when the strand is colored.
std::vector<std::vector<CrossingId>> crossings_touching(const Diagram& d) {
    std::vector<std::vector<CrossingId>> touching(d.strand_count());
    for (const Crossing& c : d.crossings()) {
        for (int p = 0; p < 3; ++p) {
            StrandId s = d.strand_of_edge(c.edge[p]);
            auto& list = touching[s];
            if (list.empty() || list.back() != c.id) list.push_back(c.id);
        }
    }
    return touching;
}

void apply(ColoringState& state, Move&& m, bool record) {
    state.color(m.target);
    if (record) state.move_log.push_back(std::move(m));
}

void saturate_ordered(ColoringState& state, Mode mode, bool record) {
    const Diagram& d = state.diagram();
    const auto touching = crossings_touching(d);

    std::deque<CrossingId> pending;
    std::vector<bool> queued(d.crossing_count(), true);
    for (const Crossing& c : d.crossings()) pending.push_back(c.id);

    auto enqueue = [&](StrandId s) {
        for (CrossingId c : touching[s]) {
            if (!queued[c]) {
                queued[c] = true;
                pending.push_back(c);
            }
        }
    };

    for (;;) {
        while (!pending.empty()) {
            CrossingId c = pending.front();
            pending.pop_front();
            queued[c] = false;
            StrandId over = d.over_strand(c);
            if (!state.is_colored(over)) continue;
            StrandId a = d.under_strand(c, 0);
            StrandId b = d.under_strand(c, 2);
            if (state.is_colored(a) == state.is_colored(b)) continue;
            StrandId target = state.is_colored(a) ? b : a;
            Move m;
            m.kind = Move::Kind::Wirtinger;
            m.target = target;
            m.crossing = c;
            apply(state, std::move(m), record);
            enqueue(target);
        }
        if (mode == Mode::Wirtinger || state.complete()) return;

        bool progressed = false;
        for (StrandId s = 0; s < d.strand_count() && !progressed; ++s) {
            if (state.is_colored(s)) continue;
            if (auto m = loop_colorable_now(state, s, record)) {
                apply(state, std::move(*m), record);
                enqueue(s);
                progressed = true;
            }
        }
        if (!progressed) return;
    }
}

void saturate_random(ColoringState& state, Mode mode, bool record, std::mt19937_64& rng) {
    const Diagram& d = state.diagram();
    struct Candidate {
        StrandId target;
        bool loop;
    };
    for (;;) {
        std::vector<Candidate> options;
        for (StrandId s = 0; s < d.strand_count(); ++s) {
            if (state.is_colored(s)) continue;
            if (wirtinger_colorable_now(state, s)) options.push_back({s, false});
            if (mode == Mode::PlainSphere && loop_colorable_now(state, s, false)) {
                options.push_back({s, true});
            }
        }
        if (options.empty()) return;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        const Candidate c = options[pick(rng)];
        auto m = c.loop ? loop_colorable_now(state, c.target, record)
                        : wirtinger_colorable_now(state, c.target);
        apply(state, std::move(*m), record);
    }
}

}  // namespace

SaturationResult saturate(const Diagram& d, const DualGraph& g, const std::vector<StrandId>& seeds,
                          Mode mode, const SaturateOptions& options) {
    if (seeds.empty()) throw std::invalid_argument("saturation needs at least one seed");
    ColoringState state(d, g);
    for (StrandId s : seeds) {
        if (s < 0 || s >= d.strand_count()) {
            throw std::invalid_argument("unknown seed strand " + std::to_string(s));
        }
        state.color(s);
    }
    if (options.random_order) {
        saturate_random(state, mode, options.record_moves, *options.random_order);
    } else {
        saturate_ordered(state, mode, options.record_moves);
    }
    return {state.colored(), std::move(state.move_log)};
}

std::vector<StrandId> seed_order(const Diagram& d) {
    std::vector<StrandId> order(d.strand_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](StrandId a, StrandId b) { return d.over_degree(a) > d.over_degree(b); });
    return order;
}

namespace {

bool expired(const SearchLimits& limits) {
    return limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline;
}

Certificate make_certificate(const Diagram& d, const DualGraph& g, std::vector<StrandId> seeds,
                             Mode mode) {
    std::sort(seeds.begin(), seeds.end());
    SaturationResult full = saturate(d, g, seeds, mode);
    if (!full.complete()) throw std::logic_error("recorded saturation did not complete");
    Certificate c;
    c.diagram_hash = d.content_hash();
    c.mode = mode;
    c.seeds = std::move(seeds);
    c.moves = std::move(full.moves);
    c.tau = loop_intersections(c.moves);
    return c;
}

// Tries every k-subset of order (lexicographic in positions). Returns the
// first subset that saturates, or nullopt. Sets timed_out on deadline.
std::optional<std::vector<StrandId>> search_k(const Diagram& d, const DualGraph& g,
                                              const std::vector<StrandId>& order, int k, Mode mode,
                                              const SearchLimits& limits, long& tried,
                                              bool& timed_out) {
    const int n = static_cast<int>(order.size());
    std::vector<int> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<StrandId> seeds(k);
    const SaturateOptions fast{.record_moves = false};
    for (;;) {
        if (expired(limits)) {
            timed_out = true;
            return std::nullopt;
        }
        for (int i = 0; i < k; ++i) seeds[i] = order[pos[i]];
        ++tried;
        if (saturate(d, g, seeds, mode, fast).complete()) return seeds;

        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i) --i;
        if (i < 0) return std::nullopt;
        ++pos[i];
        for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
}

}  // namespace

SearchResult omega(const Diagram& d, const DualGraph& g, const SearchLimits& limits) {
    SearchResult result;
    const auto order = seed_order(d);
    for (int k = 1; k <= d.strand_count(); ++k) {
        bool timed_out = false;
        auto seeds = search_k(d, g, order, k, Mode::Wirtinger, limits, result.seed_sets_tried, timed_out);
        if (timed_out) {
            result.status = SearchStatus::TimedOut;
            return result;
        }
        if (seeds) {
            result.value = k;
            result.certificate = make_certificate(d, g, std::move(*seeds), Mode::Wirtinger);
            return result;
        }
    }
    throw std::logic_error("seeding every strand must color the diagram");
}

SearchResult rho(const Diagram& d, const DualGraph& g, const SearchLimits& limits,
                 const SearchResult* known_omega) {
    SearchResult upper;
    if (known_omega) {
        upper = *known_omega;
    } else {
        upper = omega(d, g, limits);
    }
    SearchResult result;
    result.seed_sets_tried = 0;
    if (upper.status == SearchStatus::TimedOut) {
        result.status = SearchStatus::TimedOut;
        return result;
    }

    const auto order = seed_order(d);
    for (int k = 1; k < upper.value; ++k) {
        bool timed_out = false;
        auto seeds = search_k(d, g, order, k, Mode::PlainSphere, limits, result.seed_sets_tried, timed_out);
        if (timed_out) {
            result.status = SearchStatus::TimedOut;
            return result;
        }
        if (seeds) {
            result.value = k;
            result.certificate = make_certificate(d, g, std::move(*seeds), Mode::PlainSphere);
            return result;
        }
    }
    // Wirtinger moves are loop moves, so the omega seeds always suffice.
    result.value = upper.value;
    result.certificate = make_certificate(d, g, upper.certificate.seeds, Mode::PlainSphere);
    return result;
}

}  // namespace psk
