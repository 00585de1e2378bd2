#pragma once

#include "psk/diagram.hpp"
#include "psk/move.hpp"
#include "psk/planar_dual.hpp"
#include "psk/union_find.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace psk {

// Colored strands plus connectivity of the faces through dual edges of
// colored strands. Edges are only ever added.
class ColoringState {
public:
    ColoringState(const Diagram& d, const DualGraph& g);

    bool is_colored(StrandId s) const { return colored_.at(s); }
    const std::vector<bool>& colored() const noexcept { return colored_; }
    int colored_count() const noexcept { return count_; }
    bool complete() const noexcept { return count_ == static_cast<int>(colored_.size()); }

    // Marks s colored and adds its dual edges to the connectivity structure.
    void color(StrandId s);

    bool regions_connected(FaceId a, FaceId b) { return regions_.connected(a, b); }

    const Diagram& diagram() const noexcept { return *diagram_; }
    const DualGraph& dual() const noexcept { return *dual_; }

    std::vector<Move> move_log;

private:
    const Diagram* diagram_;
    const DualGraph* dual_;
    std::vector<bool> colored_;
    int count_ = 0;
    UnionFind regions_;
};

// Both throw std::invalid_argument if s is already colored.
std::optional<Move> wirtinger_colorable_now(const ColoringState& state, StrandId s);
// With with_witness = false the returned move carries no faces or path.
std::optional<Move> loop_colorable_now(ColoringState& state, StrandId s, bool with_witness = true);

struct SaturateOptions {
    bool record_moves = true;
    // When set, each step picks uniformly among all available moves.
    std::mt19937_64* random_order = nullptr;
};

struct SaturationResult {
    std::vector<bool> colored;
    std::vector<Move> moves;

    bool complete() const;
    std::vector<StrandId> colored_strands() const;
};

// Fixpoint of the mode's moves from the seeds. In PlainSphere mode Wirtinger
// moves are taken first when no random order is requested.
SaturationResult saturate(const Diagram& d, const DualGraph& g, const std::vector<StrandId>& seeds,
                          Mode mode, const SaturateOptions& options = {});

struct SearchLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class SearchStatus { Complete, TimedOut };

struct SearchResult {
    SearchStatus status = SearchStatus::Complete;
    int value = 0;
    Certificate certificate;
    long seed_sets_tried = 0;
};

// Strands ordered by descending over-degree, ties by id.
std::vector<StrandId> seed_order(const Diagram& d);

// Smallest k such that some k seeds saturate every strand in Wirtinger mode.
SearchResult omega(const Diagram& d, const DualGraph& g, const SearchLimits& limits = {});

// Plain sphere number, searching k < omega(D) only. The omega result is
// computed when not supplied.
SearchResult rho(const Diagram& d, const DualGraph& g, const SearchLimits& limits = {},
                 const SearchResult* known_omega = nullptr);

}  // namespace psk
