#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psk {

using CrossingId = int;
using StrandId = int;
using EdgeId = int;  // dense index 0..2n-1, ordered by PD label
using ComponentId = int;

enum class DiagramErrorKind {
    MalformedPD,
    DisconnectedProjection,
    ClosedOverComponent,
    EmptyDiagram,
};

std::string_view to_string(DiagramErrorKind kind);

class DiagramError : public std::runtime_error {
public:
    DiagramError(DiagramErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    DiagramErrorKind kind() const noexcept { return kind_; }

private:
    DiagramErrorKind kind_;
};

// One of the four edge-ends at a crossing. Positions follow the PD tuple:
// 0 and 2 are under, 1 and 3 are over, counterclockwise from the incoming
// under-edge.
struct Slot {
    CrossingId crossing = 0;
    int position = 0;

    bool is_under() const noexcept { return position % 2 == 0; }
    int index() const noexcept { return crossing * 4 + position; }
    static Slot from_index(int i) noexcept { return {i / 4, i % 4}; }
    friend bool operator==(const Slot&, const Slot&) = default;
};

struct Crossing {
    CrossingId id = 0;
    std::array<int, 4> pd{};    // labels as written in the PD code
    std::array<EdgeId, 4> edge{};

    std::array<int, 2> under_pair() const { return {pd[0], pd[2]}; }
    std::array<int, 2> over_pair() const { return {pd[1], pd[3]}; }
};

// A maximal over-arc. Edges are listed in walk order from endpoints[0]
// to endpoints[1]; both endpoints are under-slots.
struct Strand {
    StrandId id = 0;
    std::vector<EdgeId> edges;
    std::array<Slot, 2> endpoints{};
};

struct Adjacency {
    StrandId other;   // the other understrand (may equal the queried strand)
    CrossingId crossing;
    StrandId over;
    friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

// Validated link diagram. Immutable once constructed.
class Diagram {
public:
    // Validates the tuples and builds strands, components and adjacency.
    // Throws DiagramError.
    static Diagram from_tuples(std::span<const std::array<int, 4>> tuples);

    int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
    int edge_count() const noexcept { return static_cast<int>(labels_.size()); }
    int strand_count() const noexcept { return static_cast<int>(strands_.size()); }
    int component_count() const noexcept { return components_; }

    const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
    const std::vector<Strand>& strands() const noexcept { return strands_; }

    int edge_label(EdgeId e) const { return labels_.at(e); }
    // -1 when no edge carries the label.
    EdgeId edge_from_label(int label) const;

    EdgeId edge_at(Slot s) const { return crossings_.at(s.crossing).edge.at(s.position); }
    const std::array<Slot, 2>& edge_ends(EdgeId e) const { return ends_.at(e); }
    Slot other_end(EdgeId e, Slot from) const;

    StrandId strand_of_edge(EdgeId e) const { return edge_strand_.at(e); }
    ComponentId component_of_edge(EdgeId e) const { return edge_component_.at(e); }

    StrandId over_strand(CrossingId c) const { return strand_of_edge(crossings_.at(c).edge[1]); }
    // position 0 or 2
    StrandId under_strand(CrossingId c, int position) const {
        return strand_of_edge(crossings_.at(c).edge.at(position));
    }

    const std::vector<Adjacency>& adjacency_of(StrandId s) const { return adjacency_.at(s); }
    // Crossings where the strand passes over.
    int over_degree(StrandId s) const { return over_degree_.at(s); }

    // "X(a,b,c,d) X(...)" with the original labels and crossing order.
    std::string to_pd_string() const;
    // SHA-256 of to_pd_string(), formatted "sha256:<hex>".
    std::string content_hash() const;

private:
    Diagram() = default;

    std::vector<Crossing> crossings_;
    std::vector<int> labels_;
    std::vector<std::array<Slot, 2>> ends_;
    std::vector<Strand> strands_;
    std::vector<StrandId> edge_strand_;
    std::vector<ComponentId> edge_component_;
    std::vector<std::vector<Adjacency>> adjacency_;
    std::vector<int> over_degree_;
    int components_ = 0;
};

// Accepts "X(1,4,2,3) X(3,6,4,5) ...", "PD[X[1,4,2,3], ...]" and the
// nested-list form "[[1,4,2,3], ...]" used by knot tables.
std::vector<std::array<int, 4>> parse_pd_tuples(std::string_view text);

Diagram parse_pd(std::string_view text);

// Maximal over-arcs of a label-validated crossing list (edge indices and
// ends already resolved). Throws DiagramError(ClosedOverComponent) when some
// edges lie on no arc ending at an under-slot.
std::vector<Strand> build_strands(std::span<const Crossing> crossings,
                                  std::span<const std::array<Slot, 2>> ends);

}  // namespace psk
