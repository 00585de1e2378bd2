#pragma once

#include "psk/diagram.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace psk {

using FaceId = int;

enum class PlanarErrorKind { EulerViolation, BridgeDetected };

std::string_view to_string(PlanarErrorKind kind);

class PlanarError : public std::runtime_error {
public:
    PlanarError(PlanarErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    PlanarErrorKind kind() const noexcept { return kind_; }

private:
    PlanarErrorKind kind_;
};

// A traversed edge of a face boundary. side 0 means the edge is walked from
// edge_ends(edge)[0] to edge_ends(edge)[1], side 1 the reverse.
struct BoundaryStep {
    EdgeId edge;
    int side;
};

struct Face {
    FaceId id = 0;
    std::vector<BoundaryStep> boundary;
};

struct DualEdge {
    FaceId a;       // face on side 0
    FaceId b;       // face on side 1
    EdgeId edge;    // projection edge this dual edge crosses
    StrandId strand;
};

// Dual multigraph. Dual edge i crosses projection edge i, so edge ids are
// shared between the diagram and its dual.
class DualGraph {
public:
    DualGraph() = default;
    DualGraph(int face_count, std::vector<DualEdge> edges);

    int face_count() const noexcept { return face_count_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<DualEdge>& edges() const noexcept { return edges_; }
    const DualEdge& edge(EdgeId e) const { return edges_.at(e); }
    // Dual edges incident to a face; an edge appears once per endpoint.
    const std::vector<EdgeId>& incident(FaceId f) const { return incident_.at(f); }
    int degree(FaceId f) const { return static_cast<int>(incident_.at(f).size()); }
    FaceId across(EdgeId e, FaceId from) const {
        const DualEdge& d = edges_.at(e);
        return d.a == from ? d.b : d.a;
    }

private:
    int face_count_ = 0;
    std::vector<DualEdge> edges_;
    std::vector<std::vector<EdgeId>> incident_;
};

// Faces of the projection from the PD rotation system: leave a crossing
// along an edge, arrive at the far slot, turn to the next slot clockwise.
// Throws PlanarError(EulerViolation) unless F = n + 2.
std::vector<Face> trace_faces(const Diagram& d);

// Throws PlanarError(BridgeDetected) if some projection edge has the same
// face on both sides.
DualGraph build_dual(const Diagram& d, const std::vector<Face>& faces);

DualGraph make_dual(const Diagram& d);

// One line per dual edge: "face face edge_label strand".
void write_edge_list(std::ostream& out, const Diagram& d, const DualGraph& g);

}  // namespace psk
