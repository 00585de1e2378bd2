#include "psk/planar_dual.hpp"

#include <ostream>

namespace psk {

std::string_view to_string(PlanarErrorKind kind) {
    switch (kind) {
    case PlanarErrorKind::EulerViolation: return "EulerViolation";
    case PlanarErrorKind::BridgeDetected: return "BridgeDetected";
    }
    return "Unknown";
}

DualGraph::DualGraph(int face_count, std::vector<DualEdge> edges)
    : face_count_(face_count), edges_(std::move(edges)), incident_(face_count) {
    for (const DualEdge& e : edges_) {
        incident_.at(e.a).push_back(e.edge);
        incident_.at(e.b).push_back(e.edge);
    }
}

std::vector<Face> trace_faces(const Diagram& d) {
    const int slots = 4 * d.crossing_count();
    std::vector<bool> used(slots, false);
    std::vector<Face> faces;

    for (int start = 0; start < slots; ++start) {
        if (used[start]) continue;
        Face face;
        face.id = static_cast<FaceId>(faces.size());
        Slot at = Slot::from_index(start);
        while (!used[at.index()]) {
            used[at.index()] = true;
            EdgeId e = d.edge_at(at);
            face.boundary.push_back({e, d.edge_ends(e)[0] == at ? 0 : 1});
            Slot far = d.other_end(e, at);
            at = {far.crossing, (far.position + 3) % 4};
        }
        if (at.index() != start) {
            throw PlanarError(PlanarErrorKind::EulerViolation,
                              "face walk did not close; rotation system is inconsistent");
        }
        faces.push_back(std::move(face));
    }

    const int expected = d.crossing_count() + 2;
    if (static_cast<int>(faces.size()) != expected) {
        throw PlanarError(PlanarErrorKind::EulerViolation,
                          "traced " + std::to_string(faces.size()) + " faces, Euler requires " +
                              std::to_string(expected) + "; PD is not planar");
    }
    return faces;
}

DualGraph build_dual(const Diagram& d, const std::vector<Face>& faces) {
    std::vector<std::array<FaceId, 2>> sides(d.edge_count(), {-1, -1});
    for (const Face& f : faces) {
        for (const BoundaryStep& step : f.boundary) sides.at(step.edge).at(step.side) = f.id;
    }

    std::vector<DualEdge> edges;
    edges.reserve(sides.size());
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        auto [a, b] = sides[e];
        if (a < 0 || b < 0) {
            throw PlanarError(PlanarErrorKind::EulerViolation,
                              "edge " + std::to_string(d.edge_label(e)) + " is missing a face side");
        }
        if (a == b) {
            throw PlanarError(PlanarErrorKind::BridgeDetected,
                              "edge " + std::to_string(d.edge_label(e)) + " has face " +
                                  std::to_string(a) + " on both sides");
        }
        edges.push_back({a, b, e, d.strand_of_edge(e)});
    }
    return DualGraph(static_cast<int>(faces.size()), std::move(edges));
}

DualGraph make_dual(const Diagram& d) { return build_dual(d, trace_faces(d)); }

void write_edge_list(std::ostream& out, const Diagram& d, const DualGraph& g) {
    for (const DualEdge& e : g.edges()) {
        out << e.a << ' ' << e.b << ' ' << d.edge_label(e.edge) << ' ' << e.strand << '\n';
    }
}

}  // namespace psk
