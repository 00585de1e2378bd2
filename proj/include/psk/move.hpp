#pragma once

#include "psk/diagram.hpp"
#include "psk/planar_dual.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace psk {

enum class Mode { Wirtinger, PlainSphere };

std::string_view to_string(Mode mode);

struct Move {
    enum class Kind { Wirtinger, Loop };

    Kind kind = Kind::Wirtinger;
    StrandId target = -1;
    // Wirtinger: the crossing where target is an understrand.
    CrossingId crossing = -1;
    // Loop: label of the crossed edge of target, and the faces visited by the
    // rest of the loop. faces.front() and faces.back() are the two sides of
    // that edge; consecutive faces are joined through colored strands.
    int edge_label = -1;
    std::vector<FaceId> faces;
    // Loop: the dual edges used between consecutive faces. Filled by the
    // engine, not serialized.
    std::vector<EdgeId> path;

    friend bool operator==(const Move& a, const Move& b) {
        return a.kind == b.kind && a.target == b.target && a.crossing == b.crossing &&
               a.edge_label == b.edge_label && a.faces == b.faces;
    }
};

struct Certificate {
    std::string diagram_hash;
    Mode mode = Mode::Wirtinger;
    std::vector<StrandId> seeds;
    std::vector<Move> moves;
    long tau = 0;
};

long loop_intersections(const std::vector<Move>& moves);

}  // namespace psk
