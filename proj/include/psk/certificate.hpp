#pragma once

#include "psk/diagram.hpp"
#include "psk/move.hpp"
#include "psk/planar_dual.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace psk {

// Certificate text format, one field or move per line:
//
//   psk-cert/1
//   diagram: sha256:<hex>
//   mode: wirtinger | plain-sphere
//   seeds: 0,4,7
//   tau: 5
//   moves: 11
//   W <target> <crossing>
//   L <target> <edge_label> <face,face,...>
//
// Strand, crossing and face ids are 0-based; crossings are numbered in PD
// order. Edges use the PD labels.
inline constexpr std::string_view kCertificateHeader = "psk-cert/1";

enum class CertificateFormatErrorKind { VersionMismatch, SchemaError };

class CertificateFormatError : public std::runtime_error {
public:
    CertificateFormatError(CertificateFormatErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    CertificateFormatErrorKind kind() const noexcept { return kind_; }

private:
    CertificateFormatErrorKind kind_;
};

std::string serialize(const Certificate& c);
Certificate deserialize(std::string_view text);

enum class RejectReason {
    None,
    HashMismatch,
    UnknownStrand,
    TargetAlreadyColored,
    WirtingerConditionFailed,
    LoopMoveInWirtingerMode,
    CycleNotSimple,
    CycleEdgeMissing,
    CycleEdgeUncolored,
    CycleTargetCount,
    TauMismatch,
    IncompleteColoring,
};

std::string_view to_string(RejectReason reason);

struct Verdict {
    RejectReason reason = RejectReason::None;
    std::string detail;
    // Index of the offending move, -1 for certificate-level failures.
    int move_index = -1;

    bool accepted() const noexcept { return reason == RejectReason::None; }
    explicit operator bool() const noexcept { return accepted(); }
};

// Replays the certificate against the coloring rules with its own colored
// set; shares nothing with the search engine's connectivity tracking.
Verdict verify(const Diagram& d, const DualGraph& g, const Certificate& c);

}  // namespace psk
