#include "psk/certificate.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

namespace psk {

std::string_view to_string(RejectReason reason) {
    switch (reason) {
    case RejectReason::None: return "None";
    case RejectReason::HashMismatch: return "HashMismatch";
    case RejectReason::UnknownStrand: return "UnknownStrand";
    case RejectReason::TargetAlreadyColored: return "TargetAlreadyColored";
    case RejectReason::WirtingerConditionFailed: return "WirtingerConditionFailed";
    case RejectReason::LoopMoveInWirtingerMode: return "LoopMoveInWirtingerMode";
    case RejectReason::CycleNotSimple: return "CycleNotSimple";
    case RejectReason::CycleEdgeMissing: return "CycleEdgeMissing";
    case RejectReason::CycleEdgeUncolored: return "CycleEdgeUncolored";
    case RejectReason::CycleTargetCount: return "CycleTargetCount";
    case RejectReason::TauMismatch: return "TauMismatch";
    case RejectReason::IncompleteColoring: return "IncompleteColoring";
    }
    return "Unknown";
}

namespace {

template <typename T>
std::string join(const std::vector<T>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    return out.str();
}

[[noreturn]] void schema(const std::string& msg) {
    throw CertificateFormatError(CertificateFormatErrorKind::SchemaError, "certificate: " + msg);
}

long to_number(std::string_view s, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        schema(std::string("bad ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

std::vector<int> to_list(std::string_view s, const char* what) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = s.find(',', start);
        out.push_back(static_cast<int>(to_number(s.substr(start, comma - start), what)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

std::string_view field(std::string_view line, std::string_view key) {
    if (line.substr(0, key.size()) != key || line.substr(key.size(), 1) != ":") {
        schema("expected '" + std::string(key) + ":' line, got '" + std::string(line) + "'");
    }
    std::string_view rest = line.substr(key.size() + 1);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    return rest;
}

}  // namespace

std::string serialize(const Certificate& c) {
    std::ostringstream out;
    out << kCertificateHeader << '\n';
    out << "diagram: " << c.diagram_hash << '\n';
    out << "mode: " << to_string(c.mode) << '\n';
    out << "seeds: " << join(c.seeds) << '\n';
    out << "tau: " << c.tau << '\n';
    out << "moves: " << c.moves.size() << '\n';
    for (const Move& m : c.moves) {
        if (m.kind == Move::Kind::Wirtinger) {
            out << "W " << m.target << ' ' << m.crossing << '\n';
        } else {
            out << "L " << m.target << ' ' << m.edge_label << ' ' << join(m.faces) << '\n';
        }
    }
    return out.str();
}

Certificate deserialize(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kCertificateHeader) {
        throw CertificateFormatError(CertificateFormatErrorKind::VersionMismatch,
                                     "certificate: expected header '" + std::string(kCertificateHeader) + "'");
    }
    if (lines.size() < 6) schema("truncated header block");

    Certificate c;
    c.diagram_hash = std::string(field(lines[1], "diagram"));
    if (c.diagram_hash.empty()) schema("empty diagram hash");

    std::string_view mode = field(lines[2], "mode");
    if (mode == "wirtinger") c.mode = Mode::Wirtinger;
    else if (mode == "plain-sphere") c.mode = Mode::PlainSphere;
    else schema("unknown mode '" + std::string(mode) + "'");

    c.seeds = to_list(field(lines[3], "seeds"), "seed");
    c.tau = to_number(field(lines[4], "tau"), "tau");
    const long count = to_number(field(lines[5], "moves"), "move count");
    if (count < 0) schema("negative move count");
    if (lines.size() != 6 + static_cast<std::size_t>(count)) {
        schema("expected " + std::to_string(count) + " move lines, found " +
               std::to_string(lines.size() - 6));
    }

    for (std::size_t i = 6; i < lines.size(); ++i) {
        auto words = split_words(lines[i]);
        Move m;
        if (words.size() == 3 && words[0] == "W") {
            m.kind = Move::Kind::Wirtinger;
            m.target = static_cast<StrandId>(to_number(words[1], "strand"));
            m.crossing = static_cast<CrossingId>(to_number(words[2], "crossing"));
        } else if (words.size() == 4 && words[0] == "L") {
            m.kind = Move::Kind::Loop;
            m.target = static_cast<StrandId>(to_number(words[1], "strand"));
            m.edge_label = static_cast<int>(to_number(words[2], "edge label"));
            m.faces = to_list(words[3], "face");
        } else {
            schema("bad move line '" + std::string(lines[i]) + "'");
        }
        c.moves.push_back(std::move(m));
    }
    return c;
}

namespace {

Verdict reject(RejectReason reason, std::string detail, int move = -1) {
    return {reason, std::move(detail), move};
}

Verdict check_loop(const Diagram& d, const DualGraph& g, const std::vector<bool>& colored,
                   const Move& m, int index) {
    const auto& faces = m.faces;
    const int nf = g.face_count();
    if (faces.size() < 2) return reject(RejectReason::CycleEdgeMissing, "loop visits fewer than two faces", index);
    for (FaceId f : faces) {
        if (f < 0 || f >= nf) {
            return reject(RejectReason::CycleEdgeMissing, "no face " + std::to_string(f), index);
        }
    }
    if (std::set<FaceId>(faces.begin(), faces.end()).size() != faces.size()) {
        return reject(RejectReason::CycleNotSimple, "loop revisits a face", index);
    }

    const EdgeId crossed = d.edge_from_label(m.edge_label);
    if (crossed < 0) {
        return reject(RejectReason::CycleEdgeMissing, "no edge labelled " + std::to_string(m.edge_label), index);
    }
    if (d.strand_of_edge(crossed) != m.target) {
        return reject(RejectReason::CycleTargetCount,
                      "edge " + std::to_string(m.edge_label) + " is not on the target strand", index);
    }
    const DualEdge& closing = g.edge(crossed);
    const bool closes = (closing.a == faces.back() && closing.b == faces.front()) ||
                        (closing.b == faces.back() && closing.a == faces.front());
    if (!closes) {
        return reject(RejectReason::CycleEdgeMissing,
                      "edge " + std::to_string(m.edge_label) + " does not join the loop's end faces", index);
    }

    for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
        const FaceId from = faces[i];
        const FaceId to = faces[i + 1];
        bool any = false;
        bool via_colored = false;
        bool via_target = false;
        for (EdgeId e : g.incident(from)) {
            if (e == crossed || g.across(e, from) != to) continue;
            any = true;
            const StrandId s = g.edge(e).strand;
            if (colored[s]) via_colored = true;
            if (s == m.target) via_target = true;
        }
        const std::string step = std::to_string(from) + "->" + std::to_string(to);
        if (via_colored) continue;
        if (!any) return reject(RejectReason::CycleEdgeMissing, "faces " + step + " share no edge", index);
        if (via_target) {
            return reject(RejectReason::CycleTargetCount, "step " + step + " crosses the target again", index);
        }
        return reject(RejectReason::CycleEdgeUncolored, "step " + step + " crosses only uncolored strands", index);
    }
    return {};
}

}  // namespace

Verdict verify(const Diagram& d, const DualGraph& g, const Certificate& c) {
    if (c.diagram_hash != d.content_hash()) {
        return reject(RejectReason::HashMismatch, "certificate is for diagram " + c.diagram_hash);
    }
    long tau = 0;
    for (const Move& m : c.moves) {
        if (m.kind == Move::Kind::Loop) tau += static_cast<long>(m.faces.size());
    }
    if (tau != c.tau) {
        return reject(RejectReason::TauMismatch,
                      "tau is " + std::to_string(c.tau) + ", loops meet the diagram " + std::to_string(tau) + " times");
    }

    const int n = d.strand_count();
    std::vector<bool> colored(n, false);
    for (StrandId s : c.seeds) {
        if (s < 0 || s >= n) return reject(RejectReason::UnknownStrand, "seed " + std::to_string(s));
        if (colored[s]) return reject(RejectReason::TargetAlreadyColored, "seed " + std::to_string(s) + " repeated");
        colored[s] = true;
    }

    for (std::size_t i = 0; i < c.moves.size(); ++i) {
        const Move& m = c.moves[i];
        const int index = static_cast<int>(i);
        if (m.target < 0 || m.target >= n) {
            return reject(RejectReason::UnknownStrand, "strand " + std::to_string(m.target), index);
        }
        if (colored[m.target]) {
            return reject(RejectReason::TargetAlreadyColored,
                          "strand " + std::to_string(m.target) + " is already colored", index);
        }

        if (m.kind == Move::Kind::Wirtinger) {
            if (m.crossing < 0 || m.crossing >= d.crossing_count()) {
                return reject(RejectReason::WirtingerConditionFailed, "no crossing " + std::to_string(m.crossing), index);
            }
            const Crossing& x = d.crossings()[m.crossing];
            const StrandId u0 = d.strand_of_edge(x.edge[0]);
            const StrandId u2 = d.strand_of_edge(x.edge[2]);
            const StrandId over = d.strand_of_edge(x.edge[1]);
            StrandId other = -1;
            if (u0 == m.target) other = u2;
            else if (u2 == m.target) other = u0;
            if (other < 0 || !colored[other] || !colored[over]) {
                return reject(RejectReason::WirtingerConditionFailed,
                              "crossing " + std::to_string(m.crossing) + " cannot color strand " +
                                  std::to_string(m.target),
                              index);
            }
        } else {
            if (c.mode == Mode::Wirtinger) {
                return reject(RejectReason::LoopMoveInWirtingerMode, "loop move in a Wirtinger certificate", index);
            }
            if (Verdict v = check_loop(d, g, colored, m, index); !v) return v;
        }
        colored[m.target] = true;
    }

    for (StrandId s = 0; s < n; ++s) {
        if (!colored[s]) return reject(RejectReason::IncompleteColoring, "strand " + std::to_string(s) + " never colored");
    }
    return {};
}

}  // namespace psk
