#include "psk/diagram.hpp"

#include "psk/union_find.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iomanip>
#include <map>
#include <sstream>

namespace psk {

std::string_view to_string(DiagramErrorKind kind) {
    switch (kind) {
    case DiagramErrorKind::MalformedPD: return "MalformedPD";
    case DiagramErrorKind::DisconnectedProjection: return "DisconnectedProjection";
    case DiagramErrorKind::ClosedOverComponent: return "ClosedOverComponent";
    case DiagramErrorKind::EmptyDiagram: return "EmptyDiagram";
    }
    return "Unknown";
}

namespace {

[[noreturn]] void malformed(const std::string& msg) {
    throw DiagramError(DiagramErrorKind::MalformedPD, "malformed PD: " + msg);
}

class PdScanner {
public:
    explicit PdScanner(std::string_view text) : text_(text) {}

    std::vector<std::array<int, 4>> run() {
        skip_space();
        char close = 0;
        if (consume_word("PD")) {
            skip_space();
            if (!consume('[') && !consume('(')) malformed("expected '[' after PD");
            close = text_[pos_ - 1] == '[' ? ']' : ')';
        } else if (peek() == '[' && !std::isdigit(static_cast<unsigned char>(next_non_space(pos_ + 1)))) {
            ++pos_;
            close = ']';
        }

        std::vector<std::array<int, 4>> tuples;
        for (;;) {
            skip_separators();
            if (at_end()) {
                if (close) malformed("unterminated crossing list");
                break;
            }
            if (close && peek() == close) {
                ++pos_;
                skip_separators();
                if (!at_end()) malformed("trailing text after crossing list");
                break;
            }
            tuples.push_back(tuple());
        }
        return tuples;
    }

private:
    std::array<int, 4> tuple() {
        if (peek() == 'X' || peek() == 'x') ++pos_;
        skip_space();
        char close;
        if (consume('(')) close = ')';
        else if (consume('[')) close = ']';
        else malformed("expected crossing tuple at offset " + std::to_string(pos_));

        std::vector<int> values;
        for (;;) {
            skip_separators();
            if (at_end()) malformed("unterminated crossing tuple");
            if (consume(close)) break;
            values.push_back(integer());
        }
        if (values.size() != 4) {
            malformed("crossing tuple has " + std::to_string(values.size()) + " labels, expected 4");
        }
        return {values[0], values[1], values[2], values[3]};
    }

    int integer() {
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        int value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start + (text_[start] == '+'),
                                         text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_ || pos_ == start) {
            malformed("expected an edge label at offset " + std::to_string(start));
        }
        if (value <= 0) malformed("edge labels must be positive, got " + std::to_string(value));
        return value;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool consume(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool consume_word(std::string_view w) {
        if (text_.substr(pos_, w.size()) != w) return false;
        pos_ += w.size();
        return true;
    }
    char next_non_space(std::size_t p) const {
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        return p < text_.size() ? text_[p] : '\0';
    }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void skip_separators() {
        while (!at_end() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ','))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::array<int, 4>> parse_pd_tuples(std::string_view text) {
    return PdScanner(text).run();
}

Diagram parse_pd(std::string_view text) {
    auto tuples = parse_pd_tuples(text);
    return Diagram::from_tuples(tuples);
}

std::vector<Strand> build_strands(std::span<const Crossing> crossings,
                                  std::span<const std::array<Slot, 2>> ends) {
    auto other = [&](EdgeId e, Slot from) { return ends[e][0] == from ? ends[e][1] : ends[e][0]; };

    std::vector<bool> seen(ends.size(), false);
    std::vector<Strand> strands;
    for (const Crossing& c : crossings) {
        for (int pos : {0, 2}) {
            Slot start{c.id, pos};
            EdgeId e = c.edge[pos];
            if (seen[e]) continue;

            Strand s;
            s.id = static_cast<StrandId>(strands.size());
            s.endpoints[0] = start;
            Slot at = start;
            for (;;) {
                seen[e] = true;
                s.edges.push_back(e);
                Slot far = other(e, at);
                if (far.is_under()) {
                    s.endpoints[1] = far;
                    break;
                }
                at = {far.crossing, far.position ^ 2};
                e = crossings[at.crossing].edge[at.position];
            }
            strands.push_back(std::move(s));
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw DiagramError(DiagramErrorKind::ClosedOverComponent,
                           "a link component never passes under a crossing");
    }
    return strands;
}

Diagram Diagram::from_tuples(std::span<const std::array<int, 4>> tuples) {
    if (tuples.empty()) {
        throw DiagramError(DiagramErrorKind::EmptyDiagram, "diagram has no crossings");
    }

    Diagram d;
    std::map<int, std::vector<Slot>> occurrences;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        for (int p = 0; p < 4; ++p) {
            if (tuples[i][p] <= 0) malformed("edge labels must be positive");
            occurrences[tuples[i][p]].push_back({static_cast<CrossingId>(i), p});
        }
    }
    for (const auto& [label, slots] : occurrences) {
        if (slots.size() != 2) {
            malformed("label " + std::to_string(label) + " occurs " + std::to_string(slots.size()) +
                      " times, expected 2");
        }
    }

    std::map<int, EdgeId> index_of;
    for (const auto& [label, slots] : occurrences) {
        index_of[label] = static_cast<EdgeId>(d.labels_.size());
        d.labels_.push_back(label);
        d.ends_.push_back({slots[0], slots[1]});
    }

    for (std::size_t i = 0; i < tuples.size(); ++i) {
        Crossing c;
        c.id = static_cast<CrossingId>(i);
        c.pd = tuples[i];
        for (int p = 0; p < 4; ++p) c.edge[p] = index_of.at(tuples[i][p]);
        d.crossings_.push_back(c);
    }

    const auto n = d.crossings_.size();
    UnionFind projection(n);
    for (const auto& e : d.ends_) projection.unite(e[0].crossing, e[1].crossing);
    if (projection.components() != 1) {
        throw DiagramError(DiagramErrorKind::DisconnectedProjection,
                           "projection has " + std::to_string(projection.components()) +
                               " connected pieces");
    }

    d.strands_ = build_strands(d.crossings_, d.ends_);

    d.edge_strand_.assign(d.labels_.size(), -1);
    for (const Strand& s : d.strands_) {
        for (EdgeId e : s.edges) d.edge_strand_[e] = s.id;
    }

    UnionFind comps(d.labels_.size());
    for (const Crossing& c : d.crossings_) {
        comps.unite(c.edge[0], c.edge[2]);
        comps.unite(c.edge[1], c.edge[3]);
    }
    std::map<std::size_t, ComponentId> comp_ids;
    d.edge_component_.resize(d.labels_.size());
    for (std::size_t e = 0; e < d.labels_.size(); ++e) {
        auto [it, fresh] = comp_ids.try_emplace(comps.find(e), static_cast<ComponentId>(comp_ids.size()));
        d.edge_component_[e] = it->second;
    }
    d.components_ = static_cast<int>(comp_ids.size());

    d.adjacency_.resize(d.strands_.size());
    d.over_degree_.assign(d.strands_.size(), 0);
    for (const Crossing& c : d.crossings_) {
        StrandId a = d.edge_strand_[c.edge[0]];
        StrandId b = d.edge_strand_[c.edge[2]];
        StrandId over = d.edge_strand_[c.edge[1]];
        ++d.over_degree_[over];
        d.adjacency_[a].push_back({b, c.id, over});
        if (b != a) d.adjacency_[b].push_back({a, c.id, over});
    }
    return d;
}

EdgeId Diagram::edge_from_label(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<EdgeId>(it - labels_.begin());
}

Slot Diagram::other_end(EdgeId e, Slot from) const {
    const auto& ends = ends_.at(e);
    if (ends[0] == from) return ends[1];
    if (ends[1] == from) return ends[0];
    throw std::invalid_argument("slot is not an end of edge " + std::to_string(labels_.at(e)));
}

std::string Diagram::to_pd_string() const {
    std::ostringstream out;
    for (const Crossing& c : crossings_) {
        if (c.id) out << ' ';
        out << "X(" << c.pd[0] << ',' << c.pd[1] << ',' << c.pd[2] << ',' << c.pd[3] << ')';
    }
    return out.str();
}

std::string Diagram::content_hash() const {
    const std::string text = to_pd_string();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream out;
    out << "sha256:" << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
    return out.str();
}

}  // namespace psk
