#include "support.hpp"

#include <doctest.h>

using namespace psk;
using namespace psk::test;

namespace {

struct Computed {
    Diagram d;
    DualGraph g;
    SearchResult om;
    SearchResult rh;
};

Computed compute(std::string_view pd) {
    Diagram d = parse_pd(pd);
    DualGraph g = make_dual(d);
    SearchResult om = omega(d, g);
    SearchResult rh = rho(d, g, {}, &om);
    return {std::move(d), std::move(g), std::move(om), std::move(rh)};
}

CertificateFormatErrorKind format_error(std::string_view text) {
    try {
        deserialize(text);
    } catch (const CertificateFormatError& e) {
        return e.kind();
    }
    FAIL("certificate parsed");
    return CertificateFormatErrorKind::SchemaError;
}

}  // namespace

TEST_CASE("engine certificates verify and round-trip") {
    for (const TableRow& row : load_table("fixtures_small.csv")) {
        CAPTURE(row.name);
        const Computed c = compute(row.pd);
        for (const Certificate* cert : {&c.om.certificate, &c.rh.certificate}) {
            const Verdict v = verify(c.d, c.g, *cert);
            CHECK_MESSAGE(v.accepted(), v.detail);
            const Certificate back = deserialize(serialize(*cert));
            CHECK(back.diagram_hash == cert->diagram_hash);
            CHECK(back.mode == cert->mode);
            CHECK(back.seeds == cert->seeds);
            CHECK(back.moves == cert->moves);
            CHECK(back.tau == cert->tau);
            CHECK(serialize(back) == serialize(*cert));
        }
        CHECK(c.om.certificate.mode == Mode::Wirtinger);
        CHECK(c.rh.certificate.mode == Mode::PlainSphere);
        CHECK(static_cast<int>(c.om.certificate.seeds.size()) == c.om.value);
        CHECK(static_cast<int>(c.rh.certificate.seeds.size()) == c.rh.value);
    }
}

TEST_CASE("certificate invariants: every strand seeded or targeted exactly once") {
    const Computed c = compute(k14n1527);
    for (const Certificate* cert : {&c.om.certificate, &c.rh.certificate}) {
        std::vector<int> hits(c.d.strand_count(), 0);
        for (StrandId s : cert->seeds) ++hits[s];
        for (const Move& m : cert->moves) ++hits[m.target];
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
        CHECK(cert->tau == loop_intersections(cert->moves));
    }
}

TEST_CASE("14n1527 plain-sphere certificate: three seeds, Wirtinger moves, one loop, Wirtinger moves") {
    const Computed c = compute(k14n1527);
    const Certificate& cert = c.rh.certificate;
    CHECK(cert.seeds.size() == 3);
    std::string shape;
    for (const Move& m : cert.moves) shape += m.kind == Move::Kind::Loop ? 'L' : 'W';
    CHECK(std::count(shape.begin(), shape.end(), 'L') == 1);
    CHECK(shape.front() == 'W');
    CHECK(shape.back() == 'W');
    CHECK(verify(c.d, c.g, cert).accepted());
}

TEST_CASE("format errors") {
    const Computed c = compute(kTrefoil);
    const std::string text = serialize(c.rh.certificate);
    CHECK(format_error("") == CertificateFormatErrorKind::VersionMismatch);
    CHECK(format_error(text.substr(text.find('\n') + 1)) == CertificateFormatErrorKind::VersionMismatch);
    CHECK(format_error("psk-cert/2\n" + text.substr(text.find('\n') + 1)) ==
          CertificateFormatErrorKind::VersionMismatch);

    // Cutting anywhere after the header line is a schema error.
    const auto first_nl = text.find('\n');
    for (std::size_t cut = first_nl + 1; cut + 1 < text.size(); ++cut) {
        if (text[cut - 1] != '\n') continue;
        CAPTURE(cut);
        CHECK(format_error(text.substr(0, cut)) == CertificateFormatErrorKind::SchemaError);
    }
    CHECK(format_error("psk-cert/1\ndiagram: x\nmode: other\nseeds: 0\ntau: 0\nmoves: 0\n") ==
          CertificateFormatErrorKind::SchemaError);
    CHECK(format_error("psk-cert/1\ndiagram: x\nmode: wirtinger\nseeds: 0,a\ntau: 0\nmoves: 0\n") ==
          CertificateFormatErrorKind::SchemaError);
    CHECK(format_error("psk-cert/1\ndiagram: x\nmode: wirtinger\nseeds: 0\ntau: 0\nmoves: 1\nQ 1 2\n") ==
          CertificateFormatErrorKind::SchemaError);
}

TEST_CASE("a loop moved before a strand it crosses is rejected as uncolored") {
    const Computed c = compute(k14n1527);
    const Certificate& cert = c.rh.certificate;
    auto loop = std::find_if(cert.moves.begin(), cert.moves.end(),
                             [](const Move& m) { return m.kind == Move::Kind::Loop; });
    REQUIRE(loop != cert.moves.end());
    std::set<StrandId> crossed;
    for (EdgeId e : loop->path) crossed.insert(c.g.edge(e).strand);
    const auto i = loop - cert.moves.begin();
    auto j = i - 1;
    while (j >= 0 && !crossed.count(cert.moves[j].target)) --j;
    REQUIRE(j >= 0);

    Certificate moved = cert;
    moved.moves.erase(moved.moves.begin() + i);
    moved.moves.insert(moved.moves.begin() + j, *loop);
    const Verdict v = verify(c.d, c.g, moved);
    CHECK(v.reason == RejectReason::CycleEdgeUncolored);
    CHECK(v.move_index == j);
}

TEST_CASE("single mutations are rejected with a fitting reason") {
    std::mt19937_64 rng(23);
    std::size_t total = 0;
    std::vector<std::string> rows{kTrefoil, kFigureEight, k14n1527};
    for (const TableRow& r : load_table("fixtures_small.csv")) rows.push_back(r.pd);
    for (const std::string& pd : rows) {
        const Computed c = compute(pd);
        std::vector<Certificate> certs{c.om.certificate, c.rh.certificate};
        for (Certificate& x : random_loop_certificates(c.d, c.g, 2, rng)) certs.push_back(std::move(x));
        for (const Certificate& cert : certs) {
            REQUIRE(verify(c.d, c.g, cert).accepted());
            for (const Mutation& m : mutate(c.d, c.g, cert)) {
                CAPTURE(m.label);
                const Verdict v = verify(c.d, c.g, m.cert);
                CAPTURE(v.detail);
                CHECK(m.expected.count(v.reason) == 1);
                ++total;
            }
        }
    }
    CHECK(total >= 1000);
}

TEST_CASE("certificates are bound to their diagram") {
    const Computed a = compute(kTrefoil);
    const Computed b = compute(kFigureEight);
    CHECK(verify(b.d, b.g, a.om.certificate).reason == RejectReason::HashMismatch);
    const Diagram relabeled = parse_pd("X(2,6,3,5) X(4,2,5,1) X(6,4,1,3)");
    CHECK(verify(relabeled, make_dual(relabeled), a.om.certificate).reason == RejectReason::HashMismatch);
}
