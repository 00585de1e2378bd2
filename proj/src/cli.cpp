#include "psk/cli.hpp"

#include "psk/census.hpp"
#include "psk/certificate.hpp"
#include "psk/coloring.hpp"
#include "psk/diagram.hpp"
#include "psk/planar_dual.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace psk::cli {

namespace {

struct Config {
    std::string pd;
    std::string pd_file;
    std::string invariant = "both";
    std::string certificate;
    std::string omega_certificate;
    std::string dual_out;
    std::string format = "plain";
    int timeout_ms = 0;

    std::string input;
    std::string output = "census_records.csv";
    std::string summary = "census_summary.json";
    int max_crossings = 0;
    int jobs = 0;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

// Positive integer from the environment, used when the flag is absent.
bool env_default(const char* name, int& value, std::ostream& err) {
    const char* text = std::getenv(name);
    if (!text || !*text) return true;
    int v = 0;
    const char* end = text + std::strlen(text);
    auto [ptr, ec] = std::from_chars(text, end, v);
    if (ec != std::errc{} || ptr != end || v <= 0) {
        err << "error: " << name << " must be a positive integer, got '" << text << "'\n";
        return false;
    }
    value = v;
    return true;
}

std::string join(const std::vector<StrandId>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

// Loads and validates the diagram named by --pd or --pd-file. On failure
// returns the exit code and prints a diagnostic.
struct Loaded {
    std::optional<Diagram> diagram;
    DualGraph dual;
    int exit_code = kOk;
};

Loaded load_diagram(const Config& cfg, std::ostream& err) {
    Loaded l;
    std::string text = cfg.pd;
    if (!cfg.pd_file.empty()) {
        auto contents = read_file(cfg.pd_file);
        if (!contents) {
            err << "error: cannot read " << cfg.pd_file << '\n';
            l.exit_code = kParseError;
            return l;
        }
        text = *contents;
    }
    try {
        l.diagram = parse_pd(text);
        l.dual = make_dual(*l.diagram);
    } catch (const DiagramError& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        l.exit_code = e.kind() == DiagramErrorKind::MalformedPD ? kParseError : kUnsupportedDiagram;
        l.diagram.reset();
    } catch (const PlanarError& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        l.exit_code = kParseError;
        l.diagram.reset();
    }
    return l;
}

int cmd_compute(const Config& cfg, std::ostream& out, std::ostream& err) {
    Loaded l = load_diagram(cfg, err);
    if (l.exit_code != kOk) return l.exit_code;
    const Diagram& d = *l.diagram;
    const DualGraph& g = l.dual;

    if (!cfg.dual_out.empty()) {
        std::ofstream f(cfg.dual_out);
        write_edge_list(f, d, g);
        if (!f) {
            err << "error: cannot write " << cfg.dual_out << '\n';
            return kUsage;
        }
    }

    SearchLimits limits;
    if (cfg.timeout_ms > 0) {
        limits.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(cfg.timeout_ms);
    }
    const bool want_rho = cfg.invariant != "omega";
    const bool want_omega = cfg.invariant != "rho";

    const SearchResult om = omega(d, g, limits);
    std::optional<SearchResult> rh;
    if (om.status == SearchStatus::Complete && want_rho) rh = rho(d, g, limits, &om);
    if (om.status == SearchStatus::TimedOut || (rh && rh->status == SearchStatus::TimedOut)) {
        err << "error: timed out after " << cfg.timeout_ms << " ms\n";
        return kTimeout;
    }
    if (rh && rh->value > om.value) {
        err << "internal error: rho " << rh->value << " exceeds omega " << om.value << '\n';
        return kUsage;
    }

    if (!cfg.certificate.empty()) {
        const Certificate& c = want_rho ? rh->certificate : om.certificate;
        if (!write_file(cfg.certificate, serialize(c))) {
            err << "error: cannot write " << cfg.certificate << '\n';
            return kUsage;
        }
    }
    if (!cfg.omega_certificate.empty() && !write_file(cfg.omega_certificate, serialize(om.certificate))) {
        err << "error: cannot write " << cfg.omega_certificate << '\n';
        return kUsage;
    }

    if (cfg.format == "json") {
        nlohmann::json j;
        j["n"] = d.crossing_count();
        j["strands"] = d.strand_count();
        j["diagram"] = d.content_hash();
        if (want_omega) {
            j["omega"] = om.value;
            j["omega_seeds"] = om.certificate.seeds;
        }
        if (want_rho) {
            j["rho"] = rh->value;
            j["rho_seeds"] = rh->certificate.seeds;
        }
        out << j.dump() << '\n';
    } else if (cfg.format == "csv") {
        out << "n,strands,omega,rho,omega_seeds,rho_seeds\n";
        out << d.crossing_count() << ',' << d.strand_count() << ',';
        if (want_omega) out << om.value;
        out << ',';
        if (want_rho) out << rh->value;
        out << ',';
        if (want_omega) out << join(om.certificate.seeds, ';');
        out << ',';
        if (want_rho) out << join(rh->certificate.seeds, ';');
        out << '\n';
    } else {
        out << "n: " << d.crossing_count() << '\n';
        out << "strands: " << d.strand_count() << '\n';
        if (want_omega) out << "omega: " << om.value << " (seeds " << join(om.certificate.seeds, ',') << ")\n";
        if (want_rho) out << "rho: " << rh->value << " (seeds " << join(rh->certificate.seeds, ',') << ")\n";
    }
    return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
    Loaded l = load_diagram(cfg, err);
    if (l.exit_code != kOk) return l.exit_code;

    auto text = read_file(cfg.certificate);
    if (!text) {
        err << "error: cannot read " << cfg.certificate << '\n';
        return kParseError;
    }
    Certificate c;
    try {
        c = deserialize(*text);
    } catch (const CertificateFormatError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }

    const Verdict v = verify(*l.diagram, l.dual, c);
    if (v) {
        out << "accepted: " << to_string(c.mode) << ' ' << c.seeds.size() << " seeds, " << c.moves.size()
            << " moves\n";
        return kOk;
    }
    out << "rejected: " << to_string(v.reason);
    if (v.move_index >= 0) out << " at move " << v.move_index;
    out << ": " << v.detail << '\n';
    return v.reason == RejectReason::HashMismatch ? kHashMismatch : kRejected;
}

int cmd_census(const Config& cfg, std::ostream& out, std::ostream& err) {
    Table table;
    try {
        table = ingest(std::filesystem::path(cfg.input));
    } catch (const CensusError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
    for (const SkippedRow& s : table.skipped) {
        err << "skipped line " << s.line << " (" << s.name << "): " << s.reason << '\n';
    }

    CensusOptions options;
    options.max_crossings = cfg.max_crossings;
    options.jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (cfg.timeout_ms > 0) options.timeout_per_diagram = std::chrono::milliseconds(cfg.timeout_ms);

    std::size_t processable = 0;
    for (const TableRow& r : table.rows) {
        if (cfg.max_crossings <= 0 || r.crossings <= cfg.max_crossings) ++processable;
    }
    if (processable == 0) {
        err << "error: no processable rows in " << cfg.input << '\n';
        return kNoRows;
    }

    for (const CensusRecord& r : load_records(cfg.output)) options.skip_names.insert(r.name);

    CensusReport report;
    try {
        RecordWriter writer(cfg.output);
        report = run_census(table.rows, options, [&](const CensusRecord& r) { writer.write(r); });
    } catch (const CensusError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    for (const SkippedRow& f : report.summary.failures) {
        err << "failed " << f.name << ": " << f.reason << '\n';
    }

    const std::string json = summary_json(report.summary);
    if (!write_file(cfg.summary, json + "\n")) {
        err << "error: cannot write " << cfg.summary << '\n';
        return kUsage;
    }
    out << json << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Wirtinger number and plain sphere number of link diagrams", "psk"};
    app.require_subcommand(1);

    auto add_pd = [&](CLI::App* sub) {
        auto* pd = sub->add_option("--pd", cfg.pd, "PD code, e.g. \"X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)\"");
        auto* file = sub->add_option("--pd-file", cfg.pd_file, "file containing a PD code");
        pd->excludes(file);
        return std::pair{pd, file};
    };
    auto add_timeout = [&](CLI::App* sub) {
        sub->add_option("--timeout-ms", cfg.timeout_ms, "per-diagram time limit in milliseconds (default: $PSK_TIMEOUT_MS)")
            ->check(CLI::PositiveNumber);
    };

    auto* compute = app.add_subcommand("compute", "compute omega and/or rho of one diagram");
    {
        auto [pd, file] = add_pd(compute);
        compute->callback([pd = pd, file = file] {
            if (pd->count() + file->count() == 0) throw CLI::RequiredError("--pd or --pd-file");
        });
        compute->add_option("--invariant", cfg.invariant, "omega, rho or both")
            ->check(CLI::IsMember({"omega", "rho", "both"}));
        compute->add_option("--certificate", cfg.certificate,
                            "write the certificate (rho's unless --invariant omega)");
        compute->add_option("--omega-certificate", cfg.omega_certificate, "write the omega certificate");
        compute->add_option("--dual", cfg.dual_out, "write the dual graph edge list");
        compute->add_option("--format", cfg.format, "plain, json or csv")
            ->check(CLI::IsMember({"plain", "json", "csv"}));
        add_timeout(compute);
    }

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate against a diagram");
    {
        auto [pd, file] = add_pd(verify_cmd);
        verify_cmd->callback([pd = pd, file = file] {
            if (pd->count() + file->count() == 0) throw CLI::RequiredError("--pd or --pd-file");
        });
        verify_cmd->add_option("--certificate", cfg.certificate, "certificate file")->required();
    }

    auto* census = app.add_subcommand("census", "compute omega and rho over a knot table");
    {
        census->add_option("--input", cfg.input, "CSV with name, pd_notation[, bridge_number]")->required();
        census->add_option("--output", cfg.output, "records CSV (appended; existing names are skipped)");
        census->add_option("--summary", cfg.summary, "summary JSON");
        census->add_option("--max-crossings", cfg.max_crossings, "skip diagrams with more crossings")
            ->check(CLI::NonNegativeNumber);
        census->add_option("--jobs", cfg.jobs, "worker threads (default: $PSK_JOBS, else all cores)")
            ->check(CLI::PositiveNumber);
        add_timeout(census);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    for (CLI::App* sub : {compute, census}) {
        if (!sub->parsed()) continue;
        if (sub->count("--timeout-ms") == 0 && !env_default("PSK_TIMEOUT_MS", cfg.timeout_ms, err)) return kUsage;
        if (sub == census && sub->count("--jobs") == 0 && !env_default("PSK_JOBS", cfg.jobs, err)) return kUsage;
    }

    if (compute->parsed()) return cmd_compute(cfg, out, err);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
    return cmd_census(cfg, out, err);
}

}  // namespace psk::cli
