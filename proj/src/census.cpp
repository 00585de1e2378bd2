#include "psk/census.hpp"

#include "psk/coloring.hpp"
#include "psk/diagram.hpp"
#include "psk/planar_dual.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <condition_variable>
#include <deque>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

namespace psk {

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    char ch;
    while (in.get(ch)) {
        any = true;
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
        case '"': quoted = true; break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            break;
        case '\r': break;
        case '\n':
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
            break;
        default: field += ch;
        }
    }
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::optional<int> to_int(const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

Table ingest(std::istream& in) {
    auto records = read_csv(in);
    if (records.empty()) {
        throw CensusError(CensusErrorKind::MissingColumns, "input has no header row");
    }
    int name_col = -1, pd_col = -1, beta_col = -1;
    for (std::size_t i = 0; i < records[0].size(); ++i) {
        const std::string h = trim(records[0][i]);
        if (h == "name") name_col = static_cast<int>(i);
        else if (h == "pd_notation") pd_col = static_cast<int>(i);
        else if (h == "bridge_number") beta_col = static_cast<int>(i);
    }
    if (name_col < 0 || pd_col < 0) {
        throw CensusError(CensusErrorKind::MissingColumns, "input needs 'name' and 'pd_notation' columns");
    }

    Table table;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() == 1 && trim(rec[0]).empty()) continue;
        auto get = [&](int col) { return col >= 0 && col < static_cast<int>(rec.size()) ? trim(rec[col]) : std::string{}; };

        TableRow row;
        row.name = get(name_col);
        row.pd = get(pd_col);
        const std::size_t line = r + 1;
        if (row.name.empty()) {
            table.skipped.push_back({line, "", "empty name"});
            continue;
        }
        if (beta_col >= 0) {
            const std::string b = get(beta_col);
            if (!b.empty()) {
                row.beta_ref = to_int(b);
                if (!row.beta_ref || *row.beta_ref < 1) {
                    table.skipped.push_back({line, row.name, "bad bridge_number '" + b + "'"});
                    continue;
                }
            }
        }
        try {
            row.crossings = parse_pd(row.pd).crossing_count();
        } catch (const DiagramError& e) {
            table.skipped.push_back({line, row.name, std::string(to_string(e.kind())) + ": " + e.what()});
            continue;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table ingest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CensusError(CensusErrorKind::FileUnreadable, "cannot read " + path.string());
    return ingest(in);
}

namespace {

struct Outcome {
    enum class Kind { Done, TimedOut, Failed } kind = Kind::Done;
    CensusRecord record;
    std::string reason;
};

Outcome process(const TableRow& row, const CensusOptions& options) {
    Outcome out;
    out.record.name = row.name;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Diagram d = parse_pd(row.pd);
        const DualGraph g = make_dual(d);
        SearchLimits limits;
        if (options.timeout_per_diagram) limits.deadline = start + *options.timeout_per_diagram;

        const SearchResult om = omega(d, g, limits);
        const SearchResult rh = rho(d, g, limits, &om);
        if (om.status == SearchStatus::TimedOut || rh.status == SearchStatus::TimedOut) {
            out.kind = Outcome::Kind::TimedOut;
            return out;
        }
        CensusRecord& r = out.record;
        r.n_crossings = d.crossing_count();
        r.n_strands = d.strand_count();
        r.omega = om.value;
        r.rho = rh.value;
        r.beta_ref = row.beta_ref;
        r.strict_gap = r.rho < r.omega;
        r.bound_ok = !r.beta_ref || (r.rho >= *r.beta_ref && r.omega >= *r.beta_ref);
    } catch (const DiagramError& e) {
        out.kind = Outcome::Kind::Failed;
        out.reason = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const PlanarError& e) {
        out.kind = Outcome::Kind::Failed;
        out.reason = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
        out.kind = Outcome::Kind::Failed;
        out.reason = std::string("internal error: ") + e.what();
    }
    out.record.wall_millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
    return out;
}

}  // namespace

CensusReport run_census(const std::vector<TableRow>& rows, const CensusOptions& options,
                        const RecordSink& sink) {
    CensusReport report;
    CensusSummary& sum = report.summary;
    sum.total = rows.size();

    std::vector<const TableRow*> work;
    for (const TableRow& row : rows) {
        if (options.skip_names.count(row.name)) ++sum.resumed_count;
        else if (options.max_crossings > 0 && row.crossings > options.max_crossings) ++sum.filtered_count;
        else work.push_back(&row);
    }

    std::mutex mutex;
    std::condition_variable ready_cv;
    std::deque<Outcome> ready;
    std::atomic<std::size_t> next{0};

    const auto workers_wanted = std::clamp<std::size_t>(options.jobs < 1 ? 1 : options.jobs, 1,
                                                        std::max<std::size_t>(work.size(), 1));
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < workers_wanted && !work.empty(); ++w) {
        workers.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
                Outcome o = process(*work[i], options);
                std::lock_guard lock(mutex);
                ready.push_back(std::move(o));
                ready_cv.notify_one();
            }
        });
    }

    for (std::size_t received = 0; received < work.size(); ++received) {
        Outcome o;
        {
            std::unique_lock lock(mutex);
            ready_cv.wait(lock, [&] { return !ready.empty(); });
            o = std::move(ready.front());
            ready.pop_front();
        }
        switch (o.kind) {
        case Outcome::Kind::TimedOut:
            ++sum.timeout_count;
            sum.timed_out.push_back(o.record.name);
            break;
        case Outcome::Kind::Failed:
            ++sum.failed_count;
            sum.failures.push_back({0, o.record.name, o.reason});
            break;
        case Outcome::Kind::Done: {
            const CensusRecord& r = o.record;
            ++sum.completed;
            if (r.strict_gap) ++sum.gap_count;
            if (!r.bound_ok) ++sum.violation_count;
            if (r.rho < 1 || r.rho > r.omega || r.omega > r.n_strands) ++sum.inequality_violations;
            if (sink) sink(r);
            report.records.push_back(r);
            break;
        }
        }
    }
    return report;
}

std::string format_record(const CensusRecord& r) {
    std::ostringstream out;
    out << csv_escape(r.name) << ',' << r.n_crossings << ',' << r.n_strands << ',' << r.omega << ','
        << r.rho << ',';
    if (r.beta_ref) out << *r.beta_ref;
    out << ',' << (r.strict_gap ? "true" : "false") << ',' << (r.bound_ok ? "true" : "false") << ','
        << r.wall_millis;
    return out.str();
}

CensusRecord parse_record(const std::vector<std::string>& f) {
    if (f.size() != 9) throw std::invalid_argument("census record needs 9 fields");
    auto num = [](const std::string& s) {
        auto v = to_int(s);
        if (!v) throw std::invalid_argument("bad number '" + s + "' in census record");
        return *v;
    };
    CensusRecord r;
    r.name = f[0];
    r.n_crossings = num(f[1]);
    r.n_strands = num(f[2]);
    r.omega = num(f[3]);
    r.rho = num(f[4]);
    if (!f[5].empty()) r.beta_ref = num(f[5]);
    r.strict_gap = f[6] == "true";
    r.bound_ok = f[7] == "true";
    r.wall_millis = num(f[8]);
    return r;
}

RecordWriter::RecordWriter(const std::filesystem::path& path) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    out_.open(path, std::ios::app | std::ios::binary);
    if (!out_) throw CensusError(CensusErrorKind::FileUnreadable, "cannot write " + path.string());
    if (fresh) out_ << kRecordHeader << '\n' << std::flush;
}

void RecordWriter::write(const CensusRecord& r) { out_ << format_record(r) << '\n' << std::flush; }

std::vector<CensusRecord> load_records(const std::filesystem::path& path) {
    std::vector<CensusRecord> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    auto rows = read_csv(in);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        // A partially written last line from an interrupted run is dropped.
        try {
            out.push_back(parse_record(rows[i]));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

std::string summary_json(const CensusSummary& s) {
    nlohmann::json j;
    j["totals"] = {
        {"rows", s.total},
        {"completed", s.completed},
        {"filtered", s.filtered_count},
        {"resumed", s.resumed_count},
        {"failed", s.failed_count},
    };
    j["gap_count"] = s.gap_count;
    j["violation_count"] = s.violation_count;
    j["inequality_violation_count"] = s.inequality_violations;
    j["timeout_count"] = s.timeout_count;
    j["timed_out"] = s.timed_out;
    auto failures = nlohmann::json::array();
    for (const auto& f : s.failures) failures.push_back({{"name", f.name}, {"reason", f.reason}});
    j["failures"] = failures;
    return j.dump(2);
}

}  // namespace psk
