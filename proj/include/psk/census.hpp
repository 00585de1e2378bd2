#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace psk {

enum class CensusErrorKind { FileUnreadable, MissingColumns };

class CensusError : public std::runtime_error {
public:
    CensusError(CensusErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    CensusErrorKind kind() const noexcept { return kind_; }

private:
    CensusErrorKind kind_;
};

struct TableRow {
    std::string name;
    std::string pd;
    std::optional<int> beta_ref;
    int crossings = 0;
};

struct SkippedRow {
    std::size_t line = 0;  // 1-based line in the input file
    std::string name;
    std::string reason;
};

struct Table {
    std::vector<TableRow> rows;
    std::vector<SkippedRow> skipped;
};

// RFC 4180 fields: commas, double-quoted fields, "" escapes.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::string csv_escape(const std::string& field);

// Columns: name, pd_notation, optional bridge_number. Rows whose PD does not
// parse are skipped with a reason. Throws CensusError.
Table ingest(const std::filesystem::path& path);
Table ingest(std::istream& in);

struct CensusRecord {
    std::string name;
    int n_crossings = 0;
    int n_strands = 0;
    int omega = 0;
    int rho = 0;
    std::optional<int> beta_ref;
    bool strict_gap = false;
    bool bound_ok = true;
    long wall_millis = 0;
};

struct CensusOptions {
    int max_crossings = 0;  // 0: no limit
    int jobs = 1;
    std::optional<std::chrono::milliseconds> timeout_per_diagram;
    std::set<std::string> skip_names;  // already present from an earlier run
};

struct CensusSummary {
    std::size_t total = 0;      // rows handed to run_census
    std::size_t completed = 0;
    std::size_t gap_count = 0;
    std::size_t violation_count = 0;   // rho or omega below beta_ref
    std::size_t inequality_violations = 0;  // rho > omega or omega > strands
    std::size_t timeout_count = 0;
    std::size_t filtered_count = 0;    // above max_crossings
    std::size_t resumed_count = 0;     // skipped via skip_names
    std::size_t failed_count = 0;
    std::vector<std::string> timed_out;
    std::vector<SkippedRow> failures;
};

struct CensusReport {
    std::vector<CensusRecord> records;  // completion order
    CensusSummary summary;
};

using RecordSink = std::function<void(const CensusRecord&)>;

// Runs omega and rho per row on a pool of `jobs` workers. The sink, when
// given, is called from the calling thread only.
CensusReport run_census(const std::vector<TableRow>& rows, const CensusOptions& options,
                        const RecordSink& sink = {});

inline constexpr const char* kRecordHeader = "name,n,strands,omega,rho,beta_ref,strict_gap,bound_ok,millis";

std::string format_record(const CensusRecord& r);
CensusRecord parse_record(const std::vector<std::string>& fields);

// Appends records to a CSV file, writing the header when the file is new.
class RecordWriter {
public:
    explicit RecordWriter(const std::filesystem::path& path);

    void write(const CensusRecord& r);

private:
    std::ofstream out_;
};

// Records already present in an output file, for resuming.
std::vector<CensusRecord> load_records(const std::filesystem::path& path);

std::string summary_json(const CensusSummary& s);

}  // namespace psk
