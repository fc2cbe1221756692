#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "felsim/sim/time.hpp"

namespace felsim::harness {

inline constexpr std::string_view kMetricsHeader =
    "scenario,run_seed,requester,request_id,content_name,issue_ms,satisfy_ms,latency_ms,served_by,"
    "cache_hit_node_kind,link_kind,scheme,epoch_candidate";
inline constexpr std::string_view kCountersHeader = "scenario,run_seed,counter,value";
inline constexpr std::string_view kEpochsHeader =
    "scenario,run_seed,domain,epoch,taken_ms,candidate,reward,reward_initial,reward_carried,epsilon,event_driven,pins";

// One satisfied request.
struct MetricsRow {
    std::string scenario;
    std::uint64_t run_seed = 0;
    std::string requester;
    std::uint64_t request_id = 0;
    std::string content_name;
    Millis issue_ms = 0;
    Millis satisfy_ms = 0;
    Millis latency_ms = 0;
    std::string served_by;
    std::string cache_hit_node_kind;
    std::string link_kind;
    std::string scheme;
    std::string epoch_candidate;

    bool operator==(const MetricsRow&) const = default;
};

struct CounterRow {
    std::string scenario;
    std::uint64_t run_seed = 0;
    std::string counter;
    std::uint64_t value = 0;

    bool operator==(const CounterRow&) const = default;
};

struct EpochRow {
    std::string scenario;
    std::uint64_t run_seed = 0;
    std::string domain;
    std::uint64_t epoch = 0;
    Millis taken_ms = 0;
    std::string candidate;
    double reward = 0.0;
    bool reward_initial = false;
    bool reward_carried = false;
    double epsilon = 0.0;
    bool event_driven = false;
    // "node:/name node:/name ..." sorted by node then name.
    std::string pins;
};

struct MetricsTable {
    std::vector<MetricsRow> rows;
    std::vector<CounterRow> counters;
    std::vector<EpochRow> epochs;

    /// Appends another table (the next seed block) behind this one.
    void append(MetricsTable other);
};

/// Orders by (issue_ms, requester, request_id), then scenario and run_seed.
void sort_rows(std::vector<MetricsRow>& rows);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

void write_metrics(std::ostream& out, const std::vector<MetricsRow>& rows);
void write_counters(std::ostream& out, const std::vector<CounterRow>& rows);
void write_epochs(std::ostream& out, const std::vector<EpochRow>& rows);

/// Throws IoError on a malformed file or a header mismatch.
std::vector<MetricsRow> read_metrics(std::istream& in);
std::vector<CounterRow> read_counters(std::istream& in);

/// Splits one CSV record; `in` is positioned after it. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields);

/// Writes metrics.csv, counters.csv and epochs.csv into `dir` (created if missing). Throws IoError.
void write_csv(const MetricsTable& table, const std::string& dir);
/// Writes just the metrics rows to `path`. Throws IoError.
void write_metrics_file(const std::vector<MetricsRow>& rows, const std::string& path);

} // namespace felsim::harness
