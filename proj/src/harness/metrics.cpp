#include "felsim/harness/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include "felsim/error.hpp"

namespace felsim::harness {

void MetricsTable::append(MetricsTable other) {
    rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()), std::make_move_iterator(other.rows.end()));
    counters.insert(counters.end(), std::make_move_iterator(other.counters.begin()),
                    std::make_move_iterator(other.counters.end()));
    epochs.insert(epochs.end(), std::make_move_iterator(other.epochs.begin()), std::make_move_iterator(other.epochs.end()));
}

void sort_rows(std::vector<MetricsRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        return std::tie(a.issue_ms, a.requester, a.request_id, a.scenario, a.run_seed) <
               std::tie(b.issue_ms, b.requester, b.request_id, b.scenario, b.run_seed);
    });
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename Int>
Int parse_int(const std::string& s, std::size_t line, const char* column) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw IoError("record " + std::to_string(line) + ": bad " + column + " '" + s + "'");
    }
    return v;
}

void expect_header(std::istream& in, std::string_view header) {
    std::vector<std::string> fields;
    if (!read_record(in, fields)) throw IoError("missing header");
    std::string joined;
    for (std::size_t i = 0; i < fields.size(); ++i) joined += (i ? "," : "") + fields[i];
    if (joined != header) throw IoError("unexpected header '" + joined + "'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace

void write_metrics(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << kMetricsHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.scenario) << ',' << r.run_seed << ',' << csv_field(r.requester) << ',' << r.request_id << ','
            << csv_field(r.content_name) << ',' << r.issue_ms << ',' << r.satisfy_ms << ',' << r.latency_ms << ','
            << csv_field(r.served_by) << ',' << csv_field(r.cache_hit_node_kind) << ',' << csv_field(r.link_kind) << ','
            << csv_field(r.scheme) << ',' << csv_field(r.epoch_candidate) << '\n';
    }
}

void write_counters(std::ostream& out, const std::vector<CounterRow>& rows) {
    out << kCountersHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.scenario) << ',' << r.run_seed << ',' << csv_field(r.counter) << ',' << r.value << '\n';
    }
}

void write_epochs(std::ostream& out, const std::vector<EpochRow>& rows) {
    out << kEpochsHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.scenario) << ',' << r.run_seed << ',' << csv_field(r.domain) << ',' << r.epoch << ','
            << r.taken_ms << ',' << csv_field(r.candidate) << ',' << format_real(r.reward) << ','
            << (r.reward_initial ? 1 : 0) << ',' << (r.reward_carried ? 1 : 0) << ',' << format_real(r.epsilon) << ','
            << (r.event_driven ? 1 : 0) << ',' << csv_field(r.pins) << '\n';
    }
}

bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;;) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) {
            if (quoted) throw IoError("unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && field.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else if (ch == '\r' && in.peek() == '\n') {
            throw IoError("CRLF line endings are not accepted");
        } else {
            if (was_quoted) throw IoError("text after closing quote");
            field += ch;
        }
    }
}

std::vector<MetricsRow> read_metrics(std::istream& in) {
    expect_header(in, kMetricsHeader);
    std::vector<MetricsRow> rows;
    std::vector<std::string> f;
    for (std::size_t line = 2; read_record(in, f); ++line) {
        if (f.size() != 13) throw IoError("record " + std::to_string(line) + ": expected 13 fields, got " + std::to_string(f.size()));
        MetricsRow r;
        r.scenario = f[0];
        r.run_seed = parse_int<std::uint64_t>(f[1], line, "run_seed");
        r.requester = f[2];
        r.request_id = parse_int<std::uint64_t>(f[3], line, "request_id");
        r.content_name = f[4];
        r.issue_ms = parse_int<Millis>(f[5], line, "issue_ms");
        r.satisfy_ms = parse_int<Millis>(f[6], line, "satisfy_ms");
        r.latency_ms = parse_int<Millis>(f[7], line, "latency_ms");
        r.served_by = f[8];
        r.cache_hit_node_kind = f[9];
        r.link_kind = f[10];
        r.scheme = f[11];
        r.epoch_candidate = f[12];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<CounterRow> read_counters(std::istream& in) {
    expect_header(in, kCountersHeader);
    std::vector<CounterRow> rows;
    std::vector<std::string> f;
    for (std::size_t line = 2; read_record(in, f); ++line) {
        if (f.size() != 4) throw IoError("record " + std::to_string(line) + ": expected 4 fields");
        rows.push_back(CounterRow{f[0], parse_int<std::uint64_t>(f[1], line, "run_seed"), f[2],
                                  parse_int<std::uint64_t>(f[3], line, "value")});
    }
    return rows;
}

void write_metrics_file(const std::vector<MetricsRow>& rows, const std::string& path) {
    auto out = open_out(path);
    write_metrics(out, rows);
    close_out(out, path);
}

void write_csv(const MetricsTable& table, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
    const auto base = std::filesystem::path(dir);
    write_metrics_file(table.rows, (base / "metrics.csv").string());
    {
        const auto path = (base / "counters.csv").string();
        auto out = open_out(path);
        write_counters(out, table.counters);
        close_out(out, path);
    }
    {
        const auto path = (base / "epochs.csv").string();
        auto out = open_out(path);
        write_epochs(out, table.epochs);
        close_out(out, path);
    }
}

} // namespace felsim::harness
