#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rmrpa/bounds.hpp"
#include "rmrpa/sim_harness.hpp"

namespace rmrpa {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat, ordered key-value record behind every CLI output. JSON keys and CSV
/// headers are identical; doubles are printed with 17 significant digits so
/// both formats round-trip losslessly.
class RunRecord {
public:
    using Value = std::variant<bool, std::int64_t, std::uint64_t, double, std::string>;

    void add(const std::string& key, Value v) { kv_.emplace_back(key, std::move(v)); }
    void add(const std::string& key, const char* v) { add(key, Value{std::string(v)}); }

    const std::vector<std::pair<std::string, Value>>& entries() const { return kv_; }

    std::string to_json() const;  // one object, keys in insertion order
    std::string to_csv() const;   // header line + value line

    /// Header/value pairs of a two-line CSV record (quoting per RFC 4180).
    static std::vector<std::pair<std::string, std::string>> parse_csv(const std::string& text);

    static std::string format_double(double v);  // %.17g

private:
    std::vector<std::pair<std::string, Value>> kv_;
};

/// Current time as ISO-8601 UTC.
std::string utc_timestamp();

/// Record assembly shared by the CLI subcommands. `channel_spec` is the user's
/// original spec string so the record reproduces the run.
RunRecord record_from_sim(const SimResult& res, const std::string& channel_spec);
void append_bound_fields(RunRecord& rec, const BoundReport& rep);

}  // namespace rmrpa
