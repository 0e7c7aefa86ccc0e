#include "rmrpa/run_record.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace rmrpa {

std::string RunRecord::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string RunRecord::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [key, value] : kv_) {
        std::visit([&, k = key](const auto& v) { j[k] = v; }, value);
    }
    return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string RunRecord::to_csv() const {
    std::string header, row;
    for (std::size_t i = 0; i < kv_.size(); ++i) {
        if (i) {
            header += ',';
            row += ',';
        }
        header += csv_escape(kv_[i].first);
        row += csv_escape(std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
                else if constexpr (std::is_same_v<T, std::string>) return v;
                else if constexpr (std::is_same_v<T, double>) return format_double(v);
                else return std::to_string(v);
            },
            kv_[i].second));
    }
    return header + "\n" + row + "\n";
}

std::vector<std::pair<std::string, std::string>> RunRecord::parse_csv(const std::string& text) {
    const auto nl = text.find('\n');
    if (nl == std::string::npos) throw std::invalid_argument("csv record: need two lines");
    auto rest = text.substr(nl + 1);
    if (!rest.empty() && rest.back() == '\n') rest.pop_back();
    const auto keys = split_csv_line(text.substr(0, nl));
    const auto vals = split_csv_line(rest);
    if (keys.size() != vals.size())
        throw std::invalid_argument("csv record: header/value count mismatch");
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) out.emplace_back(keys[i], vals[i]);
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunRecord record_from_sim(const SimResult& res, const std::string& channel_spec) {
    const SimConfig& cfg = res.config_echo;
    RunRecord rec;
    rec.add("timestamp_utc", utc_timestamp());
    rec.add("tool_version", kToolVersion);
    rec.add("m", std::int64_t(cfg.code.m));
    rec.add("r", std::int64_t(cfg.code.r));
    rec.add("n", std::uint64_t(cfg.code.n));
    rec.add("k", std::uint64_t(cfg.code.k));
    rec.add("channel", channel_spec);
    rec.add("trials", cfg.trials);
    rec.add("seed", cfg.seed);
    rec.add("n_max", std::int64_t(cfg.n_max));
    rec.add("all_zeros_mode", cfg.all_zeros_mode);
    rec.add("max_frame_errors", cfg.max_frame_errors);
    rec.add("workers", std::int64_t(cfg.workers));
    rec.add("llr_clamp", cfg.llr_clamp);
    rec.add("trials_run", res.trials_run);
    rec.add("frame_errors", res.frame_errors);
    rec.add("bit_errors", res.bit_errors);
    rec.add("fer", res.fer);
    rec.add("ber", res.ber);
    rec.add("fer_ci95_low", res.fer_ci95.first);
    rec.add("fer_ci95_high", res.fer_ci95.second);
    rec.add("truncated", res.truncated);
    rec.add("wall_seconds", res.wall_seconds);
    return rec;
}

void append_bound_fields(RunRecord& rec, const BoundReport& rep) {
    rec.add("bound_z", rep.z);
    for (std::size_t i = 0; i < rep.z_seq.size(); ++i)
        rec.add("bound_z_" + std::to_string(i + 1), rep.z_seq[i]);
    for (std::size_t i = 0; i < rep.n_seq.size(); ++i)
        rec.add("bound_n_" + std::to_string(i + 1), rep.n_seq[i]);
    rec.add("bound_log_q1", rep.log_q1);
    rec.add("bound_q1_clamped", rep.q1_clamped);
    for (std::size_t i = 0; i < rep.log_a_terms.size(); ++i)
        rec.add("bound_log_a_" + std::to_string(i + 2), rep.log_a_terms[i]);
    for (std::size_t i = 0; i < rep.log_b_terms.size(); ++i)
        rec.add("bound_log_b_" + std::to_string(i + 2), rep.log_b_terms[i]);
    for (std::size_t i = 0; i < rep.log_q_seq.size(); ++i) {
        rec.add("bound_log_q_" + std::to_string(i + 2), rep.log_q_seq[i]);
        rec.add("bound_q_" + std::to_string(i + 2) + "_clamped", rep.q_seq_clamped[i]);
    }
    rec.add("bound_log_q_r", rep.log_q_r);
    rec.add("bound_q_r_clamped", rep.q_r_clamped);
    rec.add("bound_vacuous", rep.vacuous);
    rec.add("threshold", rep.threshold);
    rec.add("r_below_threshold", rep.r_below_threshold);
}

}  // namespace rmrpa
