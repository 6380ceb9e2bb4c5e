#pragma once

#include <string>
#include <utility>
#include <vector>

namespace assoc {

enum class Verdict { pass, fail, error };

const char* verdict_name(Verdict v);

struct CheckRecord {
    std::string name;
    Verdict verdict = Verdict::error;
    std::vector<std::pair<std::string, double>> stats;  // ordered, deterministic
    std::string message;                                // error text when verdict == error
    double runtime_seconds = 0.0;                       // sidecar only, never in the body
};

struct RunReport {
    std::vector<CheckRecord> checks;
    std::string config_hash;
    std::string version;
};

enum class ReportFormat { csv, jsonl, text };

ReportFormat parse_report_format(const std::string& name);

// Deterministic report body. csv: long format with columns
// check,verdict,stat,value (one row per stat); jsonl: one object per check;
// text: one line per check "NAME verdict worst-stat".
std::string report_body(const RunReport& report, ReportFormat format);

// Writes report.<ext> plus the run_meta.txt sidecar (timestamps, runtimes)
// into out_dir, creating it if needed.
void emit_report(const RunReport& report, const std::string& out_dir, ReportFormat format);

// 0 = all pass, 1 = at least one failed check, 2 = any check errored.
int report_exit_code(const RunReport& report);

// FNV-1a of the raw config text, hex encoded.
std::string config_hash_hex(const std::string& raw_text);

}  // namespace assoc
