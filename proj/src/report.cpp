#include "assoc/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "assoc/errors.hpp"

namespace assoc {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::error: return "error";
    }
    return "unknown";
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "jsonl") return ReportFormat::jsonl;
    if (name == "text") return ReportFormat::text;
    throw config_error("unknown report format '" + name + "'");
}

std::string report_body(const RunReport& report, ReportFormat format) {
    std::string out;
    switch (format) {
        case ReportFormat::csv: {
            out += "check,verdict,stat,value\n";
            for (const auto& c : report.checks) {
                if (c.stats.empty())
                    out += c.name + "," + verdict_name(c.verdict) + ",,\n";
                for (const auto& [k, v] : c.stats)
                    out += c.name + "," + verdict_name(c.verdict) + "," + k + "," +
                           fmt_double(v) + "\n";
            }
            out += "config_hash,," + report.config_hash + ",\n";
            out += "version,," + report.version + ",\n";
            break;
        }
        case ReportFormat::jsonl: {
            for (const auto& c : report.checks) {
                nlohmann::ordered_json j;
                j["check"] = c.name;
                j["verdict"] = verdict_name(c.verdict);
                nlohmann::ordered_json stats = nlohmann::ordered_json::object();
                for (const auto& [k, v] : c.stats) stats[k] = v;
                j["stats"] = stats;
                if (!c.message.empty()) j["message"] = c.message;
                out += j.dump() + "\n";
            }
            nlohmann::ordered_json meta;
            meta["config_hash"] = report.config_hash;
            meta["version"] = report.version;
            out += meta.dump() + "\n";
            break;
        }
        case ReportFormat::text: {
            for (const auto& c : report.checks) {
                out += c.name;
                out += ' ';
                out += verdict_name(c.verdict);
                if (!c.stats.empty())
                    out += " " + c.stats.front().first + "=" + fmt_short(c.stats.front().second);
                if (!c.message.empty()) out += " (" + c.message + ")";
                out += '\n';
            }
            out += "config_hash " + report.config_hash + "\n";
            out += "version " + report.version + "\n";
            break;
        }
    }
    return out;
}

void emit_report(const RunReport& report, const std::string& out_dir, ReportFormat format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw io_error("emit_report: cannot create " + out_dir);

    const char* ext = format == ReportFormat::csv    ? "csv"
                      : format == ReportFormat::jsonl ? "jsonl"
                                                      : "txt";
    const fs::path body_path = fs::path(out_dir) / (std::string("report.") + ext);
    {
        std::ofstream out(body_path, std::ios::binary);
        if (!out) throw io_error("emit_report: cannot write " + body_path.string());
        out << report_body(report, format);
    }

    // Timestamps and runtimes live here, never in the body.
    const fs::path meta_path = fs::path(out_dir) / "run_meta.txt";
    std::ofstream meta(meta_path, std::ios::binary);
    if (!meta) throw io_error("emit_report: cannot write " + meta_path.string());
    const auto now = std::chrono::system_clock::now();
    meta << "written_unix_ms "
         << std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count()
         << "\n";
    for (const auto& c : report.checks)
        meta << "runtime_seconds " << c.name << " " << fmt_short(c.runtime_seconds) << "\n";
}

int report_exit_code(const RunReport& report) {
    int code = 0;
    for (const auto& c : report.checks) {
        if (c.verdict == Verdict::error) return 2;
        if (c.verdict == Verdict::fail) code = 1;
    }
    return code;
}

std::string config_hash_hex(const std::string& raw_text) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : raw_text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace assoc
