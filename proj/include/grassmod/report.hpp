#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "grassmod/errors.hpp"
#include "grassmod/version.hpp"

namespace grassmod {

enum class Outcome { Pass, Fail, Inconclusive, Skipped };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Inconclusive: return "inconclusive";
        case Outcome::Skipped: return "skipped";
    }
    return "?";
}

/// Machine-readable result of one named check. Serialization is canonical:
/// UTF-8, keys emitted in sorted order, every scalar a decimal string (exact
/// rationals print as "num/den"), so equal reports are byte-equal. Wall-clock
/// time is recorded but excluded from the canonical bytes unless explicitly
/// requested; reports are otherwise reproducible from (command, seed).
struct CheckReport {
    std::string check_id;
    std::map<std::string, std::string> params;
    Outcome outcome = Outcome::Fail;
    std::string skip_reason;
    std::optional<std::string> witness;
    std::uint64_t seed = 0;
    std::uint64_t runtime_ms = 0;
    std::string tool_version = kToolVersion;
    std::uint32_t cache_format = kCacheFormatVersion;

    int exit_code() const {
        switch (outcome) {
            case Outcome::Pass: return 0;
            case Outcome::Fail: return 2;
            case Outcome::Inconclusive: return 3;
            case Outcome::Skipped: return 4;
        }
        return 1;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        out.reserve(s.size() + 2);
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        return out;
    }

    /// Keys in alphabetical order; `skip_reason` only when skipped, `witness`
    /// only when present, `runtime_ms` zeroed unless include_timings.
    std::string to_json(bool include_timings = false) const {
        std::string j = "{";
        j += "\"cache_format\":\"" + std::to_string(cache_format) + "\",";
        j += "\"check_id\":\"" + escape(check_id) + "\",";
        j += "\"outcome\":\"" + std::string(outcome_name(outcome)) + "\",";
        j += "\"params\":{";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) j += ",";
            first = false;
            j += "\"" + escape(k) + "\":\"" + escape(v) + "\"";
        }
        j += "},";
        j += "\"runtime_ms\":\"" + std::to_string(include_timings ? runtime_ms : 0) + "\",";
        j += "\"seed\":\"" + std::to_string(seed) + "\"";
        if (outcome == Outcome::Skipped) j += ",\"skip_reason\":\"" + escape(skip_reason) + "\"";
        j += ",\"tool_version\":\"" + escape(tool_version) + "\"";
        if (witness) j += ",\"witness\":\"" + escape(*witness) + "\"";
        j += "}";
        return j;
    }

    static CheckReport from_json(const std::string& text) {
        nlohmann::json j = nlohmann::json::parse(text);
        CheckReport r;
        r.cache_format = std::uint32_t(std::stoul(j.at("cache_format").get<std::string>()));
        r.check_id = j.at("check_id").get<std::string>();
        std::string oc = j.at("outcome").get<std::string>();
        if (oc == "pass")
            r.outcome = Outcome::Pass;
        else if (oc == "fail")
            r.outcome = Outcome::Fail;
        else if (oc == "inconclusive")
            r.outcome = Outcome::Inconclusive;
        else if (oc == "skipped")
            r.outcome = Outcome::Skipped;
        else
            fail(Errc::BadParams, "unknown outcome " + oc);
        for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
            r.params[it.key()] = it.value().get<std::string>();
        r.runtime_ms = std::stoull(j.at("runtime_ms").get<std::string>());
        r.seed = std::stoull(j.at("seed").get<std::string>());
        if (j.contains("skip_reason")) r.skip_reason = j.at("skip_reason").get<std::string>();
        r.tool_version = j.at("tool_version").get<std::string>();
        if (j.contains("witness")) r.witness = j.at("witness").get<std::string>();
        return r;
    }
};

}  // namespace grassmod
