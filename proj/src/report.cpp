#include "fsothz/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fsothz/errors.hpp"

namespace fsothz {

const char* const kToolVersion = "0.1.0";

std::string format_value(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    std::array<char, 40> buf{};
    const auto format = std::abs(value) < 1e-3 ? std::chars_format::scientific
                                               : std::chars_format::fixed;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   format);
    if (ec != std::errc()) {
        // Extremely small magnitudes can overflow the fixed buffer only in
        // fixed format, which the branch above avoids; fall back defensively.
        auto [p2, e2] =
            std::to_chars(buf.data(), buf.data() + buf.size(), value);
        ptr = p2;
    }
    return std::string(buf.data(), ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "axis,strategy,estimate,std_error,ci_low,ci_high,trials,flags\n";
    for (const SweepRow& row : rows) {
        out += format_value(row.axis_value);
        out += ',';
        out += row.strategy;
        out += ',';
        out += format_value(row.estimate.value);
        out += ',';
        out += format_value(row.estimate.std_error);
        out += ',';
        out += format_value(row.estimate.ci_low);
        out += ',';
        out += format_value(row.estimate.ci_high);
        out += ',';
        out += std::to_string(row.estimate.trials);
        out += ',';
        if (row.estimate.low_confidence) {
            out += "low-confidence";
        }
        out += '\n';
    }
    return out;
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::json spec;
    spec["axis"] = to_string(manifest.spec.axis);
    spec["metric"] = to_string(manifest.spec.metric);
    spec["points"] = manifest.spec.points;
    spec["strategies"] = manifest.spec.strategies;
    spec["trials_per_point"] = manifest.spec.trials_per_point;
    // Seeds are full 64-bit values; JSON numbers lose precision past 2^53.
    spec["seed"] = std::to_string(manifest.spec.seed);
    if (std::isnan(manifest.spec.outage_threshold_db)) {
        spec["outage_threshold_db"] = nullptr;
    } else {
        spec["outage_threshold_db"] = manifest.spec.outage_threshold_db;
    }

    nlohmann::json root;
    root["tool_version"] = manifest.tool_version;
    root["study"] = manifest.study;
    root["scenario"] = manifest.scenario_text;
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(manifest.scenario_digest));
    root["scenario_digest"] = digest;
    root["spec"] = spec;
    root["point_seconds"] = manifest.point_seconds;
    return root.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& json_text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& error) {
        throw ConfigError("manifest", error.what());
    }
    try {
        RunManifest manifest;
        manifest.tool_version = root.at("tool_version").get<std::string>();
        manifest.study = root.at("study").get<std::string>();
        manifest.scenario_text = root.at("scenario").get<std::string>();
        const std::string digest =
            root.at("scenario_digest").get<std::string>();
        manifest.scenario_digest = std::stoull(digest, nullptr, 16);

        const nlohmann::json& spec = root.at("spec");
        manifest.spec.axis =
            axis_from_string(spec.at("axis").get<std::string>());
        manifest.spec.metric =
            metric_from_string(spec.at("metric").get<std::string>());
        manifest.spec.points = spec.at("points").get<std::vector<double>>();
        manifest.spec.strategies =
            spec.at("strategies").get<std::vector<std::string>>();
        manifest.spec.trials_per_point =
            spec.at("trials_per_point").get<std::uint64_t>();
        manifest.spec.seed =
            std::stoull(spec.at("seed").get<std::string>(), nullptr, 10);
        if (spec.at("outage_threshold_db").is_null()) {
            manifest.spec.outage_threshold_db =
                std::numeric_limits<double>::quiet_NaN();
        } else {
            manifest.spec.outage_threshold_db =
                spec.at("outage_threshold_db").get<double>();
        }
        if (root.contains("point_seconds")) {
            manifest.point_seconds =
                root.at("point_seconds").get<std::vector<double>>();
        }
        return manifest;
    } catch (const nlohmann::json::exception& error) {
        throw ConfigError("manifest", error.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("manifest", "malformed seed or digest field");
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open `" + temp + "` for writing");
        }
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("short write to `" + temp + "`");
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw std::runtime_error("cannot move `" + temp + "` into place");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw std::runtime_error("cannot read `" + path + "`");
    }
    std::ostringstream content;
    content << input.rdbuf();
    return content.str();
}

} // namespace fsothz
