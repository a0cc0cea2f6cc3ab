#include "fsothz/scenario.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>

#include "fsothz/errors.hpp"

namespace fsothz {
namespace {

struct FieldDef {
    const char* key;
    bool is_int;
    double* (*dref)(Scenario&);
    int* (*iref)(Scenario&);
};

#define DFIELD(name, expr) \
    {name, false, [](Scenario& s) -> double* { return &s.expr; }, nullptr}
#define IFIELD(name, expr) \
    {name, true, nullptr, [](Scenario& s) -> int* { return &s.expr; }}

// Sorted by key; serialize_scenario emits in this order.
constexpr FieldDef kFields[] = {
    DFIELD("atmosphere.humidity", atmosphere.humidity),
    DFIELD("atmosphere.pressure_pa", atmosphere.pressure_pa),
    DFIELD("atmosphere.temperature_k", atmosphere.temperature_k),
    DFIELD("fso.alpha_f", fso.alpha_f),
    DFIELD("fso.beamwidth_m", fso.beamwidth_m),
    DFIELD("fso.beta_f", fso.beta_f),
    DFIELD("fso.cn2", fso.cn2),
    DFIELD("fso.conversion_coeff", fso.conversion_coeff),
    DFIELD("fso.jitter_sigma_m", fso.jitter_sigma_m),
    DFIELD("fso.receiver_radius_m", fso.receiver_radius_m),
    DFIELD("fso.visibility_km", fso.visibility_km),
    DFIELD("fso.wavelength_m", fso.wavelength_m),
    DFIELD("geometry.hop_length_m", geometry.hop_length_m),
    DFIELD("geometry.node_height_m", geometry.node_height_m),
    DFIELD("geometry.ue_height_m", geometry.ue_height_m),
    DFIELD("mmwave.frequency_hz", mmwave.frequency_hz),
    DFIELD("mmwave.m", mmwave.m),
    IFIELD("mmwave.n_rx", mmwave.n_rx),
    IFIELD("mmwave.n_tx", mmwave.n_tx),
    DFIELD("mmwave.oxygen_db_per_km", mmwave.oxygen_db_per_km),
    DFIELD("mmwave.rain_db_per_km", mmwave.rain_db_per_km),
    DFIELD("mmwave.rx_gain_db", mmwave.rx_gain_db),
    DFIELD("mmwave.tx_gain_db", mmwave.tx_gain_db),
    DFIELD("mmwave.tx_snr_db", mmwave.tx_snr_db),
    DFIELD("service.rate_per_ue", service.rate_per_ue),
    DFIELD("service.tx_snr_db", service.tx_snr_db),
    IFIELD("service.ues_per_node", service.ues_per_node),
    DFIELD("subthz.alpha", subthz.alpha),
    DFIELD("subthz.beamwidth_m", subthz.beamwidth_m),
    DFIELD("subthz.frequency_hz", subthz.frequency_hz),
    DFIELD("subthz.jitter_sigma_m", subthz.jitter_sigma_m),
    DFIELD("subthz.mu", subthz.mu),
    IFIELD("subthz.n_rx", subthz.n_rx),
    IFIELD("subthz.n_tx", subthz.n_tx),
    DFIELD("subthz.receiver_radius_m", subthz.receiver_radius_m),
    DFIELD("subthz.rx_gain_db", subthz.rx_gain_db),
    DFIELD("subthz.tx_gain_db", subthz.tx_gain_db),
    DFIELD("switching.fso_lower_db", switching.fso_lower_db),
    DFIELD("switching.fso_upper_db", switching.fso_upper_db),
    DFIELD("switching.subthz_db", switching.subthz_db),
};

#undef DFIELD
#undef IFIELD

const FieldDef* find_field(std::string_view key) {
    for (const FieldDef& field : kFields) {
        if (key == field.key) {
            return &field;
        }
    }
    return nullptr;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

void assign_field(Scenario& scenario, const FieldDef& field,
                  std::string_view value_text, const std::string& where) {
    const char* begin = value_text.data();
    const char* end = begin + value_text.size();
    if (field.is_int) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end) {
            throw ConfigError(field.key, "expected an integer" + where);
        }
        *field.iref(scenario) = value;
    } else {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end) {
            throw ConfigError(field.key, "expected a number" + where);
        }
        *field.dref(scenario) = value;
    }
}

void parse_assignment(Scenario& scenario, std::string_view line,
                      const std::string& where, bool* seen) {
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("", "expected `key = value`" + where);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value_text = trim(line.substr(eq + 1));
    if (key.empty()) {
        throw ConfigError("", "missing key before `=`" + where);
    }
    const FieldDef* field = find_field(key);
    if (field == nullptr) {
        throw ConfigError(std::string(key), "unknown key" + where);
    }
    if (seen != nullptr) {
        const std::size_t index = static_cast<std::size_t>(field - kFields);
        if (seen[index]) {
            throw ConfigError(field->key, "duplicate key" + where);
        }
        seen[index] = true;
    }
    assign_field(scenario, *field, value_text, where);
}

void check(bool ok, const char* key, const char* message) {
    if (!ok) {
        throw ConfigError(key, message);
    }
}

std::string format_number(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

} // namespace

Scenario table_defaults() { return Scenario{}; }

Scenario parse_scenario(const std::string& text) {
    Scenario scenario;
    bool seen[std::size(kFields)] = {};
    std::istringstream input(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(input, raw_line)) {
        ++line_no;
        std::string_view line = raw_line;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        parse_assignment(scenario, line, " (line " + std::to_string(line_no) + ")",
                         seen);
    }
    validate_scenario(scenario);
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw ConfigError(path, "cannot read scenario file");
    }
    std::ostringstream content;
    content << input.rdbuf();
    return parse_scenario(content.str());
}

std::string serialize_scenario(const Scenario& scenario) {
    Scenario copy = scenario;
    std::string out;
    for (const FieldDef& field : kFields) {
        out += field.key;
        out += " = ";
        if (field.is_int) {
            out += std::to_string(*field.iref(copy));
        } else {
            out += format_number(*field.dref(copy));
        }
        out += '\n';
    }
    return out;
}

void apply_override(Scenario& scenario, const std::string& assignment) {
    parse_assignment(scenario, assignment, "", nullptr);
}

void validate_scenario(const Scenario& s) {
    check(s.fso.wavelength_m > 0, "fso.wavelength_m", "must be positive");
    check(s.fso.cn2 > 0, "fso.cn2", "must be positive");
    check(s.fso.alpha_f > 0, "fso.alpha_f", "must be positive");
    check(s.fso.beta_f > 0, "fso.beta_f", "must be positive");
    check(s.fso.conversion_coeff > 0, "fso.conversion_coeff", "must be positive");
    check(s.fso.receiver_radius_m > 0, "fso.receiver_radius_m", "must be positive");
    check(s.fso.beamwidth_m > 0, "fso.beamwidth_m", "must be positive");
    check(s.fso.jitter_sigma_m > 0, "fso.jitter_sigma_m", "must be positive");
    check(s.fso.visibility_km > 0, "fso.visibility_km", "must be positive");

    check(s.subthz.frequency_hz > 0, "subthz.frequency_hz", "must be positive");
    check(s.subthz.frequency_hz <= 450e9, "subthz.frequency_hz",
          "beyond the 450 GHz validity limit of the absorption model");
    check(s.subthz.alpha > 0, "subthz.alpha", "must be positive");
    check(s.subthz.mu > 0, "subthz.mu", "must be positive");
    check(s.subthz.n_tx >= 1, "subthz.n_tx", "must be at least 1");
    check(s.subthz.n_rx >= 1, "subthz.n_rx", "must be at least 1");
    check(s.subthz.receiver_radius_m > 0, "subthz.receiver_radius_m",
          "must be positive");
    check(s.subthz.beamwidth_m > 0, "subthz.beamwidth_m", "must be positive");
    check(s.subthz.jitter_sigma_m > 0, "subthz.jitter_sigma_m",
          "must be positive");

    check(s.mmwave.frequency_hz > 0, "mmwave.frequency_hz", "must be positive");
    check(s.mmwave.m >= 0.5, "mmwave.m", "must be at least 0.5");
    check(s.mmwave.n_tx >= 1, "mmwave.n_tx", "must be at least 1");
    check(s.mmwave.n_rx >= 1, "mmwave.n_rx", "must be at least 1");
    check(s.mmwave.oxygen_db_per_km >= 0, "mmwave.oxygen_db_per_km",
          "must be non-negative");
    check(s.mmwave.rain_db_per_km >= 0, "mmwave.rain_db_per_km",
          "must be non-negative");

    check(s.atmosphere.pressure_pa >= 0, "atmosphere.pressure_pa",
          "must be non-negative");
    check(s.atmosphere.temperature_k > 0, "atmosphere.temperature_k",
          "must be positive");
    check(s.atmosphere.humidity >= 0 && s.atmosphere.humidity <= 1,
          "atmosphere.humidity", "must lie in [0, 1]");

    check(s.geometry.node_height_m >= 0, "geometry.node_height_m",
          "must be non-negative");
    check(s.geometry.ue_height_m >= 0, "geometry.ue_height_m",
          "must be non-negative");
    check(s.geometry.hop_length_m >= 1, "geometry.hop_length_m",
          "must be at least 1 m");

    check(s.service.ues_per_node >= 1, "service.ues_per_node",
          "must be at least 1");
    check(s.service.rate_per_ue > 0, "service.rate_per_ue", "must be positive");
    check(std::isfinite(s.service.tx_snr_db), "service.tx_snr_db",
          "must be finite");
    check(std::isfinite(s.mmwave.tx_snr_db), "mmwave.tx_snr_db",
          "must be finite");

    check(s.switching.fso_upper_db >= s.switching.fso_lower_db,
          "switching.fso_upper_db", "must be at least switching.fso_lower_db");
}

double node_threshold_snr(int ues, double rate_per_ue) {
    if (ues < 1) {
        throw ParameterError("node_threshold_snr: ues must be at least 1");
    }
    if (!(rate_per_ue > 0)) {
        throw ParameterError("node_threshold_snr: rate_per_ue must be positive");
    }
    return std::exp2(ues * rate_per_ue) - 1.0;
}

double ue_threshold_snr(double rate_per_ue) {
    if (!(rate_per_ue > 0)) {
        throw ParameterError("ue_threshold_snr: rate_per_ue must be positive");
    }
    return std::exp2(rate_per_ue) - 1.0;
}

} // namespace fsothz
