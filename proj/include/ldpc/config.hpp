#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "ldpc/errors.hpp"
#include "ldpc/reliability.hpp"

namespace ldpc {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "40 PB", "1Gbps", "15 min", "1 year", or a bare number in base units.
inline double parse_quantity(const std::string& raw) {
    std::string s = trim(raw);
    std::size_t i = 0;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '-' ||
                            s[i] == '+' || s[i] == 'e' || s[i] == 'E'))
        ++i;
    // 'e'/'E' may start a unit rather than an exponent; back off if not followed by digits/sign
    while (i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') &&
           !(i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' || s[i] == '+')))
        --i;
    double value;
    try {
        value = std::stod(s.substr(0, i));
    } catch (...) {
        throw ConfigError("cannot parse number: '" + raw + "'");
    }
    std::string unit = trim(s.substr(i));
    if (unit.empty()) return value;

    static const std::map<std::string, double> kScale = {
        {"B", 1.0},       {"KB", 1e3},      {"MB", 1e6},      {"GB", 1e9},
        {"TB", 1e12},     {"PB", 1e15},     {"EB", 1e18},
        {"bps", 1.0},     {"Kbps", 1e3},    {"Mbps", 1e6},    {"Gbps", 1e9},   {"Tbps", 1e12},
        {"s", 1.0},       {"sec", 1.0},     {"min", 60.0},    {"h", 3600.0},
        {"hour", 3600.0}, {"day", kSecondsPerDay}, {"days", kSecondsPerDay},
        {"year", kSecondsPerYear}, {"years", kSecondsPerYear},
    };
    auto it = kScale.find(unit);
    if (it == kScale.end()) throw ConfigError("unknown unit '" + unit + "' in '" + raw + "'");
    return value * it->second;
}

} // namespace detail

/// Flat key=value system config; '#' comments. Keys match the parameter
/// table: C, B, N_disk, S, r_node, T_t, mttf. Values accept unit suffixes
/// (PB, MB, Gbps, min, year) or base units (bytes, bits/s, seconds).
inline StorageSystemParams parse_system_config(std::istream& in) {
    StorageSystemParams params; // defaults are the reference table values
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key=value: '" + line + "'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "C")
            params.total_data_bytes = detail::parse_quantity(value);
        else if (key == "B")
            params.block_bytes = detail::parse_quantity(value);
        else if (key == "N_disk")
            params.disk_count = detail::parse_quantity(value);
        else if (key == "S")
            params.disk_capacity_bytes = detail::parse_quantity(value);
        else if (key == "r_node")
            params.node_bandwidth_bps = detail::parse_quantity(value);
        else if (key == "T_t")
            params.trigger_time_s = detail::parse_quantity(value);
        else if (key == "mttf" || key == "MTTF")
            params.mttf_s = detail::parse_quantity(value);
        else
            throw ConfigError("unknown config key '" + key + "' on line " + std::to_string(lineno));
    }
    params.check_valid();
    return params;
}

inline StorageSystemParams load_system_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_system_config(in);
}

// FNV-1a, for the reproducibility stamp on CSV output.
inline std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ldpc
