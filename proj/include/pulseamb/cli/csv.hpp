// Copyright 2026 The pulseamb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ios>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pulseamb/cli/scenario.hpp"

namespace pulseamb::cli {

/// Shortest round-trip decimal; non-finite values become `inf`, `-inf`,
/// `nan`.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

/// One CSV dataset, kept in memory until the run finishes so that every
/// file's header can carry the checksums of all outputs.
class Table {
public:
    Table(std::string name, std::vector<std::string> columns) : name_(std::move(name)), columns_(std::move(columns)) {
        append_line(columns_);
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t columns() const noexcept { return columns_.size(); }
    std::size_t rows() const noexcept { return rows_; }
    /// Column header plus data rows; what the checksum covers.
    const std::string& data() const noexcept { return data_; }

    /// A CSV field: a number (formatted shortest round-trip) or a token.
    struct Cell {
        Cell(double v) : text(format_number(v)) {}
        Cell(std::string_view s) : text(s) {}
        Cell(const char* s) : text(s) {}
        std::string text;
    };

    void add_row(const std::vector<Cell>& cells) {
        if (cells.size() != columns_.size()) throw std::logic_error("csv row width mismatch in " + name_);
        std::vector<std::string> fields;
        fields.reserve(cells.size());
        for (const auto& c : cells) fields.push_back(c.text);
        append_line(fields);
        ++rows_;
    }

private:
    void append_line(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) data_ += ',';
            data_ += fields[i];
        }
        data_ += '\n';
    }

    std::string name_;
    std::vector<std::string> columns_;
    std::string data_;
    std::size_t rows_ = 0;
};

/// Unwritable output path.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string scenario_hash;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    double wall_clock_s = 0.0;
    std::vector<std::pair<std::string, std::string>> checksums;  ///< file name, fnv1a64 of its data section

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["tool_version"] = tool_version;
        j["command"] = command;
        j["scenario_hash"] = scenario_hash;
        j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
        j["threads"] = threads;
        j["wall_clock_s"] = wall_clock_s;
        j["outputs"] = nlohmann::json::array();
        for (const auto& [file, sum] : checksums) j["outputs"].push_back({{"file", file}, {"checksum", sum}});
        return j;
    }

    std::string header() const {
        std::string h;
        auto line = [&](std::string_view k, const std::string& v) {
            h += "# ";
            h += k;
            h += ": ";
            h += v;
            h += '\n';
        };
        line("tool_version", tool_version);
        line("command", command);
        line("scenario_hash", scenario_hash);
        line("seed", seed ? std::to_string(*seed) : "none");
        line("threads", std::to_string(threads));
        line("wall_clock_s", format_number(wall_clock_s));
        for (const auto& [file, sum] : checksums) line("checksum " + file, sum);
        return h;
    }
};

inline std::string data_checksum(const Table& t) { return hex64(fnv1a64(t.data())); }

/// Strips the `#` header lines of a written CSV, leaving the data section.
inline std::string data_section(std::string_view csv) {
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t end = csv.find('\n', pos);
        if (end == std::string_view::npos) end = csv.size() - 1;
        if (csv[pos] != '#') out.append(csv.substr(pos, end - pos + 1));
        pos = end + 1;
    }
    return out;
}

namespace detail {

inline void write_file(const std::string& path, std::string_view a, std::string_view b = {}) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out.write(a.data(), static_cast<std::streamsize>(a.size()));
    out.write(b.data(), static_cast<std::streamsize>(b.size()));
    out.close();
    if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace detail

/// Writes `<prefix><name>` for every table and `<prefix>manifest.json`.
/// Returns the paths written, manifest last.
inline std::vector<std::string> write_outputs(const std::string& prefix, const std::vector<Table>& tables,
                                              RunManifest manifest) {
    manifest.checksums.clear();
    for (const auto& t : tables) manifest.checksums.emplace_back(t.name(), data_checksum(t));
    const std::string header = manifest.header();
    std::vector<std::string> paths;
    for (const auto& t : tables) {
        paths.push_back(prefix + t.name());
        detail::write_file(paths.back(), header, t.data());
    }
    paths.push_back(prefix + "manifest.json");
    detail::write_file(paths.back(), manifest.to_json().dump(2) + "\n");
    return paths;
}

}  // namespace pulseamb::cli
