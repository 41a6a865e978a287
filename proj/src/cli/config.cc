// Copyright 2026 The qfridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfridge/cli.h"

namespace qfridge::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (;;) {
        size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double to_double(std::string_view text, std::string_view what) {
    text = trim(text);
    std::string owned(text);
    char *end = nullptr;
    double v = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v)) {
        throw UsageError("'" + owned + "' is not a number (" + std::string(what) + ")");
    }
    return v;
}

uint64_t to_u64(std::string_view text, std::string_view what) {
    text = trim(text);
    // Accept scientific notation for large counts such as 1e10.
    if (text.find_first_of("eE.") != std::string_view::npos) {
        double v = to_double(text, what);
        if (v < 0 || v != std::floor(v) || v > 1.8e19) {
            throw UsageError("'" + std::string(text) + "' is not a nonnegative integer (" + std::string(what) + ")");
        }
        return static_cast<uint64_t>(v);
    }
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("'" + std::string(text) + "' is not a nonnegative integer (" + std::string(what) + ")");
    }
    return v;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

Config Config::parse(std::string_view text) {
    if (std::string_view body = trim(text); !body.empty() && body.front() == '{') {
        Config cfg;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception &e) {
            throw UsageError(std::string("config JSON: ") + e.what());
        }
        const auto &entries = j.contains("config") ? j["config"] : j;
        for (const auto &[k, v] : entries.items()) {
            cfg.set(k, v.is_string() ? v.get<std::string>() : v.dump());
        }
        return cfg;
    }
    constexpr std::string_view tag = "# config:";
    // Output files embed their config as tagged comments; everything else in them is data.
    const bool embedded = text.find(tag) != std::string_view::npos;
    Config cfg;
    size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        line_no++;
        line = trim(line);
        if (embedded) {
            if (line.substr(0, tag.size()) != tag) {
                continue;
            }
            line = trim(line.substr(tag.size()));
        } else if (line.empty() || line.front() == '#') {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw UsageError("config line " + std::to_string(line_no) + ": empty key");
        }
        cfg.set(key, std::string(trim(line.substr(eq + 1))));
    }
    return cfg;
}

Config Config::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Config::set(const std::string &key, std::string value) {
    values_[key] = std::move(value);
}

bool Config::has(const std::string &key) const {
    return values_.count(key) > 0;
}

const std::string &Config::get(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw UsageError("missing config key '" + key + "'");
    }
    return it->second;
}

double Config::get_double(const std::string &key) const {
    return to_double(get(key), key);
}

uint64_t Config::get_u64(const std::string &key) const {
    return to_u64(get(key), key);
}

std::vector<double> parse_real_grid(std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    for (std::string_view token : split(text, ',')) {
        auto parts = split(trim(token), ':');
        if (parts.size() == 1) {
            out.push_back(to_double(parts[0], "grid value"));
            continue;
        }
        if (parts.size() > 3) {
            throw UsageError("range '" + std::string(token) + "' must be a:b or a:b:step");
        }
        const double a = to_double(parts[0], "range start");
        const double b = to_double(parts[1], "range end");
        const double step = parts.size() == 3 ? to_double(parts[2], "range step") : 1.0;
        if (!(step > 0) || b < a) {
            throw UsageError("range '" + std::string(token) + "' needs a <= b and a positive step");
        }
        const auto count = static_cast<size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (size_t i = 0; i < count; i++) {
            // Snap to 12 significant digits so 0.1:0.9:0.1 yields 0.3 rather than 0.30000000000000004.
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", a + static_cast<double>(i) * step);
            out.push_back(std::strtod(buf, nullptr));
        }
    }
    return out;
}

std::vector<size_t> parse_count_grid(std::string_view text) {
    std::vector<size_t> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    for (std::string_view token : split(text, ',')) {
        auto parts = split(trim(token), ':');
        if (parts.size() == 1) {
            out.push_back(to_u64(parts[0], "grid value"));
            continue;
        }
        if (parts.size() > 3) {
            throw UsageError("range '" + std::string(token) + "' must be a:b or a:b:step");
        }
        const uint64_t a = to_u64(parts[0], "range start");
        const uint64_t b = to_u64(parts[1], "range end");
        const uint64_t step = parts.size() == 3 ? to_u64(parts[2], "range step") : 1;
        if (step == 0 || b < a) {
            throw UsageError("range '" + std::string(token) + "' needs a <= b and a positive step");
        }
        for (uint64_t v = a; v <= b; v += step) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<std::string> parse_word_list(std::string_view text) {
    std::vector<std::string> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    for (std::string_view token : split(text, ',')) {
        out.emplace_back(trim(token));
    }
    return out;
}

std::string format_number(double v) {
    // Shortest text that parses back to the same double.
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_csv(const Config &cfg, const Table &table) {
    std::ostringstream out;
    for (const auto &[k, v] : cfg.entries()) {
        out << "# config: " << k << " = " << v << "\n";
    }
    for (size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << "\n";
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << csv_escape(row[i]);
        }
        out << "\n";
    }
    for (const auto &[k, v] : table.summary) {
        out << "# " << k << " = " << v << "\n";
    }
    return out.str();
}

namespace {

// Numbers, booleans and arrays keep their JSON type; anything else stays a string.
nlohmann::ordered_json json_cell(const std::string &cell) {
    auto v = nlohmann::ordered_json::parse(cell, nullptr, false);
    if (!v.is_discarded() && (v.is_number() || v.is_boolean() || v.is_array())) {
        return v;
    }
    return cell;
}

}  // namespace

std::string format_json(const Config &cfg, const Table &table) {
    nlohmann::ordered_json j;
    j["config"] = cfg.entries();
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto &cell : row) {
            r.push_back(json_cell(cell));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (!table.summary.empty()) {
        nlohmann::ordered_json s;
        for (const auto &[k, v] : table.summary) {
            s[k] = json_cell(v);
        }
        j["summary"] = std::move(s);
    }
    return j.dump(2) + "\n";
}

}  // namespace qfridge::cli
