// Copyright 2026 The pauli-lre Authors
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

#include "pauli_lre/record_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "json.hpp"

namespace pauli_lre {

namespace {

using json = nlohmann::ordered_json;

void strip_cr(std::string &line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

struct Header {
    QubitCount n;
    std::uint64_t shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> state;
};

std::uint64_t require_unsigned(const json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw RecordFormatError(1, std::string("header field \"") + key + "\" must be a non-negative integer");
    }
    return j[key].get<std::uint64_t>();
}

Header parse_header(const std::string &line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error &) {
        throw RecordFormatError(1, "header is not valid JSON");
    }
    if (!j.is_object()) throw RecordFormatError(1, "header must be a JSON object");
    if (!j.contains("format") || j["format"] != kRecordFormatTag) {
        throw RecordFormatError(1, std::string("header format must be \"") + kRecordFormatTag + "\"");
    }
    const std::uint64_t n = require_unsigned(j, "n");
    if (n < 1 || n > static_cast<std::uint64_t>(QubitCount::kMax)) {
        throw RecordFormatError(1, "header n out of range: " + std::to_string(n));
    }
    const std::uint64_t shots = require_unsigned(j, "shots");
    if (shots < 1 || shots > std::numeric_limits<MeasurementRecord::Count>::max()) {
        throw RecordFormatError(1, "header shots out of range: " + std::to_string(shots));
    }
    Header h{QubitCount(static_cast<int>(n)), shots, std::nullopt, std::nullopt};
    if (j.contains("seed") && !j["seed"].is_null()) h.seed = require_unsigned(j, "seed");
    if (j.contains("state") && !j["state"].is_null()) {
        if (!j["state"].is_string()) throw RecordFormatError(1, "header field \"state\" must be a string or null");
        h.state = j["state"].get<std::string>();
    }
    return h;
}

void parse_setting_line(const std::string &line, std::size_t line_no, std::uint64_t expected_w, const Header &h,
                        std::span<MeasurementRecord::Count> out) {
    const QubitCount n = h.n;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw RecordFormatError(line_no, "expected \"<setting> <counts>\"");
    const std::string label = line.substr(0, space);
    if (label.size() != static_cast<std::size_t>(n.value())) {
        throw RecordFormatError(line_no, "setting label \"" + label + "\" must have " + std::to_string(n.value()) +
                                             " characters");
    }
    std::uint64_t w = 0;
    try {
        w = parse_setting_label(label);
    } catch (const ValidationError &e) {
        throw RecordFormatError(line_no, e.what());
    }
    if (w != expected_w) {
        throw RecordFormatError(line_no, "setting " + label + " out of order, expected " +
                                             setting_label(n, expected_w));
    }

    const char *p = line.data() + space + 1;
    const char *const end = line.data() + line.size();
    std::uint64_t k = 0;
    std::uint64_t total = 0;
    while (true) {
        std::uint64_t value = 0;
        const auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc{} || next == p) {
            throw RecordFormatError(line_no, "setting " + label + ": malformed count list");
        }
        if (k >= n.dim()) {
            throw RecordFormatError(line_no, "setting " + label + ": more than 2^n = " + std::to_string(n.dim()) +
                                                 " counts");
        }
        if (value > h.shots) throw RecordFormatError(line_no, "setting " + label + ": count exceeds shots");
        out[k++] = static_cast<MeasurementRecord::Count>(value);
        total += value;
        p = next;
        if (p == end) break;
        if (*p != ',') throw RecordFormatError(line_no, "setting " + label + ": malformed count list");
        ++p;
    }
    if (k != n.dim()) {
        throw RecordFormatError(line_no, "setting " + label + ": expected " + std::to_string(n.dim()) +
                                             " counts, found " + std::to_string(k));
    }
    if (total != h.shots) {
        throw RecordFormatError(line_no, "setting " + label + ": counts sum to " + std::to_string(total) +
                                             ", expected " + std::to_string(h.shots));
    }
}

}  // namespace

void write_record(const MeasurementRecord &record, std::ostream &out) {
    const QubitCount n = record.qubits();
    json header;
    header["format"] = kRecordFormatTag;
    header["n"] = n.value();
    header["shots"] = record.shots();
    header["seed"] = record.seed() ? json(*record.seed()) : json(nullptr);
    header["state"] = record.state_label() ? json(*record.state_label()) : json(nullptr);
    out << header.dump() << '\n';

    std::string line;
    char buf[24];
    for (std::uint64_t w = 0; w < n.setting_count(); ++w) {
        line = setting_label(n, w);
        line.push_back(' ');
        const auto row = record.counts(w);
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (s) line.push_back(',');
            const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), row[s]);
            line.append(buf, end);
        }
        line.push_back('\n');
        out << line;
    }
}

void write_record(const MeasurementRecord &record, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_record(record, out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

MeasurementRecord read_record(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw RecordFormatError(1, "empty record file");
    strip_cr(line);
    const Header h = parse_header(line);
    const QubitCount n = h.n;
    const std::uint64_t settings = n.setting_count();
    const std::uint64_t d = n.dim();

    std::vector<MeasurementRecord::Count> counts(settings * d);
    std::uint64_t w = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (w == settings) {
            if (line.empty()) continue;
            throw RecordFormatError(line_no, "header n = " + std::to_string(n.value()) + " implies " +
                                                 std::to_string(settings) + " setting lines, found more");
        }
        parse_setting_line(line, line_no, w, h, std::span(counts).subspan(w * d, d));
        ++w;
    }
    if (w != settings) {
        throw RecordFormatError(line_no, "header n = " + std::to_string(n.value()) + " implies " +
                                             std::to_string(settings) + " setting lines, found " + std::to_string(w));
    }
    return MeasurementRecord(n, h.shots, std::move(counts), h.seed, h.state);
}

MeasurementRecord read_record(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_record(in);
}

}  // namespace pauli_lre
