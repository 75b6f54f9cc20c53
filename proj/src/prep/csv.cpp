#include "qkm/prep/csv.hpp"

#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "qkm/error.hpp"

namespace qkm::prep {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long> parse_index(std::string_view s) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& options) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;  // (1-based line, cells)
    std::size_t line_no = 0;
    std::size_t pos = 0;
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF && static_cast<unsigned char>(text[1]) == 0xBB &&
        static_cast<unsigned char>(text[2]) == 0xBF) {
        pos = 3;
    }
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) continue;
        rows.emplace_back(line_no, split_cells(line));
    }
    if (rows.empty()) throw DataError("CSV input is empty");

    bool has_header = options.header == HeaderMode::Present;
    if (options.header == HeaderMode::Auto) {
        auto count_text = [](const std::vector<std::string_view>& cells) {
            std::size_t n = 0;
            for (auto cell : cells) n += parse_number(cell) ? 0 : 1;
            return n;
        };
        // Text labels repeat on every row, a header has more text than data.
        const std::size_t first = count_text(rows.front().second);
        has_header = rows.size() > 1 ? first > count_text(rows[1].second) : first > 0;
    }

    const std::size_t width = rows.front().second.size();
    std::vector<std::string> header;
    if (has_header) {
        for (auto cell : rows.front().second) header.emplace_back(cell);
    }

    std::optional<std::size_t> label_index;
    if (options.label_column) {
        const std::string& ref = *options.label_column;
        if (auto idx = parse_index(ref)) {
            const long w = static_cast<long>(width);
            const long resolved = *idx < 0 ? w + *idx : *idx;
            if (resolved < 0 || resolved >= w) throw DataError("label column " + ref + " does not exist");
            label_index = static_cast<std::size_t>(resolved);
        } else {
            if (!has_header) throw DataError("label column '" + ref + "' named but the CSV has no header row");
            for (std::size_t j = 0; j < header.size(); ++j) {
                if (header[j] == ref) label_index = j;
            }
            if (!label_index) throw DataError("label column '" + ref + "' not found in header");
        }
    }

    Dataset d;
    if (label_index) d.labels.emplace();
    std::map<std::string, int, std::less<>> label_codes;
    for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
        const auto& [line, cells] = rows[r];
        if (cells.size() != width) {
            throw DataError("line " + std::to_string(line) + ": expected " + std::to_string(width) + " cells, found " +
                            std::to_string(cells.size()));
        }
        FeatureVector v;
        v.reserve(width);
        for (std::size_t j = 0; j < width; ++j) {
            if (label_index && j == *label_index) {
                const auto num = parse_number(cells[j]);
                if (num && std::floor(*num) == *num) {
                    d.labels->push_back(static_cast<int>(*num));
                } else {
                    if (cells[j].empty()) throw DataError("line " + std::to_string(line) + ": empty label");
                    auto it = label_codes.find(cells[j]);
                    if (it == label_codes.end()) {
                        it = label_codes.emplace(std::string(cells[j]), static_cast<int>(label_codes.size())).first;
                    }
                    d.labels->push_back(it->second);
                }
                continue;
            }
            const auto num = parse_number(cells[j]);
            if (!num) {
                throw DataError("line " + std::to_string(line) + ", column " + std::to_string(j + 1) +
                                ": non-numeric cell '" + std::string(cells[j]) + "'");
            }
            v.push_back(*num);
        }
        d.vectors.push_back(std::move(v));
    }
    if (!label_codes.empty()) {
        std::string note = "text labels coded as";
        for (const auto& [name, code] : label_codes) note += " " + name + "=" + std::to_string(code);
        d.warnings.push_back(note);
    }
    return d;
}

std::string read_text_file(const std::filesystem::path& path) {
    const std::string name = path.string();
    if (path.extension() == ".gz") {
        gzFile f = gzopen(name.c_str(), "rb");
        if (f == nullptr) throw DataError("cannot open " + name);
        std::string out;
        std::vector<char> buf(1 << 16);
        int n = 0;
        while ((n = gzread(f, buf.data(), static_cast<unsigned>(buf.size()))) > 0) out.append(buf.data(), static_cast<std::size_t>(n));
        const bool failed = n < 0;
        gzclose(f);
        if (failed) throw DataError("cannot decompress " + name);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    if (!std::filesystem::exists(path)) throw DataError("dataset file not found: " + path.string());
    return parse_csv(read_text_file(path), options);
}

std::string to_csv(const Dataset& d) {
    std::string out;
    for (std::size_t j = 0; j < d.dims(); ++j) {
        if (j) out += ',';
        out += 'f' + std::to_string(j);
    }
    if (d.labels) out += d.dims() ? ",label" : "label";
    out += '\n';
    char buf[32];
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.dims(); ++j) {
            if (j) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", d.vectors[i][j]);
            out += buf;
        }
        if (d.labels) {
            if (d.dims()) out += ',';
            out += std::to_string((*d.labels)[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace qkm::prep
