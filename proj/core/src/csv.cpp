#include "flowmap/csv.hpp"

#include "flowmap/error.hpp"

namespace flowmap::csv {

namespace {

std::string_view trim_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
    line = trim_cr(line);
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

Reader::Reader(std::istream& in, std::span<const std::string_view> required) : in_(in) {
    std::string header;
    while (std::getline(in_, header)) {
        ++line_no_;
        if (!trim(trim_cr(header)).empty()) break;
        header.clear();
    }
    if (header.empty() || trim(trim_cr(header)).empty()) {
        throw InputError("missing CSV header");
    }
    // UTF-8 byte order mark
    if (header.rfind("\xEF\xBB\xBF", 0) == 0) {
        header.erase(0, 3);
    }
    const auto names = split_line(header);
    for (std::size_t i = 0; i < names.size(); ++i) {
        columns_.emplace(std::string(trim(names[i])), i);
    }
    for (auto name : required) {
        if (!columns_.contains(std::string(name))) {
            throw InputError("CSV header is missing column '" + std::string(name) + "'");
        }
    }
}

std::optional<std::vector<std::string>> Reader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (trim(trim_cr(line)).empty()) continue;
        return split_line(line);
    }
    if (in_.bad()) {
        throw InputError("error reading CSV stream");
    }
    return std::nullopt;
}

std::size_t Reader::column(std::string_view name) const {
    const auto it = columns_.find(std::string(name));
    if (it == columns_.end()) {
        throw InputError("unknown CSV column '" + std::string(name) + "'");
    }
    return it->second;
}

}  // namespace flowmap::csv
