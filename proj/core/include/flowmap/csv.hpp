#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flowmap::csv {

// Split one RFC 4180 record. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported.
std::vector<std::string> split_line(std::string_view line);

// Quote a field when it contains a comma, quote or leading/trailing space.
std::string escape(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);

// Streams data rows of a headed CSV file. Columns are looked up by name, so
// column order in the file is free and extra columns are ignored.
class Reader {
public:
    // Throws InputError when the stream has no header line or the header
    // lacks any of `required` columns.
    Reader(std::istream& in, std::span<const std::string_view> required);

    // Next non-blank data row; std::nullopt at end of stream.
    std::optional<std::vector<std::string>> next();

    // 1-based line number of the row last returned by next().
    std::size_t line_number() const { return line_no_; }

    std::size_t column(std::string_view name) const;

private:
    std::istream& in_;
    std::unordered_map<std::string, std::size_t> columns_;
    std::size_t line_no_ = 0;
};

}  // namespace flowmap::csv
