#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cqsoliton::cli {

enum class Format { Csv, Json, Text };

/// Accepts csv, json and text.
Format parse_format(std::string_view text);

/// Round-trip formatting with 17 significant digits; nan/inf spelled out.
std::string format_number(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Header-first CSV with deterministic number formatting.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<Cell>& cells);

private:
    std::ostream& out_;
    std::size_t columns_;
};

}  // namespace cqsoliton::cli
