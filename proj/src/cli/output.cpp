#include "cqsoliton/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "cqsoliton/errors.hpp"

namespace cqsoliton::cli {

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "text") return Format::Text;
    throw DomainError("unknown output format '" + std::string(text) + "' (expected csv, json or text)");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_) throw DomainError("CSV row has the wrong number of columns");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        std::visit(
            [this](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, double>) {
                    out_ << format_number(c);
                } else {
                    out_ << c;
                }
            },
            cells[i]);
    }
    out_ << '\n';
}

}  // namespace cqsoliton::cli
