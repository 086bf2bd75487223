#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace cvclone::cli {

// At least 9 significant digits and an exact round trip through strtod.
// Non-finite values print as nan / inf / -inf.
std::string format_number(double v);

// Pretty JSON with every floating value formatted by format_number;
// non-finite floats become null.
void write_json(std::ostream& os, const nlohmann::json& j, int indent = 2);
std::string dump_json(const nlohmann::json& j);

// Comma-delimited, '.' decimal point, LF line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    // First column is an integer index.
    void row(std::uint64_t index, const std::vector<double>& values);

private:
    std::ostream& os_;
    std::size_t columns_;
};

}  // namespace cvclone::cli
