#include "cvclone/cli/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace cvclone::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.9g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_value(std::ostream& os, const nlohmann::json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << nlohmann::json(it.key()).dump() << ": ";
                write_value(os, it.value(), indent, depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_value(os, j[i], indent, depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            os << (std::isfinite(v) ? format_number(v) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& j, int indent) {
    write_value(os, j, indent, 0);
    os << "\n";
}

std::string dump_json(const nlohmann::json& j) {
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_number(values[i]);
    os_ << '\n';
}

void CsvWriter::row(std::uint64_t index, const std::vector<double>& values) {
    if (values.size() + 1 != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    os_ << index;
    for (double v : values) os_ << ',' << format_number(v);
    os_ << '\n';
}

}  // namespace cvclone::cli
