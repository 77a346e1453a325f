#include "dimcal/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dimcal/errors.hpp"

namespace dimcal {

namespace {

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

std::string format_value(double v) {
    char buf[64];
    const int written = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(written));
}

ParsedMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError(path + ": cannot open file");
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> header;
    std::string line;
    long line_no = 0;
    char delim = 0;
    std::size_t ncols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        if (delim == 0) {
            delim = (line.find('\t') != std::string::npos) ? '\t' : ',';
        }
        auto fields = split(line, delim);
        if (rows.empty() && header.empty()) {
            double probe;
            if (!parse_double(fields.front(), probe)) {
                header = std::move(fields);
                ncols = header.size();
                continue;
            }
        }
        if (ncols == 0) {
            ncols = fields.size();
        } else if (fields.size() != ncols) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": expected " << ncols
                << " fields, found " << fields.size();
            throw IngestionError(msg.str());
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_double(fields[c], row[c])) {
                std::ostringstream msg;
                msg << path << ":" << line_no << ": field " << (c + 1)
                    << " is not numeric: '" << fields[c] << "'";
                throw IngestionError(msg.str());
            }
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) {
        throw IngestionError(path + ": no data rows");
    }

    Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(ncols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return ParsedMatrix{std::move(values), std::move(header)};
}

void write_matrix(const std::string& path, const Matrix& values,
                  const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) {
        throw IngestionError(path + ": cannot open file for writing");
    }
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c > 0) out << ',';
            out << header[c];
        }
        out << '\n';
    }
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c > 0) out << ',';
            out << format_value(values(r, c));
        }
        out << '\n';
    }
    if (!out) {
        throw IngestionError(path + ": write failed");
    }
}

Labels read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError(path + ": cannot open file");
    }
    Labels labels;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        int value = 0;
        const char* begin = line.data();
        const char* end = begin + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": not an integer label: '" << line << "'";
            throw IngestionError(msg.str());
        }
        labels.push_back(value);
    }
    if (labels.empty()) {
        throw IngestionError(path + ": no labels");
    }
    return labels;
}

void write_labels(const std::string& path, const Labels& labels) {
    std::ofstream out(path);
    if (!out) {
        throw IngestionError(path + ": cannot open file for writing");
    }
    for (const int label : labels) {
        out << label << '\n';
    }
    if (!out) {
        throw IngestionError(path + ": write failed");
    }
}

} // namespace dimcal
