#ifndef DIMCAL_MATRIX_IO_HPP
#define DIMCAL_MATRIX_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "dimcal/matrix.hpp"

namespace dimcal {

/**
 * @file matrix_io.hpp
 * @brief Delimiter-separated numeric text files.
 *
 * The on-disk format is UTF-8 text, one row per line, fields separated by a
 * comma or a tab (detected from the first line). A header row is optional and
 * recognized by its first field not parsing as a number. Values are written
 * with 17 significant digits so that write/read round-trips reproduce doubles
 * bit-exactly and reruns are byte-comparable.
 */

struct ParsedMatrix {
    Matrix values;
    std::vector<std::string> header; // empty when the file had none
};

// Throws IngestionError with file/line diagnostics on malformed input.
ParsedMatrix read_matrix(const std::string& path);

// `header` may be empty (no header row is written).
void write_matrix(const std::string& path, const Matrix& values,
                  const std::vector<std::string>& header = {});

// Renders one double exactly as write_matrix would (17 significant digits,
// '.' decimal separator, C locale independent).
std::string format_value(double v);

// Single column of integers, one per line, no header.
Labels read_labels(const std::string& path);
void write_labels(const std::string& path, const Labels& labels);

} // namespace dimcal

#endif
