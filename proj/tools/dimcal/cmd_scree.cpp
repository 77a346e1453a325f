#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "dimcal/errors.hpp"
#include "dimcal/matrix_io.hpp"
#include "dimcal/pca.hpp"
#include "svg_plot.hpp"

namespace dimcal::cli {

void run_scree(const ScreeArgs& args) {
    if (args.max_components < 0)
        throw ParameterError("--max-components must be non-negative");

    const Matrix data = read_matrix(args.input_path).values;
    const Index full_rank = std::min<Index>(data.rows() - 1, data.cols());
    if (full_rank < 1)
        throw ParameterError("scree needs at least 2 rows and 1 column");
    Index keep = full_rank;
    if (args.max_components > 0)
        keep = std::min<Index>(keep, args.max_components);

    const PcaBasis basis = fit_pca(data, full_rank);
    const auto table = scree(basis);

    std::ostringstream csv;
    csv << "component,eigenvalue\n";
    for (Index i = 0; i < keep; ++i)
        csv << table[static_cast<std::size_t>(i)].first << ','
            << format_value(table[static_cast<std::size_t>(i)].second) << '\n';

    if (args.out_path) {
        std::ofstream out(*args.out_path);
        if (!out)
            throw IngestionError(*args.out_path + ": cannot open file for writing");
        out << csv.str();
        if (!out) throw IngestionError(*args.out_path + ": write failed");
    } else {
        std::cout << csv.str();
    }

    if (args.svg_path) {
        PlotSeries series{"eigenvalue", "#4477aa", {}, {}};
        for (Index i = 0; i < keep; ++i) {
            series.x.push_back(static_cast<double>(table[static_cast<std::size_t>(i)].first));
            series.y.push_back(table[static_cast<std::size_t>(i)].second);
        }
        std::ofstream out(*args.svg_path);
        if (!out)
            throw IngestionError(*args.svg_path + ": cannot open file for writing");
        out << line_chart({series}, "component", "eigenvalue", "scree");
        if (!out) throw IngestionError(*args.svg_path + ": write failed");
    }
}

} // namespace dimcal::cli
