#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace halfline {

/// Selection and grid for the CSV figure data. The default grid is 197 points,
/// p = 0.01 to 0.99 in steps of 0.005. `figure` is "all", a figure id
/// ("fig2".."fig10"), or an individual panel ("fig8left", ...).
struct FigureSpec {
    std::string figure = "all";
    std::filesystem::path out_dir;
    double p_lo = 0.01;
    double p_hi = 0.99;
    double p_step = 0.005;
};

struct FigureResult {
    std::vector<std::filesystem::path> files;
    int solver_failures = 0;  // grid cells left empty
};

/// Writes the requested figure data as CSV (header row, comma separated,
/// '.' decimal, 9 significant digits, LF line endings; byte-stable for
/// identical inputs). Cells whose solve fails are left empty and counted.
FigureResult write_figures(const FigureSpec& spec);

}  // namespace halfline
