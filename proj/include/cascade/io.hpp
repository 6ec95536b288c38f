#pragma once

#include <iosfwd>
#include <string>

#include "cascade/grid.hpp"
#include "cascade/series.hpp"
#include "cascade/wave.hpp"

namespace cascade::io {

// Full-precision decimal form (17 significant digits, round-trip exact).
std::string fmt_double(double v);

// CSV with header `x,value`, one row per grid point. An x_offset shifts the
// abscissa column (used for front-centered profiles, header `xi,pi`).
void write_grid_csv(std::ostream& os, const GridFunction& f, double x_offset = 0.0,
                    const std::string& header = "x,value");

// CSV with header `n,x_front`.
void write_front_csv(std::ostream& os, const wave::FrontTrace& trace);

// JSON array of {k, numerator, denominator} with decimal string digits.
void write_series_json(std::ostream& os, const series::SeriesPoly& p);

}  // namespace cascade::io
