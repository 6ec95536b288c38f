#include "cascade/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace cascade::io {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const GridFunction& f, double x_offset,
                    const std::string& header) {
    os << header << "\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << fmt_double(f.x(i) + x_offset) << "," << fmt_double(f[i]) << "\n";
}

void write_front_csv(std::ostream& os, const wave::FrontTrace& trace) {
    os << "n,x_front\n";
    for (std::size_t i = 0; i < trace.n.size(); ++i)
        os << trace.n[i] << "," << fmt_double(trace.x_f[i]) << "\n";
}

void write_series_json(std::ostream& os, const series::SeriesPoly& p) {
    os << "[";
    for (int k = 0; k <= p.order(); ++k) {
        const auto& c = p.coeff(k);
        std::ostringstream num, den;
        num << boost::multiprecision::numerator(c);
        den << boost::multiprecision::denominator(c);
        os << (k ? ",\n " : "\n ") << "{\"k\": " << k << ", \"numerator\": \"" << num.str()
           << "\", \"denominator\": \"" << den.str() << "\"}";
    }
    os << "\n]\n";
}

}  // namespace cascade::io
