#include "svie/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace svie {

std::string format_decimal(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    const double magnitude = std::abs(value);
    const int exponent = static_cast<int>(std::floor(std::log10(magnitude)));
    const int decimals = std::max(0, 9 - exponent);
    char buffer[512];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table) {
    out << "N,h,l2_error,std_error,paths\n";
    for (const ErrorRow& row : table.rows) {
        out << row.coarse_n << ',' << format_decimal(row.h) << ','
            << format_decimal(row.l2_error) << ','
            << format_decimal(row.std_error) << ',' << row.paths << '\n';
    }
}

ErrorTable read_error_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "N,h,l2_error,std_error,paths") {
        throw std::runtime_error(
            "expected CSV header 'N,h,l2_error,std_error,paths'");
    }
    ErrorTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        ErrorRow row;
        char c1, c2, c3, c4;
        if (!(fields >> row.coarse_n >> c1 >> row.h >> c2 >> row.l2_error >>
              c3 >> row.std_error >> c4 >> row.paths) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',') {
            throw std::runtime_error("malformed error-table row: " + line);
        }
        table.rows.push_back(row);
    }
    return table;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const GridSpec& grid) {
    out << "n,t,x\n";
    for (std::int64_t n = 0; n < trajectory.values.size(); ++n) {
        out << n << ',' << format_decimal(grid.coarse_time(n)) << ','
            << format_decimal(trajectory.values[n]) << '\n';
    }
}

namespace {

std::string px(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

std::string fixed3(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    return buffer;
}

} // namespace

void write_convergence_svg(std::ostream& out, const ErrorTable& table,
                           const RateEstimate& rate,
                           const std::string& scheme_label) {
    constexpr double width = 640.0, height = 480.0;
    constexpr double left = 80.0, right = 610.0, top = 50.0, bottom = 410.0;

    std::vector<std::pair<double, double>> points;  // (log2 h, log2 error)
    for (const ErrorRow& row : table.rows) {
        if (row.l2_error > 0.0) {
            points.emplace_back(std::log2(row.h), std::log2(row.l2_error));
        }
    }

    double x_lo = -1.0, x_hi = 1.0, y_lo = -1.0, y_hi = 1.0;
    if (!points.empty()) {
        x_lo = x_hi = points.front().first;
        y_lo = y_hi = points.front().second;
        for (const auto& [x, y] : points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    x_lo -= 0.5; x_hi += 0.5;
    y_lo -= 0.5; y_hi += 0.5;

    const auto to_px_x = [&](double x) {
        return left + (x - x_lo) / (x_hi - x_lo) * (right - left);
    };
    const auto to_px_y = [&](double y) {
        return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
        << height << "\" fill=\"white\"/>\n";

    // Axes and integer log2 ticks.
    out << "  <path d=\"M " << px(left) << ' ' << px(top) << " L " << px(left)
        << ' ' << px(bottom) << " L " << px(right) << ' ' << px(bottom)
        << "\" stroke=\"black\" fill=\"none\"/>\n";
    for (int tick = static_cast<int>(std::ceil(x_lo));
         tick <= static_cast<int>(std::floor(x_hi)); ++tick) {
        const double x = to_px_x(tick);
        out << "  <path d=\"M " << px(x) << ' ' << px(bottom) << " L " << px(x)
            << ' ' << px(bottom + 6.0) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << px(x) << "\" y=\"" << px(bottom + 22.0)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << tick
            << "</text>\n";
    }
    for (int tick = static_cast<int>(std::ceil(y_lo));
         tick <= static_cast<int>(std::floor(y_hi)); ++tick) {
        const double y = to_px_y(tick);
        out << "  <path d=\"M " << px(left - 6.0) << ' ' << px(y) << " L "
            << px(left) << ' ' << px(y) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << px(left - 10.0) << "\" y=\"" << px(y + 4.0)
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick
            << "</text>\n";
    }
    out << "  <text x=\"" << px((left + right) / 2.0) << "\" y=\""
        << px(bottom + 45.0)
        << "\" font-size=\"14\" text-anchor=\"middle\">log2(h)</text>\n";
    out << "  <text x=\"20\" y=\"" << px((top + bottom) / 2.0)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "20 " << px((top + bottom) / 2.0) << ")\">log2(error)</text>\n";

    // One data polyline per scheme (a table holds a single scheme's errors).
    out << "  <polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out << ' ';
        out << px(to_px_x(points[i].first)) << ','
            << px(to_px_y(points[i].second));
    }
    out << "\"/>\n";
    for (const auto& [x, y] : points) {
        out << "  <circle cx=\"" << px(to_px_x(x)) << "\" cy=\""
            << px(to_px_y(y)) << "\" r=\"3\" fill=\"#1f6fb4\"/>\n";
    }

    // Fitted line from the log-log regression.
    const double fit_lo = rate.slope * x_lo + rate.intercept;
    const double fit_hi = rate.slope * x_hi + rate.intercept;
    out << "  <line x1=\"" << px(to_px_x(x_lo)) << "\" y1=\""
        << px(to_px_y(fit_lo)) << "\" x2=\"" << px(to_px_x(x_hi)) << "\" y2=\""
        << px(to_px_y(fit_hi))
        << "\" stroke=\"#d62728\" stroke-dasharray=\"6 3\"/>\n";

    out << "  <text x=\"" << px(left + 10.0) << "\" y=\"" << px(top - 15.0)
        << "\" font-size=\"14\">" << scheme_label << ": empirical slope "
        << fixed3(rate.slope)
        << " / theoretical min{1-2beta,1-alpha} = " << fixed3(rate.theoretical)
        << "</text>\n";
    out << "</svg>\n";
}

} // namespace svie
