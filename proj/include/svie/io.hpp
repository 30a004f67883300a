#pragma once

#include <iosfwd>
#include <string>

#include "svie/experiment.hpp"
#include "svie/grid.hpp"
#include "svie/scheme.hpp"

namespace svie {

/// Plain decimal notation with 10 significant digits (never scientific),
/// so CSV outputs are byte-reproducible.
std::string format_decimal(double value);

/// Header "N,h,l2_error,std_error,paths", one row per level.
void write_error_table_csv(std::ostream& out, const ErrorTable& table);
ErrorTable read_error_table_csv(std::istream& in);

/// Header "n,t,x", one row per coarse node.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const GridSpec& grid);

/// Self-contained SVG 1.1 log-log error plot: one data polyline per scheme,
/// one fitted line, log2 axes, and a slope annotation.
void write_convergence_svg(std::ostream& out, const ErrorTable& table,
                           const RateEstimate& rate,
                           const std::string& scheme_label);

} // namespace svie
