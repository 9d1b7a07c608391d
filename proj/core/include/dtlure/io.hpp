#ifndef DTLURE_IO_HPP
#define DTLURE_IO_HPP

#include <string>

#include "dtlure/lure.hpp"
#include "dtlure/stability.hpp"

namespace dtlure {

/// Round-trip-safe numeric formatting shared by every CSV and report writer
/// (17 significant digits, '.' decimal separator regardless of locale).
std::string format_number(double v);

/// Columns: k, y, nu, mode, proj_norm, x_1..x_n. Exact runs append dual
/// columns y_exact, x_1_exact..x_n_exact with the field-element renderings.
std::string trajectory_csv(const Trajectory& traj);

/// Columns: alpha, spr.
std::string sweep_csv(const SweepResult& sweep);

/// Columns: alpha, re_1, im_1, ..., re_n, im_n with roots repeated by
/// multiplicity and sorted for stable diffs.
std::string rootlocus_csv(const SweepResult& sweep);

}  // namespace dtlure

#endif
