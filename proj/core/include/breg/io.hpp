#pragma once

#include <string>

#include "breg/distribution.hpp"
#include "breg/linalg.hpp"

namespace breg {

/// Formats a double with `significant` significant digits (%.{n}g); 17
/// digits round-trip exactly, which keeps file output byte-stable across
/// runs.
std::string format_number(double value, int significant = 17);

/// Numbers separated by whitespace and/or commas; '#' starts a comment.
Vector load_vector(const std::string& path);

/// Distribution CSV: header `w,x1,...,xd`, one atom per row.  Weights
/// are renormalized when their sum lies in [0.999, 1.001] and rejected
/// otherwise.
DiscreteDistribution load_distribution(const std::string& path);

/// Point CSV: header `x1,...,xd` (a distribution file is also accepted,
/// its weights ignored).  Used for pushforward base samples.
std::vector<Vector> load_points(const std::string& path);

/// Category counts: nonnegative integers, whitespace/comma separated.
std::vector<long> load_counts(const std::string& path);

/// Rectangular numeric CSV, one row per line; optional non-numeric header
/// line is skipped.
Matrix load_matrix(const std::string& path);

std::string plan_to_csv(const Matrix& coupling);

}  // namespace breg
