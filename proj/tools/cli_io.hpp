#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace cskern::cli {

enum class Spacing { Linear, Log };

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int count = 11;
  Spacing spacing = Spacing::Linear;
};

/// "start:stop:count". Throws KernelError(ParameterOutOfRange) on malformed
/// text, count < 1, start >= stop with count > 1, or a log grid with start <= 0.
Grid parse_grid(const std::string& text, Spacing spacing);
std::vector<double> grid_points(const Grid& grid);

/// Whitespace-separated rows, one point per line; '#' starts a comment.
/// Each row has d coordinates and, if with_values, one trailing value.
/// IO_ERROR if the file cannot be read, DOMAIN_ERROR on a malformed row.
struct PointFile {
  Eigen::MatrixXd points;  // d x N
  Eigen::VectorXd values;  // empty unless with_values
};
PointFile read_points(const std::string& path, int d, bool with_values);

/// Shortest round-trip decimal form, so CSV output is bit-exact.
std::string format_number(double x);

}  // namespace cskern::cli
