#include "cli_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cskern/error.hpp"

namespace cskern::cli {

namespace {

[[noreturn]] void bad_grid(const std::string& text, const std::string& why) {
  throw KernelError(ErrorCode::ParameterOutOfRange, "grid '" + text + "': " + why);
}

double parse_double(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad_grid(whole, "'" + s + "' is not a number");
  }
  if (used != s.size()) bad_grid(whole, "'" + s + "' is not a number");
  return v;
}

}  // namespace

Grid parse_grid(const std::string& text, Spacing spacing) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) bad_grid(text, "expected start:stop:count");
  Grid g;
  g.start = parse_double(parts[0], text);
  g.stop = parse_double(parts[1], text);
  const double count = parse_double(parts[2], text);
  if (count != std::floor(count) || count < 1 || count > 1e7) bad_grid(text, "count >= 1 must be an integer");
  g.count = static_cast<int>(count);
  g.spacing = spacing;
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) bad_grid(text, "bounds must be finite");
  if (g.count > 1 && !(g.start < g.stop)) bad_grid(text, "start < stop is required when count > 1");
  if (spacing == Spacing::Log && !(g.start > 0.0)) bad_grid(text, "start > 0 is required for log spacing");
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> out(g.count);
  for (int i = 0; i < g.count; ++i) {
    const double f = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
    out[i] = g.spacing == Spacing::Linear ? g.start + (g.stop - g.start) * f
                                          : g.start * std::pow(g.stop / g.start, f);
  }
  // Pin the end points exactly; the formulas above can land one ulp off.
  out.front() = g.start;
  if (g.count > 1) out.back() = g.stop;
  return out;
}

PointFile read_points(const std::string& path, int d, bool with_values) {
  std::ifstream in(path);
  if (!in) throw KernelError(ErrorCode::IoError, "cannot read '" + path + "'");
  const int width = d + (with_values ? 1 : 0);
  std::vector<double> flat;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<double> vals;
    for (std::string tok; row >> tok;) {
      double v = 0.0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
        throw KernelError(ErrorCode::DomainError,
                          path + ":" + std::to_string(lineno) + ": '" + tok + "' is not a finite number");
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    if (static_cast<int>(vals.size()) != width)
      throw KernelError(ErrorCode::DimensionMismatch, path + ":" + std::to_string(lineno) + ": expected " +
                                                          std::to_string(width) + " columns, got " +
                                                          std::to_string(vals.size()));
    flat.insert(flat.end(), vals.begin(), vals.end());
  }
  if (in.bad()) throw KernelError(ErrorCode::IoError, "error while reading '" + path + "'");
  const Eigen::Index n = static_cast<Eigen::Index>(flat.size() / width);
  PointFile out{Eigen::MatrixXd(d, n), Eigen::VectorXd(with_values ? n : 0)};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int i = 0; i < d; ++i) out.points(i, j) = flat[j * width + i];
    if (with_values) out.values(j) = flat[j * width + d];
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace cskern::cli
