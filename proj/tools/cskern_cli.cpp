#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "cli_io.hpp"
#include "cskern/acceptance.hpp"
#include "cskern/closed_forms.hpp"
#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/parallel.hpp"
#include "cskern/rkhs.hpp"
#include "cskern/specfun.hpp"
#include "cskern/transforms.hpp"

namespace {

using namespace cskern;
using cli::format_number;

constexpr int kExitParameter = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitLinearAlgebra = 4;
constexpr int kExitIo = 5;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::QuadratureNonconvergence:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::PositivityViolation: return kExitQuadrature;
    case ErrorCode::SingularGram: return kExitLinearAlgebra;
    case ErrorCode::IoError: return kExitIo;
    default: return kExitParameter;
  }
}

struct Options {
  std::string family = "wendland";
  int dimension = 1;
  double order = 2.0;
  std::string grid;
  std::string spacing = "linear";
  std::string output;
  std::uint64_t seed = 20240611;
  // transform
  std::string identity = "forward";
  double alpha = 2.0, beta = 1.5;
  std::optional<double> lambda;
  double tail_tolerance = 1e-6;
  // interp
  std::string nodes, probes, coefficients;
  int random = 0;
  // verify
  std::string only;
  double tolerance_scale = 1.0;
};

KernelSpec spec_of(const Options& o) {
  auto family = parse_family(o.family);
  if (!family)
    throw KernelError(ErrorCode::ParameterOutOfRange,
                      "unknown family '" + o.family + "' (askey, wendland, smooth, bessel)");
  KernelSpec spec{*family, o.dimension, o.order};
  validate_spec(spec);
  return spec;
}

cli::Grid grid_of(const Options& o, const char* fallback) {
  cli::Spacing spacing;
  if (o.spacing == "linear") spacing = cli::Spacing::Linear;
  else if (o.spacing == "log") spacing = cli::Spacing::Log;
  else throw KernelError(ErrorCode::ParameterOutOfRange, "spacing must be linear or log");
  return cli::parse_grid(o.grid.empty() ? fallback : o.grid, spacing);
}

// Owns the output stream; stdout unless --output is given.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw KernelError(ErrorCode::IoError, "cannot write '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    out().flush();
    if (!out()) throw KernelError(ErrorCode::IoError, "write failed");
  }

 private:
  std::ofstream file_;
};

void header(std::ostream& os, const std::string& command, const Options& o, const std::string& extra = {}) {
  os << "# cskern " << CSKERN_VERSION << '\n';
  os << "# command=" << command << " family=" << o.family << " d=" << o.dimension
     << " order=" << format_number(o.order);
  if (!extra.empty()) os << ' ' << extra;
  os << '\n';
}

std::string grid_echo(const cli::Grid& g) {
  return "grid=" + format_number(g.start) + ":" + format_number(g.stop) + ":" + std::to_string(g.count) +
         " spacing=" + (g.spacing == cli::Spacing::Log ? "log" : "linear");
}

// Evaluates row(i) for every grid point in parallel and writes rows in order.
void emit_rows(std::ostream& os, std::size_t n, const std::function<std::string(std::size_t)>& row) {
  std::vector<std::string> rows(n);
  parallel_for(n, [&](std::size_t i) { rows[i] = row(i); });
  for (const std::string& r : rows) os << r << '\n';
}

int cmd_eval(const Options& o) {
  const KernelSpec spec = spec_of(o);
  const cli::Grid g = grid_of(o, "0:1:11");
  const std::vector<double> rs = cli::grid_points(g);
  Sink sink(o.output);
  header(sink.out(), "eval", o, grid_echo(g));
  sink.out() << "r,profile,closed_form\n";
  emit_rows(sink.out(), rs.size(), [&](std::size_t i) {
    const double r = rs[i];
    std::optional<double> cf;
    if (is_compact(spec.family)) cf = closed_form(spec, Side::Profile, r);
    return format_number(r) + "," + format_number(profile(spec, r)) + "," + (cf ? format_number(*cf) : "");
  });
  sink.finish();
  return 0;
}

int cmd_spectrum(const Options& o) {
  const KernelSpec spec = spec_of(o);
  const cli::Grid g = grid_of(o, "0:50:51");
  const std::vector<double> rs = cli::grid_points(g);
  const double c = fourier_constant(spec);
  Sink sink(o.output);
  header(sink.out(), "spectrum", o, grid_echo(g) + " fourier_constant=" + format_number(c));
  sink.out() << "r,spectrum,scaled_spectrum,regime\n";
  emit_rows(sink.out(), rs.size(), [&](std::size_t i) {
    const SeriesEvaluation s = spectrum(spec, rs[i]);
    return format_number(rs[i]) + "," + format_number(s.value) + "," + format_number(c * s.value) + "," +
           to_string(s.regime);
  });
  sink.finish();
  return 0;
}

int cmd_transform(const Options& o) {
  const KernelSpec spec = spec_of(o);
  const int d = spec.dimension;
  std::string columns;
  std::function<std::array<double, 2>(double)> pair;  // (computed, reference)
  const char* fallback = "0.5:50:12";
  bool relative = false;

  if (o.identity == "forward") {
    if (!is_compact(spec.family)) throw KernelError(ErrorCode::ParameterOutOfRange, "forward needs a compact family");
    const Profile f = profile_of(spec);
    const double c = fourier_constant(spec);
    columns = "r,radial_fourier,scaled_spectrum,rel_error";
    relative = true;
    pair = [=](double r) -> std::array<double, 2> { return {radial_fourier(d, f, r), c * spectrum(spec, r).value}; };
  } else if (o.identity == "roundtrip") {
    if (!is_compact(spec.family))
      throw KernelError(ErrorCode::ParameterOutOfRange, "roundtrip needs a compact family");
    // radial_fourier = sphere * ∫ Ω f t^{d-1}, so the spectral side handed to
    // inverse_radial is C S / sphere.
    const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
    const double c = fourier_constant(spec) / sphere;
    const SpectralFunction phi{[=](double r) { return c * spectrum(spec, r).value; }, spectrum_decay_exponent(spec)};
    OscillatoryIntegralConfig config;
    config.tail_tolerance = o.tail_tolerance;
    columns = "t,inverse,profile,abs_error";
    fallback = "0.1:0.9:5";
    pair = [=](double t) -> std::array<double, 2> { return {inverse_radial(d, phi, t, config), profile(spec, t)}; };
  } else if (o.identity == "squared-binomial" || o.identity == "binomial") {
    const double lambda = o.lambda.value_or(0.5);
    const bool squared = o.identity == "squared-binomial";
    const Profile f = BinomialDensity{o.alpha, o.beta, squared}.as_profile();
    const double a = o.alpha, b = o.beta;
    columns = "r,hankel_schoenberg,hypergeometric,rel_error";
    relative = true;
    pair = [=](double r) -> std::array<double, 2> {
      const double want = squared ? hyp1f2(b, a + b, lambda + 1.0, r).value
                                  : hyp2f3(0.5 * b, 0.5 * (b + 1), 0.5 * (a + b), 0.5 * (a + b + 1), lambda + 1, r).value;
      return {hankel_schoenberg(lambda, f, r), want};
    };
  } else if (o.identity == "orderwalk") {
    if (!is_compact(spec.family))
      throw KernelError(ErrorCode::ParameterOutOfRange, "orderwalk needs a compact family");
    const double lambda = o.lambda.value_or(0.5 * d);
    const Profile f = profile_of(spec);
    const Profile walked = order_walk(lambda, d, f);
    const Profile weighted{walked.smooth, walked.left_exponent + (d - 1), walked.right_exponent};
    columns = "r,order_lambda,walked_dimension,abs_error";
    fallback = "1:20:5";
    pair = [=](double r) -> std::array<double, 2> {
      return {hankel_schoenberg(0.5 * (d - 2), weighted, r), hankel_schoenberg(lambda, f, r)};
    };
  } else {
    throw KernelError(ErrorCode::ParameterOutOfRange,
                      "identity must be forward, roundtrip, squared-binomial, binomial or orderwalk");
  }

  const cli::Grid g = grid_of(o, fallback);
  const std::vector<double> xs = cli::grid_points(g);
  std::vector<std::array<double, 2>> vals(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { vals[i] = pair(xs[i]); });
  std::string extra = "identity=" + o.identity + " " + grid_echo(g);
  if (o.lambda) extra += " lambda=" + format_number(*o.lambda);
  if (o.identity.find("binomial") != std::string::npos) extra += " alpha=" + format_number(o.alpha) + " beta=" + format_number(o.beta);
  Sink sink(o.output);
  header(sink.out(), "transform", o, extra);
  sink.out() << columns << '\n';
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = std::abs(vals[i][0] - vals[i][1]);
    if (relative && vals[i][1] != 0.0) e /= std::abs(vals[i][1]);
    worst = std::max(worst, e);
    sink.out() << format_number(xs[i]) << ',' << format_number(vals[i][0]) << ',' << format_number(vals[i][1]) << ','
               << format_number(e) << '\n';
  }
  sink.out() << "# max_" << (relative ? "rel" : "abs") << "_error=" << format_number(worst) << '\n';
  sink.finish();
  std::fprintf(stderr, "max_%s_error=%.3e\n", relative ? "rel" : "abs", worst);
  return 0;
}

int cmd_interp(const Options& o) {
  const KernelSpec spec = spec_of(o);
  const int d = spec.dimension;
  NodeSet nodes{d, {}};
  Eigen::VectorXd values;
  std::string source;
  if (!o.nodes.empty()) {
    const cli::PointFile pf = cli::read_points(o.nodes, d, true);
    nodes.points = pf.points;
    values = pf.values;
    source = "nodes=" + o.nodes;
  } else if (o.random > 0) {
    nodes = random_nodes(d, o.random, o.seed);
    values.resize(o.random);
    for (int j = 0; j < o.random; ++j) values(j) = std::sin(nodes.points.col(j).sum());
    source = "random=" + std::to_string(o.random) + " seed=" + std::to_string(o.seed) + " values=sin(sum x)";
  } else {
    throw KernelError(ErrorCode::ParameterOutOfRange, "interp needs --nodes FILE or --random N");
  }
  if (nodes.size() == 0) throw KernelError(ErrorCode::ParameterOutOfRange, "no nodes given");

  const Interpolant interp = fit(spec, nodes, values);
  std::fprintf(stderr, "relative_residual=%.3e\n", interp.relative_residual);

  Eigen::MatrixXd probes = nodes.points;
  if (!o.probes.empty()) probes = cli::read_points(o.probes, d, false).points;

  if (!o.coefficients.empty()) {
    std::ofstream cf(o.coefficients);
    if (!cf) throw KernelError(ErrorCode::IoError, "cannot write '" + o.coefficients + "'");
    for (Eigen::Index j = 0; j < interp.coefficients.size(); ++j) {
      for (int i = 0; i < d; ++i) cf << format_number(nodes.points(i, j)) << ' ';
      cf << format_number(interp.coefficients(j)) << '\n';
    }
    if (!cf) throw KernelError(ErrorCode::IoError, "write failed for '" + o.coefficients + "'");
  }

  Sink sink(o.output);
  header(sink.out(), "interp", o, source + " relative_residual=" + format_number(interp.relative_residual));
  for (int i = 0; i < d; ++i) sink.out() << 'x' << i << ',';
  sink.out() << "value\n";
  emit_rows(sink.out(), static_cast<std::size_t>(probes.cols()), [&](std::size_t j) {
    std::string row;
    const Eigen::VectorXd x = probes.col(static_cast<Eigen::Index>(j));
    for (int i = 0; i < d; ++i) row += format_number(x(i)) + ",";
    return row + format_number(eval_interpolant(interp, x));
  });
  sink.finish();
  return interp.relative_residual <= 1e-10 ? 0 : kExitLinearAlgebra;
}

int cmd_verify(const Options& o) {
  if (!(o.tolerance_scale > 0.0)) throw KernelError(ErrorCode::ParameterOutOfRange, "tolerance scale must be > 0");
  AcceptanceOptions opts;
  opts.only = o.only;
  opts.tolerance_scale = o.tolerance_scale;
  opts.seed = o.seed;
  const auto& groups = acceptance_groups();
  if (!o.only.empty() && std::find(groups.begin(), groups.end(), o.only) == groups.end())
    throw KernelError(ErrorCode::ParameterOutOfRange, "unknown group '" + o.only + "'");
  Sink sink(o.output);
  sink.out() << "# cskern " << CSKERN_VERSION << "\n# command=verify only=" << (o.only.empty() ? "all" : o.only)
             << " tolerance_scale=" << format_number(o.tolerance_scale) << " seed=" << o.seed << '\n';
  int failures = 0;
  for (const CriterionResult& r : run_acceptance(opts)) {
    sink.out() << format_result(r) << '\n';
    sink.out().flush();
    if (!r.pass) ++failures;
  }
  sink.finish();
  return std::min(failures, 125);
}

void add_spec_options(CLI::App* app, Options& o) {
  app->add_option("--family", o.family, "askey | wendland | smooth | bessel")->capture_default_str();
  app->add_option("-d,--dimension", o.dimension, "spatial dimension")->capture_default_str();
  app->add_option("--order", o.order, "alpha (askey) or delta")->capture_default_str();
}

void add_grid_options(CLI::App* app, Options& o) {
  app->add_option("--grid", o.grid, "start:stop:count");
  app->add_option("--spacing", o.spacing, "linear | log")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactly supported positive definite kernels: evaluation, spectra, transforms, interpolation"};
  app.set_version_flag("--version", std::string("cskern ") + CSKERN_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "write CSV here instead of stdout");
  app.add_option("--seed", o.seed, "seed for random node sets")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "profile values with the closed form when one is registered");
  add_spec_options(eval, o);
  add_grid_options(eval, o);

  auto* spec = app.add_subcommand("spectrum", "spectral density, its Fourier-scaled value and the regime used");
  add_spec_options(spec, o);
  add_grid_options(spec, o);

  auto* transform = app.add_subcommand("transform", "run a transform identity and report its error");
  add_spec_options(transform, o);
  add_grid_options(transform, o);
  transform->add_option("--identity", o.identity, "forward | roundtrip | squared-binomial | binomial | orderwalk")
      ->capture_default_str();
  transform->add_option("--alpha", o.alpha, "binomial density alpha")->capture_default_str();
  transform->add_option("--beta", o.beta, "binomial density beta")->capture_default_str();
  transform->add_option("--lambda", o.lambda, "transform order");
  transform->add_option("--tail-tolerance", o.tail_tolerance, "inversion tail tolerance")->capture_default_str();

  auto* interp = app.add_subcommand("interp", "fit an interpolant and evaluate it at probe points");
  add_spec_options(interp, o);
  interp->add_option("--nodes", o.nodes, "node file: d coordinates and a value per line");
  interp->add_option("--random", o.random, "use N seeded random nodes with values sin(sum x)");
  interp->add_option("--probes", o.probes, "probe file: d coordinates per line (default: the nodes)");
  interp->add_option("--coefficients", o.coefficients, "write node coordinates and coefficients here");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite; exit status is the failure count");
  verify->add_option("--only", o.only, "run a single group");
  verify->add_option("--tolerance-scale", o.tolerance_scale, "multiply every threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParameter;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*spec) return cmd_spectrum(o);
    if (*transform) return cmd_transform(o);
    if (*interp) return cmd_interp(o);
    if (*verify) return cmd_verify(o);
  } catch (const KernelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParameter;
  }
  return kExitParameter;
}
