#include "cskern/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "cskern/closed_forms.hpp"
#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/parallel.hpp"
#include "cskern/rkhs.hpp"
#include "cskern/specfun.hpp"
#include "cskern/transforms.hpp"

namespace cskern {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out = linspace(std::log(lo), std::log(hi), n);
  for (double& x : out) x = std::exp(x);
  return out;
}

double rel_err(double got, double want) {
  const double diff = std::abs(got - want);
  return want == 0.0 ? diff : diff / std::abs(want);
}

// Worst value of err(x) over xs, evaluated in parallel.
double worst(const std::vector<double>& xs, const std::function<double(double)>& err) {
  std::vector<double> e(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { e[i] = err(xs[i]); });
  double m = 0.0;
  for (double v : e) m = std::max(m, std::isnan(v) ? INFINITY : v);
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Check {
  std::string label;
  double measured;
  double threshold;
};

// The first check is the headline; all must hold for a PASS.
CriterionResult combine(int id, const std::string& group, const std::vector<Check>& checks, double scale,
                        std::string extra = {}) {
  CriterionResult r;
  r.id = id;
  r.group = group;
  r.measured = checks.front().measured;
  r.threshold = checks.front().threshold * scale;
  r.pass = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Check& c = checks[i];
    const bool ok = c.measured <= c.threshold * scale;
    r.pass = r.pass && ok;
    if (i) detail << ' ';
    detail << c.label << '=' << fmt(c.measured) << (ok ? "<=" : ">") << fmt(c.threshold * scale);
  }
  if (!extra.empty()) detail << ' ' << extra;
  r.detail = detail.str();
  return r;
}

CriterionResult tables(double scale) {
  struct Row {
    Family family;
    int d;
    double delta;
  };
  const std::vector<Row> rows = {
      {Family::WendlandType, 1, 2.0}, {Family::WendlandType, 2, 2.0}, {Family::WendlandType, 1, 3.0},
      {Family::WendlandType, 2, 3.0}, {Family::WendlandType, 3, 3.0}, {Family::WendlandType, 2, 1.5},
      {Family::WendlandType, 3, 2.0}, {Family::Smooth, 1, 1.0},       {Family::Smooth, 2, 1.5},
      {Family::Smooth, 3, 2.0},       {Family::Smooth, 1, 1.5},       {Family::Smooth, 1, 2.0},
      {Family::Smooth, 1, 3.0},       {Family::Smooth, 2, 2.5},       {Family::Smooth, 2, 3.5},
      {Family::Smooth, 2, 4.5},       {Family::Smooth, 3, 3.0},       {Family::Smooth, 3, 4.0},
  };
  const std::vector<double> ts = linspace(0.0, 0.99, 100);
  double err = 0.0;
  for (const Row& row : rows) {
    const KernelSpec spec{row.family, row.d, row.delta};
    err = std::max(err, worst(ts, [&](double t) {
                     const double want = *closed_form(spec, Side::Profile, t);
                     const double got = row.family == Family::WendlandType
                                            ? profile_phi(row.d, row.delta, t, ProfileMethod::Quadrature)
                                            : profile_psi(row.d, row.delta, t, ProfileMethod::Quadrature);
                     return rel_err(got, want);
                   }));
  }
  return combine(1, "tables", {{"max_rel", err, 1e-8}}, scale, std::to_string(rows.size()) + " rows");
}

// 1F2(a; b1, b2; -r^2/4) summed term by term with Kahan compensation.
double compensated_1f2(double a, double b1, double b2, double r, int terms) {
  const double z = -0.25 * r * r;
  double term = 1.0, sum = 1.0, carry = 0.0;
  for (int k = 0; k < terms; ++k) {
    term *= (a + k) / ((b1 + k) * (b2 + k) * (k + 1.0)) * z;
    const double y = term - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
    if (term == 0.0) break;
  }
  return sum;
}

CriterionResult spectra(double scale) {
  const std::vector<double> rs = logspace(0.05, 1e3, 400);
  const double err = worst(rs, [](double r) {
    const double w = 120.0 / std::pow(r, 4) * (1.0 + 0.5 * std::cos(r)) - 180.0 * std::sin(r) / std::pow(r, 5);
    const double q = 840.0 / std::pow(r, 7) * (r * r * r - 12.0 * r + 15.0 * std::sin(r) - 3.0 * r * std::cos(r));
    // The elementary forms cancel badly for small r; the quad-precision
    // registry evaluation is used there instead.
    const double w_ref = r < 1.0 ? *closed_form({Family::WendlandType, 1, 2.0}, Side::Spectrum, r) : w;
    const double q_ref = r < 2.0 ? *closed_form({Family::Smooth, 1, 2.0}, Side::Spectrum, r) : q;
    return std::max(rel_err(spectrum_w(2.0, r), w_ref), rel_err(spectrum_q(2.0, r), q_ref));
  });
  const std::vector<double> small = logspace(1e-6, 1e-2, 50);
  const double series_err = worst(small, [](double r) {
    return std::max(rel_err(spectrum_w(2.0, r), compensated_1f2(2.0, 3.0, 3.5, r, 2000)),
                    rel_err(spectrum_q(2.0, r), compensated_1f2(2.0, 4.0, 4.5, r, 2000)));
  });
  return combine(2, "spectra", {{"max_rel", err, 1e-8}, {"series_rel", series_err, 1e-10}}, scale);
}

CriterionResult askey(double scale) {
  const std::vector<double> rs = logspace(0.05, 500.0, 300);
  double err = 0.0;
  for (auto [d, alpha] : std::vector<std::pair<int, double>>{{1, 2.0}, {1, 3.0}, {3, 2.0}}) {
    const KernelSpec spec{Family::Askey, d, alpha};
    err = std::max(err, worst(rs, [&](double r) {
                     return rel_err(spectrum_lambda(d, alpha, r), *closed_form(spec, Side::Spectrum, r));
                   }));
  }
  const Profile a2 = profile_of({Family::Askey, 1, 2.0});
  const double a2_err =
      worst(rs, [&](double r) { return rel_err(radial_fourier(1, a2, r), askey2_fourier(r)); });
  return combine(3, "askey", {{"max_rel", err, 1e-8}, {"a2_rel", a2_err, 1e-7}}, scale);
}

CriterionResult forward(double scale) {
  std::vector<KernelSpec> specs;
  for (int d = 1; d <= 3; ++d)
    for (double delta : {2.0, 2.5, 3.0}) {
      specs.push_back({Family::WendlandType, d, delta});
      specs.push_back({Family::Smooth, d, delta});
    }
  specs.push_back({Family::Smooth, 1, 0.75});
  const std::vector<double> rs = {0.5, 1.0, 5.0, 20.0, 50.0};
  double err = 0.0;
  for (const KernelSpec& spec : specs) {
    const Profile f = profile_of(spec);
    const double c = fourier_constant(spec);
    err = std::max(err, worst(rs, [&](double r) {
                     return rel_err(radial_fourier(spec.dimension, f, r), c * spectrum(spec, r).value);
                   }));
  }
  return combine(4, "forward", {{"max_rel", err, 1e-6}}, scale, std::to_string(specs.size()) + " specs");
}

CriterionResult inversion(double scale) {
  const std::vector<double> ts = {0.1, 0.3, 0.5, 0.7, 0.9};
  double err = 0.0;
  for (auto [d, delta] : std::vector<std::pair<int, double>>{{1, 2.0}, {2, 2.5}, {3, 2.0}}) {
    const KernelSpec spec{Family::WendlandType, d, delta};
    const double omega = omega_constant(d, delta);
    const SpectralFunction phi{[spec, omega](double r) { return spectrum(spec, r).value / omega; },
                               spectrum_decay_exponent(spec)};
    err = std::max(err, worst(ts, [&](double t) {
                     return std::abs(inverse_radial(d, phi, t) - profile_phi(d, delta, t));
                   }));
  }
  return combine(5, "inversion", {{"max_abs", err, 1e-4}}, scale);
}

CriterionResult orderwalk(double scale) {
  // ∫ Ω_λ(rt) f dt against the (d-2)/2 transform of
  // I_λ f weighted by t^{d-1}.
  const std::vector<Profile> inputs = {profile_of({Family::Askey, 1, 2.0}),
                                       BinomialDensity{2.0, 1.5, false}.as_profile(),
                                       profile_of({Family::WendlandType, 1, 2.0})};
  struct Case {
    int d;
    double lambda, r;
    std::size_t f;
  };
  std::vector<Case> cases;
  for (int d = 1; d <= 3; ++d)
    for (double lambda : {0.5 * d, 0.5 * d + 1.0})
      for (double r : {1.0, 5.0, 20.0})
        for (std::size_t f = 0; f < inputs.size(); ++f) cases.push_back({d, lambda, r, f});
  std::vector<double> e(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const Profile walked = order_walk(c.lambda, c.d, inputs[c.f]);
    const Profile weighted{walked.smooth, walked.left_exponent + (c.d - 1), walked.right_exponent};
    const double lhs = hankel_schoenberg(c.lambda, inputs[c.f], c.r);
    const double rhs = hankel_schoenberg(0.5 * (c.d - 2), weighted, c.r);
    e[i] = std::abs(lhs - rhs);
  });
  const double walk_err = *std::max_element(e.begin(), e.end());

  // Binomial-density equivalences on a 3x3x3 grid.
  struct Grid {
    double alpha, beta, lambda;
  };
  std::vector<Grid> grid;
  for (double alpha : {1.0, 2.0, 3.5})
    for (double beta : {0.5, 1.5, 3.0})
      for (double lambda : {-0.5, 0.5, 2.0}) grid.push_back({alpha, beta, lambda});
  std::vector<double> hyp(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Grid& g = grid[i];
    const Profile sq = BinomialDensity{g.alpha, g.beta, true}.as_profile();
    const Profile lin = BinomialDensity{g.alpha, g.beta, false}.as_profile();
    double m = 0.0;
    for (double r : {0.5, 2.0, 10.0}) {
      m = std::max(m, rel_err(hankel_schoenberg(g.lambda, sq, r),
                              hyp1f2(g.beta, g.alpha + g.beta, g.lambda + 1.0, r).value));
      const double want = hyp2f3(0.5 * g.beta, 0.5 * (g.beta + 1.0), 0.5 * (g.alpha + g.beta),
                                 0.5 * (g.alpha + g.beta + 1.0), g.lambda + 1.0, r)
                              .value;
      m = std::max(m, rel_err(hankel_schoenberg(g.lambda, lin, r), want));
    }
    hyp[i] = m;
  });
  const double hyp_err = *std::max_element(hyp.begin(), hyp.end());
  return combine(6, "orderwalk", {{"walk_abs", walk_err, 1e-6}, {"binomial_rel", hyp_err, 1e-7}}, scale);
}

CriterionResult positivity(double scale) {
  const std::vector<double> rs = logspace(1e-6, 1e6, 400);
  double worst_ratio = 0.0;
  std::ostringstream extra;
  for (int d = 1; d <= 3; ++d) {
    const double alpha_min = d == 1 ? 2.0 : 0.5 * (d + 1);
    for (const KernelSpec& spec : {KernelSpec{Family::Askey, d, alpha_min}, KernelSpec{Family::WendlandType, d, 2.0},
                                   KernelSpec{Family::Smooth, d, 2.0}}) {
      double ratio = INFINITY;
      try {
        const EquivalenceConstants c = sobolev_equivalence_check(spec, rs);
        ratio = c.c2 / c.c1;
      } catch (const KernelError&) {
      }
      worst_ratio = std::max(worst_ratio, ratio);
    }
  }
  const EquivalenceConstants bp = sobolev_equivalence_check({Family::BesselPotential, 2, 1.5}, rs);
  const double bp_err = std::max(std::abs(bp.c1 - 1.0), std::abs(bp.c2 - 1.0));
  // A nonpositive value surfaces as an infinite ratio; any finite bound passes.
  const bool finite = std::isfinite(worst_ratio);
  CriterionResult r = combine(7, "positivity", {{"bessel_c_err", bp_err, 1e-12}}, scale,
                              "max_c2/c1=" + fmt(worst_ratio));
  r.pass = r.pass && finite;
  return r;
}

CriterionResult asymptotics(double scale) {
  // r^{2δ} W_2 - 120 (1 + cos r / 2) is O(1/r); for Q_2 the remainder beyond
  // Γ(8)/Γ(4) is O(r^-2) since min(2δ+2, 3δ) - 2δ = 2.
  const std::vector<double> rs = {200.0, 400.0, 800.0};
  auto analyze = [&](auto residual, double rate, double& spread, bool& decreasing) {
    double lo = INFINITY, hi = 0.0, prev = INFINITY;
    decreasing = true;
    for (double r : rs) {
      const double e = residual(r);
      decreasing = decreasing && e < prev;
      prev = e;
      const double c = e * std::pow(r, rate);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    spread = hi / lo;
  };
  double w_spread, q_spread;
  bool w_dec, q_dec;
  analyze([](double r) { return std::abs(std::pow(r, 4) * spectrum_w(2.0, r) - 120.0 * (1.0 + 0.5 * std::cos(r - 2 * kPi))); },
          1.0, w_spread, w_dec);
  analyze([](double r) { return std::abs(std::pow(r, 4) * spectrum_q(2.0, r) - 840.0); }, 2.0, q_spread, q_dec);
  CriterionResult r = combine(8, "asymptotics", {{"w_C_spread", w_spread, 2.0}, {"q_C_spread", q_spread, 2.0}},
                              scale, std::string("decreasing=") + (w_dec && q_dec ? "yes" : "no"));
  r.pass = r.pass && w_dec && q_dec;
  return r;
}

CriterionResult gram_check(double scale, std::uint64_t seed) {
  std::vector<KernelSpec> specs = {{Family::Askey, 1, 2.0},        {Family::Askey, 2, 2.0},
                                   {Family::Askey, 3, 2.5},        {Family::WendlandType, 1, 2.0},
                                   {Family::WendlandType, 2, 2.0}, {Family::WendlandType, 3, 2.0},
                                   {Family::Smooth, 1, 2.0},       {Family::Smooth, 2, 2.5},
                                   {Family::Smooth, 3, 3.0}};
  int failures = 0, runs = 0;
  double min_pivot = INFINITY;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (int k = 0; k < 20; ++k) {
      const int size = 10 + 10 * (k % 20);
      const NodeSet nodes = random_nodes(specs[s].dimension, size, seed + 1000 * s + k);
      ++runs;
      try {
        const GramFactorization f = factorize(gram(specs[s], nodes));
        min_pivot = std::min(min_pivot, f.min_pivot());
        if (!(f.min_pivot() > 0.0)) ++failures;
      } catch (const KernelError&) {
        ++failures;
      }
    }
  }
  CriterionResult r = combine(9, "gram", {{"failures", static_cast<double>(failures), 0.0}}, 1.0,
                              std::to_string(runs) + " sets min_pivot=" + fmt(min_pivot));
  (void)scale;  // a failure count has no tolerance to scale
  return r;
}

CriterionResult reproducing(double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.5);
  std::vector<std::pair<double, double>> pairs(10);
  for (auto& p : pairs) p = {uniform(rng), uniform(rng)};
  const KernelSpec w{Family::WendlandType, 1, 2.0};
  std::vector<double> e(2 * pairs.size());
  parallel_for(e.size(), [&](std::size_t i) {
    const auto [x, y] = pairs[i / 2];
    const double h = std::abs(x - y);
    if (i % 2 == 0) {
      const double v = native_inner_product_1d(w, kernel_translate_spectrum(w, y), kernel_translate_spectrum(w, x));
      e[i] = std::abs(v - profile(w, h));
    } else {
      const TranslatedSpectrum u{askey2_fourier, 2.0, y, 1.0}, t{askey2_fourier, 2.0, x, 1.0};
      const double v = weighted_inner_product_1d(u, t, askey2_weight, 2.0);
      e[i] = std::abs(v - (h < 1.0 ? (1.0 - h) * (1.0 - h) : 0.0));
    }
  });
  double wend = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) (i % 2 ? a2 : wend) = std::max(i % 2 ? a2 : wend, e[i]);
  return combine(10, "reproducing", {{"wendland_abs", wend, 1e-6}, {"askey2_abs", a2, 1e-6}}, scale);
}

CriterionResult bessel(double scale) {
  const std::vector<double> xs = linspace(0.1, 10.0, 100);
  double ref_err = 0.0, route_err = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const double delta = 0.5 * (d + 1);
    const double c = 1.0 / (std::pow(2.0, d) * std::pow(kPi, 0.5 * (d - 1)) * std::tgamma(delta));
    ref_err = std::max(ref_err, worst(xs, [&](double x) {
                         const double want = c * std::exp(-x);
                         return std::max(rel_err(bessel_potential_g(d, delta, x, BesselRoute::Quadrature), want),
                                         rel_err(bessel_potential_g(d, delta, x), want));
                       }));
    for (int m = 0; m <= 2; ++m) {
      const double dm = 0.5 * d + m + 0.5;
      route_err = std::max(route_err, worst(xs, [&](double x) {
                             return rel_err(bessel_potential_g(d, dm, x, BesselRoute::FiniteSum),
                                            bessel_potential_g(d, dm, x, BesselRoute::Quadrature));
                           }));
    }
  }
  return combine(11, "bessel", {{"reference_rel", ref_err, 1e-10}, {"route_rel", route_err, 1e-9}}, scale);
}

}  // namespace

const std::vector<std::string>& acceptance_groups() {
  static const std::vector<std::string> groups = {"tables",    "spectra",    "askey",       "forward",
                                                  "inversion", "orderwalk",  "positivity",  "asymptotics",
                                                  "gram",      "reproducing", "bessel"};
  return groups;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const auto& groups = acceptance_groups();
  if (!options.only.empty() && std::find(groups.begin(), groups.end(), options.only) == groups.end())
    throw KernelError(ErrorCode::DomainError, "unknown acceptance group '" + options.only + "'");
  const double s = options.tolerance_scale;
  const std::vector<std::function<CriterionResult()>> runners = {
      [&] { return tables(s); },          [&] { return spectra(s); },
      [&] { return askey(s); },           [&] { return forward(s); },
      [&] { return inversion(s); },       [&] { return orderwalk(s); },
      [&] { return positivity(s); },      [&] { return asymptotics(s); },
      [&] { return gram_check(s, options.seed); }, [&] { return reproducing(s, options.seed); },
      [&] { return bessel(s); },
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!options.only.empty() && groups[i] != options.only) continue;
    try {
      out.push_back(runners[i]());
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = static_cast<int>(i) + 1;
      r.group = groups[i];
      r.measured = INFINITY;
      r.detail = std::string("error: ") + e.what();
      out.push_back(r);
    }
  }
  return out;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream os;
  os << result.id << ' ' << result.group << " measured=" << fmt(result.measured)
     << " threshold=" << fmt(result.threshold) << ' ' << (result.pass ? "PASS" : "FAIL");
  if (!result.detail.empty()) os << ' ' << result.detail;
  return os.str();
}

}  // namespace cskern
