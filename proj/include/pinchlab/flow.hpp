#pragma once

#include "pinchlab/report.hpp"
#include "pinchlab/sigma.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinchlab {

// ---------------------------------------------------------------------------
// Configuration

/// Initial radial profile u(theta) over the polar angle theta in [0, pi].
struct Profile {
  enum class Kind { sphere, perturbed, tabulated };
  Kind kind = Kind::sphere;
  double r0 = 1.0;
  double e = 0.0;             // amplitude of the P2(cos theta) mode
  std::vector<double> table;  // u at the M+1 grid nodes

  static Profile sphere(double r0) { return {Kind::sphere, r0, 0.0, {}}; }
  static Profile perturbed(double r0, double e) { return {Kind::perturbed, r0, e, {}}; }
  static Profile tabulated(std::vector<double> u) { return {Kind::tabulated, 0.0, 0.0, std::move(u)}; }

  /// Parses "sphere:r0=R" or "perturbed:r0=R,e=E".
  static Profile parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    double r0 = std::numeric_limits<double>::quiet_NaN();
    double e = 0.0;
    if (colon != std::string::npos) {
      std::stringstream ss(spec.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("profile: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        double value = 0;
        try {
          std::size_t used = 0;
          value = std::stod(item.substr(eq + 1), &used);
          if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw std::invalid_argument("profile: malformed number in '" + item + "'");
        }
        if (key == "r0") r0 = value;
        else if (key == "e") e = value;
        else throw std::invalid_argument("profile: unknown key '" + key + "'");
      }
    }
    if (std::isnan(r0)) throw std::invalid_argument("profile: r0 is required");
    if (kind == "sphere") {
      if (e != 0.0) throw std::invalid_argument("profile: sphere takes no amplitude");
      return sphere(r0);
    }
    if (kind == "perturbed") return perturbed(r0, e);
    throw std::invalid_argument("profile: unknown kind '" + kind + "' (expected sphere or perturbed)");
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind) {
      case Kind::sphere: os << "sphere:r0=" << r0; break;
      case Kind::perturbed: os << "perturbed:r0=" << r0 << ",e=" << e; break;
      case Kind::tabulated: os << "tabulated:" << table.size(); break;
    }
    return os.str();
  }

  [[nodiscard]] double value(double theta) const {
    const double c = std::cos(theta);
    return kind == Kind::perturbed ? r0 * (1.0 + e * 0.5 * (3.0 * c * c - 1.0)) : r0;
  }

  [[nodiscard]] std::vector<double> sample(int M) const {
    if (kind == Kind::tabulated) {
      if (table.size() != static_cast<std::size_t>(M) + 1)
        throw std::invalid_argument("profile: tabulated size does not match grid_points + 1");
      return table;
    }
    std::vector<double> u(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) u[static_cast<std::size_t>(j)] = value(std::numbers::pi * j / M);
    return u;
  }
};

/// Radius fed to the extinction-time fit.
enum class EffectiveRadius { u_min, volume };

struct FlowConfig {
  int epsilon = 0;  // 0: Euclidean space, 1: sphere
  int n = 3;
  int k = 1;
  double alpha = 1.0;
  Profile profile;
  int grid_points = 200;
  double safety = 0.2;
  double stop_ratio = 0.1;  // stop once u_min < stop_ratio * initial u_min
  double t_end = std::numeric_limits<double>::infinity();
  long max_steps = 20'000'000;
  long snapshot_every = 50;
  double dt_floor_factor = 1e-14;
  EffectiveRadius extinction_radius = EffectiveRadius::volume;

  void validate() const {
    if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("flow: epsilon must be 0 or 1");
    if (n < 3) throw std::invalid_argument("flow: n >= 3 required");
    if (k < 1 || k > n) throw std::invalid_argument("flow: 1 <= k <= n required");
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::invalid_argument("flow: alpha must be positive");
    if (grid_points < 4 || grid_points % 2 != 0) throw std::invalid_argument("flow: grid_points must be even and >= 4");
    if (!(safety > 0)) throw std::invalid_argument("flow: safety must be positive");
    if (!(stop_ratio > 0 && stop_ratio < 1)) throw std::invalid_argument("flow: stop_ratio must lie in (0, 1)");
    if (!(t_end > 0)) throw std::invalid_argument("flow: t_end must be positive");
    if (snapshot_every < 1 || max_steps < 1) throw std::invalid_argument("flow: step counts must be positive");
  }
};

class ConvexityLossError : public std::runtime_error {
 public:
  ConvexityLossError(int node, double theta, double lambda_mer, double lambda_rot)
      : std::runtime_error("convexity lost at node " + std::to_string(node) + " (theta=" + std::to_string(theta) +
                           ", lambda_mer=" + std::to_string(lambda_mer) + ", lambda_rot=" + std::to_string(lambda_rot) +
                           ")"),
        node(node) {}
  int node;
};

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Geometry of a radial graph

struct FlowState {
  std::vector<double> theta;
  std::vector<double> u;
  double t = 0.0;
  long steps = 0;

  [[nodiscard]] int M() const { return static_cast<int>(u.size()) - 1; }
  [[nodiscard]] double h() const { return std::numbers::pi / M(); }
};

struct CurvatureField {
  std::vector<double> lambda_mer;
  std::vector<double> lambda_rot;
  std::vector<double> v;
  std::vector<double> sigma_k;
};

namespace detail {

inline double sn(int eps, double u) { return eps == 1 ? std::sin(u) : u; }
inline double cs(int eps, double u) { return eps == 1 ? std::cos(u) : 1.0; }

}  // namespace detail

inline void check_admissible(const std::vector<double>& u, int epsilon) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] > 0) || !std::isfinite(u[j]))
      throw std::domain_error("flow: u must be positive (node " + std::to_string(j) + ")");
    if (epsilon == 1 && !(u[j] < std::numbers::pi / 2))
      throw std::domain_error("flow: u must stay below pi/2 in the sphere (node " + std::to_string(j) + ")");
  }
}

/// Principal curvatures from second-order central differences with even
/// reflection across both poles.
inline CurvatureField principal_curvatures(const std::vector<double>& u, const FlowConfig& cfg) {
  const int M = static_cast<int>(u.size()) - 1;
  const double h = std::numbers::pi / M;
  CurvatureField f;
  f.lambda_mer.resize(u.size());
  f.lambda_rot.resize(u.size());
  f.v.resize(u.size());
  f.sigma_k.resize(u.size());
  for (int j = 0; j <= M; ++j) {
    const double um = u[static_cast<std::size_t>(j == 0 ? 1 : j - 1)];
    const double up = u[static_cast<std::size_t>(j == M ? M - 1 : j + 1)];
    const double uj = u[static_cast<std::size_t>(j)];
    const double d1 = (up - um) / (2 * h);
    const double d2 = (up - 2 * uj + um) / (h * h);
    const double s = detail::sn(cfg.epsilon, uj);
    const double c = detail::cs(cfg.epsilon, uj);
    const double p1 = d1 / s;
    const double p2 = d2 / s - d1 * d1 * c / (s * s);
    const double v2 = 1 + p1 * p1;
    const double v = std::sqrt(v2);
    const double lm = (-p2 / v2 + c) / (v * s);
    double lr;
    if (j == 0 || j == M) {
      lr = lm;
    } else {
      const double theta = h * j;
      lr = (-(std::cos(theta) / std::sin(theta)) * p1 + c) / (v * s);
    }
    if (!(lm > 0) || !(lr > 0)) throw ConvexityLossError(j, h * j, lm, lr);
    const auto i = static_cast<std::size_t>(j);
    f.lambda_mer[i] = lm;
    f.lambda_rot[i] = lr;
    f.v[i] = v;
    f.sigma_k[i] = sigma_k_axisym(cfg.n, cfg.k, lm, lr);
  }
  return f;
}

inline CurvatureField principal_curvatures(const FlowState& s, const FlowConfig& cfg) {
  return principal_curvatures(s.u, cfg);
}

/// du/dt = -sigma_k^alpha v at every node.
inline std::vector<double> flow_speed(const CurvatureField& f, const FlowConfig& cfg) {
  std::vector<double> rate(f.v.size());
  for (std::size_t j = 0; j < rate.size(); ++j) rate[j] = -std::pow(f.sigma_k[j], cfg.alpha) * f.v[j];
  return rate;
}

inline std::vector<double> flow_speed(const FlowState& s, const FlowConfig& cfg) {
  return flow_speed(principal_curvatures(s, cfg), cfg);
}

/// Largest diffusion coefficient of the linearized equation, used for the explicit step bound.
inline double max_stiffness(const std::vector<double>& u, const CurvatureField& f, const FlowConfig& cfg) {
  double d = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double s = detail::sn(cfg.epsilon, u[j]);
    const double lm = f.lambda_mer[j];
    const double lr = f.lambda_rot[j];
    const double coeff = cfg.alpha * std::pow(f.sigma_k[j], cfg.alpha - 1) *
                         (dsigma_dmer(cfg.n, cfg.k, lm, lr) / (f.v[j] * f.v[j]) +
                          (cfg.n - 1) * dsigma_drot(cfg.n, cfg.k, lm, lr)) /
                         (s * s);
    d = std::max(d, coeff);
  }
  return d;
}

inline double stable_dt(const FlowState& s, const CurvatureField& f, const FlowConfig& cfg) {
  const double h = s.h();
  return cfg.safety * h * h / max_stiffness(s.u, f, cfg);
}

/// One classical RK4 step of size min(stable_dt, dt_max).
inline FlowState advance(const FlowState& s, const FlowConfig& cfg,
                         double dt_max = std::numeric_limits<double>::infinity(), double* dt_used = nullptr) {
  const CurvatureField f0 = principal_curvatures(s, cfg);
  const double dt = std::min(stable_dt(s, f0, cfg), dt_max);
  const std::size_t N = s.u.size();
  auto shifted = [&](const std::vector<double>& rate, double w) {
    std::vector<double> out(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = s.u[j] + w * rate[j];
    return out;
  };
  const auto k1 = flow_speed(f0, cfg);
  const auto k2 = flow_speed(principal_curvatures(shifted(k1, dt / 2), cfg), cfg);
  const auto k3 = flow_speed(principal_curvatures(shifted(k2, dt / 2), cfg), cfg);
  const auto k4 = flow_speed(principal_curvatures(shifted(k3, dt), cfg), cfg);
  FlowState next = s;
  for (std::size_t j = 0; j < N; ++j) next.u[j] = s.u[j] + dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  next.t = s.t + dt;
  next.steps = s.steps + 1;
  if (dt_used != nullptr) *dt_used = dt;
  return next;
}

inline FlowState make_initial_state(const FlowConfig& cfg) {
  cfg.validate();
  FlowState s;
  s.u = cfg.profile.sample(cfg.grid_points);
  s.theta.resize(s.u.size());
  for (int j = 0; j <= cfg.grid_points; ++j) s.theta[static_cast<std::size_t>(j)] = std::numbers::pi * j / cfg.grid_points;
  check_admissible(s.u, cfg.epsilon);
  (void)principal_curvatures(s, cfg);
  return s;
}

// ---------------------------------------------------------------------------
// Shrinking geodesic spheres

/// The exact solution for a sphere (or geodesic sphere) of radius rho.
struct SphereModel {
  int epsilon = 0;
  int n = 3;
  int k = 1;
  double alpha = 1.0;

  static SphereModel of(const FlowConfig& c) { return {c.epsilon, c.n, c.k, c.alpha}; }

  [[nodiscard]] double C() const { return std::pow(binomial(n, k), alpha); }
  [[nodiscard]] double exponent() const { return k * alpha; }

  /// Radial speed of a sphere of radius rho: -C(n,k)^alpha (cs/sn)^{k alpha}.
  [[nodiscard]] double rate(double rho) const {
    return -C() * std::pow(detail::cs(epsilon, rho) / detail::sn(epsilon, rho), exponent());
  }

  /// Time for a sphere of radius rho to shrink to a point.
  [[nodiscard]] double time_to_extinction(double rho) const {
    if (!(rho >= 0)) throw std::domain_error("time_to_extinction: negative radius");
    if (epsilon == 0) return std::pow(rho, exponent() + 1) / ((exponent() + 1) * C());
    if (!(rho < std::numbers::pi / 2)) throw std::domain_error("time_to_extinction: radius must be < pi/2");
    if (rho == 0) return 0;
    const double p = exponent();
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral = integrator.integrate([p](double s) { return std::pow(std::tan(s), p); }, 0.0, rho);
    return integral / C();
  }

  /// Radius whose time to extinction equals `remaining`.
  [[nodiscard]] double radius_at_remaining(double remaining) const {
    if (!(remaining >= 0)) throw std::domain_error("radius_at_remaining: negative remaining time");
    if (epsilon == 0) return std::pow((exponent() + 1) * C() * remaining, 1.0 / (exponent() + 1));
    if (remaining == 0) return 0;
    double hi = std::numbers::pi / 2 * (1 - 1e-9);
    if (time_to_extinction(hi) < remaining) throw std::domain_error("radius_at_remaining: beyond the hemisphere");
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve([&](double x) { return time_to_extinction(x) - remaining; }, 0.0, hi,
                                               -remaining, time_to_extinction(hi) - remaining,
                                               boost::math::tools::eps_tolerance<double>(48), iters);
    return 0.5 * (r.first + r.second);
  }
};

// ---------------------------------------------------------------------------
// Diagnostics

struct FlowMetrics {
  double t = 0;
  double tau = 0;
  double sigma_k_min = 0;
  double sigma_k_max = 0;
  double ratio_max = 1;
  double G_max = 0;
  double C31_monitor = 0;
  double rho_inner = 0;
  double rho_outer = 0;
  double u_min = 0;
  double u_max = 0;
  double lambda_min = 0;
  double lambda_max = 0;
  double center = 0;  // axis offset of the best enclosing ball
  double r_volume = 0;  // radius of the ball with the same enclosed volume
  long steps = 0;
};

/// Pointwise quantities that need no radius search.
struct FieldSummary {
  double sigma_k_min, sigma_k_max, ratio_max, G_max, C31_monitor, lambda_min, lambda_max;
};

inline FieldSummary summarize(const CurvatureField& f, const FlowConfig& cfg) {
  FieldSummary s{std::numeric_limits<double>::infinity(), 0, 1, 0, 0, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < f.v.size(); ++j) {
    const double lm = f.lambda_mer[j];
    const double lr = f.lambda_rot[j];
    const double sk = f.sigma_k[j];
    const double r = lm / lr;
    s.sigma_k_min = std::min(s.sigma_k_min, sk);
    s.sigma_k_max = std::max(s.sigma_k_max, sk);
    s.ratio_max = std::max(s.ratio_max, std::max(r, 1 / r));
    const double inv = 1 / lm - 1 / lr;
    s.G_max = std::max(s.G_max, (cfg.n - 1) * std::pow(sk, 2 * cfg.alpha) * inv * inv);
    s.C31_monitor = std::max(s.C31_monitor, (r + 1 / r - 2) * std::pow(sk, 2 * (cfg.alpha - 1.0 / cfg.k)));
    s.lambda_min = std::min({s.lambda_min, lm, lr});
    s.lambda_max = std::max({s.lambda_max, lm, lr});
  }
  return s;
}

/// Distance from the axis point at offset z to the surface point (theta, u).
inline double axis_distance(int epsilon, double theta, double u, double z) {
  if (epsilon == 0) return std::sqrt(std::max(0.0, u * u + z * z - 2 * u * z * std::cos(theta)));
  const double c = std::cos(u) * std::cos(z) + std::sin(u) * std::sin(z) * std::cos(theta);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

struct Radii {
  double inner;
  double outer;
  double center;  // offset of the outer-ball center along the axis
};

/// Inner and outer radii with the ball centers optimized along the symmetry axis.
inline Radii inner_outer_radii(const FlowState& s, int epsilon) {
  const auto& u = s.u;
  const double lo = -u.back();
  const double hi = u.front();
  auto max_d = [&](double z) {
    double d = 0;
    for (std::size_t j = 0; j < u.size(); ++j) d = std::max(d, axis_distance(epsilon, s.theta[j], u[j], z));
    return d;
  };
  auto neg_min_d = [&](double z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j) d = std::min(d, axis_distance(epsilon, s.theta[j], u[j], z));
    return -d;
  };
  const auto outer = boost::math::tools::brent_find_minima(max_d, lo, hi, 40);
  const auto inner = boost::math::tools::brent_find_minima(neg_min_d, lo, hi, 40);
  return {-inner.second, outer.second, outer.first};
}

/// Volume of the ball of radius r, per unit solid angle: int_0^r sn(s)^n ds.
inline double ball_volume(int epsilon, int n, double r) {
  if (epsilon == 0) return std::pow(r, n + 1) / (n + 1);
  // int sin^m = -sin^{m-1} cos / m + (m-1)/m int sin^{m-2}
  double prev = n % 2 == 0 ? r : 1 - std::cos(r);
  for (int m = n % 2 == 0 ? 2 : 3; m <= n; m += 2)
    prev = -std::pow(std::sin(r), m - 1) * std::cos(r) / m + (m - 1.0) / m * prev;
  return prev;
}

/// Radius of the (geodesic) ball enclosing the same volume as the radial graph u.
inline double volume_radius(const FlowState& s, int epsilon, int n) {
  double num = 0;
  double den = 0;
  for (std::size_t j = 0; j < s.u.size(); ++j) {
    const double w = std::pow(std::sin(s.theta[j]), n - 1) * (j == 0 || j + 1 == s.u.size() ? 0.5 : 1.0);
    num += w * ball_volume(epsilon, n, s.u[j]);
    den += w;
  }
  const double target = num / den;
  if (epsilon == 0) return std::pow((n + 1) * target, 1.0 / (n + 1));
  const auto [lo, hi] = std::minmax_element(s.u.begin(), s.u.end());
  auto excess = [&](double x) { return ball_volume(epsilon, n, x) - target; };
  const double f_lo = excess(*lo);
  const double f_hi = excess(*hi);
  if (f_lo >= 0) return *lo;
  if (f_hi <= 0) return *hi;
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(excess, *lo, *hi, f_lo, f_hi,
                                             boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (r.first + r.second);
}

inline FlowMetrics compute_metrics(const FlowState& s, const FlowConfig& cfg) {
  const CurvatureField f = principal_curvatures(s, cfg);
  const FieldSummary fs = summarize(f, cfg);
  const Radii r = inner_outer_radii(s, cfg.epsilon);
  FlowMetrics m;
  m.t = s.t;
  m.steps = s.steps;
  m.sigma_k_min = fs.sigma_k_min;
  m.sigma_k_max = fs.sigma_k_max;
  m.ratio_max = fs.ratio_max;
  m.G_max = fs.G_max;
  m.C31_monitor = fs.C31_monitor;
  m.lambda_min = fs.lambda_min;
  m.lambda_max = fs.lambda_max;
  m.rho_inner = r.inner;
  m.rho_outer = r.outer;
  m.center = r.center;
  m.u_min = *std::min_element(s.u.begin(), s.u.end());
  m.u_max = *std::max_element(s.u.begin(), s.u.end());
  m.r_volume = m.u_min == m.u_max ? m.u_min : volume_radius(s, cfg.epsilon, cfg.n);
  return m;
}

struct LineFit {
  double intercept = 0;
  double slope = 0;
  double r2 = 0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 paired samples");
  const double N = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= N;
  my /= N;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("least_squares: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

/// Extinction time from the trailing snapshots: the sphere time-to-extinction
/// of u_min is fitted linearly against t and the fit's root is returned.
inline double estimate_extinction(const std::vector<FlowMetrics>& snaps, const SphereModel& model,
                                  EffectiveRadius radius = EffectiveRadius::u_min, double window_fraction = 0.25) {
  if (snaps.size() < 10) throw std::invalid_argument("estimate_extinction: need at least 10 snapshots");
  const std::size_t w = std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(window_fraction * snaps.size())));
  const std::size_t first = snaps.size() - std::min(w, snaps.size());
  std::vector<double> t, y;
  for (std::size_t i = first; i < snaps.size(); ++i) {
    if (i > first && !(snaps[i].u_min < snaps[i - 1].u_min))
      throw InstabilityError("estimate_extinction: u_min not decreasing at t=" + std::to_string(snaps[i].t));
    t.push_back(snaps[i].t);
    y.push_back(model.time_to_extinction(radius == EffectiveRadius::u_min ? snaps[i].u_min : snaps[i].r_volume));
  }
  const LineFit fit = least_squares(t, y);
  if (!(fit.slope < 0)) throw InstabilityError("estimate_extinction: fitted extinction clock is not decreasing");
  return -fit.intercept / fit.slope;
}

struct RescaledPoint {
  double t = 0;
  double tau = 0;
  double u_tilde_min = 0;
  double u_tilde_max = 0;
  double gap = 0;  // (lambda_max - lambda_min) times the model radius
  [[nodiscard]] double deviation() const { return std::max(std::abs(u_tilde_min - 1), std::abs(u_tilde_max - 1)); }
};

/// Rescaled time for a snapshot at t with extinction at T.
inline double rescaled_time(double t, double T, const SphereModel& model) {
  if (!(t < T)) throw std::domain_error("rescaled_time: t must precede the extinction time");
  if (model.epsilon == 0) return -std::log(1 - t / T) / ((model.exponent() + 1) * model.C());
  return -std::log(model.radius_at_remaining(T - t));
}

/// Distances to the limit point q, divided by the model radius at each snapshot.
inline std::vector<RescaledPoint> rescale_series(const std::vector<FlowMetrics>& snaps,
                                                 const std::vector<FlowState>& states, double T_hat,
                                                 const SphereModel& model) {
  if (snaps.size() != states.size()) throw std::invalid_argument("rescale_series: snapshots and states differ");
  if (snaps.empty()) return {};
  if (!(T_hat > snaps.back().t)) throw std::domain_error("rescale_series: T_hat must exceed the last snapshot time");
  const double q = snaps.back().center;
  std::vector<RescaledPoint> out;
  out.reserve(snaps.size());
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const auto& st = states[i];
    const double rho = model.radius_at_remaining(T_hat - snaps[i].t);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0;
    for (std::size_t j = 0; j < st.u.size(); ++j) {
      const double d = axis_distance(model.epsilon, st.theta[j], st.u[j], q);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    RescaledPoint p;
    p.t = snaps[i].t;
    p.tau = rescaled_time(snaps[i].t, T_hat, model);
    p.u_tilde_min = dmin / rho;
    p.u_tilde_max = dmax / rho;
    p.gap = (snaps[i].lambda_max - snaps[i].lambda_min) * rho;
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orchestration

/// Worst per-step changes of the monitored quantities.
struct StepMonitor {
  double max_rel_G_increase = 0;
  double max_rel_sigma_min_decrease = 0;
  double max_ratio = 1;
  double max_C31 = 0;
  double initial_ratio = 1;
  double initial_C31 = 0;
  double initial_G = 0;
};

enum class StopReason { extinction_threshold, t_end, dt_floor, max_steps, convexity_loss, instability };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::extinction_threshold: return "extinction_threshold";
    case StopReason::t_end: return "t_end";
    case StopReason::dt_floor: return "dt_floor";
    case StopReason::max_steps: return "max_steps";
    case StopReason::convexity_loss: return "convexity_loss";
    case StopReason::instability: return "instability";
  }
  return "unknown";
}

struct RunResult {
  FlowConfig config;
  std::vector<FlowMetrics> snapshots;
  std::vector<FlowState> states;  // profile at each snapshot
  StepMonitor monitor;
  StopReason stop = StopReason::max_steps;
  std::string failure;  // message when stop is convexity_loss or instability
  FlowState final_state;
  bool has_T_hat = false;
  double T_hat = 0;
  std::vector<RescaledPoint> rescaled;

  [[nodiscard]] bool ok() const { return stop != StopReason::convexity_loss && stop != StopReason::instability; }
};

inline RunResult run_flow(const FlowConfig& cfg) {
  RunResult res;
  res.config = cfg;
  FlowState s = make_initial_state(cfg);
  const SphereModel model = SphereModel::of(cfg);
  const double u_min0 = *std::min_element(s.u.begin(), s.u.end());
  const double dt_floor = cfg.dt_floor_factor * model.time_to_extinction(u_min0);
  const double u_stop = cfg.stop_ratio * u_min0;

  auto snapshot = [&](const FlowState& st) {
    res.snapshots.push_back(compute_metrics(st, cfg));
    res.states.push_back(st);
  };

  CurvatureField f = principal_curvatures(s, cfg);
  FieldSummary prev = summarize(f, cfg);
  res.monitor.initial_ratio = res.monitor.max_ratio = prev.ratio_max;
  res.monitor.initial_C31 = res.monitor.max_C31 = prev.C31_monitor;
  res.monitor.initial_G = prev.G_max;
  snapshot(s);
  try {
    for (;;) {
      if (*std::min_element(s.u.begin(), s.u.end()) < u_stop) {
        res.stop = StopReason::extinction_threshold;
        break;
      }
      if (s.t >= cfg.t_end) {
        res.stop = StopReason::t_end;
        break;
      }
      if (s.steps >= cfg.max_steps) {
        res.stop = StopReason::max_steps;
        break;
      }
      if (stable_dt(s, f, cfg) < dt_floor) {
        res.stop = StopReason::dt_floor;
        break;
      }
      s = advance(s, cfg, cfg.t_end - s.t);
      f = principal_curvatures(s, cfg);
      const FieldSummary cur = summarize(f, cfg);
      if (prev.G_max > 0)
        res.monitor.max_rel_G_increase = std::max(res.monitor.max_rel_G_increase, (cur.G_max - prev.G_max) / prev.G_max);
      else if (cur.G_max > 0)
        res.monitor.max_rel_G_increase = std::numeric_limits<double>::infinity();
      res.monitor.max_rel_sigma_min_decrease = std::max(res.monitor.max_rel_sigma_min_decrease,
                                                        (prev.sigma_k_min - cur.sigma_k_min) / prev.sigma_k_min);
      res.monitor.max_ratio = std::max(res.monitor.max_ratio, cur.ratio_max);
      res.monitor.max_C31 = std::max(res.monitor.max_C31, cur.C31_monitor);
      prev = cur;
      if (s.steps % cfg.snapshot_every == 0) snapshot(s);
    }
  } catch (const ConvexityLossError& e) {
    res.stop = StopReason::convexity_loss;
    res.failure = e.what();
  }
  if (res.states.back().steps != s.steps && res.stop != StopReason::convexity_loss) snapshot(s);
  res.final_state = s;

  if (res.stop == StopReason::extinction_threshold && res.snapshots.size() >= 10) {
    try {
      res.T_hat = estimate_extinction(res.snapshots, model, cfg.extinction_radius);
      res.has_T_hat = res.T_hat > res.snapshots.back().t;
      if (res.has_T_hat) {
        res.rescaled = rescale_series(res.snapshots, res.states, res.T_hat, model);
        for (std::size_t i = 0; i < res.snapshots.size(); ++i) res.snapshots[i].tau = res.rescaled[i].tau;
      }
    } catch (const InstabilityError& e) {
      res.stop = StopReason::instability;
      res.failure = e.what();
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Verdicts

struct FlowTolerances {
  double G_rel = 1e-6;
  double sigma_rel = 1e-8;
  double bound_slack = 2.0;
  double fit_r2 = 0.95;
};

/// Rescaled points whose remaining time lies in the last factor of ten before
/// the final snapshot.
inline std::vector<RescaledPoint> final_decade(const std::vector<RescaledPoint>& pts, double T_hat) {
  if (pts.empty()) return {};
  const double last_remaining = T_hat - pts.back().t;
  std::vector<RescaledPoint> out;
  for (const auto& p : pts)
    if (T_hat - p.t <= 10 * last_remaining) out.push_back(p);
  return out;
}

inline LineFit gap_decay_fit(const std::vector<RescaledPoint>& pts) {
  std::vector<double> x, y;
  for (const auto& p : pts)
    if (p.gap > 0) {
      x.push_back(p.tau);
      y.push_back(std::log(p.gap));
    }
  return least_squares(x, y);
}

/// Pass/fail verdicts for the monitored invariants of a run.
inline Report assess_flow(const RunResult& r, const FlowTolerances& tol = {}) {
  Report rep;
  rep.name = "flow " + r.config.profile.str();
  rep.add("run completed without convexity loss or instability", r.ok(), r.failure);
  const auto& m = r.monitor;
  std::ostringstream g, s, ratio, c31;
  g << "worst relative increase " << m.max_rel_G_increase;
  s << "worst relative decrease " << m.max_rel_sigma_min_decrease;
  ratio << "initial " << m.initial_ratio << ", max " << m.max_ratio;
  c31 << "initial " << m.initial_C31 << ", max " << m.max_C31;
  rep.add("G_max non-increasing per step", m.max_rel_G_increase <= tol.G_rel, g.str());
  rep.add("min sigma_k non-decreasing per step", m.max_rel_sigma_min_decrease <= tol.sigma_rel, s.str());
  rep.add("ratio_max bounded by slack x initial", m.max_ratio <= tol.bound_slack * m.initial_ratio, ratio.str());
  rep.add("C31 monitor bounded by slack x initial", m.max_C31 <= tol.bound_slack * m.initial_C31, c31.str());

  const bool round = !r.rescaled.empty() && r.rescaled.front().gap == 0;
  if (r.has_T_hat && !round) {
    const auto decade = final_decade(r.rescaled, r.T_hat);
    std::size_t rises = 0;
    for (std::size_t i = 1; i < decade.size(); ++i)
      if (decade[i].deviation() >= decade[i - 1].deviation()) ++rises;
    std::ostringstream d;
    d << decade.size() << " points, |u~-1| " << (decade.empty() ? 0.0 : decade.front().deviation()) << " -> "
      << (decade.empty() ? 0.0 : decade.back().deviation()) << ", " << rises << " non-decreasing steps";
    rep.add("|u~ - 1| strictly decreasing over the final decade", decade.size() >= 2 && rises == 0, d.str());
    const LineFit fit = gap_decay_fit(r.rescaled);
    std::ostringstream f;
    f << "slope " << fit.slope << ", R^2 " << fit.r2;
    rep.add("rescaled curvature gap decays log-linearly", fit.slope < 0 && fit.r2 > tol.fit_r2, f.str());
  }
  return rep;
}

}  // namespace pinchlab
