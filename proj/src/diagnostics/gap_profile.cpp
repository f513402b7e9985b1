#include <cmath>
#include <limits>

#include "anosovlab/diagnostics.hpp"
#include "anosovlab/parallel.hpp"

namespace anosovlab {
namespace {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  Fit fit;
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  // A constant response is fitted exactly.
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace

std::vector<GapProfile> gap_profile(const Ball& ball, const std::vector<int>& ks,
                                    const Tolerances& tol) {
  const int N = ball.dim();
  for (int k : ks) {
    if (k < 1 || k >= N) throw InvalidInput("gap index k must satisfy 1 <= k < N");
  }
  std::vector<Vec> sv(ball.size());
  parallel_for(ball.size(), [&](std::size_t i) { sv[i] = ball_singular_values(ball, i); });

  const int radius = ball.radius();
  std::vector<GapProfile> out;
  for (int k : ks) {
    GapProfile p;
    p.k = k;
    p.partial = ball.partial();
    p.warning = ball.warning();
    p.max_by_radius.assign(static_cast<std::size_t>(radius + 1),
                           std::numeric_limits<double>::quiet_NaN());
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i < ball.size(); ++i) {
      const double r = std::log(sv[i](k) / sv[i](k - 1));
      const int len = ball.length(i);
      p.points.push_back({len, r});
      xs.push_back(len);
      ys.push_back(r);
      double& m = p.max_by_radius[static_cast<std::size_t>(len)];
      if (std::isnan(m) || r > m) m = r;
    }
    const Fit fit = least_squares(xs, ys);
    p.fitted_slope = fit.slope;
    p.fitted_intercept = fit.intercept;
    p.r_squared = fit.r_squared;

    std::vector<double> ex, ey;
    for (int len = 1; len <= radius; ++len) {
      const double m = p.max_by_radius[static_cast<std::size_t>(len)];
      if (!std::isnan(m)) {
        ex.push_back(len);
        ey.push_back(m);
      }
    }
    const Fit envelope = least_squares(ex, ey);
    p.envelope_slope = envelope.slope;
    p.envelope_r_squared = envelope.r_squared;

    p.slope_ok = p.fitted_slope < -tol.alpha_min;
    p.decreasing_ok = true;
    for (int len = 4; len <= radius; ++len) {
      const double prev = p.max_by_radius[static_cast<std::size_t>(len - 1)];
      const double cur = p.max_by_radius[static_cast<std::size_t>(len)];
      if (std::isnan(prev) || std::isnan(cur) || !(cur < prev)) p.decreasing_ok = false;
    }
    p.pass = p.slope_ok && p.decreasing_ok;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<GapProfile> gap_profile(const Representation& rep, const std::vector<int>& ks,
                                    int radius, const Tolerances& tol) {
  return gap_profile(enumerate_ball(rep, radius, 1'000'000, tol), ks, tol);
}

nlohmann::json to_json(const GapProfile& p, bool with_points) {
  nlohmann::json j;
  j["k"] = p.k;
  j["fitted_slope"] = p.fitted_slope;
  j["fitted_intercept"] = p.fitted_intercept;
  j["r_squared"] = p.r_squared;
  j["envelope_slope"] = p.envelope_slope;
  j["envelope_r_squared"] = p.envelope_r_squared;
  nlohmann::json maxima = nlohmann::json::array();
  for (std::size_t len = 1; len < p.max_by_radius.size(); ++len) {
    const double m = p.max_by_radius[len];
    maxima.push_back(std::isnan(m) ? nlohmann::json(nullptr) : nlohmann::json(m));
  }
  j["max_by_radius"] = maxima;
  j["slope_ok"] = p.slope_ok;
  j["decreasing_ok"] = p.decreasing_ok;
  j["pass"] = p.pass;
  j["point_count"] = p.points.size();
  if (p.partial) j["warning"] = p.warning;
  if (with_points) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : p.points) pts.push_back({pt.length, pt.log_ratio});
    j["points"] = pts;
  }
  return j;
}

}  // namespace anosovlab
