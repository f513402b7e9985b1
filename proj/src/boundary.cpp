#include "anosovlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "anosovlab/parallel.hpp"

namespace anosovlab {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Real basis of the span of the eigenvectors for the `k` largest-modulus
// eigenvalues.  Complex pairs contribute their real and imaginary parts.
Mat dominant_eigenspace(const Mat& m, int k) {
  Eigen::EigenSolver<Mat> eig(m);
  if (eig.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  const auto values = eig.eigenvalues();
  std::vector<int> order(static_cast<std::size_t>(m.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(values(a)) > std::abs(values(b)); });
  Mat cols(m.rows(), k);
  int filled = 0;
  for (int idx : order) {
    if (filled >= k) break;
    const auto vec = eig.eigenvectors().col(idx);
    if (std::abs(values(idx).imag()) <= 1e-14 * std::abs(values(idx))) {
      cols.col(filled++) = vec.real();
    } else if (values(idx).imag() > 0) {
      cols.col(filled++) = vec.real();
      if (filled < k) cols.col(filled++) = vec.imag();
    }
  }
  return orthonormalize(cols.leftCols(filled));
}

Mat refine_invariant(const Mat& m, Mat v) {
  const Mat scaled = m / m.norm();
  for (int step = 0; step < 200; ++step) {
    const Mat next = orthonormalize(scaled * v).leftCols(v.cols());
    const double change = ((Mat::Identity(v.rows(), v.rows()) - v * v.transpose()) * next).norm();
    v = next;
    if (change < 1e-12) break;
  }
  return v;
}

Mat orthogonal_complement(const Mat& basis) {
  const Eigen::Index m = basis.rows();
  Eigen::HouseholderQR<Mat> qr(basis);
  const Mat q = qr.householderQ() * Mat::Identity(m, m);
  return q.rightCols(m - basis.cols());
}

double line_angle(const Eigen::Vector2d& v) {
  double phi = std::atan2(v(1), v(0));
  if (phi < 0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  return canonical_angle(2 * phi);
}

}  // namespace

double canonical_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

bool is_positive_triple(double theta_x, double theta_y, double theta_z) {
  return canonical_angle(theta_y - theta_x) < canonical_angle(theta_z - theta_x);
}

double angle_separation(double a, double b) {
  const double d = canonical_angle(a - b);
  return std::min(d, kTwoPi - d);
}

double attracting_angle(const Mat& m2) {
  if (m2.rows() != 2 || m2.cols() != 2) throw InvalidInput("attracting_angle expects a 2x2 matrix");
  const double a = m2(0, 0), b = m2(0, 1), c = m2(1, 0), d = m2(1, 1);
  const double t = a + d;
  const double det = a * d - b * c;
  const double disc = t * t - 4 * det;
  if (!(disc > 0) || !(std::abs(t) > 0)) {
    throw NoAttractingPointError("base matrix is not hyperbolic");
  }
  const double lambda = (t + std::copysign(std::sqrt(disc), t)) / 2;
  Eigen::Vector2d v1(b, lambda - a), v2(lambda - d, c);
  const Eigen::Vector2d v = v1.norm() >= v2.norm() ? v1 : v2;
  return line_angle(v);
}

double act_on_angle(const Mat& m2, double theta) {
  const Eigen::Vector2d v(std::cos(theta / 2), std::sin(theta / 2));
  return line_angle(m2 * v);
}

std::string to_string(FlagMethod method) {
  return method == FlagMethod::veronese ? "veronese" : "attracting";
}

FlagSample::FlagSample(BoundaryPoint point, int N, FlagMethod method)
    : point_(std::move(point)), N_(N), method_(method),
      spaces_(static_cast<std::size_t>(N + 1)), quality_(static_cast<std::size_t>(N + 1), 0.0) {
  if (N < 2) throw InvalidInput("flags need N >= 2");
  point_.theta = canonical_angle(point_.theta);
  spaces_[0] = Subspace(N);
  spaces_[static_cast<std::size_t>(N)] = Subspace::whole(N);
}

bool FlagSample::has(int k) const {
  return k >= 0 && k <= N_ && spaces_[static_cast<std::size_t>(k)].has_value();
}

const Subspace& FlagSample::space(int k) const {
  if (!has(k)) throw InvalidInput("flag has no space of dimension " + std::to_string(k));
  return *spaces_[static_cast<std::size_t>(k)];
}

void FlagSample::set(int k, Subspace space, double quality) {
  if (k < 1 || k >= N_ || space.dim() != k || space.ambient_dim() != N_) {
    throw InvalidInput("flag space has the wrong dimension");
  }
  spaces_[static_cast<std::size_t>(k)] = std::move(space);
  quality_[static_cast<std::size_t>(k)] = quality;
}

std::vector<int> FlagSample::indices() const {
  std::vector<int> out;
  for (int k = 1; k < N_; ++k) {
    if (has(k)) out.push_back(k);
  }
  return out;
}

FlagSample veronese_flag(double theta, int N, const Tolerances& tol) {
  FlagSample flag(BoundaryPoint{theta, std::nullopt}, N, FlagMethod::veronese);
  const double c = std::cos(flag.theta() / 2);
  const double s = std::sin(flag.theta() / 2);
  const int degree = N - 1;
  // Row r of `jet` holds the r-th theta-derivative of nu.  Coordinate i is
  // c^{degree - i} s^i; d/dtheta maps c^a s^b to (-a c^{a-1} s^{b+1} + b c^{a+1} s^{b-1}) / 2.
  Mat jet(N, N);
  for (int i = 0; i < N; ++i) {
    std::vector<double> poly(static_cast<std::size_t>(N), 0.0);  // indexed by the power of s
    poly[static_cast<std::size_t>(i)] = 1.0;
    for (int r = 0; r < N; ++r) {
      double value = 0.0;
      for (int b = 0; b < N; ++b) {
        const double coeff = poly[static_cast<std::size_t>(b)];
        if (coeff != 0.0) value += coeff * std::pow(c, degree - b) * std::pow(s, b);
      }
      jet(i, r) = value;
      std::vector<double> next(static_cast<std::size_t>(N), 0.0);
      for (int b = 0; b < N; ++b) {
        const double coeff = poly[static_cast<std::size_t>(b)];
        const int a = degree - b;
        if (coeff == 0.0) continue;
        if (a > 0) next[static_cast<std::size_t>(b + 1)] -= coeff * a / 2.0;
        if (b > 0) next[static_cast<std::size_t>(b - 1)] += coeff * b / 2.0;
      }
      poly = std::move(next);
    }
  }
  if (N % 2 == 0) jet = symplectic_correction(N).to_standard * jet;
  const Vec sv = singular_values(jet);
  if (!(sv(N - 1) > tol.rank * sv(0))) {
    throw NumericalError("Veronese osculating frame is rank deficient");
  }
  const Mat basis = orthonormalize(jet);
  for (int k = 1; k < N; ++k) {
    flag.set(k, Subspace::from_orthonormal(basis.leftCols(k), tol), 0.0);
  }
  return flag;
}

Vec eigenvalue_moduli(const Mat& m, const Mat& inverse) {
  const int N = static_cast<int>(m.rows());
  auto sorted_moduli = [](const Mat& a) {
    const auto values = Eigen::EigenSolver<Mat>(a, false).eigenvalues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(std::abs(values(i)));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  };
  const auto big = sorted_moduli(m);
  const auto small = sorted_moduli(inverse);
  Vec out(N);
  const int upper = (N + 1) / 2;
  for (int k = 0; k < upper; ++k) out(k) = big[static_cast<std::size_t>(k)];
  for (int k = 0; k < N - upper; ++k) out(N - 1 - k) = 1.0 / small[static_cast<std::size_t>(k)];
  return out;
}

AttractingSubspace attracting_subspace(const Mat& m, int k, const Mat* inverse,
                                       const Tolerances& tol) {
  const int N = static_cast<int>(m.rows());
  if (m.cols() != N) throw InvalidInput("attracting_subspace expects a square matrix");
  if (k < 1 || k >= N) throw InvalidInput("attracting_subspace needs 1 <= k < N");
  const Mat inv = inverse ? *inverse : Mat(m.partialPivLu().inverse());
  const Vec moduli = eigenvalue_moduli(m, inv);
  const double ratio = moduli(k) / moduli(k - 1);
  if (!(1.0 - ratio > tol.gap)) {
    throw NoAttractingPointError("no eigenvalue-modulus gap at index " + std::to_string(k) +
                                 " (ratio " + std::to_string(ratio) + ")");
  }
  auto residual = [](const Mat& a, const Mat& q) { return (a * q - q * (q.transpose() * a * q)).norm(); };
  Mat basis;
  double estimate = 0.0;
  if (k <= N - k) {
    basis = refine_invariant(m, dominant_eigenspace(m, k));
    estimate = residual(m, basis) / (moduli(k - 1) - moduli(k));
  } else {
    // The annihilator of the dominant k-space of M is the dominant
    // (N - k)-space of M^-T.
    const Mat inv_t = inv.transpose();
    const Mat dual = refine_invariant(inv_t, dominant_eigenspace(inv_t, N - k));
    estimate = residual(inv_t, dual) / (1.0 / moduli(k) - 1.0 / moduli(k - 1));
    basis = orthogonal_complement(dual);
  }
  return {Subspace::from_orthonormal(basis, tol), ratio, estimate};
}

FlagDefects flag_defects(const FlagSample& flag, bool symplectic) {
  FlagDefects out;
  const auto ks = flag.indices();
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const Vec sines = principal_angle_sines(flag.space(ks[i]), flag.space(ks[i + 1]));
    if (sines.size() > 0) out.compatibility = std::max(out.compatibility, sines.maxCoeff());
  }
  if (symplectic) {
    const SymplecticSpace space(flag.N() / 2);
    for (int k : ks) {
      if (!flag.has(flag.N() - k)) continue;
      out.duality = std::max(out.duality, max_principal_sine(flag.space(flag.N() - k),
                                                             omega_orthogonal(space, flag.space(k))));
    }
  }
  return out;
}

void verify_flag(const FlagSample& flag, bool symplectic, const Tolerances& tol) {
  const FlagDefects d = flag_defects(flag, symplectic);
  const double limit = 10 * tol.angle;
  if (d.compatibility > limit) {
    throw FlagQualityError("flag compatibility defect " + std::to_string(d.compatibility));
  }
  if (d.duality > limit) {
    throw FlagQualityError("flag omega-duality defect " + std::to_string(d.duality));
  }
}

namespace {

FlagSample attracting_flag(const Representation& rep, const Mat& m, const Mat& inv,
                           const Mat& base, const Word& w, const std::vector<int>& ks,
                           const Tolerances& tol) {
  FlagSample flag(BoundaryPoint{attracting_angle(base), w}, rep.dim, FlagMethod::attracting);
  std::vector<int> wanted = ks;
  if (wanted.empty()) {
    for (int k = 1; k < rep.dim; ++k) wanted.push_back(k);
  }
  for (int k : wanted) {
    auto sub = attracting_subspace(m, k, &inv, tol);
    if (!(sub.error_estimate <= tol.flag)) {
      throw FlagQualityError("attracting subspace at index " + std::to_string(k) +
                             " is ill-conditioned (error estimate " +
                             std::to_string(sub.error_estimate) + ")");
    }
    flag.set(k, std::move(sub.space), sub.gap);
  }
  verify_flag(flag, rep.symplectic, tol);
  return flag;
}

}  // namespace

FlagSample flag_from_witness(const Representation& rep, const Word& w, const std::vector<int>& ks,
                             const Tolerances& tol) {
  if (w.empty()) throw NoAttractingPointError("the identity has no attracting fixed point");
  return attracting_flag(rep, word_value(rep, w), word_value(rep, w.inverse()),
                         base_word_value(rep, w), w, ks, tol);
}

FlagSample flag_from_ball_element(const Representation& rep, const Ball& ball, std::size_t i,
                                  const std::vector<int>& ks, const Tolerances& tol) {
  if (ball.length(i) == 0) throw NoAttractingPointError("the identity has no attracting fixed point");
  return attracting_flag(rep, ball.matrix(i), ball.inverse(i), ball.base(i), ball.word(i), ks, tol);
}

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

BoundarySampling sample_boundary(const Representation& rep, int count, SamplingStrategy strategy,
                                 const SamplingOptions& options, const Tolerances& tol) {
  if (count < 1) throw InvalidInput("sample count must be positive");
  BoundarySampling out;
  if (strategy == SamplingStrategy::veronese) {
    if (rep.kind != RepKind::sym_power && rep.kind != RepKind::fuchsian_base) {
      throw InvalidInput("Veronese flags exist only for symmetric-power representations");
    }
    std::mt19937_64 rng(options.seed);
    for (int j = 0; j < count; ++j) {
      const double jitter = 0.5 * unit_uniform(rng()) - 0.25;
      const double theta = kTwoPi * (j + 0.5 + jitter) / count;
      out.samples.push_back(veronese_flag(theta, rep.dim, tol));
    }
    return out;
  }

  const Ball ball = enumerate_ball(rep, options.radius, 1'000'000, tol);
  std::vector<std::optional<FlagSample>> found(ball.size());
  parallel_for(ball.size(), [&](std::size_t i) {
    if (i == 0) return;
    try {
      found[i] = flag_from_ball_element(rep, ball, i, options.ks, tol);
    } catch (const NumericalError&) {
      // No usable gap or poor flag quality: not a witness.
    }
  });
  // Keep the shortest witness per boundary point, in ball order.
  std::vector<FlagSample> kept;
  std::set<double> thetas;
  auto too_close = [&](double t) {
    if (thetas.empty()) return false;
    auto it = thetas.lower_bound(t);
    const double next = it == thetas.end() ? *thetas.begin() : *it;
    const double prev = it == thetas.begin() ? *thetas.rbegin() : *std::prev(it);
    return angle_separation(t, next) < tol.theta_sep || angle_separation(t, prev) < tol.theta_sep;
  };
  for (auto& f : found) {
    if (!f || too_close(f->theta())) continue;
    thetas.insert(f->theta());
    kept.push_back(std::move(*f));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const FlagSample& a, const FlagSample& b) { return a.theta() < b.theta(); });
  if (static_cast<int>(kept.size()) <= count) {
    out.samples = std::move(kept);
    if (static_cast<int>(out.samples.size()) < count) {
      out.partial = true;
      out.warning = "only " + std::to_string(out.samples.size()) + " of " + std::to_string(count) +
                    " boundary witnesses found within radius " + std::to_string(options.radius);
    }
    return out;
  }
  for (int j = 0; j < count; ++j) {
    out.samples.push_back(kept[static_cast<std::size_t>(j) * kept.size() / static_cast<std::size_t>(count)]);
  }
  return out;
}

FlagSource veronese_source(int N, const Tolerances& tol) {
  return [N, tol](double theta) { return veronese_flag(theta, N, tol); };
}

}  // namespace anosovlab
