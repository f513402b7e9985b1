#include "anosovlab/representation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>

namespace anosovlab {
namespace {

using Complex = std::complex<double>;
using CMat2 = Eigen::Matrix<Complex, 2, 2>;

Mat inverse_of(const Mat& g, bool symplectic) {
  if (g.rows() == 2) {
    Mat inv(2, 2);
    inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return inv / (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
  }
  if (symplectic) {
    const SymplecticSpace space(static_cast<int>(g.rows()) / 2);
    return -space.omega() * g.transpose() * space.omega();
  }
  return g.partialPivLu().inverse();
}

std::vector<Mat> letter_table(const std::vector<Mat>& gens, bool symplectic) {
  std::vector<Mat> table;
  table.reserve(2 * gens.size());
  for (const Mat& g : gens) {
    table.push_back(g);
    table.push_back(inverse_of(g, symplectic));
  }
  return table;
}

// Rotation by theta about the origin of the unit disk, as an SU(1,1) matrix.
CMat2 disk_rotation(double theta) {
  CMat2 m;
  m << std::polar(1.0, theta / 2), 0.0, 0.0, std::polar(1.0, -theta / 2);
  return m;
}

// Hyperbolic translation by `length` along the diameter at angle alpha.
CMat2 disk_translation(double alpha, double length) {
  CMat2 m;
  const double c = std::cosh(length / 2);
  const double s = std::sinh(length / 2);
  m << c, std::polar(s, alpha), std::polar(s, -alpha), c;
  return m;
}

// Disk -> upper half-plane conjugation; the result is real.
Mat to_upper_half_plane(const CMat2& m) {
  CMat2 cayley;
  cayley << 1.0, Complex(0, -1), 1.0, Complex(0, 1);
  const CMat2 real = cayley.inverse() * m * cayley;
  Mat out(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out(i, j) = real(i, j).real();
  }
  return out;
}

// Orientation-preserving isometry taking side `from` of the regular octagon
// onto side `to`, mapping the octagon to its neighbour across side `to`.
Mat side_pairing(int from, int to) {
  const double quarter = std::numbers::pi / 4;
  // Distance from the centre to a side midpoint: cosh d = cot(pi/8) = 1 + sqrt 2.
  const double d = std::acosh(1.0 + std::numbers::sqrt2);
  const double alpha_from = from * quarter;
  const double alpha_to = to * quarter;
  return to_upper_half_plane(disk_translation(alpha_to, 2 * d) *
                             disk_rotation(alpha_to - alpha_from + std::numbers::pi));
}

double binomial_power_coefficient(const std::vector<double>& poly, int j) {
  return j < static_cast<int>(poly.size()) ? poly[static_cast<std::size_t>(j)] : 0.0;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> poly_pow(const std::vector<double>& a, int k) {
  std::vector<double> out{1.0};
  for (int i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

SymplecticCorrection compute_correction(int N) {
  const int n = N / 2;
  const int unknowns = N * (N - 1) / 2;
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) slots.emplace_back(i, j);
  }
  auto form_from = [&](const Vec& params) {
    Mat b = Mat::Zero(N, N);
    for (int s = 0; s < unknowns; ++s) {
      b(slots[s].first, slots[s].second) = params(s);
      b(slots[s].second, slots[s].first) = -params(s);
    }
    return b;
  };

  // A generating set of a Zariski-dense subgroup of SL(2, R).
  std::vector<Mat> samples;
  for (const auto& entries : {std::array<double, 4>{1, 1, 0, 1}, std::array<double, 4>{1, 0, 1, 1},
                              std::array<double, 4>{2, 0, 0, 0.5}}) {
    Mat m(2, 2);
    m << entries[0], entries[1], entries[2], entries[3];
    samples.push_back(irreducible_image(m, N));
  }

  Mat system(static_cast<Eigen::Index>(samples.size()) * N * N, unknowns);
  for (int s = 0; s < unknowns; ++s) {
    Vec e = Vec::Zero(unknowns);
    e(s) = 1.0;
    const Mat b = form_from(e);
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const Mat eq = samples[k].transpose() * b * samples[k] - b;
      system.block(static_cast<Eigen::Index>(k) * N * N, s, N * N, 1) =
          Eigen::Map<const Vec>(eq.data(), N * N);
    }
  }
  Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  if (sv.size() >= 2 && !(sv(sv.size() - 2) > 1e-6 * sv(0))) {
    throw ConstructionError("invariant symplectic form is not unique");
  }
  Mat b = form_from(svd.matrixV().col(unknowns - 1));
  // Orientation convention: with B(e_0, e_{N-1}) = (-1)^(n-1) the lifted
  // Fuchsian boundary curve sends counterclockwise triples to maximal ones.
  b *= ((n - 1) % 2 == 0 ? 1.0 : -1.0) / b(0, N - 1);

  SymplecticCorrection out;
  out.N = N;
  for (const Mat& g : samples) {
    out.residual = std::max(out.residual, (g.transpose() * b * g - b).norm());
  }

  // Symplectic Gram-Schmidt, in order, over the monomials scaled by
  // 1/sqrt(binom(N-1, i)).  SO(2) acts orthogonally in those coordinates and
  // the invariant form is a signed anti-diagonal there, so the resulting
  // Darboux frame is orthonormal for the rotation-invariant metric.
  std::vector<Vec> pool;
  for (int i = 0; i < N; ++i) {
    pool.push_back(Vec::Unit(N, i) / std::sqrt(std::tgamma(N) / (std::tgamma(i + 1) * std::tgamma(N - i))));
  }
  auto pairing = [&](const Vec& u, const Vec& v) { return u.dot(b * v); };
  std::vector<Vec> vs, ws;
  while (!pool.empty()) {
    Vec v = pool.front();
    pool.erase(pool.begin());
    std::size_t best = 0;
    for (std::size_t k = 1; k < pool.size(); ++k) {
      if (std::abs(pairing(v, pool[k])) > std::abs(pairing(v, pool[best]))) best = k;
    }
    Vec w = pool[best];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    w /= pairing(v, w);
    for (Vec& u : pool) u = u - pairing(u, w) * v + pairing(u, v) * w;
    vs.push_back(v);
    ws.push_back(w);
  }
  out.basis = Mat(N, N);
  for (int i = 0; i < n; ++i) {
    out.basis.col(i) = vs[static_cast<std::size_t>(i)];
    out.basis.col(n + i) = ws[static_cast<std::size_t>(i)];
  }
  out.to_standard = out.basis.inverse();
  const SymplecticSpace space(n);
  const double darboux = (out.basis.transpose() * b * out.basis - space.omega()).norm();
  if (darboux > 1e-10 || out.residual > 1e-10) {
    throw ConstructionError("symplectic basis correction failed (residual " +
                            std::to_string(std::max(darboux, out.residual)) + ")");
  }
  return out;
}

}  // namespace

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::fuchsian_base: return "fuchsian_base";
    case RepKind::sym_power: return "sym_power";
    case RepKind::direct_sum: return "direct_sum";
    case RepKind::bent: return "bent";
  }
  return "unknown";
}

RepKind parse_rep_kind(std::string_view text) {
  if (text == "fuchsian_base" || text == "fuchsian") return RepKind::fuchsian_base;
  if (text == "sym_power" || text == "sym-power") return RepKind::sym_power;
  if (text == "direct_sum" || text == "direct-sum") return RepKind::direct_sum;
  if (text == "bent") return RepKind::bent;
  throw InvalidInput("unknown representation kind '" + std::string(text) + "'");
}

int Representation::n() const {
  if (!symplectic || dim % 2 != 0) throw InvalidInput("representation is not symplectic");
  return dim / 2;
}

void Representation::certify(const Tolerances& tol) {
  const auto gens = static_cast<std::size_t>(presentation.generator_count());
  if (images.size() != gens || base.size() != gens) {
    throw InvalidInput("expected " + std::to_string(gens) + " generator images");
  }
  for (const Mat& g : images) {
    if (g.rows() != dim || g.cols() != dim) throw InvalidInput("generator image has wrong size");
    if (!g.allFinite()) throw InvalidInput("generator image has non-finite entries");
  }
  for (const Mat& g : base) {
    if (g.rows() != 2 || g.cols() != 2 || !g.allFinite()) {
      throw InvalidInput("base generator must be a finite 2x2 matrix");
    }
  }
  if (symplectic && dim % 2 != 0) throw InvalidInput("odd dimension cannot be symplectic");
  letter_images_ = letter_table(images, symplectic);
  base_letter_images_ = letter_table(base, true);

  relator_residual = anosovlab::relator_residual(*this);
  det_residual = 0.0;
  symplectic_residual = 0.0;
  for (const Mat& g : images) det_residual = std::max(det_residual, std::abs(g.determinant() - 1.0));
  if (symplectic) {
    const SymplecticSpace space(dim / 2);
    for (const Mat& g : images) {
      symplectic_residual = std::max(
          symplectic_residual, (g.transpose() * space.omega() * g - space.omega()).norm());
    }
  }
  Mat base_rel = Mat::Identity(2, 2);
  for (Letter l : presentation.relator()) base_rel = base_rel * base_letter_images_[static_cast<std::size_t>(l)];
  const double base_residual = (base_rel - Mat::Identity(2, 2)).norm();

  if (!(relator_residual < tol.rel)) {
    throw ConstructionError("relator residual " + std::to_string(relator_residual) +
                            " exceeds tolerance");
  }
  if (!(base_residual < tol.rel)) {
    throw ConstructionError("base relator residual " + std::to_string(base_residual) +
                            " exceeds tolerance");
  }
  if (!(symplectic_residual < tol.sp)) {
    throw ConstructionError("symplectic residual " + std::to_string(symplectic_residual) +
                            " exceeds tolerance");
  }
  if (!(det_residual < tol.det)) {
    throw ConstructionError("determinant residual " + std::to_string(det_residual) +
                            " exceeds tolerance");
  }
}

Mat word_value(const Representation& rep, const Word& w) {
  Mat out = Mat::Identity(rep.dim, rep.dim);
  for (Letter l : w.letters()) out = out * rep.letter_image(l);
  return out;
}

Mat base_word_value(const Representation& rep, const Word& w) {
  Mat out = Mat::Identity(2, 2);
  for (Letter l : w.letters()) out = out * rep.base_letter_image(l);
  return out;
}

double relator_residual(const Representation& rep) {
  // Recomputed from the generator images so that edits after certify() are seen.
  const auto table = letter_table(rep.images, false);
  Mat prod = Mat::Identity(rep.dim, rep.dim);
  for (Letter l : rep.presentation.relator()) prod = prod * table[static_cast<std::size_t>(l)];
  return (prod - Mat::Identity(rep.dim, rep.dim)).norm();
}

Representation fuchsian_genus2(const Tolerances& tol) {
  Representation rep;
  rep.kind = RepKind::fuchsian_base;
  rep.presentation = Presentation(2);
  rep.dim = 2;
  rep.symplectic = true;
  // Sides 0..7 counterclockwise; labels a1 b1 A1 B1 a2 b2 A2 B2.
  rep.images = {side_pairing(2, 0), side_pairing(1, 3), side_pairing(6, 4), side_pairing(5, 7)};
  rep.base = rep.images;
  rep.metadata["base"] = "regular octagon, vertex angles pi/4";
  rep.certify(tol);
  return rep;
}

Mat irreducible_image(const Mat& m2, int N) {
  if (m2.rows() != 2 || m2.cols() != 2) throw InvalidInput("irreducible_image expects a 2x2 matrix");
  if (N < 2) throw InvalidInput("irreducible_image needs N >= 2");
  const int degree = N - 1;
  Mat out(N, N);
  // Row i: coefficients of (m00 p + m01 q)^(degree - i) (m10 p + m11 q)^i
  // in the monomials p^(degree - j) q^j.
  for (int i = 0; i < N; ++i) {
    const auto row = poly_mul(poly_pow({m2(0, 0), m2(0, 1)}, degree - i),
                              poly_pow({m2(1, 0), m2(1, 1)}, i));
    for (int j = 0; j < N; ++j) out(i, j) = binomial_power_coefficient(row, j);
  }
  return out;
}

const SymplecticCorrection& symplectic_correction(int N) {
  if (N < 2 || N % 2 != 0) throw InvalidInput("symplectic correction needs an even N >= 2");
  static std::mutex mutex;
  static std::map<int, SymplecticCorrection> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, compute_correction(N)).first;
  return it->second;
}

Representation sym_power_lift(const Representation& rho0, int N, const Tolerances& tol) {
  if (rho0.dim != 2) throw InvalidInput("sym_power_lift expects a representation into SL(2, R)");
  if (N < 2) throw InvalidInput("sym_power_lift needs N >= 2");
  if (N == 2) return rho0;
  Representation rep;
  rep.kind = RepKind::sym_power;
  rep.presentation = rho0.presentation;
  rep.dim = N;
  rep.symplectic = N % 2 == 0;
  rep.base = rho0.base;
  rep.metadata = rho0.metadata;
  rep.metadata["lift_dimension"] = std::to_string(N);
  for (const Mat& g : rho0.images) {
    Mat lifted = irreducible_image(g, N);
    if (rep.symplectic) {
      const auto& corr = symplectic_correction(N);
      lifted = corr.to_standard * lifted * corr.basis;
    }
    rep.images.push_back(std::move(lifted));
  }
  rep.certify(tol);
  return rep;
}

Representation direct_sum(const Representation& a, const Representation& b, const Tolerances& tol) {
  if (!(a.presentation == b.presentation)) throw InvalidInput("direct_sum: presentations differ");
  for (std::size_t i = 0; i < a.base.size(); ++i) {
    if ((a.base[i] - b.base[i]).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidInput("direct_sum: summands have different base Fuchsian representations");
    }
  }
  Representation rep;
  rep.kind = RepKind::direct_sum;
  rep.presentation = a.presentation;
  rep.dim = a.dim + b.dim;
  rep.symplectic = a.symplectic && b.symplectic;
  rep.base = a.base;
  rep.metadata["summands"] = to_string(a.kind) + "(" + std::to_string(a.dim) + ") + " +
                             to_string(b.kind) + "(" + std::to_string(b.dim) + ")";
  if (a.metadata.count("base")) rep.metadata["base"] = a.metadata.at("base");

  // Coordinate positions of each summand inside the sum.
  std::vector<int> pos_a(static_cast<std::size_t>(a.dim)), pos_b(static_cast<std::size_t>(b.dim));
  if (rep.symplectic) {
    const int na = a.dim / 2, nb = b.dim / 2, n = na + nb;
    for (int i = 0; i < a.dim; ++i) pos_a[static_cast<std::size_t>(i)] = i < na ? i : n + (i - na);
    for (int j = 0; j < b.dim; ++j) {
      pos_b[static_cast<std::size_t>(j)] = j < nb ? na + j : n + na + (j - nb);
    }
  } else {
    std::iota(pos_a.begin(), pos_a.end(), 0);
    std::iota(pos_b.begin(), pos_b.end(), a.dim);
  }
  for (std::size_t g = 0; g < a.images.size(); ++g) {
    Mat m = Mat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j) m(pos_a[i], pos_a[j]) = a.images[g](i, j);
    }
    for (int i = 0; i < b.dim; ++i) {
      for (int j = 0; j < b.dim; ++j) m(pos_b[i], pos_b[j]) = b.images[g](i, j);
    }
    rep.images.push_back(std::move(m));
  }
  rep.certify(tol);
  return rep;
}

Representation bend(const Representation& rep, const Word& curve, double t, const Tolerances& tol) {
  if (!(curve == first_handle_commutator(rep.presentation))) {
    throw InvalidInput("bending is implemented only along the curve [a1, b1]");
  }
  if (!rep.symplectic) throw InvalidInput("bending needs a symplectic representation");
  if (t == 0.0) return rep;

  const Mat c = word_value(rep, curve);
  Eigen::EigenSolver<Mat> eig(c);
  if (eig.info() != Eigen::Success) throw ConstructionError("eigen-decomposition of rho(curve) failed");
  const int N = rep.dim;
  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  const auto values = eig.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::abs(values(i)) > std::abs(values(j)); });
  Mat vectors(N, N);
  Vec log_moduli(N);
  for (int k = 0; k < N; ++k) {
    const int idx = order[static_cast<std::size_t>(k)];
    const Complex lambda = values(idx);
    if (std::abs(lambda.imag()) > 1e-9 * std::abs(lambda)) {
      throw ConstructionError("rho(curve) has non-real eigenvalues; no one-parameter centralizer found");
    }
    vectors.col(k) = eig.eigenvectors().col(idx).real();
    log_moduli(k) = std::log(std::abs(lambda));
    if (k > 0 && !(log_moduli(k - 1) - log_moduli(k) > 1e-6)) {
      throw ConstructionError("rho(curve) is not semisimple with distinct eigenvalues");
    }
  }

  // Weights h_k = w_k, h_{N-1-k} = -w_k keep exp(t X) symplectic.  For
  // N >= 4, w is chosen orthogonal to the log-moduli so the bend leaves the
  // image of the base representation's own centralizer.
  const int n = N / 2;
  Vec w = Vec::Ones(n);
  if (n >= 2) {
    const Vec ell = log_moduli.head(n).normalized();
    w = Vec::Unit(n, n - 1);
    w -= w.dot(ell) * ell;
    w.normalize();
  }
  Vec h(N);
  for (int k = 0; k < n; ++k) {
    h(k) = w(k);
    h(N - 1 - k) = -w(k);
  }
  const Mat flow = vectors * (t * h).array().exp().matrix().asDiagonal() * vectors.inverse();
  const Mat flow_inv = vectors * (-t * h).array().exp().matrix().asDiagonal() * vectors.inverse();

  Representation out = rep;
  out.kind = RepKind::bent;
  out.images[0] = flow * rep.images[0] * flow_inv;
  out.images[1] = flow * rep.images[1] * flow_inv;
  out.metadata["bend_curve"] = curve.to_string(rep.presentation);
  out.metadata["bend_t"] = std::to_string(t);
  out.metadata["bent_from"] = to_string(rep.kind);
  out.certify(tol);
  return out;
}

nlohmann::json to_json(const Representation& rep) {
  auto flat = [](const Mat& m) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    }
    return out;
  };
  nlohmann::json j;
  j["version"] = 1;
  j["kind"] = to_string(rep.kind);
  j["genus"] = rep.presentation.genus();
  j["dim"] = rep.dim;
  j["symplectic"] = rep.symplectic;
  j["n"] = rep.symplectic ? nlohmann::json(rep.dim / 2) : nlohmann::json(nullptr);
  j["generators"] = nlohmann::json::array();
  for (const Mat& g : rep.images) j["generators"].push_back(flat(g));
  j["base_generators"] = nlohmann::json::array();
  for (const Mat& g : rep.base) j["base_generators"].push_back(flat(g));
  j["relator"] = Word(rep.presentation, rep.presentation.relator()).to_string(rep.presentation);
  j["residuals"] = {{"relator", rep.relator_residual},
                    {"symplectic", rep.symplectic_residual},
                    {"det", rep.det_residual}};
  j["metadata"] = rep.metadata;
  return j;
}

Representation representation_from_json(const nlohmann::json& j, const Tolerances& tol) {
  try {
    if (j.at("version").get<int>() != 1) throw InvalidInput("unsupported representation file version");
    Representation rep;
    rep.kind = parse_rep_kind(j.at("kind").get<std::string>());
    rep.presentation = Presentation(j.at("genus").get<int>());
    rep.dim = j.at("dim").get<int>();
    rep.symplectic = j.at("symplectic").get<bool>();
    if (rep.symplectic && j.at("n").get<int>() * 2 != rep.dim) {
      throw InvalidInput("fields n and dim disagree");
    }
    const Word relator = Word::parse(rep.presentation, j.at("relator").get<std::string>());
    if (relator.letters() != rep.presentation.relator()) {
      throw InvalidInput("relator does not match the standard presentation");
    }
    auto read = [](const nlohmann::json& arr, int d) {
      const auto values = arr.get<std::vector<double>>();
      if (values.size() != static_cast<std::size_t>(d * d)) {
        throw InvalidInput("generator array has the wrong length");
      }
      Mat m(d, d);
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) m(r, c) = values[static_cast<std::size_t>(r * d + c)];
      }
      return m;
    };
    for (const auto& g : j.at("generators")) rep.images.push_back(read(g, rep.dim));
    for (const auto& g : j.at("base_generators")) rep.base.push_back(read(g, 2));
    for (const char* key : {"relator", "symplectic", "det"}) {
      if (!j.at("residuals").at(key).is_number()) throw InvalidInput("residual fields must be numbers");
    }
    if (j.contains("metadata")) rep.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    rep.certify(tol);
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed representation file: ") + e.what());
  }
}

}  // namespace anosovlab
