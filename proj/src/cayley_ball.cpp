#include "anosovlab/cayley_ball.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "anosovlab/kernels/kernels.hpp"
#include "anosovlab/parallel.hpp"

namespace anosovlab {
namespace {

constexpr double kGrid = 1e-4;
constexpr std::size_t kChunk = 4096;

using Key = std::array<std::int64_t, 4>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

void pack(const Mat& m, double* out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) *out++ = m(r, c);
  }
}

class DedupTable {
 public:
  DedupTable(const std::vector<double>& bases, const Tolerances& tol) : bases_(bases), tol_(tol) {}

  // Index of a stored element equal to `b`, or -1.
  std::int64_t find(const double* b) const {
    std::array<std::array<std::int64_t, 3>, 4> cells{};
    std::array<int, 4> counts{};
    for (int j = 0; j < 4; ++j) {
      const double scaled = b[j] / kGrid;
      const auto cell = static_cast<std::int64_t>(std::floor(scaled));
      const double frac = (scaled - static_cast<double>(cell)) * kGrid;
      int c = 0;
      cells[j][c++] = cell;
      if (frac < tol_.dedup) cells[j][c++] = cell - 1;
      if (kGrid - frac < tol_.dedup) cells[j][c++] = cell + 1;
      counts[j] = c;
    }
    std::int64_t found = -1;
    for (int i0 = 0; i0 < counts[0]; ++i0) {
      for (int i1 = 0; i1 < counts[1]; ++i1) {
        for (int i2 = 0; i2 < counts[2]; ++i2) {
          for (int i3 = 0; i3 < counts[3]; ++i3) {
            const Key key{cells[0][i0], cells[1][i1], cells[2][i2], cells[3][i3]};
            const auto it = table_.find(key);
            if (it == table_.end()) continue;
            for (std::uint32_t idx : it->second) {
              const double d = kernels::max_abs_diff(
                  std::span<const double>(b, 4),
                  std::span<const double>(bases_.data() + 4 * std::size_t{idx}, 4));
              if (d < tol_.same) {
                found = idx;
              } else if (d < tol_.dedup) {
                throw AmbiguityError("ball enumeration: two group elements at distance " +
                                     std::to_string(d) +
                                     "; use a smaller radius or a tighter representation");
              }
            }
          }
        }
      }
    }
    return found;
  }

  void insert(const double* b, std::uint32_t idx) {
    Key key;
    for (int j = 0; j < 4; ++j) key[j] = static_cast<std::int64_t>(std::floor(b[j] / kGrid));
    table_[key].push_back(idx);
  }

 private:
  const std::vector<double>& bases_;
  const Tolerances& tol_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> table_;
};

}  // namespace

Mat Ball::unpack(const std::vector<double>& packed, std::size_t i, int d) {
  Mat m(d, d);
  const double* p = packed.data() + i * static_cast<std::size_t>(d * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = *p++;
  }
  return m;
}

Word Ball::word(std::size_t i) const {
  std::vector<Letter> letters(static_cast<std::size_t>(lengths_[i]));
  for (std::size_t pos = letters.size(); pos > 0; --pos) {
    letters[pos - 1] = last_[i];
    i = parent_[i];
  }
  return Word(pres_, std::move(letters));
}

BallElement Ball::element(std::size_t i) const {
  return {word(i), matrix(i), inverse(i), base(i), lengths_[i]};
}

Ball enumerate_ball(const Representation& rep, int radius, std::size_t budget,
                    const Tolerances& tol) {
  if (radius < 0) throw InvalidInput("radius must be >= 0");
  if (budget < 1) throw InvalidInput("budget must be >= 1");
  if (!(rep.relator_residual < tol.rel)) {
    throw InvalidInput("representation relator residual exceeds tolerance");
  }
  const int d = rep.dim;
  const std::size_t dd = static_cast<std::size_t>(d * d);
  const int letters = rep.presentation.alphabet_size();

  Ball ball;
  ball.pres_ = rep.presentation;
  ball.dim_ = d;
  ball.radius_ = radius;

  std::vector<double> letter_mats(static_cast<std::size_t>(letters) * dd);
  std::vector<double> letter_invs(static_cast<std::size_t>(letters) * dd);
  std::vector<double> letter_bases(static_cast<std::size_t>(letters) * 4);
  for (Letter l = 0; l < letters; ++l) {
    pack(rep.letter_image(l), letter_mats.data() + static_cast<std::size_t>(l) * dd);
    pack(rep.letter_image(inverse_letter(l)), letter_invs.data() + static_cast<std::size_t>(l) * dd);
    pack(rep.base_letter_image(l), letter_bases.data() + static_cast<std::size_t>(l) * 4);
  }

  DedupTable table(ball.bases_, tol);
  auto append = [&](const double* m, const double* inv, const double* b, int length,
                    std::size_t parent, Letter last) {
    const auto idx = static_cast<std::uint32_t>(ball.lengths_.size());
    ball.matrices_.insert(ball.matrices_.end(), m, m + dd);
    ball.inverses_.insert(ball.inverses_.end(), inv, inv + dd);
    ball.bases_.insert(ball.bases_.end(), b, b + 4);
    ball.lengths_.push_back(length);
    ball.parent_.push_back(parent);
    ball.last_.push_back(last);
    table.insert(b, idx);
  };

  const Mat id = Mat::Identity(d, d);
  std::vector<double> packed_id(dd);
  pack(id, packed_id.data());
  const std::array<double, 4> base_id{1, 0, 0, 1};
  append(packed_id.data(), packed_id.data(), base_id.data(), 0, 0, -1);
  ball.sphere_sizes_.push_back(1);

  std::size_t frontier_begin = 0;
  for (int depth = 0; depth < radius; ++depth) {
    const std::size_t frontier_end = ball.size();

    // Per letter: the frontier positions it extends, and packed products.
    std::vector<std::vector<std::size_t>> sources(static_cast<std::size_t>(letters));
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (Letter l = 0; l < letters; ++l) {
        if (depth > 0 && l == inverse_letter(ball.last_[i])) continue;
        sources[static_cast<std::size_t>(l)].push_back(i);
      }
    }
    struct Batch {
      std::vector<double> mats, invs, bases;
    };
    std::vector<Batch> batches(static_cast<std::size_t>(letters));
    std::vector<std::pair<Letter, std::size_t>> jobs;
    for (Letter l = 0; l < letters; ++l) {
      const auto& src = sources[static_cast<std::size_t>(l)];
      auto& batch = batches[static_cast<std::size_t>(l)];
      batch.mats.resize(src.size() * dd);
      batch.invs.resize(src.size() * dd);
      batch.bases.resize(src.size() * 4);
      for (std::size_t start = 0; start < src.size(); start += kChunk) jobs.emplace_back(l, start);
    }
    parallel_for(jobs.size(), [&](std::size_t j) {
      const auto [l, start] = jobs[j];
      const auto lu = static_cast<std::size_t>(l);
      const auto& src = sources[lu];
      const std::size_t count = std::min(kChunk, src.size() - start);
      std::vector<double> lhs(count * dd), inv_rhs(count * dd), base_lhs(count * 4);
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t e = src[start + k];
        std::copy_n(ball.matrices_.data() + e * dd, dd, lhs.data() + k * dd);
        std::copy_n(ball.inverses_.data() + e * dd, dd, inv_rhs.data() + k * dd);
        std::copy_n(ball.bases_.data() + e * 4, 4, base_lhs.data() + k * 4);
      }
      auto& batch = batches[lu];
      kernels::right_multiply_batch(lhs, {letter_mats.data() + lu * dd, dd},
                                    {batch.mats.data() + start * dd, count * dd}, d);
      kernels::left_multiply_batch({letter_invs.data() + lu * dd, dd}, inv_rhs,
                                   {batch.invs.data() + start * dd, count * dd}, d);
      kernels::right_multiply_batch(base_lhs, {letter_bases.data() + lu * 4, 4},
                                    {batch.bases.data() + start * 4, count * 4}, 2);
    });

    // Sequential insertion in (frontier order, letter order): deterministic.
    std::vector<std::size_t> cursor(static_cast<std::size_t>(letters), 0);
    bool stopped = false;
    for (std::size_t i = frontier_begin; i < frontier_end && !stopped; ++i) {
      for (Letter l = 0; l < letters; ++l) {
        if (depth > 0 && l == inverse_letter(ball.last_[i])) continue;
        const auto lu = static_cast<std::size_t>(l);
        const std::size_t k = cursor[lu]++;
        const auto& batch = batches[lu];
        const double* b = batch.bases.data() + k * 4;
        if (table.find(b) >= 0) continue;
        if (ball.size() >= budget) {
          stopped = true;
          break;
        }
        append(batch.mats.data() + k * dd, batch.invs.data() + k * dd, b, depth + 1, i, l);
      }
    }
    ball.sphere_sizes_.push_back(ball.size() - frontier_end);
    if (stopped) {
      ball.partial_ = true;
      ball.complete_radius_ = depth;
      ball.warning_ = "element budget of " + std::to_string(budget) + " reached at radius " +
                      std::to_string(depth + 1) + "; ball is partial";
      return ball;
    }
    frontier_begin = frontier_end;
  }
  ball.complete_radius_ = radius;
  return ball;
}

Vec ball_singular_values(const Ball& ball, std::size_t i) {
  const Vec top = singular_values(ball.matrix(i));
  const Vec inv = singular_values(ball.inverse(i));
  const int d = ball.dim();
  Vec out(d);
  const int upper = (d + 1) / 2;
  for (int k = 0; k < upper; ++k) out(k) = top(k);
  // sigma_{d-1-k}(M) = 1 / sigma_k(M^-1).
  for (int k = 0; k < d - upper; ++k) out(d - 1 - k) = 1.0 / inv(k);
  return out;
}

}  // namespace anosovlab
