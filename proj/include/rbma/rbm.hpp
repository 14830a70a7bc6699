#ifndef RBMA_RBM_HPP
#define RBMA_RBM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rbma/matrix.hpp"
#include "rbma/random.hpp"

namespace rbma {

// Binary-binary restricted Boltzmann machine.
//
// Energy:      E(v, h) = -a.v - b.h - v^T W h
// Conditionals p(h_j = 1 | v) = sigmoid(sum_i W_ij v_i + b_j)
//              p(v_i = 1 | h) = sigmoid(sum_j W_ij h_j + a_i)
//
// `conn` is the c x h matrix W (visible rows, hidden columns). It is unrelated
// to the assignment weights held by WeightMatrix.
struct RbmParams {
  RealMatrix conn;
  RealVector vis_bias;
  RealVector hid_bias;

  std::size_t visible() const noexcept { return vis_bias.size(); }
  std::size_t hidden() const noexcept { return hid_bias.size(); }

  // Throws unless c, h >= 1, shapes agree and every entry is finite.
  void validate() const;

  friend bool operator==(const RbmParams&, const RbmParams&) = default;
};

// Log-likelihood ascent direction (data term minus model term).
struct Gradient {
  RealMatrix d_conn;
  RealVector d_vis;
  RealVector d_hid;
};

struct TrainConfig {
  double alpha = 0.1;   // rate for connections and visible biases, in (0, 1)
  double beta = 0.1;    // rate for hidden biases, in (0, 1)
  double eta = 0.01;    // ratio-penalty coefficient, >= 0
  unsigned cd_k = 1;    // Gibbs steps per CD estimate
  unsigned epochs = 50;
  unsigned batch = 16;
  std::uint64_t seed = 42;

  void validate() const;
};

// Largest c + h accepted by the enumeration routines.
inline constexpr std::size_t kMaxEnumerationUnits = 20;

// Connection weights ~ N(0, 0.01^2), biases zero.
RbmParams init_params(std::size_t visible, std::size_t hidden, std::uint64_t seed);

double sigmoid(double x) noexcept;

double energy(const RbmParams& p, std::span<const std::uint8_t> v,
              std::span<const std::uint8_t> h);

RealVector hidden_conditional(const RbmParams& p, std::span<const std::uint8_t> v);

// `h` may hold binary samples or mean-field probabilities in [0, 1].
RealVector visible_conditional(const RbmParams& p, std::span<const double> h);

BinaryVector sample_binary(std::span<const double> probs, Rng& rng);

// Z = sum over all 2^(c+h) joint states of exp(-E).
double exact_partition(const RbmParams& p);

// Exact gradient of log p(v) by enumeration of every joint state.
Gradient exact_gradient(const RbmParams& p, std::span<const std::uint8_t> v);

// CD-k estimate averaged over `batch`.
Gradient cd_gradient(const RbmParams& p, std::span<const BinaryVector> batch,
                     unsigned k, Rng& rng);

// One parameter step. Connections follow
//   w' = w + alpha * g + eta * (w_prev / w)
// with the ratio taken as 0 when |w| < 1e-12. Biases take plain ascent steps
// with alpha (visible) and beta (hidden). Throws kDivergence on non-finite
// output.
RbmParams apply_update(const RbmParams& p, const RbmParams& prev, const Gradient& g,
                       const TrainConfig& cfg);

// Mutable training state carried across calls so that training can resume
// with the same generator stream and penalty history.
struct TrainingState {
  RbmParams current;
  RbmParams previous;
  Rng rng;

  TrainingState(RbmParams initial, std::uint64_t seed)
      : current(initial), previous(std::move(initial)), rng(seed) {}
};

// Runs cfg.epochs epochs of shuffled mini-batch CD over `data`.
void train_epochs(TrainingState& state, std::span<const BinaryVector> data,
                  const TrainConfig& cfg);

// Convenience wrapper: fresh state seeded with cfg.seed.
RbmParams train(const RbmParams& p, std::span<const BinaryVector> data,
                const TrainConfig& cfg);

// Mean-field reconstruction p(v | E[h | v]); deterministic.
RealVector reconstruction_probs(const RbmParams& p, std::span<const std::uint8_t> v);

}  // namespace rbma

#endif  // RBMA_RBM_HPP
