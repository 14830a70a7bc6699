#include "rbma/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rbma/error.hpp"

namespace rbma {

namespace {

constexpr double kRatioGuard = 1e-12;

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": expected length " +
                                               std::to_string(want) + ", got " +
                                               std::to_string(got));
  }
}

void require_binary(std::span<const std::uint8_t> v, const char* what) {
  for (auto x : v) {
    if (x > 1) throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": entry not 0/1");
  }
}

void require_enumerable(const RbmParams& p) {
  if (p.visible() + p.hidden() > kMaxEnumerationUnits) {
    throw Error(ErrorCode::kTooLarge, "instance too large for enumeration");
  }
}

bool bit(std::uint32_t mask, std::size_t k) { return (mask >> k) & 1u; }

// Energy with v and h packed as bit masks (bit k = unit k).
double packed_energy(const RbmParams& p, std::uint32_t v, std::uint32_t h) {
  double e = 0.0;
  for (std::size_t i = 0; i < p.visible(); ++i) {
    if (!bit(v, i)) continue;
    e -= p.vis_bias[i];
    for (std::size_t j = 0; j < p.hidden(); ++j) {
      if (bit(h, j)) e -= p.conn(i, j);
    }
  }
  for (std::size_t j = 0; j < p.hidden(); ++j) {
    if (bit(h, j)) e -= p.hid_bias[j];
  }
  return e;
}

std::uint32_t pack(std::span<const std::uint8_t> v) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k]) mask |= 1u << k;
  }
  return mask;
}

Gradient zero_gradient(std::size_t c, std::size_t h) {
  return Gradient{RealMatrix(c, h, 0.0), RealVector(c, 0.0), RealVector(h, 0.0)};
}

}  // namespace

void RbmParams::validate() const {
  if (visible() == 0 || hidden() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "RBM needs at least one visible and one hidden unit");
  }
  if (conn.rows() != visible() || conn.cols() != hidden()) {
    throw Error(ErrorCode::kShapeMismatch, "RBM connection matrix does not match bias lengths");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::ranges::all_of(conn.flat(), finite) || !std::ranges::all_of(vis_bias, finite) ||
      !std::ranges::all_of(hid_bias, finite)) {
    throw Error(ErrorCode::kInvalidArgument, "RBM parameters must be finite");
  }
}

void TrainConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "beta must lie in (0,1)");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw Error(ErrorCode::kInvalidArgument, "eta must be >= 0");
  if (cd_k < 1) throw Error(ErrorCode::kInvalidArgument, "cd_k must be >= 1");
  if (batch < 1) throw Error(ErrorCode::kInvalidArgument, "batch must be >= 1");
}

RbmParams init_params(std::size_t visible, std::size_t hidden, std::uint64_t seed) {
  if (visible == 0 || hidden == 0) {
    throw Error(ErrorCode::kInvalidArgument, "RBM needs at least one visible and one hidden unit");
  }
  Rng rng(seed);
  RbmParams p{RealMatrix(visible, hidden, 0.0), RealVector(visible, 0.0),
              RealVector(hidden, 0.0)};
  for (double& w : p.conn.flat()) w = 0.01 * rng.normal();
  return p;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double energy(const RbmParams& p, std::span<const std::uint8_t> v,
              std::span<const std::uint8_t> h) {
  require_length(v.size(), p.visible(), "energy visible");
  require_length(h.size(), p.hidden(), "energy hidden");
  double e = 0.0;
  for (std::size_t i = 0; i < p.visible(); ++i) e -= p.vis_bias[i] * v[i];
  for (std::size_t j = 0; j < p.hidden(); ++j) e -= p.hid_bias[j] * h[j];
  for (std::size_t i = 0; i < p.visible(); ++i) {
    if (!v[i]) continue;
    for (std::size_t j = 0; j < p.hidden(); ++j) e -= p.conn(i, j) * h[j];
  }
  return e;
}

RealVector hidden_conditional(const RbmParams& p, std::span<const std::uint8_t> v) {
  require_length(v.size(), p.visible(), "hidden_conditional");
  require_binary(v, "hidden_conditional");
  RealVector act(p.hid_bias);
  for (std::size_t i = 0; i < p.visible(); ++i) {
    if (!v[i]) continue;
    const auto w = p.conn.row(i);
    for (std::size_t j = 0; j < p.hidden(); ++j) act[j] += w[j];
  }
  for (double& x : act) x = sigmoid(x);
  return act;
}

RealVector visible_conditional(const RbmParams& p, std::span<const double> h) {
  require_length(h.size(), p.hidden(), "visible_conditional");
  RealVector act(p.visible());
  for (std::size_t i = 0; i < p.visible(); ++i) {
    const auto w = p.conn.row(i);
    act[i] = sigmoid(std::inner_product(w.begin(), w.end(), h.begin(), p.vis_bias[i]));
  }
  return act;
}

BinaryVector sample_binary(std::span<const double> probs, Rng& rng) {
  BinaryVector out(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] >= 0.0 && probs[k] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "sample_binary: probability outside [0,1]");
    }
    out[k] = rng.uniform() < probs[k] ? 1 : 0;
  }
  return out;
}

double exact_partition(const RbmParams& p) {
  require_enumerable(p);
  const std::uint32_t nv = 1u << p.visible();
  const std::uint32_t nh = 1u << p.hidden();
  // Shift by the largest -E so no term overflows before the final rescale.
  double shift = -std::numeric_limits<double>::infinity();
  for (std::uint32_t v = 0; v < nv; ++v) {
    for (std::uint32_t h = 0; h < nh; ++h) shift = std::max(shift, -packed_energy(p, v, h));
  }
  double sum = 0.0;
  for (std::uint32_t v = 0; v < nv; ++v) {
    for (std::uint32_t h = 0; h < nh; ++h) sum += std::exp(-packed_energy(p, v, h) - shift);
  }
  return std::exp(shift) * sum;
}

Gradient exact_gradient(const RbmParams& p, std::span<const std::uint8_t> v) {
  require_enumerable(p);
  require_length(v.size(), p.visible(), "exact_gradient");
  require_binary(v, "exact_gradient");
  const std::size_t c = p.visible();
  const std::size_t hn = p.hidden();
  const std::uint32_t nv = 1u << c;
  const std::uint32_t nh = 1u << hn;
  const std::uint32_t data_v = pack(v);

  // Accumulates sum w(state) * stats(state) over the listed visible masks and
  // returns it normalised by sum w(state).
  auto expectation = [&](std::uint32_t v_begin, std::uint32_t v_end) {
    double shift = -std::numeric_limits<double>::infinity();
    for (std::uint32_t vm = v_begin; vm < v_end; ++vm) {
      for (std::uint32_t hm = 0; hm < nh; ++hm) shift = std::max(shift, -packed_energy(p, vm, hm));
    }
    Gradient acc = zero_gradient(c, hn);
    double norm = 0.0;
    for (std::uint32_t vm = v_begin; vm < v_end; ++vm) {
      for (std::uint32_t hm = 0; hm < nh; ++hm) {
        const double wgt = std::exp(-packed_energy(p, vm, hm) - shift);
        norm += wgt;
        for (std::size_t i = 0; i < c; ++i) {
          if (!bit(vm, i)) continue;
          acc.d_vis[i] += wgt;
          for (std::size_t j = 0; j < hn; ++j) {
            if (bit(hm, j)) acc.d_conn(i, j) += wgt;
          }
        }
        for (std::size_t j = 0; j < hn; ++j) {
          if (bit(hm, j)) acc.d_hid[j] += wgt;
        }
      }
    }
    for (double& x : acc.d_conn.flat()) x /= norm;
    for (double& x : acc.d_vis) x /= norm;
    for (double& x : acc.d_hid) x /= norm;
    return acc;
  };

  Gradient data = expectation(data_v, data_v + 1);  // sum over h of p(h|v)
  const Gradient model = expectation(0, nv);        // sum over (v,h) of p(v,h)

  for (std::size_t k = 0; k < data.d_conn.size(); ++k) {
    data.d_conn.flat()[k] -= model.d_conn.flat()[k];
  }
  for (std::size_t i = 0; i < c; ++i) data.d_vis[i] -= model.d_vis[i];
  for (std::size_t j = 0; j < hn; ++j) data.d_hid[j] -= model.d_hid[j];
  return data;
}

Gradient cd_gradient(const RbmParams& p, std::span<const BinaryVector> batch,
                     unsigned k, Rng& rng) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "cd_gradient: empty batch");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "cd_gradient: k must be >= 1");
  const std::size_t c = p.visible();
  const std::size_t hn = p.hidden();
  Gradient g = zero_gradient(c, hn);

  for (const auto& v0 : batch) {
    const RealVector ph0 = hidden_conditional(p, v0);
    BinaryVector h = sample_binary(ph0, rng);
    BinaryVector vk;
    RealVector phk;
    for (unsigned step = 0; step < k; ++step) {
      const RealVector hv(h.begin(), h.end());
      vk = sample_binary(visible_conditional(p, hv), rng);
      phk = hidden_conditional(p, vk);
      if (step + 1 < k) h = sample_binary(phk, rng);
    }
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < hn; ++j) {
        g.d_conn(i, j) += v0[i] * ph0[j] - vk[i] * phk[j];
      }
      g.d_vis[i] += static_cast<double>(v0[i]) - static_cast<double>(vk[i]);
    }
    for (std::size_t j = 0; j < hn; ++j) g.d_hid[j] += ph0[j] - phk[j];
  }

  const double scale = 1.0 / static_cast<double>(batch.size());
  for (double& x : g.d_conn.flat()) x *= scale;
  for (double& x : g.d_vis) x *= scale;
  for (double& x : g.d_hid) x *= scale;
  return g;
}

RbmParams apply_update(const RbmParams& p, const RbmParams& prev, const Gradient& g,
                       const TrainConfig& cfg) {
  if (!p.conn.same_shape(prev.conn) || !p.conn.same_shape(g.d_conn) ||
      p.visible() != g.d_vis.size() || p.hidden() != g.d_hid.size() ||
      p.conn.rows() != p.visible() || p.conn.cols() != p.hidden()) {
    throw Error(ErrorCode::kShapeMismatch, "apply_update: inconsistent shapes");
  }
  RbmParams next = p;
  auto w = next.conn.flat();
  const auto w_prev = prev.conn.flat();
  const auto grad = g.d_conn.flat();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double ratio = std::abs(w[k]) < kRatioGuard ? 0.0 : w_prev[k] / w[k];
    // Increment formed first, then added once.
    const double step = cfg.alpha * grad[k] + cfg.eta * ratio;
    w[k] += step;
  }
  for (std::size_t i = 0; i < next.visible(); ++i) next.vis_bias[i] += cfg.alpha * g.d_vis[i];
  for (std::size_t j = 0; j < next.hidden(); ++j) next.hid_bias[j] += cfg.beta * g.d_hid[j];

  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::ranges::all_of(next.conn.flat(), finite) ||
      !std::ranges::all_of(next.vis_bias, finite) || !std::ranges::all_of(next.hid_bias, finite)) {
    throw Error(ErrorCode::kDivergence, "divergence: non-finite parameters after update");
  }
  return next;
}

void train_epochs(TrainingState& state, std::span<const BinaryVector> data,
                  const TrainConfig& cfg) {
  cfg.validate();
  state.current.validate();
  for (const auto& v : data) {
    require_length(v.size(), state.current.visible(), "train data vector");
    require_binary(v, "train data vector");
  }
  if (data.empty() || cfg.epochs == 0) return;

  std::vector<std::size_t> order(data.size());
  std::vector<BinaryVector> batch;
  batch.reserve(cfg.batch);
  for (unsigned epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[state.rng.below(k)]);
    }
    for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch);
      batch.clear();
      for (std::size_t k = start; k < stop; ++k) batch.push_back(data[order[k]]);
      const Gradient g = cd_gradient(state.current, batch, cfg.cd_k, state.rng);
      RbmParams next = apply_update(state.current, state.previous, g, cfg);
      state.previous = std::move(state.current);
      state.current = std::move(next);
    }
  }
}

RbmParams train(const RbmParams& p, std::span<const BinaryVector> data, const TrainConfig& cfg) {
  TrainingState state(p, cfg.seed);
  train_epochs(state, data, cfg);
  return std::move(state.current);
}

RealVector reconstruction_probs(const RbmParams& p, std::span<const std::uint8_t> v) {
  return visible_conditional(p, hidden_conditional(p, v));
}

}  // namespace rbma
