#include "parqq/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parqq/errors.hpp"
#include "parqq/subsets.hpp"

namespace parqq {

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > kMaxSimulatedQubits) throw ResourceLimitError("state vectors are limited to 24 qubits");
  amplitudes_.assign(std::size_t{1} << qubits, {0.0, 0.0});
  amplitudes_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void StateVector::hadamard_all() {
  const double scale = 1.0 / std::sqrt(2.0);
  for (std::size_t half = 1; half < amplitudes_.size(); half <<= 1) {
    for (std::size_t start = 0; start < amplitudes_.size(); start += 2 * half) {
      for (std::size_t i = start; i < start + half; ++i) {
        const auto a = amplitudes_[i];
        const auto b = amplitudes_[i + half];
        amplitudes_[i] = (a + b) * scale;
        amplitudes_[i + half] = (a - b) * scale;
      }
    }
  }
}

ParallelQueryLog::ParallelQueryLog(int n, int p) : n_(n), p_(p) {
  if (n < 1 || p < 1) throw ParameterError("query log requires n >= 1 and p >= 1");
}

void ParallelQueryLog::record(QueryBatch batch) {
  if (static_cast<int>(batch.indices.size()) > p_) throw PropertyFailure("query batch larger than p");
  for (int i : batch.indices) {
    if (i < 0 || i > n_) throw PropertyFailure("query index outside {0} u [n]");
  }
  rounds_.push_back(std::move(batch));
}

int ParallelQueryLog::total_queries() const {
  int total = 0;
  for (const auto& b : rounds_) total += static_cast<int>(b.indices.size());
  return total;
}

int ParallelQueryLog::max_batch() const {
  int best = 0;
  for (const auto& b : rounds_) best = std::max(best, static_cast<int>(b.indices.size()));
  return best;
}

int grover_iterations(int block_size) {
  if (block_size < 1) throw ParameterError("Grover block size must be >= 1");
  const double t = std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(block_size)) - 0.5;
  return std::max(0, static_cast<int>(std::lround(t)));
}

GroverResult grover_parallel(int n, int p, int marked, std::optional<int> iterations) {
  if (p < 1 || n < 1 || n % p != 0) throw ParameterError("parallel Grover requires p | n");
  if (marked < 1 || marked > n) throw ParameterError("parallel Grover requires a marked index in [n]");
  if (iterations && *iterations < 0) throw ParameterError("Grover iteration count must be >= 0");
  const int block = n / p;
  if (block > (1 << 22)) throw ResourceLimitError("Grover blocks are limited to 2^22 indices");

  GroverResult out;
  out.block_size = block;
  out.iterations = iterations.value_or(grover_iterations(block));
  out.log = ParallelQueryLog(n, p);
  out.log.note("superposed rounds list the first index of each copy's block");

  // Each copy starts uniform over its block; only the owning copy has a marked element.
  const int owner = (marked - 1) / block;
  const int offset = (marked - 1) % block;
  const double start = 1.0 / std::sqrt(static_cast<double>(block));
  std::vector<std::vector<double>> copies(static_cast<std::size_t>(p), std::vector<double>(block, start));

  std::vector<int> registers;
  for (int c = 0; c < p; ++c) registers.push_back(c * block + 1);
  for (int it = 0; it < out.iterations; ++it) {
    out.log.record({registers, true});
    for (int c = 0; c < p; ++c) {
      auto& amp = copies[c];
      if (c == owner) amp[offset] = -amp[offset];
      double mean = 0.0;
      for (double a : amp) mean += a;
      mean /= block;
      for (double& a : amp) a = 2.0 * mean - a;
    }
  }
  for (const auto& amp : copies) {
    double norm = 0.0;
    for (double a : amp) norm += a * a;
    out.norm_error = std::max(out.norm_error, std::abs(1.0 - norm));
  }

  // Verification round: every copy queries its most likely index.
  std::vector<int> candidates;
  for (int c = 0; c < p; ++c) {
    const auto& amp = copies[c];
    const auto best = std::max_element(amp.begin(), amp.end(), [](double a, double b) { return a * a < b * b; });
    candidates.push_back(c * block + static_cast<int>(best - amp.begin()) + 1);
  }
  out.log.record({candidates, false});
  out.candidate = candidates[owner];
  out.rounds = out.log.total_rounds();

  out.success = copies[owner][offset] * copies[owner][offset];
  const double theta = std::asin(std::sqrt(1.0 / block));
  out.closed_form = std::pow(std::sin((2 * out.iterations + 1) * theta), 2);
  return out;
}

int interrogation_threshold(int n, double eps) {
  if (n < 1) throw ParameterError("interrogation requires n >= 1");
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("interrogation requires 0 < eps < 1");
  const double t = n / 2.0 + std::sqrt(n * std::log(1.0 / eps) / 2.0);
  return std::min(n, static_cast<int>(std::ceil(t - 1e-12)));
}

double interrogation_closed_form(int n, int threshold) {
  double sum = 0.0;
  for (int i = 0; i <= std::min(threshold, n); ++i) sum += binomial_real(n, i);
  return sum / std::ldexp(1.0, n);
}

InterrogationResult interrogate(std::span<const int> x, int p, double eps, std::optional<int> threshold,
                                bool keep_distribution) {
  const int n = static_cast<int>(x.size());
  if (n < 1 || n > kMaxSimulatedQubits) throw ResourceLimitError("interrogation is limited to 1 <= n <= 24");
  if (p < 1) throw ParameterError("interrogation requires p >= 1");
  for (int b : x) {
    if (b != 0 && b != 1) throw ParameterError("interrogation input must be a bit string");
  }
  InterrogationResult out;
  out.threshold = threshold.value_or(interrogation_threshold(n, eps));
  if (out.threshold < 0 || out.threshold > n) throw ParameterError("interrogation threshold must be in [0, n]");
  out.rounds = static_cast<int>((out.threshold + p - 1) / p);
  out.closed_form = interrogation_closed_form(n, out.threshold);

  Mask xmask = 0;
  for (int i = 0; i < n; ++i) xmask |= static_cast<Mask>(x[i]) << i;

  StateVector state(n);
  state[0] = 0.0;
  const double amp = 1.0 / std::sqrt(out.closed_form * std::ldexp(1.0, n));
  for (std::size_t y = 0; y < state.size(); ++y) {
    if (popcount(static_cast<Mask>(y)) <= out.threshold) state[y] = amp;
  }

  // Round j queries the one-positions j*p+1 .. j*p+p of y; slot 0 is a no-op when y has fewer.
  out.log = ParallelQueryLog(n, p);
  out.log.note("slot i stands for the i-th one-position of y; the phase is applied as one global unitary");
  for (int round = 0; round < out.rounds; ++round) {
    QueryBatch batch;
    batch.superposed = true;
    for (int slot = round * p + 1; slot <= std::min(out.threshold, (round + 1) * p); ++slot) batch.indices.push_back(slot);
    out.log.record(std::move(batch));
  }

  if (n <= 12) {
    // Per basis state, accumulate the phase round by round from at most p queried bits.
    bool match = true;
    for (std::size_t y = 0; y < state.size() && match; ++y) {
      if (popcount(static_cast<Mask>(y)) > out.threshold) continue;
      const auto ones = mask_elements(static_cast<Mask>(y));
      int parity = 0;
      for (int round = 0; round < out.rounds; ++round) {
        for (int slot = round * p; slot < (round + 1) * p; ++slot) {
          if (slot < static_cast<int>(ones.size())) parity ^= x[ones[slot]];
        }
      }
      match = parity == popcount(xmask & static_cast<Mask>(y)) % 2;
    }
    out.batched_checked = match;
    if (!match) throw PropertyFailure("batched phase queries disagree with the global phase");
  }

  for (std::size_t y = 0; y < state.size(); ++y) {
    if (popcount(xmask & static_cast<Mask>(y)) % 2 == 1) state[y] = -state[y];
  }
  out.norm_error = std::abs(1.0 - state.norm_squared());
  state.hadamard_all();
  out.norm_error = std::max(out.norm_error, std::abs(1.0 - state.norm_squared()));
  out.success = state.probability(xmask);
  if (keep_distribution) {
    out.distribution.reserve(state.size());
    for (std::size_t z = 0; z < state.size(); ++z) out.distribution.push_back(state.probability(z));
  }
  return out;
}

std::vector<RoundsRow> interrogation_rounds_table(int n, std::span<const int> p_values, double eps) {
  const int threshold = interrogation_threshold(n, eps);
  std::vector<RoundsRow> out;
  for (int p : p_values) {
    if (p < 1) throw ParameterError("rounds table requires p >= 1");
    RoundsRow row{p, threshold, (threshold + p - 1) / p};
    if (row.rounds > std::max(threshold, 1)) throw PropertyFailure("rounds exceed T");
    if (p >= threshold && row.rounds > 1) throw PropertyFailure("p >= T must need one round");
    out.push_back(row);
  }
  return out;
}

}  // namespace parqq
