#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parqq {

inline constexpr int kMaxSimulatedQubits = 24;

/// Amplitudes over 2^n basis states; basis index bit i holds qubit i + 1.
class StateVector {
 public:
  explicit StateVector(int qubits);

  int qubits() const { return qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::complex<double>& operator[](std::size_t i) { return amplitudes_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<std::complex<double>> amplitudes() { return amplitudes_; }
  std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }

  double norm_squared() const;
  double probability(std::size_t basis) const { return std::norm(amplitudes_[basis]); }

  /// H on every qubit, via the fast Walsh-Hadamard transform.
  void hadamard_all();

 private:
  int qubits_;
  std::vector<std::complex<double>> amplitudes_;
};

struct QueryBatch {
  std::vector<int> indices;  // 0 is the no-op query
  bool superposed = false;
};

/// Rounds of at most p queries each.
class ParallelQueryLog {
 public:
  ParallelQueryLog() = default;
  ParallelQueryLog(int n, int p);

  void record(QueryBatch batch);
  void note(std::string text) { notes_.push_back(std::move(text)); }

  int n() const { return n_; }
  int p() const { return p_; }
  const std::vector<QueryBatch>& rounds() const { return rounds_; }
  int total_rounds() const { return static_cast<int>(rounds_.size()); }
  int total_queries() const;
  int max_batch() const;
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int n_ = 0;
  int p_ = 1;
  std::vector<QueryBatch> rounds_;
  std::vector<std::string> notes_;
};

struct GroverResult {
  int block_size = 0;
  int iterations = 0;       // t
  int rounds = 0;           // t + 1 with the verification round
  double success = 0.0;     // simulated
  double closed_form = 0.0; // sin^2((2t + 1) arcsin(1 / sqrt(n/p)))
  double norm_error = 0.0;  // largest |1 - norm^2| seen over the copies
  int candidate = 0;        // most likely index of the owning copy, 1-based
  ParallelQueryLog log;
};

/// t = round((pi/4) sqrt(N) - 1/2) for block size N.
int grover_iterations(int block_size);

/// p Grover searches on disjoint blocks of n/p indices; marked is 1-based.
GroverResult grover_parallel(int n, int p, int marked, std::optional<int> iterations = std::nullopt);

/// min(n, ceil(n/2 + sqrt(n ln(1/eps) / 2))).
int interrogation_threshold(int n, double eps);

/// sum_{i <= T} C(n, i) / 2^n.
double interrogation_closed_form(int n, int threshold);

struct InterrogationResult {
  int threshold = 0;
  int rounds = 0;
  double success = 0.0;      // probability of measuring x
  double closed_form = 0.0;  // B / 2^n
  double norm_error = 0.0;
  bool batched_checked = false;  // per-basis round-by-round phase matched the global phase
  std::vector<double> distribution;  // over all 2^n outcomes, when requested
  ParallelQueryLog log;
};

/// Recovers x from the uniform superposition over |y| <= T with the phase (-1)^{x.y}.
InterrogationResult interrogate(std::span<const int> x, int p, double eps, std::optional<int> threshold = std::nullopt,
                                bool keep_distribution = false);

struct RoundsRow {
  int p = 0;
  int threshold = 0;
  int rounds = 0;
};

/// ceil(T/p) for each p; throws PropertyFailure if rounds > T or p >= T without a single round.
std::vector<RoundsRow> interrogation_rounds_table(int n, std::span<const int> p_values, double eps);

}  // namespace parqq
