#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "parqq/certstruct.hpp"
#include "parqq/subsets.hpp"

namespace parqq {

/// Learning-graph edge (S, J): source S, target S u J, with J nonempty and disjoint from S.
struct Edge {
  Mask source = 0;
  Mask step = 0;

  Mask target() const { return source | step; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr std::size_t kMaxEdges = 10'000'000;

/// The p-parallel edge set restricted to |S| <= stage_cap.
class EdgeSet {
 public:
  static EdgeSet build(int n, int p, int stage_cap);

  /// Closed-form size of build(n, p, stage_cap).
  static std::uint64_t count(int n, int p, int stage_cap);

  int n() const { return n_; }
  int p() const { return p_; }
  int stage_cap() const { return stage_cap_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

 private:
  int n_ = 0;
  int p_ = 0;
  int stage_cap_ = 0;
  std::vector<Edge> edges_;
};

/// Dual solution alpha_S(M) to the learning-graph maximization.
///
/// The symmetric form lives on the complete structure of all k-subsets of [n]
/// and stores alpha by stage size |S|. The general form holds explicit values
/// for (S, M) pairs of a given structure and defaults to zero.
class DualSolution {
 public:
  static DualSolution symmetric(int n, int k, std::vector<double> stage_alpha);
  static DualSolution general(const CertificateStructure& structure, std::map<std::pair<Mask, Mask>, double> values);

  bool is_symmetric() const { return symmetric_; }
  int n() const { return n_; }
  /// Block size of the symmetric form.
  int block_size() const { return k_; }

  /// alpha_S(M); zero whenever M lies inside S.
  double value(Mask subset, Mask block) const;

  /// alpha_j of the symmetric form (zero past the stored range).
  double stage(int j) const;
  const std::vector<double>& stage_alpha() const { return stage_alpha_; }

  /// sqrt(sum_M alpha_empty(M)^2).
  double objective() const { return objective_; }

  /// Largest j with alpha_j > 0 for the symmetric form, n otherwise.
  int support_stage() const;

  DualSolution scaled(double factor) const;

 private:
  int n_ = 0;
  int k_ = 0;
  bool symmetric_ = true;
  std::vector<double> stage_alpha_;
  std::vector<Mask> blocks_;
  std::map<std::pair<Mask, Mask>, double> values_;
  double objective_ = 0.0;

  void finish();
};

/// alpha_j = max((n/p)^(2/3) - j/p, 0) / (2n) over the pairs of [n].
DualSolution ed_dual_certificate(int n, int p);

/// alpha_j = max((n/p)^(k/(k+1)) - j/p, 0) / (2 n^(k/2)) over the k-subsets of [n].
DualSolution ksum_dual_certificate(int n, int k, int p);

enum class FeasibilityMode { automatic, grouped, naive };

struct FeasibilityReport {
  double max_violation = 0.0;  // max over edges of L(e)
  Edge worst_edge{};           // meaningful for n <= 30
  int worst_stage = 0;         // |S| of the worst edge
  int worst_step = 0;          // |J| of the worst edge
  bool feasible = true;        // max_violation <= 1 + 1e-9
  std::size_t edges_checked = 0;
  bool grouped = false;
};

inline constexpr double kDualTolerance = 1e-9;

/// L(e) = sum_M (alpha_{s(e)}(M) - alpha_{t(e)}(M))^2 for every edge.
///
/// Grouped mode needs a symmetric dual over a complete uniform structure and
/// counts blocks by (|M n S|, |M n J|) with binomial coefficients.
FeasibilityReport verify_dual_feasibility(const DualSolution& dual, const EdgeSet& edges,
                                          const CertificateStructure& structure,
                                          FeasibilityMode mode = FeasibilityMode::automatic);

/// Grouped check over every edge type (|S|, |J|) with |S| <= stage_cap,
/// without materializing the edge set. Requires the symmetric form.
FeasibilityReport verify_symmetric_dual(const DualSolution& dual, int p, int stage_cap);

/// L for a single edge by direct summation over blocks.
double edge_violation(const DualSolution& dual, const CertificateStructure& structure, const Edge& edge);

struct PrimalOptions {
  int max_rounds = 500;
  double relative_tolerance = 1e-6;
  double weight_floor = 1e-12;
  /// Exponent of the multiplicative block-multiplier update.
  double multiplier_rate = 1.0;
};

struct PrimalSolution {
  EdgeSet edges;
  std::vector<double> weights;              // w_e
  std::vector<std::vector<double>> flows;   // flows[block][edge] = theta_e(M)
  std::vector<double> energies;             // sum_e theta_e(M)^2 / w_e per block
  double objective = 0.0;                   // sqrt(sum_e w_e)
  int rounds = 0;
  bool converged = false;

  double total_weight() const;
};

struct PrimalCertificate {
  double max_energy = 0.0;
  double max_conservation_residual = 0.0;
  double max_source_deviation = 0.0;
  bool zero_weight_flow = false;
  bool feasible = false;
};

/// Rechecks energies, conservation at interior vertices and the unit source.
PrimalCertificate certify_primal(const PrimalSolution& solution, const CertificateStructure& structure,
                                 double tolerance = 1e-9);

inline constexpr int kMaxPrimalArity = 8;
inline constexpr std::size_t kMaxPrimalBlocks = 70;

/// Feasible primal solution by alternating minimization: electrical flows for
/// fixed weights, closed-form weights for fixed flows and block multipliers,
/// then rescaling so every block energy is at most one. Not globally optimal.
PrimalSolution solve_primal(const CertificateStructure& structure, int p, const PrimalOptions& options = {});

/// Minimum-energy unit flow from the empty set into {S : block in S} for the
/// given conductances. Returns per-edge flow; energy written to *energy.
std::vector<double> electrical_flow(const EdgeSet& edges, std::span<const double> weights, Mask block,
                                    double* energy = nullptr);

struct WitnessReport {
  Mask certificate = 0;       // M_x
  double cut_sum = 0.0;       // sum over J with x_J != y_J of <u_{x,J}, u_{y,J}>
  double one_input_norm = 0.0;   // sum_J |u_{x,J}|^2
  double zero_input_norm = 0.0;  // sum_J |u_{y,J}|^2
  double total_weight = 0.0;
  double block_energy = 0.0;
};

/// Builds the adversary-dual vectors u_{x,J}, u_{y,J} from a primal solution
/// over the basis |S, x_S> and evaluates the feasibility sum for (x, y).
WitnessReport witness_from_primal(const PrimalSolution& solution, const InducedFunction& f, std::span<const int> x,
                                  std::span<const int> y);

}  // namespace parqq
