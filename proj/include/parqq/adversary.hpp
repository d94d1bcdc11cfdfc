#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "parqq/certstruct.hpp"
#include "parqq/learngraph.hpp"
#include "parqq/subsets.hpp"

namespace parqq {

/// Input string in [q]^n with entries 0..q-1.
using Input = std::vector<int>;

/// Adversary matrix with its row and column input labels. Labels may repeat.
struct AdversaryInstance {
  Eigen::MatrixXd gamma;
  std::vector<Input> rows;
  std::vector<Input> cols;
  int n = 0;
  int q = 2;

  void validate() const;
};

/// Delta_J[x, y] = 1 iff x_j != y_j for some j in J. Delta_empty is all zero.
Eigen::MatrixXd delta_mask(std::span<const Input> rows, std::span<const Input> cols, Mask step);

enum class StepRange { exact, at_most };

struct AdversaryRatio {
  double value = 0.0;
  bool unbounded = false;  // every masked matrix vanished
  double numerator = 0.0;  // |Gamma|
  double denominator = 0.0;
  Mask worst_step = 0;
};

/// |Gamma| / max_J |Gamma o Delta_J| over |J| = p, or |J| <= p with StepRange::at_most.
AdversaryRatio adversary_ratio(const AdversaryInstance& instance, int p, StepRange range = StepRange::exact);

/// All-ones 1 x n matrix: row 0^n, columns the weight-one inputs.
AdversaryInstance or_adversary(int n);

struct Fact1Dims {
  int max_n = 5;
  int max_q = 3;
  int max_labels = 6;
};

struct Fact1Report {
  int trials = 0;
  int skipped = 0;         // Gamma o Delta_K vanished, so the trial is vacuous
  double max_ratio = 0.0;  // max |Gamma o Delta_J| / |Gamma o Delta_K|
  std::uint64_t seed = 0;
};

/// Random Gamma with entries in [-1, 1] over random labels, random J in K.
/// Throws PropertyFailure naming the trial seed if |G o D_J| > 2|G o D_K| + 1e-9.
Fact1Report check_fact1(int trials, const Fact1Dims& dims, std::uint64_t seed);

/// x_J as a tuple, i.e. the entry of the block string X indexed by J.
Input block_bijection_query(std::span<const int> x, Mask step, int p);

/// The string X indexed by subsets of size <= p; each query to X is one p-parallel query to x.
class BlockString {
 public:
  BlockString(Input x, int p);

  Input query(Mask step);
  int queries() const { return queries_; }
  int parallelism() const { return p_; }
  int arity() const { return static_cast<int>(x_.size()); }

 private:
  Input x_;
  int p_;
  int queries_ = 0;
};

/// F(X) = f(x): recovers x through ceil(n/p) queries to X, then evaluates f.
bool evaluate_lifted(const InducedFunction& f, BlockString& lifted);

inline constexpr int kMaxDenseDimension = 1296;

/// E_S = tensor over j of E_{s_j}, with E_0 the projector onto the uniform vector of C^q.
class ProjectorFamily {
 public:
  ProjectorFamily(int q, int n);

  int alphabet() const { return q_; }
  int arity() const { return n_; }
  Eigen::Index dimension() const { return dim_; }
  Eigen::MatrixXd projector(Mask subset) const;

 private:
  int q_;
  int n_;
  Eigen::Index dim_;
  Eigen::MatrixXd e0_;
  Eigen::MatrixXd e1_;
};

/// Position of x in the tensor basis; coordinate 1 is the most significant digit.
Eigen::Index input_index(std::span<const int> x, int q);
Input index_input(Eigen::Index index, int n, int q);

/// Gamma-tilde stacks G_M = sum_S alpha_S(M) E_S over the blocks; Gamma keeps the
/// rows (x, M) where M certifies x and the columns y with f(y) = 0.
struct GammaTilde {
  int n = 0;
  int q = 0;
  std::vector<Mask> blocks;
  std::vector<std::vector<double>> alpha;  // alpha[block][S]
  Eigen::MatrixXd full;
  Eigen::MatrixXd restricted;
  std::vector<std::pair<Input, Mask>> row_labels;  // rows kept in the restriction
  std::vector<Input> col_labels;
  std::vector<Eigen::Index> kept_rows;
  std::vector<Eigen::Index> kept_cols;

  AdversaryInstance restricted_instance() const;
};

GammaTilde build_gamma_tilde(const DualSolution& alpha, const InducedFunction& f);

/// Delta-tilde_J over rows (x, M) and columns y of the full matrix.
Eigen::MatrixXd delta_tilde(const GammaTilde& gt, Mask step);

/// max_S sqrt(sum_M (alpha_S(M) - alpha_{S u J}(M))^2).
double phi_closed_form_norm(const GammaTilde& gt, Mask step);

struct PhiReport {
  Eigen::MatrixXd phi;
  double explicit_norm = 0.0;
  double closed_form_norm = 0.0;
  double masked_equality_error = 0.0;  // max entry of |(Gt - phi_J(Gt)) o Delta-tilde_J|
  double masked_norm = 0.0;            // |Gamma o Delta_J| on the restriction
  bool masked_equality = false;        // error <= 1e-12
  bool norm_match = false;             // |explicit - closed form| <= 1e-6
  bool factor_two = false;             // masked_norm <= 2 explicit_norm + 1e-9
};

/// Applies E_S -> E_S when J is not inside S, else -sum_{S\J <= S' < S} E_S', block by block.
PhiReport phi_J(const GammaTilde& gt, Mask step);

}  // namespace parqq
