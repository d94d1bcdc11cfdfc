#include "parqq/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "parqq/errors.hpp"
#include "parqq/linalg.hpp"

namespace parqq {

void AdversaryInstance::validate() const {
  if (gamma.rows() != static_cast<Eigen::Index>(rows.size()) || gamma.cols() != static_cast<Eigen::Index>(cols.size())) {
    throw ParameterError("adversary matrix dimensions must match its label counts");
  }
  auto check = [&](const Input& x) {
    if (static_cast<int>(x.size()) != n) throw ParameterError("adversary label length differs from n");
    for (int v : x) {
      if (v < 0 || v >= q) throw ParameterError("adversary label entry outside the alphabet");
    }
  };
  std::for_each(rows.begin(), rows.end(), check);
  std::for_each(cols.begin(), cols.end(), check);
}

Eigen::MatrixXd delta_mask(std::span<const Input> rows, std::span<const Input> cols, Mask step) {
  const auto positions = mask_elements(step);
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (int j : positions) {
        if (rows[r].at(j) != cols[c].at(j)) {
          mask(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
          break;
        }
      }
    }
  }
  return mask;
}

AdversaryRatio adversary_ratio(const AdversaryInstance& instance, int p, StepRange range) {
  instance.validate();
  if (p < 1 || p > instance.n) throw ParameterError("adversary ratio requires 1 <= p <= n");
  if (static_cast<double>(instance.gamma.rows()) * static_cast<double>(instance.gamma.cols()) > kDenseNormEntries) {
    throw ResourceLimitError("adversary ratio is limited to 16e6 matrix entries");
  }
  AdversaryRatio out;
  out.numerator = spectral_norm(instance.gamma);
  const int lo = range == StepRange::exact ? p : 1;
  for (int size = lo; size <= p; ++size) {
    for (Mask step : k_subsets(instance.n, size)) {
      const Eigen::MatrixXd masked = instance.gamma.cwiseProduct(delta_mask(instance.rows, instance.cols, step));
      const double norm = spectral_norm(masked);
      if (norm > out.denominator) {
        out.denominator = norm;
        out.worst_step = step;
      }
    }
  }
  if (out.denominator <= 1e-300) {
    out.unbounded = true;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = out.numerator / out.denominator;
  }
  return out;
}

AdversaryInstance or_adversary(int n) {
  if (n < 1) throw ParameterError("OR adversary requires n >= 1");
  AdversaryInstance a;
  a.n = n;
  a.q = 2;
  a.gamma = Eigen::MatrixXd::Ones(1, n);
  a.rows.push_back(Input(n, 0));
  for (int i = 0; i < n; ++i) {
    Input e(n, 0);
    e[i] = 1;
    a.cols.push_back(e);
  }
  return a;
}

Fact1Report check_fact1(int trials, const Fact1Dims& dims, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("fact1 check requires trials >= 1");
  if (dims.max_n < 1 || dims.max_q < 2 || dims.max_labels < 1) throw ParameterError("invalid fact1 dimensions");
  Fact1Report report;
  report.seed = seed;
  std::mt19937_64 master(seed);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = master();
    std::mt19937_64 rng(trial_seed);
    auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = uniform_int(1, dims.max_n);
    const int q = uniform_int(2, dims.max_q);
    auto random_labels = [&] {
      std::vector<Input> labels(static_cast<std::size_t>(uniform_int(1, dims.max_labels)));
      for (auto& x : labels) {
        x.resize(n);
        for (auto& v : x) v = uniform_int(0, q - 1);
      }
      return labels;
    };
    const auto rows = random_labels();
    const auto cols = random_labels();
    Eigen::MatrixXd gamma(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    for (Eigen::Index i = 0; i < gamma.size(); ++i) gamma.data()[i] = entry(rng);

    const Mask outer = static_cast<Mask>(rng()) & full_mask(n);
    const Mask inner = static_cast<Mask>(rng()) & outer;
    const double norm_inner = spectral_norm(gamma.cwiseProduct(delta_mask(rows, cols, inner)));
    const double norm_outer = spectral_norm(gamma.cwiseProduct(delta_mask(rows, cols, outer)));
    ++report.trials;
    if (norm_outer <= 1e-300) {
      // J in K means supp(Delta_J) lies inside supp(Delta_K)
      if (norm_inner > 1e-12) throw PropertyFailure("mask support containment failed, trial seed " + std::to_string(trial_seed));
      ++report.skipped;
      continue;
    }
    if (norm_inner > 2.0 * norm_outer + 1e-9) {
      throw PropertyFailure("|G o D_J| > 2 |G o D_K| at trial seed " + std::to_string(trial_seed) + " (J={" +
                            format_subset(inner) + "}, K={" + format_subset(outer) + "})");
    }
    report.max_ratio = std::max(report.max_ratio, norm_inner / norm_outer);
  }
  return report;
}

Input block_bijection_query(std::span<const int> x, Mask step, int p) {
  if (popcount(step) > p) throw ParameterError("block query requires |J| <= p");
  if (!is_subset(step, full_mask(static_cast<int>(x.size())))) throw ParameterError("block query index outside [n]");
  Input out;
  for (int j : mask_elements(step)) out.push_back(x[j]);
  return out;
}

BlockString::BlockString(Input x, int p) : x_(std::move(x)), p_(p) {
  if (p < 1) throw ParameterError("block string requires p >= 1");
}

Input BlockString::query(Mask step) {
  auto out = block_bijection_query(x_, step, p_);
  ++queries_;
  return out;
}

bool evaluate_lifted(const InducedFunction& f, BlockString& lifted) {
  const int n = lifted.arity();
  const int p = lifted.parallelism();
  Input x(n, 0);
  for (int start = 0; start < n; start += p) {
    const int stop = std::min(n, start + p);
    const Mask step = full_mask(stop) & ~full_mask(start);
    const auto values = lifted.query(step);
    std::copy(values.begin(), values.end(), x.begin() + start);
  }
  return f(x);
}

Eigen::Index input_index(std::span<const int> x, int q) {
  Eigen::Index index = 0;
  for (int v : x) index = index * q + v;
  return index;
}

Input index_input(Eigen::Index index, int n, int q) {
  Input x(n);
  for (int j = n - 1; j >= 0; --j) {
    x[j] = static_cast<int>(index % q);
    index /= q;
  }
  return x;
}

}  // namespace parqq
