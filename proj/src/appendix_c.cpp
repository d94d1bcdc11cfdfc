#include <algorithm>
#include <cmath>

#include "parqq/adversary.hpp"
#include "parqq/errors.hpp"
#include "parqq/linalg.hpp"

namespace parqq {

ProjectorFamily::ProjectorFamily(int q, int n) : q_(q), n_(n) {
  if (q < 2) throw ParameterError("projector family requires q >= 2");
  if (n < 1) throw ParameterError("projector family requires n >= 1");
  double dim = 1.0;
  for (int i = 0; i < n; ++i) dim *= q;
  if (dim > kMaxDenseDimension) throw ResourceLimitError("projector family is limited to q^n <= 1296");
  dim_ = static_cast<Eigen::Index>(dim);
  e0_ = Eigen::MatrixXd::Constant(q, q, 1.0 / q);
  e1_ = Eigen::MatrixXd::Identity(q, q) - e0_;
}

Eigen::MatrixXd ProjectorFamily::projector(Mask subset) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
  for (int j = 0; j < n_; ++j) out = kronecker(out, (subset >> j) & 1U ? e1_ : e0_);
  return out;
}

namespace {

Eigen::MatrixXd combine(const std::vector<Eigen::MatrixXd>& projectors, const std::vector<double>& coefficients) {
  const Eigen::Index dim = projectors.front().rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < projectors.size(); ++s) {
    if (coefficients[s] != 0.0) out += coefficients[s] * projectors[s];
  }
  return out;
}

std::vector<Eigen::MatrixXd> all_projectors(int n, int q) {
  const ProjectorFamily family(q, n);
  std::vector<Eigen::MatrixXd> out;
  for (Mask s = 0; s <= full_mask(n); ++s) out.push_back(family.projector(s));
  return out;
}

}  // namespace

GammaTilde build_gamma_tilde(const DualSolution& alpha, const InducedFunction& f) {
  const auto& structure = f.structure();
  const int n = structure.n();
  const int q = f.alphabet();
  if (alpha.n() != n) throw ParameterError("dual and function must share n");
  const auto projectors = all_projectors(n, q);
  const Eigen::Index dim = projectors.front().rows();

  GammaTilde gt;
  gt.n = n;
  gt.q = q;
  gt.blocks = structure.blocks();
  const std::size_t blocks = gt.blocks.size();
  gt.full = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(blocks) * dim, dim);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<double> coefficients;
    for (Mask s = 0; s <= full_mask(n); ++s) coefficients.push_back(alpha.value(s, gt.blocks[b]));
    gt.full.block(static_cast<Eigen::Index>(b) * dim, 0, dim, dim) = combine(projectors, coefficients);
    gt.alpha.push_back(std::move(coefficients));
  }

  for (Eigen::Index y = 0; y < dim; ++y) {
    const Input label = index_input(y, n, q);
    if (!f(label)) {
      gt.kept_cols.push_back(y);
      gt.col_labels.push_back(label);
    }
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    for (Eigen::Index x = 0; x < dim; ++x) {
      const Input label = index_input(x, n, q);
      if (f.block_certifies(b, label)) {
        gt.kept_rows.push_back(static_cast<Eigen::Index>(b) * dim + x);
        gt.row_labels.emplace_back(label, gt.blocks[b]);
      }
    }
  }
  gt.restricted = gt.full(gt.kept_rows, gt.kept_cols);
  return gt;
}

AdversaryInstance GammaTilde::restricted_instance() const {
  AdversaryInstance a;
  a.n = n;
  a.q = q;
  a.gamma = restricted;
  for (const auto& [x, block] : row_labels) a.rows.push_back(x);
  a.cols = col_labels;
  return a;
}

Eigen::MatrixXd delta_tilde(const GammaTilde& gt, Mask step) {
  const Eigen::Index dim = gt.full.cols();
  std::vector<Input> labels;
  for (Eigen::Index i = 0; i < dim; ++i) labels.push_back(index_input(i, gt.n, gt.q));
  const Eigen::MatrixXd single = delta_mask(labels, labels, step);
  return single.replicate(static_cast<Eigen::Index>(gt.blocks.size()), 1);
}

double phi_closed_form_norm(const GammaTilde& gt, Mask step) {
  double best = 0.0;
  for (Mask s = 0; s <= full_mask(gt.n); ++s) {
    double sum = 0.0;
    for (const auto& a : gt.alpha) {
      const double beta = a[s] - a[s | step];
      sum += beta * beta;
    }
    best = std::max(best, std::sqrt(sum));
  }
  return best;
}

PhiReport phi_J(const GammaTilde& gt, Mask step) {
  if (step == 0 || !is_subset(step, full_mask(gt.n))) throw ParameterError("phi_J requires a nonempty J inside [n]");
  const auto projectors = all_projectors(gt.n, gt.q);
  const Eigen::Index dim = projectors.front().rows();
  const Mask all = full_mask(gt.n);

  PhiReport report;
  report.phi = Eigen::MatrixXd::Zero(gt.full.rows(), gt.full.cols());
  for (std::size_t b = 0; b < gt.blocks.size(); ++b) {
    std::vector<double> coefficients(static_cast<std::size_t>(all) + 1, 0.0);
    for (Mask s = 0; s <= all; ++s) {
      const double a = gt.alpha[b][s];
      if (a == 0.0) continue;
      if (!is_subset(step, s)) {
        coefficients[s] += a;
        continue;
      }
      // S \ J <= S' < S
      const Mask base = s & ~step;
      for (Mask extra = step;; extra = (extra - 1) & step) {
        if (extra != step) coefficients[base | extra] -= a;
        if (extra == 0) break;
      }
    }
    report.phi.block(static_cast<Eigen::Index>(b) * dim, 0, dim, dim) = combine(projectors, coefficients);
  }
  report.explicit_norm = spectral_norm(report.phi);
  report.closed_form_norm = phi_closed_form_norm(gt, step);

  const Eigen::MatrixXd mask = delta_tilde(gt, step);
  report.masked_equality_error = (gt.full - report.phi).cwiseProduct(mask).cwiseAbs().maxCoeff();

  const auto instance = gt.restricted_instance();
  report.masked_norm = spectral_norm(instance.gamma.cwiseProduct(delta_mask(instance.rows, instance.cols, step)));

  report.masked_equality = report.masked_equality_error <= 1e-12;
  report.norm_match = std::abs(report.explicit_norm - report.closed_form_norm) <= 1e-6;
  report.factor_two = report.masked_norm <= 2.0 * report.explicit_norm + 1e-9;
  return report;
}

}  // namespace parqq
