#include "ardt/linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ardt/error.hpp"

namespace ardt {

FeatureEncoder::FeatureEncoder(std::vector<FeatureInfo> features) : features_(std::move(features)) {
  for (const auto& f : features_) {
    output_arity_ += f.kind == FeatureKind::Numeric ? 1 : (f.lexicon.empty() ? 0 : f.lexicon.size() - 1);
  }
}

void FeatureEncoder::encode(std::span<const double> x, std::span<double> out) const {
  if (x.size() != features_.size()) {
    throw InvalidArgument("linear model: feature vector has " + std::to_string(x.size()) +
                          " values, model expects " + std::to_string(features_.size()));
  }
  std::size_t k = 0;
  for (std::size_t j = 0; j < features_.size(); ++j) {
    if (features_[j].kind == FeatureKind::Numeric) {
      out[k++] = x[j];
      continue;
    }
    const std::size_t levels = features_[j].lexicon.size();
    for (std::size_t c = 1; c < levels; ++c) out[k++] = x[j] == static_cast<double>(c) ? 1.0 : 0.0;
  }
}

namespace {

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double apply_link(Link link, double theta) { return link == Link::Logistic ? sigmoid(theta) : theta; }

struct Design {
  Eigen::MatrixXd x;  // encoded features, n x p
  Eigen::VectorXd y;
  Eigen::VectorXd c;  // per-row weights
};

Design make_design(const Dataset& d, const FeatureEncoder& enc, const LinearTrainConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(d.rows());
  const auto p = static_cast<Eigen::Index>(enc.output_arity());
  Design out{Eigen::MatrixXd(n, p), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  std::vector<double> buf(enc.output_arity());
  const InstanceWeights w = cfg.instance_weights.value_or(InstanceWeights{});
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = static_cast<std::size_t>(i);
    enc.encode(d.row(row), buf);
    for (Eigen::Index j = 0; j < p; ++j) out.x(i, j) = buf[static_cast<std::size_t>(j)];
    out.y(i) = d.label(row);
    out.c(i) = d.label(row) ? w.c1 : w.c0;
  }
  return out;
}

void require_both_classes(const Dataset& d, const char* who) {
  if (d.positives() == 0 || d.negatives() == 0) {
    throw DataError(std::string(who) + ": training data needs both classes");
  }
}

// Gradient descent in standardized coordinates; the optimum maps back to the
// original scale exactly, and the intercept gradient is unchanged by the
// reparametrisation.
void gradient_descent(const Design& design, Link link, const LinearTrainConfig& cfg,
                      LinearModel& model) {
  const Eigen::Index n = design.x.rows();
  const Eigen::Index p = design.x.cols();
  Eigen::VectorXd mean = design.x.colwise().mean();
  Eigen::VectorXd scale(p);
  Eigen::MatrixXd z = design.x.rowwise() - mean.transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(n));
    scale(j) = sd > 0 ? sd : 1.0;
    if (sd > 0) {
      z.col(j) /= sd;
    } else {
      z.col(j).setZero();
    }
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double b0 = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  double grad_norm = 0;
  std::size_t iter = 0;
  bool converged = false;
  Eigen::VectorXd residual(n);
  for (; iter < cfg.max_iters; ++iter) {
    Eigen::VectorXd theta = (z * beta).array() + b0;
    for (Eigen::Index i = 0; i < n; ++i) {
      residual(i) = design.c(i) * (apply_link(link, theta(i)) - design.y(i));
    }
    Eigen::VectorXd grad = inv_n * (z.transpose() * residual) + cfg.l2 * beta;
    const double grad0 = inv_n * residual.sum();
    grad_norm = std::sqrt(grad.squaredNorm() + grad0 * grad0);
    if (grad_norm <= cfg.grad_tol) {
      converged = true;
      break;
    }
    beta -= cfg.learning_rate * grad;
    b0 -= cfg.learning_rate * grad0;
  }

  model.weights.assign(static_cast<std::size_t>(p), 0.0);
  double intercept = b0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double wj = beta(j) / scale(j);
    model.weights[static_cast<std::size_t>(j)] = wj;
    intercept -= wj * mean(j);
  }
  model.intercept = intercept;
  model.diagnostics.solver = "gradient-descent";
  model.diagnostics.converged = converged;
  model.diagnostics.iterations = iter;
  model.diagnostics.gradient_norm = grad_norm;
}

}  // namespace

void LinearTrainConfig::validate() const {
  if (!(learning_rate > 0)) throw InvalidArgument("linear config: learning_rate must be > 0");
  if (max_iters == 0) throw InvalidArgument("linear config: max_iters must be > 0");
  if (!(grad_tol > 0)) throw InvalidArgument("linear config: grad_tol must be > 0");
  if (!(l2 >= 0)) throw InvalidArgument("linear config: l2 must be >= 0");
  if (instance_weights && !(instance_weights->c0 > 0 && instance_weights->c1 > 0)) {
    throw InvalidArgument("linear config: instance weights must be > 0");
  }
}

double LinearModel::linear_predictor(std::span<const double> x) const {
  std::vector<double> buf(encoder.output_arity());
  encoder.encode(x, buf);
  if (buf.size() != weights.size()) {
    throw InvalidArgument("linear model: encoded arity does not match weight count");
  }
  double theta = intercept;
  for (std::size_t j = 0; j < buf.size(); ++j) theta += weights[j] * buf[j];
  return theta;
}

double LinearModel::estimate(std::span<const double> x) const {
  return apply_link(link, linear_predictor(x));
}

double LinearModel::score(std::span<const double> x) const {
  const double s = estimate(x);
  return link == Link::Identity ? std::clamp(s, 0.0, 1.0) : s;
}

LinearModel fit_linear_regression(const Dataset& d, const LinearTrainConfig& cfg) {
  cfg.validate();
  require_both_classes(d, "fit_linear_regression");
  LinearModel model;
  model.link = Link::Identity;
  model.encoder = FeatureEncoder(d.feature_info());
  const Design design = make_design(d, model.encoder, cfg);
  const Eigen::Index n = design.x.rows();
  const Eigen::Index p = design.x.cols();

  if (cfg.solver == LinearSolver::ClosedForm) {
    if (n > p) {
      Eigen::MatrixXd a(n, p + 1);
      a.col(0).setOnes();
      a.rightCols(p) = design.x;
      const Eigen::VectorXd sw = design.c.cwiseSqrt();
      const Eigen::MatrixXd aw = sw.asDiagonal() * a;
      const Eigen::VectorXd yw = sw.cwiseProduct(design.y);
      if (cfg.l2 == 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aw);
        if (qr.rank() == p + 1) {
          const Eigen::VectorXd coef = qr.solve(yw);
          model.intercept = coef(0);
          model.weights.assign(coef.data() + 1, coef.data() + coef.size());
          model.diagnostics = {"closed-form", true, 0, 0.0, false};
          return model;
        }
      } else {
        Eigen::MatrixXd gram = aw.transpose() * aw;
        gram.diagonal().tail(p).array() += cfg.l2 * static_cast<double>(n);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
          const Eigen::VectorXd coef = ldlt.solve(aw.transpose() * yw);
          model.intercept = coef(0);
          model.weights.assign(coef.data() + 1, coef.data() + coef.size());
          model.diagnostics = {"closed-form", true, 0, 0.0, false};
          return model;
        }
      }
    }
    gradient_descent(design, Link::Identity, cfg, model);
    model.diagnostics.singular_fallback = true;
    return model;
  }
  gradient_descent(design, Link::Identity, cfg, model);
  return model;
}

LinearModel fit_logistic_regression(const Dataset& d, const LinearTrainConfig& cfg) {
  cfg.validate();
  require_both_classes(d, "fit_logistic_regression");
  LinearModel model;
  model.link = Link::Logistic;
  model.encoder = FeatureEncoder(d.feature_info());
  gradient_descent(make_design(d, model.encoder, cfg), Link::Logistic, cfg, model);
  return model;
}

double threshold_from_imbalance(ImbalanceRatio mu) {
  if (!(mu.mu > 0 && mu.mu < 1)) {
    throw InvalidArgument("threshold_from_imbalance: mu must lie strictly between 0 and 1");
  }
  return mu.mu;
}

InstanceWeights cost_weights(ImbalanceRatio mu) {
  if (!(mu.mu > 0 && mu.mu < 1)) {
    throw InvalidArgument("cost_weights: mu must lie strictly between 0 and 1");
  }
  return {1.0 / (2.0 * mu.mu), 1.0 / (2.0 * (1.0 - mu.mu))};
}

Label classify(const LinearModel& model, std::span<const double> x) {
  return model.score(x) >= model.threshold ? 1 : 0;
}

std::string_view to_string(Link link) {
  return link == Link::Logistic ? "logistic" : "identity";
}

}  // namespace ardt
