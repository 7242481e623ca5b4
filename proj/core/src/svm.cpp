#include "phishrev/svm.hpp"

#include <cmath>
#include <limits>
#include <list>
#include <stdexcept>
#include <unordered_map>

namespace phishrev {

double kernel_value(SvmKernel kernel, double gamma, std::span<const double> a,
                    std::span<const double> b) {
  double acc = 0.0;
  if (kernel == SvmKernel::linear) {
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
    return acc;
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc += d * d;
  }
  return std::exp(-gamma * acc);
}

double scale_gamma(const Matrix& x) {
  const auto& v = x.data();
  if (v.empty() || x.cols() == 0) throw std::invalid_argument("scale_gamma: empty matrix");
  double mean = 0.0;
  for (double e : v) mean += e;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double e : v) var += (e - mean) * (e - mean);
  var /= static_cast<double>(v.size());
  return var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
}

double resolve_gamma(const SvmParams& params, const Matrix& x) {
  if (params.kernel == SvmKernel::linear) return 0.0;
  return params.gamma == GammaMode::scale ? scale_gamma(x) : 1.0 / static_cast<double>(x.cols());
}

double SvmModel::decision(std::span<const double> x) const {
  double f = bias;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    f += coefficients[i] * kernel_value(kernel, gamma, support_vectors.row(i), x);
  return f;
}

Label SvmModel::predict(std::span<const double> x) const {
  return decision(x) > 0.0 ? Label::phishing : Label::legitimate;
}

namespace {

/// LRU cache of Q columns, Q_ij = y_i y_j K(x_i, x_j).
class KernelColumns {
 public:
  KernelColumns(const Matrix& x, std::span<const double> y, SvmKernel kernel, double gamma,
                std::size_t budget_bytes)
      : x_(x), y_(y), kernel_(kernel), gamma_(gamma) {
    const std::size_t col_bytes = std::max<std::size_t>(1, x.rows() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, budget_bytes / col_bytes);
    diag_.resize(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) diag_[i] = kernel_value(kernel, gamma, x.row(i), x.row(i));
  }

  double diag(std::size_t i) const { return diag_[i]; }

  const std::vector<double>& column(std::size_t i) {
    if (auto it = index_.find(i); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    std::vector<double> col(x_.rows());
    const auto xi = x_.row(i);
    for (std::size_t t = 0; t < x_.rows(); ++t)
      col[t] = y_[i] * y_[t] * kernel_value(kernel_, gamma_, xi, x_.row(t));
    lru_.emplace_front(i, std::move(col));
    index_[i] = lru_.begin();
    return lru_.front().second;
  }

 private:
  using Entry = std::pair<std::size_t, std::vector<double>>;
  const Matrix& x_;
  std::span<const double> y_;
  SvmKernel kernel_;
  double gamma_;
  std::size_t capacity_ = 2;
  std::vector<double> diag_;
  std::list<Entry> lru_;
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

constexpr double kTau = 1e-12;

}  // namespace

// Dual: min 0.5 a'Qa - e'a  s.t. y'a = 0, 0 <= a <= C.  Working-set selection
// uses second-order information (maximal violating pair on the first index,
// largest objective decrease on the second).
SvmModel fit_svm(const Matrix& x, std::span<const Label> labels, const SvmParams& params,
                 const SmoOptions& options, SmoReport* report) {
  const std::size_t n = x.rows();
  if (n == 0) throw std::invalid_argument("fit_svm: empty training set");
  if (labels.size() != n) throw std::invalid_argument("fit_svm: label count mismatch");

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] == Label::phishing ? 1.0 : -1.0;

  const double c = params.c;
  const double gamma = resolve_gamma(params, x);
  KernelColumns q(x, y, params.kernel, gamma, options.cache_bytes);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);

  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
  };

  const std::size_t max_iter = options.max_epochs * std::max<std::size_t>(n, 1);
  std::size_t iter = 0;
  double violation = 0.0;
  bool converged = false;

  while (iter < max_iter) {
    // First index: maximal -y_t * grad_t over I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t i_sel = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && (i_sel < 0 || -y[t] * grad[t] > gmax)) {
        gmax = -y[t] * grad[t];
        i_sel = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (i_sel < 0) {
      converged = true;
      break;
    }
    const auto i = static_cast<std::size_t>(i_sel);
    const auto& qi = q.column(i);

    double gmin = std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::ptrdiff_t j_sel = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      const double b = gmax - v;
      if (b > 0) {
        double a = q.diag(i) + q.diag(t) - 2.0 * y[i] * y[t] * qi[t];
        if (a <= 0) a = kTau;
        const double obj = -(b * b) / a;
        if (obj < best_obj) {
          best_obj = obj;
          j_sel = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    violation = gmax - gmin;
    if (violation < options.tolerance || j_sel < 0) {
      converged = true;
      break;
    }
    const auto j = static_cast<std::size_t>(j_sel);
    const auto& qj = q.column(j);
    // q.column(j) may evict i's column; re-fetch through the cache.
    const auto& qi2 = q.column(i);
    ++iter;

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = q.diag(i) + q.diag(j) + 2.0 * qi2[j];
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q.diag(i) + q.diag(j) - 2.0 * qi2[j];
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi2[t] * dai + qj[t] * daj;
  }

  // Offset from free vectors, midpoint of the feasible interval otherwise.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : (ub + lb) / 2.0;

  SvmModel model;
  model.kernel = params.kernel;
  model.gamma = gamma;
  model.bias = std::isfinite(rho) ? -rho : 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0) {
      model.support_vectors.append_row(x.row(t));
      model.coefficients.push_back(alpha[t] * y[t]);
    }
  }
  if (model.support_vectors.empty()) model.support_vectors = Matrix(0, x.cols());

  if (report) {
    report->iterations = iter;
    report->final_violation = violation;
    report->converged = converged;
  }
  return model;
}

}  // namespace phishrev
