#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phishrev/dataset.hpp"
#include "phishrev/matrix.hpp"
#include "phishrev/params.hpp"

namespace phishrev {

/// Kernel expansion f(x) = sum_i coef_i * K(sv_i, x) + bias, with coef_i =
/// alpha_i * y_i and y = +1 for phishing.
struct SvmModel {
  SvmKernel kernel = SvmKernel::rbf;
  double gamma = 0.0;
  Matrix support_vectors;
  std::vector<double> coefficients;
  double bias = 0.0;

  double decision(std::span<const double> x) const;
  /// f(x) > 0 -> phishing; ties go to legitimate.
  Label predict(std::span<const double> x) const;
};

struct SmoOptions {
  double tolerance = 1e-3;
  /// One epoch is n working-pair updates.
  std::size_t max_epochs = 10000;
  std::size_t cache_bytes = std::size_t{256} << 20;
};

struct SmoReport {
  std::size_t iterations = 0;
  double final_violation = 0.0;
  bool converged = false;
};

double kernel_value(SvmKernel kernel, double gamma, std::span<const double> a, std::span<const double> b);

/// 1 / (n_features * variance of every entry of X).
double scale_gamma(const Matrix& x);
double resolve_gamma(const SvmParams& params, const Matrix& x);

SvmModel fit_svm(const Matrix& x, std::span<const Label> y, const SvmParams& params,
                 const SmoOptions& options = {}, SmoReport* report = nullptr);

}  // namespace phishrev
