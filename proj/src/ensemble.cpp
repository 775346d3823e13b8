#include "bolab/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bolab {

using json = nlohmann::json;

std::string Ensemble::to_json() const {
  json j;
  j["epsilon"] = eps;
  j["N"] = N;
  j["lambda"] = lambda;
  j["gamma"] = gamma;
  return j.dump(2);
}

Ensemble Ensemble::from_json(const std::string& text) {
  const json j = json::parse(text);
  Ensemble e;
  e.eps = j.at("epsilon").get<double>();
  e.N = j.at("N").get<int>();
  e.lambda = j.at("lambda").get<std::vector<double>>();
  e.gamma = j.at("gamma").get<std::vector<double>>();
  if (static_cast<int>(e.lambda.size()) != e.N || static_cast<int>(e.gamma.size()) != e.N)
    throw std::invalid_argument("Ensemble::from_json: inconsistent sizes");
  return e;
}

Ensemble quantize(const Profile& profile, const LambdaMap& map, double eps,
                  bool snap_to_M_over_N) {
  const double M = profile.M();
  if (!(eps > 0.0)) throw std::invalid_argument("quantize: eps must be positive");
  if (eps >= M) throw std::invalid_argument("quantize: eps too coarse, N = 0");
  if (snap_to_M_over_N) eps = M / std::round(M / eps);
  Ensemble e;
  e.eps = eps;
  e.N = static_cast<int>(std::floor(M / eps + 1e-12));
  e.lambda.resize(e.N);
  e.gamma.resize(e.N);
  for (int j = 0; j < e.N; ++j) {
    const double y = eps * (j + 0.5);
    e.lambda[j] = map.lambda_of_y_exact(y);
    e.gamma[j] = profile.phase_gamma(e.lambda[j]);
  }
  for (int j = 0; j + 1 < e.N; ++j)
    if (!(e.lambda[j] < e.lambda[j + 1]))
      throw std::runtime_error("quantize: lambda not strictly increasing");
  return e;
}

MatC build_A(const Ensemble& ens, double x, double t) {
  const int n = ens.N;
  MatC A(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      // lambda_j lambda_k > 0, so the square root is real
      const double num = 2.0 * ens.eps * std::sqrt(ens.lambda[j] * ens.lambda[k]);
      const double v = num / (ens.lambda[j] - ens.lambda[k]);
      A(j, k) = std::complex<double>(0.0, v);
      A(k, j) = std::complex<double>(0.0, -v);
    }
  }
  update_A_diagonal(ens, x, t, A);
  return A;
}

void update_A_diagonal(const Ensemble& ens, double x, double t, MatC& A) {
  for (int j = 0; j < ens.N; ++j)
    A(j, j) = -2.0 * ens.lambda[j] * (x + 2.0 * ens.lambda[j] * t + ens.gamma[j]);
}

MatC build_B(const Ensemble& ens, double t) {
  const int n = ens.N;
  MatC B(n, n);
  for (int j = 0; j < n; ++j) {
    B(j, j) = -2.0 * ens.lambda[j] * t - ens.gamma[j];
    for (int k = j + 1; k < n; ++k) {
      const double v = -ens.eps / (ens.lambda[j] - ens.lambda[k]);
      B(j, k) = std::complex<double>(0.0, v);
      B(k, j) = std::complex<double>(0.0, -v);
    }
  }
  return B;
}

MatC build_C(const Ensemble& ens, double t) {
  MatC C = build_B(ens, t);
  for (int j = 0; j < ens.N; ++j)
    C(j, j) += std::complex<double>(0.0, ens.eps / (-2.0 * ens.lambda[j]));
  return C;
}

VecD build_D_diag(const Ensemble& ens) {
  VecD d(ens.N);
  for (int j = 0; j < ens.N; ++j) d(j) = std::sqrt(-2.0 * ens.lambda[j]);
  return d;
}

}  // namespace bolab
