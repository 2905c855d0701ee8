// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Determinantal point process over a ground set of segments.
//
//   L_ij   = q_i S_ij q_j,     q_i = exp(theta . f_i / 2)
//   P(Y)   = det(L_Y) / det(L + I)
//   K      = I - (L + I)^-1    (marginal kernel)
//
// All determinants are taken in the log domain through a pivoted LDL^T
// factorization; a pivot below kPivotFloor counts as singular.

#ifndef HILITE_DPP_H_
#define HILITE_DPP_H_

#include <Eigen/Core>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hilite::dpp {

inline constexpr double kPivotFloor = 1e-12;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log det(M) for symmetric M; kNegInf when M is singular or indefinite.
// The empty matrix has log det 0.
double LogDet(const Eigen::MatrixXd& m);

Eigen::MatrixXd Submatrix(const Eigen::MatrixXd& m, std::span<const int> idx);

class QualityModel {
 public:
  QualityModel() = default;
  QualityModel(Eigen::VectorXd theta, int pyramid_dim);
  // theta = 0 of the given width.
  static QualityModel Zero(int feature_dim, int pyramid_dim);

  const Eigen::VectorXd& theta() const { return theta_; }
  Eigen::VectorXd& mutable_theta() { return theta_; }
  int feature_dim() const { return static_cast<int>(theta_.size()); }
  int pyramid_dim() const { return pyramid_dim_; }

  // q for each feature row. Throws ConfigError on a width mismatch.
  Eigen::VectorXd Quality(const Eigen::MatrixXd& features) const;

  std::string ToJson() const;
  // Throws ParseError or ConfigError on a malformed model.
  static QualityModel FromJson(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static QualityModel Load(const std::filesystem::path& path);

 private:
  Eigen::VectorXd theta_;
  int pyramid_dim_ = 0;
};

// L = diag(q) S diag(q). Throws std::invalid_argument on shape mismatch or a
// non-positive q.
Eigen::MatrixXd BuildEnsemble(const Eigen::VectorXd& q,
                              const Eigen::MatrixXd& s);

// log det(L_Y) - log det(L + I), or kNegInf when L_Y is singular.
double SubsetLogProb(const Eigen::MatrixXd& l, std::span<const int> y);

// Marginal kernel I - (L + I)^-1.
Eigen::MatrixXd MarginalKernel(const Eigen::MatrixXd& l);

// Symmetrizes, then clips negative eigenvalues to zero. Throws
// NumericalError if the eigensolver fails.
Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& m);

struct Instance {
  std::string id;
  Eigen::MatrixXd features;    // n x feature_dim
  Eigen::MatrixXd similarity;  // n x n
  std::vector<int> selected;   // ground-truth indices
};

struct EvalOptions {
  // Project each L onto the PSD cone before evaluating.
  bool project = false;
};

struct Evaluation {
  double log_likelihood = 0.0;  // sum over non-singular instances
  Eigen::VectorXd gradient;
  int skipped = 0;  // instances whose L_Y was singular
};

double LogLikelihood(const QualityModel& model,
                     std::span<const Instance> instances,
                     EvalOptions options = {});

// Value and gradient in one pass. Singular instances add nothing to either
// and are counted in `skipped`.
Evaluation Evaluate(const QualityModel& model,
                    std::span<const Instance> instances,
                    EvalOptions options = {});

struct TrainConfig {
  double learning_rate = 0.05;
  int max_iters = 200;
  double tol = 1e-4;
  int pyramid_dim = 0;
};

struct TrainResult {
  QualityModel model;
  std::vector<double> trace;  // log-likelihood at each visited theta
  int iterations = 0;         // gradient steps taken
  bool converged = false;
  double grad_inf_norm = 0.0;
  int skipped = 0;  // singular instances at the final theta
};

inline constexpr int kMaxConsecutiveDecreases = 10;

// Fixed-step gradient ascent from theta = 0 with per-instance PSD
// projection. Throws hilite::Error without usable instances and
// NumericalError when the likelihood falls for kMaxConsecutiveDecreases
// iterations in a row or theta stops being finite.
TrainResult Train(std::span<const Instance> instances,
                  const TrainConfig& config);

struct MapResult {
  std::vector<int> selected;  // in selection order
  std::vector<double> gains;  // log-det gain of each pick
  int words = 0;
};

struct MapOptions {
  // Keep adding the best non-singular item while anything fits, even at a
  // negative gain. A trained model whose qualities are all below one would
  // otherwise select nothing.
  bool fill_budget = false;
};

// Greedy MAP under a word budget. Each step adds the item with the largest
// gain log det(L_{Y+j}) - log det(L_Y) among items that still fit and have
// positive gain; ties go to the lower index, so callers pass items in
// document order. Throws std::invalid_argument for budget <= 0.
MapResult MapSelect(const Eigen::MatrixXd& l, std::span<const int> word_counts,
                    int budget, MapOptions options = {});

}  // namespace hilite::dpp

#endif  // HILITE_DPP_H_
