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

#include "hilite/dpp.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hilite/error.h"
#include "json.hpp"

namespace hilite::dpp {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

void CheckSquare(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + " must be square");
  }
}

void CheckIndices(std::span<const int> idx, Eigen::Index n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : idx) {
    if (i < 0 || i >= n) {
      throw std::invalid_argument("subset index " + std::to_string(i) +
                                  " outside ground set of size " +
                                  std::to_string(n));
    }
    if (seen[i]) {
      throw std::invalid_argument("subset index " + std::to_string(i) +
                                  " repeated");
    }
    seen[i] = true;
  }
}

void CheckInstance(const Instance& inst, int feature_dim) {
  const auto n = inst.features.rows();
  if (inst.features.cols() != feature_dim) {
    throw ConfigError("instance " + inst.id + " has feature width " +
                      std::to_string(inst.features.cols()) + ", model has " +
                      std::to_string(feature_dim));
  }
  if (inst.similarity.rows() != n || inst.similarity.cols() != n) {
    throw std::invalid_argument("instance " + inst.id +
                                ": similarity shape does not match features");
  }
  CheckIndices(inst.selected, n);
}

}  // namespace

double LogDet(const Eigen::MatrixXd& m) {
  CheckSquare(m, "LogDet argument");
  if (m.size() == 0) return 0.0;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  if (ldlt.info() != Eigen::Success) return kNegInf;
  const Eigen::VectorXd d = ldlt.vectorD();
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) >= kPivotFloor)) return kNegInf;
    s += std::log(d(i));
  }
  return s;
}

Eigen::MatrixXd Submatrix(const Eigen::MatrixXd& m, std::span<const int> idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) out(a, b) = m(idx[a], idx[b]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quality model

QualityModel::QualityModel(Eigen::VectorXd theta, int pyramid_dim)
    : theta_(std::move(theta)), pyramid_dim_(pyramid_dim) {
  if (!theta_.allFinite()) throw ConfigError("model theta is not finite");
  if (pyramid_dim_ < 0 || pyramid_dim_ > theta_.size()) {
    throw ConfigError("pyramid_dim " + std::to_string(pyramid_dim_) +
                      " does not fit feature_dim " +
                      std::to_string(theta_.size()));
  }
}

QualityModel QualityModel::Zero(int feature_dim, int pyramid_dim) {
  return QualityModel(Eigen::VectorXd::Zero(feature_dim), pyramid_dim);
}

Eigen::VectorXd QualityModel::Quality(const Eigen::MatrixXd& features) const {
  if (features.cols() != theta_.size()) {
    throw ConfigError("feature width " + std::to_string(features.cols()) +
                      " does not match model feature_dim " +
                      std::to_string(theta_.size()));
  }
  return (0.5 * (features * theta_).array()).exp().matrix();
}

std::string QualityModel::ToJson() const {
  ordered_json j;
  j["theta"] = std::vector<double>(theta_.data(), theta_.data() + theta_.size());
  j["feature_dim"] = feature_dim();
  j["pyramid_dim"] = pyramid_dim_;
  j["format_version"] = kFormatVersion;
  return j.dump(2);
}

QualityModel QualityModel::FromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: malformed JSON (") + e.what() + ")");
  }
  for (const char* f : {"theta", "feature_dim", "pyramid_dim",
                        "format_version"}) {
    if (!j.is_object() || !j.contains(f)) {
      throw ParseError(std::string("model: missing required field \"") + f +
                       "\"");
    }
  }
  std::vector<double> theta;
  int feature_dim = 0, pyramid_dim = 0, version = 0;
  try {
    theta = j["theta"].get<std::vector<double>>();
    feature_dim = j["feature_dim"].get<int>();
    pyramid_dim = j["pyramid_dim"].get<int>();
    version = j["format_version"].get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: bad field type (") + e.what() + ")");
  }
  if (version != kFormatVersion) {
    throw ConfigError("model: unsupported format_version " +
                      std::to_string(version));
  }
  if (static_cast<int>(theta.size()) != feature_dim) {
    throw ConfigError("model: theta has " + std::to_string(theta.size()) +
                      " entries, feature_dim says " +
                      std::to_string(feature_dim));
  }
  return QualityModel(
      Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                        static_cast<Eigen::Index>(theta.size())),
      pyramid_dim);
}

void QualityModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << ToJson() << "\n";
  if (!out) throw Error("error writing model file " + path.string());
}

QualityModel QualityModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return FromJson(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Ensemble and probabilities

Eigen::MatrixXd BuildEnsemble(const Eigen::VectorXd& q,
                              const Eigen::MatrixXd& s) {
  CheckSquare(s, "similarity matrix");
  if (q.size() != s.rows()) {
    throw std::invalid_argument("quality vector has " + std::to_string(q.size()) +
                                " entries, similarity is " +
                                std::to_string(s.rows()) + "x" +
                                std::to_string(s.cols()));
  }
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!(q(i) > 0.0) || !std::isfinite(q(i))) {
      throw std::invalid_argument("quality scores must be positive and finite");
    }
  }
  const auto n = q.size();
  Eigen::MatrixXd l(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      l(i, j) = q(i) * s(i, j) * q(j);
      l(j, i) = l(i, j);
    }
  }
  return l;
}

double SubsetLogProb(const Eigen::MatrixXd& l, std::span<const int> y) {
  CheckSquare(l, "L");
  CheckIndices(y, l.rows());
  const double num = LogDet(Submatrix(l, y));
  if (num == kNegInf) return kNegInf;
  const Eigen::MatrixXd shifted =
      l + Eigen::MatrixXd::Identity(l.rows(), l.cols());
  const double den = LogDet(shifted);
  if (den == kNegInf) {
    throw NumericalError("L + I is not positive definite; L is not PSD");
  }
  return num - den;
}

Eigen::MatrixXd MarginalKernel(const Eigen::MatrixXd& l) {
  CheckSquare(l, "L");
  const auto n = l.rows();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(l + eye);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("L + I is not positive definite; L is not PSD");
  }
  return eye - llt.solve(eye);
}

Eigen::MatrixXd ProjectPsd(const Eigen::MatrixXd& m) {
  CheckSquare(m, "ProjectPsd argument");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigendecomposition did not converge for a " << m.rows() << "x"
       << m.cols() << " matrix (frobenius norm " << sym.norm()
       << ", max |entry| " << sym.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::MatrixXd out = v * clipped.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

// ---------------------------------------------------------------------------
// Likelihood and training

Evaluation Evaluate(const QualityModel& model,
                    std::span<const Instance> instances,
                    EvalOptions options) {
  Evaluation ev;
  ev.gradient = Eigen::VectorXd::Zero(model.feature_dim());
  for (const auto& inst : instances) {
    CheckInstance(inst, model.feature_dim());
    Eigen::MatrixXd l =
        BuildEnsemble(model.Quality(inst.features), inst.similarity);
    if (options.project) l = ProjectPsd(l);
    const double lp = SubsetLogProb(l, inst.selected);
    if (lp == kNegInf) {
      ++ev.skipped;
      continue;
    }
    ev.log_likelihood += lp;
    const Eigen::VectorXd k_diag = MarginalKernel(l).diagonal();
    for (int i : inst.selected) ev.gradient += inst.features.row(i).transpose();
    ev.gradient -= inst.features.transpose() * k_diag;
  }
  return ev;
}

double LogLikelihood(const QualityModel& model,
                     std::span<const Instance> instances,
                     EvalOptions options) {
  return Evaluate(model, instances, options).log_likelihood;
}

TrainResult Train(std::span<const Instance> instances,
                  const TrainConfig& config) {
  if (instances.empty()) throw Error("training needs at least one instance");
  if (!(config.learning_rate >= 0.0) || config.max_iters < 0 ||
      !(config.tol >= 0.0)) {
    throw ConfigError(
        "training needs learning_rate >= 0, max_iters >= 0 and tol >= 0");
  }
  const int dim = static_cast<int>(instances.front().features.cols());
  TrainResult result;
  result.model = QualityModel::Zero(dim, config.pyramid_dim);

  const EvalOptions opts{.project = true};
  int decreases = 0;
  for (;;) {
    const Evaluation ev = Evaluate(result.model, instances, opts);
    if (ev.skipped == static_cast<int>(instances.size())) {
      throw Error("every training instance has a singular ground-truth "
                  "submatrix");
    }
    if (!std::isfinite(ev.log_likelihood) || !ev.gradient.allFinite()) {
      throw NumericalError("training diverged at iteration " +
                           std::to_string(result.iterations) +
                           ": non-finite likelihood or gradient");
    }
    if (!result.trace.empty() && ev.log_likelihood < result.trace.back()) {
      if (++decreases >= kMaxConsecutiveDecreases) {
        std::ostringstream os;
        os << "log-likelihood fell for " << decreases
           << " consecutive iterations (now " << ev.log_likelihood
           << " at iteration " << result.iterations
           << "); learning rate " << config.learning_rate
           << " is too large";
        throw NumericalError(os.str());
      }
    } else {
      decreases = 0;
    }
    result.trace.push_back(ev.log_likelihood);
    result.skipped = ev.skipped;
    result.grad_inf_norm =
        ev.gradient.size() == 0 ? 0.0 : ev.gradient.lpNorm<Eigen::Infinity>();
    if (result.grad_inf_norm < config.tol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= config.max_iters) break;
    result.model.mutable_theta() += config.learning_rate * ev.gradient;
    ++result.iterations;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Inference

MapResult MapSelect(const Eigen::MatrixXd& l, std::span<const int> word_counts,
                    int budget, MapOptions options) {
  CheckSquare(l, "L");
  if (budget <= 0) throw std::invalid_argument("word budget must be positive");
  const auto n = l.rows();
  if (static_cast<Eigen::Index>(word_counts.size()) != n) {
    throw std::invalid_argument("word_counts size does not match L");
  }
  for (int w : word_counts) {
    if (w < 0) throw std::invalid_argument("negative word count");
  }

  // Incremental Cholesky: row i of c holds L_Y^{-1/2}-projected coordinates
  // of item i, d2(i) the squared residual = det(L_{Y+i}) / det(L_Y).
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd d2 = l.diagonal();
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  MapResult result;
  int remaining = budget;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index best = -1;
    double best_gain = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (taken[j] || word_counts[j] > remaining) continue;
      if (!(d2(j) >= kPivotFloor)) continue;
      const double gain = std::log(d2(j));
      if (!options.fill_budget && !(gain > 0.0)) continue;
      if (best < 0 || gain > best_gain) {
        best = j;
        best_gain = gain;
      }
    }
    if (best < 0) break;

    taken[best] = true;
    result.selected.push_back(static_cast<int>(best));
    result.gains.push_back(best_gain);
    result.words += word_counts[best];
    remaining -= word_counts[best];

    const double d = std::sqrt(d2(best));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double e =
          (l(best, i) - c.row(best).head(k).dot(c.row(i).head(k))) / d;
      c(i, k) = e;
      d2(i) -= e * e;
    }
  }
  return result;
}

}  // namespace hilite::dpp
