#include "continuo/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "continuo/errors.hpp"
#include "continuo/vecops.hpp"
#include "json.hpp"

namespace continuo {

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "poly" || name == "polynomial") return KernelKind::polynomial;
  if (name == "rbf") return KernelKind::rbf;
  if (name == "sigmoid") return KernelKind::sigmoid;
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "poly";
    case KernelKind::rbf: return "rbf";
    case KernelKind::sigmoid: return "sigmoid";
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel_eval: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  if (spec.kind == KernelKind::linear) return vecops::dot(x, y);
  if (!spec.gamma)
    throw std::invalid_argument("kernel_eval: gamma unresolved; call resolve_gamma first");
  const double gamma = *spec.gamma;
  switch (spec.kind) {
    case KernelKind::polynomial:
      return std::pow(gamma * vecops::dot(x, y) + spec.coef0, spec.degree);
    case KernelKind::rbf:
      return std::exp(-gamma * vecops::sqdist(x, y));
    case KernelKind::sigmoid:
      return std::tanh(gamma * vecops::dot(x, y) + spec.coef0);
    case KernelKind::linear: break;
  }
  return 0.0;
}

KernelSpec resolve_gamma(const KernelSpec& spec, const MatrixView& X) {
  KernelSpec resolved = spec;
  if (resolved.gamma) return resolved;
  const std::size_t n = X.rows * X.cols;
  double gamma = 1.0;
  if (n > 0 && X.cols > 0) {
    const std::span<const double> all(X.data, n);
    const double mean = vecops::sum(all) / static_cast<double>(n);
    const double var = vecops::sumsq(all) / static_cast<double>(n) - mean * mean;
    const double denom = static_cast<double>(X.cols) * var;
    if (denom > 0.0) gamma = 1.0 / denom;
  }
  resolved.gamma = gamma;
  return resolved;
}

double BinaryModel::decision(std::span<const double> x) const {
  double value = bias;
  for (std::size_t i = 0; i < support.size(); ++i)
    value += coef[i] * kernel_eval(kernel, support[i], x);
  return value;
}

namespace {

constexpr double kTau = 1e-12;

/// Dual coordinate ascent on the soft-margin SVM with deterministic
/// max-violating-pair selection and a full Gram cache. Gradient G of
/// f(a) = a'Qa/2 - e'a is maintained incrementally; Q_ij = y_i y_j K_ij.
class SmoSolver {
 public:
  SmoSolver(const MatrixView& X, std::span<const int> y, const KernelSpec& spec,
            double C, const TrainOptions& options)
      : X_(X), y_(y.begin(), y.end()), spec_(spec), C_(C), options_(options),
        n_(X.rows) {
    gram_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double k = kernel_eval(spec_, X_.row(i), X_.row(j));
        gram_[i * n_ + j] = k;
        gram_[j * n_ + i] = k;
      }
    alpha_.assign(n_, 0.0);
    grad_.assign(n_, -1.0);
  }

  void solve() {
    while (true) {
      auto [i, j, gap] = select_pair();
      gap_ = gap;
      if (gap <= options_.tol) break;
      if (iter_ >= options_.max_iter)
        throw SolverError("svm: no convergence after " + std::to_string(iter_) +
                          " updates (gap " + std::to_string(gap) + ", objective " +
                          std::to_string(objective()) + ")");
      if (!update(i, j)) {
        // Indefinite-kernel stall: try lesser violators before giving up.
        bool progressed = false;
        for (std::size_t t = 0; t < n_ && !progressed; ++t)
          if (t != static_cast<std::size_t>(i) && in_low(t)) progressed = update(i, t);
        if (!progressed) break;
      }
      ++iter_;
      if (options_.record_objective) trace_.push_back(objective());
    }
  }

  double objective() const {
    // minimized dual a'Qa/2 - sum(a) = sum a_i (G_i - 1) / 2
    double obj = 0.0;
    for (std::size_t i = 0; i < n_; ++i) obj += alpha_[i] * (grad_[i] - 1.0);
    return obj / 2.0;
  }

  double bias() const {
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    long nr_free = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double yg = y_[i] * grad_[i];
      if (alpha_[i] >= C_) {
        if (y_[i] == -1) upper = std::min(upper, yg);
        else lower = std::max(lower, yg);
      } else if (alpha_[i] <= 0.0) {
        if (y_[i] == +1) upper = std::min(upper, yg);
        else lower = std::max(lower, yg);
      } else {
        ++nr_free;
        sum_free += yg;
      }
    }
    const double rho = nr_free > 0 ? sum_free / nr_free : (upper + lower) / 2.0;
    return -rho;
  }

  std::span<const double> alpha() const { return alpha_; }
  long iterations() const { return iter_; }
  double gap() const { return gap_; }
  std::vector<double> take_trace() { return std::move(trace_); }

 private:
  bool in_up(std::size_t t) const {
    return (y_[t] == +1 && alpha_[t] < C_) || (y_[t] == -1 && alpha_[t] > 0.0);
  }
  bool in_low(std::size_t t) const {
    return (y_[t] == -1 && alpha_[t] < C_) || (y_[t] == +1 && alpha_[t] > 0.0);
  }

  struct Selected {
    int i = -1, j = -1;
    double gap = 0.0;
  };

  Selected select_pair() const {
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    Selected s;
    for (std::size_t t = 0; t < n_; ++t) {
      const double v = -y_[t] * grad_[t];
      if (in_up(t) && v > up_max) {
        up_max = v;
        s.i = static_cast<int>(t);
      }
      if (in_low(t) && v < low_min) {
        low_min = v;
        s.j = static_cast<int>(t);
      }
    }
    s.gap = (s.i < 0 || s.j < 0) ? 0.0 : up_max - low_min;
    return s;
  }

  double q(std::size_t i, std::size_t j) const {
    return y_[i] * y_[j] * gram_[i * n_ + j];
  }

  bool update(std::size_t i, std::size_t j) {
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    // Curvature along the feasible direction is K_ii + K_jj - 2 K_ij for both
    // label cases: the y factors in Q cancel against the direction signs.
    double quad = gram_[i * n_ + i] + gram_[j * n_ + j] - 2.0 * gram_[i * n_ + j];
    if (quad <= 0.0) quad = kTau;
    if (y_[i] != y_[j]) {
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = alpha_[i] - alpha_[j];
      alpha_[i] += delta;
      alpha_[j] += delta;
      if (diff > 0.0) {
        if (alpha_[j] < 0.0) { alpha_[j] = 0.0; alpha_[i] = diff; }
      } else {
        if (alpha_[i] < 0.0) { alpha_[i] = 0.0; alpha_[j] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha_[i] > C_) { alpha_[i] = C_; alpha_[j] = C_ - diff; }
      } else {
        if (alpha_[j] > C_) { alpha_[j] = C_; alpha_[i] = C_ + diff; }
      }
    } else {
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = alpha_[i] + alpha_[j];
      alpha_[i] -= delta;
      alpha_[j] += delta;
      if (sum > C_) {
        if (alpha_[i] > C_) { alpha_[i] = C_; alpha_[j] = sum - C_; }
      } else {
        if (alpha_[j] < 0.0) { alpha_[j] = 0.0; alpha_[i] = sum; }
      }
      if (sum > C_) {
        if (alpha_[j] > C_) { alpha_[j] = C_; alpha_[i] = sum - C_; }
      } else {
        if (alpha_[i] < 0.0) { alpha_[i] = 0.0; alpha_[j] = sum; }
      }
    }
    const double d_i = alpha_[i] - old_i;
    const double d_j = alpha_[j] - old_j;
    if (d_i == 0.0 && d_j == 0.0) return false;
    for (std::size_t t = 0; t < n_; ++t) grad_[t] += q(t, i) * d_i + q(t, j) * d_j;
    return true;
  }

  MatrixView X_;
  std::vector<int> y_;
  KernelSpec spec_;
  double C_;
  TrainOptions options_;
  std::size_t n_;
  std::vector<double> gram_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<double> trace_;
  long iter_ = 0;
  double gap_ = 0.0;
};

std::vector<std::string> sorted_classes(std::span<const std::string> labels) {
  const std::set<std::string> distinct(labels.begin(), labels.end());
  return {distinct.begin(), distinct.end()};
}

}  // namespace

BinaryModel train_binary_svm(const MatrixView& X, std::span<const int> y,
                             const KernelSpec& spec, double C,
                             const TrainOptions& options) {
  if (X.rows != y.size())
    throw std::invalid_argument("train_binary_svm: rows and labels disagree");
  if (C <= 0.0) throw std::invalid_argument("train_binary_svm: C must be positive");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == +1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw std::invalid_argument("train_binary_svm: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument("train_binary_svm: both classes must be present");

  const KernelSpec resolved = resolve_gamma(spec, X);
  SmoSolver solver(X, y, resolved, C, options);
  solver.solve();

  BinaryModel model;
  model.kernel = resolved;
  model.C = C;
  model.iterations = solver.iterations();
  model.gap = solver.gap();
  model.objective = solver.objective();
  model.bias = solver.bias();
  model.objective_trace = solver.take_trace();
  const auto alpha = solver.alpha();
  for (std::size_t i = 0; i < X.rows; ++i) {
    if (alpha[i] > 0.0) {
      const auto row = X.row(i);
      model.support.emplace_back(row.begin(), row.end());
      model.coef.push_back(alpha[i] * y[i]);
    }
  }
  return model;
}

std::string ModelOvO::predict(std::span<const double> x) const {
  std::vector<int> votes(classes.size(), 0);
  for (std::size_t m = 0; m < models.size(); ++m) {
    const auto [a, b] = pairs[m];
    votes[models[m].decision(x) >= 0.0 ? a : b] += 1;
  }
  const std::size_t best =
      std::max_element(votes.begin(), votes.end()) - votes.begin();
  return classes[best];
}

std::string ModelOvR::predict(std::span<const double> x) const {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < models.size(); ++m) {
    const double value = models[m].decision(x);
    if (value > best_value) {
      best_value = value;
      best = m;
    }
  }
  return classes[best];
}

MulticlassModel train_multiclass(const MatrixView& X,
                                 std::span<const std::string> labels,
                                 const KernelSpec& spec, double C,
                                 MulticlassScheme scheme, const TrainOptions& options) {
  if (X.rows != labels.size())
    throw std::invalid_argument("train_multiclass: rows and labels disagree");
  const std::vector<std::string> classes = sorted_classes(labels);
  if (classes.size() < 2)
    throw std::invalid_argument("train_multiclass: need at least 2 classes");
  const KernelSpec resolved = resolve_gamma(spec, X);

  if (scheme == MulticlassScheme::ovr) {
    ModelOvR model;
    model.classes = classes;
    model.kernel = resolved;
    model.C = C;
    std::vector<int> y(X.rows);
    for (const std::string& cls : classes) {
      for (std::size_t r = 0; r < X.rows; ++r) y[r] = labels[r] == cls ? +1 : -1;
      model.models.push_back(train_binary_svm(X, y, resolved, C, options));
    }
    return model;
  }

  ModelOvO model;
  model.classes = classes;
  model.kernel = resolved;
  model.C = C;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t b = a + 1; b < classes.size(); ++b) {
      std::vector<double> rows;
      std::vector<int> y;
      for (std::size_t r = 0; r < X.rows; ++r) {
        if (labels[r] == classes[a] || labels[r] == classes[b]) {
          const auto row = X.row(r);
          rows.insert(rows.end(), row.begin(), row.end());
          y.push_back(labels[r] == classes[a] ? +1 : -1);
        }
      }
      const MatrixView pair_view{rows.data(), y.size(), X.cols};
      model.models.push_back(train_binary_svm(pair_view, y, resolved, C, options));
      model.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return model;
}

std::string predict(const MulticlassModel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

namespace {

using nlohmann::json;

json kernel_to_json(const KernelSpec& spec) {
  json j;
  j["kind"] = kernel_kind_name(spec.kind);
  j["degree"] = spec.degree;
  if (spec.gamma) j["gamma"] = *spec.gamma;
  else j["gamma"] = "scale";
  j["coef0"] = spec.coef0;
  return j;
}

KernelSpec kernel_from_json(const json& j) {
  KernelSpec spec;
  spec.kind = kernel_kind_from_name(j.at("kind"));
  spec.degree = j.at("degree");
  if (j.at("gamma").is_string()) spec.gamma = std::nullopt;
  else spec.gamma = j.at("gamma").get<double>();
  spec.coef0 = j.at("coef0");
  return spec;
}

json binary_to_json(const BinaryModel& m) {
  json j;
  j["kernel"] = kernel_to_json(m.kernel);
  j["C"] = m.C;
  j["support"] = m.support;
  j["coef"] = m.coef;
  j["bias"] = m.bias;
  return j;
}

BinaryModel binary_from_json(const json& j) {
  BinaryModel m;
  m.kernel = kernel_from_json(j.at("kernel"));
  m.C = j.at("C");
  m.support = j.at("support").get<std::vector<std::vector<double>>>();
  m.coef = j.at("coef").get<std::vector<double>>();
  m.bias = j.at("bias");
  return m;
}

}  // namespace

std::string serialize_model(const MulticlassModel& model) {
  json j;
  j["format"] = "continuo-svm";
  j["version"] = 1;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        j["scheme"] = std::is_same_v<T, ModelOvO> ? "ovo" : "ovr";
        j["classes"] = m.classes;
        j["kernel"] = kernel_to_json(m.kernel);
        j["C"] = m.C;
        json models = json::array();
        for (std::size_t i = 0; i < m.models.size(); ++i) {
          json entry = binary_to_json(m.models[i]);
          if constexpr (std::is_same_v<T, ModelOvO>)
            entry["pair"] = {m.pairs[i].first, m.pairs[i].second};
          models.push_back(std::move(entry));
        }
        j["models"] = std::move(models);
      },
      model);
  return j.dump(2);
}

MulticlassModel deserialize_model(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  if (j.value("format", "") != "continuo-svm" || j.value("version", 0) != 1)
    throw ParseError("model: not a continuo-svm version 1 file");
  const std::string scheme = j.at("scheme");
  if (scheme == "ovo") {
    ModelOvO m;
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.kernel = kernel_from_json(j.at("kernel"));
    m.C = j.at("C");
    for (const json& entry : j.at("models")) {
      m.models.push_back(binary_from_json(entry));
      m.pairs.emplace_back(entry.at("pair")[0].get<int>(), entry.at("pair")[1].get<int>());
    }
    return m;
  }
  if (scheme == "ovr") {
    ModelOvR m;
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.kernel = kernel_from_json(j.at("kernel"));
    m.C = j.at("C");
    for (const json& entry : j.at("models")) m.models.push_back(binary_from_json(entry));
    return m;
  }
  throw ParseError("model: unknown scheme '" + scheme + "'");
}

}  // namespace continuo
