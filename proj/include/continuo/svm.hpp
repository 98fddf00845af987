#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace continuo {

/// Borrowed row-major view of a dense sample matrix.
struct MatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t i) const { return {data + i * cols, cols}; }
};

enum class KernelKind { linear, polynomial, rbf, sigmoid };

KernelKind kernel_kind_from_name(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  int degree = 3;
  /// nullopt means "scale": resolved to 1 / (dims * variance of the
  /// training values) at training time.
  std::optional<double> gamma;
  double coef0 = 0.0;
};

/// linear: <x,y>; polynomial: (g<x,y>+coef0)^degree; rbf: exp(-g|x-y|^2);
/// sigmoid: tanh(g<x,y>+coef0). Throws std::invalid_argument on dimension
/// mismatch or an unresolved gamma where one is needed.
double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// Replaces an unset gamma with 1 / (cols * var(X)); var over all entries,
/// falling back to 1.0 when degenerate.
KernelSpec resolve_gamma(const KernelSpec& spec, const MatrixView& X);

struct TrainOptions {
  double tol = 1e-3;
  long max_iter = 500000;  // pair updates before declaring non-convergence
  /// Records the dual objective after every accepted update (test hook).
  bool record_objective = false;
};

/// Soft-margin binary SVM in dual form. Only support vectors (alpha > 0)
/// are retained; coef[i] = alpha_i * y_i.
struct BinaryModel {
  KernelSpec kernel;  // gamma resolved
  double C = 1.0;
  std::vector<std::vector<double>> support;
  std::vector<double> coef;
  double bias = 0.0;

  long iterations = 0;
  double gap = 0.0;        // final max KKT violation
  double objective = 0.0;  // dual objective at the solution
  std::vector<double> objective_trace;

  double decision(std::span<const double> x) const;
};

/// SMO with deterministic max-violating-pair selection. Throws
/// std::invalid_argument when a class is missing or C <= 0, SolverError on
/// non-convergence (message carries iterations, gap, objective).
BinaryModel train_binary_svm(const MatrixView& X, std::span<const int> y,
                             const KernelSpec& spec, double C,
                             const TrainOptions& options = {});

/// One binary model per unordered class pair, trained on that pair's
/// samples; prediction by vote counting, ties broken by the earliest class
/// in the sorted class list.
struct ModelOvO {
  std::vector<std::string> classes;           // sorted
  std::vector<std::pair<int, int>> pairs;     // (a, b), a < b; +1 labels class a
  std::vector<BinaryModel> models;
  KernelSpec kernel;
  double C = 1.0;

  std::string predict(std::span<const double> x) const;
};

/// One binary model per class (class vs rest); prediction by the largest
/// decision value, ties broken by the earliest class.
struct ModelOvR {
  std::vector<std::string> classes;  // sorted
  std::vector<BinaryModel> models;   // one per class, +1 labels the class
  KernelSpec kernel;
  double C = 1.0;

  std::string predict(std::span<const double> x) const;
};

enum class MulticlassScheme { ovo, ovr };

using MulticlassModel = std::variant<ModelOvO, ModelOvR>;

MulticlassModel train_multiclass(const MatrixView& X,
                                 std::span<const std::string> labels,
                                 const KernelSpec& spec, double C,
                                 MulticlassScheme scheme = MulticlassScheme::ovo,
                                 const TrainOptions& options = {});

std::string predict(const MulticlassModel& model, std::span<const double> x);

/// Versioned JSON: kernel spec, support rows, coefficients, bias, classes.
std::string serialize_model(const MulticlassModel& model);
MulticlassModel deserialize_model(std::string_view json_text);

}  // namespace continuo
