#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "armac/solvers/policy.h"
#include "armac/util/rng.h"

namespace armac {

enum class RegressorKind { kTabularMean, kFeedforward };

struct RegressorSpec {
  RegressorKind kind = RegressorKind::kTabularMean;
  int input_width = 0;
  int output_width = 0;
  std::vector<int> hidden = {64, 64};  // pre-activation widths
  // Adam settings (Appendix-C-style defaults).
  double step_size = 5e-5;
  double beta1 = 0.0;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

// One supervised example. `target` and `mask` span the full output width;
// only masked entries contribute to losses and gradients.
struct Example {
  std::vector<double> features;
  std::vector<double> target;
  std::vector<uint8_t> mask;
  double weight = 1.0;
};
using Batch = std::vector<Example>;

struct StepStats {
  double loss = 0.0;
};

// Flat parameter vector with named layer slices.
struct Parameters {
  struct Slice {
    std::string name;
    size_t offset;
    size_t size;
  };
  std::vector<double> values;
  std::vector<Slice> slices;
  uint64_t version = 0;  // incremented once per gradient step
};

class Regressor {
 public:
  virtual ~Regressor() = default;

  virtual const RegressorSpec& spec() const = 0;

  // Raw output vector (regression semantics). Unseen tabular keys read as
  // zeros.
  virtual std::vector<double> predict(
      const std::vector<double>& features) const = 0;

  // Distribution over the masked entries, in ascending mask order. Nets
  // apply a masked softmax to their logits; the tabular backend
  // renormalizes its stored mean (uniform when nothing was observed).
  virtual ActionDistribution predict_distribution(
      const std::vector<double>& features,
      const std::vector<uint8_t>& mask) const = 0;

  // Masked empirical l2 step. The tabular backend applies the closed-form
  // running-mean update (the exact l2 minimizer); the net takes one Adam
  // step. Returns the pre-update loss.
  virtual StepStats train_regression(const Batch& batch) = 0;

  // Masked softmax cross-entropy step toward target distributions.
  virtual StepStats train_classification(const Batch& batch) = 0;

  virtual uint64_t version() const = 0;
  virtual std::unique_ptr<Regressor> clone() const = 0;
  virtual void save(std::ostream& out) const = 0;
};

std::unique_ptr<Regressor> make_regressor(const RegressorSpec& spec,
                                          uint64_t init_seed);
std::unique_ptr<Regressor> load_regressor(std::istream& in);

void save_regressor_file(const Regressor& reg, const std::string& path);
std::unique_ptr<Regressor> load_regressor_file(const std::string& path);

// Concrete feedforward net, exposed for the gradient checks: a pipeline of
// linear layers joined by concatenated (positive/negative) rectification,
// trained with Adam on manual backprop gradients.
class FeedforwardNet : public Regressor {
 public:
  FeedforwardNet(const RegressorSpec& spec, uint64_t init_seed);

  const RegressorSpec& spec() const override { return spec_; }
  std::vector<double> predict(
      const std::vector<double>& features) const override;
  ActionDistribution predict_distribution(
      const std::vector<double>& features,
      const std::vector<uint8_t>& mask) const override;
  StepStats train_regression(const Batch& batch) override;
  StepStats train_classification(const Batch& batch) override;
  uint64_t version() const override { return params_.version; }
  std::unique_ptr<Regressor> clone() const override;
  void save(std::ostream& out) const override;

  enum class Loss { kRegression, kClassification };
  // Mean loss over the batch; fills the full parameter gradient when
  // `grad` is non-null. Used by training and by the finite-difference
  // oracle in the tests.
  double loss_and_grad(const Batch& batch, Loss kind,
                       std::vector<double>* grad) const;

  Parameters& mutable_parameters() { return params_; }
  const Parameters& parameters() const { return params_; }

 private:
  friend std::unique_ptr<Regressor> load_regressor(std::istream&);

  StepStats adam_step(const Batch& batch, Loss kind);
  std::vector<double> forward(const std::vector<double>& features,
                              std::vector<std::vector<double>>* acts) const;

  RegressorSpec spec_;
  Parameters params_;
  std::vector<double> adam_m_, adam_v_;
  uint64_t adam_steps_ = 0;
};

class TabularMeanRegressor : public Regressor {
 public:
  explicit TabularMeanRegressor(const RegressorSpec& spec) : spec_(spec) {}

  const RegressorSpec& spec() const override { return spec_; }
  std::vector<double> predict(
      const std::vector<double>& features) const override;
  ActionDistribution predict_distribution(
      const std::vector<double>& features,
      const std::vector<uint8_t>& mask) const override;
  StepStats train_regression(const Batch& batch) override;
  StepStats train_classification(const Batch& batch) override;
  uint64_t version() const override { return version_; }
  std::unique_ptr<Regressor> clone() const override;
  void save(std::ostream& out) const override;

  size_t num_keys() const { return table_.size(); }

 private:
  friend std::unique_ptr<Regressor> load_regressor(std::istream&);

  struct Cell {
    std::vector<double> mean;
    std::vector<double> count;  // weight sums
  };
  // Features are 0/1 bits; the packed bit pattern is the lookup key.
  static std::string key_of(const std::vector<double>& features);

  RegressorSpec spec_;
  std::map<std::string, Cell> table_;
  uint64_t version_ = 0;
};

}  // namespace armac
