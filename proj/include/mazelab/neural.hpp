#ifndef MAZELAB_NEURAL_HPP
#define MAZELAB_NEURAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mazelab/encoding.hpp"
#include "mazelab/rng.hpp"

namespace mazelab {

struct Tensor {
  std::vector<int> shape;
  std::vector<double> values;

  static Tensor zeros(std::vector<int> shape);
  static Tensor uniform(std::vector<int> shape, Rng& rng, double lo, double hi);

  int size() const { return static_cast<int>(values.size()); }
  double& at(int i) { return values[i]; }
  double at(int i) const { return values[i]; }
  // Row-major 2-D access.
  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * shape[1] + c]; }
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * shape[1] + c]; }

  bool operator==(const Tensor&) const = default;
};

// Named parameter set; also used for gradients and optimizer state.
struct ModelParams {
  std::map<std::string, Tensor> t;
  Tensor& operator[](const std::string& k) { return t.at(k); }
  const Tensor& operator[](const std::string& k) const { return t.at(k); }
  void zero();
  bool operator==(const ModelParams&) const = default;
};

struct PolicyOutput {
  std::vector<double> logits;
  std::vector<double> probs;  // softmax(logits), sums to 1
  double baseline = 0.0;
  // Forward traces consumed by backward().
  std::vector<double> hidden;                   // MLP tanh layer
  std::vector<std::vector<double>> hop_state;   // MemNN u_0..u_3
  std::vector<std::vector<double>> attention;   // MemNN, one row per hop
};

// Gradient seeds: dL/dlogits and dL/dbaseline. The callers build them from
// the policy-gradient objective; backward() only propagates.
struct OutputGrad {
  std::vector<double> dlogits;
  double dbaseline = 0.0;
};

// Action logits and baseline directly off the flattened bag-of-words
// features.
class LinearModel {
 public:
  LinearModel(int feat_dim, int n_actions, Rng& rng);

  PolicyOutput forward(const SparseFeatures& x) const;
  PolicyOutput forward(const FeatureVector& x) const;
  void backward(const SparseFeatures& x, const PolicyOutput& out,
                const OutputGrad& seed, ModelParams& grads) const;

  int feat_dim() const { return w_act.shape[1]; }
  int n_actions() const { return w_act.shape[0]; }
  std::vector<std::pair<std::string, Tensor*>> named_params();

  Tensor w_act, b_act, w_base, b_base;
};

// Two fully connected layers with a tanh in between; action and baseline
// heads share the hidden layer.
class MlpModel {
 public:
  MlpModel(int feat_dim, int n_actions, Rng& rng, int hidden = 50);

  PolicyOutput forward(const SparseFeatures& x) const;
  void backward(const SparseFeatures& x, const PolicyOutput& out,
                const OutputGrad& seed, ModelParams& grads) const;

  int feat_dim() const { return w1.shape[1]; }
  int n_actions() const { return w_act.shape[0]; }
  int hidden_dim() const { return w1.shape[0]; }
  std::vector<std::pair<std::string, Tensor*>> named_params();

  Tensor w1, b1, w_act, b_act, w_base, b_base;
};

// End-to-end memory network: items embedded as summed word vectors, three
// attention hops with tanh controller updates, adjacent-shared embeddings
// (read table of hop k is the value table of hop k-1). The query is a
// learned vector; these games pose no question string.
class MemnnModel {
 public:
  static constexpr int kHops = 3;

  MemnnModel(int vocab_size, int n_actions, Rng& rng, int dim = 50);

  PolicyOutput forward(const std::vector<std::vector<int>>& memories) const;
  void backward(const std::vector<std::vector<int>>& memories,
                const PolicyOutput& out, const OutputGrad& seed,
                ModelParams& grads) const;

  int vocab_size() const { return emb[0].shape[0]; }
  int dim() const { return emb[0].shape[1]; }
  int n_actions() const { return w_act.shape[0]; }
  std::vector<std::pair<std::string, Tensor*>> named_params();

  Tensor emb[kHops + 1];  // emb[k] embeds hop k's keys; emb[k+1] its values
  Tensor h, query, w_act, b_act, w_base, b_base;
};

using AnyModel = std::variant<LinearModel, MlpModel, MemnnModel>;

enum class ModelKind { Linear, Mlp, Memnn };
const std::string& model_kind_name(ModelKind kind);
std::optional<ModelKind> model_kind_from_name(const std::string& name);
ModelKind kind_of(const AnyModel& model);

std::vector<std::pair<std::string, Tensor*>> named_params(AnyModel& model);
// Zero gradient/optimizer buffers shaped like the model's parameters.
ModelParams zeros_like(AnyModel& model);

// Draws an action index from the output distribution. Throws NumericError
// on non-finite probabilities.
int sample_action(const PolicyOutput& out, Rng& rng);
// Evaluation-mode action: argmax with lowest-index tie-break.
int greedy_action(const PolicyOutput& out);

struct RmsPropConfig {
  double lr = 1e-3;
  double decay = 0.97;
  double eps = 1e-6;
};
double default_learning_rate(ModelKind kind);

// s <- decay*s + (1-decay)*g^2 ; p <- p - lr*g/sqrt(s+eps).
// Throws NumericError (naming the tensor) on non-finite gradients.
void rmsprop_update(Tensor& param, const Tensor& grad, Tensor& state,
                    const RmsPropConfig& cfg, const std::string& name);
void rmsprop_step(AnyModel& model, const ModelParams& grads, ModelParams& state,
                  const RmsPropConfig& cfg);

// Versioned little-endian binary checkpoint: model parameters plus optional
// optimizer state and trainer bookkeeping. Loading verifies the format
// version and the vocabulary hash.
struct Checkpoint {
  std::string model_kind;
  std::uint64_t vocab_hash = 0;
  ModelParams params;
  ModelParams opt_state;
  std::vector<std::int64_t> trainer_meta;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path, std::uint64_t expected_vocab_hash);

// Rebuilds a model of the checkpointed kind and shapes, then installs the
// saved parameters.
AnyModel model_from_checkpoint(const Checkpoint& ckpt);

}  // namespace mazelab

#endif  // MAZELAB_NEURAL_HPP
