#ifndef MAZELAB_ENCODING_HPP
#define MAZELAB_ENCODING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mazelab/grid.hpp"

namespace mazelab {

// Fixed token <-> index map. The standard vocabulary covers every word any
// generated instance (maze or combat) can emit, so encoding is closed.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> tokens);

  // Item words, colors, goal names, egocentric coordinate words in
  // [-9, +9], instruction words, combat hp/cd words.
  static const Vocabulary& standard();

  int id(const std::string& token) const;  // throws EncodingError on unknown
  std::optional<int> try_id(const std::string& token) const;
  const std::string& token(int id) const { return tokens_[id]; }
  int size() const { return static_cast<int>(tokens_.size()); }

  // FNV-1a over the token list; checkpoints refuse to load under a
  // different vocabulary.
  std::uint64_t hash() const { return hash_; }

  void save(const std::string& path) const;  // one token per line
  static Vocabulary load(const std::string& path);

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, int> index_;
  std::uint64_t hash_ = 0;
};

// One item sentence: an egocentric location (absent for Info items) plus a
// bag of vocabulary indices.
struct ObsEntry {
  std::optional<Position> loc;
  std::vector<int> tokens;
  bool operator==(const ObsEntry&) const = default;
};

struct Observation {
  std::vector<ObsEntry> entries;
  bool operator==(const Observation&) const = default;
};

// Egocentric view of the world: one entry per located item with
// offset = item position - agent position, then one entry per InfoItem.
// Rebuilt from scratch after every action.
Observation observe(const GameState& state, const Vocabulary& vocab);

// Feature layout caps: the location slots cover the largest grid, infos get
// k_max ordered slots.
struct GridCaps {
  int w_max = 10;
  int h_max = 10;
  int k_max = 8;
};

using FeatureVector = std::vector<double>;
// Sorted (index, count) pairs; same coordinates as the dense vector.
using SparseFeatures = std::vector<std::pair<int, double>>;

// Bag-of-words per location slot (location words excluded), concatenated
// over all slots and info slots: length (w_max*h_max + k_max) * vocab size.
// Offsets are folded modulo the cap, which is injective within any single
// observation window. Duplicate tokens accumulate counts. Throws
// EncodingError for offsets outside +/-(w_max-1, h_max-1) or more than
// k_max info entries.
FeatureVector to_feature_vector(const Observation& obs, const Vocabulary& vocab,
                                const GridCaps& caps);
SparseFeatures to_sparse_features(const Observation& obs, const Vocabulary& vocab,
                                  const GridCaps& caps);

// Memory-network input: one bag per entry, with the location rendered as
// coordinate words ("x=3", "y=-2"); info entries carry no location words.
std::vector<std::vector<int>> to_memory_items(const Observation& obs,
                                              const Vocabulary& vocab);

// One frame of a bAbI-style story.
struct EpisodeStep {
  Observation obs;
  std::optional<Action> action;
  std::optional<double> reward;
};

// Numbered sentences, one per item ("Block at [-1,+4]."), with action/reward
// annotation lines between frames. parse(serialize(x)) recovers every item's
// location and token bag exactly.
std::string babi_serialize(const std::vector<EpisodeStep>& steps,
                           const Vocabulary& vocab);
std::vector<EpisodeStep> babi_parse(const std::string& text,
                                    const Vocabulary& vocab);

}  // namespace mazelab

#endif  // MAZELAB_ENCODING_HPP
