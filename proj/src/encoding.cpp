#include "mazelab/encoding.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mazelab/error.hpp"
#include "mazelab/tasks.hpp"

namespace mazelab {

namespace {

std::string coord_token(char axis, int v) {
  return std::string(1, axis) + "=" + std::to_string(v);
}

std::vector<std::string> standard_tokens() {
  std::vector<std::string> t = {
      "block", "water", "switch", "door", "pushableblock",
      "corner", "goal", "breadcrumb", "visited"};
  for (int c = 0; c < kMaxColors; ++c) t.push_back(color_word(c));
  for (int g = 0; g < kMaxGoals; ++g) t.push_back(goal_word(g));
  for (int v = -9; v <= 9; ++v) t.push_back(coord_token('x', v));
  for (int v = -9; v <= 9; ++v) t.push_back(coord_token('y', v));
  for (const char* w : {"visit", "first", "second", "third", "avoid", "if",
                        "else", "goto", "toggle", "all", "same", "color",
                        "push", "onto", "left", "right", "top", "bottom"})
    t.push_back(w);
  // Combat words.
  t.push_back("self");
  t.push_back("ally");
  t.push_back("enemy");
  for (int u = 0; u < 4; ++u) t.push_back("unit" + std::to_string(u));
  for (int v = 0; v <= 11; ++v) t.push_back("hp=" + std::to_string(v));
  for (int v = 0; v <= 6; ++v) t.push_back("cd=" + std::to_string(v));
  return t;
}

std::uint64_t fnv1a(const std::vector<std::string>& tokens) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& t : tokens) {
    for (char c : t) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= '\n';
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i)
    index_.emplace(tokens_[i], i);
  hash_ = fnv1a(tokens_);
}

const Vocabulary& Vocabulary::standard() {
  static const Vocabulary vocab(standard_tokens());
  return vocab;
}

int Vocabulary::id(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end())
    throw EncodingError("out-of-vocabulary token: " + token);
  return it->second;
}

std::optional<int> Vocabulary::try_id(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write vocabulary file: " + path);
  for (const std::string& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read vocabulary file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) tokens.push_back(line);
  return Vocabulary(std::move(tokens));
}

namespace {

std::vector<std::string> item_words(const Item& it) {
  switch (it.kind) {
    case ItemKind::Block: return {"block"};
    case ItemKind::Water: return {"water"};
    case ItemKind::Switch: return {"switch", color_word(it.color)};
    case ItemKind::Door: return {"door", color_word(it.color)};
    case ItemKind::PushableBlock: return {"pushableblock"};
    case ItemKind::Corner: return {"corner"};
    case ItemKind::Goal: {
      std::vector<std::string> w = {"goal", goal_word(it.name)};
      if (it.visited) w.push_back("visited");
      return w;
    }
    case ItemKind::Breadcrumb: return {"breadcrumb"};
  }
  return {};
}

}  // namespace

Observation observe(const GameState& state, const Vocabulary& vocab) {
  Observation obs;
  for (int y = 0; y < state.height; ++y)
    for (int x = 0; x < state.width; ++x) {
      const Position p{x, y};
      for (const Item& it : state.at(p)) {
        ObsEntry entry;
        entry.loc = p - state.agent;
        for (const std::string& w : item_words(it))
          entry.tokens.push_back(vocab.id(w));
        obs.entries.push_back(std::move(entry));
      }
    }
  for (const InfoItem& info : state.infos) {
    ObsEntry entry;
    for (const std::string& w : info.tokens) entry.tokens.push_back(vocab.id(w));
    obs.entries.push_back(std::move(entry));
  }
  return obs;
}

namespace {

int wrap(int v, int cap) { return ((v % cap) + cap) % cap; }

template <typename EmitFn>
void feature_slots(const Observation& obs, const Vocabulary& vocab,
                   const GridCaps& caps, EmitFn emit) {
  const int n = vocab.size();
  int info_slot = 0;
  for (const ObsEntry& entry : obs.entries) {
    int base;
    if (entry.loc) {
      if (std::abs(entry.loc->x) > caps.w_max - 1 ||
          std::abs(entry.loc->y) > caps.h_max - 1)
        throw EncodingError("egocentric offset outside the feature window");
      base = (wrap(entry.loc->y, caps.h_max) * caps.w_max +
              wrap(entry.loc->x, caps.w_max)) * n;
    } else {
      if (info_slot >= caps.k_max)
        throw EncodingError("more info items than info slots");
      base = (caps.w_max * caps.h_max + info_slot) * n;
      ++info_slot;
    }
    for (int t : entry.tokens) {
      if (t < 0 || t >= n) throw EncodingError("token id outside vocabulary");
      emit(base + t);
    }
  }
}

}  // namespace

FeatureVector to_feature_vector(const Observation& obs, const Vocabulary& vocab,
                                const GridCaps& caps) {
  FeatureVector v(static_cast<std::size_t>(caps.w_max * caps.h_max + caps.k_max) *
                      vocab.size(),
                  0.0);
  feature_slots(obs, vocab, caps, [&](int idx) { v[idx] += 1.0; });
  return v;
}

SparseFeatures to_sparse_features(const Observation& obs, const Vocabulary& vocab,
                                  const GridCaps& caps) {
  std::map<int, double> acc;
  feature_slots(obs, vocab, caps, [&](int idx) { acc[idx] += 1.0; });
  return SparseFeatures(acc.begin(), acc.end());
}

std::vector<std::vector<int>> to_memory_items(const Observation& obs,
                                              const Vocabulary& vocab) {
  std::vector<std::vector<int>> items;
  items.reserve(obs.entries.size());
  for (const ObsEntry& entry : obs.entries) {
    std::vector<int> bag = entry.tokens;
    if (entry.loc) {
      bag.push_back(vocab.id(coord_token('x', entry.loc->x)));
      bag.push_back(vocab.id(coord_token('y', entry.loc->y)));
    }
    items.push_back(std::move(bag));
  }
  return items;
}

namespace {

std::string signed_coord(int v) {
  return (v >= 0 ? "+" : "") + std::to_string(v);
}

std::string format_reward(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", r);
  return buf;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

std::string babi_serialize(const std::vector<EpisodeStep>& steps,
                           const Vocabulary& vocab) {
  std::ostringstream out;
  int line = 1;
  for (const EpisodeStep& step : steps) {
    for (const ObsEntry& entry : step.obs.entries) {
      out << line++ << ' ';
      if (!entry.loc) out << "Info:";
      for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
        std::string w = vocab.token(entry.tokens[i]);
        if (i == 0 && entry.loc && std::islower(static_cast<unsigned char>(w[0])))
          w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        out << (i == 0 && entry.loc ? "" : " ") << w;
      }
      if (entry.loc)
        out << " at [" << signed_coord(entry.loc->x) << ','
            << signed_coord(entry.loc->y) << ']';
      out << ".\n";
    }
    if (step.action) {
      out << line++ << " ACTION " << action_name(*step.action);
      if (step.reward) out << " REWARD " << format_reward(*step.reward);
      out << '\n';
    }
  }
  return out.str();
}

std::vector<EpisodeStep> babi_parse(const std::string& text,
                                    const Vocabulary& vocab) {
  std::vector<EpisodeStep> steps;
  EpisodeStep current;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    if (raw.empty()) continue;
    const auto sp = raw.find(' ');
    if (sp == std::string::npos)
      throw EncodingError("babi_parse: malformed line: " + raw);
    std::string body = raw.substr(sp + 1);

    if (body.rfind("ACTION ", 0) == 0) {
      auto words = split_words(body);
      auto action = action_from_name(words.at(1));
      if (!action) throw EncodingError("babi_parse: unknown action " + words.at(1));
      current.action = action;
      if (words.size() >= 4 && words[2] == "REWARD")
        current.reward = std::stod(words[3]);
      steps.push_back(std::move(current));
      current = {};
      continue;
    }

    ObsEntry entry;
    if (body.rfind("Info:", 0) == 0) {
      body = body.substr(5);
    } else {
      const auto at = body.rfind(" at [");
      if (at == std::string::npos)
        throw EncodingError("babi_parse: item line without location: " + raw);
      const std::string coords = body.substr(at + 5);
      const auto comma = coords.find(',');
      const auto close = coords.find(']');
      if (comma == std::string::npos || close == std::string::npos)
        throw EncodingError("babi_parse: malformed location: " + raw);
      entry.loc = Position{std::stoi(coords.substr(0, comma)),
                           std::stoi(coords.substr(comma + 1, close - comma - 1))};
      body = body.substr(0, at);
      if (!body.empty())
        body[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(body[0])));
    }
    if (!body.empty() && body.back() == '.') body.pop_back();
    for (const std::string& w : split_words(body)) entry.tokens.push_back(vocab.id(w));
    current.obs.entries.push_back(std::move(entry));
  }
  if (!current.obs.entries.empty()) steps.push_back(std::move(current));
  return steps;
}

}  // namespace mazelab
