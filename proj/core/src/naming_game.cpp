#include "mlwng/naming_game.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlwng {

std::string to_string(PairSelection selection) {
  return selection == PairSelection::kSpeakerFirst ? "speaker_first" : "edge_uniform";
}

PairSelection parse_pair_selection(const std::string& text) {
  if (text == "speaker_first") return PairSelection::kSpeakerFirst;
  if (text == "edge_uniform") return PairSelection::kEdgeUniform;
  throw std::invalid_argument("unknown pair selection '" + text +
                              "' (expected speaker_first or edge_uniform)");
}

NamingGame::NamingGame(const Graph& graph, std::uint64_t seed, PairSelection selection)
    : NamingGame(graph, seed, selection, true) {}

NamingGame::NamingGame(const Graph& graph, std::uint64_t seed, PairSelection selection, bool check)
    : graph_(&graph), rng_(seed), selection_(selection), memories_(graph.node_count()) {
  if (check) {
    if (graph.node_count() < 2) throw std::invalid_argument("naming game needs at least 2 agents");
    if (!is_connected(graph)) {
      throw std::invalid_argument("graph is disconnected: isolated agents cannot play");
    }
  }
  if (selection_ == PairSelection::kEdgeUniform) edges_ = graph.edges();
}

NamingGame NamingGame::from_memories(const Graph& graph, std::vector<std::vector<NameId>> memories,
                                     std::uint64_t seed, PairSelection selection) {
  if (memories.size() != graph.node_count()) {
    throw std::invalid_argument("one memory per agent required");
  }
  NamingGame game(graph, seed, selection);
  for (auto& memory : memories) {
    auto sorted = memory;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("agent memory holds a duplicate name");
    }
    for (NameId name : memory) {
      if (name >= game.name_refs_.size()) game.name_refs_.resize(name + 1, 0);
      if (game.name_refs_[name]++ == 0) ++game.n_diff_;
      ++game.n_total_;
    }
  }
  game.memories_ = std::move(memories);
  return game;
}

void NamingGame::drop_reference(NameId name) {
  if (--name_refs_[name] == 0) --n_diff_;
}

InteractionOutcome NamingGame::step() {
  NodeId speaker = 0;
  NodeId hearer = 0;
  if (selection_ == PairSelection::kSpeakerFirst) {
    speaker = static_cast<NodeId>(rng_.below(memories_.size()));
    const auto nbrs = graph_->neighbors(speaker);
    hearer = nbrs[rng_.below(nbrs.size())];
  } else {
    const Edge& e = edges_[rng_.below(edges_.size())];
    const bool flip = rng_.below(2) == 1;
    speaker = flip ? e.v : e.u;
    hearer = flip ? e.u : e.v;
  }
  return play(speaker, hearer);
}

InteractionOutcome NamingGame::interact(NodeId speaker, NodeId hearer) {
  if (!graph_->has_edge(speaker, hearer)) {
    throw std::invalid_argument("speaker and hearer are not adjacent");
  }
  return play(speaker, hearer);
}

InteractionOutcome NamingGame::play(NodeId speaker, NodeId hearer) {
  InteractionOutcome out;
  out.speaker = speaker;
  out.hearer = hearer;
  auto& said = memories_.at(speaker);
  auto& heard = memories_.at(hearer);

  if (said.empty()) {
    out.invented = true;
    out.uttered = static_cast<NameId>(name_refs_.size());
    name_refs_.push_back(1);
    said.push_back(out.uttered);
    ++n_total_;
    ++n_diff_;
    ++inventions_;
  } else {
    out.uttered = said[rng_.below(said.size())];
  }

  const NameId word = out.uttered;
  if (std::find(heard.begin(), heard.end(), word) == heard.end()) {
    heard.push_back(word);
    ++name_refs_[word];
    ++n_total_;
  } else {
    out.success = true;
    for (NameId name : said) {
      if (name != word) drop_reference(name);
    }
    for (NameId name : heard) {
      if (name != word) drop_reference(name);
    }
    n_total_ -= said.size() + heard.size() - 2;
    said.assign(1, word);
    heard.assign(1, word);
  }
  ++steps_;
  return out;
}

GameRun run_game(const Graph& graph, std::uint64_t seed, const RunOptions& options) {
  if (options.max_steps == 0) throw std::invalid_argument("max_steps must be >= 1");
  NamingGame game(graph, seed, options.selection);
  const SampleSchedule schedule(options.points_per_decade);

  GameRun result;
  std::uint64_t next_sample = schedule.next_after(0);
  std::uint64_t bin_successes = 0;
  std::uint64_t bin_interactions = 0;
  auto observation = [&] {
    return MetricsObservation{game.steps(), game.total_words(), game.distinct_names(),
                              bin_successes, bin_interactions};
  };

  while (game.steps() < options.max_steps) {
    const bool success = game.step().success;
    bin_successes += success ? 1 : 0;
    ++bin_interactions;
    const bool done = game.is_global_consensus();
    if (options.record_series && game.steps() == next_sample && !done) {
      result.series.record(observation());
      bin_successes = 0;
      bin_interactions = 0;
      next_sample = schedule.next_after(next_sample);
    }
    if (done) {
      result.converged = true;
      result.convergence_time = game.steps();
      break;
    }
  }
  if (options.record_series) result.series.finish(observation());
  result.steps = game.steps();
  result.final_n_diff = game.distinct_names();
  result.final_n_total = game.total_words();
  return result;
}

}  // namespace mlwng
