#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlwng/graph.hpp"
#include "mlwng/metrics.hpp"
#include "mlwng/rng.hpp"

namespace mlwng {

using NameId = std::uint32_t;

/// How the speaker-hearer pair is drawn each step.
enum class PairSelection {
  kSpeakerFirst,  ///< speaker uniform over nodes, hearer uniform over its neighbors
  kEdgeUniform,   ///< edge uniform, orientation uniform
};

std::string to_string(PairSelection selection);
PairSelection parse_pair_selection(const std::string& text);

struct InteractionOutcome {
  NodeId speaker = 0;
  NodeId hearer = 0;
  NameId uttered = 0;
  bool success = false;
  /// The speaker had an empty memory and drew a fresh name.
  bool invented = false;
};

/// Minimal naming game on a fixed graph: unbounded memories, fresh name per
/// invention, one object.
///
/// Word counters (total words, distinct names) are maintained incrementally
/// through a per-name reference count, so each step costs O(memory sizes).
/// The graph must outlive the game.
class NamingGame {
 public:
  /// All memories empty. Throws std::invalid_argument if the graph has
  /// fewer than 2 nodes or is disconnected (an isolated agent cannot play).
  NamingGame(const Graph& graph, std::uint64_t seed,
             PairSelection selection = PairSelection::kSpeakerFirst);

  /// Starts from given memories (test setups). Name ids must be
  /// duplicate-free per agent; the fresh-name counter starts above the
  /// largest id present.
  static NamingGame from_memories(const Graph& graph, std::vector<std::vector<NameId>> memories,
                                  std::uint64_t seed,
                                  PairSelection selection = PairSelection::kSpeakerFirst);

  /// Draws a connected pair and plays one interaction.
  InteractionOutcome step();

  /// Plays one interaction between a given speaker and hearer. Throws
  /// std::invalid_argument unless they are adjacent.
  InteractionOutcome interact(NodeId speaker, NodeId hearer);

  /// Every agent holds exactly one name and it is the same name everywhere.
  bool is_global_consensus() const {
    return n_total_ == memories_.size() && n_diff_ == 1;
  }

  std::span<const NameId> memory(NodeId agent) const { return memories_.at(agent); }
  std::uint64_t total_words() const { return n_total_; }
  std::uint64_t distinct_names() const { return n_diff_; }
  std::uint64_t steps() const { return steps_; }
  NameId next_name_id() const { return static_cast<NameId>(name_refs_.size()); }
  std::uint64_t inventions() const { return inventions_; }
  std::size_t agent_count() const { return memories_.size(); }

 private:
  NamingGame(const Graph& graph, std::uint64_t seed, PairSelection selection, bool check);

  InteractionOutcome play(NodeId speaker, NodeId hearer);
  void drop_reference(NameId name);

  const Graph* graph_;
  Rng rng_;
  PairSelection selection_;
  std::vector<Edge> edges_;  // only for kEdgeUniform
  std::vector<std::vector<NameId>> memories_;
  std::vector<std::uint32_t> name_refs_;  // indexed by name id
  std::uint64_t n_total_ = 0;
  std::uint64_t n_diff_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t inventions_ = 0;
};

struct RunOptions {
  std::uint64_t max_steps = 10'000'000;
  PairSelection selection = PairSelection::kSpeakerFirst;
  double points_per_decade = SampleSchedule::kDefaultPointsPerDecade;
  /// Record the log-sampled trajectory.
  bool record_series = true;
};

struct GameRun {
  bool converged = false;
  /// First step at which global consensus held.
  std::optional<std::uint64_t> convergence_time;
  std::uint64_t steps = 0;
  std::uint64_t final_n_diff = 0;
  std::uint64_t final_n_total = 0;
  MetricsSeries series;
};

/// Plays until global consensus or max_steps interactions. Throws
/// std::invalid_argument for max_steps == 0 or an unplayable graph.
GameRun run_game(const Graph& graph, std::uint64_t seed, const RunOptions& options = {});

}  // namespace mlwng
