#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "engine.hpp"
#include "similarity.hpp"

namespace demon {

enum class RunMode { BatchReplay, Incremental, Both };

RunMode parse_run_mode(const std::string &text);
std::string to_string(RunMode mode);

struct RunConfig {
    std::filesystem::path base_path;
    std::optional<std::filesystem::path> stream_path;
    RunMode mode = RunMode::Incremental;
    EngineConfig engine;
    std::size_t snapshot_every = 1;
    std::filesystem::path output_dir = "out";
    ParseMode parse_mode = ParseMode::Strict;
    /// Run the full coherence check every N events; 0 disables it.
    std::size_t verify_every = 0;
};

void validate(const RunConfig &config);

/// Called with the step index (0 = base graph) and the communities at that step.
using SnapshotSink = std::function<void(std::size_t step, const std::vector<ExternalCommunity> &)>;

struct ModeResult {
    double first_step_s = 0.0;
    std::vector<StepReport> steps;
    std::vector<ExternalCommunity> final_snapshot;

    double stream_total_s() const;
};

/**
 * Runs the batch pipeline once on `base`, then applies `stream` one edge at
 * a time. The sink sees step 0, every `snapshot_every`-th step and the last.
 */
ModeResult run_incremental(const Graph &base, std::span<const EdgeEvent> stream, const EngineConfig &config,
                           std::size_t snapshot_every = 1, const SnapshotSink &sink = {},
                           std::size_t verify_every = 0);

/// Recomputes the batch pipeline from scratch on every stream prefix, the
/// baseline the incremental mode is measured against.
ModeResult run_batch_replay(const Graph &base, std::span<const EdgeEvent> stream, const EngineConfig &config,
                            std::size_t snapshot_every = 1, const SnapshotSink &sink = {});

struct RunSummary {
    RunMode mode = RunMode::Incremental;
    std::size_t events = 0;
    double first_step_s = 0.0;
    double stream_total_s = 0.0;
    /// Batch-replay stream time over incremental stream time. In incremental
    /// mode alone it is estimated as first_step_s * events / stream_total_s.
    std::optional<double> speedup;
    bool speedup_measured = false;
    std::size_t final_community_count = 0;
    std::optional<double> batch_stream_total_s;
    std::optional<SimilarityReport> similarity;
};

/// Loads inputs, runs the requested mode(s) and writes snapshots, steps.csv
/// and summary.txt under config.output_dir.
RunSummary run_experiment(const RunConfig &config);

void write_steps_csv(std::ostream &out, const std::vector<StepReport> &steps);
void write_summary(std::ostream &out, const RunSummary &summary);

} // namespace demon
