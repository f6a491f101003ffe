#include <demon/experiment.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace demon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool snapshot_due(std::size_t step, std::size_t total, std::size_t every) {
    return step % every == 0 || step == total;
}

std::string step_file(std::size_t step) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%06zu.txt", step);
    return name;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw IngestError("cannot write " + path.string());
    return out;
}

} // namespace

RunMode parse_run_mode(const std::string &text) {
    if (text == "batch-replay")
        return RunMode::BatchReplay;
    if (text == "incremental")
        return RunMode::Incremental;
    if (text == "both")
        return RunMode::Both;
    throw ParameterError("unknown mode '" + text + "'");
}

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::BatchReplay:
        return "batch-replay";
    case RunMode::Incremental:
        return "incremental";
    case RunMode::Both:
        return "both";
    }
    return "?";
}

void validate(const RunConfig &config) {
    validate(config.engine);
    if (config.snapshot_every == 0)
        throw ParameterError("snapshot_every must be at least 1");
}

double ModeResult::stream_total_s() const {
    double total = 0.0;
    for (const auto &s : steps)
        total += std::chrono::duration<double>(s.elapsed).count();
    return total;
}

ModeResult run_incremental(const Graph &base, std::span<const EdgeEvent> stream, const EngineConfig &config,
                           std::size_t snapshot_every, const SnapshotSink &sink, std::size_t verify_every) {
    ModeResult result;
    const auto start = Clock::now();
    AnalysisState state = run_batch(base, config);
    result.first_step_s = seconds_since(start);
    if (sink)
        sink(0, state.snapshot());

    result.steps.reserve(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        result.steps.push_back(state.apply_event(stream[i]));
        const std::size_t step = i + 1;
        if (verify_every && step % verify_every == 0)
            state.check_coherence();
        if (sink && snapshot_due(step, stream.size(), snapshot_every))
            sink(step, state.snapshot());
    }
    result.final_snapshot = state.snapshot();
    return result;
}

ModeResult run_batch_replay(const Graph &base, std::span<const EdgeEvent> stream, const EngineConfig &config,
                            std::size_t snapshot_every, const SnapshotSink &sink) {
    ModeResult result;
    Graph working = base;
    const auto start = Clock::now();
    AnalysisState state = run_batch(working, config);
    result.first_step_s = seconds_since(start);
    if (sink)
        sink(0, state.snapshot());

    result.steps.reserve(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto step_start = Clock::now();
        StepReport report;
        report.event = stream[i];
        report.new_edge = working.add_edge(stream[i].source, stream[i].target);
        state = run_batch(working, config);
        report.elapsed = Clock::now() - step_start;
        report.egos_touched = state.graph().n();
        report.communities_resubmitted = state.counters().submissions;
        report.merges = state.counters().merges;
        result.steps.push_back(report);
        const std::size_t step = i + 1;
        if (sink && snapshot_due(step, stream.size(), snapshot_every))
            sink(step, state.snapshot());
    }
    result.final_snapshot = state.snapshot();
    return result;
}

void write_steps_csv(std::ostream &out, const std::vector<StepReport> &steps) {
    out << "event_index,src,dst,egos_touched,communities_resubmitted,merges,elapsed_ns\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto &s = steps[i];
        out << i + 1 << ',' << s.event.source << ',' << s.event.target << ',' << s.egos_touched << ','
            << s.communities_resubmitted << ',' << s.merges << ',' << s.elapsed.count() << '\n';
    }
}

void write_summary(std::ostream &out, const RunSummary &summary) {
    out << std::fixed << std::setprecision(6);
    out << "mode " << to_string(summary.mode) << '\n';
    out << "events " << summary.events << '\n';
    out << "first_step_s " << summary.first_step_s << '\n';
    out << "stream_total_s " << summary.stream_total_s << '\n';
    if (summary.batch_stream_total_s)
        out << "batch_stream_total_s " << *summary.batch_stream_total_s << '\n';
    if (summary.speedup)
        out << "speedup " << *summary.speedup << '\n';
    else
        out << "speedup N/A\n";
    out << "speedup_basis " << (summary.speedup_measured ? "measured" : "estimated") << '\n';
    out << "final_community_count " << summary.final_community_count << '\n';
    if (summary.similarity)
        out << "best_match_f1 " << summary.similarity->best_match_f1 << '\n';
}

RunSummary run_experiment(const RunConfig &config) {
    validate(config);
    const LoadedGraph base = load_edge_list(config.base_path, config.parse_mode);
    std::vector<EdgeEvent> stream;
    if (config.stream_path) {
        EdgeListStats stats;
        stream = load_edge_events(*config.stream_path, config.parse_mode, stats);
    }
    std::filesystem::create_directories(config.output_dir);

    auto run_mode = [&](RunMode mode, const std::filesystem::path &dir) {
        std::filesystem::create_directories(dir / "snapshots");
        SnapshotSink sink = [&](std::size_t step, const std::vector<ExternalCommunity> &communities) {
            save_snapshot(dir / "snapshots" / step_file(step), communities);
        };
        ModeResult result =
            mode == RunMode::Incremental
                ? run_incremental(base.graph, stream, config.engine, config.snapshot_every, sink, config.verify_every)
                : run_batch_replay(base.graph, stream, config.engine, config.snapshot_every, sink);
        auto steps = open_output(dir / "steps.csv");
        write_steps_csv(steps, result.steps);
        save_snapshot(dir / "final.txt", result.final_snapshot);
        return result;
    };

    RunSummary summary;
    summary.mode = config.mode;
    summary.events = stream.size();

    if (config.mode == RunMode::Both) {
        const ModeResult batch = run_mode(RunMode::BatchReplay, config.output_dir / "batch-replay");
        const ModeResult inc = run_mode(RunMode::Incremental, config.output_dir / "incremental");
        summary.first_step_s = inc.first_step_s;
        summary.stream_total_s = inc.stream_total_s();
        summary.batch_stream_total_s = batch.stream_total_s();
        if (!stream.empty() && summary.stream_total_s > 0.0) {
            summary.speedup = *summary.batch_stream_total_s / summary.stream_total_s;
            summary.speedup_measured = true;
        }
        summary.final_community_count = inc.final_snapshot.size();
        summary.similarity = compare_communities(inc.final_snapshot, batch.final_snapshot);
        auto csv = open_output(config.output_dir / "similarity.csv");
        write_similarity_csv(csv, *summary.similarity);
    } else {
        const ModeResult result = run_mode(config.mode, config.output_dir);
        summary.first_step_s = result.first_step_s;
        summary.stream_total_s = result.stream_total_s();
        summary.final_community_count = result.final_snapshot.size();
        if (config.mode == RunMode::Incremental && !stream.empty() && summary.stream_total_s > 0.0)
            summary.speedup = summary.first_step_s * double(stream.size()) / summary.stream_total_s;
    }

    auto out = open_output(config.output_dir / "summary.txt");
    write_summary(out, summary);
    return summary;
}

} // namespace demon
