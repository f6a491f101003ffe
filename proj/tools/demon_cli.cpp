// demon: overlapping community detection on growing graphs.
//
//   demon run      batch-replay / incremental / both over a base graph and an edge stream
//   demon compare  best-match F1 between two community snapshots
//   demon gen      synthetic base + stream files
//   demon canon    canonical edge dump of an edge list

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <demon/edge_list.hpp>
#include <demon/experiment.hpp>
#include <demon/generators.hpp>
#include <demon/similarity.hpp>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kCoherence = 3 };

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Incremental DEMON overlapping community detection"};
    app.require_subcommand(1);

    demon::RunConfig run;
    std::string base, stream, mode = "incremental", tie_break = "det", out_dir = "out";
    bool lenient = false, shuffle_candidates = false;
    auto *run_cmd = app.add_subcommand("run", "Detect communities on a base graph and replay an edge stream");
    run_cmd->add_option("--base", base, "Base edge list (CSV)")->required();
    run_cmd->add_option("--stream", stream, "Edges added one at a time (CSV)");
    run_cmd->add_option("--mode", mode, "batch-replay | incremental | both")
        ->check(CLI::IsMember({"batch-replay", "incremental", "both"}));
    run_cmd->add_option("--epsilon", run.engine.epsilon, "Merge threshold in [0,1]")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--seed", run.engine.seed, "Random seed");
    run_cmd->add_option("--max-iter", run.engine.max_iter, "Label propagation sweep cap")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--snapshot-every", run.snapshot_every, "Write a snapshot every N events")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_dir, "Output directory");
    run_cmd->add_option("--tie-break", tie_break, "det | random")->check(CLI::IsMember({"det", "random"}));
    run_cmd->add_flag("--lenient", lenient, "Skip malformed input lines instead of failing");
    run_cmd->add_option("--min-community-size", run.engine.min_community_size,
                        "Smallest local group (ego included) submitted to the merge");
    run_cmd->add_flag("--shuffle-candidates", shuffle_candidates, "Scan merge candidates in seeded random order");
    run_cmd->add_flag("--full-fallback", run.engine.full_fallback, "Recompute everything on every event");
    run_cmd->add_option("--verify-every", run.verify_every, "Full coherence check every N events (0 = off)");

    std::string snap_a, snap_b, csv_path;
    auto *cmp_cmd = app.add_subcommand("compare", "Best-match F1 between two community snapshots");
    cmp_cmd->add_option("a", snap_a, "First snapshot")->required();
    cmp_cmd->add_option("b", snap_b, "Second snapshot")->required();
    cmp_cmd->add_option("--csv", csv_path, "Write per-community matches as CSV");

    demon::SyntheticSpec gen;
    std::string kind = "preferential-attachment", gen_dir = ".", prefix = "synthetic";
    auto *gen_cmd = app.add_subcommand("gen", "Write a synthetic base graph and edge stream");
    gen_cmd->add_option("--kind", kind, "preferential-attachment | planted-cliques | random")
        ->check(CLI::IsMember({"preferential-attachment", "planted-cliques", "random"}));
    gen_cmd->add_option("-n", gen.n, "Vertex count")->required();
    gen_cmd->add_option("-m,-k", gen.m_or_k, "Edge count, or clique count for planted-cliques")->required();
    gen_cmd->add_option("--stream-size", gen.stream_size, "Trailing edges moved to the stream file");
    gen_cmd->add_option("--inter", gen.inter_edges_per_pair, "Planted cliques: edges between each clique pair");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--out", gen_dir, "Output directory");
    gen_cmd->add_option("--prefix", prefix, "File name prefix");

    std::string canon_in;
    auto *canon_cmd = app.add_subcommand("canon", "Print the canonical, sorted edge list");
    canon_cmd->add_option("input", canon_in, "Edge list (CSV)")->required();
    canon_cmd->add_flag("--lenient", lenient, "Skip malformed input lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    const auto parse_mode = lenient ? demon::ParseMode::Lenient : demon::ParseMode::Strict;
    try {
        if (*run_cmd) {
            run.base_path = base;
            if (!stream.empty())
                run.stream_path = stream;
            run.mode = demon::parse_run_mode(mode);
            run.output_dir = out_dir;
            run.parse_mode = parse_mode;
            run.engine.tie_break = tie_break == "random" ? demon::TieBreak::Random : demon::TieBreak::Smallest;
            run.engine.candidate_order =
                shuffle_candidates ? demon::CandidateOrder::Shuffled : demon::CandidateOrder::Ascending;
            const auto summary = demon::run_experiment(run);
            demon::write_summary(std::cout, summary);
        } else if (*cmp_cmd) {
            const auto report = demon::compare_snapshots(snap_a, snap_b);
            demon::write_similarity_text(std::cout, report);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv)
                    throw demon::IngestError("cannot write " + csv_path);
                demon::write_similarity_csv(csv, report);
            }
        } else if (*gen_cmd) {
            gen.kind = kind == "planted-cliques" ? demon::SyntheticKind::PlantedCliques
                       : kind == "random"        ? demon::SyntheticKind::Random
                                                 : demon::SyntheticKind::PreferentialAttachment;
            const auto graph = demon::generate(gen);
            demon::write_synthetic(graph, gen_dir, prefix);
            std::cout << "base_edges " << graph.base.size() << "\nstream_edges " << graph.stream.size() << '\n';
        } else if (*canon_cmd) {
            const auto loaded = demon::load_edge_list(canon_in, parse_mode);
            demon::write_canonical_edges(std::cout, loaded.graph);
            std::cerr << "vertices " << loaded.graph.n() << " edges " << loaded.graph.m() << " self_loops_skipped "
                      << loaded.stats.self_loops << " malformed_skipped " << loaded.stats.malformed << '\n';
        }
    } catch (const demon::ParameterError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const demon::CoherenceError &e) {
        std::cerr << "internal coherence failure: " << e.what() << '\n';
        return kCoherence;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}
