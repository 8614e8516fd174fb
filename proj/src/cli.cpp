#include "ideaforge/cli.hpp"

#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ideaforge/error.hpp"
#include "ideaforge/mcp_server.hpp"

namespace ideaforge::cli {

namespace {

double parse_double(const std::string& text, std::string_view what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(fmt::format("{} '{}' is not a number", what, text));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(fmt::format("cannot read {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

KnowledgeGraph load_or_empty(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {};
    return snapshot_load(path);
}

}  // namespace

ScoreWeights parse_weights(const std::string& text) {
    std::vector<double> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(parse_double(item, "weight"));
    if (parts.size() != 4) throw UsageError(fmt::format("--weights needs four comma-separated numbers, got '{}'", text));
    return {parts[0], parts[1], parts[2], parts[3]};
}

Invocation parse_cli(const std::vector<std::string>& args, const llm::EnvLookup& env) {
    CLI::App app{"IdeaForge: multi-methodology innovation analysis over a knowledge graph", "ideaforge"};
    app.require_subcommand(1);

    Invocation inv;
    auto& cfg = inv.config;
    std::optional<std::string> idea, idea_file, model, theta, weights, llm_url, embedding_url, export_fmt, snapshot,
        prior_fixture, embedding_stub;
    std::size_t max_prior_art = cfg.max_prior_art, top_k = cfg.top_k;
    std::string out_dir = cfg.output_dir.string();
    std::string format = "json";
    std::optional<std::string> output;
    bool offline = false, serial = false;
    double challenge = cfg.challenge_threshold;

    auto* run = app.add_subcommand("run", "Run the eight-step pipeline on an idea");
    auto* idea_opt = run->add_option("--idea", idea, "Idea text");
    auto* idea_file_opt = run->add_option("--idea-file", idea_file, "File holding the idea text");
    idea_opt->excludes(idea_file_opt);
    run->add_option("--domain", cfg.domain, "Problem domain recorded on the Problem node");
    run->add_option("--theta", theta, "Convergence threshold in (0,1] (env IDEAFORGE_THETA, default 0.65)");
    run->add_option("--model", model, "LLM model name (env OLLAMA_MODEL, default tinyllama)");
    run->add_flag("--offline", offline, "No network: deterministic fallbacks only");
    run->add_option("--max-prior-art", max_prior_art, "Maximum prior-art records");
    run->add_option("--top-k", top_k, "Claims carried into the draft");
    run->add_option("--weights", weights, "InnovationScore weights w1,w2,w3,w4");
    run->add_option("--challenge-threshold", challenge, "Jaccard threshold for CHALLENGES edges");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--snapshot", snapshot, "Snapshot path (default <out>/graph.snapshot.json)");
    run->add_option("--prior-art-fixture", prior_fixture, "Atom XML file used instead of arXiv");
    run->add_option("--embedding-stub", embedding_stub, "JSON file mapping claim text to vectors");
    run->add_option("--llm-url", llm_url, "LLM service base URL (env IDEAFORGE_LLM_URL)");
    run->add_option("--embedding-url", embedding_url, "Embedding service URL (env IDEAFORGE_EMBEDDING_URL)");
    run->add_option("--export", export_fmt, "Also export the graph: json or dot");
    run->add_flag("--serial", serial, "Use the serial similarity kernels");

    auto* serve = app.add_subcommand("serve-mcp", "Serve the graph tools over JSON-RPC on stdio");
    serve->add_option("--snapshot", snapshot, "Snapshot to load and update");
    serve->add_option("--weights", weights, "InnovationScore weights w1,w2,w3,w4");

    auto* exp = app.add_subcommand("export", "Export a snapshot as JSON or DOT");
    exp->add_option("--snapshot", snapshot, "Snapshot to export");
    exp->add_option("--format,--export", format, "json or dot");
    exp->add_option("--output,-o", output, "Write to a file instead of stdout");

    auto* score = app.add_subcommand("score", "Rank the claims of a snapshot by InnovationScore");
    score->add_option("--snapshot", snapshot, "Snapshot to score");
    score->add_option("--weights", weights, "InnovationScore weights w1,w2,w3,w4");

    auto* report = app.add_subcommand("report", "Print the latest run report of an output directory");
    report->add_option("--out", out_dir, "Output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        inv.command = Command::Help;
        inv.help_text = app.help();
        return inv;
    } catch (const CLI::ParseError& e) {
        throw UsageError(fmt::format("{}\n\n{}", e.what(), app.help()));
    }
    for (auto* sub : {run, serve, exp, score, report}) {
        if (sub->parsed() && sub->get_subcommands().empty() && sub->count("--help")) {
            inv.command = Command::Help;
            inv.help_text = sub->help();
            return inv;
        }
    }

    if (snapshot) inv.snapshot = *snapshot;
    if (weights) cfg.weights = parse_weights(*weights);
    cfg.output_dir = out_dir;

    if (run->parsed()) {
        inv.command = Command::Run;
        if (idea)
            cfg.idea = *idea;
        else if (idea_file)
            cfg.idea = read_text_file(*idea_file);
        else
            throw UsageError(fmt::format("run needs --idea or --idea-file\n\n{}", run->help()));
        cfg.model_name = llm::resolve_model_name(model, env);
        if (theta)
            cfg.theta = parse_double(*theta, "--theta");
        else if (auto v = env("IDEAFORGE_THETA"))
            cfg.theta = parse_double(*v, "IDEAFORGE_THETA");
        if (llm_url)
            cfg.llm_endpoint = *llm_url;
        else if (auto v = env("IDEAFORGE_LLM_URL"))
            cfg.llm_endpoint = *v;
        if (embedding_url)
            cfg.embedding_endpoint = *embedding_url;
        else if (auto v = env("IDEAFORGE_EMBEDDING_URL"))
            cfg.embedding_endpoint = *v;
        cfg.offline = offline;
        cfg.parallel = !serial;
        cfg.max_prior_art = max_prior_art;
        cfg.top_k = top_k;
        cfg.challenge_threshold = challenge;
        if (snapshot) cfg.snapshot_path = *snapshot;
        if (prior_fixture) cfg.prior_art_fixture = *prior_fixture;
        if (embedding_stub) cfg.embedding_stub = *embedding_stub;
        if (export_fmt) {
            if (*export_fmt == "json")
                cfg.export_format = ExportFormat::Json;
            else if (*export_fmt == "dot")
                cfg.export_format = ExportFormat::Dot;
            else
                throw UsageError(fmt::format("--export must be json or dot, got '{}'", *export_fmt));
        }
        try {
            pipeline::validate(cfg);
        } catch (const UsageError& e) {
            throw UsageError(fmt::format("{}\n\n{}", e.what(), run->help()));
        }
    } else if (serve->parsed()) {
        inv.command = Command::ServeMcp;
    } else if (exp->parsed()) {
        inv.command = Command::Export;
        if (format == "json")
            inv.format = ExportFormat::Json;
        else if (format == "dot")
            inv.format = ExportFormat::Dot;
        else
            throw UsageError(fmt::format("--format must be json or dot, got '{}'", format));
        if (output) inv.output = *output;
    } else if (score->parsed()) {
        inv.command = Command::Score;
    } else {
        inv.command = Command::Report;
    }
    return inv;
}

int execute(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err) {
    switch (inv.command) {
        case Command::Help: out << inv.help_text; return kExitOk;
        case Command::Run: {
            auto report = pipeline::run_pipeline(inv.config);
            out << fmt::format("graph: {} nodes, {} edges; {} convergent pairs ({})\n", report.summary.total_nodes,
                               report.summary.total_edges, report.convergent_pairs.size(), report.similarity_source);
            for (std::size_t i = 0; i < report.ranked.size(); ++i) {
                auto node = report.graph.nodes.at(report.ranked[i].claim);
                out << fmt::format("  #{} [{}] {:.3f}  {}\n", i + 1, to_string(claim_methodology(node)),
                                   report.ranked[i].total, claim_text(node));
            }
            out << "draft:  " << report.draft_path.string() << "\nreport: " << report.report_path.string() << "\n";
            return kExitOk;
        }
        case Command::ServeMcp: {
            auto graph = load_or_empty(inv.snapshot);
            mcp::Server server(graph, inv.config.weights);
            server.on_mutation([&] { snapshot_save(graph, inv.snapshot); });
            server.serve(in, out);
            return kExitOk;
        }
        case Command::Export: {
            auto text = export_graph(snapshot_load(inv.snapshot), inv.format);
            if (inv.output) {
                std::ofstream file(*inv.output, std::ios::binary | std::ios::trunc);
                if (!file || !(file << text)) throw IoFailure(fmt::format("cannot write {}", inv.output->string()));
            } else {
                out << text;
            }
            return kExitOk;
        }
        case Command::Score: {
            auto graph = snapshot_load(inv.snapshot);
            nlohmann::json ranked = nlohmann::json::array();
            if (!graph.get_claims().empty())
                for (const auto& b : rank_claims(graph, inv.config.weights)) {
                    auto entry = mcp::breakdown_to_json(b);
                    entry["text"] = claim_text(graph.node(b.claim));
                    ranked.push_back(std::move(entry));
                }
            out << ranked.dump(2) << "\n";
            return kExitOk;
        }
        case Command::Report: {
            auto path = inv.config.output_dir / "latest-report.json";
            auto doc = nlohmann::json::parse(read_text_file(path), nullptr, false);
            if (doc.is_discarded()) {
                err << "report " << path.string() << " is not valid JSON\n";
                return kExitFailure;
            }
            out << "run started " << doc.value("started_at", "?") << "\n";
            for (const auto& s : doc["steps"])
                out << fmt::format("  {:<22} +{} nodes +{} edges{}{}\n", s["name"].get<std::string>(),
                                   s["nodes_created"].get<std::size_t>(), s["edges_created"].get<std::size_t>(),
                                   s["used_fallback"].get<bool>() ? "  [fallback]" : "",
                                   s["note"].get<std::string>().empty() ? "" : "  " + s["note"].get<std::string>());
            out << "summary: " << doc["summary"].dump() << "\n";
            out << "draft title: " << doc["draft"]["title"].get<std::string>() << "\n";
            return kExitOk;
        }
    }
    return kExitFailure;
}

int run_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        return execute(parse_cli(args), in, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoFailure& e) {
        err << "I/O failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const CorruptSnapshot& e) {
        err << "I/O failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace ideaforge::cli
