// pkb: pattern knowledge base query tool.
//
// Commands: align, infer, recognize, validate, oracle, stats.
// Exit codes: 0 success with results, 1 no alignment found,
//             2 input/format error, 3 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pkb/errors.hpp"
#include "pkb/format.hpp"
#include "pkb/oracle.hpp"
#include "pkb/render.hpp"
#include "pkb/report.hpp"

namespace {

struct Options {
    std::string kb_path;
    std::string new_text;
    std::string new_file;
    pkb::SearchParams params;
    bool json = false;
};

std::string read_query(const Options& opt) {
    if (!opt.new_file.empty()) {
        std::ifstream in(opt.new_file, std::ios::binary);
        if (!in) throw pkb::FormatError("cannot open query file '" + opt.new_file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return opt.new_text;
}

int run_alignment_command(const std::string& command, const Options& opt) {
    pkb::KnowledgeStore store = pkb::load_kb(opt.kb_path);
    pkb::NewPattern np = pkb::parse_new(store, read_query(opt));
    pkb::QueryReport rep = pkb::run_query(command, store, np, opt.params);
    std::cout << pkb::emit_report(rep, store,
                                  opt.json ? pkb::ReportFormat::Json : pkb::ReportFormat::Text);
    return rep.empty() ? 1 : 0;
}

int run_validate(const Options& opt, bool json) {
    pkb::KnowledgeStore store = pkb::load_kb(opt.kb_path);
    if (json) {
        std::cout << "{\"patterns\":" << store.patterns().size()
                  << ",\"status\":\"ok\",\"symbols\":" << store.symbols().size()
                  << ",\"total_frequency_mass\":" << store.total_frequency_mass() << "}\n";
    } else {
        std::cout << "ok: " << store.patterns().size() << " patterns, "
                  << store.symbols().size() << " symbols, total frequency mass "
                  << store.total_frequency_mass() << "\n";
        for (const auto& p : store.patterns()) {
            std::cout << "  " << (p.label.empty() ? "p#" + std::to_string(p.id) : p.label)
                      << ": length " << p.size() << ", frequency " << p.frequency << "\n";
        }
    }
    return 0;
}

int run_stats(const Options& opt) {
    pkb::KnowledgeStore store = pkb::load_kb(opt.kb_path);
    const pkb::CostModel& costs = store.costs();
    std::cout << "total frequency mass: " << costs.total_mass() << "\n";
    std::cout << "novel symbol cost: " << pkb::format_bits(costs.novel_cost()) << " bits\n";
    for (std::size_t s = 0; s < store.symbols().size(); ++s) {
        std::cout << store.symbols().name(static_cast<pkb::SymbolId>(s)) << " "
                  << costs.occurrence_count(static_cast<pkb::SymbolId>(s)) << " "
                  << pkb::format_bits(costs.cost(static_cast<pkb::SymbolId>(s))) << "\n";
    }
    return 0;
}

int run_oracle(const Options& opt) {
    pkb::KnowledgeStore store = pkb::load_kb(opt.kb_path);
    pkb::NewPattern np = pkb::parse_new(store, read_query(opt));
    pkb::OracleResult res =
        pkb::brute_force_best(store, store.costs(), np, opt.params);
    if (!res.found) {
        std::cout << "no valid alignment\n";
        return 1;
    }
    std::cout << "best cd: " << pkb::format_bits(res.best_cd) << "\n";
    std::cout << "alignments attaining it: " << res.best.size() << "\n";
    for (const auto& s : res.best) {
        std::cout << "\n" << pkb::render_alignment(s.alignment, store, np);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern knowledge base query engine"};
    app.require_subcommand(1);

    Options opt;
    std::vector<CLI::App*> subs;
    for (const char* name : {"align", "infer", "recognize", "validate", "oracle", "stats"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--kb", opt.kb_path, "pattern file (.sp)")->required();
        if (std::string(name) != "validate" && std::string(name) != "stats") {
            auto* a = sub->add_option("--new", opt.new_text, "query pattern text");
            auto* b = sub->add_option("--new-file", opt.new_file, "file holding the query pattern");
            a->excludes(b);
            b->excludes(a);
        }
        sub->add_option("--beam", opt.params.beam_width, "beam width");
        sub->add_option("--max-rows", opt.params.max_rows, "max rows per alignment");
        sub->add_option("--reuse", opt.params.max_pattern_reuse, "max uses of one pattern");
        sub->add_option("--top", opt.params.top_k_reported, "alignments to report");
        sub->add_option("--iterations", opt.params.max_iterations, "max search iterations");
        sub->add_option("--threads", opt.params.threads, "worker threads");
        sub->add_flag("--json", opt.json, "emit JSON");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "validate") return run_validate(opt, opt.json);
        if (command == "stats") return run_stats(opt);
        if (opt.new_text.empty() && opt.new_file.empty()) {
            throw pkb::UsageError("one of --new or --new-file is required");
        }
        opt.params.validate();
        if (command == "oracle") return run_oracle(opt);
        return run_alignment_command(command, opt);
    } catch (const pkb::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const pkb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
