#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domainminer/benchgen.hpp"
#include "domainminer/dte.hpp"
#include "domainminer/eval.hpp"
#include "domainminer/io.hpp"
#include "domainminer/oracle.hpp"
#include "domainminer/reductions.hpp"
#include "domainminer/solve.hpp"
#include "domainminer/summary.hpp"

namespace dm = domainminer;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitUsage = 64;

dm::SolverSpec parse_solver(const std::string& s) {
    dm::SolverSpec spec;
    if (s == "builtin") return spec;
    spec.builtin = false;
    spec.command = s;
    return spec;
}

dm::Digraph require_complete(const dm::PartialMatrix& psm) {
    if (psm.star_count() > 0)
        throw dm::ArityError("matrix has " + std::to_string(psm.star_count()) +
                             " unspecified cells; this command needs a complete matrix");
    return psm.to_digraph();
}

struct Options {
    std::string matrix_path;
    std::string out_path;
    std::string encoding = "BE+NF+MD+LI";
    std::string solver = "builtin";
    std::string from;
    std::string problem = "dbpm";
    std::string manifest_path;
    std::string out_dir = ".";
    std::vector<std::string> encodings;
    std::vector<int> m_star_set;
    std::vector<int> n_set;
    std::optional<int> m;
    std::optional<int> decide_m;
    int per_cell = 1;
    int k = 1;
    int jobs = 1;
    unsigned edge_permille = 500;
    unsigned star_permille = 100;
    uint64_t seed = 0;
    double timeout = 0.0;
};

int cmd_summarize(const Options& opt) {
    dm::Digraph g = require_complete(dm::read_matrix_file(opt.matrix_path));
    dm::SummarizeResult res = dm::summarize(g);
    std::cout << dm::policy_to_json(res.policy) << '\n';
    return kExitOk;
}

int cmd_mine(const Options& opt) {
    dm::PartialMatrix psm = dm::read_matrix_file(opt.matrix_path);
    dm::EncodingConfig flags = dm::parse_encoding_name(opt.encoding);
    dm::MineResult res = dm::mine(psm, flags, opt.m, parse_solver(opt.solver), opt.timeout);
    std::cout << dm::mine_to_json(res) << '\n';
    if (res.status == dm::SolveResult::Status::Infeasible) {
        std::cerr << "infeasible at m=" << res.m_used << "; retry with doubled m (--m "
                  << 2 * res.m_used << ")\n";
        return kExitInfeasible;
    }
    if (res.status == dm::SolveResult::Status::Timeout) {
        std::cerr << "timed out after " << opt.timeout << "s\n";
        return kExitTimeout;
    }
    return kExitOk;
}

int cmd_encode(const Options& opt) {
    dm::PartialMatrix psm = dm::read_matrix_file(opt.matrix_path);
    dm::EncodingConfig config = dm::parse_encoding_name(opt.encoding);
    config.m = opt.m ? *opt.m : dm::default_class_budget(psm);
    dm::CnfInstance inst = dm::encode(psm, config);
    dm::write_wcnf_file(inst, opt.out_path);
    std::cout << "wrote " << opt.out_path << " (" << inst.var_count << " vars, "
              << inst.hard.size() << " hard, " << inst.soft.size() << " soft, m="
              << config.m << ")\n";
    return kExitOk;
}

int cmd_dte(const Options& opt) {
    dm::Digraph m = require_complete(dm::read_matrix_file(opt.matrix_path));
    std::cout << dm::dte_to_json(dm::mine_dte(m)) << '\n';
    return kExitOk;
}

int cmd_reduce(const Options& opt) {
    dm::DbpmInstance out{0, dm::PartialMatrix(1, 1)};
    if (opt.from == "3col-dbpm") {
        out = dm::three_color_to_dbpm(dm::read_graph_file(opt.matrix_path));
    } else if (opt.from == "3col-db") {
        out = dm::three_color_to_db(dm::read_graph_file(opt.matrix_path));
    } else if (opt.from == "db-dtepm") {
        if (!opt.m) throw dm::ConfigError("db-dtepm needs the source budget (--m)");
        dm::PartialMatrix psm = dm::read_matrix_file(opt.matrix_path);
        out = dm::db_to_dtepm(*opt.m, psm);
    } else {
        throw dm::ConfigError("--from must be 3col-dbpm, 3col-db or db-dtepm");
    }
    dm::write_matrix_file(out.psm, opt.out_path);
    std::cout << "wrote " << opt.out_path << " (entities=" << out.psm.entity_count()
              << " rights=" << out.psm.right_count() << " m=" << out.m << ")\n";
    return kExitOk;
}

int cmd_oracle(const Options& opt) {
    dm::PartialMatrix psm = dm::read_matrix_file(opt.matrix_path);
    if (opt.decide_m) {
        bool feasible;
        if (opt.problem == "dbpm") feasible = dm::dbpm_feasible(psm, *opt.decide_m);
        else if (opt.problem == "db") feasible = dm::db_feasible(psm, *opt.decide_m);
        else throw dm::ConfigError("--decide supports dbpm and db only");
        std::cout << (feasible ? "feasible" : "infeasible") << '\n';
        return feasible ? kExitOk : kExitInfeasible;
    }
    int value;
    if (opt.problem == "dbpm") value = dm::oracle::dbpm_optimum(psm);
    else if (opt.problem == "db") value = dm::oracle::db_optimum(psm);
    else if (opt.problem == "dtepm") value = dm::oracle::dtepm_optimum(psm);
    else throw dm::ConfigError("--problem must be dbpm, db or dtepm");
    std::cout << value << '\n';
    return kExitOk;
}

int cmd_gen_bench(const Options& opt) {
    auto plan = dm::plan_suite(opt.m_star_set, opt.n_set, opt.per_cell, opt.seed, opt.k,
                               opt.edge_permille, opt.star_permille);
    std::string manifest = dm::write_suite(plan, opt.out_dir);
    std::cout << "wrote " << plan.size() << " instances, manifest " << manifest << '\n';
    return kExitOk;
}

int cmd_eval(const Options& opt) {
    auto manifest = dm::read_manifest(opt.manifest_path);
    std::string base_dir = ".";
    if (auto slash = opt.manifest_path.find_last_of('/'); slash != std::string::npos)
        base_dir = opt.manifest_path.substr(0, slash);
    dm::EvalOptions eval_opt;
    eval_opt.encodings = opt.encodings.empty() ? dm::encoding_names() : opt.encodings;
    eval_opt.solver = parse_solver(opt.solver);
    eval_opt.timeout_seconds = opt.timeout;
    eval_opt.jobs = opt.jobs;
    eval_opt.out_dir = opt.out_dir;
    dm::EvalResult res = dm::run_eval(manifest, base_dir, eval_opt);
    std::cout << dm::format_summary_table(res.summaries);
    return kExitOk;
}

int cmd_solve_wcnf(const Options& opt) {
    dm::WcnfFile file = dm::read_wcnf_file(opt.matrix_path);
    dm::SolveResult res = dm::solve_wcnf_builtin(file, opt.timeout);
    if (res.status == dm::SolveResult::Status::Timeout) {
        std::cout << "s UNKNOWN\n";
        return kExitTimeout;
    }
    if (res.status == dm::SolveResult::Status::Infeasible) {
        std::cout << "s UNSATISFIABLE\n";
        return kExitOk;
    }
    std::cout << "o " << (static_cast<long>(file.soft.size()) - res.objective) << '\n';
    std::cout << "s OPTIMUM FOUND\n";
    std::cout << 'v';
    for (int v = 1; v <= file.var_count; ++v)
        std::cout << ' ' << (res.assignment[static_cast<std::size_t>(v)] ? v : -v);
    std::cout << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"domainminer - protection-domain policy mining for access-control matrices"};
    app.require_subcommand(1);
    Options opt;

    auto* summarize = app.add_subcommand("summarize", "summarize a complete matrix into a policy");
    summarize->add_option("matrix", opt.matrix_path, "matrix file")->required();

    auto* mine = app.add_subcommand("mine", "mine a policy from a partial matrix");
    mine->add_option("matrix", opt.matrix_path, "matrix file")->required();
    mine->add_option("--m", opt.m, "class budget (default: derived upper bound)");
    mine->add_option("--encoding", opt.encoding, "BE|BE+CC|BE+NF|BE+NF+FM|BE+NF+MD|BE+NF+MD+LI");
    mine->add_option("--solver", opt.solver, "'builtin' or an external WCNF solver command");
    mine->add_option("--timeout", opt.timeout, "wall-clock limit in seconds (0 = none)");

    auto* encode = app.add_subcommand("encode", "write the WCNF encoding of a matrix");
    encode->add_option("matrix", opt.matrix_path, "matrix file")->required();
    encode->add_option("--encoding", opt.encoding, "encoding name")->required();
    encode->add_option("--m", opt.m, "class budget (default: derived upper bound)");
    encode->add_option("-o,--out", opt.out_path, "output WCNF path")->required();

    auto* dte = app.add_subcommand("dte", "mine a domain-and-type policy from a complete matrix");
    dte->add_option("matrix", opt.matrix_path, "matrix file")->required();

    auto* reduce = app.add_subcommand("reduce", "generate hardness-reduction instances");
    reduce->add_option("--from", opt.from, "3col-dbpm|3col-db|db-dtepm")->required();
    reduce->add_option("input", opt.matrix_path, "graph file (3col-*) or matrix file (db-dtepm)")
        ->required();
    reduce->add_option("--m", opt.m, "source budget (db-dtepm only)");
    reduce->add_option("-o,--out", opt.out_path, "output matrix path")->required();

    auto* oracle = app.add_subcommand("oracle", "exact optima by exhaustive search (test tooling)");
    oracle->add_option("matrix", opt.matrix_path, "matrix file")->required();
    oracle->add_option("--problem", opt.problem, "dbpm|db|dtepm");
    oracle->add_option("--decide", opt.decide_m, "decide feasibility at this budget instead");

    auto* gen = app.add_subcommand("gen-bench", "generate a benchmark suite");
    gen->add_option("--m-star", opt.m_star_set, "policy sizes")->required()->delimiter(',');
    gen->add_option("--n", opt.n_set, "entity counts")->required()->delimiter(',');
    gen->add_option("--per-cell", opt.per_cell, "instances per grid cell");
    gen->add_option("--seed", opt.seed, "suite seed");
    gen->add_option("--k", opt.k, "right count");
    gen->add_option("--edge-permille", opt.edge_permille, "edge probability (permille)");
    gen->add_option("--star-permille", opt.star_permille, "blanked-cell fraction (permille)");
    gen->add_option("--out", opt.out_dir, "output directory")->required();

    auto* eval = app.add_subcommand("eval", "run encodings over a benchmark manifest");
    eval->add_option("--manifest", opt.manifest_path, "manifest.csv path")->required();
    eval->add_option("--encodings", opt.encodings, "encoding names (default: all six)")
        ->delimiter(',');
    eval->add_option("--solver", opt.solver, "'builtin' or an external solver command");
    eval->add_option("--timeout", opt.timeout, "per-instance limit in seconds");
    eval->add_option("--jobs", opt.jobs, "worker pool width");
    eval->add_option("--out", opt.out_dir, "directory for CSV output");

    auto* solve_wcnf = app.add_subcommand("solve-wcnf", "solve a WCNF file with the builtin solver");
    solve_wcnf->add_option("wcnf", opt.matrix_path, "WCNF path")->required();
    solve_wcnf->add_option("--timeout", opt.timeout, "wall-clock limit in seconds (0 = none)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (summarize->parsed()) return cmd_summarize(opt);
        if (mine->parsed()) return cmd_mine(opt);
        if (encode->parsed()) return cmd_encode(opt);
        if (dte->parsed()) return cmd_dte(opt);
        if (reduce->parsed()) return cmd_reduce(opt);
        if (oracle->parsed()) return cmd_oracle(opt);
        if (gen->parsed()) return cmd_gen_bench(opt);
        if (eval->parsed()) return cmd_eval(opt);
        if (solve_wcnf->parsed()) return cmd_solve_wcnf(opt);
    } catch (const dm::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}
