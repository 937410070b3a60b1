#ifndef DOMAINMINER_EVAL_HPP
#define DOMAINMINER_EVAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "domainminer/benchgen.hpp"
#include "domainminer/solve.hpp"

namespace domainminer {

struct EvalRow {
    std::string instance;
    SolveResult::Status status = SolveResult::Status::Timeout;
    double seconds = 0.0;
    int objective = -1; // -1 unless optimal
};

struct EvalSummary {
    std::string encoding;
    int solved = 0;        // answered within the timeout (optimal or infeasible)
    double total_seconds = 0.0; // over solved instances only
};

// Cumulative sorted solve times: row i is (t_1 + ... + t_i, i).
std::vector<std::pair<double, int>> cactus_points(std::vector<double> solved_times);

struct EvalOptions {
    std::vector<std::string> encodings; // of the six benchmark names
    SolverSpec solver;
    double timeout_seconds = 60.0;
    int jobs = 1;
    std::string out_dir = ".";
};

struct EvalResult {
    std::vector<std::pair<std::string, std::vector<EvalRow>>> rows_per_encoding;
    std::vector<EvalSummary> summaries;
};

// Solve every manifest instance under every requested encoding. Writes, per
// encoding E (with '+' replaced by '_'): <out>/E.csv with columns
// instance,status,seconds,objective, and <out>/E_cactus.csv with columns
// cum_seconds,solved. Also writes <out>/summary.csv.
EvalResult run_eval(const std::vector<ManifestEntry>& manifest, const std::string& base_dir,
                    const EvalOptions& options);

std::string format_summary_table(const std::vector<EvalSummary>& summaries);

} // namespace domainminer

#endif
