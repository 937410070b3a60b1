#include "domainminer/solve.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "domainminer/sat.hpp"

namespace domainminer {

namespace {

// Soft clauses are unit by construction; their literals drive the objective.
std::vector<int> soft_literals(const std::vector<Clause>& soft) {
    std::vector<int> lits;
    lits.reserve(soft.size());
    for (const Clause& c : soft) {
        if (c.size() != 1) throw IntegrityError("soft clauses must be unit");
        lits.push_back(c[0]);
    }
    return lits;
}

// Sequential-counter "at most K of lits are false", i.e. at least
// (|lits| - K) of the soft literals hold.
void add_at_most_k_false(SatSolver& solver, const std::vector<int>& lits, int k) {
    const int n = static_cast<int>(lits.size());
    if (k >= n) return;
    if (k == 0) {
        for (int lit : lits) solver.add_clause({lit});
        return;
    }
    // count[i][j]: at least j of the first i+1 literals are false.
    std::vector<std::vector<int>> count(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(k) + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= k; ++j) count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = solver.new_var();

    solver.add_clause({lits[0], count[0][1]});
    for (int j = 2; j <= k; ++j) solver.add_clause({-count[0][static_cast<std::size_t>(j)]});
    for (int i = 1; i < n; ++i) {
        solver.add_clause({lits[static_cast<std::size_t>(i)], count[static_cast<std::size_t>(i)][1]});
        solver.add_clause({-count[static_cast<std::size_t>(i) - 1][1], count[static_cast<std::size_t>(i)][1]});
        for (int j = 2; j <= k; ++j) {
            solver.add_clause({lits[static_cast<std::size_t>(i)], -count[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1],
                               count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
            solver.add_clause({-count[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)],
                               count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
        }
        solver.add_clause({lits[static_cast<std::size_t>(i)], -count[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(k)]});
    }
}

// Branch on the class structure first: membership, occupancy and minima
// resolve the search; fill and class-edge variables mostly follow by unit
// propagation. Membership prefers low class indices, matching the prefix and
// sorted-minima refinements.
std::vector<int> branch_order(const CnfInstance& inst) {
    const VarRegistry& reg = inst.registry;
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(inst.var_count));
    for (int i = 0; i < inst.n; ++i)
        for (int p = 0; p < inst.config.m; ++p) order.push_back(reg.y_var(i, p));
    for (int p = 0; p < inst.config.m; ++p) order.push_back(reg.r_var(p));
    return order; // remaining variables follow in index order
}

int satisfied_soft_count(const std::vector<Clause>& soft, const std::vector<uint8_t>& model) {
    int count = 0;
    for (const Clause& c : soft) {
        int lit = c[0];
        std::size_t v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
        if ((lit > 0) == (model[v] != 0)) ++count;
    }
    return count;
}

// Linear search on the objective, from all-soft-satisfied downwards. The first
// satisfiable step is the optimum: every larger value was just proven
// unsatisfiable.
SolveResult linear_search(int var_count, const std::vector<Clause>& hard,
                          const std::vector<Clause>& soft, const std::vector<int>& order,
                          const std::vector<int>& true_phase_vars, double timeout_seconds) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (timeout_seconds > 0)
        deadline = start + std::chrono::microseconds(static_cast<int64_t>(timeout_seconds * 1e6));

    SolveResult result;
    const std::vector<int> softs = soft_literals(soft);
    const int m = static_cast<int>(softs.size());
    auto finish = [&](SolveResult::Status status) {
        result.status = status;
        result.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };

    for (int t = m; t >= 0; --t) {
        SatSolver solver(var_count);
        bool root_ok = true;
        for (const Clause& c : hard) root_ok = solver.add_clause(c) && root_ok;
        add_at_most_k_false(solver, softs, m - t);
        solver.set_branch_order(order);
        for (int v : true_phase_vars) solver.set_phase(v, true);

        SatSolver::Result r = root_ok ? solver.solve(deadline) : SatSolver::Result::Unsat;
        result.stats.decisions += solver.stats().decisions;
        result.stats.propagations += solver.stats().propagations;

        if (r == SatSolver::Result::Timeout) {
            if (t < m) result.objective_bound = t;
            return finish(SolveResult::Status::Timeout);
        }
        if (r == SatSolver::Result::Sat) {
            result.assignment.assign(solver.model().begin(),
                                     solver.model().begin() + var_count + 1);
            result.objective = satisfied_soft_count(soft, result.assignment);
            if (result.objective != t)
                throw IntegrityError("objective " + std::to_string(result.objective) +
                                     " does not match the proven optimum " + std::to_string(t));
            return finish(SolveResult::Status::Optimal);
        }
    }
    return finish(SolveResult::Status::Infeasible);
}

} // namespace

SolveResult solve_builtin(const CnfInstance& inst, double timeout_seconds) {
    std::vector<int> true_vars;
    for (int i = 0; i < inst.n; ++i)
        for (int p = 0; p < inst.config.m; ++p) true_vars.push_back(inst.registry.y_var(i, p));
    return linear_search(inst.var_count, inst.hard, inst.soft, branch_order(inst), true_vars,
                         timeout_seconds);
}

SolveResult solve_wcnf_builtin(const WcnfFile& file, double timeout_seconds) {
    return linear_search(file.var_count, file.hard, file.soft, {}, {}, timeout_seconds);
}

namespace {

struct RunOutput {
    int exit_code = -1;
    bool timed_out = false;
    std::string stdout_text;
};

// Run "sh -c '<cmd> <arg>'" with a wall-clock deadline, capturing stdout.
RunOutput run_with_timeout(const std::string& cmd, const std::string& arg, double timeout_seconds) {
    std::string out_path = arg + ".out";
    std::string full = cmd + " '" + arg + "' > '" + out_path + "'";

    pid_t pid = fork();
    if (pid < 0) throw SolverError("fork failed");
    if (pid == 0) {
        setpgid(0, 0);
        execl("/bin/sh", "sh", "-c", full.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    setpgid(pid, pid);

    const auto start = std::chrono::steady_clock::now();
    RunOutput result;
    int status = 0;
    for (;;) {
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) break;
        if (r < 0) throw SolverError("waitpid failed");
        if (timeout_seconds > 0) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (elapsed >= timeout_seconds) {
                kill(-pid, SIGKILL);
                waitpid(pid, &status, 0);
                result.timed_out = true;
                break;
            }
        }
        usleep(2000);
    }
    if (!result.timed_out)
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    result.stdout_text = ss.str();
    std::remove(out_path.c_str());
    return result;
}

std::string temp_wcnf_path() {
    static int counter = 0;
    const char* dir = std::getenv("TMPDIR");
    std::string base = dir ? dir : "/tmp";
    return base + "/domainminer_" + std::to_string(getpid()) + "_" + std::to_string(counter++) +
           ".wcnf";
}

} // namespace

SolveResult solve_external(const CnfInstance& inst, const std::string& solver_cmd,
                           double timeout_seconds) {
    const auto start = std::chrono::steady_clock::now();
    std::string cmd = solver_cmd;
    if (const char* env = std::getenv("DOMAINMINER_SOLVER"); env && *env) cmd = env;
    if (cmd.empty()) throw SolverError("no external solver command given");

    std::string path = temp_wcnf_path();
    write_wcnf_file(inst, path);
    RunOutput run = run_with_timeout(cmd, path, timeout_seconds);
    std::remove(path.c_str());

    SolveResult result;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (run.timed_out) {
        result.status = SolveResult::Status::Timeout;
        return result;
    }

    std::string status_line;
    std::optional<long> cost;
    {
        std::istringstream ss(run.stdout_text);
        std::string line;
        while (std::getline(ss, line)) {
            if (line.rfind("s ", 0) == 0) status_line = line.substr(2);
            else if (line.rfind("o ", 0) == 0) {
                try {
                    cost = std::stol(line.substr(2));
                } catch (...) {
                    throw SolverError("bad objective line: " + line);
                }
            }
        }
    }
    while (!status_line.empty() && (status_line.back() == '\r' || status_line.back() == ' '))
        status_line.pop_back();

    if (status_line.empty())
        throw SolverError("external solver produced no status line (exit code " +
                          std::to_string(run.exit_code) + ")");
    if (status_line == "UNSATISFIABLE") {
        result.status = SolveResult::Status::Infeasible;
        return result;
    }
    if (status_line != "OPTIMUM FOUND")
        throw SolverError("unexpected solver status '" + status_line + "'");

    std::istringstream model_in(run.stdout_text);
    result.assignment = read_model(model_in, inst.var_count);
    if (!hard_clauses_satisfied(inst, result.assignment))
        throw IntegrityError("external solver model violates a hard clause");
    decode(inst, result.assignment); // post-verify enforcement; throws on mismatch
    result.status = SolveResult::Status::Optimal;
    result.objective = satisfied_soft_count(inst.soft, result.assignment);
    if (cost && *cost != static_cast<long>(inst.soft.size()) - result.objective)
        throw SolverError("solver cost " + std::to_string(*cost) + " disagrees with model (" +
                          std::to_string(static_cast<long>(inst.soft.size()) - result.objective) +
                          " falsified soft clauses)");
    return result;
}

MineResult mine(const PartialMatrix& psm, const EncodingConfig& flags, std::optional<int> m,
                const SolverSpec& solver, double timeout_seconds) {
    EncodingConfig config = flags;
    config.m = m ? *m : default_class_budget(psm);
    config.validate();

    CnfInstance inst = encode(psm, config);
    SolveResult sr = solver.builtin ? solve_builtin(inst, timeout_seconds)
                                    : solve_external(inst, solver.command, timeout_seconds);

    MineResult out;
    out.status = sr.status;
    out.m_used = config.m;
    out.stats = sr.stats;
    if (sr.status != SolveResult::Status::Optimal) return out;

    out.decoded = decode(inst, sr.assignment);
    out.objective = sr.objective;
    out.domain_count = config.m - sr.objective;
    if (out.decoded->occupied_count != out.domain_count)
        throw IntegrityError("occupied class count disagrees with the objective");
    return out;
}

std::string mine_to_json(const MineResult& result, int indent) {
    nlohmann::json j;
    switch (result.status) {
        case SolveResult::Status::Optimal: j["status"] = "optimal"; break;
        case SolveResult::Status::Infeasible: j["status"] = "infeasible"; break;
        case SolveResult::Status::Timeout: j["status"] = "timeout"; break;
    }
    j["m"] = result.m_used;
    if (result.decoded) {
        const DomainPolicy& policy = result.decoded->policy;
        j["objective"] = result.objective;
        j["domains"] = result.domain_count;
        j["assignment"] = policy.assignment;
        nlohmann::json edges = nlohmann::json::array();
        for (const Triple& e : policy.summary.edges_sorted())
            edges.push_back(nlohmann::json::array({e.u, e.a, e.v}));
        j["summary_edges"] = edges;
    }
    return j.dump(indent);
}

} // namespace domainminer
