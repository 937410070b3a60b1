#ifndef DOMAINMINER_SOLVE_HPP
#define DOMAINMINER_SOLVE_HPP

#include <optional>
#include <string>

#include "domainminer/encode.hpp"

namespace domainminer {

struct SolveResult {
    enum class Status { Optimal, Infeasible, Timeout };

    Status status = Status::Timeout;
    int objective = -1;                 // satisfied soft clauses (Optimal only)
    std::optional<int> objective_bound; // proven upper bound when timing out mid-search
    Assignment assignment;              // over instance variables (Optimal only)

    struct Stats {
        uint64_t decisions = 0;
        uint64_t propagations = 0;
        double wall_seconds = 0.0;
    } stats;
};

// Exact partial MaxSAT by linear search on the objective: assert "at least t
// soft clauses satisfied" (sequential counter over the soft units) for
// t = m down to 0 and return the first satisfiable step. timeout_seconds <= 0
// means no limit.
SolveResult solve_builtin(const CnfInstance& inst, double timeout_seconds = 0.0);

// Same search over a raw WCNF (soft clauses must be unit); used by the
// solve-wcnf utility subcommand.
SolveResult solve_wcnf_builtin(const WcnfFile& file, double timeout_seconds = 0.0);

// Run an external WCNF solver: the command gets the instance path appended and
// must print 's'/'o'/'v' lines. The DOMAINMINER_SOLVER environment variable,
// when set, overrides solver_cmd. The model is decoded and re-verified here;
// trusting the solver is not required.
SolveResult solve_external(const CnfInstance& inst, const std::string& solver_cmd,
                           double timeout_seconds = 0.0);

struct SolverSpec {
    bool builtin = true;
    std::string command; // used when builtin is false
};

struct MineResult {
    SolveResult::Status status = SolveResult::Status::Timeout;
    int m_used = 0;
    int objective = -1;    // unoccupied classes in the optimum
    int domain_count = -1; // m_used - objective
    std::optional<DecodeResult> decoded;
    SolveResult::Stats stats;
};

// End-to-end mining: encode psm, solve, decode, verify. When m is absent the
// default class budget is used.
MineResult mine(const PartialMatrix& psm, const EncodingConfig& flags, std::optional<int> m,
                const SolverSpec& solver, double timeout_seconds = 0.0);

// Policy JSON extended with objective/budget/status fields.
std::string mine_to_json(const MineResult& result, int indent = 2);

} // namespace domainminer

#endif
