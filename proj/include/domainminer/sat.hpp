#ifndef DOMAINMINER_SAT_HPP
#define DOMAINMINER_SAT_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace domainminer {

// Complete DPLL solver with two watched literals per clause and chronological
// backtracking. Branching follows a caller-supplied variable order and phase
// vector, so runs (and their statistics) are exactly reproducible.
class SatSolver {
  public:
    enum class Result { Sat, Unsat, Timeout };

    struct Stats {
        uint64_t decisions = 0;
        uint64_t propagations = 0;
    };

    explicit SatSolver(int var_count);

    int var_count() const { return nvars_; }

    // Returns false if the clause is already falsified at the root
    // (i.e. the empty clause was derived).
    bool add_clause(const std::vector<int>& lits);

    // Append a fresh variable (used for cardinality auxiliaries).
    int new_var();

    // order: variables to branch on, in priority order; variables not listed
    // are appended in index order. phase: preferred first value per variable.
    void set_branch_order(const std::vector<int>& order);
    void set_phase(int var, bool value);

    Result solve(std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

    // Valid after Result::Sat: value of each variable (index 1..V).
    const std::vector<uint8_t>& model() const { return model_; }
    const Stats& stats() const { return stats_; }

  private:
    struct Watcher {
        int clause;
        int blocker;
    };

    static int enc(int lit) { return lit > 0 ? 2 * (lit - 1) : 2 * (-lit - 1) + 1; }
    static int neg(int e) { return e ^ 1; }
    int lit_of(int e) const { return (e & 1) ? -(e / 2 + 1) : e / 2 + 1; }

    bool value_is(int lit, int8_t want) const {
        int v = lit > 0 ? lit : -lit;
        int8_t val = assign_[static_cast<std::size_t>(v)];
        if (val == 0) return false;
        return ((lit > 0) == (val > 0)) == (want > 0);
    }
    int8_t lit_value(int lit) const {
        int v = lit > 0 ? lit : -lit;
        int8_t val = assign_[static_cast<std::size_t>(v)];
        if (val == 0) return 0;
        return ((lit > 0) == (val > 0)) ? 1 : -1;
    }

    void enqueue(int lit);
    bool propagate(); // false on conflict
    bool backtrack(); // false when the root level is exhausted

    int nvars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<Watcher>> watches_; // per encoded literal
    std::vector<int8_t> assign_;                // 0 unassigned, +1 true, -1 false
    std::vector<int> trail_;
    std::size_t qhead_ = 0;

    struct Level {
        int decision_lit;
        std::size_t trail_mark;
        std::size_t order_mark;
        bool flipped;
    };
    std::vector<Level> levels_;

    std::vector<int> order_;
    std::vector<uint8_t> phase_;
    std::vector<uint8_t> model_;
    std::vector<int> root_units_;
    bool root_conflict_ = false;

    Stats stats_;
};

} // namespace domainminer

#endif
