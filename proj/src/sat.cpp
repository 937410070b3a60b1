#include "domainminer/sat.hpp"

#include <algorithm>

namespace domainminer {

SatSolver::SatSolver(int var_count)
    : nvars_(var_count),
      watches_(static_cast<std::size_t>(2) * var_count),
      assign_(static_cast<std::size_t>(var_count) + 1, 0),
      phase_(static_cast<std::size_t>(var_count) + 1, 0) {}

int SatSolver::new_var() {
    ++nvars_;
    watches_.emplace_back();
    watches_.emplace_back();
    assign_.push_back(0);
    phase_.push_back(0);
    return nvars_;
}

bool SatSolver::add_clause(const std::vector<int>& lits) {
    std::vector<int> c(lits);
    std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i] == -c[i + 1]) return true; // tautology
    if (c.empty()) {
        root_conflict_ = true;
        return false;
    }
    if (c.size() == 1) {
        root_units_.push_back(c[0]);
        return true;
    }
    int id = static_cast<int>(clauses_.size());
    clauses_.push_back(c);
    watches_[static_cast<std::size_t>(enc(c[0]))].push_back({id, c[1]});
    watches_[static_cast<std::size_t>(enc(c[1]))].push_back({id, c[0]});
    return true;
}

void SatSolver::set_branch_order(const std::vector<int>& order) {
    std::vector<uint8_t> listed(static_cast<std::size_t>(nvars_) + 1, 0);
    order_.clear();
    order_.reserve(static_cast<std::size_t>(nvars_));
    for (int v : order) {
        if (v >= 1 && v <= nvars_ && !listed[static_cast<std::size_t>(v)]) {
            order_.push_back(v);
            listed[static_cast<std::size_t>(v)] = 1;
        }
    }
    for (int v = 1; v <= nvars_; ++v)
        if (!listed[static_cast<std::size_t>(v)]) order_.push_back(v);
}

void SatSolver::set_phase(int var, bool value) { phase_[static_cast<std::size_t>(var)] = value ? 1 : 0; }

void SatSolver::enqueue(int lit) {
    int v = lit > 0 ? lit : -lit;
    assign_[static_cast<std::size_t>(v)] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
}

bool SatSolver::propagate() {
    while (qhead_ < trail_.size()) {
        int lit = trail_[qhead_++];
        ++stats_.propagations;
        int false_enc = enc(-lit); // watchers of -lit must be visited
        std::vector<Watcher>& ws = watches_[static_cast<std::size_t>(false_enc)];
        std::size_t keep = 0;
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Watcher w = ws[wi];
            if (lit_value(w.blocker) == 1) {
                ws[keep++] = w;
                continue;
            }
            std::vector<int>& c = clauses_[static_cast<std::size_t>(w.clause)];
            // Ensure c[0] is the other watched literal.
            if (c[0] == -lit) std::swap(c[0], c[1]);
            if (lit_value(c[0]) == 1) {
                ws[keep++] = {w.clause, c[0]};
                continue;
            }
            bool moved = false;
            for (std::size_t t = 2; t < c.size(); ++t) {
                if (lit_value(c[t]) != -1) {
                    std::swap(c[1], c[t]);
                    watches_[static_cast<std::size_t>(enc(c[1]))].push_back({w.clause, c[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Clause is unit or conflicting on c[0].
            ws[keep++] = w;
            if (lit_value(c[0]) == -1) {
                for (std::size_t rest = wi + 1; rest < ws.size(); ++rest) ws[keep++] = ws[rest];
                ws.resize(keep);
                return false;
            }
            enqueue(c[0]);
        }
        ws.resize(keep);
    }
    return true;
}

bool SatSolver::backtrack() {
    while (!levels_.empty()) {
        Level lv = levels_.back();
        levels_.pop_back();
        for (std::size_t t = trail_.size(); t > lv.trail_mark; --t) {
            int lit = trail_[t - 1];
            assign_[static_cast<std::size_t>(lit > 0 ? lit : -lit)] = 0;
        }
        trail_.resize(lv.trail_mark);
        qhead_ = lv.trail_mark;
        if (!lv.flipped) {
            levels_.push_back({-lv.decision_lit, lv.trail_mark, lv.order_mark, true});
            enqueue(-lv.decision_lit);
            return true;
        }
    }
    return false;
}

SatSolver::Result SatSolver::solve(std::optional<std::chrono::steady_clock::time_point> deadline) {
    if (root_conflict_) return Result::Unsat;
    if (order_.empty()) set_branch_order({});
    trail_.clear();
    qhead_ = 0;
    levels_.clear();
    std::fill(assign_.begin(), assign_.end(), 0);
    for (int lit : root_units_) {
        int8_t val = lit_value(lit);
        if (val == -1) return Result::Unsat;
        if (val == 0) enqueue(lit);
    }

    uint64_t steps = 0;
    std::size_t order_pos = 0;
    for (;;) {
        if (deadline && (++steps & 1023) == 0 &&
            std::chrono::steady_clock::now() >= *deadline)
            return Result::Timeout;
        if (!propagate()) {
            if (!backtrack()) return Result::Unsat;
            if (!levels_.empty()) order_pos = levels_.back().order_mark;
            continue;
        }
        // Pick the next unassigned variable in branch order.
        std::size_t pos = order_pos;
        while (pos < order_.size() && assign_[static_cast<std::size_t>(order_[pos])] != 0) ++pos;
        order_pos = pos;
        if (pos == order_.size()) {
            model_.assign(static_cast<std::size_t>(nvars_) + 1, 0);
            for (int v = 1; v <= nvars_; ++v) model_[static_cast<std::size_t>(v)] = assign_[static_cast<std::size_t>(v)] > 0;
            return Result::Sat;
        }
        int var = order_[pos];
        int lit = phase_[static_cast<std::size_t>(var)] ? var : -var;
        ++stats_.decisions;
        levels_.push_back({lit, trail_.size(), pos, false});
        enqueue(lit);
    }
}

} // namespace domainminer
