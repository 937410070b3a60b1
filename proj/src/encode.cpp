#include "domainminer/encode.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "domainminer/summary.hpp"

namespace domainminer {

void EncodingConfig::validate() const {
    if (cc && nf) throw ConfigError("CC and NF are mutually exclusive");
    if (fm && md) throw ConfigError("FM and MD are mutually exclusive");
    if (m < 1) throw ConfigError("class budget must be at least 1");
}

std::string EncodingConfig::name() const {
    std::string s = "BE";
    if (cc) s += "+CC";
    if (nf) s += "+NF";
    if (fm) s += "+FM";
    if (md) s += "+MD";
    if (li) s += "+LI";
    return s;
}

EncodingConfig parse_encoding_name(const std::string& name) {
    EncodingConfig c;
    std::stringstream ss(name);
    std::string part;
    bool first = true;
    while (std::getline(ss, part, '+')) {
        if (first) {
            if (part != "BE") throw ConfigError("unknown encoding '" + name + "'");
            first = false;
        } else if (part == "CC") c.cc = true;
        else if (part == "NF") c.nf = true;
        else if (part == "FM") c.fm = true;
        else if (part == "MD") c.md = true;
        else if (part == "LI") c.li = true;
        else throw ConfigError("unknown encoding '" + name + "'");
    }
    if (first) throw ConfigError("unknown encoding '" + name + "'");
    c.validate();
    return c;
}

std::vector<std::string> encoding_names() {
    return {"BE", "BE+CC", "BE+NF", "BE+NF+FM", "BE+NF+MD", "BE+NF+MD+LI"};
}

VarRegistry::VarRegistry(int n, int k, int m, std::size_t stars, bool with_l, bool with_ladder)
    : n_(n), k_(k), m_(m), stars_(stars), with_l_(with_l), with_ladder_(with_ladder) {
    int next = static_cast<int>(stars);
    y_base_ = next;
    next += n * m;
    z_base_ = next;
    next += m * k * m;
    r_base_ = next;
    next += m;
    if (with_l) {
        l_base_ = next;
        next += n * m;
    }
    if (with_ladder && m >= 2) {
        ladder_base_ = next;
        next += n * (m - 1);
    }
    total_ = next;
}

std::string VarRegistry::describe(int var) const {
    int v = var - 1;
    if (v < static_cast<int>(stars_)) return "x[star " + std::to_string(v) + "]";
    if (v < z_base_) {
        int o = v - y_base_;
        return "y[" + std::to_string(o / m_) + "," + std::to_string(o % m_) + "]";
    }
    if (v < r_base_) {
        int o = v - z_base_;
        return "z[" + std::to_string(o / (k_ * m_)) + "," + std::to_string((o / m_) % k_) + "," +
               std::to_string(o % m_) + "]";
    }
    if (v < r_base_ + m_) return "r[" + std::to_string(v - r_base_) + "]";
    if (with_l_ && v < l_base_ + n_ * m_) {
        int o = v - l_base_;
        return "l[" + std::to_string(o / m_) + "," + std::to_string(o % m_) + "]";
    }
    if (ladder_base_ >= 0 && v < total_) {
        int o = v - ladder_base_;
        return "s[" + std::to_string(o / (m_ - 1)) + "," + std::to_string(o % (m_ - 1) + 1) + "]";
    }
    return "v" + std::to_string(var);
}

CnfInstance encode(const PartialMatrix& psm, const EncodingConfig& config) {
    config.validate();
    const int n = psm.entity_count();
    const int k = psm.right_count();
    const int m = config.m;

    CnfInstance inst;
    inst.config = config;
    inst.psm = psm;
    inst.n = n;
    inst.k = k;
    std::vector<std::size_t> stars = psm.star_cells();
    inst.registry = VarRegistry(n, k, m, stars.size(), config.fm || config.md, config.cc);
    inst.var_count = inst.registry.var_count();
    const VarRegistry& reg = inst.registry;

    auto add = [&](Clause c) {
        // Repeated literals arise when an entity or class index coincides
        // (e.g. diagonal cells); keep the first occurrence.
        Clause dedup;
        for (int lit : c)
            if (std::find(dedup.begin(), dedup.end(), lit) == dedup.end()) dedup.push_back(lit);
        inst.hard.push_back(std::move(dedup));
    };

    // Every entity gets at least one class (under CC this is implied by the
    // ladder below).
    if (!config.cc) {
        for (int i = 0; i < n; ++i) {
            Clause c;
            for (int p = 0; p < m; ++p) c.push_back(reg.y_var(i, p));
            add(std::move(c));
        }
    }

    // At most one class per entity, pairwise. Dropped under NF; replaced by
    // the ladder under CC.
    if (!config.cc && !config.nf) {
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < m; ++p)
                for (int q = p + 1; q < m; ++q)
                    add({-reg.y_var(i, p), -reg.y_var(i, q)});
    }

    // Ladder exactly-one: s[i,t] <-> "entity i's class index <= t", with the
    // class membership read off the unique step position.
    if (config.cc) {
        for (int i = 0; i < n; ++i) {
            if (m == 1) {
                add({reg.y_var(i, 0)});
                continue;
            }
            for (int t = 1; t <= m - 2; ++t)
                add({-reg.ladder_var(i, t), reg.ladder_var(i, t + 1)});
            for (int t = 1; t <= m - 1; ++t)
                add({-reg.y_var(i, t - 1), reg.ladder_var(i, t)});
            for (int t = 2; t <= m; ++t)
                add({-reg.y_var(i, t - 1), -reg.ladder_var(i, t - 1)});
            add({-reg.ladder_var(i, 1), reg.y_var(i, 0)});
            for (int t = 2; t <= m - 1; ++t)
                add({-reg.ladder_var(i, t), reg.ladder_var(i, t - 1), reg.y_var(i, t - 1)});
            add({reg.ladder_var(i, m - 1), reg.y_var(i, m - 1)});
        }
    }

    // Class-edge consistency: whichever classes two entities land in, the
    // class edge must mirror the cell value (Star cells mirror their fill
    // variable, which ties the instantiation to the policy).
    std::size_t star_idx = 0;
    for (std::size_t cell = 0; cell < psm.cell_count(); ++cell) {
        Cell value = psm.at_flat(cell);
        Triple t = psm.unflatten(cell);
        int x = 0;
        if (value == Cell::Star) x = reg.x_var(star_idx++);
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) {
                int yu = reg.y_var(t.u, p);
                int yv = reg.y_var(t.v, q);
                int z = reg.z_var(p, t.a, q);
                switch (value) {
                    case Cell::Zero: add({-yu, -yv, -z}); break;
                    case Cell::One: add({-yu, -yv, z}); break;
                    case Cell::Star:
                        add({-yu, -yv, x, -z});
                        add({-yu, -yv, -x, z});
                        break;
                }
            }
    }

    // Classes with members are occupied.
    for (int i = 0; i < n; ++i)
        for (int p = 0; p < m; ++p) add({-reg.y_var(i, p), reg.r_var(p)});

    if (config.fm || config.md) {
        // Minima of occupied classes appear in strictly increasing entity
        // order across class indices.
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j <= i; ++j)
                        add({-reg.l_var(i, p), -reg.l_var(j, q)});
        // A min is the least member of its class.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int p = 0; p < m; ++p)
                    add({-reg.y_var(i, p), -reg.l_var(j, p)});
        // A min is a member of its class.
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < m; ++p) add({-reg.l_var(i, p), reg.y_var(i, p)});
    }
    if (config.fm) {
        // Every member is preceded (or equalled) by a min.
        for (int i = 0; i < n; ++i)
            for (int p = 0; p < m; ++p) {
                Clause c{-reg.y_var(i, p)};
                for (int j = 0; j <= i; ++j) c.push_back(reg.l_var(j, p));
                add(std::move(c));
            }
    }
    if (config.md) {
        // Every occupied class has a min.
        for (int p = 0; p < m; ++p) {
            Clause c{-reg.r_var(p)};
            for (int i = 0; i < n; ++i) c.push_back(reg.l_var(i, p));
            add(std::move(c));
        }
    }
    if (config.li) {
        // Occupied classes form a prefix.
        for (int p = 0; p + 1 < m; ++p) add({reg.r_var(p), -reg.r_var(p + 1)});
    }

    // Soft: prefer unoccupied classes.
    for (int p = 0; p < m; ++p) inst.soft.push_back({-reg.r_var(p)});
    return inst;
}

EncodingSize predict_size(int n, int k, std::size_t zeros, std::size_t ones, std::size_t stars,
                          const EncodingConfig& config) {
    config.validate();
    const long N = n, M = config.m, K = k;
    EncodingSize s{};
    s.vars = static_cast<long>(stars) + N * M + M * K * M + M;
    if (config.fm || config.md) s.vars += N * M;
    if (config.cc && M >= 2) s.vars += N * (M - 1);

    long hard = 0;
    if (!config.cc) hard += N;                                // at least one
    if (!config.cc && !config.nf) hard += N * M * (M - 1) / 2; // at most one
    if (config.cc) hard += (M == 1) ? N : N * (4 * M - 4);     // ladder
    hard += static_cast<long>(zeros + ones) * M * M;           // fixed cells
    hard += 2 * static_cast<long>(stars) * M * M;              // star cells
    hard += N * M;                                             // occupied markers
    if (config.fm || config.md) {
        hard += (M * (M - 1) / 2) * (N * (N + 1) / 2); // sorted minima
        hard += (N * (N - 1) / 2) * M;                 // min is least
        hard += N * M;                                 // min is member
    }
    if (config.fm) hard += N * M;
    if (config.md) hard += M;
    if (config.li) hard += M - 1;
    s.hard_clauses = hard;
    s.soft_clauses = M;
    return s;
}

void write_wcnf(const CnfInstance& inst, std::ostream& out) {
    const long top = static_cast<long>(inst.soft.size()) + 1;
    out << "c dbpm " << inst.config.name() << " n=" << inst.n << " k=" << inst.k
        << " m=" << inst.config.m << '\n';
    out << "p wcnf " << inst.var_count << ' ' << inst.hard.size() + inst.soft.size() << ' ' << top
        << '\n';
    for (const Clause& c : inst.hard) {
        out << top;
        for (int lit : c) out << ' ' << lit;
        out << " 0\n";
    }
    for (const Clause& c : inst.soft) {
        out << 1;
        for (int lit : c) out << ' ' << lit;
        out << " 0\n";
    }
}

void write_wcnf_file(const CnfInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_wcnf(inst, out);
    if (!out) throw ParseError("write to '" + path + "' failed");
}

WcnfFile read_wcnf(std::istream& in) {
    WcnfFile file;
    long top = -1, declared_clauses = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            long vars = 0;
            if (!(ss >> p >> fmt >> vars >> declared_clauses >> top) || fmt != "wcnf")
                throw ParseError("expected 'p wcnf <vars> <clauses> <top>'", line_no);
            file.var_count = static_cast<int>(vars);
            continue;
        }
        if (top < 0) throw ParseError("clause before 'p wcnf' header", line_no);
        long weight;
        if (!(ss >> weight)) throw ParseError("missing clause weight", line_no);
        Clause c;
        long lit;
        bool terminated = false;
        while (ss >> lit) {
            if (lit == 0) {
                terminated = true;
                break;
            }
            long var = lit > 0 ? lit : -lit;
            if (var > file.var_count) throw ParseError("literal out of range", line_no);
            c.push_back(static_cast<int>(lit));
        }
        if (!terminated) throw ParseError("clause not terminated by 0", line_no);
        if (weight == top) file.hard.push_back(std::move(c));
        else if (weight == 1) file.soft.push_back(std::move(c));
        else throw ParseError("only unit-weight soft clauses are supported", line_no);
    }
    if (top < 0) throw ParseError("missing 'p wcnf' header");
    if (declared_clauses >= 0 &&
        declared_clauses != static_cast<long>(file.hard.size() + file.soft.size()))
        throw ParseError("clause count disagrees with header");
    return file;
}

WcnfFile read_wcnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_wcnf(in);
}

Assignment read_model(std::istream& in, int var_count) {
    std::vector<std::string> tokens;
    bool saw_v = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != 'v') continue;
        saw_v = true;
        std::istringstream ss(line.substr(1));
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
    }
    if (!saw_v) throw SolverError("solver output has no model ('v') line");

    Assignment a(static_cast<std::size_t>(var_count) + 1, 0);
    // Newer solvers print the whole assignment as one 0/1 string; otherwise
    // the tokens are signed literals.
    bool binary = tokens.size() == 1 && tokens[0].size() == static_cast<std::size_t>(var_count) &&
                  var_count > 1 &&
                  std::all_of(tokens[0].begin(), tokens[0].end(),
                              [](char c) { return c == '0' || c == '1'; });
    if (binary) {
        for (std::size_t i = 0; i < tokens[0].size(); ++i) a[i + 1] = tokens[0][i] == '1';
        return a;
    }
    for (const std::string& tok : tokens) {
        long lit;
        try {
            std::size_t pos = 0;
            lit = std::stol(tok, &pos);
            if (pos != tok.size()) throw SolverError("bad token");
        } catch (...) {
            throw SolverError("bad token '" + tok + "' in model line");
        }
        if (lit == 0) continue;
        long var = lit > 0 ? lit : -lit;
        if (var > var_count)
            throw SolverError("model references unknown variable " + std::to_string(var));
        a[static_cast<std::size_t>(var)] = lit > 0;
    }
    return a;
}

Assignment read_model_file(const std::string& path, int var_count) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_model(in, var_count);
}

namespace {

bool clause_satisfied(const Clause& c, const Assignment& a) {
    for (int lit : c) {
        std::size_t v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
        if ((lit > 0) == (a[v] != 0)) return true;
    }
    return false;
}

} // namespace

bool hard_clauses_satisfied(const CnfInstance& inst, const Assignment& assignment) {
    for (const Clause& c : inst.hard)
        if (!clause_satisfied(c, assignment)) return false;
    return true;
}

DecodeResult decode(const CnfInstance& inst, const Assignment& assignment) {
    if (assignment.size() != static_cast<std::size_t>(inst.var_count) + 1)
        throw ArityError("assignment length does not match variable count");
    if (!hard_clauses_satisfied(inst, assignment))
        throw IntegrityError("assignment violates a hard clause");

    const VarRegistry& reg = inst.registry;
    const int n = inst.n;
    const int k = inst.k;
    const int m = inst.config.m;

    // Instantiation: copy fixed cells, read Star cells off their x variables.
    std::vector<bool> fill;
    fill.reserve(reg.star_count());
    for (std::size_t s = 0; s < reg.star_count(); ++s)
        fill.push_back(assignment[static_cast<std::size_t>(reg.x_var(s))] != 0);
    Digraph inst_graph = instantiate(inst.psm, fill);

    // Classes marked occupied, renumbered densely in index order.
    std::vector<int> occupied;
    std::vector<int> domain_of_class(static_cast<std::size_t>(m), -1);
    for (int p = 0; p < m; ++p)
        if (assignment[static_cast<std::size_t>(reg.r_var(p))]) {
            domain_of_class[static_cast<std::size_t>(p)] = static_cast<int>(occupied.size());
            occupied.push_back(p);
        }

    // Assignment: the lowest class an entity belongs to. Under NF an entity
    // may belong to several; any of them is valid and lowest is deterministic.
    std::vector<int> pi(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int p = 0; p < m; ++p)
            if (assignment[static_cast<std::size_t>(reg.y_var(i, p))]) {
                pi[static_cast<std::size_t>(i)] = p;
                break;
            }
        if (pi[static_cast<std::size_t>(i)] < 0)
            throw IntegrityError("entity " + std::to_string(i) + " has no class in the model");
        if (domain_of_class[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] < 0)
            throw IntegrityError("entity " + std::to_string(i) + " assigned to an unoccupied class");
    }

    // Summary digraph over occupied classes only.
    std::vector<Triple> edges;
    for (std::size_t p = 0; p < occupied.size(); ++p)
        for (int a = 0; a < k; ++a)
            for (std::size_t q = 0; q < occupied.size(); ++q)
                if (assignment[static_cast<std::size_t>(reg.z_var(occupied[p], a, occupied[q]))])
                    edges.push_back(Triple{static_cast<int>(p), a, static_cast<int>(q)});

    DomainPolicy policy{Digraph(std::max<int>(1, static_cast<int>(occupied.size())), k, edges), {}};
    policy.assignment.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        policy.assignment[static_cast<std::size_t>(i)] =
            domain_of_class[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];

    if (!enforces(policy, inst_graph)) {
        // Name one violated triple for the error message.
        for (int u = 0; u < n; ++u)
            for (int a = 0; a < k; ++a)
                for (int v = 0; v < n; ++v)
                    if (inst_graph.has(u, a, v) !=
                        policy.summary.has(policy.assignment[u], a, policy.assignment[v]))
                        throw IntegrityError("decoded policy disagrees with instantiation at (" +
                                             std::to_string(u) + "," + std::to_string(a) + "," +
                                             std::to_string(v) + ")");
        throw IntegrityError("decoded policy does not enforce the instantiation");
    }
    return DecodeResult{std::move(inst_graph), std::move(policy), static_cast<int>(occupied.size())};
}

int default_class_budget(const PartialMatrix& psm) {
    std::size_t stars = psm.star_count();
    std::vector<bool> zeros(stars, false), ones(stars, true);
    int c0 = summarize(instantiate(psm, zeros)).partition.class_count();
    int c1 = summarize(instantiate(psm, ones)).partition.class_count();
    return std::min(c0, c1);
}

} // namespace domainminer
