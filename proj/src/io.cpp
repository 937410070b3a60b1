#include "domainminer/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace domainminer {

namespace {

// Strip comments and surrounding whitespace; returns false for blank lines.
bool significant(std::string& line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return false;
    auto last = line.find_last_not_of(" \t\r\n");
    line = line.substr(first, last - first + 1);
    return true;
}

long parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw ParseError("bad integer '" + tok + "'", line_no);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("bad integer '" + tok + "'", line_no);
    }
}

} // namespace

PartialMatrix read_matrix(std::istream& in) {
    std::string line;
    int line_no = 0;

    // Header.
    std::vector<std::string> head;
    while (std::getline(in, line)) {
        ++line_no;
        if (!significant(line)) continue;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) head.push_back(tok);
        break;
    }
    if (head.size() != 3 || head[0] != "psm")
        throw ParseError("expected header 'psm <n> <k>'", line_no);
    long n = parse_int(head[1], line_no);
    long k = parse_int(head[2], line_no);
    if (n < 1) throw ParseError("entity count must be at least 1", line_no);
    if (k < 1) throw ParseError("right count must be at least 1", line_no);

    PartialMatrix psm(static_cast<int>(n), static_cast<int>(k), Cell::Star);
    std::vector<bool> seen(psm.cell_count(), false);
    bool default_star = false;
    bool first_body_line = true;
    std::size_t listed = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!significant(line)) continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);

        if (first_body_line && tok.size() == 2 && tok[0] == "default") {
            if (tok[1] != "*") throw ParseError("only 'default *' is supported", line_no);
            default_star = true;
            first_body_line = false;
            continue;
        }
        first_body_line = false;

        if (tok[0] == "name") {
            if (tok.size() != 4) throw ParseError("expected 'name entity|right <index> <label>'", line_no);
            long idx = parse_int(tok[2], line_no);
            if (tok[1] == "entity") {
                if (idx < 0 || idx >= n) throw ParseError("entity index out of range", line_no);
                psm.entity_names.resize(static_cast<std::size_t>(n));
                psm.entity_names[static_cast<std::size_t>(idx)] = tok[3];
            } else if (tok[1] == "right") {
                if (idx < 0 || idx >= k) throw ParseError("right index out of range", line_no);
                psm.right_names.resize(static_cast<std::size_t>(k));
                psm.right_names[static_cast<std::size_t>(idx)] = tok[3];
            } else {
                throw ParseError("expected 'name entity' or 'name right'", line_no);
            }
            continue;
        }

        if (tok.size() != 4) throw ParseError("expected '<u> <a> <v> <0|1|*>'", line_no);
        long u = parse_int(tok[0], line_no);
        long a = parse_int(tok[1], line_no);
        long v = parse_int(tok[2], line_no);
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("entity index out of range", line_no);
        if (a < 0 || a >= k) throw ParseError("right index out of range", line_no);
        Cell c;
        if (tok[3] == "0") c = Cell::Zero;
        else if (tok[3] == "1") c = Cell::One;
        else if (tok[3] == "*") c = Cell::Star;
        else throw ParseError("cell value must be 0, 1 or *", line_no);

        std::size_t idx = psm.index(static_cast<int>(u), static_cast<int>(a), static_cast<int>(v));
        if (seen[idx]) throw ParseError("duplicate cell", line_no);
        seen[idx] = true;
        ++listed;
        psm.set_flat(idx, c);
    }

    if (!default_star && listed != psm.cell_count())
        throw ParseError("matrix listing is not exhaustive (" + std::to_string(listed) + " of " +
                         std::to_string(psm.cell_count()) + " cells; add 'default *' to allow gaps)");
    auto all_empty = [](const std::vector<std::string>& v) {
        for (const auto& s : v)
            if (!s.empty()) return false;
        return true;
    };
    if (all_empty(psm.entity_names)) psm.entity_names.clear();
    if (all_empty(psm.right_names)) psm.right_names.clear();
    return psm;
}

PartialMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_matrix(in);
}

void write_matrix(const PartialMatrix& psm, std::ostream& out) {
    out << "psm " << psm.entity_count() << ' ' << psm.right_count() << '\n';
    out << "default *\n";
    for (std::size_t i = 0; i < psm.entity_names.size(); ++i)
        if (!psm.entity_names[i].empty()) out << "name entity " << i << ' ' << psm.entity_names[i] << '\n';
    for (std::size_t i = 0; i < psm.right_names.size(); ++i)
        if (!psm.right_names[i].empty()) out << "name right " << i << ' ' << psm.right_names[i] << '\n';
    for (std::size_t i = 0; i < psm.cell_count(); ++i) {
        Cell c = psm.at_flat(i);
        if (c == Cell::Star) continue;
        Triple t = psm.unflatten(i);
        out << t.u << ' ' << t.a << ' ' << t.v << ' ' << (c == Cell::One ? '1' : '0') << '\n';
    }
}

void write_matrix_file(const PartialMatrix& psm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_matrix(psm, out);
    if (!out) throw ParseError("write to '" + path + "' failed");
}

std::string policy_to_json(const DomainPolicy& policy, int indent) {
    nlohmann::json j;
    j["domains"] = policy.domain_count();
    j["assignment"] = policy.assignment;
    nlohmann::json edges = nlohmann::json::array();
    for (const Triple& e : policy.summary.edges_sorted())
        edges.push_back(nlohmann::json::array({e.u, e.a, e.v}));
    j["summary_edges"] = edges;
    return j.dump(indent);
}

} // namespace domainminer
