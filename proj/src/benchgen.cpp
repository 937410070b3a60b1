#include "domainminer/benchgen.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "domainminer/io.hpp"
#include "domainminer/rng.hpp"

namespace domainminer {

GeneratedInstance generate(const GenParams& params) {
    if (params.m_star < 1 || params.m_star > params.n)
        throw ArityError("m_star must be in [1, n]");
    if (params.k < 1) throw ArityError("k must be at least 1");
    if (params.edge_permille > 1000 || params.star_permille > 1000)
        throw ArityError("probabilities are permille values in [0, 1000]");

    const int m = params.m_star;
    const int n = params.n;
    const int k = params.k;
    Rng rng = Rng::keyed({params.seed, static_cast<uint64_t>(m), static_cast<uint64_t>(n),
                          static_cast<uint64_t>(k), params.edge_permille, params.star_permille});

    // Policy digraph on the domains.
    std::vector<Triple> h_edges;
    for (int p = 0; p < m; ++p)
        for (int a = 0; a < k; ++a)
            for (int q = 0; q < m; ++q)
                if (rng.chance_permille(params.edge_permille)) h_edges.push_back(Triple{p, a, q});
    Digraph h(m, k, h_edges);

    // Balanced assignment, then edge replication along it.
    std::vector<int> pi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i % m;
    std::vector<Triple> g_edges;
    for (int u = 0; u < n; ++u)
        for (int a = 0; a < k; ++a)
            for (int v = 0; v < n; ++v)
                if (h.has(pi[static_cast<std::size_t>(u)], a, pi[static_cast<std::size_t>(v)]))
                    g_edges.push_back(Triple{u, a, v});
    Digraph g(n, k, g_edges);
    if (!enforces(DomainPolicy{h, pi}, g))
        throw IntegrityError("replicated digraph does not follow the sampled policy");

    // Blank a fixed number of distinct cells, sampled without replacement
    // (partial Fisher-Yates over the whole cube).
    PartialMatrix psm = PartialMatrix::from_digraph(g);
    const uint64_t cells = static_cast<uint64_t>(n) * k * n;
    const uint64_t blanks = cells * params.star_permille / 1000;
    std::unordered_map<uint64_t, uint64_t> moved;
    auto slot = [&](uint64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    for (uint64_t i = 0; i < blanks; ++i) {
        uint64_t j = i + rng.below(cells - i);
        uint64_t pick = slot(j);
        moved[j] = slot(i);
        psm.set_flat(static_cast<std::size_t>(pick), Cell::Star);
    }
    return GeneratedInstance{std::move(psm), std::move(h), m};
}

std::vector<InstanceSpec> plan_suite(const std::vector<int>& m_star_set,
                                     const std::vector<int>& n_set, int per_cell, uint64_t seed,
                                     int k, unsigned edge_permille, unsigned star_permille) {
    if (per_cell < 1) throw ArityError("per_cell must be at least 1");
    std::vector<InstanceSpec> plan;
    for (int m_star : m_star_set)
        for (int n : n_set)
            for (int rep = 0; rep < per_cell; ++rep) {
                InstanceSpec spec;
                spec.params.m_star = m_star;
                spec.params.n = n;
                spec.params.k = k;
                spec.params.edge_permille = edge_permille;
                spec.params.star_permille = star_permille;
                spec.params.seed = Rng::keyed({seed, static_cast<uint64_t>(m_star),
                                               static_cast<uint64_t>(n),
                                               static_cast<uint64_t>(rep)})
                                       .next_u64();
                spec.m_budget = 2 * m_star;
                spec.name = "dbpm_m" + std::to_string(m_star) + "_n" + std::to_string(n) + "_r" +
                            std::to_string(rep);
                plan.push_back(std::move(spec));
            }
    return plan;
}

std::string write_suite(const std::vector<InstanceSpec>& plan, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string manifest_path = dir + "/manifest.csv";
    std::ofstream manifest(manifest_path);
    if (!manifest) throw ParseError("cannot open '" + manifest_path + "' for writing");
    manifest << "path,m_star,n,seed,m\n";
    for (const InstanceSpec& spec : plan) {
        GeneratedInstance inst = generate(spec.params);
        std::string rel = spec.name + ".psm";
        write_matrix_file(inst.psm, dir + "/" + rel);
        manifest << rel << ',' << spec.params.m_star << ',' << spec.params.n << ','
                 << spec.params.seed << ',' << spec.m_budget << '\n';
    }
    return manifest_path;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "path,m_star,n,seed,m") continue;
        std::stringstream ss(line);
        ManifestEntry e;
        std::string field;
        try {
            std::getline(ss, e.path, ',');
            std::getline(ss, field, ',');
            e.m_star = std::stoi(field);
            std::getline(ss, field, ',');
            e.n = std::stoi(field);
            std::getline(ss, field, ',');
            e.seed = std::stoull(field);
            std::getline(ss, field, ',');
            e.m = std::stoi(field);
        } catch (...) {
            throw ParseError("bad manifest row", line_no);
        }
        if (e.path.empty()) throw ParseError("bad manifest row", line_no);
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace domainminer
