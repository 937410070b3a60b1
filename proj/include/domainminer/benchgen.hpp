#ifndef DOMAINMINER_BENCHGEN_HPP
#define DOMAINMINER_BENCHGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "domainminer/core.hpp"

namespace domainminer {

// Recipe: sample a random policy digraph on m_star domains, blow it up to n
// entities along a balanced assignment (so the assignment is a strong
// homomorphism by construction), then blank a fixed fraction of cells.
// Probabilities are given in permille so instance bytes are identical across
// platforms.
struct GenParams {
    int m_star = 2;
    int n = 10;
    int k = 1;
    unsigned edge_permille = 500;
    unsigned star_permille = 100;
    uint64_t seed = 0;
};

struct GeneratedInstance {
    PartialMatrix psm;
    Digraph truth_summary;     // the sampled policy digraph
    int class_count_upper = 0; // m_star; the optimum may be lower if the
                               // sampled digraph itself summarizes further
};

GeneratedInstance generate(const GenParams& params);

struct InstanceSpec {
    std::string name; // file stem, e.g. "dbpm_m2_n20_r0"
    GenParams params;
    int m_budget = 0; // class budget handed to the miner (2 * m_star)
};

// Deterministic grid plan: every (m_star, n, replicate) gets a seed derived
// from the suite seed, so plans and instances are reproducible piecemeal.
std::vector<InstanceSpec> plan_suite(const std::vector<int>& m_star_set,
                                     const std::vector<int>& n_set, int per_cell, uint64_t seed,
                                     int k = 1, unsigned edge_permille = 500,
                                     unsigned star_permille = 100);

struct ManifestEntry {
    std::string path; // relative to the manifest file
    int m_star = 0;
    int n = 0;
    uint64_t seed = 0;
    int m = 0;
};

// Materialize a plan under dir: one matrix file per instance plus
// "manifest.csv" (columns path,m_star,n,seed,m). Returns the manifest path.
std::string write_suite(const std::vector<InstanceSpec>& plan, const std::string& dir);

std::vector<ManifestEntry> read_manifest(const std::string& path);

} // namespace domainminer

#endif
