#ifndef DOMAINMINER_ENCODE_HPP
#define DOMAINMINER_ENCODE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "domainminer/core.hpp"

namespace domainminer {

// Selectable refinements of the baseline encoding.
//   cc — replace the pairwise at-most-one on class membership by a ladder
//        (exactly-one) encoding; mutually exclusive with nf.
//   nf — drop the at-most-one clauses entirely; optimality makes multiply
//        assigned entities harmless.
//   fm/md — break permutation symmetry by sorting class minima; mutually
//        exclusive with each other.
//   li — break combination symmetry by packing occupied classes into a prefix.
struct EncodingConfig {
    bool cc = false;
    bool nf = false;
    bool fm = false;
    bool md = false;
    bool li = false;
    int m = 1; // class budget

    void validate() const;
    std::string name() const; // "BE", "BE+NF+MD+LI", ...
};

// Parse one of the six benchmark encoding names (BE, BE+CC, BE+NF, BE+NF+FM,
// BE+NF+MD, BE+NF+MD+LI). m is filled in by the caller.
EncodingConfig parse_encoding_name(const std::string& name);
std::vector<std::string> encoding_names();

// Maps solver variables (dense 1..V) to their roles and back.
// Numbering: x block (star cells in canonical order), then y (entity-major),
// then z (class-major, then right), then r, then l (only fm/md), then the
// ladder auxiliaries (only cc, m >= 2).
class VarRegistry {
  public:
    VarRegistry() = default;
    VarRegistry(int n, int k, int m, std::size_t stars, bool with_l, bool with_ladder);

    int var_count() const { return total_; }
    int x_var(std::size_t star_index) const { return 1 + static_cast<int>(star_index); }
    int y_var(int i, int p) const { return y_base_ + i * m_ + p + 1; }
    int z_var(int p, int a, int q) const { return z_base_ + (p * k_ + a) * m_ + q + 1; }
    int r_var(int p) const { return r_base_ + p + 1; }
    int l_var(int i, int p) const { return l_base_ + i * m_ + p + 1; }
    // t in [1, m-1]: prefix indicator "entity i's class index <= t".
    int ladder_var(int i, int t) const { return ladder_base_ + i * (m_ - 1) + t; }

    std::size_t star_count() const { return stars_; }
    bool is_x(int var) const { return var >= 1 && var <= static_cast<int>(stars_); }
    std::size_t star_of(int var) const { return static_cast<std::size_t>(var - 1); }

    // Human-readable role, for diagnostics.
    std::string describe(int var) const;

  private:
    int n_ = 0, k_ = 0, m_ = 0;
    std::size_t stars_ = 0;
    int y_base_ = 0, z_base_ = 0, r_base_ = 0, l_base_ = -1, ladder_base_ = -1, total_ = 0;
    bool with_l_ = false, with_ladder_ = false;
};

using Clause = std::vector<int>; // signed DIMACS-style literals

// A partial MaxSAT instance plus everything needed to decode its models.
struct CnfInstance {
    int var_count = 0;
    std::vector<Clause> hard;
    std::vector<Clause> soft; // uniform weight 1; always the unit clauses (-r_p)
    VarRegistry registry;
    EncodingConfig config;
    PartialMatrix psm{1, 1};
    int n = 0, k = 0;
};

// Build the partial MaxSAT instance for mining a domain-based policy from psm
// with at most config.m classes.
CnfInstance encode(const PartialMatrix& psm, const EncodingConfig& config);

// Closed-form variable/clause counts for the given parameters; encode() must
// match these exactly.
struct EncodingSize {
    long vars;
    long hard_clauses;
    long soft_clauses;
};
EncodingSize predict_size(int n, int k, std::size_t zeros, std::size_t ones, std::size_t stars,
                          const EncodingConfig& config);

// WCNF exchange format: "p wcnf <vars> <clauses> <top>", hard clauses carry
// the top weight (#soft + 1), soft clauses carry weight 1.
void write_wcnf(const CnfInstance& inst, std::ostream& out);
void write_wcnf_file(const CnfInstance& inst, const std::string& path);

// A WCNF file read back in: hard clauses are those carrying the top weight.
struct WcnfFile {
    int var_count = 0;
    std::vector<Clause> hard;
    std::vector<Clause> soft;
};
WcnfFile read_wcnf(std::istream& in);
WcnfFile read_wcnf_file(const std::string& path);

// Truth assignment over variables 1..V; index 0 unused.
using Assignment = std::vector<uint8_t>;

// Parse the 'v' lines of a MaxSAT solver's output (signed literal lists or a
// 0/1 string) into an assignment over 1..var_count.
Assignment read_model(std::istream& in, int var_count);
Assignment read_model_file(const std::string& path, int var_count);

struct DecodeResult {
    Digraph instantiation;
    DomainPolicy policy;
    int occupied_count = 0;
};

// Rebuild the chosen instantiation and policy from a hard-satisfying
// assignment, then verify enforcement. Fails hard on any inconsistency.
DecodeResult decode(const CnfInstance& inst, const Assignment& assignment);

bool hard_clauses_satisfied(const CnfInstance& inst, const Assignment& assignment);

// Default class budget when the caller supplies none: the smaller class count
// of the all-zeros and all-ones instantiations (a sound upper bound, since the
// optimum is witnessed at or below any concrete instantiation's class count).
int default_class_budget(const PartialMatrix& psm);

} // namespace domainminer

#endif
