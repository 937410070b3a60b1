#include "domainminer/oracle.hpp"

#include <algorithm>

#include "domainminer/bitset.hpp"

namespace domainminer {
namespace oracle {

namespace {

// Mutable matrix with row and column bitsets; fills are applied as single-cell
// flips so Gray-code enumeration touches one bit per step. The equivalence
// logic below is deliberately written against this view and shares no code
// with the library's summarization path.
class MatrixView {
  public:
    explicit MatrixView(const PartialMatrix& psm)
        : n_(psm.entity_count()), k_(psm.right_count()),
          rows_(static_cast<std::size_t>(n_) * k_, Bitset(static_cast<std::size_t>(n_))),
          cols_(static_cast<std::size_t>(n_) * k_, Bitset(static_cast<std::size_t>(n_))) {
        for (int u = 0; u < n_; ++u)
            for (int a = 0; a < k_; ++a)
                for (int v = 0; v < n_; ++v)
                    if (psm.at(u, a, v) == Cell::One) set(u, a, v, true);
    }

    void set(int u, int a, int v, bool bit) {
        rows_[static_cast<std::size_t>(u) * k_ + a].assign(static_cast<std::size_t>(v), bit);
        cols_[static_cast<std::size_t>(v) * k_ + a].assign(static_cast<std::size_t>(u), bit);
    }
    void flip(int u, int a, int v) {
        rows_[static_cast<std::size_t>(u) * k_ + a].flip(static_cast<std::size_t>(v));
        cols_[static_cast<std::size_t>(v) * k_ + a].flip(static_cast<std::size_t>(u));
    }
    bool get(int u, int a, int v) const {
        return rows_[static_cast<std::size_t>(u) * k_ + a].test(static_cast<std::size_t>(v));
    }

    bool rows_equal(int u, int v) const {
        for (int a = 0; a < k_; ++a)
            if (rows_[static_cast<std::size_t>(u) * k_ + a] != rows_[static_cast<std::size_t>(v) * k_ + a])
                return false;
        return true;
    }
    bool cols_equal(int u, int v) const {
        for (int a = 0; a < k_; ++a)
            if (cols_[static_cast<std::size_t>(u) * k_ + a] != cols_[static_cast<std::size_t>(v) * k_ + a])
                return false;
        return true;
    }

    // Entities merge when the four cells among them agree per right and they
    // relate identically to everyone else.
    bool merged(int u, int v) const {
        for (int a = 0; a < k_; ++a) {
            bool uu = get(u, a, u);
            if (get(u, a, v) != uu || get(v, a, u) != uu || get(v, a, v) != uu) return false;
            for (int x = 0; x < n_; ++x) {
                if (x == u || x == v) continue;
                if (get(u, a, x) != get(v, a, x)) return false;
                if (get(x, a, u) != get(x, a, v)) return false;
            }
        }
        return true;
    }

    template <typename Eq>
    int first_fit_classes(Eq&& eq) const {
        std::vector<int> reps;
        for (int u = 0; u < n_; ++u) {
            bool found = false;
            for (int rep : reps)
                if (eq(rep, u)) {
                    found = true;
                    break;
                }
            if (!found) reps.push_back(u);
        }
        return static_cast<int>(reps.size());
    }

    int equivalence_classes() const {
        return first_fit_classes([this](int a, int b) { return merged(a, b); });
    }
    int distinct_rows() const {
        return first_fit_classes([this](int a, int b) { return rows_equal(a, b); });
    }
    int distinct_cols() const {
        return first_fit_classes([this](int a, int b) { return cols_equal(a, b); });
    }

  private:
    int n_, k_;
    std::vector<Bitset> rows_, cols_;
};

template <typename Score>
int minimize_over_fills(const PartialMatrix& psm, Score&& score) {
    std::vector<std::size_t> stars = psm.star_cells();
    if (stars.size() > static_cast<std::size_t>(kMaxStars))
        throw SizeLimitError("fill enumeration limited to " + std::to_string(kMaxStars) +
                             " unspecified cells (instance has " + std::to_string(stars.size()) +
                             ")");
    if (psm.entity_count() > kMaxEntities)
        throw SizeLimitError("fill enumeration limited to " + std::to_string(kMaxEntities) +
                             " entities");

    MatrixView view(psm); // all stars start at 0
    int best = score(view);
    const uint64_t total = uint64_t(1) << stars.size();
    for (uint64_t step = 1; step < total; ++step) {
        // Gray code: step c flips the bit at the lowest set position of c.
        int bit = __builtin_ctzll(step);
        Triple t = psm.unflatten(stars[static_cast<std::size_t>(bit)]);
        view.flip(t.u, t.a, t.v);
        best = std::min(best, score(view));
    }
    return best;
}

} // namespace

int dbpm_optimum(const PartialMatrix& psm) {
    return minimize_over_fills(psm, [](const MatrixView& m) { return m.equivalence_classes(); });
}

int db_optimum(const PartialMatrix& psm) {
    return minimize_over_fills(psm, [](const MatrixView& m) { return m.distinct_rows(); });
}

int dtepm_optimum(const PartialMatrix& psm) {
    return minimize_over_fills(
        psm, [](const MatrixView& m) { return std::max(m.distinct_rows(), m.distinct_cols()); });
}

} // namespace oracle
} // namespace domainminer
