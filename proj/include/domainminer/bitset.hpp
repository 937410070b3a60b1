#ifndef DOMAINMINER_BITSET_HPP
#define DOMAINMINER_BITSET_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

namespace domainminer {

// Fixed-size dynamic bitset. Word-level equality makes the O(n) row/column
// comparisons of the equivalence tests cheap.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const Bitset& o) const { return words_ == o.words_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    bool operator<(const Bitset& o) const { return words_ < o.words_; }

    const std::vector<uint64_t>& words() const { return words_; }

  private:
    std::size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace domainminer

#endif
