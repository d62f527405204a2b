#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mn {

/// Binomial coefficient over machine integers; returns 0 when k > n.
/// Throws std::overflow_error if the value does not fit in 64 bits.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at every step
        if (r > UINT64_MAX) throw std::overflow_error("binom: result overflow");
    }
    return static_cast<std::uint64_t>(r);
}

/// Window of ground elements 0..N-1 together with the arity n of the
/// structure built over it.
struct GroundWindow {
    int size;   // N
    int arity;  // n

    GroundWindow(int N, int n) : size(N), arity(n) {
        if (n < 2) throw std::invalid_argument("GroundWindow: arity must be >= 2");
        if (N < n + 2) throw std::invalid_argument("GroundWindow: size must be >= arity + 2");
    }
};

/// Strictly increasing sequence of ground elements in [0, N).
struct KSubset {
    std::vector<int> elems;

    KSubset() = default;
    explicit KSubset(std::vector<int> e) : elems(std::move(e)) {
        for (std::size_t i = 0; i + 1 < elems.size(); ++i)
            if (elems[i] >= elems[i + 1])
                throw std::invalid_argument("KSubset: elements must be strictly increasing");
        if (!elems.empty() && elems.front() < 0)
            throw std::invalid_argument("KSubset: negative element");
    }

    int k() const { return static_cast<int>(elems.size()); }
    bool contains(int x) const {
        for (int e : elems) if (e == x) return true;
        return false;
    }
    bool subset_of(const KSubset& o) const {
        std::size_t j = 0;
        for (int e : elems) {
            while (j < o.elems.size() && o.elems[j] < e) ++j;
            if (j == o.elems.size() || o.elems[j] != e) return false;
        }
        return true;
    }
    bool operator==(const KSubset& o) const { return elems == o.elems; }
    bool operator<(const KSubset& o) const { return elems < o.elems; }
};

/// Colexicographic rank of a k-subset among all k-subsets of {0..N-1}.
/// Independent of N: growing the window appends new subsets at the end.
inline std::uint64_t rank_colex(const KSubset& w) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < w.elems.size(); ++i)
        r += binom(static_cast<std::uint64_t>(w.elems[i]), i + 1);
    return r;
}

/// Inverse of rank_colex. Requires r < binom(N, k).
inline KSubset unrank_colex(std::uint64_t r, int k, int N) {
    if (k < 0 || N < 0 || static_cast<std::uint64_t>(k) > static_cast<std::uint64_t>(N))
        throw std::invalid_argument("unrank_colex: bad k or N");
    if (r >= binom(N, k))
        throw std::out_of_range("unrank_colex: rank out of range");
    std::vector<int> elems(k);
    for (int i = k; i >= 1; --i) {
        // largest c with binom(c, i) <= r
        int c = i - 1;
        while (binom(c + 1, i) <= r) ++c;
        elems[i - 1] = c;
        r -= binom(c, i);
    }
    return KSubset(std::move(elems));
}

/// All k-subsets of {0..N-1} in colex order.
inline std::vector<KSubset> all_ksubsets(int N, int k) {
    std::uint64_t total = binom(N, k);
    std::vector<KSubset> out;
    out.reserve(total);
    for (std::uint64_t r = 0; r < total; ++r)
        out.push_back(unrank_colex(r, k, N));
    return out;
}

}  // namespace mn
