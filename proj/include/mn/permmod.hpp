#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "mn/combinat.hpp"
#include "mn/f2linalg.hpp"

namespace mn {

/// Inclusion matrix of j-subsets vs n-subsets of {0..N-1}: rows indexed
/// by j-subsets, columns by n-subsets (both in colex order), entry 1 iff
/// the row subset is contained in the column subset.
struct BetaMatrix {
    int N, n, j;
    F2Matrix m;  // binom(N,j) x binom(N,n)
};

inline BetaMatrix beta_matrix(int N, int n, int j) {
    if (!(0 <= j && j <= n && n <= N))
        throw std::invalid_argument("beta_matrix: need 0 <= j <= n <= N");
    auto rows = binom(N, j);
    auto cols = binom(N, n);
    F2Matrix m(rows, cols);
    for (std::uint64_t c = 0; c < cols; ++c) {
        KSubset w = unrank_colex(c, n, N);
        // all j-subsets of w
        std::vector<int> idx(j);
        for (int i = 0; i < j; ++i) idx[i] = i;
        while (true) {
            std::vector<int> sub(j);
            for (int i = 0; i < j; ++i) sub[i] = w.elems[idx[i]];
            m.set(rank_colex(KSubset(std::move(sub))), c, true);
            int i = j - 1;
            while (i >= 0 && idx[i] == n - j + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return {N, n, j, std::move(m)};
}

/// Apply the dual map at level j to level n: (out)(w) = parity of f over
/// the j-subsets of w.
inline F2Vec beta_dual_apply(const F2Vec& f, int N, int n, int j) {
    if (f.size() != binom(N, j))
        throw std::invalid_argument("beta_dual_apply: level mismatch");
    return beta_matrix(N, n, j).m.transpose().apply(f);
}

struct ExactnessCertificate {
    int N = 0, n = 0;
    std::size_t rank_lo = 0;   // rank of beta*_{n,n-1}
    std::size_t rank_hi = 0;   // rank of beta*_{n+1,n}
    std::uint64_t dim_mid = 0; // binom(N,n)
    bool exact = false;        // rank_lo + rank_hi == dim_mid
};

/// Rank certificate for Im beta*_{n,n-1} = Ker beta*_{n+1,n} at a finite
/// window. Also asserts the complex property Im <= Ker.
inline ExactnessCertificate exactness_check(int N, int n) {
    if (N < n + 1) throw std::invalid_argument("exactness_check: need N >= n+1");
    auto lo = beta_matrix(N, n, n - 1);
    auto hi = beta_matrix(N, n + 1, n);
    ExactnessCertificate c;
    c.N = N;
    c.n = n;
    c.rank_lo = row_reduce(lo.m).second;
    c.rank_hi = row_reduce(hi.m).second;
    c.dim_mid = binom(N, n);
    c.exact = c.rank_lo + c.rank_hi == c.dim_mid;
    // composite beta*_{n+1,n} o beta*_{n,n-1} = 0: each (n-1)-subset of an
    // (n+1)-set lies in exactly two intermediate n-subsets
    F2Matrix prod = lo.m.transpose();  // binom(N,n) x binom(N,n-1)
    const F2Matrix hi_t = hi.m.transpose();  // binom(N,n+1) x binom(N,n)
    for (std::size_t col = 0; col < prod.cols(); ++col) {
        F2Vec e(prod.cols());
        e.set(col, true);
        if (!hi_t.apply(prod.apply(e)).is_zero())
            throw std::logic_error("exactness_check: composite beta* not zero");
    }
    return c;
}

/// The level n-1 / level n submodule machinery over a fixed window.
/// Bases are deterministic functions of (N, n, A).
class PermModule {
public:
    PermModule(int N, int n)
        : N_(N), n_(n), cert_(exactness_check(N, n)),
          im_(F2Subspace::from_generators(beta_matrix(N, n, n - 1).m)),
          ker_(kernel_basis(beta_matrix(N, n + 1, n).m.transpose())),
          ker_lo_(kernel_basis(beta_matrix(N, n, n - 1).m.transpose())) {}

    int window() const { return N_; }
    int arity() const { return n_; }
    const ExactnessCertificate& certificate() const { return cert_; }

    /// Im beta*_{n,n-1}, level n
    const F2Subspace& im() const { return im_; }
    /// Ker beta*_{n+1,n}, level n
    const F2Subspace& ker_hi() const { return ker_; }
    /// Ker beta*_{n,n-1}, level n-1
    const F2Subspace& ker_lo() const { return ker_lo_; }

    /// V_{B,A}: functions on (n-1)-subsets vanishing wherever w cap A != B.
    F2Subspace v_ba_basis(const std::vector<int>& A, const std::vector<int>& B) const {
        check_within(A);
        std::set<int> As(A.begin(), A.end()), Bs(B.begin(), B.end());
        if (!std::includes(As.begin(), As.end(), Bs.begin(), Bs.end()))
            throw std::invalid_argument("v_ba_basis: B not a subset of A");
        std::uint64_t amb = binom(N_, n_ - 1);
        F2Matrix gens(0, amb);
        for (std::uint64_t r = 0; r < amb; ++r) {
            KSubset w = unrank_colex(r, n_ - 1, N_);
            std::set<int> inter;
            for (int e : w.elems) if (As.count(e)) inter.insert(e);
            if (inter == Bs) {
                F2Vec v(amb);
                v.set(r, true);
                gens.append_row(std::move(v));
            }
        }
        return F2Subspace::from_generators(gens);
    }

    /// V_A: both the direct-sum construction over |B| < n-1 and the
    /// vanishing-on-[A]^{n-1} description; the two are asserted equal.
    F2Subspace v_a_basis(const std::vector<int>& A) const {
        check_within(A);
        std::uint64_t amb = binom(N_, n_ - 1);
        // route (a): span of indicators of w not contained in A
        std::set<int> As(A.begin(), A.end());
        F2Matrix gens(0, amb);
        for (std::uint64_t r = 0; r < amb; ++r) {
            KSubset w = unrank_colex(r, n_ - 1, N_);
            bool inside = true;
            for (int e : w.elems) if (!As.count(e)) { inside = false; break; }
            if (inside) continue;  // vanishes on [A]^{n-1}
            F2Vec v(amb);
            v.set(r, true);
            gens.append_row(std::move(v));
        }
        F2Subspace by_vanishing = F2Subspace::from_generators(gens);
        // route (b): direct sum of V_{B,A} over B with |B| < n-1
        F2Subspace by_sum(amb);
        for_each_subset(A, [&](const std::vector<int>& B) {
            if (static_cast<int>(B.size()) < n_ - 1)
                by_sum = subspace_sum(by_sum, v_ba_basis(A, B));
        });
        if (!(by_vanishing == by_sum))
            throw std::logic_error("v_a_basis: the two constructions disagree");
        return by_vanishing;
    }

    /// Direct-sum decomposition over all B with |B| <= n-1: trivial
    /// pairwise intersections and dimensions summing to binom(N, n-1).
    bool direct_sum_check(const std::vector<int>& A) const {
        check_within(A);
        std::vector<F2Subspace> parts;
        for_each_subset(A, [&](const std::vector<int>& B) {
            if (static_cast<int>(B.size()) <= n_ - 1)
                parts.push_back(v_ba_basis(A, B));
        });
        std::size_t total = 0;
        for (const auto& p : parts) total += p.dim();
        if (total != binom(N_, n_ - 1)) return false;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                if (subspace_intersect(parts[i], parts[j]).dim() != 0) return false;
        return true;
    }

    /// W_A = beta*_{n,n-1}(V_A); on exact windows also equal to
    /// {g in Im beta* : g vanishes on [A]^n} (asserted).
    F2Subspace w_a_basis(const std::vector<int>& A) const {
        require_exact();
        F2Subspace va = v_a_basis(A);
        F2Matrix gens(0, binom(N_, n_));
        for (std::size_t i = 0; i < va.dim(); ++i)
            gens.append_row(beta_dual_apply(va.basis().row(i), N_, n_, n_ - 1));
        F2Subspace image = F2Subspace::from_generators(gens);
        F2Subspace by_vanishing = subspace_intersect(im_, vanishing_space(A));
        if (!(image == by_vanishing))
            throw std::logic_error("w_a_basis: image and vanishing descriptions disagree");
        return image;
    }

    /// g in W_A iff g in Im beta* and g vanishes on [A]^n.
    bool w_a_membership(const F2Vec& g, const std::vector<int>& A) const {
        require_exact();
        if (!im_.contains(g)) return false;
        return vanishes_on_level_n(g, A);
    }

    /// Membership in V_A + Ker beta*_{n,n-1}: (beta* f)|[A]^n = 0.
    bool char_membership(const F2Vec& f, const std::vector<int>& A) const {
        require_exact();
        if (n_ == 1) return true;  // degenerate: both sides are everything
        return vanishes_on_level_n(beta_dual_apply(f, N_, n_, n_ - 1), A);
    }

    /// The subspace {f : (beta* f)|[A]^n = 0}, for cross-checking
    /// char_membership against V_A + Ker beta*.
    F2Subspace char_space(const std::vector<int>& A) const {
        std::uint64_t amb = binom(N_, n_ - 1);
        // rows: for each w in [A]^n, the row of beta*_{n,n-1} at w
        const F2Matrix bt = beta_matrix(N_, n_, n_ - 1).m.transpose();
        F2Matrix sys(0, amb);
        for (std::uint64_t r : level_n_coords(A))
            sys.append_row(bt.row(r));
        return kernel_basis(sys);
    }

    struct AuxCheckResult {
        bool holds = false;
        bool outside_hypothesis = false;  // k >= n: the lemma makes no claim
    };

    /// (dag): intersection of the V_{A_i} + Ker beta*_{n,n-1} vs the
    /// intersection of the V_{A_i} plus the kernel.
    AuxCheckResult aux_distributivity_check(const std::vector<std::vector<int>>& As) const {
        require_exact();
        std::uint64_t amb = binom(N_, n_ - 1);
        F2Subspace lhs = F2Subspace::full(amb);
        F2Subspace inter = F2Subspace::full(amb);
        for (const auto& A : As) {
            F2Subspace va = v_a_basis(A);
            lhs = subspace_intersect(lhs, subspace_sum(va, ker_lo_));
            inter = subspace_intersect(inter, va);
        }
        F2Subspace rhs = subspace_sum(inter, ker_lo_);
        AuxCheckResult r;
        r.holds = lhs == rhs;
        r.outside_hypothesis = static_cast<int>(As.size()) >= n_;
        return r;
    }

    /// Colex ranks of [A]^n within the window (strictly increasing).
    std::vector<std::uint64_t> level_n_coords(const std::vector<int>& A) const {
        std::vector<std::uint64_t> coords;
        std::vector<int> sorted(A.begin(), A.end());
        std::sort(sorted.begin(), sorted.end());
        int m = static_cast<int>(sorted.size());
        if (m < n_) return coords;
        std::vector<int> idx(n_);
        for (int i = 0; i < n_; ++i) idx[i] = i;
        while (true) {
            std::vector<int> sub(n_);
            for (int i = 0; i < n_; ++i) sub[i] = sorted[idx[i]];
            std::sort(sub.begin(), sub.end());
            coords.push_back(rank_colex(KSubset(std::move(sub))));
            int i = n_ - 1;
            while (i >= 0 && idx[i] == m - n_ + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int t = i + 1; t < n_; ++t) idx[t] = idx[t - 1] + 1;
        }
        std::sort(coords.begin(), coords.end());
        return coords;
    }

    /// {g at level n : g vanishes on [A]^n}
    F2Subspace vanishing_space(const std::vector<int>& A) const {
        std::uint64_t amb = binom(N_, n_);
        auto banned = level_n_coords(A);
        std::set<std::uint64_t> bset(banned.begin(), banned.end());
        F2Matrix gens(0, amb);
        for (std::uint64_t r = 0; r < amb; ++r) {
            if (bset.count(r)) continue;
            F2Vec v(amb);
            v.set(r, true);
            gens.append_row(std::move(v));
        }
        return F2Subspace::from_generators(gens);
    }

    bool vanishes_on_level_n(const F2Vec& g, const std::vector<int>& A) const {
        for (std::uint64_t r : level_n_coords(A))
            if (g.get(r)) return false;
        return true;
    }

private:
    void check_within(const std::vector<int>& A) const {
        for (int a : A)
            if (a < 0 || a >= N_) throw std::invalid_argument("set element outside window");
    }
    void require_exact() const {
        if (!cert_.exact)
            throw std::logic_error("window not certified exact for this operation");
    }
    template <class Fn>
    static void for_each_subset(const std::vector<int>& A, Fn&& fn) {
        std::vector<int> sorted(A.begin(), A.end());
        std::sort(sorted.begin(), sorted.end());
        std::size_t m = sorted.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            std::vector<int> B;
            for (std::size_t i = 0; i < m; ++i)
                if ((mask >> i) & 1) B.push_back(sorted[i]);
            fn(B);
        }
    }

    int N_, n_;
    ExactnessCertificate cert_;
    F2Subspace im_, ker_, ker_lo_;
};

}  // namespace mn
