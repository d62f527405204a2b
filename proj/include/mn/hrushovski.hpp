#pragma once

#include "mn/mstruct.hpp"

namespace mn {

/// Relational presentation of the window model: membership relation E,
/// the parity relation P on (n+1)-tuples of fiber points, and the fiber
/// projection pi. P is decided by its defining condition, never
/// materialized.
class RelationalModel {
public:
    RelationalModel(int N, int n) : N_(N), n_(n) {
        if (N < n + 1) throw std::invalid_argument("RelationalModel: need N >= n+1");
    }

    int window() const { return N_; }
    int arity() const { return n_; }

    bool e_related(int c, const KSubset& w) const { return w.contains(c); }

    KSubset pi(const SortedPoint::Fiber& f) const { return f.w; }

    /// ((w_1,d_1),...,(w_{n+1},d_{n+1})) in P iff there are distinct
    /// c_1..c_{n+1} with w_i = {c_1..c_{n+1}} minus c_i and sum d_i = 0.
    bool p_related(const std::vector<SortedPoint::Fiber>& tuple) const {
        if (static_cast<int>(tuple.size()) != n_ + 1) return false;
        std::set<int> uni;
        for (const auto& f : tuple) uni.insert(f.w.elems.begin(), f.w.elems.end());
        if (static_cast<int>(uni.size()) != n_ + 1) return false;
        std::set<int> missing;
        for (const auto& f : tuple) {
            if (f.w.k() != n_) return false;
            std::vector<int> diff;
            std::set_difference(uni.begin(), uni.end(), f.w.elems.begin(), f.w.elems.end(),
                                std::back_inserter(diff));
            if (diff.size() != 1) return false;
            missing.insert(diff[0]);
        }
        if (static_cast<int>(missing.size()) != n_ + 1) return false;
        int parity = 0;
        for (const auto& f : tuple) parity ^= f.delta;
        return parity == 0;
    }

private:
    int N_, n_;
};

/// Constraint matrix of the P relation: one row per (n+1)-subset w, with
/// ones at the n-subsets of w. Equals the transposed inclusion matrix.
inline F2Matrix p_relation_matrix(int N, int n) {
    if (N < n + 1) throw std::invalid_argument("p_relation_matrix: need N >= n+1");
    return beta_matrix(N, n + 1, n).m.transpose();
}

struct CoincideResult {
    std::size_t ker_mu_dim = 0;
    std::size_t ker_beta_dim = 0;
    bool equal = false;         // Ker mu = Ker beta*_{n+1,n}, structurally
    bool im_contained = false;  // Im beta*_{n,n-1} <= Ker mu
    bool im_fills = false;      // with equality, i.e. the exactness flag
};

inline CoincideResult coincide_check(int N, int n) {
    F2Subspace ker_mu = kernel_basis(p_relation_matrix(N, n));
    F2Subspace ker_beta = kernel_basis(beta_matrix(N, n + 1, n).m.transpose());
    F2Subspace im = F2Subspace::from_generators(beta_matrix(N, n, n - 1).m);
    CoincideResult r;
    r.ker_mu_dim = ker_mu.dim();
    r.ker_beta_dim = ker_beta.dim();
    r.equal = ker_mu == ker_beta;
    if (!r.equal) throw std::logic_error("coincide_check: convention drift between P and beta");
    r.im_contained = subspace_sum(ker_mu, im) == ker_mu;
    r.im_fills = r.im_contained && im.dim() == ker_mu.dim();
    return r;
}

}  // namespace mn
