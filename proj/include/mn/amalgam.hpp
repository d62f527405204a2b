#pragma once

#include <map>
#include <optional>
#include <string>

#include "mn/mstruct.hpp"

namespace mn {

/// Subsets of {0..k-1} encoded as bitmasks.
using IndexSet = unsigned;

inline std::vector<int> index_members(IndexSet s) {
    std::vector<int> out;
    for (int i = 0; s >> i; ++i)
        if ((s >> i) & 1) out.push_back(i);
    return out;
}

/// Functor data on the proper subsets of {0..k-1}: pairwise-disjoint base
/// supports, nodes cl(union of supports), and transition automorphisms
/// (sigma = id throughout; nonzero cocycle only on a twisted edge).
struct AmalgamationProblem {
    std::shared_ptr<const WindowModel> model;
    int k = 0;
    std::vector<std::vector<int>> supports;  // A_1..A_k, each sorted
    // transition carrier for every proper pair s < t (as masks, s subset of t)
    std::map<std::pair<IndexSet, IndexSet>, WindowAutomorphism> transitions;
    bool twisted = false;
    IndexSet twist_src = 0, twist_dst = 0;

    IndexSet full() const { return (IndexSet(1) << k) - 1; }

    std::vector<int> support_of(IndexSet s) const {
        std::vector<int> u;
        for (int i : index_members(s)) u.insert(u.end(), supports[i].begin(), supports[i].end());
        std::sort(u.begin(), u.end());
        return u;
    }

    ClosedSet node(IndexSet s) const { return model->cl(support_of(s)); }

    const WindowAutomorphism& transition(IndexSet s, IndexSet t) const {
        auto it = transitions.find({s, t});
        if (it == transitions.end())
            throw std::invalid_argument("transition: no such edge");
        return it->second;
    }
};

/// Candidate extension to the full power set: the top node plus the k
/// embeddings x_i of the facets [k]-i.
struct Solution {
    ClosedSet top;
    std::vector<WindowAutomorphism> maps;  // maps[i] realizes x_i on node([k]-i)
};

/// Cocycle of the twisted edge: beta*(indicator of the designated
/// (n-1)-set), the first n-1 base elements of the facet it leaves.
inline F2Vec standard_twist_cocycle(const WindowModel& m,
                                    const std::vector<std::vector<int>>& supports) {
    int n = m.arity();
    std::vector<int> des;
    for (int i = 0; i < n - 1; ++i) des.push_back(supports[i][0]);
    std::sort(des.begin(), des.end());
    F2Vec ind(binom(m.window_size(), n - 1));
    ind.set(rank_colex(KSubset(des)), true);
    return beta_dual_apply(ind, m.window_size(), n, n - 1);
}

std::vector<std::string> validate_problem(const AmalgamationProblem& p);

/// Standard problem over pairwise-disjoint supports: all transitions are
/// inclusions, except (when twisted) the edge {0..n-1} -> {0..n}, which
/// carries the automorphism beta*(indicator of the designated (n-1)-set).
inline AmalgamationProblem build_standard_problem(std::shared_ptr<const WindowModel> model,
                                                  int k,
                                                  std::vector<std::vector<int>> supports,
                                                  bool twist = false) {
    AmalgamationProblem p;
    p.model = std::move(model);
    p.k = k;
    if (static_cast<int>(supports.size()) != k)
        throw std::invalid_argument("build_standard_problem: need one support per index");
    std::set<int> seen;
    for (auto& A : supports) {
        if (A.empty()) throw std::invalid_argument("build_standard_problem: empty support");
        std::sort(A.begin(), A.end());
        for (int a : A) {
            if (a < 0 || a >= p.model->window_size())
                throw std::invalid_argument("build_standard_problem: element outside window");
            if (!seen.insert(a).second)
                throw std::invalid_argument("build_standard_problem: overlapping supports");
        }
    }
    p.supports = std::move(supports);

    int n = p.model->arity();
    if (twist) {
        if (k != n + 2)
            throw std::invalid_argument("build_standard_problem: twist requires k = n+2");
        for (const auto& A : p.supports)
            if (A.size() != 1)
                throw std::invalid_argument("build_standard_problem: twist requires singleton supports");
        p.twisted = true;
        p.twist_src = (IndexSet(1) << n) - 1;        // {0..n-1}
        p.twist_dst = (IndexSet(1) << (n + 1)) - 1;  // {0..n}
    }

    WindowAutomorphism id = p.model->identity_aut();
    F2Vec twist_g = p.twisted ? standard_twist_cocycle(*p.model, p.supports)
                              : F2Vec(binom(p.model->window_size(), n));
    IndexSet full = p.full();
    for (IndexSet t = 0; t < full; ++t) {
        for (IndexSet s = t;; s = (s - 1) & t) {
            if (s != t) {
                WindowAutomorphism a = id;
                if (p.twisted && s == p.twist_src && t == p.twist_dst) a.g = twist_g;
                p.transitions[{s, t}] = std::move(a);
            }
            if (s == 0) break;
        }
    }
    auto viol = validate_problem(p);
    if (!viol.empty())
        throw std::invalid_argument("build_standard_problem: " + viol.front());
    return p;
}

/// Conditions (i)-(iii) plus functoriality and the embedding property.
/// Violations are returned as data, one message each.
inline std::vector<std::string> validate_problem(const AmalgamationProblem& p) {
    std::vector<std::string> viol;
    const WindowModel& m = *p.model;
    IndexSet full = p.full();

    if (!p.node(0).points.empty())
        viol.push_back("(i): base node is not the empty closed set");

    // (ii) realized on supports: supp(s1) cap supp(s2) = supp(s1 cap s2)
    for (IndexSet s1 = 0; s1 < full; ++s1)
        for (IndexSet s2 = 0; s2 < full; ++s2) {
            auto u1 = p.support_of(s1), u2 = p.support_of(s2), u12 = p.support_of(s1 & s2);
            std::vector<int> inter;
            std::set_intersection(u1.begin(), u1.end(), u2.begin(), u2.end(),
                                  std::back_inserter(inter));
            if (inter != u12) {
                viol.push_back("(ii): support independence fails");
                goto after_ii;
            }
        }
after_ii:
    // (iii): node supports are unions of base supports -- holds by
    // construction of node(); check the generation through singletons
    for (IndexSet s = 1; s < full; ++s) {
        std::vector<int> gen;
        for (int i : index_members(s)) {
            auto ai = p.support_of(IndexSet(1) << i);
            gen.insert(gen.end(), ai.begin(), ai.end());
        }
        std::sort(gen.begin(), gen.end());
        if (gen != p.support_of(s)) {
            viol.push_back("(iii): node support not generated by its singletons");
            break;
        }
    }

    // embedding property: transitions map node(s) into node(t)
    for (const auto& [edge, aut] : p.transitions) {
        auto [s, t] = edge;
        ClosedSet ns = p.node(s), nt = p.node(t);
        std::set<SortedPoint> tset(nt.points.begin(), nt.points.end());
        for (const auto& pt : ns.points)
            if (!tset.count(m.aut_apply(aut, pt))) {
                viol.push_back("embedding: transition image leaves the codomain node");
                goto after_embed;
            }
    }
after_embed:
    // functoriality on every chain s1 < s2 < s3
    for (IndexSet s3 = 0; s3 < full; ++s3)
        for (IndexSet s2 = s3;; s2 = (s2 - 1) & s3) {
            for (IndexSet s1 = s2;; s1 = (s1 - 1) & s2) {
                if (s1 != s2 && s2 != s3) {
                    const auto& a12 = p.transition(s1, s2);
                    const auto& a23 = p.transition(s2, s3);
                    const auto& a13 = p.transition(s1, s3);
                    for (const auto& pt : p.node(s1).points) {
                        if (!(m.aut_apply(a23, m.aut_apply(a12, pt)) == m.aut_apply(a13, pt))) {
                            viol.push_back("functoriality: compositions disagree");
                            return viol;
                        }
                    }
                }
                if (s1 == 0) break;
            }
            if (s2 == 0) break;
        }
    return viol;
}

struct UniquenessGap {
    std::uint64_t order_constrained = 0;  // induced group of W1
    std::uint64_t order_free = 0;         // induced group of W2
    bool unique = false;
};

/// Induced fiber actions of the two stabilizer modules on [A]^n, where
/// A is the union of the first k-1 supports.
inline UniquenessGap uniqueness_gap(const WindowModel& m, int k,
                                    const std::vector<std::vector<int>>& supports) {
    if (k < 2 || static_cast<int>(supports.size()) < k)
        throw std::invalid_argument("uniqueness_gap: need k >= 2 supports");
    const PermModule& pm = m.perm_module();
    if (!pm.certificate().exact)
        throw std::logic_error("uniqueness_gap: window not certified exact");

    auto set_union = [](std::vector<int> a, const std::vector<int>& b) {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        return a;
    };
    auto set_minus = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r;
        std::set<int> bs(b.begin(), b.end());
        for (int x : a) if (!bs.count(x)) r.push_back(x);
        return r;
    };

    std::vector<int> A;
    for (int i = 0; i < k - 1; ++i) A = set_union(A, supports[i]);
    std::vector<int> AAk = set_union(A, supports[k - 1]);

    std::uint64_t amb = binom(m.window_size(), m.arity());
    F2Subspace w1 = F2Subspace::full(amb), w2 = F2Subspace::full(amb);
    for (int i = 0; i < k - 1; ++i) {
        w1 = subspace_intersect(w1, pm.w_a_basis(set_minus(AAk, supports[i])));
        w2 = subspace_intersect(w2, pm.w_a_basis(set_minus(A, supports[i])));
    }
    F2Subspace g1 = m.induced_fiber_group(w1, A);
    F2Subspace g2 = m.induced_fiber_group(w2, A);
    UniquenessGap r;
    r.order_constrained = std::uint64_t(1) << g1.dim();
    r.order_free = std::uint64_t(1) << g2.dim();
    r.unique = g1 == g2;
    return r;
}

/// Does the candidate satisfy every compatibility equation pointwise and
/// stay inside the top node?
inline bool verify_solution(const AmalgamationProblem& p, const Solution& sol) {
    const WindowModel& m = *p.model;
    IndexSet full = p.full();
    std::set<SortedPoint> top(sol.top.points.begin(), sol.top.points.end());
    for (int i = 0; i < p.k; ++i) {
        IndexSet facet = full & ~(IndexSet(1) << i);
        for (const auto& pt : p.node(facet).points)
            if (!top.count(m.aut_apply(sol.maps[i], pt))) return false;
    }
    for (int i = 0; i < p.k; ++i)
        for (int j = i + 1; j < p.k; ++j) {
            IndexSet fi = full & ~(IndexSet(1) << i);
            IndexSet fj = full & ~(IndexSet(1) << j);
            IndexSet smax = fi & fj;
            // all s below the pair, exhaustively
            for (IndexSet s = smax;; s = (s - 1) & smax) {
                const auto& asi = p.transition(s, fi);
                const auto& asj = p.transition(s, fj);
                for (const auto& pt : p.node(s).points) {
                    SortedPoint via_i = m.aut_apply(sol.maps[i], m.aut_apply(asi, pt));
                    SortedPoint via_j = m.aut_apply(sol.maps[j], m.aut_apply(asj, pt));
                    if (!(via_i == via_j)) return false;
                }
                if (s == 0) break;
            }
        }
    return true;
}

/// Fiber-compatibility feasibility: unknowns are the k cocycles in the
/// fiber-module basis, sigma_i = id (forced for ground compatibility up
/// to relabeling the solution); one equation per pair {i,j} and per
/// n-subset of the shared support.
inline std::optional<Solution> solve_existence(const AmalgamationProblem& p) {
    auto viol = validate_problem(p);
    if (!viol.empty()) throw std::invalid_argument("solve_existence: invalid problem");
    const WindowModel& m = *p.model;
    if (!m.certificate().exact)
        throw std::logic_error("solve_existence: window not certified exact");

    const F2Subspace& fm = m.fiber_module();
    std::size_t d = fm.dim();
    IndexSet full = p.full();
    const PermModule& pm = m.perm_module();

    F2Matrix sys(0, std::size_t(p.k) * d + 1);  // augmented
    for (int i = 0; i < p.k; ++i)
        for (int j = i + 1; j < p.k; ++j) {
            IndexSet fi = full & ~(IndexSet(1) << i);
            IndexSet fj = full & ~(IndexSet(1) << j);
            IndexSet s = fi & fj;
            const F2Vec& ti = p.transition(s, fi).g;
            const F2Vec& tj = p.transition(s, fj).g;
            for (std::uint64_t w : pm.level_n_coords(p.support_of(s))) {
                F2Vec row(std::size_t(p.k) * d + 1);
                for (std::size_t b = 0; b < d; ++b) {
                    if (fm.basis().get(b, w)) {
                        row.flip(std::size_t(i) * d + b);
                        row.flip(std::size_t(j) * d + b);
                    }
                }
                row.set(std::size_t(p.k) * d, ti.get(w) ^ tj.get(w));
                sys.append_row(std::move(row));
            }
        }

    // split augmented column off and solve
    F2Matrix lhs(0, std::size_t(p.k) * d);
    F2Vec rhs(sys.rows());
    for (std::size_t r = 0; r < sys.rows(); ++r) {
        F2Vec row(std::size_t(p.k) * d);
        for (std::size_t c = 0; c < row.size(); ++c) row.set(c, sys.get(r, c));
        lhs.append_row(std::move(row));
        rhs.set(r, sys.get(r, std::size_t(p.k) * d));
    }
    auto x = image_membership(lhs, rhs);
    if (!x) return std::nullopt;

    Solution sol;
    sol.top = p.model->cl(p.support_of(full));
    for (int i = 0; i < p.k; ++i) {
        F2Vec g(binom(m.window_size(), m.arity()));
        for (std::size_t b = 0; b < d; ++b)
            if (x->get(std::size_t(i) * d + b)) g ^= fm.basis().row(b);
        sol.maps.push_back({std::move(g), Perm::identity(m.window_size())});
    }
    if (!verify_solution(p, sol))
        throw std::logic_error("solve_existence: constructed solution fails verification");
    return sol;
}

/// The (n+2)x(n+2) parity system of the twisted problem, decided by
/// elimination: zero diagonal, zero row sums, symmetry off the twisted
/// pair, and (when twisted) the one antisymmetric equation.
struct ParityResult {
    bool feasible = false;
    std::vector<std::vector<int>> witness;  // (n+2)x(n+2) 0/1 matrix when feasible
};

inline ParityResult parity_obstruction(int n, bool twisted = true) {
    if (n < 2) throw std::invalid_argument("parity_obstruction: need n >= 2");
    int sz = n + 2;
    auto var = [sz](int i, int j) {  // i != j
        return std::size_t(i) * sz + j - (j > i ? 1 : 0) - i;  // compact off-diagonal index
    };
    std::size_t nv = std::size_t(sz) * (sz - 1);
    F2Matrix lhs(0, nv);
    std::vector<bool> rhs_bits;
    auto add_row = [&](const std::vector<std::size_t>& vars, bool rhs) {
        F2Vec row(nv);
        for (auto v : vars) row.flip(v);
        lhs.append_row(std::move(row));
        rhs_bits.push_back(rhs);
    };
    for (int i = 0; i < sz; ++i) {  // row sums zero
        std::vector<std::size_t> vs;
        for (int j = 0; j < sz; ++j)
            if (j != i) vs.push_back(var(i, j));
        add_row(vs, false);
    }
    for (int i = 0; i < sz; ++i)
        for (int j = i + 1; j < sz; ++j) {
            bool twisted_pair = (i == sz - 2 && j == sz - 1);
            add_row({var(i, j), var(j, i)}, twisted_pair && twisted);
        }
    F2Vec rhs(lhs.rows());
    for (std::size_t r = 0; r < rhs_bits.size(); ++r) rhs.set(r, rhs_bits[r]);
    auto x = image_membership(lhs, rhs);
    ParityResult res;
    res.feasible = x.has_value();
    if (x) {
        res.witness.assign(sz, std::vector<int>(sz, 0));
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j)
                if (i != j) res.witness[i][j] = x->get(var(i, j)) ? 1 : 0;
    }
    return res;
}

/// Brute force over all off-diagonal assignments; only sensible for n=2
/// (2^12 matrices).
inline bool parity_obstruction_bruteforce(int n, bool twisted = true) {
    int sz = n + 2;
    std::size_t nv = std::size_t(sz) * (sz - 1);
    if (nv > 20) throw std::length_error("parity_obstruction_bruteforce: too many variables");
    for (std::size_t mask = 0; mask < (std::size_t(1) << nv); ++mask) {
        std::vector<std::vector<int>> mmat(sz, std::vector<int>(sz, 0));
        std::size_t idx = 0;
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j)
                if (i != j) mmat[i][j] = (mask >> idx++) & 1;
        bool ok = true;
        for (int i = 0; i < sz && ok; ++i) {
            int s = 0;
            for (int j = 0; j < sz; ++j) s ^= mmat[i][j];
            if (s) ok = false;
        }
        for (int i = 0; i < sz && ok; ++i)
            for (int j = i + 1; j < sz && ok; ++j) {
                bool tp = (i == sz - 2 && j == sz - 1);
                int want = (tp && twisted) ? 1 : 0;
                if ((mmat[i][j] ^ mmat[j][i]) != want) ok = false;
            }
        if (ok) return true;
    }
    return false;
}

/// Constructive existence by level-by-level alignment: realize the two
/// independent copies with an explicit window permutation, then extend
/// cocycles subset-by-subset, at each step solving for a member of
/// Im beta* with the prescribed restriction.
inline std::optional<Solution> goko_solve(const AmalgamationProblem& p) {
    const WindowModel& m = *p.model;
    int n = m.arity(), N = m.window_size(), k = p.k;
    if (p.twisted) throw std::invalid_argument("goko_solve: standard untwisted problems only");
    if (k > n + 1) throw std::invalid_argument("goko_solve: requires k <= n+1");
    if (!m.certificate().exact) throw std::logic_error("goko_solve: window not certified exact");
    auto viol = validate_problem(p);
    if (!viol.empty()) throw std::invalid_argument("goko_solve: invalid problem");

    IndexSet full = p.full();
    std::vector<int> U = p.support_of(full);
    if (N < 2 * static_cast<int>(U.size()))
        throw std::invalid_argument("goko_solve: window too small to realize independence");

    // Sigma: map supp([k-1]) and A_k to fresh disjoint blocks, complete to
    // a permutation deterministically
    std::set<int> used(U.begin(), U.end());
    std::vector<int> fresh;
    for (int x = 0; x < N; ++x)
        if (!used.count(x)) fresh.push_back(x);
    std::map<int, int> img;
    std::size_t f = 0;
    for (int u : U) img[u] = fresh[f++];
    std::set<int> targets;
    for (auto& [a, b] : img) targets.insert(b);
    std::vector<int> rem_src, rem_dst;
    for (int x = 0; x < N; ++x) {
        if (!img.count(x)) rem_src.push_back(x);
        if (!targets.count(x)) rem_dst.push_back(x);
    }
    Perm sigma = Perm::identity(N);
    for (auto& [a, b] : img) sigma.img[a] = b;
    for (std::size_t i = 0; i < rem_src.size(); ++i) sigma.img[rem_src[i]] = rem_dst[i];

    const PermModule& pm = m.perm_module();
    const F2Subspace& im = pm.im();
    std::uint64_t amb = binom(N, n);

    // cocycles g_s by |s| ascending; g vanishes on singletons
    std::map<IndexSet, F2Vec> g;
    for (IndexSet s = 0; s <= full; ++s)
        if (__builtin_popcount(s) <= 1) g[s] = F2Vec(amb);
    for (int size = 2; size <= k; ++size) {
        for (IndexSet s = 0; s <= full; ++s) {
            if (__builtin_popcount(s) != size) continue;
            // prescription from the maximal proper subsets
            std::map<std::uint64_t, bool> want;
            for (int i : index_members(s)) {
                IndexSet t = s & ~(IndexSet(1) << i);
                for (std::uint64_t w : pm.level_n_coords(p.support_of(t)))
                    want[w] = g[t].get(w);
            }
            std::vector<std::size_t> coords;
            F2Vec target(want.size());
            std::size_t ci = 0;
            for (auto& [w, b] : want) {
                coords.push_back(static_cast<std::size_t>(w));
                target.set(ci++, b);
            }
            // solve for a member of Im beta* with the prescribed restriction
            F2Matrix sysm(coords.size(), im.dim());
            for (std::size_t r = 0; r < coords.size(); ++r)
                for (std::size_t b = 0; b < im.dim(); ++b)
                    if (im.basis().get(b, coords[r])) sysm.set(r, b, true);
            auto y = image_membership(sysm, target);
            if (!y) return std::nullopt;  // alignment step failed
            F2Vec gs(amb);
            for (std::size_t b = 0; b < im.dim(); ++b)
                if (y->get(b)) gs ^= im.basis().row(b);
            // canonical representative: reduce modulo the cocycles
            // vanishing on the prescribed coordinates
            F2Subspace slack_coeff = kernel_basis(sysm);
            F2Matrix slack_gens(0, amb);
            for (std::size_t r = 0; r < slack_coeff.dim(); ++r) {
                F2Vec v(amb);
                for (std::size_t b = 0; b < im.dim(); ++b)
                    if (slack_coeff.basis().get(r, b)) v ^= im.basis().row(b);
                slack_gens.append_row(std::move(v));
            }
            F2Subspace::from_generators(slack_gens).reduce(gs);
            g[s] = std::move(gs);
        }
    }

    Solution sol;
    std::vector<int> top_support;
    for (int u : U) top_support.push_back(sigma(u));
    sol.top = m.cl(top_support);
    for (int i = 0; i < k; ++i) {
        IndexSet facet = full & ~(IndexSet(1) << i);
        sol.maps.push_back({g[facet], sigma});
    }
    if (!verify_solution(p, sol)) return std::nullopt;
    return sol;
}

}  // namespace mn
