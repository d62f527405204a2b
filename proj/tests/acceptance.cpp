// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// criteria hold.

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mn/reports.hpp"

using namespace mn;

namespace {

int failures = 0;

void criterion(int idx, const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string err;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        err = e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << name;
    if (!err.empty()) std::cout << " (exception: " << err << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::vector<std::vector<int>> singletons(int k) {
    std::vector<std::vector<int>> s;
    for (int i = 0; i < k; ++i) s.push_back({i});
    return s;
}

std::vector<Perm> all_perms(int N) {
    std::vector<int> v(N);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Perm> out;
    do {
        Perm p;
        p.img = v;
        out.push_back(p);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

bool uniqueness_failure_orders() {
    for (int n : {2, 3, 4}) {
        int N = std::max(n + 3, 7);
        WindowModel m(N, n);
        if (!m.certificate().exact) return false;
        auto gap = uniqueness_gap(m, n + 1, singletons(n + 1));
        if (gap.unique || gap.order_constrained != 1 || gap.order_free != 2) return false;
    }
    return true;
}

bool k_uniqueness_below_bound() {
    for (int n : {2, 3, 4}) {
        int N = std::max(n + 3, 7);
        WindowModel m(N, n);
        for (int k = 2; k <= n; ++k)
            if (!uniqueness_gap(m, k, singletons(k)).unique) return false;
    }
    return true;
}

bool existence_failure() {
    for (int n : {2, 3}) {
        int N = std::max(n + 3, 7);
        auto model = std::make_shared<WindowModel>(N, n);
        int k = n + 2;
        auto twisted = build_standard_problem(model, k, singletons(k), true);
        if (solve_existence(twisted).has_value()) return false;
        auto control = build_standard_problem(model, k, singletons(k));
        auto sol = solve_existence(control);
        if (!sol || !verify_solution(control, *sol)) return false;
        // second, independent decider on the parity system
        if (parity_obstruction(n, true).feasible) return false;
        if (!parity_obstruction(n, false).feasible) return false;
    }
    // brute-force confirmation of the parity system at n = 2
    if (parity_obstruction_bruteforce(2, true)) return false;
    if (!parity_obstruction_bruteforce(2, false)) return false;
    return true;
}

bool constructive_existence() {
    for (int n : {2, 3})
        for (int k = 2; k <= n + 1; ++k) {
            int N = std::max({n + 3, 7, 2 * k});
            auto model = std::make_shared<WindowModel>(N, n);
            auto p = build_standard_problem(model, k, singletons(k));
            auto sol = goko_solve(p);
            if (!sol || !verify_solution(p, *sol)) return false;
        }
    return true;
}

bool exactness_certified() {
    // composite is asserted zero inside exactness_check; require at least
    // one certified window per arity within the sweep range
    for (int n : {2, 3, 4}) {
        bool any = false;
        for (int N = n + 1; N <= n + 6; ++N)
            if (N >= n + 2 && exactness_check(N, n).exact) any = true;
        if (!any) return false;
    }
    // and the frozen oracle file must agree line by line
    std::ifstream in(std::string(MN_TEST_DATA_DIR) + "/golden_ranks.txt");
    if (!in) return false;
    int N, n, lo, hi, exact, records = 0;
    while (in >> N >> n >> lo >> hi >> exact) {
        auto c = exactness_check(N, n);
        if (c.rank_lo != std::uint64_t(lo) || c.rank_hi != std::uint64_t(hi) ||
            c.exact != (exact == 1))
            return false;
        ++records;
    }
    return records >= 18;
}

bool sampled_submodule_identities() {
    std::mt19937 rng(20250825);
    int checked = 0;
    for (int n : {2, 3})
        for (int N : {n + 4, n + 5})
            for (int s = 0; s < 6; ++s) {
                PermModule pm(N, n);
                std::uniform_int_distribution<int> size_dist(0, std::min(N, n + 2));
                std::vector<int> pool(N);
                std::iota(pool.begin(), pool.end(), 0);
                std::shuffle(pool.begin(), pool.end(), rng);
                std::vector<int> A(pool.begin(), pool.begin() + size_dist(rng));
                std::sort(A.begin(), A.end());
                auto va = pm.v_a_basis(A);  // throws if the two routes disagree
                if (binom(N, n - 1) - va.dim() != binom(A.size(), std::uint64_t(n - 1)))
                    return false;
                if (!pm.direct_sum_check(A)) return false;
                pm.w_a_basis(A);  // throws if image != vanishing description
                if (!(pm.char_space(A) == subspace_sum(va, pm.ker_lo()))) return false;
                ++checked;
            }
    // aux distributivity inside its hypothesis k < n
    for (int N : {7, 8}) {
        PermModule pm(N, 3);
        std::vector<std::vector<int>> As = {{0, 1, 2}, {2, 3, 4}};
        auto r = pm.aux_distributivity_check(As);
        if (!r.holds || r.outside_hypothesis) return false;
        ++checked;
    }
    return checked >= 20;
}

bool stabilizer_bruteforce() {
    // exhaustive (g, sigma) enumeration against the claimed description
    for (int N : {5, 6}) {
        WindowModel m(N, 2);
        std::vector<int> A = {0, 1, 2};
        auto st = m.pointwise_stabilizer(A);
        auto clA = m.cl(A);
        std::uint64_t count = 0;
        auto fiber = m.fiber_module().enumerate();
        for (const auto& sigma : all_perms(N))
            for (const auto& g : fiber)
                if (m.fixes_pointwise({g, sigma}, clA)) {
                    ++count;
                    bool fixes_a = true;
                    for (int x : A) fixes_a &= sigma(x) == x;
                    if (!fixes_a || !st.module.contains(g)) return false;
                }
        std::uint64_t moved_fact = 1;
        for (std::uint64_t i = 2; i <= st.moved.size(); ++i) moved_fact *= i;
        if (count != (std::uint64_t(1) << st.module.dim()) * moved_fact) return false;
    }
    return true;
}

bool coincidence_and_relations() {
    for (int n : {2, 3})
        for (int N = n + 2; N <= n + 4; ++N) {
            auto c = coincide_check(N, n);
            if (!c.equal || !c.im_contained) return false;
            if (c.im_fills != exactness_check(N, n).exact) return false;
        }
    // relation preservation brute force at N = 5, n = 2
    const int N = 5, n = 2;
    RelationalModel rm(N, n);
    WindowModel wm(N, n);
    auto triples = all_ksubsets(N, n + 1);
    auto faces_of = [&](const KSubset& u) {
        std::vector<SortedPoint::Fiber> tup;
        for (int x : u.elems) {
            std::vector<int> rest;
            for (int y : u.elems)
                if (y != x) rest.push_back(y);
            tup.push_back({KSubset(rest), 0});
        }
        return tup;
    };
    F2Vec zero(binom(N, n));
    for (const auto& sigma : all_perms(N)) {
        WindowAutomorphism a{zero, sigma};
        for (int c = 0; c < N; ++c)
            for (const auto& w : all_ksubsets(N, n))
                if (rm.e_related(c, w) != rm.e_related(sigma(c), sigma.apply(w))) return false;
        for (const auto& u : triples) {
            auto tup = faces_of(u);
            std::vector<SortedPoint::Fiber> img;
            for (const auto& f : tup)
                img.push_back(std::get<SortedPoint::Fiber>(
                    wm.aut_apply(a, SortedPoint::fiber(f.w, f.delta)).v));
            if (rm.p_related(tup) != rm.p_related(img)) return false;
        }
    }
    F2Subspace ker = kernel_basis(p_relation_matrix(N, n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << binom(N, n)); ++mask) {
        F2Vec g(binom(N, n));
        for (std::size_t i = 0; i < binom(N, n); ++i)
            if ((mask >> i) & 1) g.set(i, true);
        bool preserves = true;
        for (const auto& u : triples) {
            int shift = 0;
            for (const auto& f : faces_of(u)) shift ^= g.get(rank_colex(f.w)) ? 1 : 0;
            if (shift) { preserves = false; break; }
        }
        if (preserves != ker.contains(g)) return false;
    }
    return true;
}

bool deterministic_reports() {
    for (int n : {2, 3}) {
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.seed = 99;
        auto a = cmd_report(cfg);
        auto b = cmd_report(cfg);
        if (!a.all_pass()) return false;
        if (a.to_json().dump(2) != b.to_json().dump(2)) return false;
        if (a.to_markdown() != b.to_markdown()) return false;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "uniqueness failure at k = n+1 with induced orders (1, 2), n in {2,3,4}",
              uniqueness_failure_orders);
    criterion(2, "k-uniqueness for 2 <= k <= n, n in {2,3,4}", k_uniqueness_below_bound);
    criterion(3, "twisted (n+2)-existence fails by two deciders, control succeeds, n in {2,3}",
              existence_failure);
    criterion(4, "constructive (k+1)-existence with verified solutions, n in {2,3}",
              constructive_existence);
    criterion(5, "exactness certified per arity and frozen rank oracle reproduced",
              exactness_certified);
    criterion(6, "sampled submodule identities (>= 20 triples) all hold",
              sampled_submodule_identities);
    criterion(7, "pointwise stabilizer matches exhaustive enumeration, N <= 6",
              stabilizer_bruteforce);
    criterion(8, "relational kernel coincidence and relation preservation brute force",
              coincidence_and_relations);
    criterion(9, "aggregate report passes and is byte-identical across runs",
              deterministic_reports);

    if (failures) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
