#pragma once

#include <memory>
#include <numeric>
#include <set>
#include <variant>

#include "mn/permmod.hpp"

namespace mn {

/// Permutation of {0..N-1}, stored as the image vector.
struct Perm {
    std::vector<int> img;

    static Perm identity(int N) {
        Perm p;
        p.img.resize(N);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }
    int size() const { return static_cast<int>(img.size()); }
    int operator()(int x) const { return img[x]; }
    KSubset apply(const KSubset& w) const {
        std::vector<int> e;
        e.reserve(w.elems.size());
        for (int x : w.elems) e.push_back(img[x]);
        std::sort(e.begin(), e.end());
        return KSubset(std::move(e));
    }
    /// first b, then a
    static Perm compose(const Perm& a, const Perm& b) {
        Perm p;
        p.img.resize(b.img.size());
        for (std::size_t i = 0; i < b.img.size(); ++i) p.img[i] = a.img[b.img[i]];
        return p;
    }
    Perm inverse() const {
        Perm p;
        p.img.resize(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) p.img[img[i]] = static_cast<int>(i);
        return p;
    }
    bool operator==(const Perm& o) const { return img == o.img; }
};

/// A point of one of the three sorts.
struct SortedPoint {
    struct Ground { int c; bool operator==(const Ground&) const = default; auto operator<=>(const Ground&) const = default; };
    struct NSet { KSubset w; bool operator==(const NSet& o) const { return w == o.w; } bool operator<(const NSet& o) const { return w < o.w; } };
    struct Fiber { KSubset w; int delta; bool operator==(const Fiber& o) const { return w == o.w && delta == o.delta; } bool operator<(const Fiber& o) const { return w < o.w || (w == o.w && delta < o.delta); } };

    std::variant<Ground, NSet, Fiber> v;

    static SortedPoint ground(int c) { return {Ground{c}}; }
    static SortedPoint nset(KSubset w) { return {NSet{std::move(w)}}; }
    static SortedPoint fiber(KSubset w, int delta) { return {Fiber{std::move(w), delta & 1}}; }

    bool operator==(const SortedPoint& o) const { return v == o.v; }
    bool operator<(const SortedPoint& o) const { return v < o.v; }
};

/// Automorphism (g, sigma): sigma permutes the window, g shifts fibers.
struct WindowAutomorphism {
    F2Vec g;     // level n cocycle, a member of the fiber module
    Perm sigma;

    /// first b, then a
    static WindowAutomorphism compose(const WindowAutomorphism& a, const WindowAutomorphism& b,
                                      int N, int n) {
        WindowAutomorphism r;
        r.sigma = Perm::compose(a.sigma, b.sigma);
        r.g = b.g;
        // g(w) = g_b(w) + g_a(w^{sigma_b})
        std::uint64_t amb = binom(N, n);
        for (std::uint64_t i = 0; i < amb; ++i) {
            KSubset w = unrank_colex(i, n, N);
            if (a.g.get(rank_colex(b.sigma.apply(w)))) r.g.flip(i);
        }
        return r;
    }
};

/// Support plus the three generated sorts of cl(A).
struct ClosedSet {
    std::vector<int> support;  // sorted
    std::vector<SortedPoint> points;
};

inline std::set<int> supp(const std::vector<SortedPoint>& pts) {
    std::set<int> s;
    for (const auto& p : pts) {
        if (auto* g = std::get_if<SortedPoint::Ground>(&p.v)) s.insert(g->c);
        else if (auto* w = std::get_if<SortedPoint::NSet>(&p.v))
            s.insert(w->w.elems.begin(), w->w.elems.end());
        else if (auto* f = std::get_if<SortedPoint::Fiber>(&p.v))
            s.insert(f->w.elems.begin(), f->w.elems.end());
    }
    return s;
}

/// Finite-window model of M_n. The fiber module is stored as
/// Ker beta*_{n+1,n}; on certified-exact windows this coincides with
/// Im beta*_{n,n-1}.
class WindowModel {
public:
    WindowModel(int N, int n)
        : win_(N, n), pm_(std::make_shared<PermModule>(N, n)) {
        if (pm_->certificate().exact && !(pm_->ker_hi() == pm_->im()))
            throw std::logic_error("WindowModel: exact certificate but Ker != Im");
    }

    int window_size() const { return win_.size; }
    int arity() const { return win_.arity; }
    const PermModule& perm_module() const { return *pm_; }
    const ExactnessCertificate& certificate() const { return pm_->certificate(); }
    const F2Subspace& fiber_module() const { return pm_->ker_hi(); }

    WindowAutomorphism identity_aut() const {
        return {F2Vec(binom(win_.size, win_.arity)), Perm::identity(win_.size)};
    }

    /// Automorphism from a cocycle (validated against the fiber module)
    /// and a permutation.
    WindowAutomorphism make_aut(F2Vec g, Perm sigma) const {
        if (!fiber_module().contains(g))
            throw std::invalid_argument("make_aut: cocycle not in the fiber module");
        if (sigma.size() != win_.size)
            throw std::invalid_argument("make_aut: permutation degree mismatch");
        return {std::move(g), std::move(sigma)};
    }

    SortedPoint aut_apply(const WindowAutomorphism& a, const SortedPoint& p) const {
        if (auto* g = std::get_if<SortedPoint::Ground>(&p.v))
            return SortedPoint::ground(a.sigma(g->c));
        if (auto* w = std::get_if<SortedPoint::NSet>(&p.v))
            return SortedPoint::nset(a.sigma.apply(w->w));
        const auto& f = std::get<SortedPoint::Fiber>(p.v);
        int delta = f.delta ^ (a.g.get(rank_colex(f.w)) ? 1 : 0);
        return SortedPoint::fiber(a.sigma.apply(f.w), delta);
    }

    /// cl(A) for a set of ground elements A.
    ClosedSet cl(const std::vector<int>& A) const {
        std::set<int> s(A.begin(), A.end());
        for (int a : s)
            if (a < 0 || a >= win_.size)
                throw std::invalid_argument("cl: element outside window");
        ClosedSet c;
        c.support.assign(s.begin(), s.end());
        for (int a : c.support) c.points.push_back(SortedPoint::ground(a));
        for (std::uint64_t r : pm_->level_n_coords(c.support)) {
            KSubset w = unrank_colex(r, win_.arity, win_.size);
            c.points.push_back(SortedPoint::nset(w));
            c.points.push_back(SortedPoint::fiber(w, 0));
            c.points.push_back(SortedPoint::fiber(w, 1));
        }
        return c;
    }

    /// cl applied to arbitrary sorted points, through their support.
    ClosedSet cl_points(const std::vector<SortedPoint>& pts) const {
        auto s = supp(pts);
        return cl(std::vector<int>(s.begin(), s.end()));
    }

    struct Stabilizer {
        F2Subspace module;      // cocycles allowed: W_A
        std::vector<int> moved; // window elements sigma may move
    };

    /// Pointwise stabilizer of cl(A): cocycle part W_A, permutation part
    /// Sym(window minus A).
    Stabilizer pointwise_stabilizer(const std::vector<int>& A) const {
        Stabilizer st;
        st.module = pm_->w_a_basis(A);
        std::set<int> As(A.begin(), A.end());
        for (int x = 0; x < win_.size; ++x)
            if (!As.count(x)) st.moved.push_back(x);
        return st;
    }

    /// Does (g, sigma) fix every point of the closed set?
    bool fixes_pointwise(const WindowAutomorphism& a, const ClosedSet& c) const {
        for (const auto& p : c.points)
            if (!(aut_apply(a, p) == p)) return false;
        return true;
    }

    /// Group of shift-vectors a cocycle module induces on the fibers over
    /// [A]^n (order = 2^dim of the result).
    F2Subspace induced_fiber_group(const F2Subspace& module, const std::vector<int>& A) const {
        auto coords64 = pm_->level_n_coords(A);
        std::vector<std::size_t> coords(coords64.begin(), coords64.end());
        return restrict_coords(module, coords);
    }

    /// Restricting Im beta* to [A]^n equals the image computed on the
    /// window A alone, transported along the order-preserving relabeling.
    bool window_restriction_check(const std::vector<int>& A) const {
        std::vector<int> sorted(A.begin(), A.end());
        std::sort(sorted.begin(), sorted.end());
        int m = static_cast<int>(sorted.size());
        if (m < win_.arity) throw std::invalid_argument("window_restriction_check: |A| < n");
        F2Subspace lhs = induced_fiber_group(pm_->im(), sorted);
        // local image over a window of size m; colex order is preserved by
        // the monotone relabeling, so coordinates line up directly
        F2Subspace rhs = F2Subspace::from_generators(beta_matrix(m, win_.arity, win_.arity - 1).m);
        return lhs == rhs;
    }

private:
    GroundWindow win_;
    std::shared_ptr<PermModule> pm_;
};

}  // namespace mn
