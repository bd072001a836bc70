#include "minnorm/basis.hpp"

#include "minnorm/series.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/torus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

namespace minnorm {

namespace {

constexpr double kFourPi2 = 4.0 * M_PI * M_PI;

// Per-domain default caps for the reference truncation (torus: box
// half-width M; sphere: max degree L). Chosen so reference kernel
// evaluations stay affordable at desk scale; slowly decaying weight
// schemes hit the cap and the achieved tail is recorded instead.
std::int64_t default_cap(const Domain& dom, const WeightScheme& w) {
    if (dom.is_torus()) {
        if (dom.dim == 1) return std::int64_t{1} << 21;
        if (w.kind == WeightKind::MixedSobolev) return 65536;
        return dom.dim == 2 ? 512 : 32;
    }
    return w.kind == WeightKind::Ntk ? 4096 : 32768;
}

std::int64_t box_ordinals(int d, std::int64_t m) {
    std::int64_t n = 1;
    for (int j = 0; j < d; ++j) n *= 2 * m + 1;
    return n;
}

std::int64_t box_pairs(int d, std::int64_t m) { return (box_ordinals(d, m) - 1) / 2; }

// Largest box half-width whose ordinal count is <= p.
std::int64_t box_floor(int d, std::int64_t p) {
    std::int64_t m = 0;
    while (box_ordinals(d, m + 1) <= p) ++m;
    return m;
}

// --- rigorous torus tails ---

// sum_{|k| > M} 2 (1 + 4 pi^2 k^2)^{-s} for one dimension (pairs aggregated),
// i.e. the d=1 suffix starting after frequency M.
double tail_1d(double s, std::int64_t M) {
    const std::int64_t exact_to = M + 100000;
    double sum = 0.0;
    for (std::int64_t k = exact_to; k > M; --k)
        sum += 2.0 * std::pow(1.0 + kFourPi2 * double(k) * double(k), -s);
    double Ke = double(exact_to);
    sum += 2.0 * std::pow(kFourPi2, -s) *
           (std::pow(Ke, 1.0 - 2.0 * s) / (2.0 * s - 1.0) + std::pow(Ke, -2.0 * s));
    return sum;
}

// Closed-form upper bound used while searching for the reference half-width.
double tail_1d_search(double s, double M) {
    return 2.0 * std::pow(kFourPi2, -s) *
           (std::pow(M, 1.0 - 2.0 * s) / (2.0 * s - 1.0) + std::pow(M, -2.0 * s));
}

// Isotropic tail beyond the box |k|_inf <= M in d >= 2: exact shells up to a
// horizon, then an integral-test remainder using shell counts <= 2d(3m)^{d-1}.
double tail_iso_box(int d, double s, std::int64_t M) {
    if (d == 1) return tail_1d(s, M);
    const std::int64_t horizon = M + (d == 2 ? 2000 : 200);
    double sum = 0.0;
    // exact shell sums via one lex pass over the enclosing box
    {
        IVec k = IVec::Constant(d, -int(horizon));
        bool done = false;
        while (!done) {
            std::int64_t norm = 0;
            for (int j = 0; j < d; ++j) norm = std::max<std::int64_t>(norm, std::abs(k[j]));
            if (norm > M) {
                double n2 = 0.0;
                for (int j = 0; j < d; ++j) n2 += double(k[j]) * double(k[j]);
                sum += std::pow(1.0 + kFourPi2 * n2, -s);
            }
            int j = 0;
            for (; j < d; ++j) {
                if (k[j] < horizon) {
                    ++k[j];
                    break;
                }
                k[j] = -int(horizon);
            }
            done = j == d;
        }
    }
    double H = double(horizon);
    double rem = 2.0 * d * std::pow(3.0, d - 1) * std::pow(kFourPi2, -s) *
                 (std::pow(H, d - 2.0 * s) / (2.0 * s - d) + std::pow(H, d - 1.0 - 2.0 * s));
    return sum + rem;
}

double tail_iso_box_search(int d, double s, double M) {
    if (d == 1) return tail_1d_search(s, M);
    return 2.0 * d * std::pow(3.0, d - 1) * std::pow(kFourPi2, -s) *
           (std::pow(M, d - 2.0 * s) / (2.0 * s - d) + std::pow(M, d - 1.0 - 2.0 * s));
}

// Mixed-Sobolev: S1(M) = sum_{|k| <= M} (1+4pi^2 k^2)^{-s}; tail beyond the
// box is S1(inf)^d - S1(M)^d with S1(inf) replaced by a rigorous upper bound.
double mixed_S1(double s, std::int64_t M) {
    double sum = 0.0;
    for (std::int64_t k = M; k >= 1; --k)
        sum += 2.0 * std::pow(1.0 + kFourPi2 * double(k) * double(k), -s);
    return 1.0 + sum;
}

double mixed_S1_inf_ub(double s) { return mixed_S1(s, 100000) + tail_1d(s, 100000); }

double tail_mixed_box(int d, double s, std::int64_t M, double s1_inf_ub) {
    double sm = mixed_S1(s, M);
    return std::max(0.0, std::pow(s1_inf_ub, d) - std::pow(sm, d));
}

// --- sphere tail ---

// term(l) = N_l / omega_l / mu for present degrees (this equals the sup of
// the aggregated degree block of the kernel since |P_l| <= 1).
double sphere_term(const WeightScheme& w, int d, int ell, double mu) {
    if (!w.sphere_degree_present(ell)) return 0.0;
    return double(sphere_degree_dimension(d, ell)) / w.sphere_weight(ell, d) / mu;
}

// Remainder beyond degree L using N_l <= 2^{d-1} l^{d-2} / (d-2)! and the
// scheme's growth floor omega_l >= c l^a.
double sphere_remainder(const WeightScheme& w, int d, std::int64_t L, double mu) {
    double a, c;
    if (w.kind == WeightKind::SpherePower) {
        a = 2.0 * w.s;
        c = 1.0;
    } else { // NTK: sigma_l = C_d l^d on even degrees
        a = double(d);
        c = w.cd;
    }
    double fact = 1.0;
    for (int j = 2; j <= d - 2; ++j) fact *= j;
    double lead = std::pow(2.0, d - 1) / (fact * c);
    double Ld = double(L);
    return lead *
           (std::pow(Ld, d - 1.0 - a) / (a - d + 1.0) + std::pow(Ld, d - 2.0 - a)) / mu;
}

} // namespace

// ---------------------------------------------------------------------------
// Shared caches

struct TorusPairTable {
    std::int64_t shells = 0;            // complete through this shell
    std::vector<std::int32_t> flat;     // d * npairs rep vectors (lex-positive)
    std::vector<double> w2;             // 2 / omega per pair
    std::vector<double> suffix;         // suffix[i] = sum_{j>=i} w2[j] + beyond
    double beyond = 0.0;                // tail past the cached shells
};

struct BasisSpecCache {
    std::mutex mu;
    // torus d=1 (and the 1-D axis factor of mixed schemes):
    std::shared_ptr<const std::vector<double>> cc1d;     // cc[k] = 2/omega(k), cc[0]=1/omega(0)
    std::shared_ptr<const std::vector<double>> sfx1d;    // suffix sums of cc1d + beyond
    std::shared_ptr<const std::vector<double>> axis_cc;  // mixed d>=2 per-axis table
    // torus d>=2:
    std::shared_ptr<const TorusPairTable> pairs;
    // sphere:
    std::shared_ptr<const std::vector<double>> sph_coef;   // N_l/omega_l/mu (0 if absent)
    std::shared_ptr<const std::vector<double>> sph_suffix; // degree-tail sums
    std::shared_ptr<const std::vector<std::int64_t>> sph_blocks; // cumulative block sizes
};

struct BasisSpecAccess {
    static BasisSpecCache& cache(const BasisSpec& s) { return *s.cache_; }
    static const ReferenceOptions& opts(const BasisSpec& s) { return s.opts_; }
};

namespace {

// cc[k] = 2/omega(k e_1 ... scalar frequency k) for the 1-D enumeration.
std::shared_ptr<const std::vector<double>> build_cc1d(const WeightScheme& w, std::int64_t M) {
    auto t = std::make_shared<std::vector<double>>(std::size_t(M) + 1);
    IVec k(1);
    k[0] = 0;
    (*t)[0] = 1.0 / w.torus_weight(k);
    for (std::int64_t j = 1; j <= M; ++j) {
        k[0] = int(j);
        (*t)[std::size_t(j)] = 2.0 / w.torus_weight(k);
    }
    return t;
}

// Tables cover at least the reference; they grow on demand (snapshot swap)
// for truncations between the reference and the cap.
std::shared_ptr<const std::vector<double>> ensure_cc1d(const BasisSpec& spec,
                                                       std::int64_t halfwidth) {
    auto& c = BasisSpecAccess::cache(spec);
    std::int64_t M = std::max(halfwidth, spec.torus_reference_halfwidth());
    std::scoped_lock lk(c.mu);
    if (!c.cc1d || std::int64_t(c.cc1d->size()) < M + 1)
        c.cc1d = build_cc1d(spec.weights(), M);
    return c.cc1d;
}

// Per-axis factor table for mixed weights in d >= 2: (1+4pi^2 k^2)^{-s}.
std::shared_ptr<const std::vector<double>> ensure_axis_cc(const BasisSpec& spec,
                                                          std::int64_t halfwidth) {
    auto& c = BasisSpecAccess::cache(spec);
    std::int64_t M = std::max(halfwidth, spec.torus_reference_halfwidth());
    std::scoped_lock lk(c.mu);
    if (!c.axis_cc || std::int64_t(c.axis_cc->size()) < M + 1) {
        auto t = std::make_shared<std::vector<double>>(std::size_t(M) + 1);
        (*t)[0] = 1.0;
        for (std::int64_t k = 1; k <= M; ++k)
            (*t)[std::size_t(k)] =
                2.0 * std::pow(1.0 + kFourPi2 * double(k) * double(k), -spec.weights().s);
        c.axis_cc = t;
    }
    return c.axis_cc;
}

// Lex pass over the box [-M, M]^d collecting pair representatives bucketed by
// shell; pairs are represented by their lex-positive member and appear in the
// canonical order (shell ascending, lex order of the lex-negative member).
std::shared_ptr<const TorusPairTable> build_pairs(const BasisSpec& spec, std::int64_t M,
                                                  double beyond) {
    const int d = spec.domain().dim;
    auto tbl = std::make_shared<TorusPairTable>();
    tbl->shells = M;
    tbl->beyond = beyond;
    std::vector<std::vector<std::int32_t>> buckets(std::size_t(M) + 1);
    IVec k = IVec::Constant(d, -int(M));
    bool done = false;
    while (!done) {
        int norm = 0;
        bool decided = false, lexneg = false;
        for (int j = 0; j < d; ++j) {
            norm = std::max(norm, std::abs(k[j]));
            if (!decided && k[j] != 0) { // first nonzero decides the lex sign
                decided = true;
                lexneg = k[j] < 0;
            }
        }
        if (lexneg) {
            auto& b = buckets[std::size_t(norm)];
            for (int j = 0; j < d; ++j) b.push_back(-k[j]);
        }
        // advance in lexicographic order: the last coordinate varies fastest
        int j = d - 1;
        for (; j >= 0; --j) {
            if (k[j] < M) {
                ++k[j];
                break;
            }
            k[j] = -int(M);
        }
        done = j < 0;
    }
    for (std::int64_t m = 1; m <= M; ++m) {
        auto& b = buckets[std::size_t(m)];
        tbl->flat.insert(tbl->flat.end(), b.begin(), b.end());
    }
    std::size_t npairs = tbl->flat.size() / std::size_t(d);
    tbl->w2.resize(npairs);
    IVec rep(d);
    for (std::size_t i = 0; i < npairs; ++i) {
        for (int j = 0; j < d; ++j) rep[j] = tbl->flat[i * std::size_t(d) + std::size_t(j)];
        tbl->w2[i] = 2.0 / spec.weights().torus_weight(rep);
    }
    tbl->suffix.resize(npairs + 1);
    tbl->suffix[npairs] = beyond;
    for (std::size_t i = npairs; i-- > 0;) tbl->suffix[i] = tbl->suffix[i + 1] + tbl->w2[i];
    return tbl;
}

std::shared_ptr<const TorusPairTable> ensure_pairs(const BasisSpec& spec, std::int64_t shell) {
    auto& c = BasisSpecAccess::cache(spec);
    const int d = spec.domain().dim;
    const auto& w = spec.weights();
    std::scoped_lock lk(c.mu);
    if (c.pairs && c.pairs->shells >= shell) return c.pairs;
    std::int64_t cap = BasisSpecAccess::opts(spec).cap;
    std::int64_t M = std::min(std::max<std::int64_t>(shell, 8), cap);
    if (box_pairs(d, M) > (std::int64_t{1} << 23))
        throw std::invalid_argument("torus truncation too large for the pairwise path");
    double beyond;
    if (w.kind == WeightKind::MixedSobolev)
        beyond = tail_mixed_box(d, w.s, M, mixed_S1_inf_ub(w.s));
    else if (w.kind == WeightKind::IsotropicSobolev)
        beyond = tail_iso_box(d, w.s, M);
    else
        beyond = 0.0; // unit weights: tails are not defined (incompatible)
    return c.pairs = build_pairs(spec, M, beyond);
}

std::shared_ptr<const std::vector<double>> ensure_sphere_coef(const BasisSpec& spec,
                                                              int degree) {
    auto& c = BasisSpecAccess::cache(spec);
    int L = std::max(degree, spec.sphere_reference_degree());
    std::scoped_lock lk(c.mu);
    if (!c.sph_coef || int(c.sph_coef->size()) < L + 1) {
        int d = spec.domain().dim;
        double mu = sphere_area(d);
        auto t = std::make_shared<std::vector<double>>(std::size_t(L) + 1);
        for (int l = 0; l <= L; ++l) (*t)[std::size_t(l)] = sphere_term(spec.weights(), d, l, mu);
        c.sph_coef = t;
    }
    return c.sph_coef;
}

std::shared_ptr<const std::vector<double>> ensure_sphere_suffix(const BasisSpec& spec,
                                                                int degree) {
    auto& c = BasisSpecAccess::cache(spec);
    auto coef = ensure_sphere_coef(spec, degree);
    std::scoped_lock lk(c.mu);
    if (!c.sph_suffix || c.sph_suffix->size() != coef->size() + 1) {
        int L = int(coef->size()) - 1;
        auto t = std::make_shared<std::vector<double>>(coef->size() + 1);
        (*t)[coef->size()] = sphere_remainder(spec.weights(), spec.domain().dim, L,
                                              sphere_area(spec.domain().dim));
        for (std::size_t i = coef->size(); i-- > 0;) (*t)[i] = (*t)[i + 1] + (*coef)[i];
        c.sph_suffix = t;
    }
    return c.sph_suffix;
}

std::shared_ptr<const std::vector<std::int64_t>> ensure_sphere_blocks(const BasisSpec& spec) {
    auto& c = BasisSpecAccess::cache(spec);
    std::scoped_lock lk(c.mu);
    if (!c.sph_blocks) {
        int L = spec.sphere_reference_degree();
        int d = spec.domain().dim;
        auto t = std::make_shared<std::vector<std::int64_t>>();
        t->reserve(std::size_t(L) + 2);
        t->push_back(0);
        std::int64_t cum = 0;
        for (int l = 0; l <= L; ++l) {
            if (spec.weights().sphere_degree_present(l)) cum += sphere_degree_dimension(d, l);
            t->push_back(cum); // prefix size through degree l
        }
        c.sph_blocks = t;
    }
    return c.sph_blocks;
}

} // namespace

// ---------------------------------------------------------------------------
// BasisSpec

BasisSpec::BasisSpec(Domain domain, WeightScheme weights, ReferenceOptions opts)
    : domain_(domain), weights_(weights), opts_(opts),
      cache_(std::make_shared<BasisSpecCache>()) {
    if (domain_.is_torus() && weights_.is_sphere_scheme())
        throw std::invalid_argument("sphere weight scheme on a torus domain");
    if (domain_.is_sphere() && !weights_.is_sphere_scheme() &&
        weights_.kind != WeightKind::Unit)
        throw std::invalid_argument("torus weight scheme on a sphere domain");
    compatible_ = weights_.compatible_on(domain_);
    if (opts_.cap <= 0) opts_.cap = default_cap(domain_, weights_);

    if (!compatible_) {
        // no p=infinity surrogate, but finite truncations remain available
        // up to the same per-domain cap (tables are sized by these limits)
        reference_p_ = 0;
        torus_ref_halfwidth_ = opts_.cap;
        sphere_ref_degree_ = int(opts_.cap);
        limit_p_ = domain_.is_torus() ? box_ordinals(domain_.dim, opts_.cap)
                                      : sphere_block_size(int(opts_.cap));
        return;
    }
    const double tol = opts_.kernel_tol;
    if (domain_.is_torus()) {
        const int d = domain_.dim;
        const double s = weights_.s;
        const bool mixed = weights_.kind == WeightKind::MixedSobolev && d >= 2;
        std::int64_t lo = 1, hi = 1;
        auto search_tail = [&](std::int64_t M) {
            if (mixed) return tail_mixed_box(d, s, M, mixed_S1_inf_ub(s));
            return tail_iso_box_search(d, s, double(M));
        };
        while (hi < opts_.cap && search_tail(hi) > tol) hi = std::min(opts_.cap, hi * 2);
        if (search_tail(hi) > tol) {
            torus_ref_halfwidth_ = opts_.cap;
        } else {
            while (lo < hi) {
                std::int64_t mid = lo + (hi - lo) / 2;
                if (search_tail(mid) <= tol)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            torus_ref_halfwidth_ = hi;
        }
        reference_p_ = box_ordinals(d, torus_ref_halfwidth_);
        if (mixed)
            reference_tail_ = tail_mixed_box(d, s, torus_ref_halfwidth_, mixed_S1_inf_ub(s));
        else
            reference_tail_ = tail_iso_box(d, s, torus_ref_halfwidth_);
    } else {
        const int d = domain_.dim;
        const double mu = sphere_area(d);
        const std::int64_t cap = opts_.cap;
        std::vector<double> terms(std::size_t(cap) + 1);
        for (std::int64_t l = 0; l <= cap; ++l)
            terms[std::size_t(l)] = sphere_term(weights_, d, int(l), mu);
        std::vector<double> suffix(std::size_t(cap) + 2);
        suffix[std::size_t(cap) + 1] = sphere_remainder(weights_, d, cap, mu);
        for (std::int64_t l = cap; l >= 0; --l)
            suffix[std::size_t(l)] = suffix[std::size_t(l) + 1] + terms[std::size_t(l)];
        std::int64_t L = cap;
        for (std::int64_t l = 1; l <= cap; ++l) {
            if (suffix[std::size_t(l) + 1] <= tol) {
                L = l;
                break;
            }
        }
        // reference degree must be a present degree boundary
        while (L > 1 && !weights_.sphere_degree_present(int(L))) --L;
        sphere_ref_degree_ = int(L);
        reference_tail_ = suffix[std::size_t(L) + 1];
        reference_p_ = 0;
        for (int l = 0; l <= sphere_ref_degree_; ++l)
            if (weights_.sphere_degree_present(l)) reference_p_ += sphere_degree_dimension(d, l);
    }
    limit_p_ = domain_.is_torus() ? box_ordinals(domain_.dim, opts_.cap)
                                  : sphere_block_size(int(opts_.cap));
}

std::int64_t BasisSpec::reference_truncation() const {
    if (reference_p_ == 0)
        throw std::invalid_argument("weights are not compatible: no p=infinity surrogate");
    return reference_p_;
}

double BasisSpec::reference_tail() const {
    reference_truncation();
    return reference_tail_;
}

bool BasisSpec::reference_met_tol() const { return reference_tail() <= opts_.kernel_tol; }

std::int64_t BasisSpec::torus_reference_halfwidth() const {
    if (!domain_.is_torus()) throw std::invalid_argument("not a torus basis");
    return torus_ref_halfwidth_;
}

int BasisSpec::sphere_reference_degree() const {
    if (!domain_.is_sphere()) throw std::invalid_argument("not a sphere basis");
    return sphere_ref_degree_;
}

std::int64_t BasisSpec::aligned_truncation(std::int64_t p) const {
    if (p < 1) throw std::invalid_argument("truncation must be >= 1");
    p = std::min(p, limit_p_); // the cap bounds every truncation
    if (domain_.is_torus()) return p % 2 == 1 ? p : p - 1;
    // sphere: largest degree-block boundary <= p
    std::int64_t cum = 0, best = 0;
    for (int l = 0;; ++l) {
        if (weights_.sphere_degree_present(l)) {
            std::int64_t nl = sphere_degree_dimension(domain_.dim, l);
            if (cum + nl > p) break;
            cum += nl;
            best = cum;
        }
        if (cum == p) break;
    }
    if (best == 0) throw std::invalid_argument("truncation below the first degree block");
    return best;
}

bool BasisSpec::is_aligned(std::int64_t p) const { return aligned_truncation(p) == p; }

std::int64_t BasisSpec::torus_max_frequency(std::int64_t p) const {
    if (!domain_.is_torus()) throw std::invalid_argument("not a torus basis");
    std::int64_t a = aligned_truncation(p);
    if (domain_.dim == 1) return (a - 1) / 2;
    std::int64_t npairs = (a - 1) / 2, m = 0;
    while (box_pairs(domain_.dim, m) < npairs) ++m;
    return m;
}

int BasisSpec::sphere_max_degree(std::int64_t p) const {
    if (!domain_.is_sphere()) throw std::invalid_argument("not a sphere basis");
    std::int64_t a = aligned_truncation(p);
    std::int64_t cum = 0;
    int last = 0;
    for (int l = 0;; ++l) {
        if (weights_.sphere_degree_present(l)) {
            cum += sphere_degree_dimension(domain_.dim, l);
            last = l;
        }
        if (cum >= a) break;
    }
    return last;
}

std::int64_t BasisSpec::sphere_block_size(int max_degree) const {
    if (!domain_.is_sphere()) throw std::invalid_argument("not a sphere basis");
    std::int64_t cum = 0;
    for (int l = 0; l <= max_degree; ++l)
        if (weights_.sphere_degree_present(l)) cum += sphere_degree_dimension(domain_.dim, l);
    return cum;
}

std::string BasisSpec::describe() const {
    std::string s = domain_.describe() + ", " + weights_.describe();
    if (compatible_ && reference_p_ > 0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, ", P*=%lld (tail %.3e)",
                      static_cast<long long>(reference_p_), reference_tail_);
        s += buf;
    } else {
        s += ", incompatible";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Operations

std::vector<BasisIndex> enumerate_basis(const BasisSpec& spec, std::int64_t p) {
    if (p < 1) throw std::invalid_argument("enumerate_basis: p must be >= 1");
    std::vector<BasisIndex> out;
    out.reserve(std::size_t(p));
    if (spec.domain().is_torus()) {
        const int d = spec.domain().dim;
        IVec zero = IVec::Zero(d);
        out.push_back({0, TorusLabel{zero}});
        if (p == 1) return out;
        std::int64_t shell = box_floor(d, p) + 1; // enough shells to cover p ordinals
        auto pairs = ensure_pairs(spec, shell);
        std::int64_t need_pairs = std::min<std::int64_t>(
            (p + 1) / 2, std::int64_t(pairs->w2.size())); // may split the last pair
        for (std::int64_t i = 0; i < need_pairs && std::int64_t(out.size()) < p; ++i) {
            IVec rep(d);
            for (int j = 0; j < d; ++j) rep[j] = pairs->flat[std::size_t(i * d + j)];
            out.push_back({std::int64_t(out.size()), TorusLabel{IVec(-rep)}}); // sine member
            if (std::int64_t(out.size()) < p)
                out.push_back({std::int64_t(out.size()), TorusLabel{rep}}); // cosine member
        }
        if (std::int64_t(out.size()) < p)
            throw std::invalid_argument("enumerate_basis: p exceeds the cached enumeration");
    } else {
        const int d = spec.domain().dim;
        for (int l = 0; std::int64_t(out.size()) < p; ++l) {
            if (!spec.weights().sphere_degree_present(l)) continue;
            std::int64_t nl = sphere_degree_dimension(d, l);
            for (int m = 1; m <= nl && std::int64_t(out.size()) < p; ++m)
                out.push_back({std::int64_t(out.size()), SphereLabel{l, m}});
        }
    }
    return out;
}

double weight_of(const BasisSpec& spec, const BasisIndex& idx) {
    if (spec.domain().is_torus()) return spec.weights().torus_weight(idx.torus().freq);
    return spec.weights().sphere_weight(idx.sphere().degree, spec.domain().dim);
}

double eval_basis(const BasisSpec& spec, const BasisIndex& idx, const Vec& x) {
    if (x.size() != spec.domain().dim)
        throw std::invalid_argument("eval_basis: point dimension mismatch");
    if (spec.domain().is_torus()) {
        const auto& lab = idx.torus();
        if (lab.is_constant()) return 1.0;
        double ang = 0.0;
        const int sign = lab.lex_positive() ? 1 : -1; // use the lex-positive representative
        for (int j = 0; j < x.size(); ++j) ang += sign * double(lab.freq[j]) * x[j];
        ang *= 2.0 * M_PI;
        return lab.is_cosine() ? std::sqrt(2.0) * std::cos(ang) : std::sqrt(2.0) * std::sin(ang);
    }
    if (spec.domain().dim != 3)
        throw std::invalid_argument("explicit spherical harmonics exist only for ambient d=3");
    if (std::abs(x.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("eval_basis: point is not on the unit sphere");
    return real_harmonic_d3(idx.sphere().degree, idx.sphere().order, x);
}

namespace {

void sphere_kernel_batch_impl(const BasisSpec& spec, int L, std::span<const double> ts,
                              std::span<double> out) {
    auto coef = ensure_sphere_coef(spec, L);
    const int d = spec.domain().dim;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double t = std::clamp(ts[i], -1.0, 1.0);
        double pm2 = 1.0, pm1 = t;
        double acc = (*coef)[0];
        if (L >= 1) acc += (*coef)[1] * t;
        for (int l = 2; l <= L; ++l) {
            double pl = ((2.0 * l + d - 4.0) * t * pm1 - (l - 1.0) * pm2) / double(l + d - 3);
            acc += (*coef)[std::size_t(l)] * pl;
            pm2 = pm1;
            pm1 = pl;
        }
        out[i] = acc;
    }
}

// Torus d>=2 kernel via the cached pair list: per evaluation build per-axis
// complex exponential tables, then accumulate 2/omega * cos(2 pi k.t).
double torus_kernel_pairs(const BasisSpec& spec, std::int64_t npairs, const Vec& t) {
    const int d = spec.domain().dim;
    std::int64_t shell = 0;
    while (box_pairs(d, shell) < npairs) ++shell;
    auto pairs = ensure_pairs(spec, shell);
    std::int64_t M = pairs->shells;
    std::vector<std::complex<double>> etab(std::size_t(d) * std::size_t(M + 1));
    for (int j = 0; j < d; ++j) {
        std::complex<double> step(std::cos(2.0 * M_PI * t[j]), std::sin(2.0 * M_PI * t[j]));
        std::complex<double> cur(1.0, 0.0);
        for (std::int64_t k = 0; k <= M; ++k) {
            etab[std::size_t(j) * std::size_t(M + 1) + std::size_t(k)] = cur;
            cur *= step;
        }
    }
    double acc = 1.0 / spec.weights().torus_weight(IVec::Zero(d));
    for (std::int64_t i = 0; i < npairs; ++i) {
        std::complex<double> prod(1.0, 0.0);
        for (int j = 0; j < d; ++j) {
            std::int32_t kj = pairs->flat[std::size_t(i * d + j)];
            const auto& e = etab[std::size_t(j) * std::size_t(M + 1) + std::size_t(std::abs(kj))];
            prod *= kj >= 0 ? e : std::conj(e);
        }
        acc += pairs->w2[std::size_t(i)] * prod.real();
    }
    return acc;
}

} // namespace

void kernel_truncated_batch(const BasisSpec& spec, std::int64_t p, std::span<const double> ts,
                            std::span<double> out) {
    if (ts.size() != out.size())
        throw std::invalid_argument("kernel_truncated_batch: size mismatch");
    std::int64_t a = spec.aligned_truncation(p);
    if (spec.domain().is_torus()) {
        if (spec.domain().dim != 1)
            throw std::invalid_argument("scalar kernel batch requires torus d=1 or a sphere");
        std::int64_t M = (a - 1) / 2;
        auto cc = ensure_cc1d(spec, M);
        cosine_series_batch(std::span<const double>(cc->data(), std::size_t(M) + 1), ts, out);
        return;
    }
    sphere_kernel_batch_impl(spec, spec.sphere_max_degree(a), ts, out);
}

double kernel_truncated_scalar(const BasisSpec& spec, std::int64_t p, double t) {
    double out;
    kernel_truncated_batch(spec, p, std::span<const double>(&t, 1), std::span<double>(&out, 1));
    return out;
}

double kernel_truncated(const BasisSpec& spec, std::int64_t p, const Vec& x, const Vec& y) {
    const int d = spec.domain().dim;
    if (x.size() != d || y.size() != d)
        throw std::invalid_argument("kernel_truncated: point dimension mismatch");
    std::int64_t a = spec.aligned_truncation(p);
    if (spec.domain().is_sphere()) {
        double t = x.dot(y) / (x.norm() * y.norm());
        return kernel_truncated_scalar(spec, a, t);
    }
    if (d == 1) return kernel_truncated_scalar(spec, a, x[0] - y[0]);
    // mixed weights factor over axes at full-box truncations
    std::int64_t npairs = (a - 1) / 2;
    if (spec.weights().kind == WeightKind::MixedSobolev) {
        std::int64_t m = box_floor(d, a);
        if (box_ordinals(d, m) == a) {
            auto axis = ensure_axis_cc(spec, m);
            std::span<const double> tab(axis->data(), std::size_t(m) + 1);
            double prod = 1.0;
            for (int j = 0; j < d; ++j) {
                double tj = x[j] - y[j], kj;
                cosine_series_batch(tab, std::span<const double>(&tj, 1),
                                    std::span<double>(&kj, 1));
                prod *= kj;
            }
            return prod;
        }
    }
    Vec t = x - y;
    return torus_kernel_pairs(spec, npairs, t);
}

double tail_bound(const BasisSpec& spec, std::int64_t p) {
    if (!spec.compatible())
        throw std::invalid_argument("tail_bound: weights are not compatible");
    std::int64_t a = spec.aligned_truncation(p);
    if (spec.domain().is_torus()) {
        const int d = spec.domain().dim;
        std::int64_t npairs = (a - 1) / 2;
        if (d == 1) {
            auto& c = BasisSpecAccess::cache(spec);
            auto cc = ensure_cc1d(spec, npairs);
            std::shared_ptr<const std::vector<double>> sfx;
            {
                std::scoped_lock lk(c.mu);
                if (!c.sfx1d || c.sfx1d->size() != cc->size() + 1) {
                    auto t = std::make_shared<std::vector<double>>(cc->size() + 1);
                    (*t)[cc->size()] =
                        tail_1d(spec.weights().s, std::int64_t(cc->size()) - 1);
                    for (std::size_t i = cc->size(); i-- > 1;)
                        (*t)[i] = (*t)[i + 1] + (*cc)[i];
                    c.sfx1d = t;
                }
                sfx = c.sfx1d;
            }
            return (*sfx)[std::size_t(npairs) + 1];
        }
        if (spec.weights().kind == WeightKind::MixedSobolev &&
            npairs > box_pairs(d, 512)) {
            // beyond the cached pair range: bound by the tail at the largest
            // full box inside the prefix (valid and monotone, slightly loose)
            std::int64_t m = box_floor(d, a);
            return tail_mixed_box(d, spec.weights().s, m, mixed_S1_inf_ub(spec.weights().s));
        }
        std::int64_t shell = 0;
        while (box_pairs(d, shell) < npairs) ++shell;
        auto pairs = ensure_pairs(spec, shell);
        return pairs->suffix[std::size_t(npairs)];
    }
    int L = spec.sphere_max_degree(a);
    auto sfx = ensure_sphere_suffix(spec, L);
    return (*sfx)[std::size_t(L) + 1];
}

// ---------------------------------------------------------------------------
// MixedAxisKernel

MixedAxisKernel::MixedAxisKernel(const BasisSpec& spec, std::int64_t p) : spec_(spec) {
    if (!spec.domain().is_torus() || spec.weights().kind != WeightKind::MixedSobolev)
        throw std::invalid_argument("MixedAxisKernel requires mixed-Sobolev torus weights");
    p_ = spec.aligned_truncation(p);
    const int d = spec.domain().dim;
    halfwidth_ = box_floor(d, p_);
    if (box_ordinals(d, halfwidth_) != p_)
        throw std::invalid_argument("MixedAxisKernel requires a full-box truncation");
    table_ = d == 1 ? ensure_cc1d(spec, halfwidth_) : ensure_axis_cc(spec, halfwidth_);
}

double MixedAxisKernel::axis(double t) const {
    t = torus_signed(t); // canonical key: factors are even and 1-periodic
    t = std::abs(t);
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    double out;
    std::span<const double> tab(table_->data(), std::size_t(halfwidth_) + 1);
    cosine_series_batch(tab, std::span<const double>(&t, 1), std::span<double>(&out, 1));
    memo_.emplace(t, out);
    return out;
}

double MixedAxisKernel::operator()(const Vec& x, const Vec& y) const {
    double prod = 1.0;
    for (int j = 0; j < spec_.domain().dim; ++j) prod *= axis(x[j] - y[j]);
    return prod;
}

} // namespace minnorm
