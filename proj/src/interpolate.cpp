#include "minnorm/interpolate.hpp"

#include "minnorm/series.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/torus.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <mutex>

namespace minnorm {

namespace {
constexpr std::int64_t kDenseCap = 32768; // largest p for a materialized A_p

bool basis_evaluable(const BasisSpec& spec) {
    return spec.domain().is_torus() || spec.domain().dim == 3;
}
} // namespace

// ---------------------------------------------------------------------------
// SampleSet

SampleSet::SampleSet(Domain domain, std::vector<Vec> points, Vec values)
    : domain_(domain), points_(std::move(points)), values_(std::move(values)) {
    if (points_.empty()) throw std::invalid_argument("SampleSet: at least one point required");
    if (std::int64_t(points_.size()) != values_.size())
        throw std::invalid_argument("SampleSet: point/value count mismatch");
    for (auto& p : points_) {
        if (p.size() != domain_.dim) throw std::invalid_argument("SampleSet: dimension mismatch");
        p = domain_.is_torus() ? torus_canonicalize(p) : sphere_normalize(p);
    }
    if (!values_.allFinite()) throw std::invalid_argument("SampleSet: values must be finite");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            double d = domain_.is_torus() ? torus_distance(points_[i], points_[j])
                                          : sphere_distance(points_[i], points_[j]);
            if (d <= tol::point_distinct)
                throw std::invalid_argument("SampleSet: points must be pairwise distinct");
        }
    }
}

double SampleSet::mesh_norm() const {
    if (!geom_->h) geom_->h = minnorm::mesh_norm(points_, domain_).value;
    return *geom_->h;
}

double SampleSet::separation() const {
    if (!geom_->q) geom_->q = separation_radius(points_, domain_);
    return *geom_->q;
}

int SampleSet::symmetric_pairs() const {
    if (!geom_->sym)
        geom_->sym = domain_.is_sphere() ? count_symmetric_points(points_) : 0;
    return *geom_->sym;
}

// ---------------------------------------------------------------------------
// GramSystem

struct GramSystem::Eig {
    std::mutex mu;
    bool ldlt_done = false;
    Eigen::LDLT<Mat> ldlt;
    bool eig_done = false;
    Vec evals;
    Mat evecs;
};

GramSystem::GramSystem(const BasisSpec& spec, SampleSet X, std::int64_t p_requested,
                       std::int64_t p)
    : spec_(spec), X_(std::move(X)), p_requested_(p_requested), p_(p),
      eig_(std::make_shared<Eig>()) {}

GramSystem GramSystem::assemble(const BasisSpec& spec, const SampleSet& X, std::int64_t p) {
    if (X.domain() != spec.domain())
        throw std::invalid_argument("assemble: sample set domain does not match the basis");
    std::int64_t a = spec.aligned_truncation(p);
    GramSystem g(spec, X, p, a);
    const auto& pts = X.points();
    const std::int64_t n = X.size();
    g.K_.resize(n, n);
    if (spec.domain().is_torus() && spec.domain().dim == 1) {
        std::vector<double> ts, vals;
        ts.reserve(std::size_t(n * (n + 1) / 2));
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j) ts.push_back(pts[std::size_t(i)][0] - pts[std::size_t(j)][0]);
        vals.resize(ts.size());
        kernel_truncated_batch(spec, a, ts, vals);
        std::size_t idx = 0;
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j) {
                g.K_(i, j) = vals[idx];
                g.K_(j, i) = vals[idx];
                ++idx;
            }
    } else if (spec.domain().is_sphere()) {
        std::vector<double> ts, vals;
        ts.reserve(std::size_t(n * (n + 1) / 2));
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j)
                ts.push_back(pts[std::size_t(i)].dot(pts[std::size_t(j)]));
        vals.resize(ts.size());
        kernel_truncated_batch(spec, a, ts, vals);
        std::size_t idx = 0;
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j) {
                g.K_(i, j) = vals[idx];
                g.K_(j, i) = vals[idx];
                ++idx;
            }
    } else if (spec.weights().kind == WeightKind::MixedSobolev &&
               [&] {
                   // full-box truncations factor over axes; use the memoized path
                   try {
                       MixedAxisKernel probe(spec, a);
                       return true;
                   } catch (const std::invalid_argument&) {
                       return false;
                   }
               }()) {
        MixedAxisKernel kern(spec, a);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j) {
                double v = kern(pts[std::size_t(i)], pts[std::size_t(j)]);
                g.K_(i, j) = v;
                g.K_(j, i) = v;
            }
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i; j < n; ++j) {
                double v = kernel_truncated(spec, a, pts[std::size_t(i)], pts[std::size_t(j)]);
                g.K_(i, j) = v;
                g.K_(j, i) = v;
            }
    }
    if (a <= kDenseCap && basis_evaluable(spec)) {
        auto idxs = enumerate_basis(spec, a);
        Mat A(a, n);
        for (std::int64_t j = 0; j < a; ++j)
            for (std::int64_t k = 0; k < n; ++k)
                A(j, k) = eval_basis(spec, idxs[std::size_t(j)], pts[std::size_t(k)]);
        g.A_ = std::move(A);
    }
    return g;
}

const Mat& GramSystem::design_matrix() const {
    if (!A_) throw std::invalid_argument("design matrix not materialized at this truncation");
    return *A_;
}

Vec GramSystem::weight_reciprocals() const {
    auto idxs = enumerate_basis(spec_, p_);
    Vec w(p_);
    for (std::int64_t j = 0; j < p_; ++j) w[j] = 1.0 / weight_of(spec_, idxs[std::size_t(j)]);
    return w;
}

void GramSystem::ensure_eigen() const {
    std::scoped_lock lk(eig_->mu);
    if (eig_->eig_done) return;
    Eigen::SelfAdjointEigenSolver<Mat> es(K_);
    eig_->evals = es.eigenvalues();
    eig_->evecs = es.eigenvectors();
    eig_->eig_done = true;
}

double GramSystem::lambda_min() const {
    ensure_eigen();
    return eig_->evals.minCoeff();
}

double GramSystem::lambda_max() const {
    ensure_eigen();
    return eig_->evals.maxCoeff();
}

double GramSystem::cond_estimate() const {
    ensure_eigen();
    double lmin = eig_->evals.minCoeff(), lmax = eig_->evals.maxCoeff();
    if (lmin <= 0) return std::numeric_limits<double>::infinity();
    return lmax / lmin;
}

Vec GramSystem::pseudo_solve(const Vec& y, SolveInfo& info) const {
    ensure_eigen();
    const double lmax = eig_->evals.cwiseAbs().maxCoeff();
    const double cutoff = double(K_.rows()) * std::numeric_limits<double>::epsilon() * lmax;
    Vec inv = eig_->evals;
    std::int64_t rank = 0;
    for (std::int64_t i = 0; i < inv.size(); ++i) {
        if (std::abs(inv[i]) > cutoff) {
            inv[i] = 1.0 / inv[i];
            ++rank;
        } else {
            inv[i] = 0.0;
        }
    }
    info.rank = rank;
    info.used_pseudo = true;
    info.lambda_min = eig_->evals.minCoeff();
    info.lambda_max = eig_->evals.maxCoeff();
    info.cond_estimate = info.lambda_min > 0
                             ? info.lambda_max / info.lambda_min
                             : std::numeric_limits<double>::infinity();
    return eig_->evecs * inv.asDiagonal() * (eig_->evecs.transpose() * y);
}

namespace {

// Residual r = y - K c accumulated in long double; drives the iterative
// refinement that keeps interpolation residuals near machine level even for
// badly conditioned Gram systems.
Vec long_residual(const Mat& K, const Vec& c, const Vec& y) {
    const std::int64_t n = K.rows();
    Vec r(n);
    for (std::int64_t i = 0; i < n; ++i) {
        long double acc = y[i];
        for (std::int64_t j = 0; j < n; ++j)
            acc -= static_cast<long double>(K(i, j)) * static_cast<long double>(c[j]);
        r[i] = double(acc);
    }
    return r;
}

} // namespace

Vec GramSystem::solve(const Vec& y, SolveInfo& info, const SolveOptions& opts) const {
    info = SolveInfo{};
    info.rank = K_.rows();
    const bool small = K_.rows() <= 600;
    if (small) {
        info.cond_estimate = cond_estimate();
        info.lambda_min = lambda_min();
        info.lambda_max = lambda_max();
    }
    {
        std::scoped_lock lk(eig_->mu);
        if (!eig_->ldlt_done) {
            eig_->ldlt.compute(K_);
            eig_->ldlt_done = true;
        }
    }
    // a finite factorization is enough to try; the refined residual decides
    bool ldlt_ok = eig_->ldlt.info() == Eigen::Success;
    if (!small && ldlt_ok) {
        Vec d = eig_->ldlt.vectorD();
        double dmax = d.maxCoeff(), dmin = d.minCoeff();
        info.lambda_max = dmax;
        info.lambda_min = dmin;
        info.cond_estimate =
            dmin > 0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    }
    if (opts.strict && !(info.cond_estimate <= opts.cond_max))
        throw IllConditionedError(info.cond_estimate);
    if (ldlt_ok) {
        Vec c = eig_->ldlt.solve(y);
        const double eps = std::numeric_limits<double>::epsilon();
        const double knorm = K_.cwiseAbs().rowwise().sum().maxCoeff();
        auto floor_for = [&](const Vec& cc) {
            // attainable residual: rounding of K c plus a small absolute term
            return 8.0 * double(K_.rows()) * eps * knorm * cc.lpNorm<Eigen::Infinity>() +
                   1e-13 * (1.0 + y.lpNorm<Eigen::Infinity>());
        };
        for (int it = 0; it < 4; ++it) {
            Vec r = long_residual(K_, c, y);
            if (r.lpNorm<Eigen::Infinity>() <= floor_for(c)) break;
            Vec dc = eig_->ldlt.solve(r);
            if (!dc.allFinite()) break;
            c += dc;
        }
        Vec r = long_residual(K_, c, y);
        if (c.allFinite() && r.lpNorm<Eigen::Infinity>() <= 100.0 * floor_for(c)) return c;
    }
    // factorization failed or refinement stalled: eigenvalue-cutoff solve
    if (opts.strict) throw IllConditionedError(info.cond_estimate);
    return pseudo_solve(y, info);
}

// ---------------------------------------------------------------------------
// Interpolant

Interpolant Interpolant::from_coefficients(BasisSpec spec, std::int64_t p, Vec coeffs) {
    if (coeffs.size() != p) throw std::invalid_argument("coefficient count must equal p");
    Interpolant f(std::move(spec));
    f.rep_ = Rep::Coefficients;
    f.p_ = p;
    f.coeffs_ = std::move(coeffs);
    return f;
}

Interpolant Interpolant::from_kernel(std::shared_ptr<const GramSystem> gram, Vec c) {
    if (!gram) throw std::invalid_argument("null Gram system");
    if (c.size() != gram->samples().size())
        throw std::invalid_argument("kernel weight count must equal the sample count");
    Interpolant f(gram->spec());
    f.rep_ = Rep::KernelExpansion;
    f.p_ = gram->truncation();
    f.c_ = std::move(c);
    f.gram_ = std::move(gram);
    return f;
}

bool Interpolant::has_coefficients() const {
    return rep_ == Rep::Coefficients || (gram_ && gram_->has_design_matrix());
}

const Vec& Interpolant::coefficients() const {
    if (rep_ == Rep::Coefficients) return coeffs_;
    if (!coeff_cache_) {
        const Mat& A = gram_->design_matrix();
        Vec w = gram_->weight_reciprocals();
        coeff_cache_ = w.asDiagonal() * (A * c_);
    }
    return *coeff_cache_;
}

const Vec& Interpolant::kernel_weights() const {
    if (rep_ != Rep::KernelExpansion)
        throw std::invalid_argument("interpolant has no kernel expansion");
    return c_;
}

const GramSystem& Interpolant::gram() const {
    if (!gram_) throw std::invalid_argument("interpolant carries no Gram system");
    return *gram_;
}

namespace {

// Fast evaluation of a d=1 torus coefficient series on many points.
Vec eval_coeff_torus1(const BasisSpec& spec, const Vec& coeffs, const std::vector<Vec>& xs) {
    const std::int64_t p = coeffs.size();
    const std::int64_t M = (p - 1) / 2;
    std::vector<double> ccos(std::size_t(M) + 1, 0.0), csin(std::size_t(M) + 1, 0.0);
    ccos[0] = coeffs[0];
    const double r2 = std::sqrt(2.0);
    for (std::int64_t k = 1; k <= M; ++k) {
        csin[std::size_t(k)] = r2 * coeffs[2 * k - 1];
        ccos[std::size_t(k)] = r2 * coeffs[2 * k];
    }
    std::vector<double> ts(xs.size()), out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ts[i] = xs[i][0];
    trig_series_batch(ccos, csin, ts, out);
    Vec v(std::int64_t(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v[std::int64_t(i)] = out[i];
    (void)spec;
    return v;
}

} // namespace

Vec Interpolant::eval_many(const std::vector<Vec>& xs) const {
    Vec out(std::int64_t(xs.size()));
    const bool torus1 = spec_.domain().is_torus() && spec_.domain().dim == 1;
    if (rep_ == Rep::Coefficients ||
        (torus1 && gram_ && gram_->has_design_matrix() && spec_.is_aligned(p_))) {
        const Vec& co = coefficients(); // kernel reps convert via W A c
        if (torus1 && spec_.is_aligned(p_)) return eval_coeff_torus1(spec_, co, xs);
        auto idxs = enumerate_basis(spec_, p_);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double acc = 0.0;
            for (std::int64_t j = 0; j < p_; ++j)
                acc += co[j] * eval_basis(spec_, idxs[std::size_t(j)], xs[i]);
            out[std::int64_t(i)] = acc;
        }
        return out;
    }
    const auto& X = gram_->samples().points();
    const std::int64_t n = std::int64_t(X.size());
    const bool scalar_torus = spec_.domain().is_torus() && spec_.domain().dim == 1;
    if (scalar_torus || spec_.domain().is_sphere()) {
        // chunked batched kernel evaluation
        const std::int64_t chunk = std::max<std::int64_t>(1, (1 << 20) / std::max<std::int64_t>(n, 1));
        std::vector<double> ts, vals;
        for (std::int64_t i0 = 0; i0 < std::int64_t(xs.size()); i0 += chunk) {
            std::int64_t i1 = std::min<std::int64_t>(std::int64_t(xs.size()), i0 + chunk);
            ts.resize(std::size_t((i1 - i0) * n));
            vals.resize(ts.size());
            for (std::int64_t i = i0; i < i1; ++i)
                for (std::int64_t k = 0; k < n; ++k)
                    ts[std::size_t((i - i0) * n + k)] =
                        scalar_torus ? xs[std::size_t(i)][0] - X[std::size_t(k)][0]
                                     : xs[std::size_t(i)].dot(X[std::size_t(k)]);
            kernel_truncated_batch(spec_, p_, ts, vals);
            for (std::int64_t i = i0; i < i1; ++i) {
                double acc = 0.0;
                for (std::int64_t k = 0; k < n; ++k)
                    acc += c_[k] * vals[std::size_t((i - i0) * n + k)];
                out[i] = acc;
            }
        }
        return out;
    }
    if (spec_.weights().kind == WeightKind::MixedSobolev) {
        try {
            MixedAxisKernel kern(spec_, p_);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double acc = 0.0;
                for (std::int64_t k = 0; k < n; ++k)
                    acc += c_[k] * kern(xs[i], X[std::size_t(k)]);
                out[std::int64_t(i)] = acc;
            }
            return out;
        } catch (const std::invalid_argument&) {
            // non-box truncation: fall through to the generic path
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double acc = 0.0;
        for (std::int64_t k = 0; k < n; ++k)
            acc += c_[k] * kernel_truncated(spec_, p_, xs[i], X[std::size_t(k)]);
        out[std::int64_t(i)] = acc;
    }
    return out;
}

double Interpolant::operator()(const Vec& x) const {
    std::vector<Vec> xs{x};
    return eval_many(xs)[0];
}

double Interpolant::weighted_norm() const {
    if (rep_ == Rep::KernelExpansion) {
        double q = c_.dot(gram_->kernel_matrix() * c_);
        return std::sqrt(std::max(0.0, q));
    }
    auto idxs = enumerate_basis(spec_, p_);
    double acc = 0.0;
    for (std::int64_t j = 0; j < p_; ++j)
        acc += weight_of(spec_, idxs[std::size_t(j)]) * coeffs_[j] * coeffs_[j];
    return std::sqrt(acc);
}

double weighted_norm(const BasisSpec& spec, const Interpolant& f) {
    if (f.spec().domain() != spec.domain())
        throw std::invalid_argument("weighted_norm: domain mismatch");
    return f.weighted_norm();
}

// ---------------------------------------------------------------------------
// Solvers

Interpolant min_norm_interpolant(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                                 const SolveOptions& opts, SolveInfo* info_out) {
    std::int64_t a = spec.aligned_truncation(p);
    if (a < X.size()) {
        // K_p has rank <= p < n: the sample set is not interpolable at this
        // truncation (p below p_X).
        throw RankError(a, X.size());
    }
    auto gram = std::make_shared<GramSystem>(GramSystem::assemble(spec, X, a));
    SolveInfo info;
    Vec c = gram->solve(X.values(), info, opts);
    if (info_out) *info_out = info;
    return Interpolant::from_kernel(std::move(gram), std::move(c));
}

Interpolant kernel_interpolant(const BasisSpec& spec, const SampleSet& X,
                               const SolveOptions& opts, SolveInfo* info_out) {
    // the reference must also make X interpolable: K_p needs rank n, so lift
    // fast-converging references (tiny P*) to an admissible p >= 2n+1
    std::int64_t p = spec.reference_truncation();
    if (p < 2 * X.size() + 1) {
        if (spec.domain().is_torus()) {
            p = 2 * X.size() + 1;
        } else {
            int L = 1;
            while (spec.sphere_block_size(L) < 2 * X.size() + 1) ++L;
            p = spec.sphere_block_size(L);
        }
        p = std::min(p, spec.truncation_limit());
    }
    return min_norm_interpolant(spec, X, p, opts, info_out);
}

Interpolant least_squares_fit(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                              SolveInfo* info_out) {
    std::int64_t a = spec.aligned_truncation(p);
    if (a > X.size()) throw std::invalid_argument("least_squares_fit requires p <= n");
    auto gram = GramSystem::assemble(spec, X, a);
    const Mat& A = gram.design_matrix(); // p x n
    Eigen::ColPivHouseholderQR<Mat> qr(A.transpose());
    qr.setThreshold(1e-12);
    if (qr.rank() < a) throw RankError(qr.rank(), a);
    Vec coeffs = qr.solve(X.values());
    if (info_out) {
        *info_out = SolveInfo{};
        info_out->rank = qr.rank();
        Vec diag = qr.matrixR().diagonal().cwiseAbs();
        info_out->cond_estimate = diag.maxCoeff() / diag.minCoeff();
    }
    return Interpolant::from_coefficients(spec, a, std::move(coeffs));
}

Interpolant least_squares_kernel_form(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                                      SolveInfo* info_out) {
    std::int64_t a = spec.aligned_truncation(p);
    auto gram = std::make_shared<GramSystem>(GramSystem::assemble(spec, X, a));
    SolveInfo info;
    Vec c = gram->pseudo_solve(X.values(), info);
    if (info_out) *info_out = info;
    return Interpolant::from_kernel(std::move(gram), std::move(c));
}

Interpolant near_optimal_interpolant(const BasisSpec& spec, const SampleSet& X,
                                     const CoefficientTarget& target, std::int64_t p,
                                     const SolveOptions& opts) {
    std::int64_t a = spec.aligned_truncation(p);
    if (a < X.size()) throw RankError(a, X.size());
    // h = L2 projection of the target onto the first p basis functions
    Vec h = Vec::Zero(a);
    std::int64_t keep = std::min<std::int64_t>(a, target.coefficients.size());
    h.head(keep) = target.coefficients.head(keep);
    Interpolant proj = Interpolant::from_coefficients(spec, a, h);
    Vec u(X.size());
    Vec hx = proj.eval_many(X.points());
    for (std::int64_t j = 0; j < X.size(); ++j)
        u[j] = target.evaluate(X.points()[std::size_t(j)]) - hx[j];
    auto gram = std::make_shared<GramSystem>(GramSystem::assemble(spec, X, a));
    SolveInfo info;
    Vec c = gram->solve(u, info, opts);
    if (!gram->has_design_matrix())
        throw std::invalid_argument("near_optimal_interpolant requires an evaluable basis");
    Vec gp = gram->weight_reciprocals().asDiagonal() * (gram->design_matrix() * c);
    return Interpolant::from_coefficients(spec, a, h + gp);
}

double interpolation_residual(const Interpolant& f, const SampleSet& X) {
    Vec fx = f.eval_many(X.points());
    return (fx - X.values()).lpNorm<Eigen::Infinity>();
}

} // namespace minnorm
