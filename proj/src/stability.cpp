#include "gframe/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gframe/errors.hpp"
#include "gframe/linalg.hpp"
#include "gframe/random.hpp"

namespace gframe {

std::string to_string(PerturbationKind k)
{
    switch (k) {
    case PerturbationKind::equivalence_M: return "equivalence_M";
    case PerturbationKind::sum: return "sum";
    case PerturbationKind::weighted: return "weighted";
    case PerturbationKind::additive: return "additive";
    }
    return "?";
}

PerturbationKind parse_perturbation_kind(const std::string& s)
{
    if (s == "equivalence_M" || s == "equivalence") return PerturbationKind::equivalence_M;
    if (s == "sum") return PerturbationKind::sum;
    if (s == "weighted") return PerturbationKind::weighted;
    if (s == "additive") return PerturbationKind::additive;
    throw InputError("unknown perturbation kind '" + s + "'");
}

namespace {

void require_cc(const GFrameSystem& s, const char* which)
{
    const double d = op_distance(s.C(), s.Cp());
    if (d > s.commute_tol() * std::max(1.0, op_norm(s.C())))
        throw InputError(std::string(which) + ": perturbation checks need C' = C");
}

void require_family_shape(const GFrameSystem& t, const Family& r)
{
    const Family& f = t.family();
    if (f.size() != r.size()) throw InputError("perturbed family has a different number of members");
    for (size_t k = 0; k < f.size(); ++k) {
        if (!(r[k].descriptor() == f[k].descriptor()) || r[k].in_rank() != f[k].in_rank() ||
            r[k].out_rank() != f[k].out_rank())
            throw InputError("perturbed family member " + std::to_string(k) + " has a different shape");
    }
}

void require_same_structure(const GFrameSystem& a, const GFrameSystem& b)
{
    require_cc(a, "first system");
    require_cc(b, "second system");
    if (!(a.measure() == b.measure())) throw InputError("systems use different measure spaces");
    require_family_shape(a, b.family());
    if (op_distance(a.C(), b.C()) > a.commute_tol() * std::max(1.0, op_norm(a.C())))
        throw InputError("systems use different controls");
}

Family weighted(const Family& f, const std::vector<double>& w)
{
    Family out;
    out.reserve(f.size());
    for (size_t k = 0; k < f.size(); ++k) out.push_back(cplx(w[k]) * f[k]);
    return out;
}

Family difference(const Family& f, const Family& g)
{
    Family out;
    out.reserve(f.size());
    for (size_t k = 0; k < f.size(); ++k) out.push_back(f[k] - g[k]);
    return out;
}

// Random unit vectors, then the eigenvectors of every listed frame operator.
std::vector<ModuleVector> probe_vectors(const std::vector<const GFrameSystem*>& systems, int samples,
                                        std::uint64_t seed)
{
    const GFrameSystem& s0 = *systems.front();
    Rng rng(mix_seed(seed, 0x57ab));
    std::vector<ModuleVector> xs;
    for (int i = 0; i < samples; ++i) xs.push_back(random_unit_vector(rng, s0.descriptor(), s0.module_rank()));
    for (const GFrameSystem* s : systems) {
        const CMatrix f = flatten(frame_operator(*s));
        const linalg::HermitianSpectrum sp = linalg::hermitian_spectrum(0.5 * (f + f.adjoint()));
        for (Eigen::Index c = 0; c < sp.vectors.cols(); ++c) {
            CVector v = sp.vectors.col(c).conjugate();
            xs.push_back(from_flat_row(s0.descriptor(), s0.module_rank(), v));
        }
    }
    return xs;
}

double gram_norm(const GFrameSystem& s, const ModuleVector& x)
{
    return norm(controlled_gram(s, x, Execution::serial));
}

double excess(double value, double bound)
{
    return std::max(0.0, value - bound) / std::max(1.0, std::abs(bound));
}

double violation(double lhs, double rhs)
{
    return std::max(0.0, lhs - rhs) / std::max(1.0, std::abs(rhs));
}

// Certified scalar window [lo, hi] against the exact optimal bounds of sys.
void certify_window(TheoremReport& rep, const GFrameSystem& sys, double lo, double hi, double tol)
{
    const FrameBounds actual = optimal_scalar_bounds(sys, tol);
    rep.value("certified_lower", lo);
    rep.value("certified_upper", hi);
    rep.value("actual_lower", actual.scalar_lower);
    rep.value("actual_upper", actual.scalar_upper);
    TheoremReport fr = check_frame(sys, scalar_bounds(sys.descriptor(), std::max(0.0, lo), hi),
                                   CheckMode::exact_scalar, 0, 0, tol);
    for (const CheckResult& c : fr.conclusions)
        if (c.name != "self_adjoint") rep.conclusion("window_" + c.name, c.pass, c.residual);
    if (fr.witness && !rep.witness) rep.witness = fr.witness;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

AlgebraElement family_distance(const GFrameSystem& a, const GFrameSystem& b, const ModuleVector& x)
{
    require_same_structure(a, b);
    return controlled_gram(a.with_family(difference(a.family(), b.family())), x, Execution::serial);
}

TheoremReport check_equivalence_M(const GFrameSystem& a, const GFrameSystem& b, int samples, std::uint64_t seed,
                                  double tol, std::optional<double> M)
{
    require_same_structure(a, b);
    if (samples < 0) throw InputError("samples must be non-negative");
    if (M && !(*M >= 0)) throw InputError("M must be non-negative");
    TheoremReport rep("equivalence_M", tol, seed);
    const GFrameSystem d = a.with_family(difference(a.family(), b.family()));

    const FrameBounds fa = optimal_scalar_bounds(a, tol);
    const FrameBounds fb = optimal_scalar_bounds(b, tol);
    const double A = fa.scalar_lower, B = fa.scalar_upper, E = fb.scalar_lower, F = fb.scalar_upper;
    rep.value("first_lower", A);
    rep.value("first_upper", B);
    rep.value("second_lower", E);
    rep.value("second_upper", F);

    const std::vector<ModuleVector> xs = probe_vectors({&a, &b, &d}, samples, seed);
    std::vector<double> gd(xs.size()), ga(xs.size()), gb(xs.size());
    map_indices(xs.size(), [&](size_t i) {
        gd[i] = gram_norm(d, xs[i]);
        ga[i] = gram_norm(a, xs[i]);
        gb[i] = gram_norm(b, xs[i]);
        return 0.0;
    });
    double sampled_M = 0.0, ratio_second = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double m = std::min(ga[i], gb[i]);
        if (m > 0) sampled_M = std::max(sampled_M, gd[i] / m);
        if (gb[i] > 0) ratio_second = std::max(ratio_second, gd[i] / gb[i]);
    }
    rep.value("samples", static_cast<double>(xs.size()));
    rep.value("sampled_min_M", sampled_M);
    rep.value("distance_over_second_gram", ratio_second);

    auto distance_excess = [&](double m, std::optional<size_t>* bad) {
        double worst = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            const double v = violation(gd[i], m * std::min(ga[i], gb[i]));
            if (v > worst) worst = v;
            if (bad && !*bad && v > tol) *bad = i;
        }
        return worst;
    };

    std::optional<size_t> bad;
    double m_used = 0.0;
    if (M) {
        m_used = *M;
        rep.note("M", "supplied " + fmt(*M));
        if (!rep.hypothesis("distance bounded by M times the smaller gram (sampled)", distance_excess(m_used, &bad) <= tol,
                            distance_excess(m_used, nullptr))) {
            if (bad) rep.witness = xs[*bad];
            return rep.finish();
        }
    } else {
        const bool fa_ok = rep.hypothesis("first system is a frame", fa.frame, fa.frame ? 0.0 : 1.0);
        const bool fb_ok = rep.hypothesis("second system is a frame", fb.frame, fb.frame ? 0.0 : 1.0);
        if (!fa_ok || !fb_ok) return rep.finish();
        const double c1 = (B / E + 1.0) * (B / E + 1.0);
        const double c2 = (F / A + 1.0) * (F / A + 1.0);
        m_used = std::min(c1, c2);
        const double m_max = std::max(c1, c2);
        rep.value("M_star", m_used);
        rep.value("M_max_form", m_max);
        rep.value("holds_with_M_max", distance_excess(m_max, nullptr) <= tol ? 1.0 : 0.0);
        rep.note("M", "M* = min{(||B|| ||E^-1|| + 1)^2, (||F|| ||A^-1|| + 1)^2}");
        rep.conclusion("distance bounded by M* times the smaller gram (sampled)", distance_excess(m_used, &bad));
        if (bad) rep.witness = xs[*bad];
    }
    rep.value("M", m_used);
    const double r = 1.0 + std::sqrt(m_used);
    certify_window(rep, b, A / r, r * B, tol);
    return rep.finish();
}

TheoremReport sum_frame_check(const GFrameSystem& lam, const GFrameSystem& gam, double tol)
{
    require_same_structure(lam, gam);
    TheoremReport rep("sum", tol, 0);
    const FrameBounds fl = optimal_scalar_bounds(lam, tol);
    const FrameBounds fg = optimal_scalar_bounds(gam, tol);
    const double a = fl.scalar_lower, b = fl.scalar_upper, e = fg.scalar_upper;
    rep.value("lower", a);
    rep.value("upper", b);
    rep.value("perturbation_bessel", e);
    if (!rep.hypothesis("perturbation Bessel bound at most the lower frame bound", e <= a + tol * std::max(1.0, a),
                        excess(e, a)))
        return rep.finish();
    Family sum;
    for (size_t k = 0; k < lam.family().size(); ++k) sum.push_back(lam.family()[k] + gam.family()[k]);
    certify_window(rep, lam.with_family(std::move(sum)), a - e, b + e, tol);
    return rep.finish();
}

TheoremReport weighted_perturbation_check(const GFrameSystem& t, const Family& r, const std::vector<double>& alpha_w,
                                          const std::vector<double>& beta_w, double lambda, double mu, int samples,
                                          std::uint64_t seed, double tol)
{
    require_cc(t, "system");
    require_family_shape(t, r);
    if (samples < 0) throw InputError("samples must be non-negative");
    const size_t n = t.family().size();
    std::vector<double> al = alpha_w.empty() ? std::vector<double>(n, 1.0) : alpha_w;
    std::vector<double> be = beta_w.empty() ? std::vector<double>(n, 1.0) : beta_w;
    if (al.size() != n || be.size() != n) throw InputError("weights need one entry per atom");
    for (size_t k = 0; k < n; ++k)
        if (!(al[k] > 0) || !(be[k] > 0)) throw InputError("weights must be positive");
    if (!(lambda >= 0 && lambda < 1) || !(mu >= 0 && mu < 1))
        throw PreconditionError("weighted perturbation needs 0 <= lambda, mu < 1");

    TheoremReport rep("weighted", tol, seed);
    const GFrameSystem sa = t.with_family(weighted(t.family(), al));
    const GFrameSystem sb = t.with_family(weighted(r, be));
    const GFrameSystem sd = t.with_family(difference(sa.family(), sb.family()));
    const GFrameSystem rs = t.with_family(r);
    const FrameBounds ft = optimal_scalar_bounds(t, tol);
    rep.value("lower", ft.scalar_lower);
    rep.value("upper", ft.scalar_upper);
    if (!rep.hypothesis("unperturbed system is a frame", ft.frame, ft.frame ? 0.0 : 1.0)) return rep.finish();

    const std::vector<ModuleVector> xs = probe_vectors({&t, &rs, &sd}, samples, seed);
    std::vector<double> v = map_indices(xs.size(), [&](size_t i) {
        const double lhs = std::sqrt(gram_norm(sd, xs[i]));
        const double rhs = lambda * std::sqrt(gram_norm(sa, xs[i])) + mu * std::sqrt(gram_norm(sb, xs[i]));
        return violation(lhs, rhs);
    });
    double worst = 0.0;
    std::optional<size_t> bad;
    for (size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, v[i]);
        if (!bad && v[i] > tol) bad = i;
    }
    rep.value("samples", static_cast<double>(xs.size()));
    if (!rep.hypothesis("weighted difference within lambda, mu (sampled)", worst <= tol, worst)) {
        if (bad) rep.witness = xs[*bad];
        return rep.finish();
    }
    const auto [amin, amax] = std::minmax_element(al.begin(), al.end());
    const auto [bmin, bmax] = std::minmax_element(be.begin(), be.end());
    const double lf = (1.0 - lambda) * *amin / ((1.0 + mu) * *bmax);
    const double uf = (1.0 + lambda) * *amax / ((1.0 - mu) * *bmin);
    rep.value("lower_factor", lf);
    rep.value("upper_factor", uf);
    certify_window(rep, rs, ft.scalar_lower * lf, ft.scalar_upper * uf, tol);
    return rep.finish();
}

TheoremReport additive_perturbation_check(const GFrameSystem& t, const Family& r, double alpha, double beta,
                                          AdditiveForm form, int samples, std::uint64_t seed, double tol)
{
    require_cc(t, "system");
    require_family_shape(t, r);
    if (samples < 0) throw InputError("samples must be non-negative");
    if (!(alpha >= 0) || !(beta >= 0)) throw InputError("alpha and beta must be non-negative");
    if (form == AdditiveForm::corollary && alpha != 0)
        throw InputError("the corollary form takes only the ||<x, x>|| coefficient (beta)");

    const FrameBounds ft = optimal_scalar_bounds(t, tol);
    const double nu = ft.scalar_lower, delta = ft.scalar_upper;
    if (!ft.frame) throw PreconditionError("unperturbed system is not a frame");
    const double q = alpha + beta / (nu * nu);
    if (!(q < 1.0))
        throw PreconditionError("alpha + beta/nu^2 = " + fmt(q) + " must be below 1");

    TheoremReport rep(form == AdditiveForm::theorem ? "additive" : "additive_corollary", tol, seed);
    rep.value("lower", nu);
    rep.value("upper", delta);
    rep.value("q", q);
    const GFrameSystem rs = t.with_family(r);
    const GFrameSystem sd = t.with_family(difference(t.family(), r));
    const std::vector<ModuleVector> xs = probe_vectors({&t, &rs, &sd}, samples, seed);
    std::vector<double> v = map_indices(xs.size(), [&](size_t i) {
        const double rhs = alpha * gram_norm(t, xs[i]) + beta * scalar_norm(xs[i]) * scalar_norm(xs[i]);
        return violation(gram_norm(sd, xs[i]), rhs);
    });
    double worst = 0.0;
    std::optional<size_t> bad;
    for (size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, v[i]);
        if (!bad && v[i] > tol) bad = i;
    }
    rep.value("samples", static_cast<double>(xs.size()));
    if (!rep.hypothesis("distance within alpha gram + beta ||<x, x>|| (sampled)", worst <= tol, worst)) {
        if (bad) rep.witness = xs[*bad];
        return rep.finish();
    }
    const double s = std::sqrt(q);
    if (form == AdditiveForm::theorem) {
        certify_window(rep, rs, nu * (1.0 - s), delta * (1.0 + s), tol);
    } else {
        rep.note("bounds", "squared factors nu(1 - sqrt q)^2, delta(1 + sqrt q)^2");
        certify_window(rep, rs, nu * (1.0 - s) * (1.0 - s), delta * (1.0 + s) * (1.0 + s), tol);
    }
    return rep.finish();
}

TheoremReport run_perturbation(const GFrameSystem& a, const GFrameSystem& b, const PerturbationParams& p, int samples,
                               std::uint64_t seed, double tol)
{
    require_same_structure(a, b);
    switch (p.kind) {
    case PerturbationKind::equivalence_M: return check_equivalence_M(a, b, samples, seed, tol, p.M);
    case PerturbationKind::sum: return sum_frame_check(a, b, tol);
    case PerturbationKind::weighted:
        return weighted_perturbation_check(a, b.family(), p.alpha_w, p.beta_w, p.lambda, p.mu, samples, seed, tol);
    case PerturbationKind::additive:
        return additive_perturbation_check(a, b.family(), p.alpha, p.beta, p.form, samples, seed, tol);
    }
    throw InputError("unknown perturbation kind");
}

}  // namespace gframe
