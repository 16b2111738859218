#include "gframe/controlled_frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gframe/errors.hpp"
#include "gframe/random.hpp"

namespace gframe {

namespace {

void validate_control(const AdjointableOperator& c, const char* name, const AlgebraDescriptor& desc, int n)
{
    if (!(c.descriptor() == desc) || c.in_rank() != n || c.out_rank() != n) {
        std::ostringstream msg;
        msg << "control " << name << " must be an operator on " << to_string(desc) << "^" << n;
        throw InputError(msg.str());
    }
    PositivePartChecks pc = positive_part_checks(c);
    if (!pc.positive || !pc.invertible)
        throw InputError(std::string("control ") + name + " must be positive and invertible");
}

double relative_commutator(const AdjointableOperator& a, const AdjointableOperator& b)
{
    return commutator_norm(a, b) / std::max(1.0, op_norm(a) * op_norm(b));
}

}  // namespace

GFrameSystem::GFrameSystem(MeasureSpace m, Family family, AdjointableOperator C, AdjointableOperator Cp,
                           double commute_tol)
    : measure_(std::move(m)), family_(std::move(family)), commute_tol_(commute_tol)
{
    if (measure_.size() == 0) throw InputError("system has no atoms");
    if (family_.size() != measure_.size()) {
        std::ostringstream msg;
        msg << "family has " << family_.size() << " members but the measure has " << measure_.size() << " atoms";
        throw InputError(msg.str());
    }
    desc_ = family_.front().descriptor();
    rank_ = family_.front().in_rank();
    for (size_t k = 0; k < family_.size(); ++k) {
        if (!(family_[k].descriptor() == desc_) || family_[k].in_rank() != rank_)
            throw InputError("family member '" + measure_.label(k) + "' does not act on the common module");
    }
    validate_control(C, "C", desc_, rank_);
    validate_control(Cp, "Cp", desc_, rank_);
    controls_.C = std::move(C);
    controls_.Cp = std::move(Cp);

    controls_.each_other_residual = relative_commutator(controls_.C, controls_.Cp);
    double fam = 0.0;
    for (const auto& l : family_) {
        AdjointableOperator p = op_compose(op_adjoint(l), l);
        fam = std::max(fam, relative_commutator(p, controls_.C));
        fam = std::max(fam, relative_commutator(p, controls_.Cp));
    }
    controls_.family_residual = fam;
    controls_.commute_each_other = controls_.each_other_residual <= commute_tol_;
    controls_.commute_with_family = fam <= commute_tol_;
    controls_.identical =
        op_distance(controls_.C, controls_.Cp) <= commute_tol_ * std::max(1.0, op_norm(controls_.C));
}

GFrameSystem GFrameSystem::uncontrolled(MeasureSpace m, Family family)
{
    if (family.empty()) throw InputError("system has no atoms");
    auto id = AdjointableOperator::identity(family.front().descriptor(), family.front().in_rank());
    return GFrameSystem(std::move(m), std::move(family), id, id);
}

GFrameSystem GFrameSystem::with_family(Family family) const
{
    return GFrameSystem(measure_, std::move(family), controls_.C, controls_.Cp, commute_tol_);
}

GFrameSystem GFrameSystem::with_controls(AdjointableOperator C, AdjointableOperator Cp) const
{
    return GFrameSystem(measure_, family_, std::move(C), std::move(Cp), commute_tol_);
}

FrameBounds scalar_bounds(AlgebraDescriptor desc, double a, double b)
{
    FrameBounds fb;
    fb.scalar_lower = a;
    fb.scalar_upper = b;
    fb.lower = AlgebraElement::scalar(desc, a);
    fb.upper = AlgebraElement::scalar(desc, b);
    fb.frame = a > 0.0;
    return fb;
}

AlgebraElement controlled_gram(const GFrameSystem& sys, const ModuleVector& x, Execution exec)
{
    const ModuleVector cx = op_apply(sys.C(), x);
    const ModuleVector cpx = op_apply(sys.Cp(), x);
    return weighted_element_sum(
        sys.measure(),
        [&](size_t k) {
            const auto& l = sys.family()[k];
            return inner_product(op_apply(l, cx), op_apply(l, cpx));
        },
        exec);
}

AdjointableOperator frame_operator(const GFrameSystem& sys, Execution exec)
{
    return weighted_operator_sum(
        sys.measure(),
        [&](size_t k) {
            const auto& l = sys.family()[k];
            // C' Λ* Λ C as a map: apply C, then Λ, then Λ*, then C'
            return op_compose(sys.Cp(), op_compose(op_adjoint(l), op_compose(l, sys.C())));
        },
        exec);
}

FrameBounds optimal_scalar_bounds(const GFrameSystem& sys, double tol)
{
    if (!sys.commuting() && !sys.controls().identical) {
        std::ostringstream msg;
        msg << "scalar bounds need commuting controls (commutator residuals " << sys.controls().each_other_residual
            << ", " << sys.controls().family_residual << ")";
        throw UnsupportedConfiguration(msg.str());
    }
    CMatrix f = flatten(frame_operator(sys));
    RVector ev = linalg::hermitian_spectrum(f).values;
    double lo = std::max(0.0, ev(0));
    double hi = std::max(0.0, ev(ev.size() - 1));
    double a = std::sqrt(lo), b = std::sqrt(hi);
    FrameBounds fb = scalar_bounds(sys.descriptor(), a, b);
    fb.frame = a > tol * std::max(1.0, b);
    return fb;
}

TheoremReport check_frame(const GFrameSystem& sys, const FrameBounds& bounds, CheckMode mode, int samples,
                          std::uint64_t seed, double tol)
{
    TheoremReport rep(mode == CheckMode::exact_scalar ? "check_frame/exact_scalar" : "check_frame/sampled_general",
                      tol, seed);
    const AdjointableOperator s = frame_operator(sys);
    const CMatrix f = flatten(s);
    const double scale = std::max(1.0, linalg::spectral_norm(f));
    const linalg::HermitianSpectrum sp = linalg::hermitian_spectrum(f);
    rep.value("lower_bound", bounds.scalar_lower);
    rep.value("upper_bound", bounds.scalar_upper);
    rep.value("lambda_min", sp.values(0));
    rep.value("lambda_max", sp.values(sp.values.size() - 1));

    auto witness_from = [&](Eigen::Index col) {
        CVector v = sp.vectors.col(col).conjugate();
        return from_flat_row(sys.descriptor(), sys.module_rank(), v);
    };

    if (mode == CheckMode::exact_scalar) {
        const AlgebraDescriptor& bd = bounds.lower.descriptor();
        if (norm(bounds.lower - AlgebraElement::scalar(bd, bounds.scalar_lower)) > tol * std::max(1.0, bounds.scalar_lower) ||
            norm(bounds.upper - AlgebraElement::scalar(bd, bounds.scalar_upper)) > tol * std::max(1.0, bounds.scalar_upper))
            throw InputError("exact_scalar mode needs bounds of the form a·1");
        const double a2 = bounds.scalar_lower * bounds.scalar_lower;
        const double b2 = bounds.scalar_upper * bounds.scalar_upper;
        const double herm = linalg::hermitian_defect(f) / scale;
        const double low = std::max(0.0, a2 - sp.values(0)) / scale;
        const double up = std::max(0.0, sp.values(sp.values.size() - 1) - b2) / scale;
        rep.conclusion("self_adjoint", herm);
        rep.conclusion("lower", low);
        rep.conclusion("upper", up);
        if (low > tol)
            rep.witness = witness_from(0);
        else if (up > tol)
            rep.witness = witness_from(sp.values.size() - 1);
        return rep.finish();
    }

    // sampled_general: random unit vectors followed by the eigenvectors of S
    Rng rng(mix_seed(seed, 0x5a3b));
    std::vector<ModuleVector> xs;
    for (int i = 0; i < samples; ++i) xs.push_back(random_unit_vector(rng, sys.descriptor(), sys.module_rank()));
    for (Eigen::Index c = 0; c < sp.vectors.cols(); ++c) xs.push_back(witness_from(c));

    const AlgebraElement& A = bounds.lower;
    const AlgebraElement& B = bounds.upper;
    auto violation = [&](const AlgebraElement& lo, const AlgebraElement& hi) {
        AlgebraElement gap = hi - lo;
        double sc = std::max(1.0, norm(gap));
        double herm = norm(gap - adjoint(gap)) / sc;
        double neg = std::max(0.0, -hermitian_eigenvalues(gap)(0)) / sc;
        return std::max(herm, neg);
    };
    std::vector<double> lower_v(xs.size()), upper_v(xs.size());
    std::vector<double> both = map_indices(xs.size(), [&](size_t i) {
        const AlgebraElement g = controlled_gram(sys, xs[i], Execution::serial);
        const AlgebraElement xx = inner_product(xs[i], xs[i]);
        lower_v[i] = violation(A * xx * adjoint(A), g);
        upper_v[i] = violation(g, B * xx * adjoint(B));
        return std::max(lower_v[i], upper_v[i]);
    });
    double lo_max = 0.0, up_max = 0.0;
    std::optional<size_t> first_bad;
    for (size_t i = 0; i < xs.size(); ++i) {
        lo_max = std::max(lo_max, lower_v[i]);
        up_max = std::max(up_max, upper_v[i]);
        if (!first_bad && both[i] > tol) first_bad = i;
    }
    rep.value("samples", static_cast<double>(xs.size()));
    rep.conclusion("lower", lo_max);
    rep.conclusion("upper", up_max);
    if (first_bad) rep.witness = xs[*first_bad];
    return rep.finish();
}

AlgebraElement direct_sum_inner(const MeasureSpace& m, const DirectSumVector& y, const DirectSumVector& z)
{
    if (y.parts.size() != m.size() || z.parts.size() != m.size())
        throw InputError("direct-sum vector does not match the measure space");
    AlgebraElement acc = AlgebraElement::zero(y.parts.front().descriptor());
    for (size_t k = 0; k < m.size(); ++k) acc = acc + m.weight(k) * inner_product(y.parts[k], z.parts[k]);
    return acc;
}

double direct_sum_norm(const MeasureSpace& m, const DirectSumVector& y)
{
    return std::sqrt(norm(direct_sum_inner(m, y, y)));
}

DirectSumVector family_apply(const Family& f, const ModuleVector& x)
{
    DirectSumVector y;
    y.parts.reserve(f.size());
    for (const auto& l : f) y.parts.push_back(op_apply(l, x));
    return y;
}

AdjointableOperator family_adjoint_product(const MeasureSpace& m, const Family& f, const Family& g, Execution exec)
{
    if (f.size() != m.size() || g.size() != m.size()) throw InputError("family size does not match the measure space");
    return weighted_operator_sum(
        m, [&](size_t k) { return op_compose(op_adjoint(f[k]), g[k]); }, exec);
}

CMatrix family_flatten(const MeasureSpace& m, const Family& f)
{
    if (f.size() != m.size()) throw InputError("family size does not match the measure space");
    const int d = f.front().descriptor().dim;
    Eigen::Index cols = 0;
    for (const auto& l : f) cols += l.out_rank() * d;
    CMatrix out(f.front().in_rank() * d, cols);
    Eigen::Index at = 0;
    for (size_t k = 0; k < f.size(); ++k) {
        CMatrix fl = flatten(f[k]);
        out.block(0, at, fl.rows(), fl.cols()) = std::sqrt(m.weight(k)) * fl;
        at += fl.cols();
    }
    return out;
}

double family_norm(const MeasureSpace& m, const Family& f)
{
    return linalg::spectral_norm(family_flatten(m, f));
}

double family_lower(const MeasureSpace& m, const Family& f)
{
    return linalg::sigma_min(family_flatten(m, f));
}

Family compose_right(const Family& f, const AdjointableOperator& q)
{
    Family out;
    out.reserve(f.size());
    for (const auto& l : f) out.push_back(op_compose(l, q));
    return out;
}

Family compose_left(const AdjointableOperator& q, const Family& f)
{
    Family out;
    out.reserve(f.size());
    for (const auto& l : f) out.push_back(op_compose(q, l));
    return out;
}

Family scale_family(const Family& f, cplx c)
{
    Family out;
    out.reserve(f.size());
    for (const auto& l : f) out.push_back(c * l);
    return out;
}

namespace {

AdjointableOperator control_root(const GFrameSystem& sys)
{
    if (!sys.commuting())
        throw UnsupportedConfiguration("analysis/synthesis need commuting controls so that C'C is positive");
    return op_sqrt_positive(op_compose(sys.Cp(), sys.C()));
}

}  // namespace

Family analysis_family(const GFrameSystem& sys)
{
    return compose_right(sys.family(), control_root(sys));
}

DirectSumVector analysis(const GFrameSystem& sys, const ModuleVector& x)
{
    return family_apply(sys.family(), op_apply(control_root(sys), x));
}

ModuleVector synthesis(const GFrameSystem& sys, const DirectSumVector& y)
{
    const AdjointableOperator r = control_root(sys);
    if (y.parts.size() != sys.family().size()) throw InputError("direct-sum vector does not match the family");
    ModuleVector acc(sys.descriptor(), sys.module_rank());
    for (size_t k = 0; k < y.parts.size(); ++k) {
        const auto& l = sys.family()[k];
        if (y.parts[k].rank() != l.out_rank() || !(y.parts[k].descriptor() == l.descriptor()))
            throw InputError("component '" + sys.measure().label(k) + "' has the wrong shape");
        acc = acc + sys.measure().weight(k) * op_apply(op_adjoint(l), y.parts[k]);
    }
    return op_apply(r, acc);
}

AdjointableOperator reconstruction_operator(const GFrameSystem& sys, const Family& dual,
                                            const std::optional<AdjointableOperator>& K, Execution exec)
{
    if (dual.size() != sys.family().size()) throw InputError("dual family size does not match the system");
    const AdjointableOperator inner = K ? op_compose(*K, sys.C()) : sys.C();
    return weighted_operator_sum(
        sys.measure(),
        [&](size_t k) {
            return op_compose(sys.Cp(), op_compose(op_adjoint(sys.family()[k]), op_compose(dual[k], inner)));
        },
        exec);
}

double reconstruction_residual(const GFrameSystem& sys, const Family& dual, const std::optional<AdjointableOperator>& K,
                               int samples, std::uint64_t seed, Execution exec)
{
    if (dual.size() != sys.family().size()) throw InputError("dual family size does not match the system");
    Rng rng(mix_seed(seed, 0x7e11));
    std::vector<ModuleVector> xs;
    for (int i = 0; i < samples; ++i) xs.push_back(random_unit_vector(rng, sys.descriptor(), sys.module_rank()));
    Family adj;
    for (const auto& l : sys.family()) adj.push_back(op_adjoint(l));
    std::vector<double> r = map_indices(
        xs.size(),
        [&](size_t i) {
            ModuleVector y = op_apply(sys.C(), xs[i]);
            if (K) y = op_apply(*K, y);
            ModuleVector acc(sys.descriptor(), sys.module_rank());
            for (size_t k = 0; k < dual.size(); ++k)
                acc = acc + sys.measure().weight(k) * op_apply(adj[k], op_apply(dual[k], y));
            acc = op_apply(sys.Cp(), acc);
            return scalar_norm(xs[i] - acc) / scalar_norm(xs[i]);
        },
        exec);
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

DualCertificate canonical_dual(const GFrameSystem& sys, int samples, std::uint64_t seed, double tol)
{
    if (!sys.commuting())
        throw UnsupportedConfiguration("canonical dual reconstruction needs C and C' to commute with S^{-1}");
    FrameBounds fb = optimal_scalar_bounds(sys);
    if (!fb.frame) throw DomainError("frame operator is singular: the system is Bessel-only");
    const AdjointableOperator sinv = op_inverse(frame_operator(sys));
    DualCertificate cert;
    cert.dual_family = compose_right(sys.family(), sinv);
    cert.reconstruction_residual = reconstruction_residual(sys, cert.dual_family, std::nullopt, samples, seed);
    // Γ = Λ S^{-1} is again a frame with Λ as its dual; check that side too
    GFrameSystem dual_sys = sys.with_family(cert.dual_family);
    cert.converse_residual = reconstruction_residual(dual_sys, sys.family(), std::nullopt, samples, seed);
    cert.pass = cert.reconstruction_residual <= tol && cert.converse_residual <= tol;
    return cert;
}

DualCertificate operator_dual_check(const GFrameSystem& sys, const Family& dual, const AdjointableOperator& K,
                                    int samples, std::uint64_t seed, double tol)
{
    op_inverse(K);  // throws DomainError for singular K
    DualCertificate cert;
    cert.dual_family = dual;
    cert.corresponding_K = K;
    cert.reconstruction_residual = reconstruction_residual(sys, dual, K, samples, seed);
    GFrameSystem dual_sys = sys.with_family(dual);
    cert.converse_residual = reconstruction_residual(dual_sys, sys.family(), op_adjoint(K), samples, seed);
    cert.pass = cert.reconstruction_residual <= tol && cert.converse_residual <= tol;
    return cert;
}

AdjointableOperator multiplier(const std::vector<cplx>& gamma, const Family& lam, const Family& theta,
                               const MeasureSpace& m, Execution exec)
{
    if (gamma.size() != m.size() || lam.size() != m.size() || theta.size() != m.size())
        throw InputError("multiplier symbol and families must cover every atom");
    return weighted_operator_sum(
        m, [&](size_t k) { return gamma[k] * op_compose(op_adjoint(lam[k]), theta[k]); }, exec);
}

double sup_norm(const std::vector<cplx>& gamma)
{
    double s = 0.0;
    for (const auto& g : gamma) s = std::max(s, std::abs(g));
    return s;
}

MultiplierReport multiplier_report(const std::vector<cplx>& gamma, const Family& lam, const Family& theta,
                                   const MeasureSpace& m, double tol)
{
    MultiplierReport r;
    r.L = multiplier(gamma, lam, theta, m);
    r.norm = op_norm(r.L);
    const double bl = family_norm(m, lam), bt = family_norm(m, theta), g = sup_norm(gamma);
    r.bound = g * bl * bt;
    r.displayed_bound = g * g * bt * bt * bl * bl;
    std::vector<cplx> conj_gamma;
    for (const auto& v : gamma) conj_gamma.push_back(std::conj(v));
    const CMatrix lh = flatten(r.L).adjoint();
    const double scale = std::max(1.0, r.norm);
    r.adjoint_residual = linalg::spectral_norm(lh - flatten(multiplier(conj_gamma, theta, lam, m))) / scale;
    r.unswapped_defect = linalg::spectral_norm(lh - flatten(multiplier(conj_gamma, lam, theta, m))) / scale;
    r.pass = r.norm <= r.bound + tol * std::max(1.0, r.bound) && r.adjoint_residual <= tol;
    return r;
}

AdjointableOperator controlled_multiplier(const std::vector<cplx>& gamma, const Family& theta, const Family& lam,
                                          const ControlPair& controls, const MeasureSpace& m, Execution exec)
{
    if (gamma.size() != m.size() || lam.size() != m.size() || theta.size() != m.size())
        throw InputError("multiplier symbol and families must cover every atom");
    return weighted_operator_sum(
        m,
        [&](size_t k) {
            AdjointableOperator inner = op_compose(lam[k], controls.Cp);
            return gamma[k] * op_compose(controls.C, op_compose(op_adjoint(theta[k]), inner));
        },
        exec);
}

ControlledMultiplierReport controlled_multiplier_report(const std::vector<cplx>& gamma, const Family& theta,
                                                        const Family& lam, const ControlPair& controls,
                                                        const MeasureSpace& m, double tol)
{
    ControlledMultiplierReport r;
    r.L = controlled_multiplier(gamma, theta, lam, controls, m);
    r.norm = op_norm(r.L);
    r.b_theta = optimal_scalar_bounds(GFrameSystem(m, theta, controls.C, controls.C)).scalar_upper;
    r.b_lambda = optimal_scalar_bounds(GFrameSystem(m, lam, controls.Cp, controls.Cp)).scalar_upper;
    r.bound = sup_norm(gamma) * r.b_theta * r.b_lambda;
    r.pass = r.norm <= r.bound + tol * std::max(1.0, r.bound);
    return r;
}

size_t dominant_atom(const GFrameSystem& sys)
{
    const CMatrix f = flatten(frame_operator(sys));
    const linalg::HermitianSpectrum sp = linalg::hermitian_spectrum(f);
    const CVector y = sp.vectors.col(sp.vectors.cols() - 1);
    size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < sys.family().size(); ++k) {
        const auto& l = sys.family()[k];
        CMatrix term = flatten(op_compose(sys.Cp(), op_compose(op_adjoint(l), op_compose(l, sys.C()))));
        double v = sys.measure().weight(k) * (y.adjoint() * term * y)(0, 0).real();
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    return best;
}

}  // namespace gframe
