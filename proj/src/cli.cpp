#include "gframe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "gframe/errors.hpp"
#include "gframe/generators.hpp"
#include "gframe/linalg.hpp"
#include "gframe/serialize.hpp"
#include "gframe/stability.hpp"
#include "gframe/theorems.hpp"

namespace gframe {

const std::vector<std::string>& cli_commands()
{
    static const std::vector<std::string> c = {"validate", "bounds",   "frame-op", "dual",    "reconstruct",
                                               "multiplier", "theorem", "perturb",  "example", "random"};
    return c;
}

AlgebraDescriptor parse_algebra(const std::string& s)
{
    auto dim_of = [&](const std::string& digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 2)
            throw InputError("bad algebra '" + s + "'");
        return std::stoi(digits);
    };
    AlgebraDescriptor d;
    if (s.rfind("matrix:", 0) == 0) {
        d = {AlgebraKind::matrix, dim_of(s.substr(7))};
    } else if (s.rfind("diagonal:", 0) == 0) {
        d = {AlgebraKind::diagonal, dim_of(s.substr(9))};
    } else if (!s.empty() && (s[0] == 'M' || s[0] == 'm')) {
        d = {AlgebraKind::matrix, dim_of(s.substr(1))};
    } else if (!s.empty() && (s[0] == 'C' || s[0] == 'c')) {
        d = {AlgebraKind::diagonal, dim_of(s.substr(1))};
    } else {
        throw InputError("bad algebra '" + s + "' (use M<d>, C<k>, matrix:<d> or diagonal:<k>)");
    }
    if (d.dim < 1) throw InputError("algebra dimension must be at least 1");
    return d;
}

namespace {

Json config_echo(const RunConfig& c)
{
    Json j;
    j["command"] = c.command;
    j["inputs"] = c.inputs;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["id"] = c.id ? Json(*c.id) : Json(nullptr);
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["rank"] = c.rank;
    j["nodes"] = c.nodes;
    j["atoms"] = c.atoms;
    j["algebra"] = c.algebra;
    j["commuting"] = c.commuting;
    j["mutant"] = c.mutant;
    j["aux"] = c.aux ? Json(*c.aux) : Json(nullptr);
    j["check_bounds"] = c.check_bounds ? Json(*c.check_bounds) : Json(nullptr);
    return j;
}

struct Outcome {
    bool pass = true;
    Json result;
};

Json envelope(const RunConfig& c, const Outcome& o)
{
    Json j;
    j["tool"] = "gframe";
    j["version"] = kToolVersion;
    j["config"] = config_echo(c);
    j["pass"] = o.pass;
    j["result"] = o.result;
    return j;
}

const std::string& single_input(const RunConfig& c)
{
    if (c.inputs.size() != 1) throw InputError(c.command + " needs exactly one input file");
    return c.inputs.front();
}

std::pair<double, double> parse_pair(const std::string& s)
{
    const size_t comma = s.find(',');
    if (comma == std::string::npos) throw InputError("expected 'a,b', got '" + s + "'");
    try {
        size_t p1 = 0, p2 = 0;
        const std::string l = s.substr(0, comma), r = s.substr(comma + 1);
        double a = std::stod(l, &p1), b = std::stod(r, &p2);
        if (p1 != l.size() || p2 != r.size()) throw std::invalid_argument("trailing");
        return {a, b};
    } catch (const std::exception&) {
        throw InputError("expected 'a,b', got '" + s + "'");
    }
}

Json bounds_json(const FrameBounds& fb)
{
    Json j;
    j["a"] = fb.scalar_lower;
    j["b"] = fb.scalar_upper;
    j["frame"] = fb.frame;
    j["lower"] = to_json(fb.lower);
    j["upper"] = to_json(fb.upper);
    return j;
}

Outcome bounds_of(const RunConfig& c, const GFrameSystem& sys)
{
    Outcome o;
    const FrameBounds fb = optimal_scalar_bounds(sys, c.tol);
    o.result["bounds"] = bounds_json(fb);
    o.pass = fb.frame;
    if (c.check_bounds) {
        const auto [a, b] = parse_pair(*c.check_bounds);
        if (!(a >= 0) || !(b >= a)) throw InputError("--check-bounds needs 0 <= a <= b");
        // Relative tolerance so the supplied optimal pair passes up to roundoff.
        const TheoremReport rep = check_frame(sys, scalar_bounds(sys.descriptor(), a, b), CheckMode::exact_scalar,
                                              c.samples, c.seed, c.tol);
        o.result["check"] = to_json(rep);
        o.pass = rep.passed() && std::abs(fb.scalar_lower - a) <= c.tol * std::max(1.0, a) &&
                 std::abs(fb.scalar_upper - b) <= c.tol * std::max(1.0, b);
        o.result["matches_optimal"] = o.pass;
    }
    return o;
}

Outcome cmd_validate(const RunConfig& c)
{
    const GFrameSystem sys = load_system(single_input(c));
    Outcome o;
    const ControlPair& cp = sys.controls();
    o.result["algebra"] = to_json(sys.descriptor());
    o.result["module_rank"] = sys.module_rank();
    o.result["atoms"] = sys.measure().size();
    o.result["controls"] = Json{{"commute_each_other", cp.commute_each_other},
                                {"commute_with_family", cp.commute_with_family},
                                {"identical", cp.identical},
                                {"each_other_residual", cp.each_other_residual},
                                {"family_residual", cp.family_residual}};
    const AdjointableOperator s = frame_operator(sys);
    const PositivePartChecks pc = positive_part_checks(s, c.tol);
    o.result["frame_operator"] = Json{{"self_adjoint", pc.self_adjoint},
                                      {"positive", pc.positive},
                                      {"invertible", pc.invertible},
                                      {"lambda_min", pc.lower},
                                      {"lambda_max", pc.upper}};
    o.pass = pc.self_adjoint && pc.positive && pc.invertible;
    return o;
}

Outcome cmd_frame_op(const RunConfig& c)
{
    const GFrameSystem sys = load_system(single_input(c));
    Outcome o;
    const AdjointableOperator s = frame_operator(sys);
    const PositivePartChecks pc = positive_part_checks(s, c.tol);
    o.result["frame_operator"] = to_json(s);
    o.result["self_adjoint"] = pc.self_adjoint;
    o.result["positive"] = pc.positive;
    o.result["invertible"] = pc.invertible;
    o.result["norm"] = op_norm(s);
    o.pass = pc.self_adjoint && pc.positive && pc.invertible;
    return o;
}

Json family_json(const MeasureSpace& m, const Family& f)
{
    Json j = Json::object();
    for (size_t k = 0; k < f.size(); ++k) j[m.label(k)] = to_json(f[k]);
    return j;
}

Outcome cmd_dual(const RunConfig& c)
{
    const GFrameSystem sys = load_system(single_input(c));
    const DualCertificate cert = canonical_dual(sys, c.samples, c.seed, std::max(c.tol, 1e-8));
    Outcome o;
    o.result["dual_family"] = family_json(sys.measure(), cert.dual_family);
    o.result["reconstruction_residual"] = cert.reconstruction_residual;
    o.result["converse_residual"] = cert.converse_residual;
    o.pass = cert.pass;
    return o;
}

Outcome cmd_reconstruct(const RunConfig& c)
{
    const GFrameSystem sys = load_system(single_input(c));
    const DualCertificate cert = canonical_dual(sys, c.samples, c.seed, std::max(c.tol, 1e-8));
    Outcome o;
    o.result["samples"] = c.samples;
    o.result["max_relative_residual"] = cert.reconstruction_residual;
    o.result["threshold"] = std::max(c.tol, 1e-8);
    o.pass = cert.reconstruction_residual <= std::max(c.tol, 1e-8);
    return o;
}

Outcome cmd_multiplier(const RunConfig& c)
{
    const GFrameSystem sys = load_system(single_input(c));
    std::vector<cplx> gamma;
    if (c.aux) {
        const Json j = load_json_file(*c.aux);
        if (!j.is_object() || !j.contains("gamma")) throw InputError(*c.aux + ": expected {\"gamma\": [...]}");
        const Json& g = j["gamma"];
        if (!g.is_array()) throw InputError(*c.aux + ": at /gamma: expected an array");
        for (size_t i = 0; i < g.size(); ++i) gamma.push_back(complex_from_json(g[i], "/gamma/" + std::to_string(i)));
        if (gamma.size() != sys.measure().size())
            throw InputError(*c.aux + ": at /gamma: need one symbol value per atom");
    } else {
        Rng rng(mix_seed(c.seed, 0x3a1));
        for (size_t k = 0; k < sys.measure().size(); ++k) gamma.push_back(rng.uniform(0.5, 1.0) * rng.unit_phase());
    }
    const MultiplierReport mr = multiplier_report(gamma, sys.family(), sys.family(), sys.measure(), c.tol);
    const ControlledMultiplierReport cr =
        controlled_multiplier_report(gamma, sys.family(), sys.family(), sys.controls(), sys.measure(), c.tol);
    Outcome o;
    Json g = Json::array();
    for (cplx z : gamma) g.push_back(to_json(z));
    o.result["gamma"] = std::move(g);
    o.result["symbol_source"] = c.aux ? "supplied" : "generated";
    o.result["multiplier"] = Json{{"operator", to_json(mr.L)},
                                  {"norm", mr.norm},
                                  {"bound", mr.bound},
                                  {"displayed_bound", mr.displayed_bound},
                                  {"adjoint_residual", mr.adjoint_residual},
                                  {"unswapped_defect", mr.unswapped_defect},
                                  {"pass", mr.pass}};
    o.result["controlled_multiplier"] = Json{{"operator", to_json(cr.L)},
                                             {"norm", cr.norm},
                                             {"b_theta", cr.b_theta},
                                             {"b_lambda", cr.b_lambda},
                                             {"bound", cr.bound},
                                             {"pass", cr.pass}};
    o.pass = mr.pass && cr.pass;
    return o;
}

Outcome cmd_theorem(const RunConfig& c)
{
    const Mutant mut = parse_mutant(c.mutant);
    if (c.inputs.size() > 1) throw InputError("theorem takes at most one system file");
    std::optional<GFrameSystem> supplied;
    if (!c.inputs.empty()) supplied = load_system(c.inputs.front());
    TheoremAux aux;
    if (c.aux) {
        try {
            aux = aux_from_json(load_json_file(*c.aux));
        } catch (const InputError& e) {
            throw InputError(*c.aux + ": " + e.what());
        }
    }
    std::vector<std::string> ids;
    if (c.id) {
        ids.push_back(*c.id);
    } else {
        ids = theorem_ids();
        std::sort(ids.begin(), ids.end());
    }
    Outcome o;
    Json reports = Json::array();
    for (const std::string& id : ids) {
        const TheoremReport r = verify_theorem(id, c.seed, c.tol, mut, supplied, aux);
        o.pass = o.pass && r.passed();
        reports.push_back(to_json(r));
    }
    o.result["reports"] = std::move(reports);
    return o;
}

Outcome cmd_perturb(const RunConfig& c)
{
    const std::string& path = single_input(c);
    const Json j = load_json_file(path);
    PerturbationRun pr;
    try {
        pr = perturbation_from_json(j, std::filesystem::path(path).parent_path().string());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
    const GFrameSystem a = load_system(pr.system_a);
    const GFrameSystem b = load_system(pr.system_b);
    const TheoremReport r = run_perturbation(a, b, pr.params, pr.samples, pr.seed, c.tol);
    Outcome o;
    o.result["kind"] = to_string(pr.params.kind);
    o.result["report"] = to_json(r);
    o.pass = r.passed();
    return o;
}

void check_config(const RunConfig& c)
{
    if (std::find(cli_commands().begin(), cli_commands().end(), c.command) == cli_commands().end())
        throw InputError("unknown command '" + c.command + "'");
    if (!(c.tol > 0)) throw InputError("--tol must be positive");
    if (c.samples < 1) throw InputError("--samples must be at least 1");
}

}  // namespace

RunResult run(const RunConfig& cfg)
{
    RunResult res;
    try {
        check_config(cfg);
        const std::string& cmd = cfg.command;
        if (cmd == "example" || cmd == "random") {
            if (!cfg.inputs.empty()) throw InputError(cmd + " takes no input file");
            GFrameSystem sys = [&] {
                if (cmd == "example") return generate_unit_interval(cfg.alpha, cfg.beta, cfg.rank, cfg.nodes);
                RandomOptions opt;
                opt.algebra = parse_algebra(cfg.algebra);
                opt.rank = cfg.rank;
                opt.atoms = cfg.atoms;
                opt.commuting = cfg.commuting;
                return generate_random(cfg.seed, opt);
            }();
            if (cfg.check_bounds) {
                const Outcome o = bounds_of(cfg, sys);
                res.document = dump(envelope(cfg, o));
                res.exit_code = o.pass ? 0 : 1;
            } else {
                res.document = serialize_system(sys);
            }
            return res;
        }
        Outcome o;
        if (cmd == "validate")
            o = cmd_validate(cfg);
        else if (cmd == "bounds")
            o = bounds_of(cfg, load_system(single_input(cfg)));
        else if (cmd == "frame-op")
            o = cmd_frame_op(cfg);
        else if (cmd == "dual")
            o = cmd_dual(cfg);
        else if (cmd == "reconstruct")
            o = cmd_reconstruct(cfg);
        else if (cmd == "multiplier")
            o = cmd_multiplier(cfg);
        else if (cmd == "theorem")
            o = cmd_theorem(cfg);
        else
            o = cmd_perturb(cfg);
        res.document = dump(envelope(cfg, o));
        res.exit_code = o.pass ? 0 : 1;
    } catch (const DomainError& e) {
        res.exit_code = 1;
        res.error = std::string("domain error: ") + e.what();
        Outcome o;
        o.pass = false;
        o.result["error"] = e.what();
        res.document = dump(envelope(cfg, o));
    } catch (const PreconditionError& e) {
        res.exit_code = 2;
        res.error = std::string("precondition violated: ") + e.what();
        res.document.clear();
    } catch (const InputError& e) {
        res.exit_code = 2;
        res.error = std::string("input error: ") + e.what();
        res.document.clear();
    } catch (const UnsupportedConfiguration& e) {
        res.exit_code = 2;
        res.error = std::string("unsupported configuration: ") + e.what();
        res.document.clear();
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.error = std::string("error: ") + e.what();
        res.document.clear();
    }
    return res;
}

}  // namespace gframe
