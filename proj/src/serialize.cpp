#include "gframe/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gframe/errors.hpp"

namespace gframe {

namespace {

std::string where(const std::string& path) { return path.empty() ? "/" : path; }

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw InputError("at " + where(path) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const std::string& path)
{
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

long long integer(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

const Json& array(const Json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

// Runs a constructor and re-labels its validation errors with the JSON path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const InputError& e) {
        fail(path, e.what());
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const AlgebraDescriptor& d)
{
    Json j;
    j["kind"] = to_string(d.kind);
    j["dim"] = d.dim;
    return j;
}

Json to_json(const AlgebraElement& a)
{
    Json j = to_json(a.descriptor());
    Json e = Json::array();
    for (cplx z : a.entries()) e.push_back(to_json(z));
    j["entries"] = std::move(e);
    return j;
}

Json to_json(const ModuleVector& x)
{
    Json j;
    j["rank"] = x.rank();
    Json c = Json::array();
    for (const AlgebraElement& a : x.coords()) c.push_back(to_json(a));
    j["coords"] = std::move(c);
    return j;
}

Json to_json(const AdjointableOperator& t)
{
    Json j;
    j["in_rank"] = t.in_rank();
    j["out_rank"] = t.out_rank();
    Json rows = Json::array();
    for (int i = 0; i < t.in_rank(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < t.out_rank(); ++k) row.push_back(to_json(t.block(i, k)));
        rows.push_back(std::move(row));
    }
    j["blocks"] = std::move(rows);
    return j;
}

Json to_json(const MeasureSpace& m)
{
    Json atoms = Json::array();
    for (const Atom& a : m.atoms()) atoms.push_back(Json{{"label", a.label}, {"weight", a.weight}});
    Json j;
    j["atoms"] = std::move(atoms);
    return j;
}

Json to_json(const GFrameSystem& s)
{
    Json j;
    j["algebra"] = to_json(s.descriptor());
    j["module_rank"] = s.module_rank();
    j["measure"] = to_json(s.measure());
    Json fam = Json::object();
    for (size_t k = 0; k < s.family().size(); ++k) fam[s.measure().label(k)] = to_json(s.family()[k]);
    j["family"] = std::move(fam);
    j["controls"] = Json{{"C", to_json(s.C())}, {"Cp", to_json(s.Cp())}};
    return j;
}

Json to_json(const TheoremReport& r)
{
    auto checks = [](const std::vector<CheckResult>& cs) {
        Json a = Json::array();
        for (const CheckResult& c : cs) a.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
        return a;
    };
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["status"] = to_string(r.status);
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["hypotheses"] = checks(r.hypotheses);
    j["conclusions"] = checks(r.conclusions);
    j["conclusion_pass"] = r.conclusion_pass;
    j["conclusion_residual"] = r.conclusion_residual;
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    j["values"] = std::move(values);
    Json notes = Json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    j["notes"] = std::move(notes);
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

cplx complex_from_json(const Json& j, const std::string& path)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) fail(path, "expected a complex number [re, im]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

AlgebraDescriptor descriptor_from_json(const Json& j, const std::string& path)
{
    const Json& kind = field(j, "kind", path);
    if (!kind.is_string()) fail(path + "/kind", "expected a string");
    AlgebraDescriptor d;
    const std::string k = kind.get<std::string>();
    if (k == "matrix")
        d.kind = AlgebraKind::matrix;
    else if (k == "diagonal")
        d.kind = AlgebraKind::diagonal;
    else
        fail(path + "/kind", "unknown algebra kind '" + k + "'");
    const long long dim = integer(field(j, "dim", path), path + "/dim");
    if (dim < 1 || dim > 64) fail(path + "/dim", "dimension must be between 1 and 64");
    d.dim = static_cast<int>(dim);
    return d;
}

AlgebraElement element_from_json(const Json& j, const std::string& path)
{
    const AlgebraDescriptor d = descriptor_from_json(j, path);
    const Json& e = array(field(j, "entries", path), path + "/entries");
    if (static_cast<int>(e.size()) != d.entry_count())
        fail(path + "/entries", "expected " + std::to_string(d.entry_count()) + " entries for " + to_string(d) +
                                    ", got " + std::to_string(e.size()));
    std::vector<cplx> v;
    v.reserve(e.size());
    for (size_t i = 0; i < e.size(); ++i) v.push_back(complex_from_json(e[i], path + "/entries/" + std::to_string(i)));
    return at_path(path, [&] { return AlgebraElement(d, std::move(v)); });
}

ModuleVector vector_from_json(const Json& j, const std::string& path)
{
    const long long rank = integer(field(j, "rank", path), path + "/rank");
    const Json& c = array(field(j, "coords", path), path + "/coords");
    if (rank < 1 || static_cast<long long>(c.size()) != rank)
        fail(path + "/coords", "expected " + std::to_string(rank) + " coordinates");
    std::vector<AlgebraElement> coords;
    for (size_t i = 0; i < c.size(); ++i) coords.push_back(element_from_json(c[i], path + "/coords/" + std::to_string(i)));
    return at_path(path, [&] { return ModuleVector(std::move(coords)); });
}

AdjointableOperator operator_from_json(const Json& j, const std::string& path)
{
    const long long n = integer(field(j, "in_rank", path), path + "/in_rank");
    const long long m = integer(field(j, "out_rank", path), path + "/out_rank");
    if (n < 1 || m < 1) fail(path, "operator ranks must be at least 1");
    const Json& rows = array(field(j, "blocks", path), path + "/blocks");
    if (static_cast<long long>(rows.size()) != n)
        fail(path + "/blocks", "expected " + std::to_string(n) + " block rows, got " + std::to_string(rows.size()));
    std::vector<AlgebraElement> blocks;
    for (size_t i = 0; i < rows.size(); ++i) {
        const std::string rp = path + "/blocks/" + std::to_string(i);
        const Json& row = array(rows[i], rp);
        if (static_cast<long long>(row.size()) != m)
            fail(rp, "expected " + std::to_string(m) + " blocks, got " + std::to_string(row.size()));
        for (size_t k = 0; k < row.size(); ++k) blocks.push_back(element_from_json(row[k], rp + "/" + std::to_string(k)));
    }
    return at_path(path, [&] {
        return AdjointableOperator(static_cast<int>(n), static_cast<int>(m), std::move(blocks));
    });
}

MeasureSpace measure_from_json(const Json& j, const std::string& path)
{
    const Json& atoms = array(field(j, "atoms", path), path + "/atoms");
    std::vector<Atom> out;
    for (size_t i = 0; i < atoms.size(); ++i) {
        const std::string ap = path + "/atoms/" + std::to_string(i);
        const Json& label = field(atoms[i], "label", ap);
        if (!label.is_string()) fail(ap + "/label", "expected a string");
        out.push_back({label.get<std::string>(), number(field(atoms[i], "weight", ap), ap + "/weight")});
    }
    return at_path(path, [&] { return MeasureSpace(std::move(out)); });
}

GFrameSystem system_from_json(const Json& j, const std::string& path)
{
    const AlgebraDescriptor d = descriptor_from_json(field(j, "algebra", path), path + "/algebra");
    const long long n = integer(field(j, "module_rank", path), path + "/module_rank");
    if (n < 1) fail(path + "/module_rank", "module rank must be at least 1");
    const MeasureSpace m = measure_from_json(field(j, "measure", path), path + "/measure");
    const Json& fam = field(j, "family", path);
    if (!fam.is_object()) fail(path + "/family", "expected an object keyed by atom label");
    Family family(m.size());
    std::vector<bool> seen(m.size(), false);
    for (auto it = fam.begin(); it != fam.end(); ++it) {
        const std::string fp = path + "/family/" + it.key();
        size_t k = 0;
        try {
            k = m.index_of(it.key());
        } catch (const InputError&) {
            fail(fp, "no atom labelled '" + it.key() + "' in the measure");
        }
        family[k] = operator_from_json(it.value(), fp);
        seen[k] = true;
    }
    for (size_t k = 0; k < m.size(); ++k)
        if (!seen[k]) fail(path + "/family", "missing operator for atom '" + m.label(k) + "'");
    auto check_op = [&](const AdjointableOperator& t, int in, int out, const std::string& p) {
        if (!(t.descriptor() == d)) fail(p, "operator uses " + to_string(t.descriptor()) + ", system uses " + to_string(d));
        if (t.in_rank() != in || (out > 0 && t.out_rank() != out))
            fail(p, "operator shape " + std::to_string(t.in_rank()) + "x" + std::to_string(t.out_rank()) +
                        " does not match module rank " + std::to_string(in));
    };
    for (size_t k = 0; k < m.size(); ++k) check_op(family[k], static_cast<int>(n), 0, path + "/family/" + m.label(k));
    const Json& ctl = field(j, "controls", path);
    AdjointableOperator C = operator_from_json(field(ctl, "C", path + "/controls"), path + "/controls/C");
    AdjointableOperator Cp = operator_from_json(field(ctl, "Cp", path + "/controls"), path + "/controls/Cp");
    check_op(C, static_cast<int>(n), static_cast<int>(n), path + "/controls/C");
    check_op(Cp, static_cast<int>(n), static_cast<int>(n), path + "/controls/Cp");
    return at_path(path, [&] { return GFrameSystem(m, std::move(family), std::move(C), std::move(Cp)); });
}

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset -> line and column
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")";
        throw InputError(os.str());
    }
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GFrameSystem parse_system(const std::string& text, const std::string& source)
{
    const Json j = parse_json_text(text, source);
    try {
        return system_from_json(j);
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

std::string serialize_system(const GFrameSystem& s) { return dump(to_json(s)); }

GFrameSystem load_system(const std::string& path)
{
    const Json j = load_json_file(path);
    try {
        return system_from_json(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

TheoremAux aux_from_json(const Json& j, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    static const std::set<std::string> known{"theta", "K", "Q", "P", "v"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) fail(path + "/" + it.key(), "unknown auxiliary operator");
    TheoremAux aux;
    if (j.contains("theta")) aux.theta = operator_from_json(j["theta"], path + "/theta");
    if (j.contains("K")) aux.K = operator_from_json(j["K"], path + "/K");
    if (j.contains("Q")) aux.Q = operator_from_json(j["Q"], path + "/Q");
    if (j.contains("P")) aux.P = operator_from_json(j["P"], path + "/P");
    if (j.contains("v")) aux.v = element_from_json(j["v"], path + "/v");
    return aux;
}

PerturbationRun perturbation_from_json(const Json& j, const std::string& base_dir)
{
    PerturbationRun run;
    const Json& kind = field(j, "kind", "");
    if (!kind.is_string()) fail("/kind", "expected a string");
    run.params.kind = at_path("/kind", [&] { return parse_perturbation_kind(kind.get<std::string>()); });
    auto resolve = [&](const char* key) {
        const Json& p = field(j, key, "");
        if (!p.is_string()) fail(std::string("/") + key, "expected a file path");
        std::filesystem::path fp(p.get<std::string>());
        if (fp.is_relative() && !base_dir.empty()) fp = std::filesystem::path(base_dir) / fp;
        return fp.string();
    };
    run.system_a = resolve("systemA");
    run.system_b = resolve("systemB");
    if (j.contains("samples")) {
        const long long s = integer(j["samples"], "/samples");
        if (s < 1) fail("/samples", "samples must be at least 1");
        run.samples = static_cast<int>(s);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("/seed", "expected a non-negative integer");
        run.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("params")) {
        const Json& p = j["params"];
        if (!p.is_object()) fail("/params", "expected an object");
        auto num = [&](const char* key, double& out) {
            if (p.contains(key)) out = number(p[key], std::string("/params/") + key);
        };
        num("lambda", run.params.lambda);
        num("mu", run.params.mu);
        num("alpha", run.params.alpha);
        num("beta", run.params.beta);
        if (p.contains("M")) run.params.M = number(p["M"], "/params/M");
        auto weights = [&](const char* key, std::vector<double>& out) {
            if (!p.contains(key)) return;
            const std::string wp = std::string("/params/") + key;
            const Json& a = array(p[key], wp);
            for (size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], wp + "/" + std::to_string(i)));
        };
        weights("alpha_w", run.params.alpha_w);
        weights("beta_w", run.params.beta_w);
        if (p.contains("form")) {
            const Json& f = p["form"];
            if (f == "theorem")
                run.params.form = AdditiveForm::theorem;
            else if (f == "corollary")
                run.params.form = AdditiveForm::corollary;
            else
                fail("/params/form", "expected \"theorem\" or \"corollary\"");
        }
    }
    return run;
}

}  // namespace gframe
