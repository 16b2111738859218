#include <doctest.h>

#include <cstring>
#include <fstream>
#include <limits>

#include "gframe/cli.hpp"
#include "gframe/errors.hpp"
#include "gframe/generators.hpp"
#include "gframe/random.hpp"
#include "gframe/serialize.hpp"

using namespace gframe;

namespace {
const std::string fixtures = GFRAME_FIXTURES;

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bit_equal(const AdjointableOperator& s, const AdjointableOperator& t)
{
    if (!(s.descriptor() == t.descriptor()) || s.in_rank() != t.in_rank() || s.out_rank() != t.out_rank()) return false;
    for (size_t k = 0; k < s.blocks().size(); ++k) {
        const auto& a = s.blocks()[k].entries();
        const auto& b = t.blocks()[k].entries();
        for (size_t i = 0; i < a.size(); ++i)
            if (!bit_equal(a[i].real(), b[i].real()) || !bit_equal(a[i].imag(), b[i].imag())) return false;
    }
    return true;
}

bool bit_equal(const GFrameSystem& a, const GFrameSystem& b)
{
    if (!(a.measure() == b.measure()) || a.family().size() != b.family().size()) return false;
    for (size_t k = 0; k < a.family().size(); ++k)
        if (!bit_equal(a.family()[k], b.family()[k])) return false;
    return bit_equal(a.C(), b.C()) && bit_equal(a.Cp(), b.Cp());
}

std::string error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

RunConfig config(std::string cmd, std::vector<std::string> inputs = {})
{
    RunConfig c;
    c.command = std::move(cmd);
    c.inputs = std::move(inputs);
    return c;
}
}  // namespace

TEST_CASE("complex and element encoding")
{
    CHECK(to_json(cplx(1.5, -2)).dump() == "[1.5,-2.0]");
    CHECK(complex_from_json(Json::parse("[0.1, 3]")) == cplx(0.1, 3));
    const AlgebraElement a = AlgebraElement::matrix(2, {1, cplx(0, 1), 2, 3});
    const Json j = to_json(a);
    CHECK(j["kind"] == "matrix");
    CHECK(j["dim"] == 2);
    CHECK(j["entries"].size() == 4);
    CHECK(element_from_json(j) == a);
    const AlgebraElement d = AlgebraElement::diag({1, cplx(-0.0, 5e-300)});
    CHECK(element_from_json(Json::parse(to_json(d).dump())) == d);
}

TEST_CASE("property: bit-exact round trip of seeded systems")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RandomOptions opt;
        opt.algebra = seed % 2 ? AlgebraDescriptor{AlgebraKind::matrix, 1 + static_cast<int>(seed % 3)}
                               : AlgebraDescriptor{AlgebraKind::diagonal, 1 + static_cast<int>(seed % 4)};
        opt.rank = 1 + static_cast<int>(seed % 3);
        opt.atoms = 1 + static_cast<int>(seed % 5);
        opt.commuting = seed % 3 == 0;
        const GFrameSystem sys = generate_random(seed, opt);
        const std::string text = serialize_system(sys);
        const GFrameSystem back = parse_system(text);
        CHECK(bit_equal(sys, back));
        CHECK(serialize_system(back) == text);
    }
    const GFrameSystem ex = generate_unit_interval(2, 3, 3, 11);
    CHECK(bit_equal(ex, parse_system(serialize_system(ex))));
}

TEST_CASE("round trip of every shipped system fixture")
{
    for (const char* name : {"identity_frame.json", "small_perturbation.json", "half_identity.json", "zero_family.json"}) {
        const GFrameSystem s = load_system(fixtures + "/" + name);
        CHECK(bit_equal(s, parse_system(serialize_system(s))));
    }
}

TEST_CASE("module vector and operator encoding")
{
    Rng rng(2);
    const AlgebraDescriptor d{AlgebraKind::matrix, 2};
    const ModuleVector x = random_module_vector(rng, d, 3);
    CHECK(vector_from_json(to_json(x)) == x);
    const AdjointableOperator t = random_operator(rng, d, 2, 3);
    const Json j = to_json(t);
    CHECK(j["blocks"].size() == 2);
    CHECK(j["blocks"][0].size() == 3);
    CHECK(operator_from_json(j) == t);
}

TEST_CASE("parse errors carry positions")
{
    const std::string e1 = error_of([] { load_system(fixtures + "/malformed.json"); });
    CHECK(e1.find("malformed.json:4:") != std::string::npos);
    const std::string e2 = error_of([] { load_system(fixtures + "/shape_mismatch.json"); });
    CHECK(e2.find("/family/w1") != std::string::npos);
    const std::string e3 = error_of([] { parse_system(R"({"algebra": {"kind": "matrix", "dim": 2}})"); });
    CHECK(e3.find("module_rank") != std::string::npos);
    const std::string e4 = error_of([] { element_from_json(Json::parse(R"({"kind":"matrix","dim":2,"entries":[[1,0]]})"), "/x"); });
    CHECK(e4.find("/x/entries") != std::string::npos);
    const std::string e5 = error_of([] { element_from_json(Json::parse(R"({"kind":"weird","dim":2,"entries":[]})")); });
    CHECK(e5.find("/kind") != std::string::npos);
    CHECK_THROWS_AS(load_system(fixtures + "/does_not_exist.json"), InputError);
    CHECK_THROWS_AS(load_system(fixtures + "/negative_control.json"), InputError);
}

TEST_CASE("aux and perturbation descriptors")
{
    const AlgebraDescriptor d{AlgebraKind::diagonal, 2};
    Json aux;
    aux["K"] = to_json(AdjointableOperator::identity(d, 2));
    aux["v"] = to_json(AlgebraElement::identity(d));
    const TheoremAux a = aux_from_json(aux);
    CHECK(a.K.has_value());
    CHECK(a.v.has_value());
    CHECK_FALSE(a.theta.has_value());
    aux["bogus"] = 1;
    CHECK_THROWS_AS(aux_from_json(aux), InputError);

    const PerturbationRun run = perturbation_from_json(load_json_file(fixtures + "/perturb_additive.json"), fixtures);
    CHECK(run.params.kind == PerturbationKind::additive);
    CHECK(run.params.alpha == 0.25);
    CHECK(run.samples == 50);
    CHECK(run.seed == 3);
    CHECK(run.system_a == fixtures + "/identity_frame.json");
    CHECK_THROWS_AS(perturbation_from_json(Json::parse(R"({"kind":"sideways","systemA":"a","systemB":"b"})")),
                    InputError);
}

TEST_CASE("report encoding")
{
    TheoremReport r("X", 1e-9, 4);
    r.hypothesis("h", true, 0.0);
    r.conclusion("c", 2e-10);
    r.value("v", 1.25);
    r.note("n", "text");
    r.finish();
    const Json j = to_json(r);
    CHECK(j["status"] == "pass");
    CHECK(j["seed"] == 4);
    CHECK(j["values"]["v"] == 1.25);
    CHECK(j["witness"].is_null());
    CHECK(j["conclusions"][0]["pass"] == true);
}

TEST_CASE("cli run: exit codes and documents")
{
    RunResult ok = run(config("validate", {fixtures + "/identity_frame.json"}));
    CHECK(ok.exit_code == 0);
    const Json doc = Json::parse(ok.document);
    CHECK(doc["tool"] == "gframe");
    CHECK(doc["version"] == kToolVersion);
    CHECK(doc["config"]["command"] == "validate");
    CHECK(doc["config"]["tol"] == 1e-9);

    CHECK(run(config("validate", {fixtures + "/zero_family.json"})).exit_code == 1);
    const RunResult bad = run(config("validate", {fixtures + "/malformed.json"}));
    CHECK(bad.exit_code == 2);
    CHECK(bad.error.find(":4:") != std::string::npos);
    CHECK(run(config("validate")).exit_code == 2);
    CHECK(run(config("frobnicate")).exit_code == 2);

    RunConfig ex = config("example");
    ex.nodes = 4;
    CHECK(run(ex).exit_code == 2);

    RunConfig b = config("example");
    b.alpha = 1;
    b.beta = 1;
    b.rank = 3;
    b.nodes = 11;
    b.check_bounds = "0.19245008972987526,0.5773502691896257";
    CHECK(run(b).exit_code == 0);
    b.check_bounds = "0.2,0.5773502691896257";
    CHECK(run(b).exit_code == 1);
    b.check_bounds = "nonsense";
    CHECK(run(b).exit_code == 2);

    RunConfig th = config("theorem");
    th.id = "T55";
    th.seed = 42;
    const RunResult t55 = run(th);
    CHECK(t55.exit_code == 0);
    CHECK(Json::parse(t55.document)["result"]["reports"][0]["values"]["right_inverses_verified"] == 20.0);
    th.mutant = "wrong-k";
    CHECK(run(th).exit_code == 1);

    CHECK(run(config("perturb", {fixtures + "/perturb_sum.json"})).exit_code == 0);
    CHECK(run(config("perturb", {fixtures + "/perturb_gate.json"})).exit_code == 2);
}

TEST_CASE("cli run: generated files are deterministic and reload")
{
    RunConfig r = config("random");
    r.seed = 11;
    r.algebra = "C3";
    r.rank = 2;
    r.commuting = true;
    const RunResult a = run(r), b = run(r);
    CHECK(a.exit_code == 0);
    CHECK(a.document == b.document);
    const GFrameSystem sys = parse_system(a.document);
    CHECK(sys.commuting());
    CHECK(sys.controls().each_other_residual <= 1e-12);
    CHECK(sys.controls().family_residual <= 1e-12);

    r.commuting = false;
    const GFrameSystem plain = parse_system(run(r).document);
    CHECK_THROWS_AS(optimal_scalar_bounds(plain), UnsupportedConfiguration);
    CHECK_NOTHROW(frame_operator(plain));

    RunConfig e = config("example");
    e.alpha = 2;
    e.beta = 3;
    e.rank = 3;
    e.nodes = 11;
    CHECK(run(e).document == run(e).document);

    CHECK(parse_algebra("M3") == AlgebraDescriptor{AlgebraKind::matrix, 3});
    CHECK(parse_algebra("diagonal:4") == AlgebraDescriptor{AlgebraKind::diagonal, 4});
    CHECK_THROWS_AS(parse_algebra("Q2"), InputError);
}

TEST_CASE("cli run: full theorem sweep is byte-identical across runs")
{
    RunConfig c = config("theorem");
    c.seed = 3;
    const RunResult a = run(c), b = run(c);
    CHECK(a.exit_code == 0);
    CHECK(a.document == b.document);
    // canonical ordering by id
    const Json reps = Json::parse(a.document)["result"]["reports"];
    for (size_t k = 1; k < reps.size(); ++k)
        CHECK(reps[k - 1]["theorem_id"].get<std::string>() < reps[k]["theorem_id"].get<std::string>());
}
