#include <doctest.h>

#include <cmath>
#include <map>

#include "gframe/errors.hpp"
#include "gframe/measure.hpp"

using namespace gframe;

namespace {
const AlgebraDescriptor M2{AlgebraKind::matrix, 2};
}

TEST_CASE("integrate_algebra")
{
    const AlgebraElement a = AlgebraElement::matrix(2, {1, 2, 3, 4});
    CHECK(integrate_algebra({{"w", a}}, MeasureSpace({{"w", 1.0}})) == a);
    MeasureSpace two({{"p", 0.25}, {"q", 0.75}});
    CHECK(norm(integrate_algebra({{"p", AlgebraElement::zero(M2)}, {"q", AlgebraElement::zero(M2)}}, two)) == 0.0);
    const AlgebraElement one = AlgebraElement::identity(M2);
    CHECK(norm(integrate_algebra({{"p", one}, {"q", 3.0 * one}}, two) - 2.5 * one) <= 1e-15);
    CHECK_THROWS_AS(integrate_algebra({{"p", one}}, two), InputError);
}

TEST_CASE("property: integration is additive over atoms and homogeneous")
{
    MeasureSpace left({{"a", 0.3}, {"b", 0.9}});
    MeasureSpace right({{"c", 1.7}});
    MeasureSpace all({{"a", 0.3}, {"b", 0.9}, {"c", 1.7}});
    std::map<std::string, AlgebraElement> f = {{"a", AlgebraElement::matrix(2, {1, 0.5, 0.5, 2})},
                                               {"b", AlgebraElement::matrix(2, {0, 1, 1, 0})},
                                               {"c", AlgebraElement::matrix(2, {3, 0, 0, -1})}};
    auto restrict_to = [&](const MeasureSpace& m) {
        std::map<std::string, AlgebraElement> g;
        for (const Atom& at : m.atoms()) g.emplace(at.label, f.at(at.label));
        return g;
    };
    const AlgebraElement whole = integrate_algebra(f, all);
    CHECK(norm(whole - integrate_algebra(restrict_to(left), left) - integrate_algebra(restrict_to(right), right)) <=
          1e-14);
    std::map<std::string, AlgebraElement> scaled;
    for (const auto& [k, v] : f) scaled.emplace(k, 2.5 * v);
    CHECK(norm(integrate_algebra(scaled, all) - 2.5 * whole) <= 1e-14);
}

TEST_CASE("measure validation")
{
    CHECK_THROWS_AS(MeasureSpace(std::vector<Atom>{}), InputError);
    CHECK_THROWS_AS(MeasureSpace({{"a", 0.0}}), InputError);
    CHECK_THROWS_AS(MeasureSpace({{"a", -1.0}}), InputError);
    CHECK_THROWS_AS(MeasureSpace({{"a", 1.0}, {"a", 2.0}}), InputError);
    CHECK_THROWS_AS(MeasureSpace({{"a", INFINITY}}), InputError);
    CHECK(MeasureSpace({{"a", 1.0}, {"b", 2.0}}).total_mass() == 3.0);
}

TEST_CASE("simpson_unit_interval")
{
    MeasureSpace m = simpson_unit_interval(3);
    REQUIRE(m.size() == 3);
    CHECK(m.weight(0) == doctest::Approx(1.0 / 6));
    CHECK(m.weight(1) == doctest::Approx(4.0 / 6));
    CHECK(m.weight(2) == doctest::Approx(1.0 / 6));
    const std::vector<double> t = simpson_nodes(3);
    CHECK(t == std::vector<double>{0.0, 0.5, 1.0});

    auto integrate = [](int nodes, int power) {
        MeasureSpace s = simpson_unit_interval(nodes);
        std::vector<double> w = simpson_nodes(nodes);
        double sum = 0.0;
        for (size_t k = 0; k < s.size(); ++k) sum += s.weight(k) * std::pow(w[k], power);
        return sum;
    };
    CHECK(std::abs(integrate(3, 2) - 1.0 / 3.0) <= 1e-16);
    CHECK(std::abs(integrate(3, 3) - 0.25) <= 1e-15);
    CHECK(std::abs(integrate(11, 2) - 1.0 / 3.0) <= 1e-15);

    CHECK_THROWS_AS(simpson_unit_interval(4), InputError);
    CHECK_THROWS_AS(simpson_unit_interval(1), InputError);
}

TEST_CASE("property: Simpson weights sum to one for odd n up to 1001")
{
    double worst = 0.0;
    for (int n = 3; n <= 1001; n += 2) worst = std::max(worst, std::abs(simpson_unit_interval(n).total_mass() - 1.0));
    CHECK(worst <= 1e-13);
}
