#include "gframe/report.hpp"

#include <algorithm>
#include <cmath>

namespace gframe {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not-applicable";
    }
    return "unknown";
}

bool TheoremReport::hypothesis(const std::string& name, bool pass, double residual)
{
    hypotheses.push_back({name, pass, residual});
    return pass;
}

void TheoremReport::conclusion(const std::string& name, double residual)
{
    conclusion(name, std::isfinite(residual) && residual <= tolerance, residual);
}

void TheoremReport::conclusion(const std::string& name, bool pass, double residual)
{
    conclusions.push_back({name, pass, residual});
}

bool TheoremReport::hypotheses_hold() const
{
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const CheckResult& c) { return c.pass; });
}

TheoremReport& TheoremReport::finish()
{
    if (!hypotheses_hold()) {
        status = Status::not_applicable;
        conclusion_pass = false;
        conclusion_residual = 0.0;
        conclusions.clear();
        return *this;
    }
    conclusion_pass = std::all_of(conclusions.begin(), conclusions.end(), [](const CheckResult& c) { return c.pass; });
    conclusion_residual = 0.0;
    for (const auto& c : conclusions) {
        double r = std::isfinite(c.residual) ? c.residual : INFINITY;
        conclusion_residual = std::max(conclusion_residual, r);
    }
    status = conclusion_pass ? Status::pass : Status::fail;
    return *this;
}

}  // namespace gframe
