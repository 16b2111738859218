#include "gframe/measure.hpp"

#include <cmath>
#include <set>

#include "gframe/errors.hpp"

namespace gframe {

MeasureSpace::MeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    if (atoms_.empty()) throw InputError("measure space needs at least one atom");
    std::set<std::string> seen;
    for (const auto& a : atoms_) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw InputError("atom '" + a.label + "' must have a positive finite weight");
        if (!seen.insert(a.label).second) throw InputError("duplicate atom label '" + a.label + "'");
    }
}

double MeasureSpace::total_mass() const
{
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
}

size_t MeasureSpace::index_of(const std::string& label) const
{
    for (size_t k = 0; k < atoms_.size(); ++k)
        if (atoms_[k].label == label) return k;
    throw InputError("unknown atom label '" + label + "'");
}

AlgebraElement integrate_algebra(const std::map<std::string, AlgebraElement>& f, const MeasureSpace& m)
{
    if (m.size() == 0) throw InputError("integration over an empty measure space");
    auto first = f.find(m.label(0));
    if (first == f.end()) throw InputError("integrand is missing atom '" + m.label(0) + "'");
    AlgebraElement acc = AlgebraElement::zero(first->second.descriptor());
    for (const auto& atom : m.atoms()) {
        auto it = f.find(atom.label);
        if (it == f.end()) throw InputError("integrand is missing atom '" + atom.label + "'");
        acc = acc + atom.weight * it->second;
    }
    return acc;
}

std::vector<double> simpson_nodes(int nodes)
{
    if (nodes < 3 || nodes % 2 == 0) throw InputError("Simpson rule needs an odd node count >= 3, got " + std::to_string(nodes));
    std::vector<double> t(static_cast<size_t>(nodes));
    for (int k = 0; k < nodes; ++k) t[static_cast<size_t>(k)] = static_cast<double>(k) / (nodes - 1);
    return t;
}

MeasureSpace simpson_unit_interval(int nodes)
{
    simpson_nodes(nodes);  // parity gate
    const double h = 1.0 / (nodes - 1);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        double c = (k == 0 || k == nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        atoms.push_back({"w" + std::to_string(k), c * h / 3.0});
    }
    return MeasureSpace(std::move(atoms));
}

}  // namespace gframe
