#pragma once

#include <map>
#include <string>
#include <vector>

#include "gframe/star_algebra.hpp"

namespace gframe {

struct Atom {
    std::string label;
    double weight = 0.0;

    bool operator==(const Atom&) const = default;
};

// Finite atomic stand-in for (Ω, μ).
class MeasureSpace {
public:
    MeasureSpace() = default;
    explicit MeasureSpace(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    size_t size() const { return atoms_.size(); }
    double weight(size_t k) const { return atoms_[k].weight; }
    const std::string& label(size_t k) const { return atoms_[k].label; }
    double total_mass() const;
    // Throws InputError for an unknown label.
    size_t index_of(const std::string& label) const;

    bool operator==(const MeasureSpace&) const = default;

private:
    std::vector<Atom> atoms_;
};

AlgebraElement integrate_algebra(const std::map<std::string, AlgebraElement>& f, const MeasureSpace& m);

// Composite Simpson rule on [0,1]; labels w0..w{n-1}, node k at k/(n-1).
MeasureSpace simpson_unit_interval(int nodes);
std::vector<double> simpson_nodes(int nodes);

}  // namespace gframe
