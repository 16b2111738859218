#pragma once

#include <functional>
#include <vector>

#include "gframe/hilbert_module.hpp"
#include "gframe/measure.hpp"

namespace gframe {

// Atom sums and sample sweeps run through these two paths. The parallel path
// evaluates per-index terms with OpenMP and then reduces them in index order,
// so both paths perform the same floating-point operations in the same order
// and produce bit-identical results.
enum class Execution { serial, parallel };

using OperatorTerm = std::function<AdjointableOperator(size_t)>;
using ElementTerm = std::function<AlgebraElement(size_t)>;

// sum_k weight_k * term(k)
AdjointableOperator weighted_operator_sum(const MeasureSpace& m, const OperatorTerm& term,
                                          Execution exec = Execution::parallel);
AlgebraElement weighted_element_sum(const MeasureSpace& m, const ElementTerm& term,
                                    Execution exec = Execution::parallel);

// Evaluates f(0..count-1); results land at their index regardless of thread.
std::vector<double> map_indices(size_t count, const std::function<double(size_t)>& f,
                                Execution exec = Execution::parallel);

}  // namespace gframe
