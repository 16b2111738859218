#include "gframe/kernels.hpp"

#include <exception>
#include <optional>

#include "gframe/errors.hpp"

namespace gframe {

namespace {

// Runs body(k) for k < count on the OpenMP team; the first exception thrown by
// any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(size_t count, Body body)
{
    std::exception_ptr failure;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        try {
            body(static_cast<size_t>(k));
        } catch (...) {
#pragma omp critical(gframe_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

template <class T, class Term>
T ordered_weighted_sum(const MeasureSpace& m, const Term& term, Execution exec)
{
    if (m.size() == 0) throw InputError("sum over an empty measure space");
    if (exec == Execution::serial) {
        std::optional<T> acc;
        for (size_t k = 0; k < m.size(); ++k) {
            T t = m.weight(k) * term(k);
            acc = acc ? *acc + t : t;
        }
        return *acc;
    }
    std::vector<T> terms(m.size());
    parallel_for(m.size(), [&](size_t k) { terms[k] = m.weight(k) * term(k); });
    T acc = terms[0];
    for (size_t k = 1; k < terms.size(); ++k) acc = acc + terms[k];
    return acc;
}

}  // namespace

AdjointableOperator weighted_operator_sum(const MeasureSpace& m, const OperatorTerm& term, Execution exec)
{
    return ordered_weighted_sum<AdjointableOperator>(m, term, exec);
}

AlgebraElement weighted_element_sum(const MeasureSpace& m, const ElementTerm& term, Execution exec)
{
    return ordered_weighted_sum<AlgebraElement>(m, term, exec);
}

std::vector<double> map_indices(size_t count, const std::function<double(size_t)>& f, Execution exec)
{
    std::vector<double> out(count, 0.0);
    if (exec == Execution::serial) {
        for (size_t k = 0; k < count; ++k) out[k] = f(k);
        return out;
    }
    parallel_for(count, [&](size_t k) { out[k] = f(k); });
    return out;
}

}  // namespace gframe
