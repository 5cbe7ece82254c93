#pragma once

#include <cmath>
#include <string>

#include "stockfc/metaheuristics.hpp"

namespace stockfc::detail {

// Wraps an objective with evaluation counting and the non-finite abort.
class CountingEvaluator {
public:
    CountingEvaluator(const Objective& objective, const char* engine)
        : objective_(objective), engine_(engine) {}

    double operator()(std::span<const double> genes)
    {
        const double f = objective_.evaluate(genes);
        ++count_;
        if (!std::isfinite(f))
            throw EngineAbort(std::string(engine_) + ": objective returned a non-finite fitness");
        return f;
    }

    void evaluate(Candidate& c) { c.fitness = (*this)(c.genes); }

    std::size_t count() const { return count_; }

private:
    const Objective& objective_;
    const char* engine_;
    std::size_t count_ = 0;
};

inline void require_dimension(const Objective& objective, const char* engine)
{
    if (objective.dimension == 0 || !objective.evaluate)
        throw std::invalid_argument(std::string(engine) + ": objective has no dimension or evaluator");
}

} // namespace stockfc::detail
