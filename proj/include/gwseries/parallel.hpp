#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace gwseries {

enum class Exec { parallel, serial };

// Runs body(i) for i in [0, n). Exceptions cannot cross an OpenMP region, so
// each iteration's exception is captured and the one with the lowest index is
// rethrown afterwards, matching what a serial loop would report.
template <class Body>
void parallel_for(std::size_t n, Exec exec, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace gwseries
