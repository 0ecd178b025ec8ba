#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qcorr {

struct NelderMeadOptions {
    std::size_t max_iterations = 2000;
    /// Stop when the simplex's function-value range falls below this.
    double f_tol = 1e-12;
    /// ...and its vertices lie within this distance of the best one.
    double x_tol = 1e-9;
    double initial_step = 0.5;
    /// Restart the simplex around the incumbent this many times after convergence.
    std::size_t polish_rounds = 1;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` from `start` with the adaptive Nelder-Mead simplex
/// (Gao-Han coefficients for the dimension).
NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start,
                                      const NelderMeadOptions& options = {});

}  // namespace qcorr
