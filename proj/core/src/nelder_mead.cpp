#include "qcorr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcorr {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

NelderMeadResult run_simplex(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start, double step,
                             const NelderMeadOptions& opt) {
    const std::size_t n = start.size();
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / nd;
    const double gamma = 0.75 - 1.0 / (2.0 * nd);
    const double delta = 1.0 - 1.0 / nd;

    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return f(x);
    };

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = start;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }

    std::vector<double> centroid(n), trial(n);
    auto along = [&](double coef, const std::vector<double>& worst) {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (centroid[j] - worst[j]);
        return out;
    };

    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

        double spread_x = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                spread_x = std::max(spread_x, std::abs(simplex[i].x[j] - simplex[0].x[j]));
        if (simplex[n].f - simplex[0].f <= opt.f_tol && spread_x <= opt.x_tol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j] / nd;

        auto& worst = simplex[n];
        auto xr = along(alpha, worst.x);
        const double fr = eval(xr);
        if (fr < simplex[0].f) {
            auto xe = along(beta, worst.x);
            const double fe = eval(xe);
            worst = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
        } else if (fr < simplex[n - 1].f) {
            worst = {std::move(xr), fr};
        } else {
            const bool outside = fr < worst.f;
            auto xc = outside ? along(gamma, worst.x) : along(-gamma, worst.x);
            const double fc = eval(xc);
            if (fc < std::min(fr, worst.f)) {
                worst = {std::move(xc), fc};
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i].x[j] = simplex[0].x[j] + delta * (simplex[i].x[j] - simplex[0].x[j]);
                    simplex[i].f = eval(simplex[i].x);
                }
            }
        }
    }
    const auto best = std::min_element(simplex.begin(), simplex.end(),
                                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    res.x = best->x;
    res.value = best->f;
    return res;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, const NelderMeadOptions& options) {
    if (start.empty()) {
        NelderMeadResult r;
        r.x = {};
        r.value = f(r.x);
        r.evaluations = 1;
        r.converged = true;
        return r;
    }
    auto res = run_simplex(f, start, options.initial_step, options);
    // Restarting around the incumbent recovers from premature collapse.
    double step = options.initial_step * 0.1;
    for (std::size_t round = 0; round < options.polish_rounds; ++round) {
        auto next = run_simplex(f, res.x, step, options);
        next.iterations += res.iterations;
        next.evaluations += res.evaluations;
        const bool improved = next.value < res.value;
        if (improved) {
            res = std::move(next);
        } else {
            res.iterations = next.iterations;
            res.evaluations = next.evaluations;
            res.converged = res.converged && next.converged;
        }
        step *= 0.1;
    }
    return res;
}

}  // namespace qcorr
