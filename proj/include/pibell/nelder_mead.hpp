#ifndef PIBELL_NELDER_MEAD_HPP
#define PIBELL_NELDER_MEAD_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace pibell {

struct NelderMeadOptions {
    int max_evaluations = 20000;
    double x_tol = 1e-10;  // simplex size
    double f_tol = 1e-14;  // spread of vertex values
    double initial_step = 0.25;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Simplex minimiser with dimension-adaptive coefficients
// (reflection 1, expansion 1 + 2/k, contraction 3/4 - 1/(2k), shrink 1 - 1/k).
template <class F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {}) {
    const int k = static_cast<int>(x0.size());
    const double kd = std::max(k, 2);
    const double a_r = 1.0, a_e = 1.0 + 2.0 / kd, a_c = 0.75 - 1.0 / (2.0 * kd), a_s = 1.0 - 1.0 / kd;

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(k) + 1, x0);
    std::vector<double> val(static_cast<std::size_t>(k) + 1);
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };
    for (int i = 0; i < k; ++i) pts[static_cast<std::size_t>(i) + 1](i) += opt.initial_step;
    for (std::size_t i = 0; i < pts.size(); ++i) val[i] = eval(pts[i]);

    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (evals < opt.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

        double size = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            size = std::max(size, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
        if (size <= opt.x_tol && val[worst] - val[best] <= opt.f_tol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != worst) centroid += pts[i];
        centroid /= k;

        const Eigen::VectorXd xr = centroid + a_r * (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < val[best]) {
            const Eigen::VectorXd xe = centroid + a_e * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) pts[worst] = xe, val[worst] = fe;
            else pts[worst] = xr, val[worst] = fr;
            continue;
        }
        if (fr < val[second]) {
            pts[worst] = xr, val[worst] = fr;
            continue;
        }
        const bool outside = fr < val[worst];
        const Eigen::VectorXd xc =
            outside ? Eigen::VectorXd(centroid + a_c * (xr - centroid)) : Eigen::VectorXd(centroid - a_c * (centroid - pts[worst]));
        const double fc = eval(xc);
        if (fc < (outside ? fr : val[worst])) {
            pts[worst] = xc, val[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + a_s * (pts[i] - pts[best]);
            val[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(val.begin(), val.end());
    const std::size_t b = static_cast<std::size_t>(it - val.begin());
    return {pts[b], val[b], evals, converged};
}

}  // namespace pibell

#endif
