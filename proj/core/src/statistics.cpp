#include "svjmle/statistics.hpp"

#include <cmath>
#include <stdexcept>

#include "svjmle/errors.hpp"
#include "svjmle/math.hpp"

namespace svjmle {

namespace {

void require_positive(const std::vector<double>& x, const char* what) {
    for (double v : x)
        if (!(v > 0.0)) throw NonpositivePath(std::string(what) + ": non-positive value");
}

}  // namespace

CoreIntegrals integrals_core(const std::vector<double>& y, const SimGrid& grid, double sigma) {
    grid.validate();
    const std::size_t n = grid.steps;
    if (y.size() != n + 1)
        throw std::invalid_argument("integrals_core: path does not match the grid");
    require_positive(y, "integrals_core");

    const double dt = grid.dt();
    KahanSum s1, s2, s3;
    for (std::size_t i = 0; i < n; ++i) {
        s1.add(y[i]);
        s2.add(1.0 / y[i]);
        s3.add((y[i + 1] - y[i]) / y[i]);
    }
    CoreIntegrals out;
    out.i1 = dt * s1.value();
    out.i2 = dt * s2.value();
    out.i3 = s3.value();
    out.i3_log = std::log(y[n]) - std::log(y[0]) + 0.5 * sigma * sigma * out.i2;
    out.y_terminal = y[n];
    return out;
}

std::pair<double, double> integrals_wiener(const ModelParams& params, const SimGrid& grid,
                                           const std::vector<double>& y,
                                           const std::vector<double>& dw,
                                           const std::vector<double>& db) {
    grid.validate();
    const std::size_t n = grid.steps;
    if (y.size() != n + 1 || dw.size() != n || db.size() != n)
        throw std::invalid_argument("integrals_wiener: arrays do not conform to the grid");
    require_positive(y, "integrals_wiener");

    const double dt = grid.dt();
    const double rho_c = std::sqrt(1.0 - params.rho * params.rho);
    KahanSum s4, s5, s2;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = params.rho * dw[i] + rho_c * db[i];
        const double root = std::sqrt(y[i]);
        s4.add(root * xi);
        s5.add(xi / root);
        s2.add(1.0 / y[i]);
    }
    const double i2 = dt * s2.value();
    return {params.mu * grid.horizon + s4.value(), params.mu * i2 + s5.value()};
}

std::pair<double, double> integrals_price(const SimGrid& grid, const std::vector<double>& y,
                                          const std::vector<double>& s,
                                          const std::vector<double>& dl) {
    grid.validate();
    const std::size_t n = grid.steps;
    if (y.size() != n + 1 || s.size() != n + 1 || dl.size() != n)
        throw std::invalid_argument("integrals_price: arrays do not conform to the grid");
    require_positive(y, "integrals_price");
    require_positive(s, "integrals_price");

    KahanSum s4, s5, levy_total;
    for (std::size_t i = 0; i < n; ++i) {
        const double rel = (s[i + 1] - s[i]) / s[i];
        s4.add(rel);
        s5.add(rel / y[i] - dl[i] / y[i]);
        levy_total.add(dl[i]);
    }
    return {s4.value() - levy_total.value(), s5.value()};
}

Mat2 realized_sigma_rho(const SimGrid& grid, const std::vector<double>& y,
                        const std::vector<double>& s,
                        const std::vector<double>& log_jump_sums) {
    grid.validate();
    const std::size_t n = grid.steps;
    if (y.size() != n + 1 || s.size() != n + 1 || log_jump_sums.size() != n)
        throw std::invalid_argument("realized_sigma_rho: arrays do not conform to the grid");
    require_positive(y, "realized_sigma_rho");
    require_positive(s, "realized_sigma_rho");

    KahanSum qyy, qyx, qxx, jump_qv, ysum;
    for (std::size_t i = 0; i < n; ++i) {
        const double dy = y[i + 1] - y[i];
        const double dx = std::log(s[i + 1]) - std::log(s[i]);
        qyy.add(dy * dy);
        qyx.add(dy * dx);
        qxx.add(dx * dx);
        jump_qv.add(log_jump_sums[i] * log_jump_sums[i]);
        ysum.add(y[i]);
    }
    const double i1 = grid.dt() * ysum.value();
    Mat2 m;
    m(0, 0) = qyy.value() / i1;
    m(0, 1) = m(1, 0) = qyx.value() / i1;
    m(1, 1) = (qxx.value() - jump_qv.value()) / i1;
    return m;
}

SuffStats reduce_path(const ModelParams& params, const SimGrid& grid, const PathBundle& path,
                      I3Variant i3_variant, I45Variant i45_variant) {
    const CoreIntegrals core = integrals_core(path.y, grid, params.sigma);

    SuffStats st;
    st.y_initial = path.y.front();
    st.y_terminal = core.y_terminal;
    st.i1 = core.i1;
    st.i2 = core.i2;
    st.i3_increment = core.i3;
    st.i3_log = core.i3_log;
    st.i3_variant = i3_variant;
    st.i3 = (i3_variant == I3Variant::Increment) ? core.i3 : core.i3_log;
    st.i45_variant = i45_variant;
    st.horizon = grid.horizon;

    if (i45_variant == I45Variant::Wiener) {
        auto [i4, i5] = integrals_wiener(params, grid, path.y, path.dW, path.dB);
        st.i4 = i4;
        st.i5 = i5;
    } else {
        auto [i4, i5] = integrals_price(grid, path.y, path.s, path.dL);
        st.i4 = i4;
        st.i5 = i5;
    }
    return st;
}

}  // namespace svjmle
