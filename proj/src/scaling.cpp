#include "bdp/scaling.hpp"

#include <cmath>

namespace bdp {

void fit_loglog(ScalingSeries& series) {
    std::vector<std::pair<double, double>> pts;  // (ln size, ln value)
    for (const auto& [size, value] : series.points)
        if (value > 1e-14 && size > 0.0) pts.emplace_back(std::log(size), std::log(value));
    series.fitted = pts.size() >= 4;
    if (!series.fitted) return;
    const double n = double(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    series.exponent = (n * sxy - sx * sy) / det;
    series.intercept = (sy - series.exponent * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& [x, y] : pts) {
        const double fit = series.intercept + series.exponent * x;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - ybar) * (y - ybar);
    }
    series.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace bdp
