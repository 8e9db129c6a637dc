#pragma once

#include <string>
#include <vector>

namespace bdp {

/// (size, value) series with a log-log least-squares exponent. Values at or
/// below the 1e-14 noise floor are excluded from the fit; fewer than four
/// surviving points leaves the series unfit rather than fitted badly.
struct ScalingSeries {
    std::string quantity;
    std::vector<std::pair<double, double>> points;
    double exponent = 0.0;
    double intercept = 0.0;
    double fit_r2 = 0.0;
    bool fitted = false;
};

void fit_loglog(ScalingSeries& series);

}  // namespace bdp
