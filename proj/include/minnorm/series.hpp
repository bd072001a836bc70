#pragma once

#include <cstddef>
#include <span>

namespace minnorm {

// out[i] = cos_coef[0] + sum_{k=1}^{K} cos_coef[k] * cos(2 pi k t[i])
// with K = cos_coef.size() - 1. Uses the three-term recurrence in
// register-blocked lanes; rounding in the recurrence is damped by the
// decaying coefficients.
void cosine_series_batch(std::span<const double> cos_coef, std::span<const double> ts,
                         std::span<double> out);

// out[i] = cos_coef[0] + sum_k cos_coef[k] cos(2 pi k t[i])
//                      + sum_k sin_coef[k] sin(2 pi k t[i])
// sin_coef[0] is ignored; sizes of the two tables must match.
void trig_series_batch(std::span<const double> cos_coef, std::span<const double> sin_coef,
                       std::span<const double> ts, std::span<double> out);

} // namespace minnorm
