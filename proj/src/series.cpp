#include "minnorm/series.hpp"

#include <cmath>
#include <stdexcept>

namespace minnorm {

namespace {
constexpr std::size_t kLanes = 8;
constexpr double kTwoPi = 2.0 * M_PI;

template <bool WithSine>
void series_block(std::span<const double> cc, std::span<const double> sc,
                  const double* ts, std::size_t nl, double* out) {
    double cprev[kLanes], ccur[kLanes], sprev[kLanes], scur[kLanes];
    double twoc[kLanes], acc[kLanes];
    const std::size_t K = cc.size() - 1;
    for (std::size_t l = 0; l < nl; ++l) {
        double ang = kTwoPi * ts[l];
        double c = std::cos(ang);
        cprev[l] = 1.0;
        ccur[l] = c;
        twoc[l] = 2.0 * c;
        acc[l] = 0.0;
        if constexpr (WithSine) {
            sprev[l] = 0.0;
            scur[l] = std::sin(ang);
        }
    }
    for (std::size_t k = 1; k <= K; ++k) {
        const double wc = cc[k];
        if constexpr (WithSine) {
            const double ws = sc[k];
            for (std::size_t l = 0; l < nl; ++l) {
                acc[l] += wc * ccur[l] + ws * scur[l];
                double cn = twoc[l] * ccur[l] - cprev[l];
                double sn = twoc[l] * scur[l] - sprev[l];
                cprev[l] = ccur[l];
                ccur[l] = cn;
                sprev[l] = scur[l];
                scur[l] = sn;
            }
        } else {
            for (std::size_t l = 0; l < nl; ++l) {
                acc[l] += wc * ccur[l];
                double cn = twoc[l] * ccur[l] - cprev[l];
                cprev[l] = ccur[l];
                ccur[l] = cn;
            }
        }
    }
    for (std::size_t l = 0; l < nl; ++l) out[l] = cc[0] + acc[l];
}
} // namespace

void cosine_series_batch(std::span<const double> cos_coef, std::span<const double> ts,
                         std::span<double> out) {
    if (cos_coef.empty()) throw std::invalid_argument("cosine_series_batch: empty table");
    if (ts.size() != out.size()) throw std::invalid_argument("cosine_series_batch: size mismatch");
    for (std::size_t i = 0; i < ts.size(); i += kLanes) {
        std::size_t nl = std::min(kLanes, ts.size() - i);
        series_block<false>(cos_coef, {}, ts.data() + i, nl, out.data() + i);
    }
}

void trig_series_batch(std::span<const double> cos_coef, std::span<const double> sin_coef,
                       std::span<const double> ts, std::span<double> out) {
    if (cos_coef.size() != sin_coef.size())
        throw std::invalid_argument("trig_series_batch: table size mismatch");
    if (cos_coef.empty()) throw std::invalid_argument("trig_series_batch: empty table");
    if (ts.size() != out.size()) throw std::invalid_argument("trig_series_batch: size mismatch");
    for (std::size_t i = 0; i < ts.size(); i += kLanes) {
        std::size_t nl = std::min(kLanes, ts.size() - i);
        series_block<true>(cos_coef, sin_coef, ts.data() + i, nl, out.data() + i);
    }
}

} // namespace minnorm
