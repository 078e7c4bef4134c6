#include "phaseseed/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "phaseseed/errors.hpp"

namespace phaseseed {

DriveWaveform::DriveWaveform(double dt, std::vector<double> samples, double t0)
    : dt_(dt), t0_(t0), samples_(std::move(samples)) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("drive: dt must be > 0");
    if (samples_.empty()) throw DomainError("drive: no samples");
    if (!std::isfinite(t0_)) throw DomainError("drive: t0 must be finite");
    for (const double i : samples_) {
        if (!(i >= 0.0) || !std::isfinite(i)) throw DomainError("drive: currents must be finite and >= 0");
    }
}

DriveWaveform DriveWaveform::with_edge_ramp(double rise_time) const {
    if (!(rise_time >= 0.0)) throw DomainError("drive: rise time must be >= 0");
    const auto width = static_cast<std::size_t>(std::llround(rise_time / dt_));
    if (width <= 1) return *this;
    // causal box filter; samples before the start repeat the first one
    const double w = static_cast<double>(width);
    std::vector<double> out(samples_.size());
    double acc = samples_.front() * w;
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        acc += samples_[k] - (k >= width ? samples_[k - width] : samples_.front());
        out[k] = std::max(0.0, acc / w);
    }
    return DriveWaveform(dt_, std::move(out), t0_);
}

}  // namespace phaseseed
