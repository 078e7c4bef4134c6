#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phaseseed {

/// Pump current sampled on a uniform grid; sample k is held constant over
/// [t0 + k dt, t0 + (k+1) dt).
class DriveWaveform {
public:
    DriveWaveform(double dt, std::vector<double> samples, double t0 = 0.0);

    double dt() const noexcept { return dt_; }
    double t0() const noexcept { return t0_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double duration() const noexcept { return dt_ * static_cast<double>(samples_.size()); }
    double time(std::size_t k) const noexcept { return t0_ + dt_ * static_cast<double>(k); }
    double operator[](std::size_t k) const noexcept { return samples_[k]; }
    std::span<const double> samples() const noexcept { return samples_; }

    /// Replaces each ideal step by a linear ramp of the given rise time
    /// (box filter of width round(rise_time / dt) samples, causal).
    DriveWaveform with_edge_ramp(double rise_time) const;

private:
    double dt_;
    double t0_;
    std::vector<double> samples_;
};

}  // namespace phaseseed
