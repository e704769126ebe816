#include "scatter/timing.hpp"

#include <cmath>

#include "scatter/constants.hpp"
#include "scatter/errors.hpp"
#include "scatter/grid.hpp"

namespace scatter {

double GaussianPacket1D::sigma_x2(double t) const {
    double tp = t + tau_d;
    return 1.0 / (2.0 * dp * dp) + dp * dp * tp * tp / (2.0 * mass * mass);
}

double GaussianPacket1D::density(double x, double t) const {
    double s2 = sigma_x2(t);
    double d = x - center(t);
    return std::exp(-0.5 * d * d / s2) / std::sqrt(2.0 * kPi * s2);
}

double overlap_density(const GaussianPacket1D& electron, const GaussianPacket1D& ion,
                       double t) {
    double s2 = electron.sigma_x2(t) + ion.sigma_x2(t);
    double d = electron.center(t) - ion.center(t);
    return std::exp(-0.5 * d * d / s2) / std::sqrt(2.0 * kPi * s2);
}

CollisionProfile collision_probability(const GaussianPacket1D& electron,
                                       const GaussianPacket1D& ion,
                                       const TimeGridSpec& spec) {
    double v_rel = electron.p0 / electron.mass - ion.p0 / ion.mass;
    double dx0 = ion.x0 - electron.x0;

    CollisionProfile profile;
    double t_center, duration_est;
    if (std::abs(v_rel) < 1e-12) {
        profile.window_limited = true;
        t_center = 0.0;
        duration_est = 1.0;
    } else {
        t_center = dx0 / v_rel;  // classical overlap time
        double s2 = electron.sigma_x2(t_center) + ion.sigma_x2(t_center);
        duration_est = 2.0 * std::sqrt(s2) / std::abs(v_rel);
    }

    double half = 0.5 * spec.width_factor * duration_est;
    profile.t_grid.resize(spec.points);
    profile.wc.resize(spec.points);
    double dt = 2.0 * half / static_cast<double>(spec.points - 1);
    for (std::size_t i = 0; i < spec.points; ++i) {
        double t = t_center - half + dt * static_cast<double>(i);
        profile.t_grid[i] = t;
        profile.wc[i] = overlap_density(electron, ion, t);
    }

    double norm = integrate(profile.wc, dt);
    if (norm < 1e-30) {
        throw ConvergenceError("collision_probability: packets never overlap in the window");
    }
    std::vector<double> m1(spec.points), m2(spec.points);
    for (std::size_t i = 0; i < spec.points; ++i) {
        profile.wc[i] /= norm;
        m1[i] = profile.wc[i] * profile.t_grid[i];
        m2[i] = profile.wc[i] * profile.t_grid[i] * profile.t_grid[i];
    }
    profile.mean_t = integrate(m1, dt);
    double var = integrate(m2, dt) - profile.mean_t * profile.mean_t;
    profile.dwc_au = 2.0 * std::sqrt(std::max(var, 0.0));
    profile.dwc_fs = profile.dwc_au * kAuTimeFs;
    return profile;
}

namespace {

double dwc_of(const GaussianPacket1D& e, const GaussianPacket1D& ion) {
    return collision_probability(e, ion).dwc_fs;
}

}  // namespace

std::vector<SweepPoint> duration_sweep(
    SweepMethod method, const std::vector<double>& targets_fs,
    const GaussianPacket1D& electron_base, const GaussianPacket1D& ion,
    const std::function<double(const GaussianPacket1D&)>& depth_for) {
    std::vector<SweepPoint> points;
    points.reserve(targets_fs.size());

    for (double target : targets_fs) {
        GaussianPacket1D e = electron_base;
        double lo, hi;  // bisection bounds on the method parameter
        auto with_param = [&](double v) {
            GaussianPacket1D p = electron_base;
            if (method == SweepMethod::ShrinkDp) {
                p.dp = v;
            } else {
                p.tau_d = v;
            }
            return p;
        };
        if (method == SweepMethod::ShrinkDp) {
            lo = 1e-6;  // widest packet, longest collision
            hi = 0.2;
        } else {
            lo = 1e8;  // strongest defocus, longest collision
            hi = 0.0;
        }
        // dwc(lo) >= dwc(hi) by construction
        double f_lo = dwc_of(with_param(lo), ion);
        double f_hi = dwc_of(with_param(hi), ion);
        if (target > f_lo || target < f_hi) {
            throw ConvergenceError("duration_sweep: target duration outside parameter range");
        }
        double v = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            v = (method == SweepMethod::ShrinkDp) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
            double f = dwc_of(with_param(v), ion);
            if (std::abs(f - target) <= 0.02 * target) break;
            if (f > target) {
                lo = v;
            } else {
                hi = v;
            }
        }
        e = with_param(v);
        double achieved = dwc_of(e, ion);
        if (std::abs(achieved - target) > 0.02 * target) {
            throw ConvergenceError("duration_sweep: bisection failed to reach target");
        }
        SweepPoint pt;
        pt.method = method;
        pt.target_dwc_fs = target;
        pt.achieved_dwc_fs = achieved;
        pt.parameter = (method == SweepMethod::ShrinkDp) ? e.dp : e.tau_d;
        pt.depth = depth_for(e);
        points.push_back(pt);
    }
    return points;
}

}  // namespace scatter
