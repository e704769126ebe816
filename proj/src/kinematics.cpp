#include "scatter/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/errors.hpp"

namespace scatter {

CmMomenta lab_to_cm(double p, double P, double m_ion) {
    return {(m_ion * p - P) / (m_ion + 1.0), p + P};
}

LabMomenta cm_to_lab(double k, double K, double m_ion) {
    return {k + K / (m_ion + 1.0), K * m_ion / (m_ion + 1.0) - k};
}

double component_total_energy(double k, double K, double e_nu, const PotentialParams& p) {
    double m_tot = p.m_ion() + 1.0;
    return k * k / (2.0 * p.m_rel()) + K * K / (2.0 * m_tot) + e_nu;
}

std::optional<double> outgoing_momentum(double k_a, double e_a_int, double e_b_int,
                                        double m_rel) {
    double arg = k_a * k_a + 2.0 * m_rel * (e_a_int - e_b_int);
    if (arg < 0.0) return std::nullopt;
    return std::sqrt(arg);
}

std::optional<double> incident_k_for_shell(double k_f_mag, double e_frag, double e_nu,
                                           double m_rel) {
    double arg = k_f_mag * k_f_mag + 2.0 * m_rel * (e_frag - e_nu);
    if (arg < 0.0) return std::nullopt;
    return std::sqrt(arg);
}

LabState solve_entangled_partner(const LabState& c1, int nu2, double e_nu2, double m_ion) {
    double K = c1.p + c1.P;
    double e_tot = 0.5 * c1.p * c1.p + 0.5 * c1.P * c1.P / m_ion + c1.e_nu;
    double e_kin2 = e_tot - e_nu2;

    // p^2/2 + (K-p)^2/(2 m_I) = e_kin2
    double a = 0.5 * (1.0 + 1.0 / m_ion);
    double b = -K / m_ion;
    double c = 0.5 * K * K / m_ion - e_kin2;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw InfeasibleStateError(
            "solve_entangled_partner: no real momenta satisfy the shell constraints");
    }
    double root = std::sqrt(disc);
    double pa = (-b + root) / (2.0 * a);
    double pb = (-b - root) / (2.0 * a);
    double p2 = (std::abs(pa - c1.p) <= std::abs(pb - c1.p)) ? pa : pb;

    LabState out;
    out.p = p2;
    out.P = K - p2;
    out.nu = nu2;
    out.e_nu = e_nu2;
    return out;
}

std::vector<Shell> enumerate_shells(std::span<const ShellComponent> components,
                                    const PotentialParams& params, double tolerance) {
    std::vector<ShellComponent> sorted(components.begin(), components.end());
    std::sort(sorted.begin(), sorted.end(), [&](const ShellComponent& a, const ShellComponent& b) {
        double ea = component_total_energy(a.k, a.K, a.e_nu, params);
        double eb = component_total_energy(b.k, b.K, b.e_nu, params);
        if (ea != eb) return ea < eb;
        if (a.K != b.K) return a.K < b.K;
        return a.nu < b.nu;
    });

    std::vector<Shell> shells;
    for (const auto& comp : sorted) {
        double e_tot = component_total_energy(comp.k, comp.K, comp.e_nu, params);
        bool merged = false;
        if (!shells.empty()) {
            Shell& last = shells.back();
            if (std::abs(e_tot - last.e_total) <= tolerance &&
                std::abs(comp.K - last.K) <= tolerance) {
                last.members.push_back(comp);
                merged = true;
            }
        }
        if (!merged) {
            Shell s;
            s.e_total = e_tot;
            s.K = comp.K;
            s.members.push_back(comp);
            shells.push_back(std::move(s));
        }
    }
    return shells;
}

}  // namespace scatter
