#include <doctest.h>

#include <cmath>
#include <random>

#include "scatter/constants.hpp"
#include "scatter/errors.hpp"
#include "scatter/states.hpp"

using namespace scatter;

namespace {

struct Fixture {
    PotentialParams params;
    RadialGrid grid{0.2, 40.0, 0.01};
    std::vector<BoundLevel> levels;
    Fixture() : levels(morse_levels(params, grid)) {}
};

Fixture& fx() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_SUITE("states") {
    TEST_CASE("two-state construction lands on a single shell") {
        auto& f = fx();
        auto st = build_two_state(f.levels, 0, 1, 4.0, 0.0, 0.7, M_SQRT1_2, M_SQRT1_2, f.params);
        REQUIRE(st.components.size() == 2);
        CHECK(std::norm(st.components[0].coeff) + std::norm(st.components[1].coeff) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::arg(st.components[1].coeff) == doctest::Approx(0.7).epsilon(1e-12));
        auto shells = enumerate_shells(st.components, f.params);
        REQUIRE(shells.size() == 1);
        CHECK(shells[0].members.size() == 2);
    }

    TEST_CASE("degenerate labels collapse to one component") {
        auto& f = fx();
        auto st = build_two_state(f.levels, 2, 2, 4.0, 0.0, 1.3, 0.6, 0.8, f.params);
        REQUIRE(st.components.size() == 1);
        std::complex<double> expect = 0.6 + 0.8 * std::polar(1.0, 1.3);
        CHECK(st.components[0].coeff.real() == doctest::Approx(expect.real()).epsilon(1e-12));
        CHECK(st.components[0].coeff.imag() == doctest::Approx(expect.imag()).epsilon(1e-12));
    }

    TEST_CASE("coefficient normalization is enforced") {
        auto& f = fx();
        CHECK_THROWS_AS(build_two_state(f.levels, 0, 1, 4.0, 0.0, 0.0, 0.9, 0.9, f.params),
                        ConfigError);
    }

    TEST_CASE("contact slice: single state reduces to the bound expectation") {
        auto& f = fx();
        SuperpositionState st;
        st.kind = StateKind::EntangledDiscrete;
        st.components.push_back({5, f.levels[5].energy, 3.9, 0.0, {1.0, 0.0}});
        ContactSlice slice = contact_slice(st, f.levels);
        CHECK(slice.expectation_r ==
              doctest::Approx(bound_expectation_R(f.levels[5])).epsilon(1e-10));
    }

    TEST_CASE("contact slice: phi = pi stretches the bond") {
        auto& f = fx();
        auto at = [&](double phi) {
            return contact_slice(
                       build_two_state(f.levels, 0, 1, 4.0, 0.0, phi, M_SQRT1_2, M_SQRT1_2,
                                       f.params),
                       f.levels)
                .expectation_r;
        };
        CHECK(at(kPi) > at(0.0));
        // 2 pi periodicity
        CHECK(at(0.4) == doctest::Approx(at(0.4 + 2.0 * kPi)).epsilon(1e-12));
    }

    TEST_CASE("envelope states hit the bond-length extremes") {
        auto& f = fx();
        auto psi_max = build_envelope_state(f.levels, 18, 1.8, true, 4.0, f.params);
        auto psi_min = build_envelope_state(f.levels, 7, 6.0, false, 4.0, f.params);
        double norm2 = 0.0;
        for (const auto& comp : psi_max.components) norm2 += std::norm(comp.coeff);
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
        // single shell by construction
        CHECK(enumerate_shells(psi_max.components, f.params).size() == 1);

        double r_max = contact_slice(psi_max, f.levels).expectation_r;
        double r_min = contact_slice(psi_min, f.levels).expectation_r;
        // the coherent extremes beat every single level
        double best = 0.0, worst = 1e9;
        for (const auto& lvl : f.levels) {
            double r = bound_expectation_R(lvl);
            best = std::max(best, r);
            worst = std::min(worst, r);
        }
        CHECK(r_max > best);
        CHECK(r_min < worst);
        // bond-compressing envelope anchor (established value 1.32 +- 0.05)
        CHECK(std::abs(r_min - 1.32) < 0.05);
    }

    TEST_CASE("envelope width -> 0 collapses to the center level") {
        auto& f = fx();
        auto st = build_envelope_state(f.levels, 10, 1e-3, false, 4.0, f.params);
        double r = contact_slice(st, f.levels).expectation_r;
        CHECK(r == doctest::Approx(bound_expectation_R(f.levels[10])).epsilon(1e-9));
    }

    TEST_CASE("incoherent mixtures stay inside the single-state hull") {
        auto& f = fx();
        double lo = 1e9, hi = 0.0;
        std::vector<double> rs;
        for (const auto& lvl : f.levels) {
            rs.push_back(bound_expectation_R(lvl));
            lo = std::min(lo, rs.back());
            hi = std::max(hi, rs.back());
        }
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            double wsum = 0.0, mix = 0.0;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                double w = u(rng);
                wsum += w;
                mix += w * rs[i];
            }
            mix /= wsum;
            CHECK(mix >= lo - 1e-12);
            CHECK(mix <= hi + 1e-12);
        }
    }

    TEST_CASE("global phase leaves the slice and map invariant") {
        auto& f = fx();
        auto st = build_two_state(f.levels, 0, 1, 4.0, 0.0, 0.9, M_SQRT1_2, M_SQRT1_2, f.params);
        auto st2 = st;
        for (auto& comp : st2.components) comp.coeff *= std::polar(1.0, 1.234);
        CHECK(contact_slice(st, f.levels).expectation_r ==
              doctest::Approx(contact_slice(st2, f.levels).expectation_r).epsilon(1e-13));
        DensityMap a = density_map(st, f.levels, 1.0, 4.0, 16, -50.0, 50.0, 17, f.params);
        DensityMap b = density_map(st2, f.levels, 1.0, 4.0, 16, -50.0, 50.0, 17, f.params);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
        }
    }

    TEST_CASE("density map: single component is x-independent") {
        auto& f = fx();
        SuperpositionState st;
        st.kind = StateKind::EntangledDiscrete;
        st.components.push_back({3, f.levels[3].energy, 4.0, 0.0, {1.0, 0.0}});
        DensityMap map = density_map(st, f.levels, 1.0, 6.0, 21, -100.0, 100.0, 9, f.params);
        for (std::size_t ir = 0; ir < map.r_grid.size(); ++ir) {
            for (std::size_t ix = 1; ix < map.x_grid.size(); ++ix) {
                CHECK(map.at(ir, ix) == doctest::Approx(map.at(ir, 0)).epsilon(1e-12));
            }
            // |chi(R)|^2 / (2 pi)
            std::size_t gi = f.grid.index_at(map.r_grid[ir]);
            double chi = f.levels[3].wavefunction.values[gi];
            CHECK(map.at(ir, 0) == doctest::Approx(chi * chi / (2.0 * kPi)).epsilon(1e-10));
        }
    }

    TEST_CASE("density map: equal-nu components beat at 2 pi / dk") {
        auto& f = fx();
        SuperpositionState st;
        st.kind = StateKind::EntangledDiscrete;
        double k1 = 4.0, k2 = 4.2;
        st.components.push_back({0, f.levels[0].energy, k1, 0.0, {M_SQRT1_2, 0.0}});
        st.components.push_back({0, f.levels[0].energy, k2, 0.0, {M_SQRT1_2, 0.0}});
        double period = 2.0 * kPi / (k2 - k1);
        // sample P(R0, x) at x and x + period: identical; at half period: dark
        double r0 = 2.05;
        DensityMap probe =
            density_map(st, f.levels, r0, r0 + 0.1, 2, 0.0, period, 5, f.params);
        CHECK(probe.at(0, 0) == doctest::Approx(probe.at(0, 4)).epsilon(1e-9));
        DensityMap half =
            density_map(st, f.levels, r0, r0 + 0.1, 2, 0.0, period / 2.0, 3, f.params);
        CHECK(half.at(0, 2) < 1e-10 * half.at(0, 0));
    }

    TEST_CASE("fig-2 style map: phi = 0 vs pi differ along x = 0") {
        auto& f = fx();
        auto a = build_two_state(f.levels, 0, 1, 4.0, 0.0, 0.0, M_SQRT1_2, M_SQRT1_2, f.params);
        auto b = build_two_state(f.levels, 0, 1, 4.0, 0.0, kPi, M_SQRT1_2, M_SQRT1_2, f.params);
        DensityMap ma = density_map(a, f.levels, 1.0, 5.0, 41, -1.0, 1.0, 3, f.params);
        DensityMap mb = density_map(b, f.levels, 1.0, 5.0, 41, -1.0, 1.0, 3, f.params);
        double diff = 0.0;
        for (std::size_t ir = 0; ir < ma.r_grid.size(); ++ir) {
            diff = std::max(diff, std::abs(ma.at(ir, 1) - mb.at(ir, 1)));
        }
        CHECK(diff > 0.01);
        for (double v : ma.values) CHECK(v >= 0.0);
    }

    TEST_CASE("packet state: normalization and gaussian momentum norm") {
        auto st = build_packet_state({{0, {1.0, 0.0}}, {1, {0.0, 1.0}}}, 4.0, 0.01, 0.0, 1.0, 0.0);
        REQUIRE(st.packet.has_value());
        double n2 = 0.0;
        for (const auto& [nu, c] : st.packet->nu_coeffs) n2 += std::norm(c);
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));

        // quadrature check of the momentum-space Gaussian norm
        const double dp = st.packet->dp, p0 = st.packet->p0;
        double norm = 0.0, h = dp / 40.0;
        for (double p = p0 - 8.0 * dp; p <= p0 + 8.0 * dp; p += h) {
            double a = std::exp(-0.5 * (p - p0) * (p - p0) / (dp * dp)) /
                       std::sqrt(dp * std::sqrt(kPi));
            norm += a * a * h;
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));

        CHECK_THROWS_AS(build_packet_state({{0, {1.0, 0.0}}}, 4.0, -0.01, 0.0, 1.0, 0.0),
                        ConfigError);
    }

    TEST_CASE("zero-norm slice raises the degenerate error") {
        auto& f = fx();
        SuperpositionState st;
        st.kind = StateKind::EntangledDiscrete;
        st.components.push_back({0, f.levels[0].energy, 4.0, 0.0, {M_SQRT1_2, 0.0}});
        st.components.push_back({0, f.levels[0].energy, 4.0, 0.0, {-M_SQRT1_2, 0.0}});
        CHECK_THROWS_AS(contact_slice(st, f.levels), InvariantError);
    }
}
