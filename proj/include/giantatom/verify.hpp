// verify.hpp - randomized equivalence check between the analytic amplitudes
// and the boundary-matching solver. The two routes share no evaluation code;
// agreement over random parameter draws is the correctness gate for both.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "closed_form.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "solver.hpp"

namespace giantatom {

struct VerifyOptions {
    unsigned long long seed = 42;
    int trials = 200;
    double tol = 1e-10;
    // Runs the three-level comparison with a sign-flipped transfer kernel;
    // the check must then fail (negative control).
    bool corrupt_transfer_kernel = false;
};

struct VerifyReport {
    int trials_run = 0;
    double max_deviation = 0.0;
    std::string worst_case;
    bool passed = false;
};

namespace detail {

inline void track(VerifyReport& rep, double dev, const std::string& what) {
    if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_case = what;
    }
}

} // namespace detail

inline VerifyReport run_oracle_verification(const VerifyOptions& opt) {
    if (opt.trials < 1) throw parameter_error("trials must be >= 1");
    using std::numbers::pi;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    VerifyReport rep;
    const cdouble im(0.0, 1.0);

    for (int trial = 0; trial < opt.trials; ++trial) {
        // --- two-level emitter ---
        {
            TwoLevelParams p;
            p.gamma_wg = 1.0;
            p.gamma_ext = 8.0 * unit(rng);
            p.theta1 = angle(rng);
            p.theta2 = angle(rng);
            p.phi0 = angle(rng);
            p.tau = 2.0 * unit(rng);
            const double delta = -10.0 + 20.0 * unit(rng);

            const TwoLevelAmplitudes cf = two_level_amplitudes(p, delta);
            const ScatterModel m = two_level_to_model(p);
            const ScatterSolution s1 = solve_scattering(m, delta, 1);
            const ScatterSolution s2 = solve_scattering(m, delta, 2);

            std::ostringstream tag;
            tag << "two-level trial " << trial << " (theta=" << p.theta()
                << ", phi0=" << p.phi0 << ", tau=" << p.tau << ", gamma_ext=" << p.gamma_ext
                << ", delta=" << delta << ")";
            detail::track(rep, std::abs(cf.t - s1.port_amplitude(2)), tag.str() + " t");
            detail::track(rep, std::abs(cf.r - s1.port_amplitude(1)), tag.str() + " r");
            detail::track(rep, std::abs(cf.t_rev - s2.port_amplitude(1)), tag.str() + " t'");
            detail::track(rep, std::abs(cf.r_rev - s2.port_amplitude(2)), tag.str() + " r'");
            detail::track(rep, std::abs(cf.u_fwd - s1.atomic_amplitudes()[0]),
                          tag.str() + " u_fwd");
            detail::track(rep, std::abs(cf.u_rev - s2.atomic_amplitudes()[0]),
                          tag.str() + " u_rev");
        }

        // --- driven three-level atom, single-point second waveguide ---
        {
            NablaParams p;
            p.gamma1_wg = 1.0;
            p.gamma2_wg = 0.2 + 2.8 * unit(rng);
            p.gamma_e1 = 2.0 * unit(rng);
            p.gamma_e2 = 2.0 * unit(rng);
            p.rabi = 6.0 * unit(rng);
            p.alpha = angle(rng);
            p.theta1 = angle(rng);
            p.theta2 = angle(rng);
            p.phi_a0 = angle(rng);
            p.tau_a = 2.0 * unit(rng);
            const double delta = -10.0 + 20.0 * unit(rng);

            NablaAmplitudes cf;
            if (opt.corrupt_transfer_kernel) {
                const cdouble bad_f =
                    1.0 / (delta - im * (0.5 * p.gamma_e2 + p.gamma2_wg));
                cf = detail::nabla_amplitudes_with_kernel(p, delta, bad_f);
            } else {
                cf = nabla_amplitudes(p, delta);
            }

            const ScatterModel m = nabla_to_model(p);
            const ScatterSolution s1 = solve_scattering(m, delta, 1);
            const ScatterSolution s2 = solve_scattering(m, delta, 2);
            const ScatterSolution s4 = solve_scattering(m, delta, 4);

            std::ostringstream tag;
            tag << "three-level trial " << trial << " (theta=" << p.theta()
                << ", phi_a0=" << p.phi_a0 << ", rabi=" << p.rabi << ", delta=" << delta
                << ")";
            detail::track(rep, std::abs(cf.s12 - s1.port_amplitude(2)), tag.str() + " s12");
            detail::track(rep, std::abs(cf.s13 - s1.port_amplitude(3)), tag.str() + " s13");
            detail::track(rep, std::abs(cf.s14 - s1.port_amplitude(4)), tag.str() + " s14");
            detail::track(rep, std::abs(cf.s21 - s2.port_amplitude(1)), tag.str() + " s21");
            detail::track(rep, std::abs(cf.s23 - s2.port_amplitude(3)), tag.str() + " s23");
            detail::track(rep, std::abs(cf.s24 - s2.port_amplitude(4)), tag.str() + " s24");
            // reverse transfer equals the forward cross amplitude in probability
            detail::track(rep,
                          std::abs(std::norm(cf.s23) - std::norm(s4.port_amplitude(1))),
                          tag.str() + " |s41|^2");
        }
        ++rep.trials_run;
    }
    rep.passed = rep.max_deviation < opt.tol;
    return rep;
}

} // namespace giantatom
