// model.hpp - physical parameter sets, the generic scattering-model description,
// and conversions from the named atom-waveguide setups into that description.
//
// Units: rates in units of the first waveguide emission rate, energies as
// detunings from the relevant atomic transition, angles in radians. Geometry
// is stored as phase data (accumulated phase at resonance plus retardation),
// never as physical distances.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace giantatom {

using cdouble = std::complex<double>;

// ---------------------------------------------------------------------------
// Named parameter sets
// ---------------------------------------------------------------------------

// Two-level emitter coupled to one waveguide at two phase-tagged points.
struct TwoLevelParams {
    double gamma_wg = 1.0;   // emission rate into the waveguide (> 0)
    double gamma_ext = 0.0;  // external dissipation rate (>= 0)
    double theta1 = 0.0;     // local coupling phase at the first point
    double theta2 = 0.0;     // local coupling phase at the second point
    double phi0 = 0.0;       // accumulated propagation phase at resonance
    double tau = 0.0;        // inter-point propagation time (>= 0)

    double theta() const { return theta2 - theta1; }

    TwoLevelParams exchanged() const {
        TwoLevelParams q = *this;
        std::swap(q.theta1, q.theta2);
        return q;
    }

    void validate() const {
        if (!(gamma_wg > 0.0)) throw parameter_error("gamma_wg must be > 0");
        if (gamma_ext < 0.0) throw parameter_error("gamma_ext must be >= 0");
        if (tau < 0.0) throw parameter_error("tau must be >= 0");
    }
};

// Three-level atom with both excited states sharing the ground state; each
// excited transition talks to its own waveguide and a classical field of
// amplitude `rabi` connects the two excited states.
struct NablaParams {
    double gamma1_wg = 1.0;  // emission rate into waveguide a (> 0)
    double gamma2_wg = 1.0;  // emission rate into waveguide b (>= 0)
    double gamma_e1 = 0.0;   // external dissipation of the first excited state
    double gamma_e2 = 0.0;   // external dissipation of the second excited state
    double rabi = 0.0;       // drive amplitude between the excited states (>= 0)
    double alpha = 0.0;      // drive phase
    double theta1 = 0.0, theta2 = 0.0;  // waveguide-a coupling phases
    double theta3 = 0.0, theta4 = 0.0;  // waveguide-b coupling phases
    double phi_a0 = 0.0, phi_b0 = 0.0;  // accumulated phases at resonance
    double tau_a = 0.0, tau_b = 0.0;    // propagation times

    double theta() const { return theta2 - theta1; }
    double theta_prime() const { return theta4 - theta3; }

    // With degenerate geometry the two waveguide-b attachments merge into a
    // single physical coupling point.
    bool single_point_wb() const {
        return phi_b0 == 0.0 && tau_b == 0.0 && theta3 == theta4;
    }

    void validate() const {
        if (!(gamma1_wg > 0.0)) throw parameter_error("gamma1_wg must be > 0");
        if (gamma2_wg < 0.0 || gamma_e1 < 0.0 || gamma_e2 < 0.0)
            throw parameter_error("rates must be >= 0");
        if (rabi < 0.0) throw parameter_error("rabi must be >= 0 (phase lives in alpha)");
        if (tau_a < 0.0 || tau_b < 0.0) throw parameter_error("tau must be >= 0");
    }
};

// Three-level atom with two ground states coupled by a classical field; each
// ground state talks to the shared excited state through its own waveguide.
struct DeltaParams {
    double gamma1_wg = 1.0;  // emission rate into waveguide a (> 0)
    double gamma2_wg = 1.0;  // emission rate into waveguide b (>= 0)
    double gamma_g2 = 0.0;   // dissipation of the second ground state
    double gamma_e = 0.0;    // dissipation of the excited state
    double drive = 0.0;      // ground-ground drive amplitude (>= 0)
    double beta = 0.0;       // ground-ground drive phase
    double theta1 = 0.0, theta2 = 0.0;
    double theta3 = 0.0, theta4 = 0.0;
    double phi_a0 = 0.0, phi_b0 = 0.0;
    double tau_a = 0.0, tau_b = 0.0;
    double omega_g2 = 0.0;   // energy offset of the second ground state

    void validate() const {
        if (!(gamma1_wg > 0.0)) throw parameter_error("gamma1_wg must be > 0");
        if (gamma2_wg < 0.0 || gamma_g2 < 0.0 || gamma_e < 0.0)
            throw parameter_error("rates must be >= 0");
        if (drive < 0.0) throw parameter_error("drive must be >= 0 (phase lives in beta)");
        if (tau_a < 0.0 || tau_b < 0.0) throw parameter_error("tau must be >= 0");
    }
};

// ---------------------------------------------------------------------------
// Generic scattering model consumed by the boundary-matching solver
// ---------------------------------------------------------------------------

struct Level {
    std::string name;
    cdouble energy;  // real part: frequency offset; imag part: -gamma/2
};

// A scattering channel: photons of one waveguide propagating while the atom
// occupies the companion level. `ref_energy` anchors the channel's wave
// vector so the detuning axis is shared across channels.
struct Channel {
    int waveguide = 0;
    int companion = 0;
    double ref_energy = 0.0;
    std::string label;
};

// One delta-like attachment of a channel to an atomic transition. The pair
// (companion, excitation) is the transition; `phase_offset`/`retardation`
// locate the point relative to the waveguide's first attachment.
struct CouplingPoint {
    int channel = 0;
    int excitation = 0;
    double strength = 0.0;      // amplitude coupling g, with rate = g^2
    double local_phase = 0.0;   // tunable phase attached to g
    double phase_offset = 0.0;  // accumulated propagation phase at reference
    double retardation = 0.0;   // energy slope of the propagation phase
};

struct ClassicalDrive {
    int level_a = 0;
    int level_b = 0;
    double amplitude = 0.0;
    double phase = 0.0;  // drive term: A e^{i phase}|a><b| + h.c.
};

// Single-excitation sector description: one photon or one atomic excitation.
// Immutable value type; every operation takes it by const reference.
struct ScatterModel {
    std::vector<Level> levels;
    std::vector<Channel> channels;
    std::vector<CouplingPoint> couplings;
    std::vector<ClassicalDrive> drives;
    // Atomic state assumed before scattering. -1 means: the companion level
    // of the incidence channel. A ground-manifold drive makes this matter.
    int preparation_level = -1;

    int waveguide_count() const {
        int n = 0;
        for (const auto& c : channels) n = std::max(n, c.waveguide + 1);
        return n;
    }
    int port_count() const { return 2 * waveguide_count(); }

    void validate() const {
        const int nl = static_cast<int>(levels.size());
        const int nc = static_cast<int>(channels.size());
        for (const auto& ch : channels)
            if (ch.companion < 0 || ch.companion >= nl)
                throw parameter_error("channel companion out of range");
        double last_offset = -1.0;
        int last_channel = -1;
        for (const auto& cp : couplings) {
            if (cp.channel < 0 || cp.channel >= nc)
                throw parameter_error("coupling channel out of range");
            if (cp.excitation < 0 || cp.excitation >= nl)
                throw parameter_error("coupling excitation out of range");
            if (cp.excitation == channels[cp.channel].companion)
                throw parameter_error("coupling must connect two distinct levels");
            if (cp.strength < 0.0) throw parameter_error("coupling strength must be >= 0");
            if (cp.channel == last_channel && cp.phase_offset < last_offset)
                throw parameter_error("coupling points must be ordered by position");
            last_channel = cp.channel;
            last_offset = cp.phase_offset;
        }
        for (const auto& d : drives)
            if (d.level_a < 0 || d.level_a >= nl || d.level_b < 0 || d.level_b >= nl ||
                d.level_a == d.level_b)
                throw parameter_error("drive level pair invalid");
    }
};

// ---------------------------------------------------------------------------
// Solver output containers
// ---------------------------------------------------------------------------

struct PortWave {
    int port = 0;              // 1-based physical port
    std::string channel;       // channel label the amplitude belongs to
    cdouble amplitude{};
};

// One stationary sub-problem. Without ground-manifold dressing there is a
// single branch of weight one; a dressed ground doublet splits the incident
// state into components scattering at shifted total energies.
struct IncidentBranch {
    double weight = 1.0;
    cdouble total_energy{};
    std::vector<PortWave> ports;
    std::vector<cdouble> atomic;  // excitation amplitudes, model order
    std::vector<std::pair<std::string, cdouble>> segments;
};

struct ScatterSolution {
    int incident_port = 1;
    double detuning = 0.0;
    std::vector<IncidentBranch> branches;

    double port_probability(int port) const {
        double p = 0.0;
        for (const auto& br : branches)
            for (const auto& w : br.ports)
                if (w.port == port) p += br.weight * std::norm(w.amplitude);
        return p;
    }

    // Defined only when the solution is a single branch with a single
    // outgoing wave on the port (every setup without ground dressing).
    cdouble port_amplitude(int port) const {
        if (branches.size() != 1)
            throw unsupported_configuration_error(
                "port_amplitude: dressed solution has no single amplitude per port");
        const cdouble* found = nullptr;
        for (const auto& w : branches[0].ports)
            if (w.port == port) {
                if (found)
                    throw unsupported_configuration_error(
                        "port_amplitude: several channels share this port");
                found = &w.amplitude;
            }
        if (!found) throw parameter_error("port_amplitude: no outgoing wave on port");
        return *found;
    }

    const std::vector<cdouble>& atomic_amplitudes() const {
        if (branches.size() != 1)
            throw unsupported_configuration_error(
                "atomic_amplitudes: solution has several incident branches");
        return branches[0].atomic;
    }

    double outgoing_probability_sum() const {
        double s = 0.0;
        for (const auto& br : branches)
            for (const auto& w : br.ports) s += br.weight * std::norm(w.amplitude);
        return s;
    }
};

// Port-to-port probability table at one detuning; entry (i, j) is the
// probability of a photon incident at port i leaving through port j.
struct SMatrix {
    int n_ports = 0;
    std::vector<double> p;  // row-major

    double at(int i, int j) const { return p[(i - 1) * n_ports + (j - 1)]; }
    double& at(int i, int j) { return p[(i - 1) * n_ports + (j - 1)]; }
    double row_sum(int i) const {
        double s = 0.0;
        for (int j = 1; j <= n_ports; ++j) s += at(i, j);
        return s;
    }
};

// ---------------------------------------------------------------------------
// Conversions from named setups
// ---------------------------------------------------------------------------

inline ScatterModel two_level_to_model(const TwoLevelParams& p) {
    p.validate();
    ScatterModel m;
    m.levels = {{"g", cdouble(0.0, 0.0)}, {"e", cdouble(0.0, -0.5 * p.gamma_ext)}};
    m.channels = {{0, 0, 0.0, "a"}};
    const double g = std::sqrt(p.gamma_wg);
    m.couplings = {{0, 1, g, p.theta1, 0.0, 0.0}, {0, 1, g, p.theta2, p.phi0, p.tau}};
    return m;
}

inline ScatterModel nabla_to_model(const NablaParams& p) {
    p.validate();
    ScatterModel m;
    m.levels = {{"g", cdouble(0.0, 0.0)},
                {"e1", cdouble(0.0, -0.5 * p.gamma_e1)},
                {"e2", cdouble(0.0, -0.5 * p.gamma_e2)}};
    m.channels = {{0, 0, 0.0, "a"}, {1, 0, 0.0, "b"}};
    const double g1 = std::sqrt(p.gamma1_wg);
    const double g2 = std::sqrt(p.gamma2_wg);
    m.couplings.push_back({0, 1, g1, p.theta1, 0.0, 0.0});
    m.couplings.push_back({0, 1, g1, p.theta2, p.phi_a0, p.tau_a});
    if (p.single_point_wb()) {
        m.couplings.push_back({1, 2, g2, p.theta3, 0.0, 0.0});
    } else {
        m.couplings.push_back({1, 2, g2, p.theta3, 0.0, 0.0});
        m.couplings.push_back({1, 2, g2, p.theta4, p.phi_b0, p.tau_b});
    }
    m.drives = {{1, 2, p.rabi, p.alpha}};
    return m;
}

inline ScatterModel delta_to_model(const DeltaParams& p) {
    p.validate();
    ScatterModel m;
    m.levels = {{"g1", cdouble(0.0, 0.0)},
                {"g2", cdouble(p.omega_g2, -0.5 * p.gamma_g2)},
                {"e", cdouble(0.0, -0.5 * p.gamma_e)}};
    // The waveguide-b channel rides on the second ground state, so its wave
    // vector is anchored below the shared detuning axis by omega_g2.
    m.channels = {{0, 0, 0.0, "a"}, {1, 1, -p.omega_g2, "b"}};
    const double g1 = std::sqrt(p.gamma1_wg);
    const double g2 = std::sqrt(p.gamma2_wg);
    m.couplings.push_back({0, 2, g1, p.theta1, 0.0, 0.0});
    m.couplings.push_back({0, 2, g1, p.theta2, p.phi_a0, p.tau_a});
    m.couplings.push_back({1, 2, g2, p.theta3, 0.0, 0.0});
    m.couplings.push_back({1, 2, g2, p.theta4, p.phi_b0, p.tau_b});
    m.drives = {{0, 1, p.drive, p.beta}};
    // The atom sits in the first ground state before the photon arrives,
    // whichever port it arrives on.
    m.preparation_level = 0;
    return m;
}

} // namespace giantatom
