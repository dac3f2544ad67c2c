// solver.hpp - exact single-excitation boundary-matching solver.
//
// For any ScatterModel the stationary state is a piecewise plane-wave ansatz
// per channel with unknown segment amplitudes, two jump conditions per
// coupling point, and one balance equation per atomic excitation amplitude in
// which the field value at a point is the average of its one-sided limits.
// The resulting dense complex system is solved by LU elimination with
// partial pivoting.
//
// A classical drive connecting two channel-companion levels (driven ground
// doublet) is handled exactly by dressing that manifold: the affected
// channels split into two dressed copies, the incident state decomposes into
// dressed components scattering at shifted total energies, and port
// probabilities combine the components incoherently.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "complex_linalg.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace giantatom {

struct LinearSystem {
    int n = 0;
    std::vector<cdouble> matrix;  // row-major n x n
    std::vector<cdouble> rhs;
    std::vector<std::string> unknown_labels;

    cdouble& at(int r, int c) { return matrix[r * n + c]; }
    const cdouble& at(int r, int c) const { return matrix[r * n + c]; }
};

namespace detail {

constexpr double kConditionLimit = 1e12;
constexpr double kResidualLimit = 1e-12;

struct EffCoupling {
    cdouble emit;       // coefficient in the field jump conditions
    cdouble absorb;     // coefficient in the excitation balance equation
    int excitation = 0; // excitation slot index
    double phase_offset = 0.0;
    double retardation = 0.0;
};

struct EffChannel {
    int waveguide = 0;
    cdouble companion_energy{};
    double ref_energy = 0.0;
    std::string label;
    std::vector<EffCoupling> points;
};

struct AtomicDriveTerm {
    int slot_a = 0, slot_b = 0;
    cdouble coeff_ab;  // u_a balance gains coeff_ab * u_b
    cdouble coeff_ba;
};

struct CompiledModel {
    std::vector<EffChannel> channels;
    std::vector<int> excitation_levels;
    std::vector<std::string> excitation_names;
    std::vector<cdouble> excitation_energies;
    std::vector<AtomicDriveTerm> atomic_drives;

    bool dressed = false;
    std::array<int, 2> manifold{};              // model level indices
    std::array<std::array<cdouble, 2>, 2> V{};  // bare row, dressed column
    std::array<std::array<cdouble, 2>, 2> Vinv{};
    std::array<cdouble, 2> lambda{};

    int n_waveguides = 0;
    int prep_level = -1;
    std::vector<int> waveguide_first_channel;  // original channel per waveguide
};

// Eigendecomposition of the 2x2 driven manifold block.
inline void dress_manifold(const cdouble& ea, const cdouble& eb, double amp, double phase,
                           std::array<std::array<cdouble, 2>, 2>& V,
                           std::array<std::array<cdouble, 2>, 2>& Vinv,
                           std::array<cdouble, 2>& lambda) {
    const cdouble i(0.0, 1.0);
    if (amp == 0.0) {
        V = {{{1.0, 0.0}, {0.0, 1.0}}};
        Vinv = V;
        lambda = {ea, eb};
        return;
    }
    const cdouble h01 = amp * std::exp(i * phase);
    const cdouble h10 = amp * std::exp(-i * phase);
    const cdouble mean = 0.5 * (ea + eb);
    const cdouble half = 0.5 * (ea - eb);
    const cdouble disc = std::sqrt(half * half + h01 * h10);
    lambda = {mean + disc, mean - disc};
    for (int f = 0; f < 2; ++f) {
        cdouble v0, v1;
        if (std::abs(h01) + std::abs(lambda[f] - ea) >= std::abs(lambda[f] - eb) + std::abs(h10)) {
            v0 = h01;
            v1 = lambda[f] - ea;
        } else {
            v0 = lambda[f] - eb;
            v1 = h10;
        }
        const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
        V[0][f] = v0 / nrm;
        V[1][f] = v1 / nrm;
    }
    const cdouble det = V[0][0] * V[1][1] - V[0][1] * V[1][0];
    if (std::abs(det) < 1e-14)
        throw singular_system_error("ground-manifold dressing is defective");
    Vinv[0][0] = V[1][1] / det;
    Vinv[0][1] = -V[0][1] / det;
    Vinv[1][0] = -V[1][0] / det;
    Vinv[1][1] = V[0][0] / det;
}

inline CompiledModel compile(const ScatterModel& m) {
    m.validate();
    CompiledModel cm;
    cm.n_waveguides = m.waveguide_count();
    cm.waveguide_first_channel.assign(cm.n_waveguides, -1);
    for (int c = 0; c < static_cast<int>(m.channels.size()); ++c) {
        const int w = m.channels[c].waveguide;
        if (cm.waveguide_first_channel[w] < 0) cm.waveguide_first_channel[w] = c;
    }

    std::vector<bool> is_companion(m.levels.size(), false);
    for (const auto& ch : m.channels) is_companion[ch.companion] = true;

    std::vector<bool> is_excitation(m.levels.size(), false);
    for (const auto& cp : m.couplings) is_excitation[cp.excitation] = true;

    const ClassicalDrive* manifold_drive = nullptr;
    for (const auto& d : m.drives) {
        const bool a_comp = is_companion[d.level_a];
        const bool b_comp = is_companion[d.level_b];
        if (a_comp && b_comp) {
            if (manifold_drive)
                throw unsupported_configuration_error("at most one ground-manifold drive");
            manifold_drive = &d;
        } else if (!a_comp && !b_comp) {
            is_excitation[d.level_a] = is_excitation[d.level_b] = true;
        } else {
            throw unsupported_configuration_error(
                "drive between a companion and an excitation level is not supported");
        }
    }

    for (int l = 0; l < static_cast<int>(m.levels.size()); ++l) {
        if (is_excitation[l] && is_companion[l])
            throw parameter_error("level cannot be both companion and excitation");
        if (is_excitation[l]) {
            cm.excitation_levels.push_back(l);
            cm.excitation_names.push_back(m.levels[l].name);
            cm.excitation_energies.push_back(m.levels[l].energy);
        }
    }
    auto exc_slot = [&](int level) {
        for (int s = 0; s < static_cast<int>(cm.excitation_levels.size()); ++s)
            if (cm.excitation_levels[s] == level) return s;
        throw parameter_error("excitation level not found");
    };

    for (const auto& d : m.drives) {
        if (manifold_drive == &d) continue;
        const cdouble i(0.0, 1.0);
        AtomicDriveTerm t;
        t.slot_a = exc_slot(d.level_a);
        t.slot_b = exc_slot(d.level_b);
        t.coeff_ab = d.amplitude * std::exp(i * d.phase);
        t.coeff_ba = d.amplitude * std::exp(-i * d.phase);
        cm.atomic_drives.push_back(t);
    }

    if (manifold_drive) {
        cm.dressed = true;
        cm.manifold = {manifold_drive->level_a, manifold_drive->level_b};
        dress_manifold(m.levels[cm.manifold[0]].energy, m.levels[cm.manifold[1]].energy,
                       manifold_drive->amplitude, manifold_drive->phase, cm.V, cm.Vinv,
                       cm.lambda);
    }
    cm.prep_level = m.preparation_level;

    auto manifold_row = [&](int level) -> int {
        if (!cm.dressed) return -1;
        if (level == cm.manifold[0]) return 0;
        if (level == cm.manifold[1]) return 1;
        return -1;
    };

    const cdouble i(0.0, 1.0);
    for (int c = 0; c < static_cast<int>(m.channels.size()); ++c) {
        const Channel& ch = m.channels[c];
        const int row = manifold_row(ch.companion);
        const int copies = (row >= 0) ? 2 : 1;
        for (int f = 0; f < copies; ++f) {
            EffChannel ec;
            ec.waveguide = ch.waveguide;
            ec.ref_energy = ch.ref_energy;
            if (row >= 0) {
                ec.companion_energy = cm.lambda[f];
                ec.label = ch.label + (f == 0 ? "+" : "-");
            } else {
                ec.companion_energy = m.levels[ch.companion].energy;
                ec.label = ch.label;
            }
            for (const auto& cp : m.couplings) {
                if (cp.channel != c) continue;
                EffCoupling e;
                e.excitation = exc_slot(cp.excitation);
                e.phase_offset = cp.phase_offset;
                e.retardation = cp.retardation;
                const cdouble base_emit = cp.strength * std::exp(i * cp.local_phase);
                const cdouble base_abs = cp.strength * std::exp(-i * cp.local_phase);
                if (row >= 0) {
                    e.emit = base_emit * cm.V[row][f];
                    e.absorb = base_abs * cm.Vinv[f][row];
                } else {
                    e.emit = base_emit;
                    e.absorb = base_abs;
                }
                ec.points.push_back(e);
            }
            cm.channels.push_back(ec);
        }
    }
    return cm;
}

struct BranchSpec {
    double weight = 1.0;
    cdouble amplitude{1.0, 0.0};  // component of the prepared state
    cdouble total_energy{};
    int incident_channel = 0;  // effective channel index
};

inline std::vector<BranchSpec> incidence_branches(const CompiledModel& cm,
                                                  const ScatterModel& m, double delta,
                                                  int port) {
    if (port < 1 || port > 2 * cm.n_waveguides) throw parameter_error("port out of range");
    const int w = (port - 1) / 2;
    const int orig = cm.waveguide_first_channel[w];
    if (orig < 0) throw parameter_error("no channel on the incidence waveguide");
    const double ref = m.channels[orig].ref_energy;

    int prep = cm.prep_level >= 0 ? cm.prep_level : m.channels[orig].companion;

    std::vector<BranchSpec> out;
    if (cm.dressed && (prep == cm.manifold[0] || prep == cm.manifold[1])) {
        const int row = (prep == cm.manifold[0]) ? 0 : 1;
        // Effective channel index of the f-th dressed copy on waveguide w.
        for (int f = 0; f < 2; ++f) {
            BranchSpec b;
            b.amplitude = cm.Vinv[f][row];
            b.weight = std::norm(b.amplitude);
            b.total_energy = delta + ref + cm.lambda[f];
            int idx = -1, seen = 0;
            for (int ec = 0; ec < static_cast<int>(cm.channels.size()); ++ec) {
                if (cm.channels[ec].waveguide != w) continue;
                if (seen == f) {
                    idx = ec;
                    break;
                }
                ++seen;
            }
            b.incident_channel = idx;
            out.push_back(b);
        }
    } else {
        if (prep != m.channels[orig].companion)
            throw parameter_error("prepared level cannot carry the incident photon");
        BranchSpec b;
        b.total_energy = delta + ref + m.levels[m.channels[orig].companion].energy;
        int idx = -1;
        for (int ec = 0; ec < static_cast<int>(cm.channels.size()); ++ec)
            if (cm.channels[ec].waveguide == w) {
                idx = ec;
                break;
            }
        b.incident_channel = idx;
        out.push_back(b);
    }
    return out;
}

// Index bookkeeping for one branch's linear system.
struct SystemLayout {
    std::vector<int> channel_base;  // first unknown of each effective channel
    std::vector<int> channel_pts;
    int atomic_base = 0;
    int n = 0;
};

inline SystemLayout make_layout(const CompiledModel& cm) {
    SystemLayout lay;
    int n = 0;
    for (const auto& ec : cm.channels) {
        lay.channel_base.push_back(n);
        lay.channel_pts.push_back(static_cast<int>(ec.points.size()));
        n += 2 * static_cast<int>(ec.points.size());
    }
    lay.atomic_base = n;
    n += static_cast<int>(cm.excitation_levels.size());
    lay.n = n;
    return lay;
}

// Unknown layout per channel with m points: A_1..A_{m-1}, t, r, B_1..B_{m-1}.
// Right-movers R_0..R_m and left-movers L_0..L_m map onto these plus the
// incident coefficients.
struct ChannelIndexer {
    int base = 0, m = 0;
    bool incident_left = false, incident_right = false;

    // returns unknown index, or -1 with `fixed` set to the known coefficient
    int right_coeff(int j, cdouble& fixed) const {  // R_j, j = 0..m
        if (j == 0) {
            fixed = incident_left ? 1.0 : 0.0;
            return -1;
        }
        if (j == m) return base + (m - 1);  // t
        return base + (j - 1);              // A_j
    }
    int left_coeff(int j, cdouble& fixed) const {  // L_j, j = 0..m
        if (j == m) {
            fixed = incident_right ? 1.0 : 0.0;
            return -1;
        }
        if (j == 0) return base + m;  // r
        return base + m + j;          // B_j
    }
};

inline LinearSystem assemble(const CompiledModel& cm, const BranchSpec& br, int port) {
    const SystemLayout lay = make_layout(cm);
    const int side = (port - 1) % 2;  // 0 left, 1 right
    LinearSystem sys;
    sys.n = lay.n;
    sys.matrix.assign(static_cast<size_t>(lay.n) * lay.n, cdouble(0.0));
    sys.rhs.assign(lay.n, cdouble(0.0));
    sys.unknown_labels.resize(lay.n);

    const cdouble i(0.0, 1.0);
    int row = 0;
    for (int c = 0; c < static_cast<int>(cm.channels.size()); ++c) {
        const EffChannel& ec = cm.channels[c];
        const int m = lay.channel_pts[c];
        ChannelIndexer ix{lay.channel_base[c], m, false, false};
        if (c == br.incident_channel) {
            ix.incident_left = (side == 0);
            ix.incident_right = (side == 1);
        }
        for (int k = 1; k < m; ++k)
            sys.unknown_labels[ix.base + (k - 1)] = ec.label + ".A" + std::to_string(k);
        if (m >= 1) {
            sys.unknown_labels[ix.base + (m - 1)] = ec.label + ".t";
            sys.unknown_labels[ix.base + m] = ec.label + ".r";
        }
        for (int k = 1; k < m; ++k)
            sys.unknown_labels[ix.base + m + k] = ec.label + ".B" + std::to_string(k);

        const cdouble delta_ch = br.total_energy - ec.companion_energy - ec.ref_energy;
        for (int j = 1; j <= m; ++j) {
            const EffCoupling& cp = ec.points[j - 1];
            const cdouble phi = cp.phase_offset + cp.retardation * delta_ch;
            const cdouble ep = std::exp(i * phi);
            const cdouble em = std::exp(-i * phi);
            const int ucol = lay.atomic_base + cp.excitation;

            // right-mover jump: -i (R_j - R_{j-1}) e^{+i phi} + emit * u = 0
            {
                cdouble fixed{};
                int a = ix.right_coeff(j, fixed);
                int b = ix.right_coeff(j - 1, fixed);
                sys.at(row, a) += -i * ep;
                if (b >= 0)
                    sys.at(row, b) += i * ep;
                else
                    sys.rhs[row] -= i * ep * fixed;
                sys.at(row, ucol) += cp.emit;
                ++row;
            }
            // left-mover jump: +i (L_j - L_{j-1}) e^{-i phi} + emit * u = 0
            {
                cdouble fixed_j{}, fixed_jm{};
                int a = ix.left_coeff(j, fixed_j);
                int b = ix.left_coeff(j - 1, fixed_jm);
                if (a >= 0)
                    sys.at(row, a) += i * em;
                else
                    sys.rhs[row] -= i * em * fixed_j;
                if (b >= 0)
                    sys.at(row, b) += -i * em;
                else
                    sys.rhs[row] += i * em * fixed_jm;
                sys.at(row, ucol) += cp.emit;
                ++row;
            }
        }
    }

    // excitation balance: (E - energy_x) u_x - sum absorb * <field> - drives = 0
    for (int s = 0; s < static_cast<int>(cm.excitation_levels.size()); ++s) {
        const int r = row + s;
        sys.unknown_labels[lay.atomic_base + s] = "u." + cm.excitation_names[s];
        sys.at(r, lay.atomic_base + s) += br.total_energy - cm.excitation_energies[s];
    }
    for (int c = 0; c < static_cast<int>(cm.channels.size()); ++c) {
        const EffChannel& ec = cm.channels[c];
        const int m = lay.channel_pts[c];
        ChannelIndexer ix{lay.channel_base[c], m, false, false};
        if (c == br.incident_channel) {
            ix.incident_left = (side == 0);
            ix.incident_right = (side == 1);
        }
        const cdouble delta_ch = br.total_energy - ec.companion_energy - ec.ref_energy;
        for (int j = 1; j <= m; ++j) {
            const EffCoupling& cp = ec.points[j - 1];
            const cdouble phi = cp.phase_offset + cp.retardation * delta_ch;
            const cdouble ep = std::exp(i * phi);
            const cdouble em = std::exp(-i * phi);
            const int r = row + cp.excitation;
            auto add = [&](int idx, cdouble fixed, cdouble w) {
                if (idx >= 0)
                    sys.at(r, idx) -= w;
                else
                    sys.rhs[r] += w * fixed;
            };
            cdouble fixed{};
            // field at the point: half sum of one-sided limits
            add(ix.right_coeff(j - 1, fixed), fixed, 0.5 * cp.absorb * ep);
            fixed = 0.0;
            add(ix.right_coeff(j, fixed), fixed, 0.5 * cp.absorb * ep);
            fixed = 0.0;
            add(ix.left_coeff(j - 1, fixed), fixed, 0.5 * cp.absorb * em);
            fixed = 0.0;
            add(ix.left_coeff(j, fixed), fixed, 0.5 * cp.absorb * em);
        }
    }
    for (const auto& d : cm.atomic_drives) {
        sys.at(row + d.slot_a, lay.atomic_base + d.slot_b) -= d.coeff_ab;
        sys.at(row + d.slot_b, lay.atomic_base + d.slot_a) -= d.coeff_ba;
    }
    return sys;
}

inline std::vector<cdouble> solve_checked(const LinearSystem& sys, const std::string& ctx) {
    if (sys.n == 0) return {};
    const LuDecomposition lu = lu_factor(sys.matrix, sys.n);
    const double cond = condition_estimate(sys.matrix, lu);
    if (cond > kConditionLimit) {
        std::ostringstream os;
        os << "near-singular boundary-matching system (cond ~ " << cond << ") at " << ctx;
        throw singular_system_error(os.str());
    }
    std::vector<cdouble> x = sys.rhs;
    lu_solve_in_place(lu, x);
    double rnorm = 0.0, xnorm = 0.0, bnorm = 0.0;
    for (int r = 0; r < sys.n; ++r) {
        cdouble acc = -sys.rhs[r];
        for (int c = 0; c < sys.n; ++c) acc += sys.matrix[r * sys.n + c] * x[c];
        rnorm = std::max(rnorm, std::abs(acc));
        xnorm = std::max(xnorm, std::abs(x[r]));
        bnorm = std::max(bnorm, std::abs(sys.rhs[r]));
    }
    const double scale = matrix_inf_norm(sys.matrix, sys.n) * xnorm + bnorm;
    if (scale > 0.0 && rnorm / scale > kResidualLimit) {
        std::ostringstream os;
        os << "linear solve residual " << rnorm / scale << " exceeds limit at " << ctx;
        throw singular_system_error(os.str());
    }
    return x;
}

} // namespace detail

// Boundary-matching system for one incidence port (and, for dressed ground
// manifolds, one incident component).
inline LinearSystem build_system(const ScatterModel& m, double delta, int port,
                                 int branch = 0) {
    const detail::CompiledModel cm = detail::compile(m);
    const auto branches = detail::incidence_branches(cm, m, delta, port);
    if (branch < 0 || branch >= static_cast<int>(branches.size()))
        throw parameter_error("branch index out of range");
    return detail::assemble(cm, branches[branch], port);
}

inline ScatterSolution solve_scattering(const ScatterModel& m, double delta, int port) {
    const detail::CompiledModel cm = detail::compile(m);
    const auto branches = detail::incidence_branches(cm, m, delta, port);

    ScatterSolution sol;
    sol.incident_port = port;
    sol.detuning = delta;
    const int side = (port - 1) % 2;

    for (const auto& br : branches) {
        LinearSystem sys = detail::assemble(cm, br, port);
        std::ostringstream ctx;
        ctx << "delta=" << delta << ", port=" << port;
        const std::vector<cdouble> x = detail::solve_checked(sys, ctx.str());

        IncidentBranch out;
        out.weight = br.weight;
        out.total_energy = br.total_energy;
        const detail::SystemLayout lay = detail::make_layout(cm);
        for (int c = 0; c < static_cast<int>(cm.channels.size()); ++c) {
            const auto& ec = cm.channels[c];
            const int m_pts = lay.channel_pts[c];
            const int left_port = 2 * ec.waveguide + 1;
            const int right_port = 2 * ec.waveguide + 2;
            const bool incident_here = (c == br.incident_channel);
            if (m_pts == 0) {
                // free channel: the incident wave passes through untouched
                if (incident_here) {
                    if (side == 0)
                        out.ports.push_back({right_port, ec.label, cdouble(1.0)});
                    else
                        out.ports.push_back({left_port, ec.label, cdouble(1.0)});
                }
                continue;
            }
            const int base = lay.channel_base[c];
            out.ports.push_back({right_port, ec.label, x[base + (m_pts - 1)]});
            out.ports.push_back({left_port, ec.label, x[base + m_pts]});
            for (int k = 1; k < m_pts; ++k) {
                out.segments.emplace_back(ec.label + ".A" + std::to_string(k),
                                          x[base + (k - 1)]);
                out.segments.emplace_back(ec.label + ".B" + std::to_string(k),
                                          x[base + m_pts + k]);
            }
        }
        for (int s = 0; s < static_cast<int>(cm.excitation_levels.size()); ++s)
            out.atomic.push_back(x[lay.atomic_base + s]);
        sol.branches.push_back(std::move(out));
    }
    return sol;
}

inline SMatrix s_matrix(const ScatterModel& m, double delta) {
    SMatrix s;
    s.n_ports = m.port_count();
    s.p.assign(static_cast<size_t>(s.n_ports) * s.n_ports, 0.0);
    for (int i = 1; i <= s.n_ports; ++i) {
        const ScatterSolution sol = solve_scattering(m, delta, i);
        for (int j = 1; j <= s.n_ports; ++j) s.at(i, j) = sol.port_probability(j);
    }
    return s;
}

// Degenerate-geometry copy: every coupling keeps its strength and local phase
// but loses propagation phase and retardation.
inline ScatterModel small_atom_limit(const ScatterModel& m) {
    ScatterModel out = m;
    for (auto& cp : out.couplings) {
        cp.phase_offset = 0.0;
        cp.retardation = 0.0;
    }
    return out;
}

} // namespace giantatom
