// sweep.hpp - parameter sweeps over detuning and phases, plus named presets
// that reproduce each published panel as a data table. Grid points are
// evaluated in row order; identical specs produce bit-identical tables.
#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "closed_form.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "solver.hpp"

namespace giantatom {

using ModelParams = std::variant<TwoLevelParams, NablaParams, DeltaParams>;

enum class Engine { automatic, closed_form, solver };

inline Engine engine_from_name(const std::string& s) {
    if (s == "auto") return Engine::automatic;
    if (s == "closed-form") return Engine::closed_form;
    if (s == "solver") return Engine::solver;
    throw unknown_name_error("unknown engine '" + s + "'");
}

inline std::string model_kind_name(const ModelParams& p) {
    if (std::holds_alternative<TwoLevelParams>(p)) return "two-level";
    if (std::holds_alternative<NablaParams>(p)) return "nabla";
    return "delta";
}

inline ModelParams default_params_for_kind(const std::string& kind) {
    if (kind == "two-level") return TwoLevelParams{};
    if (kind == "nabla") return NablaParams{};
    if (kind == "delta") return DeltaParams{};
    throw unknown_name_error("unknown model kind '" + kind + "'");
}

struct SweepAxis {
    std::string param;
    std::vector<double> points;

    static SweepAxis uniform(const std::string& param, double min, double max, int count) {
        if (count < 1) throw parameter_error("axis point count must be >= 1");
        if (count >= 2 && !(min < max)) throw parameter_error("axis requires min < max");
        SweepAxis ax;
        ax.param = param;
        if (count == 1) {
            ax.points = {min};
        } else {
            ax.points.reserve(count);
            for (int k = 0; k < count; ++k)
                ax.points.push_back(min + (max - min) * static_cast<double>(k) /
                                              static_cast<double>(count - 1));
        }
        return ax;
    }

    static SweepAxis explicit_list(const std::string& param, std::vector<double> pts) {
        if (pts.empty()) throw parameter_error("axis needs at least one point");
        SweepAxis ax;
        ax.param = param;
        ax.points = std::move(pts);
        return ax;
    }
};

struct SweepSpec {
    ModelParams base;
    double fixed_delta = 0.0;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<std::string> observables;
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// ---------------------------------------------------------------------------
// Parameter and observable registries
// ---------------------------------------------------------------------------

namespace detail {

template <class P>
const std::map<std::string, double P::*>& field_table();

template <>
inline const std::map<std::string, double TwoLevelParams::*>& field_table<TwoLevelParams>() {
    static const std::map<std::string, double TwoLevelParams::*> t = {
        {"gamma_wg", &TwoLevelParams::gamma_wg}, {"gamma_ext", &TwoLevelParams::gamma_ext},
        {"theta1", &TwoLevelParams::theta1},     {"theta2", &TwoLevelParams::theta2},
        {"phi0", &TwoLevelParams::phi0},         {"tau", &TwoLevelParams::tau}};
    return t;
}

template <>
inline const std::map<std::string, double NablaParams::*>& field_table<NablaParams>() {
    static const std::map<std::string, double NablaParams::*> t = {
        {"gamma1_wg", &NablaParams::gamma1_wg}, {"gamma2_wg", &NablaParams::gamma2_wg},
        {"gamma_e1", &NablaParams::gamma_e1},   {"gamma_e2", &NablaParams::gamma_e2},
        {"rabi", &NablaParams::rabi},           {"alpha", &NablaParams::alpha},
        {"theta1", &NablaParams::theta1},       {"theta2", &NablaParams::theta2},
        {"theta3", &NablaParams::theta3},       {"theta4", &NablaParams::theta4},
        {"phi_a0", &NablaParams::phi_a0},       {"phi_b0", &NablaParams::phi_b0},
        {"tau_a", &NablaParams::tau_a},         {"tau_b", &NablaParams::tau_b}};
    return t;
}

template <>
inline const std::map<std::string, double DeltaParams::*>& field_table<DeltaParams>() {
    static const std::map<std::string, double DeltaParams::*> t = {
        {"gamma1_wg", &DeltaParams::gamma1_wg}, {"gamma2_wg", &DeltaParams::gamma2_wg},
        {"gamma_g2", &DeltaParams::gamma_g2},   {"gamma_e", &DeltaParams::gamma_e},
        {"drive", &DeltaParams::drive},         {"beta", &DeltaParams::beta},
        {"theta1", &DeltaParams::theta1},       {"theta2", &DeltaParams::theta2},
        {"theta3", &DeltaParams::theta3},       {"theta4", &DeltaParams::theta4},
        {"phi_a0", &DeltaParams::phi_a0},       {"phi_b0", &DeltaParams::phi_b0},
        {"tau_a", &DeltaParams::tau_a},         {"tau_b", &DeltaParams::tau_b},
        {"omega_g2", &DeltaParams::omega_g2}};
    return t;
}

inline void apply_param(ModelParams& p, const std::string& name, double value,
                        double& detuning) {
    if (name == "delta") {
        detuning = value;
        return;
    }
    bool ok = std::visit(
        [&](auto& params) {
            using P = std::decay_t<decltype(params)>;
            const auto& tbl = field_table<P>();
            auto it = tbl.find(name);
            if (it == tbl.end()) return false;
            params.*(it->second) = value;
            return true;
        },
        p);
    if (!ok)
        throw unknown_name_error("unknown parameter '" + name + "' for model kind " +
                                 model_kind_name(p));
}

inline double nan() { return std::numeric_limits<double>::quiet_NaN(); }

inline bool parse_port_pair(const std::string& name, int& i, int& j) {
    // S_<i>to<j>
    if (name.size() != 7 || name.compare(0, 2, "S_") != 0 || name.compare(3, 2, "to") != 0)
        return false;
    if (name[2] < '1' || name[2] > '4' || name[6] < '1' || name[6] > '4') return false;
    i = name[2] - '0';
    j = name[6] - '0';
    return true;
}

inline bool observable_known(const ModelParams& p, const std::string& name) {
    int i, j;
    if (std::holds_alternative<TwoLevelParams>(p))
        return name == "T_1to2" || name == "T_2to1" || name == "R" || name == "I" ||
               name == "D" || name == "conservation_deficit";
    return parse_port_pair(name, i, j) || name == "C" || name == "conservation_deficit";
}

inline bool nabla_closed_covers(const std::string& name) {
    return name == "S_1to2" || name == "S_2to1" || name == "S_1to3" || name == "S_1to4" ||
           name == "S_2to3" || name == "S_2to4" || name == "S_4to1" || name == "C";
}

struct PointResult {
    std::vector<double> values;
};

inline double ratio_contrast(double rev, double fwd) {
    const double s = rev + fwd;
    if (s <= 0.0) return nan();
    return (rev - fwd) / s;
}

inline void eval_two_level_closed(const TwoLevelParams& p, double delta,
                                  const std::vector<std::string>& obs,
                                  std::vector<double>& out) {
    const TwoLevelAmplitudes a = two_level_amplitudes(p, delta);
    const double t12 = std::norm(a.t), t21 = std::norm(a.t_rev), rr = std::norm(a.r);
    for (const auto& name : obs) {
        if (name == "T_1to2") out.push_back(t12);
        else if (name == "T_2to1") out.push_back(t21);
        else if (name == "R") out.push_back(rr);
        else if (name == "I") out.push_back(ratio_contrast(t21, t12));
        else if (name == "D") out.push_back(ratio_contrast(std::norm(a.u_rev), std::norm(a.u_fwd)));
        else out.push_back(1.0 - t12 - rr);  // conservation_deficit, port 1
    }
}

inline void eval_two_level_solver(const TwoLevelParams& p, double delta,
                                  const std::vector<std::string>& obs,
                                  std::vector<double>& out) {
    const ScatterModel m = two_level_to_model(p);
    const ScatterSolution s1 = solve_scattering(m, delta, 1);
    const ScatterSolution s2 = solve_scattering(m, delta, 2);
    const double t12 = s1.port_probability(2), t21 = s2.port_probability(1);
    const double rr = s1.port_probability(1);
    const double uf = std::norm(s1.atomic_amplitudes()[0]);
    const double ur = std::norm(s2.atomic_amplitudes()[0]);
    for (const auto& name : obs) {
        if (name == "T_1to2") out.push_back(t12);
        else if (name == "T_2to1") out.push_back(t21);
        else if (name == "R") out.push_back(rr);
        else if (name == "I") out.push_back(ratio_contrast(t21, t12));
        else if (name == "D") out.push_back(ratio_contrast(ur, uf));
        else out.push_back(1.0 - t12 - rr);
    }
}

inline void eval_nabla_closed(const NablaParams& p, double delta,
                              const std::vector<std::string>& obs, std::vector<double>& out) {
    const NablaAmplitudes a = nabla_amplitudes(p, delta);
    for (const auto& name : obs) {
        if (name == "S_1to2") out.push_back(std::norm(a.s12));
        else if (name == "S_2to1") out.push_back(std::norm(a.s21));
        else if (name == "S_1to3") out.push_back(std::norm(a.s13));
        else if (name == "S_1to4") out.push_back(std::norm(a.s14));
        else if (name == "S_2to3") out.push_back(std::norm(a.s23));
        else if (name == "S_2to4") out.push_back(std::norm(a.s24));
        else if (name == "S_4to1") out.push_back(std::norm(a.s23));
        else {  // C
            const double s14 = std::norm(a.s14), s23 = std::norm(a.s23);
            out.push_back(s14 + s23 > 0.0 ? (s14 - s23) / (s14 + s23) : nan());
        }
    }
}

inline void eval_three_level_solver(const ScatterModel& m, double delta,
                                    const std::vector<std::string>& obs,
                                    std::vector<double>& out) {
    const SMatrix s = s_matrix(m, delta);
    for (const auto& name : obs) {
        int i, j;
        if (parse_port_pair(name, i, j)) out.push_back(s.at(i, j));
        else if (name == "C") {
            const double s14 = s.at(1, 4), s23 = s.at(2, 3);
            out.push_back(s14 + s23 > 0.0 ? (s14 - s23) / (s14 + s23) : nan());
        } else out.push_back(1.0 - s.row_sum(1));  // conservation_deficit, port 1
    }
}

} // namespace detail

inline SweepTable run_sweep(const SweepSpec& spec, Engine engine = Engine::automatic) {
    if (spec.observables.empty()) throw parameter_error("no observables requested");
    for (const auto& o : spec.observables)
        if (!detail::observable_known(spec.base, o))
            throw unknown_name_error("unknown observable '" + o + "' for model kind " +
                                     model_kind_name(spec.base));
    // axis names must resolve
    {
        ModelParams probe = spec.base;
        double d = 0.0;
        detail::apply_param(probe, spec.axis1.param, spec.axis1.points.front(), d);
        if (spec.axis2)
            detail::apply_param(probe, spec.axis2->param, spec.axis2->points.front(), d);
    }

    SweepTable table;
    table.columns.push_back(spec.axis1.param);
    if (spec.axis2) table.columns.push_back(spec.axis2->param);
    for (const auto& o : spec.observables) table.columns.push_back(o);

    const std::vector<double> inner =
        spec.axis2 ? spec.axis2->points : std::vector<double>{0.0};
    for (double v1 : spec.axis1.points) {
        for (size_t k2 = 0; k2 < inner.size(); ++k2) {
            ModelParams p = spec.base;
            double detuning = spec.fixed_delta;
            detail::apply_param(p, spec.axis1.param, v1, detuning);
            if (spec.axis2) detail::apply_param(p, spec.axis2->param, inner[k2], detuning);

            std::vector<double> row;
            row.push_back(v1);
            if (spec.axis2) row.push_back(inner[k2]);

            if (const auto* tl = std::get_if<TwoLevelParams>(&p)) {
                if (engine == Engine::solver)
                    detail::eval_two_level_solver(*tl, detuning, spec.observables, row);
                else
                    detail::eval_two_level_closed(*tl, detuning, spec.observables, row);
            } else if (const auto* nb = std::get_if<NablaParams>(&p)) {
                bool can_closed = nb->single_point_wb() && nb->theta3 == 0.0;
                if (can_closed)
                    for (const auto& o : spec.observables)
                        can_closed = can_closed && detail::nabla_closed_covers(o);
                if (engine == Engine::closed_form && !can_closed)
                    throw unsupported_configuration_error(
                        "closed-form engine cannot evaluate this configuration/observables");
                if ((engine == Engine::automatic && can_closed) ||
                    engine == Engine::closed_form)
                    detail::eval_nabla_closed(*nb, detuning, spec.observables, row);
                else
                    detail::eval_three_level_solver(nabla_to_model(*nb), detuning,
                                                    spec.observables, row);
            } else {
                const auto& dl = std::get<DeltaParams>(p);
                if (engine == Engine::closed_form)
                    throw unsupported_configuration_error(
                        "no closed forms for the ground-driven three-level atom");
                detail::eval_three_level_solver(delta_to_model(dl), detuning,
                                                spec.observables, row);
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

inline std::vector<std::string> all_port_pair_observables() {
    std::vector<std::string> v;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            v.push_back("S_" + std::to_string(i) + "to" + std::to_string(j));
    return v;
}

inline std::vector<std::string> figure_preset_ids() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d",
            "fig3e", "fig4",  "fig4inset", "fig6a", "fig6b", "fig6c", "fig6d",
            "fig7a", "fig7b", "fig7c", "fig8a", "fig8b", "fig8c", "fig8d", "fig9"};
}

inline SweepSpec figure_preset(const std::string& id) {
    using std::numbers::pi;
    SweepSpec s;

    auto two_level_base = [&](double gamma_ext, double phi0, double tau) {
        TwoLevelParams p;
        p.gamma_ext = gamma_ext;
        p.phi0 = phi0;
        p.tau = tau;
        return p;
    };

    if (id == "fig2a" || id == "fig2b" || id == "fig2c" || id == "fig2d") {
        const bool lossy = (id == "fig2c" || id == "fig2d");
        s.base = two_level_base(lossy ? 10.0 : 0.0, pi / 2, 0.01);
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 201);
        s.axis2 = SweepAxis::uniform("theta2", 0.0, 2 * pi, 201);
        s.observables = {(id == "fig2a" || id == "fig2c") ? "T_1to2" : "T_2to1"};
        return s;
    }
    if (id == "fig3a" || id == "fig3b" || id == "fig3c") {
        const double ge = id == "fig3a" ? 0.0 : (id == "fig3b" ? 4.0 : 20.0);
        s.base = two_level_base(ge, pi / 2, 0.01);
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 1001);
        s.axis2 = SweepAxis::explicit_list("theta2", {pi / 2, pi});
        s.observables = {"T_1to2", "T_2to1"};
        return s;
    }
    if (id == "fig3d") {
        s.base = two_level_base(0.0, pi / 2, 0.01);
        s.fixed_delta = 0.0;
        s.axis1 = SweepAxis::uniform("theta2", 0.0, 2 * pi, 1001);
        s.axis2 = SweepAxis::explicit_list("gamma_ext", {0.0, 4.0, 20.0});
        s.observables = {"I", "D"};
        return s;
    }
    if (id == "fig3e") {
        s.base = two_level_base(0.0, pi / 2, 0.01);
        s.fixed_delta = 0.0;
        s.axis1 = SweepAxis::uniform("theta2", 0.0, 2 * pi, 201);
        s.axis2 = SweepAxis::uniform("phi0", 0.0, 2 * pi, 201);
        s.observables = {"D"};
        return s;
    }
    if (id == "fig4") {
        TwoLevelParams p = two_level_base(0.0, pi / 2, 1.0);
        p.theta2 = pi / 2;
        s.base = p;
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 1001);
        s.axis2 = SweepAxis::explicit_list("gamma_ext", {0.0, 0.5, 1.0});
        s.observables = {"R"};
        return s;
    }
    if (id == "fig4inset") {
        TwoLevelParams p = two_level_base(0.0, pi, 1.0);
        p.theta2 = pi / 2;
        s.base = p;
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 1001);
        s.observables = {"R"};
        return s;
    }

    auto nabla_base = [&](double rabi, double theta2, double theta4, double phi_b0) {
        NablaParams p;
        p.rabi = rabi;
        p.theta2 = theta2;
        p.theta4 = theta4;
        p.phi_a0 = pi / 2;
        p.phi_b0 = phi_b0;
        return p;
    };

    if (id == "fig6a" || id == "fig6b" || id == "fig6c" || id == "fig6d") {
        s.base = nabla_base(5.0, 0.0, 0.0, 0.0);
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 201);
        s.axis2 = SweepAxis::uniform("theta2", 0.0, 2 * pi, 201);
        s.observables = {id == "fig6a"   ? "S_1to2"
                         : id == "fig6b" ? "S_2to1"
                         : id == "fig6c" ? "S_1to4"
                                         : "S_4to1"};
        return s;
    }
    if (id == "fig7a") {
        s.base = nabla_base(5.0, 0.0, 0.0, 0.0);
        s.fixed_delta = 0.0;
        s.axis1 = SweepAxis::uniform("theta2", 0.0, 2 * pi, 1001);
        s.observables = {"C"};
        return s;
    }
    if (id == "fig7b" || id == "fig7c") {
        s.base = nabla_base(5.0, id == "fig7b" ? pi / 2 : 3 * pi / 2, 0.0, 0.0);
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 1001);
        s.observables = {"S_1to4", "S_2to3"};
        return s;
    }
    if (id == "fig8a" || id == "fig8b" || id == "fig8c" || id == "fig8d") {
        const double rabi = (id == "fig8a") ? 0.0 : 2.0;
        const double theta4 = (id == "fig8a" || id == "fig8b") ? pi / 2 : 3 * pi / 2;
        s.base = nabla_base(rabi, pi / 2, theta4, pi / 2);
        s.axis1 = SweepAxis::uniform("delta", -10.0, 10.0, 1001);
        s.observables = all_port_pair_observables();
        return s;
    }
    if (id == "fig9") {
        DeltaParams p;
        p.drive = 30.0;
        p.omega_g2 = 10.0;
        p.phi_a0 = pi / 2;
        p.phi_b0 = pi / 2;
        s.base = p;
        s.axis1 = SweepAxis::uniform("delta", -40.0, 40.0, 1001);
        s.axis2 = SweepAxis::explicit_list("beta", {0.0, pi / 2, pi});
        s.observables = {"S_1to4", "S_4to1"};
        return s;
    }
    throw unknown_name_error("unknown figure preset '" + id + "'");
}

} // namespace giantatom
