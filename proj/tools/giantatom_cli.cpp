// giantatom_cli.cpp - command-line front end: detuning spectra and parameter
// maps (CSV), figure presets, closed-form/solver cross verification, and
// device reports.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
// 3 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "giantatom/giantatom.hpp"

namespace ga = giantatom;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const std::set<std::string> kAngleParams = {"theta1", "theta2", "theta3", "theta4",
                                            "phi0",   "phi_a0", "phi_b0", "alpha",
                                            "beta"};

struct SpectrumOptions {
    std::string config_path;
    std::string model;
    std::map<std::string, double> params;  // registry-named values the user set
    std::string obs_list;
    std::string delta_axis = "-10:10:1001";
    double delta_fixed = 0.0;
    std::string out_path;
    std::string engine = "auto";
    bool degrees = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

ga::SweepAxis parse_delta_axis(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ga::parameter_error("--delta expects min:max:count");
    try {
        const double lo = std::stod(parts[0]);
        const double hi = std::stod(parts[1]);
        const int count = std::stoi(parts[2]);
        return ga::SweepAxis::uniform("delta", lo, hi, count);
    } catch (const std::invalid_argument&) {
        throw ga::parameter_error("--delta expects numeric min:max:count");
    } catch (const std::out_of_range&) {
        throw ga::parameter_error("--delta range value out of range");
    }
}

void write_table(const std::string& path, const ga::SweepTable& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open output file '" + path + "'");
    ga::write_csv(os, table.columns, table.rows);
    os.flush();
    if (!os) throw std::ios_base::failure("failed writing '" + path + "'");
}

ga::SweepSpec spec_from_flags(const SpectrumOptions& opt) {
    ga::SweepSpec spec;
    spec.base = ga::default_params_for_kind(opt.model);
    spec.fixed_delta = opt.delta_fixed;
    double unused = 0.0;
    for (const auto& [raw_name, raw] : opt.params) {
        // "two-level-name:other-name" flags resolve by model kind
        std::string name = raw_name;
        if (const auto pos = name.find(':'); pos != std::string::npos)
            name = (opt.model == "two-level") ? name.substr(0, pos) : name.substr(pos + 1);
        double value = raw;
        if (opt.degrees && kAngleParams.count(name)) value *= std::numbers::pi / 180.0;
        ga::detail::apply_param(spec.base, name, value, unused);
    }
    spec.axis1 = parse_delta_axis(opt.delta_axis);
    for (const auto& o : split(opt.obs_list, ','))
        if (!o.empty()) spec.observables.push_back(o);
    return spec;
}

ga::SweepAxis axis_from_json(const json& j, const std::string& who) {
    std::string param;
    std::optional<double> lo, hi;
    std::optional<int> count;
    std::optional<std::vector<double>> points;
    for (const auto& [key, value] : j.items()) {
        if (key == "param") param = value.get<std::string>();
        else if (key == "min") lo = value.get<double>();
        else if (key == "max") hi = value.get<double>();
        else if (key == "count") count = value.get<int>();
        else if (key == "points") points = value.get<std::vector<double>>();
        else throw ga::parameter_error("unknown key '" + key + "' in " + who);
    }
    if (param.empty()) throw ga::parameter_error(who + " needs a 'param'");
    if (points) {
        if (lo || hi || count)
            throw ga::parameter_error(who + ": 'points' excludes min/max/count");
        return ga::SweepAxis::explicit_list(param, *points);
    }
    if (!lo || !hi || !count) throw ga::parameter_error(who + " needs min, max, count");
    return ga::SweepAxis::uniform(param, *lo, *hi, *count);
}

ga::SweepSpec spec_from_config(const std::string& path, std::string& out_path,
                               std::string& engine) {
    std::ifstream is(path);
    if (!is) throw std::ios_base::failure("cannot read config '" + path + "'");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ga::parameter_error(std::string("config is not valid JSON: ") + e.what());
    }

    ga::SweepSpec spec;
    bool have_model = false, have_axis1 = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "model") {
            spec.base = ga::default_params_for_kind(value.get<std::string>());
            have_model = true;
        } else if (key == "params" || key == "axis1" || key == "axis2" ||
                   key == "observables" || key == "delta_fixed" || key == "engine" ||
                   key == "out") {
            // handled below, after the model kind is known
        } else {
            throw ga::parameter_error("unknown config key '" + key + "'");
        }
    }
    if (!have_model) throw ga::parameter_error("config needs a 'model'");

    if (j.contains("params")) {
        double unused = 0.0;
        for (const auto& [key, value] : j["params"].items())
            ga::detail::apply_param(spec.base, key, value.get<double>(), unused);
    }
    if (j.contains("delta_fixed")) spec.fixed_delta = j["delta_fixed"].get<double>();
    if (j.contains("axis1")) {
        spec.axis1 = axis_from_json(j["axis1"], "axis1");
        have_axis1 = true;
    }
    if (!have_axis1) throw ga::parameter_error("config needs 'axis1'");
    if (j.contains("axis2")) spec.axis2 = axis_from_json(j["axis2"], "axis2");
    if (!j.contains("observables")) throw ga::parameter_error("config needs 'observables'");
    spec.observables = j["observables"].get<std::vector<std::string>>();
    if (j.contains("engine")) engine = j["engine"].get<std::string>();
    if (j.contains("out")) out_path = j["out"].get<std::string>();
    return spec;
}

int run_spectrum(const SpectrumOptions& opt) {
    ga::SweepSpec spec;
    std::string out_path = opt.out_path;
    std::string engine = opt.engine;
    if (!opt.config_path.empty()) {
        spec = spec_from_config(opt.config_path, out_path, engine);
    } else {
        if (opt.model.empty())
            throw ga::parameter_error("either --config or --model is required");
        spec = spec_from_flags(opt);
    }
    if (out_path.empty()) throw ga::parameter_error("no output path (--out)");
    const ga::SweepTable table = ga::run_sweep(spec, ga::engine_from_name(engine));
    write_table(out_path, table);
    std::cout << "wrote " << table.rows.size() << " rows to " << out_path << "\n";
    return kExitOk;
}

int run_figure(const std::string& id, const std::string& out_dir) {
    std::vector<std::string> ids;
    if (id == "all")
        ids = ga::figure_preset_ids();
    else
        ids.push_back(id);
    for (const auto& one : ids) {
        const ga::SweepSpec spec = ga::figure_preset(one);
        const ga::SweepTable table = ga::run_sweep(spec);
        const std::string path = out_dir + "/" + one + ".csv";
        write_table(path, table);
        std::cout << one << ": " << table.rows.size() << " rows -> " << path << "\n";
    }
    return kExitOk;
}

int run_verify(unsigned long long seed, int trials, double tol, bool negative_control) {
    ga::VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.tol = tol;
    opt.corrupt_transfer_kernel = negative_control;
    const ga::VerifyReport rep = ga::run_oracle_verification(opt);
    std::cout << "trials: " << rep.trials_run << "\n";
    std::cout << "max deviation: " << rep.max_deviation << " (tol " << tol << ")\n";
    if (!rep.worst_case.empty()) std::cout << "worst case: " << rep.worst_case << "\n";
    std::cout << (rep.passed ? "PASS" : "FAIL") << "\n";
    return rep.passed ? kExitOk : kExitVerifyFail;
}

int run_device(const std::string& preset, double delta) {
    const ga::SweepSpec spec = ga::figure_preset(preset);
    ga::DeviceReport rep;
    rep.config_label = preset;
    rep.at_detuning = delta;

    const auto add = [&](const std::string& k, double v) { rep.values.emplace_back(k, v); };
    ga::SMatrix s;
    if (const auto* nb = std::get_if<ga::NablaParams>(&spec.base))
        s = ga::s_matrix(ga::nabla_to_model(*nb), delta);
    else if (const auto* dl = std::get_if<ga::DeltaParams>(&spec.base))
        s = ga::s_matrix(ga::delta_to_model(*dl), delta);
    else
        s = ga::s_matrix(ga::two_level_to_model(std::get<ga::TwoLevelParams>(spec.base)),
                         delta);

    if (s.n_ports == 4) {
        add("efficiency_1to2", ga::router_efficiency(s, 1, 2));
        add("efficiency_1to3", ga::router_efficiency(s, 1, 3));
        add("efficiency_1to4", ga::router_efficiency(s, 1, 4));
        add("circulator_fidelity_1_3_4_2", ga::circulator_fidelity(s, {1, 3, 4, 2}));
        try {
            add("port_contrast_1_4", ga::port_contrast(s, 1, 4));
        } catch (const ga::undefined_contrast_error&) {
            add("port_contrast_1_4", std::numeric_limits<double>::quiet_NaN());
        }
    } else {
        add("T_1to2", s.at(1, 2));
        add("T_2to1", s.at(2, 1));
        add("R", s.at(1, 1));
    }
    add("conservation_deficit_port1", ga::conservation_deficit(s, 1));

    std::cout << "config=" << rep.config_label << "\n";
    std::cout << "at_detuning=" << rep.at_detuning << "\n";
    char buf[64];
    for (const auto& [k, v] : rep.values) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        std::cout << k << "=" << buf << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon scattering for multi-point (giant) atoms"};
    app.require_subcommand(1);

    SpectrumOptions sopt;
    auto* spectrum = app.add_subcommand("spectrum", "write a detuning sweep as CSV");
    spectrum->add_option("--config", sopt.config_path, "JSON run configuration");
    spectrum->add_option("--model", sopt.model, "two-level | nabla | delta");
    // shared parameter flags; each maps onto the named model's field
    const std::vector<std::pair<std::string, std::string>> flag_map = {
        {"--gamma-wg", "gamma_wg"},   {"--gamma-e", "gamma_ext:gamma_e"},
        {"--gamma1", "gamma1_wg"},    {"--gamma2", "gamma2_wg"},
        {"--gamma-e1", "gamma_e1"},   {"--gamma-e2", "gamma_e2"},
        {"--gamma-g2", "gamma_g2"},   {"--rabi", "rabi"},
        {"--alpha", "alpha"},         {"--drive", "drive"},
        {"--beta", "beta"},           {"--theta1", "theta1"},
        {"--theta2", "theta2"},       {"--theta3", "theta3"},
        {"--theta4", "theta4"},       {"--phi0", "phi0"},
        {"--phi-a0", "phi_a0"},       {"--phi-b0", "phi_b0"},
        {"--tau", "tau"},             {"--tau-a", "tau_a"},
        {"--tau-b", "tau_b"},         {"--omega-g2", "omega_g2"},
    };
    for (const auto& [flag, target] : flag_map)
        spectrum->add_option_function<double>(
            flag, [target = target, &sopt](double v) { sopt.params[target] = v; });
    spectrum->add_option("--obs", sopt.obs_list, "comma-separated observables");
    spectrum->add_option("--delta", sopt.delta_axis, "detuning axis min:max:count");
    spectrum->add_option("--out", sopt.out_path, "output CSV path");
    spectrum->add_option("--engine", sopt.engine, "auto | closed-form | solver");
    spectrum->add_flag("--deg", sopt.degrees, "angle flags are given in degrees");

    std::string fig_id, fig_dir = ".";
    auto* figure = app.add_subcommand("figure", "write figure-preset data as CSV");
    figure->add_option("id", fig_id, "preset id (fig2a..fig9) or 'all'")->required();
    figure->add_option("--out-dir", fig_dir, "output directory");

    unsigned long long vseed = 42;
    int vtrials = 200;
    double vtol = 1e-10;
    bool vneg = false;
    auto* verify = app.add_subcommand("verify", "closed forms vs solver on random draws");
    verify->add_option("--seed", vseed, "random seed");
    verify->add_option("--trials", vtrials, "number of random parameter points");
    verify->add_option("--tol", vtol, "max allowed amplitude deviation");
    verify->add_flag("--negative-control", vneg,
                     "corrupt the transfer kernel; the check must fail");

    std::string dev_preset;
    double dev_delta = 0.0;
    auto* device = app.add_subcommand("device", "router/circulator report for a preset");
    device->add_option("--preset", dev_preset, "figure preset id")->required();
    device->add_option("--delta", dev_delta, "detuning to evaluate at");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(sopt);
        if (figure->parsed()) return run_figure(fig_id, fig_dir);
        if (verify->parsed()) return run_verify(vseed, vtrials, vtol, vneg);
        if (device->parsed()) return run_device(dev_preset, dev_delta);
    } catch (const ga::parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ga::unknown_name_error& e) {
        std::cerr << "unknown name: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ga::unsupported_configuration_error& e) {
        std::cerr << "unsupported configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ga::undefined_contrast_error& e) {
        std::cerr << "undefined contrast: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ga::singular_system_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
