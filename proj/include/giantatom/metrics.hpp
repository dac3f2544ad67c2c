// metrics.hpp - scalar figures of merit on top of port probability tables
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace giantatom {

struct DeviceReport {
    std::string config_label;
    double at_detuning = 0.0;
    std::vector<std::pair<std::string, double>> values;
};

// Fraction of incident flux absorbed by the environment: 1 - sum of the
// incidence row.
inline double conservation_deficit(const SMatrix& s, int incidence) {
    if (incidence < 1 || incidence > s.n_ports) throw parameter_error("port out of range");
    return 1.0 - s.row_sum(incidence);
}

// (S_{j->i} - S_{i->j}) / (S_{j->i} + S_{i->j}); antisymmetric in (i, j).
inline double port_contrast(const SMatrix& s, int i, int j) {
    if (i < 1 || i > s.n_ports || j < 1 || j > s.n_ports || i == j)
        throw parameter_error("port pair invalid");
    const double fwd = s.at(i, j);
    const double rev = s.at(j, i);
    if (fwd + rev <= 0.0)
        throw undefined_contrast_error("both directions vanish; contrast undefined");
    return (rev - fwd) / (rev + fwd);
}

// Mean probability along the directed edges of a port cycle.
inline double circulator_fidelity(const SMatrix& s, const std::vector<int>& cycle) {
    if (static_cast<int>(cycle.size()) != s.n_ports)
        throw parameter_error("cycle must visit every port exactly once");
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < s.n_ports; ++k)
        if (sorted[k] != k + 1) throw parameter_error("cycle is not a port permutation");
    double acc = 0.0;
    for (size_t k = 0; k < cycle.size(); ++k)
        acc += s.at(cycle[k], cycle[(k + 1) % cycle.size()]);
    return acc / static_cast<double>(cycle.size());
}

inline double router_efficiency(const SMatrix& s, int source, int target) {
    if (source < 1 || source > s.n_ports || target < 1 || target > s.n_ports)
        throw parameter_error("port out of range");
    return s.at(source, target);
}

} // namespace giantatom
