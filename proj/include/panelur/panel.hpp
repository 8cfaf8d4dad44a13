#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "panelur/errors.hpp"

namespace panelur {

// N units observed at t = 0..T, stored unit-major
struct PanelDataset {
    int n_units = 0;
    int n_periods = 0;  // T
    std::vector<double> values;
    std::vector<std::string> unit_ids;

    PanelDataset() = default;
    PanelDataset(int n, int T) : n_units(n), n_periods(T), values(static_cast<std::size_t>(n) * (T + 1), 0.0) {
        for (int i = 0; i < n; ++i) unit_ids.push_back("u" + std::to_string(i + 1));
    }

    int stride() const { return n_periods + 1; }
    double& at(int i, int t) { return values[static_cast<std::size_t>(i) * stride() + t]; }
    double at(int i, int t) const { return values[static_cast<std::size_t>(i) * stride() + t]; }
    std::span<const double> unit(int i) const {
        return {values.data() + static_cast<std::size_t>(i) * stride(), static_cast<std::size_t>(stride())};
    }
    std::span<double> unit(int i) {
        return {values.data() + static_cast<std::size_t>(i) * stride(), static_cast<std::size_t>(stride())};
    }

    void validate() const {
        if (n_units < 1) throw InvalidArgument("panel needs at least one unit");
        if (n_periods < 4) throw InvalidArgument("panel needs T >= 4");
        if (values.size() != static_cast<std::size_t>(n_units) * stride())
            throw InvalidArgument("panel values do not form an N x (T+1) grid");
        if (unit_ids.size() != static_cast<std::size_t>(n_units)) throw InvalidArgument("panel unit ids missing");
        for (double v : values)
            if (!std::isfinite(v)) throw InvalidArgument("panel contains non-finite values");
    }
};

}  // namespace panelur
