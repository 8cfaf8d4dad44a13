#pragma once

// Long-format panel CSV: header `unit,time,value`, one row per cell.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "panelur/errors.hpp"
#include "panelur/panel.hpp"

namespace panelur {

namespace detail {

inline std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline PanelDataset read_panel(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw ParseError("empty file, expected header unit,time,value", 1);
    line = detail::trim_cr(line);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (line != "unit,time,value") throw ParseError("header must be exactly unit,time,value", 1);

    std::vector<std::string> order;
    std::unordered_map<std::string, std::map<long long, double>> cells;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::trim_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_csv(line);
        if (f.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(f.size()), line_no);
        if (f[0].empty()) throw ParseError("empty unit id", line_no);
        long long t = 0;
        {
            const auto* b = f[1].data();
            const auto* e = b + f[1].size();
            const auto r = std::from_chars(b, e, t);
            if (r.ec != std::errc() || r.ptr != e || t < 0)
                throw ParseError("time must be a non-negative integer, got '" + f[1] + "'", line_no);
        }
        double v = 0;
        {
            const auto* b = f[2].data();
            const auto* e = b + f[2].size();
            const auto r = std::from_chars(b, e, v);
            if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v))
                throw ParseError("value must be a finite number, got '" + f[2] + "'", line_no);
        }
        auto it = cells.find(f[0]);
        if (it == cells.end()) {
            order.push_back(f[0]);
            it = cells.emplace(f[0], std::map<long long, double>{}).first;
        }
        if (!it->second.emplace(t, v).second)
            throw DuplicateCell("duplicate cell for unit " + f[0] + " at time " + f[1] + " (line " +
                                std::to_string(line_no) + ")");
    }
    if (order.empty()) throw ParseError("no data rows", line_no);

    long long T = -1;
    for (const auto& u : order) T = std::max(T, cells[u].rbegin()->first);
    for (const auto& u : order) {
        const auto& m = cells[u];
        for (long long t = 0; t <= T; ++t)
            if (!m.count(t)) throw RaggedPanel("unit " + u + " has no value at time " + std::to_string(t));
    }
    PanelDataset p(static_cast<int>(order.size()), static_cast<int>(T));
    p.unit_ids = order;
    for (int i = 0; i < p.n_units; ++i)
        for (const auto& [t, v] : cells[order[i]]) p.at(i, static_cast<int>(t)) = v;
    return p;
}

inline PanelDataset read_panel(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open panel file '" + path + "'");
    return read_panel(in);
}

// rows ordered by unit (first appearance) then time; shortest round-trip decimals
inline void write_panel(std::ostream& out, const PanelDataset& p) {
    out << "unit,time,value\n";
    char buf[64];
    for (int i = 0; i < p.n_units; ++i)
        for (int t = 0; t <= p.n_periods; ++t) {
            const auto r = std::to_chars(buf, buf + sizeof buf, p.at(i, t));
            out << p.unit_ids[i] << ',' << t << ',' << std::string_view(buf, r.ptr - buf) << '\n';
        }
}

inline void write_panel(const std::string& path, const PanelDataset& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write panel file '" + path + "'");
    write_panel(out, p);
}

}  // namespace panelur
