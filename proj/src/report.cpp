#include "qsys/report.hpp"

#include <algorithm>
#include <cstdio>

namespace qsys {

void Report::add(std::string name, std::string anchor, double residual, double threshold) {
    bool ok = residual <= threshold; // NaN fails
    checks.push_back({std::move(name), std::move(anchor), residual, threshold, ok});
}

void Report::append(const Report &other, const std::string &prefix) {
    for (const auto &c : other.checks) checks.push_back({prefix + c.name, c.anchor, c.residual, c.threshold, c.pass});
    for (const auto &[k, v] : other.notes) notes[prefix + k] = v;
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

double Report::max_residual() const { return max_residual(""); }

double Report::max_residual(const std::string &prefix) const {
    double m = 0.0;
    for (const auto &c : checks)
        if (c.name.compare(0, prefix.size(), prefix) == 0) m = std::max(m, c.residual);
    return m;
}

const Check *Report::find(const std::string &name) const {
    for (const auto &c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string Report::table() const {
    std::size_t w = 5, wa = 6;
    for (const auto &c : checks) {
        w  = std::max(w, c.name.size());
        wa = std::max(wa, c.anchor.size());
    }
    std::string out;
    char        buf[512];
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %12s  %10s  %s\n", static_cast<int>(w), "check", static_cast<int>(wa), "anchor", "residual",
                  "threshold", "status");
    out += buf;
    for (const auto &c : checks) {
        std::snprintf(buf, sizeof buf, "%-*s  %-*s  %12.3e  %10.1e  %s\n", static_cast<int>(w), c.name.c_str(), static_cast<int>(wa),
                      c.anchor.c_str(), c.residual, c.threshold, c.pass ? "pass" : "FAIL");
        out += buf;
    }
    for (const auto &[k, v] : notes) {
        std::snprintf(buf, sizeof buf, "note %s = %.12g\n", k.c_str(), v);
        out += buf;
    }
    return out;
}

} // namespace qsys
