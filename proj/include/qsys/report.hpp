#pragma once

#include <map>
#include <string>
#include <vector>

namespace qsys {

struct Check {
    std::string name;
    std::string anchor;
    double      residual;
    double      threshold;
    bool        pass;
};

// Residual reports never throw on failure; they collect numbers.
class Report {
public:
    void add(std::string name, std::string anchor, double residual, double threshold);
    // Informational scalar that is not a pass/fail check.
    void note(const std::string &key, double value) { notes[key] = value; }
    void append(const Report &other, const std::string &prefix = "");

    bool   pass() const;
    double max_residual() const;
    // Largest residual among checks whose name starts with prefix.
    double max_residual(const std::string &prefix) const;
    const Check *find(const std::string &name) const;

    std::string table() const;

    std::vector<Check>            checks;
    std::map<std::string, double> notes;
};

} // namespace qsys
