#pragma once

#include <json.hpp>

#include "qsys/errors.hpp"
#include "qsys/funcat.hpp"

// Schema 1 file format. Complex numbers are [re, im]; grades and 0-cells are 1-based.
//   1-cell: {"src": s, "tgt": t, "grading": [[row, col], ...]}
//   2-cell: {"source": 1-cell, "target": 1-cell, "mat": [[[re, im], ...], ...]}
// Files carry "schema": 1 and "kind": "qsystem" | "scenario" | "split".
namespace qsys {

class ParseError : public Error {
public:
    explicit ParseError(const std::string &what) : Error("ParseError: " + what) {}
};

using Json = nlohmann::ordered_json;

Json    to_json(const OneCell &X);
Json    to_json(const TwoCell &f);
OneCell one_cell_from_json(const Json &j);
// Throws ParseError on malformed data and CellMismatch on mass outside the sectors.
TwoCell two_cell_from_json(const Json &j);

struct FileOptions {
    bool          has_tol     = false;
    bool          has_gap_tol = false;
    Tolerance     tol;
    bool          has_seed = false;
    std::uint64_t seed     = 0;
};

Json    qsystem_file(const QSystem &q);
QSystem qsystem_from_file(const Json &j, FileOptions *opts = nullptr);

Json     scenario_file(const Scenario &s);
Scenario scenario_from_file(const Json &j, FileOptions *opts = nullptr);

Json split_file(const SplitResult &s);

Json report_json(const Report &r, const std::string &command);

// Throws ParseError when the text is not JSON or the schema field is missing or wrong.
Json parse_text(const std::string &text);
Json read_file(const std::string &path);

} // namespace qsys
