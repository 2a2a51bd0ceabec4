#include "qsys/serialize.hpp"

#include <fstream>
#include <sstream>

namespace qsys {

namespace {

template <class F> auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

int as_int(const Json &j, const char *field) {
    if (!j.is_number_integer()) throw ParseError(std::string(field) + " must be an integer");
    return j.get<int>();
}

const Json &field(const Json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
    return j.at(name);
}

Json matrix_json(const Mat &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json &j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) throw ParseError("mat must have " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) throw ParseError("mat row must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const Json &z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("complex entries must be [re, im]");
            m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

void check_schema(const Json &j, const char *kind) {
    if (!j.is_object() || !j.contains("schema") || j.at("schema") != 1) throw ParseError("expected \"schema\": 1");
    if (!j.contains("kind") || j.at("kind") != kind) throw ParseError(std::string("expected \"kind\": \"") + kind + "\"");
}

void read_options(const Json &j, FileOptions *opts) {
    if (!opts) return;
    if (j.contains("tolerance")) {
        const Json &t = j.at("tolerance");
        opts->has_tol = true;
        if (t.contains("atol")) opts->tol.atol = t.at("atol").get<double>();
        if (t.contains("gap_tol")) {
            opts->has_gap_tol = true;
            opts->tol.gap_tol = t.at("gap_tol").get<double>();
        }
    }
    if (j.contains("seed")) {
        opts->has_seed = true;
        opts->seed     = j.at("seed").get<std::uint64_t>();
    }
}

struct Labels {
    std::map<std::string, int> zero, one, two;

    static int find(const std::map<std::string, int> &m, const Json &j, const char *what) {
        if (!j.is_string()) throw ParseError(std::string(what) + " label must be a string");
        auto it = m.find(j.get<std::string>());
        if (it == m.end()) throw ParseError(std::string("unknown ") + what + " '" + j.get<std::string>() + "'");
        return it->second;
    }
};

void insert_label(std::map<std::string, int> &m, const std::string &s, int k) {
    if (!m.emplace(s, k).second) throw ParseError("duplicate label '" + s + "'");
}

Json path_json(const PresentedTwoCat &C, const Path &p) {
    if (p.empty()) return Json{{"unit", C.zero_cells[static_cast<std::size_t>(p.at)]}};
    Json a = Json::array();
    for (int g : p.gens) a.push_back(C.gen_one_cells[static_cast<std::size_t>(g)].label);
    return a;
}

Path path_from_json(const Labels &L, const PresentedTwoCat &C, const Json &j) {
    Path p;
    if (j.is_object()) {
        p.at = Labels::find(L.zero, field(j, "unit"), "0-cell");
    } else if (j.is_array() && !j.empty()) {
        for (const auto &x : j) p.gens.push_back(Labels::find(L.one, x, "1-cell"));
    } else {
        throw ParseError("a path is a nonempty list of 1-cell labels or {\"unit\": 0-cell}");
    }
    C.check_path(p);
    return p;
}

Json expr_json(const PresentedTwoCat &C, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Gen: return Json{{"gen", C.gen_two_cells[static_cast<std::size_t>(e.gen)].label}};
    case Expr::Kind::Id: return Json{{"id", path_json(C, e.path)}};
    case Expr::Kind::Dag: return Json{{"dag", expr_json(C, e.args.at(0))}};
    case Expr::Kind::V:
    case Expr::Kind::H: {
        Json a = Json::array();
        for (const auto &x : e.args) a.push_back(expr_json(C, x));
        return Json{{e.kind == Expr::Kind::V ? "v" : "h", a}};
    }
    }
    return {};
}

Expr expr_from_json(const Labels &L, const PresentedTwoCat &C, const Json &j) {
    Expr e;
    if (!j.is_object() || j.size() != 1) throw ParseError("an expression is an object with one key");
    if (j.contains("gen")) {
        e.kind = Expr::Kind::Gen;
        e.gen  = Labels::find(L.two, j.at("gen"), "2-cell");
    } else if (j.contains("id")) {
        e.kind = Expr::Kind::Id;
        e.path = path_from_json(L, C, j.at("id"));
    } else if (j.contains("dag")) {
        e.kind = Expr::Kind::Dag;
        e.args.push_back(expr_from_json(L, C, j.at("dag")));
    } else if (j.contains("v") || j.contains("h")) {
        e.kind        = j.contains("v") ? Expr::Kind::V : Expr::Kind::H;
        const Json &a = j.contains("v") ? j.at("v") : j.at("h");
        if (!a.is_array() || a.empty()) throw ParseError("composite expressions need a nonempty list");
        for (const auto &x : a) e.args.push_back(expr_from_json(L, C, x));
    } else {
        throw ParseError("unknown expression key");
    }
    return e;
}

Json cells_json(const std::vector<OneCell> &v) {
    Json a = Json::array();
    for (const auto &x : v) a.push_back(to_json(x));
    return a;
}

Json cells_json(const std::vector<TwoCell> &v) {
    Json a = Json::array();
    for (const auto &x : v) a.push_back(to_json(x));
    return a;
}

std::vector<TwoCell> two_cells_from_json(const Json &j, std::size_t n, const char *what) {
    if (!j.is_array() || j.size() != n) throw ParseError(std::string(what) + " must list " + std::to_string(n) + " entries");
    std::vector<TwoCell> out;
    for (const auto &x : j) out.push_back(two_cell_from_json(x));
    return out;
}

std::vector<OneCell> one_cells_from_json(const Json &j, std::size_t n, const char *what) {
    if (!j.is_array() || j.size() != n) throw ParseError(std::string(what) + " must list " + std::to_string(n) + " entries");
    std::vector<OneCell> out;
    for (const auto &x : j) out.push_back(one_cell_from_json(x));
    return out;
}

} // namespace

Json to_json(const OneCell &X) {
    Json g = Json::array();
    for (auto q : X.grading()) g.push_back(Json::array({q.row + 1, q.col + 1}));
    return Json{{"src", X.src()}, {"tgt", X.tgt()}, {"grading", g}};
}

Json to_json(const TwoCell &f) { return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"mat", matrix_json(f.dense())}}; }

OneCell one_cell_from_json(const Json &j) {
    return guarded("1-cell", [&] {
        int src = as_int(field(j, "src"), "src"), tgt = as_int(field(j, "tgt"), "tgt");
        if (src < 1 || tgt < 1) throw ParseError("0-cells are positive integers");
        const Json &g = field(j, "grading");
        if (!g.is_array()) throw ParseError("grading must be a list");
        std::vector<Grade> gr;
        for (const auto &q : g) {
            if (!q.is_array() || q.size() != 2) throw ParseError("grades are [row, col] pairs");
            int r = as_int(q[0], "row"), c = as_int(q[1], "col");
            if (r < 1 || r > tgt || c < 1 || c > src) throw ParseError("grade out of range");
            gr.push_back({r - 1, c - 1});
        }
        return OneCell(src, tgt, std::move(gr));
    });
}

TwoCell two_cell_from_json(const Json &j) {
    return guarded("2-cell", [&] {
        OneCell s = one_cell_from_json(field(j, "source")), t = one_cell_from_json(field(j, "target"));
        if (s.src() != t.src() || s.tgt() != t.tgt()) throw CellMismatch("2-cell source and target are not parallel");
        return TwoCell::from_dense(s, t, matrix_from_json(field(j, "mat"), t.dim(), s.dim()));
    });
}

Json qsystem_file(const QSystem &q) {
    return Json{{"schema", 1}, {"kind", "qsystem"}, {"Q", to_json(q.Q)}, {"m", to_json(q.m)}, {"i", to_json(q.i)}};
}

QSystem qsystem_from_file(const Json &j, FileOptions *opts) {
    return guarded("qsystem", [&] {
        check_schema(j, "qsystem");
        read_options(j, opts);
        QSystem q{one_cell_from_json(field(j, "Q")), two_cell_from_json(field(j, "m")), two_cell_from_json(field(j, "i"))};
        validate_shapes(q);
        return q;
    });
}

Json scenario_file(const Scenario &s) {
    const auto &C = s.C;
    Json        zero = Json::array(), one = Json::array(), two = Json::array(), rel = Json::array();
    for (const auto &a : C.zero_cells) zero.push_back(a);
    for (const auto &g : C.gen_one_cells)
        one.push_back(Json{{"label", g.label}, {"src", C.zero_cells[static_cast<std::size_t>(g.src)]}, {"tgt", C.zero_cells[static_cast<std::size_t>(g.tgt)]}});
    for (const auto &f : C.gen_two_cells) two.push_back(Json{{"label", f.label}, {"source", path_json(C, f.source)}, {"target", path_json(C, f.target)}});
    for (const auto &[l, r] : C.relations) rel.push_back(Json{{"lhs", expr_json(C, l)}, {"rhs", expr_json(C, r)}});
    Json F{{"on0", s.F.on0}, {"on1", cells_json(s.F.on1)}, {"on2", cells_json(s.F.on2)}, {"F1", cells_json(s.F.F1)}};
    Json q{{"psi", Json{{"comp0", cells_json(s.q.psi.comp0)}, {"comp1", cells_json(s.q.psi.comp1)}}},
           {"m", cells_json(s.q.m.comp)},
           {"i", cells_json(s.q.i.comp)}};
    return Json{{"schema", 1}, {"kind", "scenario"}, {"zero_cells", zero}, {"one_cells", one}, {"two_cells", two},
                {"relations", rel}, {"functor", F}, {"qsystem", q}};
}

Scenario scenario_from_file(const Json &j, FileOptions *opts) {
    return guarded("scenario", [&] {
        check_schema(j, "scenario");
        read_options(j, opts);
        Scenario         s;
        PresentedTwoCat &C = s.C;
        Labels           L;
        for (const auto &a : field(j, "zero_cells")) {
            if (!a.is_string()) throw ParseError("0-cell labels must be strings");
            insert_label(L.zero, a.get<std::string>(), C.num0());
            C.zero_cells.push_back(a.get<std::string>());
        }
        if (C.zero_cells.empty()) throw ParseError("a presentation needs at least one 0-cell");
        for (const auto &g : field(j, "one_cells")) {
            std::string label = field(g, "label").get<std::string>();
            insert_label(L.one, label, C.num1());
            C.gen_one_cells.push_back({label, Labels::find(L.zero, field(g, "src"), "0-cell"), Labels::find(L.zero, field(g, "tgt"), "0-cell")});
        }
        for (const auto &f : j.value("two_cells", Json::array())) {
            std::string label = field(f, "label").get<std::string>();
            GenTwoCell  gc{label, path_from_json(L, C, field(f, "source")), path_from_json(L, C, field(f, "target"))};
            if (C.path_src(gc.source) != C.path_src(gc.target) || C.path_tgt(gc.source) != C.path_tgt(gc.target))
                throw IllTypedPath("2-cell '" + label + "' has non-parallel boundaries");
            insert_label(L.two, label, C.num2());
            C.gen_two_cells.push_back(std::move(gc));
        }
        for (const auto &r : j.value("relations", Json::array()))
            C.relations.push_back({expr_from_json(L, C, field(r, "lhs")), expr_from_json(L, C, field(r, "rhs"))});

        const Json &F = field(j, "functor");
        for (const auto &n : field(F, "on0")) {
            int v = as_int(n, "on0");
            if (v < 1) throw ParseError("0-cells are positive integers");
            s.F.on0.push_back(v);
        }
        if (s.F.on0.size() != static_cast<std::size_t>(C.num0())) throw ParseError("functor on0 must list one entry per 0-cell");
        s.F.on1 = one_cells_from_json(field(F, "on1"), static_cast<std::size_t>(C.num1()), "functor on1");
        s.F.on2 = two_cells_from_json(F.value("on2", Json::array()), static_cast<std::size_t>(C.num2()), "functor on2");
        if (F.contains("F1"))
            s.F.F1 = two_cells_from_json(F.at("F1"), static_cast<std::size_t>(C.num0()), "functor F1");
        else
            for (int n : s.F.on0) s.F.F1.push_back(id2(id1(n)));
        validate_functor(C, s.F);

        const Json &q   = field(j, "qsystem");
        const Json &psi = field(q, "psi");
        s.q.psi.comp0   = one_cells_from_json(field(psi, "comp0"), static_cast<std::size_t>(C.num0()), "psi comp0");
        s.q.psi.comp1   = two_cells_from_json(field(psi, "comp1"), static_cast<std::size_t>(C.num1()), "psi comp1");
        s.q.m.comp      = two_cells_from_json(field(q, "m"), static_cast<std::size_t>(C.num0()), "m");
        s.q.i.comp      = two_cells_from_json(field(q, "i"), static_cast<std::size_t>(C.num0()), "i");
        return s;
    });
}

Json split_file(const SplitResult &s) {
    return Json{{"schema", 1},
                {"kind", "split"},
                {"k", s.k},
                {"block_dims", s.block_dims},
                {"standard", s.standard},
                {"X", to_json(s.pair.X)},
                {"Xbar", to_json(s.pair.Xbar)},
                {"ev", to_json(s.pair.ev)},
                {"coev", to_json(s.pair.coev)},
                {"gamma", to_json(s.gamma)}};
}

Json report_json(const Report &r, const std::string &command) {
    Json checks = Json::array();
    for (const auto &c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"anchor", c.anchor}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
    Json notes = Json::object();
    for (const auto &[k, v] : r.notes) notes[k] = v;
    return Json{{"schema", 1}, {"command", command}, {"pass", r.pass()}, {"max_residual", r.max_residual()}, {"checks", checks}, {"notes", notes}};
}

Json parse_text(const std::string &text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("not valid JSON");
    if (!j.is_object() || !j.contains("schema")) throw ParseError("missing \"schema\" field");
    if (j.at("schema") != 1) throw ParseError("unsupported schema version");
    return j;
}

Json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

} // namespace qsys
