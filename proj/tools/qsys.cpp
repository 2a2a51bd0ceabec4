#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qsys/serialize.hpp"

using namespace qsys;

namespace {

constexpr int kPass = 0, kFail = 1, kParse = 2, kShape = 3;

struct Common {
    std::string   file;
    double        tol = 0, gap_tol = 0;
    CLI::Option  *tol_opt = nullptr, *gap_opt = nullptr;
    std::uint64_t seed     = 0;
    bool          has_seed = false;
    bool          json     = false;
    std::string   out;
};

void add_common(CLI::App *cmd, Common &c, bool with_file) {
    if (with_file) cmd->add_option("file", c.file, "Input file")->required();
    c.tol_opt = cmd->add_option("--tol", c.tol, "Absolute residual tolerance");
    c.gap_opt = cmd->add_option("--gap-tol", c.gap_tol, "Spectral gap tolerance");
    cmd->add_option_function<std::uint64_t>("--seed", [&c](const std::uint64_t &s) {
        c.seed     = s;
        c.has_seed = true;
    }, "Random seed");
    cmd->add_flag("--json", c.json, "Print the report as JSON");
    cmd->add_option("--out", c.out, "Output path");
}

// Flags override the file; an unset gap tolerance is raised to atol when needed.
Tolerance resolve(const Common &c, const FileOptions &f) {
    Tolerance t = f.has_tol ? f.tol : Tolerance{};
    if (c.tol_opt->count()) t.atol = c.tol;
    if (c.gap_opt->count()) t.gap_tol = c.gap_tol;
    if (!c.gap_opt->count() && !f.has_gap_tol && t.gap_tol < t.atol) t.gap_tol = t.atol;
    t.validate();
    return t;
}

std::uint64_t resolve_seed(const Common &c, const FileOptions &f) { return c.has_seed ? c.seed : (f.has_seed ? f.seed : 0); }

void write_text(const std::string &path, const std::string &text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw std::runtime_error("cannot write '" + path + "'");
    o << text;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

int emit(const Report &r, const Common &c, const std::string &command, bool report_to_out) {
    std::string js = dump(report_json(r, command));
    if (c.json)
        std::cout << js;
    else
        std::cout << r.table() << (r.pass() ? "all checks pass\n" : "some checks FAIL\n");
    if (report_to_out && !c.out.empty()) write_text(c.out, js);
    return r.pass() ? kPass : kFail;
}

int cmd_check_qsystem(const Common &c) {
    FileOptions opts;
    QSystem     q   = qsystem_from_file(read_file(c.file), &opts);
    Tolerance   tol = resolve(c, opts);
    return emit(check_qsystem(q, tol), c, "check-qsystem", true);
}

int cmd_split_qsystem(const Common &c) {
    FileOptions opts;
    QSystem     q   = qsystem_from_file(read_file(c.file), &opts);
    Tolerance   tol = resolve(c, opts);
    SplitResult s   = split_qsystem(q, tol, resolve_seed(c, opts));
    Report      r;
    r.append(check_dual_pair(s.pair, tol), "dual pair ");
    r.append(check_qsystem_iso(s.gamma, qsystem_from_dual(s.pair), q, tol), "gamma ");
    r.note("k", s.k);
    for (std::size_t t = 0; t < s.block_dims.size(); ++t) r.note("block " + std::to_string(t + 1) + " dim", s.block_dims[t]);
    if (!c.out.empty()) write_text(c.out, dump(split_file(s)));
    return emit(r, c, "split-qsystem", false);
}

int cmd_verify_fun(const Common &c) {
    FileOptions opts;
    Scenario    s   = scenario_from_file(read_file(c.file), &opts);
    Tolerance   tol = resolve(c, opts);
    Report      r;
    r.append(check_endf_qsystem(s.C, s.F, s.q, tol), "input ");
    if (r.pass()) r.append(verify_main_theorem(s.C, s.F, s.q, tol, resolve_seed(c, opts)));
    return emit(r, c, "verify-fun", true);
}

QSystem bounded_qsystem(Rng &rng, int n, int max_dim) {
    for (;;) {
        QSystem q = random_qsystem(rng, n, 2);
        if (q.Q.dim() <= max_dim) return q;
    }
}

int cmd_gen(const Common &c, const std::string &kind, int size, const std::string &from) {
    Rng  rng(c.seed);
    Json j;
    if (kind == "qsystem") {
        if (size < 1 || size > 4) throw std::invalid_argument("--size for qsystem must be in [1, 4]");
        j = qsystem_file(bounded_qsystem(rng, size, 64));
    } else if (kind == "scenario") {
        if (size < 1 || size > 4) throw std::invalid_argument("--size for scenario must be in [1, 4]");
        j = scenario_file(random_scenario(rng, 3, size));
    } else {
        if (size < 1 || size > 3) throw std::invalid_argument("--size for constant must be in [1, 3]");
        QSystem q = from.empty() ? bounded_qsystem(rng, size, 16) : qsystem_from_file(read_file(from));
        j         = scenario_file(constant_functor_scenario(random_presentation(rng, 3, 3), q));
    }
    if (c.has_seed) j["seed"] = c.seed;
    if (c.out.empty())
        std::cout << dump(j);
    else
        write_text(c.out, dump(j));
    return kPass;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Q-system and functor category checks in graded matrices"};
    app.require_subcommand(1);
    Common cq, cs, cv, cg;
    auto  *check = app.add_subcommand("check-qsystem", "Check the Q-system axioms of a file");
    add_common(check, cq, true);
    auto *split = app.add_subcommand("split-qsystem", "Split a Q-system as X (x) Xbar");
    add_common(split, cs, true);
    auto *verify = app.add_subcommand("verify-fun", "Run the splitting construction in Fun(C, D) and verify it");
    add_common(verify, cv, true);
    auto       *gen = app.add_subcommand("gen", "Generate a random input file");
    std::string kind = "qsystem", from;
    int         size = 2;
    add_common(gen, cg, false);
    gen->add_option("--kind", kind, "qsystem, scenario or constant")->check(CLI::IsMember({"qsystem", "scenario", "constant"}));
    gen->add_option("--size", size, "Size parameter");
    gen->add_option("--from", from, "Q-system file for --kind constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kParse;
    }

    try {
        if (*check) return cmd_check_qsystem(cq);
        if (*split) return cmd_split_qsystem(cs);
        if (*verify) return cmd_verify_fun(cv);
        return cmd_gen(cg, kind, size, from);
    } catch (const ParseError &e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const InvalidTolerance &e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument &e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const CellMismatch &e) {
        std::cerr << e.what() << "\n";
        return kShape;
    } catch (const IllTypedPath &e) {
        std::cerr << e.what() << "\n";
        return kShape;
    } catch (const DimensionMismatch &e) {
        std::cerr << e.what() << "\n";
        return kShape;
    } catch (const EmptyColumn &e) {
        std::cerr << e.what() << "\n";
        return kShape;
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return kFail;
    }
}
