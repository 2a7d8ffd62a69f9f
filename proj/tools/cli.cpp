#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vfdeg/boundary.hpp"
#include "vfdeg/degree.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/field.hpp"
#include "vfdeg/linalg.hpp"
#include "vfdeg/region.hpp"
#include "vfdeg/verify.hpp"

namespace vfdeg::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string field_src, catalog_name, region_spec, out_path;
    std::vector<std::string> params;
    std::string method = "auto";
    std::string check;
    std::string mode = "opposite";
    std::string point_spec;
    std::string a_block, r_block;
    double radius = 1.0;
    long long seed = 1234;
    bool reverse = false;
    bool dump_samples = false;
    double antipodal_tol = 1e-6;
    double resolution = 0.0;
    int samples = 0;
    DegreeOptions degree;
    double tangency_tol = defaults::tangency_tol;
    std::optional<long long> chiK, chiS, chiSstar, chiL, chiN, chiA, chiR;
};

// Parameter values may be plain reals or simple fractions like 8/3.
double parse_value(const std::string& text) {
    auto slash = text.find('/');
    char* end = nullptr;
    if (slash != std::string::npos) {
        double num = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + slash) throw input_error("bad parameter value '" + text + "'");
        const char* dstart = text.c_str() + slash + 1;
        double den = std::strtod(dstart, &end);
        if (end != text.c_str() + text.size() || den == 0.0)
            throw input_error("bad parameter value '" + text + "'");
        return num / den;
    }
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) throw input_error("bad parameter value '" + text + "'");
    return v;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw input_error("parameter must be name=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
    }
    return out;
}

std::vector<double> parse_point(const std::string& spec) {
    std::vector<double> p;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto next = spec.find(',', pos);
        std::string item = spec.substr(pos, next == std::string::npos ? next : next - pos);
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw input_error("bad point component '" + item + "'");
        p.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return p;
}

FieldDef make_field(const Options& o) {
    bool have_src = !o.field_src.empty(), have_cat = !o.catalog_name.empty();
    if (have_src == have_cat)
        throw input_error("provide exactly one of --field and --catalog");
    auto params = parse_params(o.params);
    if (have_cat) return catalog(o.catalog_name, params);
    // A textual field needs its dimension; take it from the region when given,
    // else from the component count.
    if (!o.region_spec.empty()) {
        Region R = parse_region(o.region_spec);
        return parse_field(o.field_src, R.n, params);
    }
    int n = 1;
    int depth = 0;
    for (char c : o.field_src) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0) ++n;
    }
    return parse_field(o.field_src, n, params);
}

Region make_region(const Options& o) {
    if (o.region_spec.empty()) throw input_error("--region is required");
    return parse_region(o.region_spec);
}

ordered_json config_echo(const std::string& subcommand, const Options& o) {
    ordered_json cfg;
    cfg["subcommand"] = subcommand;
    if (!o.field_src.empty()) cfg["field"] = o.field_src;
    if (!o.catalog_name.empty()) cfg["catalog"] = o.catalog_name;
    if (!o.params.empty()) {
        ordered_json p;
        for (const auto& [k, v] : parse_params(o.params)) p[k] = v;
        cfg["params"] = p;
    }
    if (!o.region_spec.empty()) cfg["region"] = o.region_spec;
    if (!o.check.empty()) cfg["check"] = o.check;
    if (!o.point_spec.empty()) cfg["point"] = o.point_spec;
    cfg["method"] = o.method;
    cfg["seed"] = o.seed;
    cfg["tolerances"] = {{"newton_tol", o.degree.newton_tol},
                         {"tangency_tol", o.tangency_tol},
                         {"quad_agreement", o.degree.quad_agreement},
                         {"max_refinements", o.degree.max_refinements},
                         {"seeds_per_axis", o.degree.seeds_per_axis},
                         {"samples", o.samples},
                         {"resolution", o.resolution}};
    auto chi = [&](const char* name, const std::optional<long long>& v) {
        if (v) cfg[name] = *v;
    };
    chi("chi_K", o.chiK);
    chi("chi_S", o.chiS);
    chi("chi_Sstar", o.chiSstar);
    chi("chi_L", o.chiL);
    chi("chi_N", o.chiN);
    chi("chi_A", o.chiA);
    chi("chi_R", o.chiR);
    if (o.reverse) cfg["reverse"] = true;
    return cfg;
}

ordered_json zeros_json(const std::vector<Zero>& zeros) {
    ordered_json arr = ordered_json::array();
    for (const auto& z : zeros)
        arr.push_back({{"point", z.point},
                       {"index", z.index},
                       {"residual", z.residual},
                       {"det_jacobian", z.det_jac}});
    return arr;
}

ordered_json degree_json(const DegreeReport& rep) {
    ordered_json j;
    j["method"] = rep.method;
    j["raw"] = rep.raw;
    j["degree"] = rep.degree;
    j["refinements"] = rep.refinements;
    if (std::isfinite(rep.min_boundary_f)) j["min_boundary_field_norm"] = rep.min_boundary_f;
    j["zeros"] = zeros_json(rep.zeros);
    j["cross_validated"] = rep.cross_validated;
    return j;
}

ordered_json boundary_json(const BlockBoundary& bb, bool dump_samples) {
    ordered_json j;
    ordered_json comps = ordered_json::array();
    for (const auto& c : bb.components) {
        int ex = 0, en = 0, tg = 0;
        for (const auto& s : c.samples) {
            if (s.cls == SampleClass::Exit) ++ex;
            else if (s.cls == SampleClass::Entrance) ++en;
            else ++tg;
        }
        ordered_json cj{{"component", c.region_component},
                        {"verdict", c.verdict},
                        {"samples", c.samples.size()},
                        {"exit", ex},
                        {"entrance", en},
                        {"tangent", tg}};
        if (dump_samples) {
            ordered_json pts = ordered_json::array();
            for (const auto& s : c.samples)
                pts.push_back({{"point", s.point},
                               {"label", s.cls == SampleClass::Exit      ? "exit"
                                         : s.cls == SampleClass::Entrance ? "entrance"
                                                                          : "tangent"}});
            cj["points"] = pts;
        }
        comps.push_back(cj);
    }
    j["components"] = comps;
    if (bb.n == 2) {
        j["tangency_components"] = bb.tangency_components;
        j["degenerate_tangency"] = bb.degenerate_tangency;
    }
    j["tolerance"] = bb.tol;
    j["min_field_norm"] = bb.min_f_norm;
    return j;
}

void euler_entry_json(ordered_json& euler, ordered_json& prov, const char* name,
                      const std::optional<EulerEntry>& e) {
    if (!e) return;
    euler[name] = e->value;
    prov[name] = e->provenance();
}

ordered_json verify_json(const VerifyReport& rep) {
    ordered_json j;
    j["check"] = rep.check;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["verdict"] = to_string(rep.verdict);
    ordered_json euler, prov;
    euler_entry_json(euler, prov, "chi_N", rep.euler.chiN);
    euler_entry_json(euler, prov, "chi_L", rep.euler.chiL);
    euler_entry_json(euler, prov, "chi_K", rep.euler.chiK);
    euler_entry_json(euler, prov, "chi_S", rep.euler.chiS);
    euler_entry_json(euler, prov, "chi_Sstar", rep.euler.chiSstar);
    if (!euler.empty()) {
        euler["provenance"] = prov;
        j["euler"] = euler;
    }
    if (!rep.values.empty()) j["values"] = rep.values;
    j["inputs"] = rep.inputs;
    j["notes"] = rep.notes;
    return j;
}

VerifyOptions make_verify_options(const Options& o) {
    VerifyOptions v;
    v.chiK = o.chiK;
    v.chiS = o.chiS;
    v.chiSstar = o.chiSstar;
    v.chiL = o.chiL;
    v.chiN = o.chiN;
    v.chiA = o.chiA;
    v.chiR = o.chiR;
    if (!o.a_block.empty()) v.a_block = parse_region(o.a_block);
    if (!o.r_block.empty()) v.r_block = parse_region(o.r_block);
    v.reverse = o.reverse;
    v.resolution = o.resolution;
    v.samples = o.samples;
    v.tangency_tol = o.tangency_tol;
    v.degree = o.degree;
    return v;
}

VerifyReport dispatch_check(const std::string& check, const FieldDef& f, const Region& N,
                            const VerifyOptions& vo) {
    if (check == "conley") return check_degree_conley(f, N, vo);
    if (check == "eq1") return check_eq1(f, N, vo);
    if (check == "planar-bound") return check_planar_bound(f, N, vo);
    if (check == "poincare-hopf") return check_poincare_hopf(f, N, vo);
    if (check == "tangency") return check_tangency(f, N, vo);
    if (check == "nonsaddle") return check_nonsaddle(f, N, vo);
    if (check == "connection") return detect_connection(f, N, vo);
    throw input_error("unknown check '" + check +
                      "' (expected conley, eq1, planar-bound, poincare-hopf, tangency, "
                      "nonsaddle, connection or antipodal)");
}

// ----------------------------------------------------------------- suite --

struct SuiteRow {
    std::string field, region, check, verdict;
    long long lhs = 0, rhs = 0;
    std::string note;
};

// Random planar polynomial fields of component degree <= 3 with printable
// coefficients, for the seeded property rows.
FieldDef random_planar_field(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    auto component = [&] {
        const char* monos[10] = {"",      "x",     "y",     "x^2", "x*y",
                                 "y^2",   "x^3",   "x^2*y", "x*y^2", "y^3"};
        std::string src;
        char buf[64];
        for (int k = 0; k < 10; ++k) {
            std::snprintf(buf, sizeof buf, "%.10g", coef(rng));
            if (k) src += " + ";
            src += "(";
            src += buf;
            src += ")";
            if (monos[k][0] != '\0') {
                src += "*";
                src += monos[k];
            }
        }
        return src;
    };
    std::string src = component() + ", " + component();
    return parse_field(src, 2, {});
}

// Draws seeded random planar fields over circles that avoid zeros and runs
// `body` on each valid pair; pairs rejected by the guards are re-drawn, and
// body failures are collected by the caller.
template <class Body>
int for_random_planar_fields(long long seed, int wanted, int& skipped, Body&& body) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> rad(0.8, 2.0);
    int done = 0, guard = 0;
    while (done < wanted && guard < wanted * 40) {
        ++guard;
        FieldDef f = random_planar_field(rng);
        Region N = Region::ball({0.0, 0.0}, rad(rng));
        try {
            body(f, N);
            ++done;
        } catch (const numerical_error&) {
            ++skipped; // degenerate zero / boundary zero / non-convergence
        }
    }
    if (done < wanted)
        throw numerical_error("random-field suite could not assemble enough valid cases");
    return done;
}

std::vector<SuiteRow> run_suite(const Options& o) {
    std::vector<SuiteRow> rows;
    auto add_check = [&](const std::string& cat, const std::string& region,
                         const std::string& check, VerifyOptions vo) {
        FieldDef f = catalog(cat, cat == "lorenz" ? std::map<std::string, double>{{"r", 24.0}}
                                                  : std::map<std::string, double>{});
        Region N = parse_region(region);
        vo.degree = o.degree;
        SuiteRow row{cat, region, check, "", 0, 0, ""};
        try {
            VerifyReport rep = dispatch_check(check, f, N, vo);
            row.verdict = to_string(rep.verdict);
            row.lhs = rep.lhs;
            row.rhs = rep.rhs;
            if (!rep.notes.empty()) row.note = rep.notes.back();
        } catch (const numerical_error& e) {
            row.verdict = "error";
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    };
    auto add_antipodal = [&](const std::string& cat, const std::string& region,
                             const std::string& mode) {
        FieldDef f = catalog(cat, cat == "lorenz" ? std::map<std::string, double>{{"r", 24.0}}
                                                  : std::map<std::string, double>{});
        Region N = parse_region(region);
        SuiteRow row{cat, region, "antipodal(" + mode + ")", "", 0, 0, ""};
        try {
            AntipodalResult r = antipodal_search(f, N, mode, o.antipodal_tol, o.samples);
            row.verdict = r.found ? "pass" : "fail";
            std::ostringstream os;
            os << "residual " << r.residual;
            row.note = os.str();
        } catch (const numerical_error& e) {
            row.verdict = "error";
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    };
    auto chi = [](long long k) { return std::optional<long long>(k); };

    VerifyOptions none;
    add_check("attractor(2)", "ball:0,0:1", "conley", none);
    add_check("attractor(2)", "ball:0,0:1", "eq1", none);
    add_check("attractor(2)", "ball:0,0:1", "planar-bound", none);
    add_check("attractor(2)", "ball:0,0:1", "tangency", none);
    add_check("attractor(2)", "ball:0,0:1", "nonsaddle", none);
    add_check("repeller(2)", "ball:0,0:1", "conley", none);
    add_check("repeller(2)", "ball:0,0:1", "eq1", none);
    add_check("repeller(2)", "ball:0,0:1", "planar-bound", none);
    add_check("repeller(2)", "ball:0,0:1", "poincare-hopf", none);
    add_check("repeller(2)", "ball:0,0:1", "tangency", none);
    add_check("repeller(2)", "ball:0,0:1", "nonsaddle", none);
    add_check("attractor(3)", "ball:0,0,0:1", "conley", none);
    add_check("attractor(3)", "ball:0,0,0:1", "eq1", none);
    add_check("attractor(3)", "ball:0,0,0:1", "nonsaddle", none);
    add_check("repeller(3)", "ball:0,0,0:1", "conley", none);
    add_check("repeller(3)", "ball:0,0,0:1", "eq1", none);
    add_check("repeller(3)", "ball:0,0,0:1", "poincare-hopf", none);
    add_check("repeller(3)", "ball:0,0,0:1", "nonsaddle", none);
    add_check("saddle2", "box:-1,-1:1,1", "conley", none);
    {
        VerifyOptions vo;
        vo.chiK = chi(1);
        vo.chiS = chi(2);
        add_check("saddle2", "box:-1,-1:1,1", "eq1", vo);
    }
    {
        VerifyOptions vo;
        vo.chiK = chi(1);
        add_check("saddle2", "box:-1,-1:1,1", "planar-bound", vo);
    }
    add_check("saddle2", "box:-1,-1:1,1", "tangency", none);
    add_check("limit_cycle", "shell:0,0:0.5:1.5", "conley", none);
    add_check("limit_cycle", "shell:0,0:0.5:1.5", "eq1", none);
    add_check("limit_cycle", "shell:0,0:0.5:1.5", "planar-bound", none);
    add_check("limit_cycle", "shell:0,0:0.5:1.5", "tangency", none);
    add_check("limit_cycle", "shell:0,0:0.5:1.5", "nonsaddle", none);
    add_check("segment_flow", "box:-2,-1:2,1", "conley", none);
    {
        VerifyOptions vo;
        vo.chiK = chi(1);
        vo.chiS = chi(1);
        add_check("segment_flow", "box:-2,-1:2,1", "eq1", vo);
    }
    {
        VerifyOptions vo;
        vo.chiK = chi(1);
        add_check("segment_flow", "box:-2,-1:2,1", "planar-bound", vo);
    }
    add_check("segment_flow", "box:-2,-1:2,1", "tangency", none);
    {
        VerifyOptions vo;
        vo.chiA = chi(1);
        vo.chiR = chi(1);
        vo.chiS = chi(1);
        vo.chiK = chi(1);
        add_check("segment_flow", "box:-2,-1:2,1", "connection", vo);
    }
    {
        VerifyOptions vo;
        vo.chiK = chi(1);
        vo.chiS = chi(0);
        add_check("lorenz", "ball:0,0,0:60", "eq1", vo);
    }
    add_check("lorenz", "ball:0,0,0:60", "conley", none); // mixed boundary: inconclusive
    {
        VerifyOptions vo;
        vo.chiA = chi(2);
        vo.chiR = chi(-1);
        vo.chiS = chi(0);
        vo.chiK = chi(1);
        add_check("lorenz", "ball:0,0,0:60", "connection", vo);
    }
    {
        VerifyOptions vo;
        vo.chiK = chi(-1);
        vo.chiS = chi(0);
        add_check("lorenz", "box:-6,-6,-6:6,6,6", "eq1", vo);
    }
    add_antipodal("even_field", "ball:0,0:1", "same");
    add_antipodal("attractor(2)", "ball:0,0:1", "opposite");
    add_antipodal("lorenz", "ball:0,0,0:60", "opposite");

    // Seeded random property rows.
    {
        SuiteRow row{"random-poly[50]", "ball:0,0:*", "winding-vs-zeros", "", 0, 0, ""};
        int skipped = 0, mismatches = 0;
        DegreeOptions dopt = o.degree;
        dopt.seeds_per_axis = 24;
        try {
            for_random_planar_fields(o.seed, 50, skipped, [&](const FieldDef& f, const Region& N) {
                DegreeReport w = winding_degree(f, N, dopt);
                DegreeReport z = zero_count_degree(f, N, dopt);
                if (w.degree != z.degree) ++mismatches;
            });
            row.verdict = mismatches == 0 ? "pass" : "fail";
            row.lhs = mismatches;
            std::ostringstream os;
            os << skipped << " draws skipped";
            row.note = os.str();
        } catch (const numerical_error& e) {
            row.verdict = "error";
            row.note = e.what();
        }
        rows.push_back(row);
    }
    {
        SuiteRow row{"random-poly[50]", "ball:0,0:*", "planar-bound-random", "", 0, 0, ""};
        int skipped = 0, violations = 0;
        DegreeOptions dopt = o.degree;
        dopt.seeds_per_axis = 24;
        try {
            for_random_planar_fields(o.seed + 1, 50, skipped,
                                     [&](const FieldDef& f, const Region& N) {
                                         DegreeReport z = zero_count_degree(f, N, dopt);
                                         // chi(K) from the zero structure: each
                                         // nondegenerate zero is one point.
                                         long long chiK = static_cast<long long>(z.zeros.size());
                                         if (z.degree > chiK) ++violations;
                                     });
            row.verdict = violations == 0 ? "pass" : "fail";
            row.lhs = violations;
            std::ostringstream os;
            os << skipped << " draws skipped";
            row.note = os.str();
        } catch (const numerical_error& e) {
            row.verdict = "error";
            row.note = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

// ------------------------------------------------------------- dispatch --

RunResult finish(RunResult r, const Options& o) {
    if (!o.out_path.empty()) {
        std::ofstream out(o.out_path);
        if (!out) {
            r.exit_code = 3;
            r.summary = "cannot write report to " + o.out_path;
            return r;
        }
        out << r.report.dump(2) << '\n';
    }
    return r;
}

} // namespace

RunResult run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Brouwer degrees, vector-field indices and isolating-block checks"};
    app.require_subcommand(1);

    std::string config_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--field", o.field_src, "comma-separated component expressions");
        cmd->add_option("--catalog", o.catalog_name, "built-in field name");
        cmd->add_option("--param", o.params, "parameter binding name=value (repeatable)");
        cmd->add_option("--region", o.region_spec,
                        "ball:cx,cy[,cz]:r | box:lo..:hi.. | shell:c..:rin:rout");
        cmd->add_option("--out", o.out_path, "write the JSON report here");
        cmd->add_option("--seed", o.seed, "seed for randomized property runs");
        cmd->add_option("--config", config_path, "JSON file with the same keys as the flags");
        cmd->add_option("--newton-tol", o.degree.newton_tol, "zero acceptance tolerance");
        cmd->add_option("--tangency-tol", o.tangency_tol, "relative tangency tolerance");
        cmd->add_option("--samples", o.samples, "boundary samples per loop / total");
        cmd->add_option("--seeds-per-axis", o.degree.seeds_per_axis, "Newton seed grid");
        cmd->add_option("--quad-agreement", o.degree.quad_agreement,
                        "required agreement of successive quadrature refinements");
        cmd->add_option("--max-refinements", o.degree.max_refinements, "quadrature doublings");
        cmd->add_option("--resolution", o.resolution, "rasterization cell width (0 = auto)");
        return cmd;
    };

    auto* cmd_degree = add_common(app.add_subcommand("degree", "Brouwer degree of F over a region"));
    cmd_degree->add_option("--method", o.method, "auto | winding | kronecker | zeros")
        ->check(CLI::IsMember({"auto", "winding", "kronecker", "zeros"}));

    auto* cmd_index = add_common(app.add_subcommand("index", "index of an isolated zero"));
    cmd_index->add_option("--point", o.point_spec, "the zero, e.g. 0,0,0")->required();
    cmd_index->add_option("--radius", o.radius, "index ball radius")->required();

    auto* cmd_classify =
        add_common(app.add_subcommand("classify", "exit/entrance/tangency decomposition of the boundary"));
    cmd_classify->add_flag("--dump-samples", o.dump_samples, "include labeled sample points");

    auto* cmd_verify = add_common(app.add_subcommand("verify", "check one degree identity"));
    cmd_verify->add_option("check", o.check, "conley | eq1 | planar-bound | poincare-hopf | "
                                             "tangency | nonsaddle | connection | antipodal")
        ->required();
    cmd_verify->add_option("--chi-K", o.chiK, "supplied chi(K)");
    cmd_verify->add_option("--chi-S", o.chiS, "supplied chi(S)");
    cmd_verify->add_option("--chi-Sstar", o.chiSstar, "supplied chi(S*)");
    cmd_verify->add_option("--chi-L", o.chiL, "supplied chi(L)");
    cmd_verify->add_option("--chi-N", o.chiN, "supplied chi(N)");
    cmd_verify->add_option("--chi-A", o.chiA, "supplied chi(A)");
    cmd_verify->add_option("--chi-R", o.chiR, "supplied chi(R)");
    cmd_verify->add_option("--a-block", o.a_block, "region rasterized to chi(A)");
    cmd_verify->add_option("--r-block", o.r_block, "region rasterized to chi(R)");
    cmd_verify->add_flag("--reverse", o.reverse, "check the reversed field -F");
    cmd_verify->add_option("--mode", o.mode, "antipodal mode: same | opposite");
    cmd_verify->add_option("--antipodal-tol", o.antipodal_tol, "antipodal residual bound");

    auto* cmd_catalog = app.add_subcommand("catalog", "list built-in fields");
    std::string catalog_query;
    cmd_catalog->add_option("name", catalog_query, "show one entry");
    cmd_catalog->add_option("--out", o.out_path, "write the JSON report here");

    auto* cmd_suite = add_common(
        app.add_subcommand("suite", "run the full catalog verification matrix"));
    cmd_suite->add_option("--antipodal-tol", o.antipodal_tol, "antipodal residual bound");

    // A --config file supplies defaults for the same keys; explicit flags win
    // because they are parsed later.
    std::vector<std::string> argv = args;
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
        if (argv[i] == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) return {3, {{"error", "cannot read config " + argv[i + 1]}}, "input error"};
            nlohmann::json cfg;
            try {
                in >> cfg;
            } catch (const nlohmann::json::exception& e) {
                return {3, {{"error", std::string("bad config: ") + e.what()}}, "input error"};
            }
            std::vector<std::string> injected;
            for (auto it = cfg.begin(); it != cfg.end(); ++it) {
                if (it.key() == "params" && it->is_object()) {
                    for (auto p = it->begin(); p != it->end(); ++p) {
                        injected.push_back("--param");
                        injected.push_back(p.key() + "=" +
                                           (p->is_string() ? p->get<std::string>()
                                                           : nlohmann::json(*p).dump()));
                    }
                } else if (it->is_boolean()) {
                    if (it->get<bool>()) injected.push_back("--" + it.key());
                } else {
                    injected.push_back("--" + it.key());
                    injected.push_back(it->is_string() ? it->get<std::string>()
                                                       : nlohmann::json(*it).dump());
                }
            }
            argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(i) + 2, injected.begin(),
                        injected.end());
            break;
        }
    }

    RunResult result;
    auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);

        ordered_json rep;
        rep["tool_version"] = tool_version;

        if (cmd_degree->parsed()) {
            rep["config"] = config_echo("degree", o);
            FieldDef f = make_field(o);
            Region N = make_region(o);
            DegreeMethod m = o.method == "winding"   ? DegreeMethod::Winding
                             : o.method == "kronecker" ? DegreeMethod::Kronecker
                             : o.method == "zeros"     ? DegreeMethod::Zeros
                                                       : DegreeMethod::Auto;
            DegreeReport dr = compute_degree(f, N, m, o.degree);
            rep.update(degree_json(dr), true);
            rep["verdict"] = dr.cross_validated ? "agree" : "computed";
            rep["warnings"] = dr.warnings;
            std::ostringstream os;
            os << "deg(F,N) = " << dr.degree << " [" << dr.method
               << (dr.cross_validated ? ", cross-validated]" : "]");
            result.summary = os.str();
        } else if (cmd_index->parsed()) {
            rep["config"] = config_echo("index", o);
            FieldDef f = make_field(o);
            std::vector<double> z = parse_point(o.point_spec);
            int idx = point_index(f, z, o.radius, o.degree);
            rep["method"] = "point-index";
            rep["degree"] = idx;
            rep["point"] = z;
            rep["radius"] = o.radius;
            result.summary = "index = " + std::to_string(idx);
        } else if (cmd_classify->parsed()) {
            rep["config"] = config_echo("classify", o);
            FieldDef f = make_field(o);
            Region N = make_region(o);
            BlockBoundary bb = classify_boundary(f, N, o.samples, o.tangency_tol);
            rep["boundary"] = boundary_json(bb, o.dump_samples);
            std::ostringstream os;
            os << "components:";
            for (const auto& c : bb.components) os << ' ' << c.verdict;
            if (bb.n == 2) os << "; tangency components: " << bb.tangency_components;
            result.summary = os.str();
        } else if (cmd_verify->parsed()) {
            rep["config"] = config_echo("verify", o);
            FieldDef f = make_field(o);
            Region N = make_region(o);
            if (o.check == "antipodal") {
                AntipodalResult r = antipodal_search(f, N, o.mode, o.antipodal_tol, o.samples);
                rep["check"] = "antipodal";
                rep["mode"] = r.mode;
                rep["found"] = r.found;
                rep["residual"] = r.residual;
                if (r.found) rep["point"] = r.point;
                rep["verdict"] = r.found ? "pass" : "fail";
                result.summary = r.found ? "antipodal point found (residual " +
                                               std::to_string(r.residual) + ")"
                                         : "no antipodal point below tolerance";
                if (!r.found) result.exit_code = 1;
            } else {
                VerifyReport vr = dispatch_check(o.check, f, N, make_verify_options(o));
                rep.update(verify_json(vr), true);
                std::ostringstream os;
                os << o.check << ": " << to_string(vr.verdict) << " (lhs " << vr.lhs << ", rhs "
                   << vr.rhs << ")";
                result.summary = os.str();
                if (vr.verdict == Verdict::Fail) result.exit_code = 1;
            }
        } else if (cmd_catalog->parsed()) {
            ordered_json entries = ordered_json::array();
            auto entry = [&](const std::string& name) {
                FieldDef f = catalog(name);
                ordered_json e;
                e["name"] = name;
                e["n"] = f.n;
                e["components"] = f.source;
                if (!f.params.empty()) e["defaults"] = f.params;
                entries.push_back(e);
            };
            if (!catalog_query.empty()) entry(catalog_query);
            else
                for (const char* name : {"lorenz", "saddle2", "attractor(2)", "attractor(3)",
                                         "repeller(2)", "repeller(3)", "limit_cycle",
                                         "segment_flow", "even_field"})
                    entry(name);
            rep["catalog"] = entries;
            result.summary = std::to_string(entries.size()) + " catalog entries";
        } else if (cmd_suite->parsed()) {
            rep["config"] = config_echo("suite", o);
            auto rows = run_suite(o);
            ordered_json jrows = ordered_json::array();
            int fails = 0, inconclusive = 0;
            std::ostringstream table;
            table << "field            region               check               verdict"
                  << "         lhs   rhs\n";
            for (const auto& r : rows) {
                jrows.push_back({{"field", r.field},
                                 {"region", r.region},
                                 {"check", r.check},
                                 {"verdict", r.verdict},
                                 {"lhs", r.lhs},
                                 {"rhs", r.rhs},
                                 {"note", r.note}});
                if (r.verdict == "fail" || r.verdict == "error") ++fails;
                if (r.verdict == "inconclusive") ++inconclusive;
                char line[256];
                std::snprintf(line, sizeof line, "%-16s %-20s %-19s %-15s %4lld  %4lld\n",
                              r.field.c_str(), r.region.c_str(), r.check.c_str(),
                              r.verdict.c_str(), r.lhs, r.rhs);
                table << line;
            }
            rep["suite"] = jrows;
            result.summary = table.str() + std::to_string(rows.size()) + " checks, " +
                             std::to_string(fails) + " failed, " + std::to_string(inconclusive) +
                             " inconclusive";
            if (fails > 0) result.exit_code = 1;
        }

        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep["timing"] = {{"seconds", dt}};
        result.report = std::move(rep);
        return finish(std::move(result), o);
    } catch (const CLI::CallForHelp&) {
        result.summary = app.help();
        result.report = {{"help", app.help()}};
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 3;
        result.summary = std::string("argument error: ") + e.what();
        result.report = {{"error", e.what()}};
        return result;
    } catch (const input_error& e) {
        result.exit_code = 3;
        result.summary = std::string("input error: ") + e.what();
        result.report = {{"error", e.what()}};
        return finish(std::move(result), o);
    } catch (const numerical_error& e) {
        result.exit_code = 2;
        result.summary = std::string("numerical failure: ") + e.what();
        result.report = {{"error", e.what()}};
        return finish(std::move(result), o);
    }
}

} // namespace vfdeg::cli
