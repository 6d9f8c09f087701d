// cqms: validation, Peter-Weyl, truncation and bound reports for finite
// quantum groups given as JSON files.

#include "cqms/cqms.hpp"
#include "cqms/io.hpp"
#include "cqms/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cqms;

namespace {

struct Options {
    std::string input;
    std::string lambda;
    std::string seminorm = "auto";
    std::string state = "canonical";
    std::string algebra = "function";
    std::string chain = "incremental";
    std::string vector;
    std::string output;
    std::string format;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int samples = 200;
    bool pw = false;
    bool include_full = false;
    bool stable = false;
};

int exit_code(Error::Kind k)
{
    switch (k) {
    case Error::Kind::config:
    case Error::Kind::parse:
        return 3;
    case Error::Kind::certification:
    case Error::Kind::internal_inconsistency:
        return 4;
    default:
        return 2;
    }
}

std::vector<int> parse_index_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            fail(Error::Kind::config, "bad irrep index \"" + item + "\"");
        }
    }
    return out;
}

std::vector<int> parse_lambda(const std::string& s, const PWDecomposition& pw)
{
    if (s.empty())
        fail(Error::Kind::config, "--lambda is required");
    if (s == "all")
        return pw.all();
    std::vector<int> v = parse_index_list(s);
    if (v.empty())
        fail(Error::Kind::config, "--lambda is empty");
    return v;
}

cvec parse_vector(const std::string& s)
{
    std::vector<cplx> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream one(item);
        double re = 0, im = 0;
        char c = 0;
        if (!(one >> re))
            fail(Error::Kind::config, "bad --vector entry \"" + item + "\"");
        if (one >> c) {
            // a+bi or a-bi
            if ((c != '+' && c != '-') || !(one >> im))
                fail(Error::Kind::config, "bad --vector entry \"" + item + "\"");
            if (c == '-')
                im = -im;
        }
        vals.emplace_back(re, im);
    }
    cvec v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

LoadedInput load(const Options& o)
{
    if (o.input.empty())
        fail(Error::Kind::config, "--input is required");
    return load_input(o.input, o.algebra == "group" ? AlgebraChoice::group : AlgebraChoice::function);
}

std::vector<Corepresentation> require_irreps(const LoadedInput& in)
{
    if (!in.irreps)
        fail(Error::Kind::completeness, "no irreducible corepresentations: sum of d^2 is 0 but dim A is " +
                                            std::to_string(in.group.dim));
    return *in.irreps;
}

PolyhedralSeminorm make_seminorm(const Options& o, const FiniteQuantumGroup& g)
{
    std::string kind = o.seminorm;
    if (kind == "auto") {
        if (g.family == Family::function_algebra)
            kind = "metric";
        else if (g.family == Family::group_algebra)
            kind = "length";
        else
            fail(Error::Kind::config, "custom quantum groups need --seminorm file:PATH");
    }
    if (kind == "metric")
        return lip_from_metric(g);
    if (kind == "length")
        return lip_fourier(g);
    if (kind.rfind("file:", 0) == 0)
        return load_seminorm(kind.substr(5), g.dim);
    fail(Error::Kind::config, "unknown --seminorm " + o.seminorm);
}

RowOptions row_options(const Options& o)
{
    RowOptions r;
    r.tol = o.tol;
    r.seed = o.seed;
    r.samples = o.samples;
    r.hausdorff_samples = std::min(o.samples, 50);
    if (o.state == "canonical")
        r.state = StateChoice::canonical;
    else if (o.state == "optimized")
        r.state = StateChoice::optimized;
    else if (o.state == "explicit") {
        r.state = StateChoice::explicit_vector;
        if (o.vector.empty())
            fail(Error::Kind::config, "--state explicit needs --vector");
        r.vector = parse_vector(o.vector);
    } else
        fail(Error::Kind::config, "unknown --state " + o.state);
    return r;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                fail(Error::Kind::config, "cannot write " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int cmd_check(const Options& o)
{
    LoadedInput in = load(o);
    const FiniteQuantumGroup& g = in.group;
    Output w(o.output);
    AxiomReport rep = check_axioms(g);
    bool ok = rep.passes(o.tol);
    if (o.format == "csv") {
        w.out() << "check,residual\n";
        for (const auto& [name, v] : rep.residuals)
            w.out() << name << "," << v << "\n";
    } else if (ok) {
        w.out() << "all axioms pass (max residual " << fmt(rep.max_residual()) << ")\n";
    } else {
        for (const auto& [name, v] : rep.residuals)
            if (!(v < o.tol))
                w.out() << "FAIL " << name << " residual " << fmt(v) << "\n";
    }
    if (!ok)
        return 2;
    State h = haar_state(g, o.tol);
    if (o.format != "csv")
        w.out() << "Haar state certified (min eigenvalue " << fmt(h.min_eigenvalue()) << ")\n";
    if (in.irreps) {
        for (std::size_t k = 0; k < in.irreps->size(); ++k) {
            CorepReport r = validate_corep(g, (*in.irreps)[k]);
            if (!r.passes(1e-8) || !r.irreducible()) {
                std::cerr << "irrep " << k << ": unitarity " << fmt(r.unitarity) << ", corep " << fmt(r.corep_property)
                          << ", dim Mor " << r.mor_dim << "\n";
                return 2;
            }
        }
        if (o.format != "csv")
            w.out() << in.irreps->size() << " irreducible corepresentations validated\n";
    }
    if (o.pw) {
        GNSSpace gns = gns_build(g);
        PWDecomposition pw = peter_weyl(g, gns, require_irreps(in));
        if (o.format != "csv")
            w.out() << "Peter-Weyl decomposition complete (" << pw.size() << " blocks)\n";
    }
    return 0;
}

int cmd_pw(const Options& o)
{
    LoadedInput in = load(o);
    const FiniteQuantumGroup& g = in.group;
    GNSSpace gns = gns_build(g);
    PWDecomposition pw = peter_weyl(g, gns, require_irreps(in));
    Output w(o.output);
    if (o.format == "csv") {
        w.out() << "index,dim,block_dim\n";
        for (int k = 0; k < pw.size(); ++k)
            w.out() << k << "," << pw.blocks[k].corep.d << "," << pw.blocks[k].basis.cols() << "\n";
        return 0;
    }
    int total = 0;
    for (int k = 0; k < pw.size(); ++k) {
        const int d = pw.blocks[k].corep.d;
        total += d * d;
        w.out() << "irrep " << k << ": dim " << d << ", block " << pw.blocks[k].basis.cols() << "\n";
    }
    w.out() << "sum d^2 = " << total << " = dim A\n";
    w.out() << "max block overlap " << fmt(pw.max_block_overlap) << ", orthogonality residual "
            << fmt(pw.max_kac_residual) << "\n";
    UnitaryReport ur = check_multiplicative_unitary(g, gns, pw, UnitarySide::W, 5, o.seed);
    w.out() << "multiplicative unitary W: unitarity " << fmt(ur.unitarity) << ", implements Delta "
            << fmt(ur.implements_comult) << "\n";
    return 0;
}

int cmd_truncate(const Options& o)
{
    LoadedInput in = load(o);
    const FiniteQuantumGroup& g = in.group;
    GNSSpace gns = gns_build(g);
    PWDecomposition pw = peter_weyl(g, gns, require_irreps(in));
    std::vector<int> subset = parse_lambda(o.lambda, pw);
    TruncatedSystem t = truncate(g, gns, pw, subset);
    Coaction alpha = induced_coaction(g, t, Side::right);
    Coaction beta = induced_coaction(g, t, Side::left);
    CoactionReport ra = check_coaction(g, t, alpha), rb = check_coaction(g, t, beta);
    double cocomm = cocommutation_residual(alpha, beta);
    double iso = isometry_witness(g, t, alpha, 50, o.seed);
    SystemState phi = canonical_state(g, gns, t);
    SymbolReport sr = check_symbol(g, t, symbol(t, alpha, phi), phi);
    double worst = std::max({ra.well_defined, ra.coaction_property, ra.counit_property, rb.well_defined,
                             rb.coaction_property, rb.counit_property, cocomm});
    Output w(o.output);
    if (o.format == "csv") {
        w.out() << "lambda_id,m,dim_sys,well_defined,coaction,counit,cocommutation,fixed_dim_right,fixed_dim_left,"
                   "isometry\n";
        w.out() << "\"" << lambda_id(subset) << "\"," << t.m() << "," << t.dim_sys() << ","
                << std::max(ra.well_defined, rb.well_defined) << ","
                << std::max(ra.coaction_property, rb.coaction_property) << ","
                << std::max(ra.counit_property, rb.counit_property) << "," << cocomm << "," << ra.fixed_point_dim
                << "," << rb.fixed_point_dim << "," << iso << "\n";
    } else {
        w.out() << "Lambda = {" << lambda_id(subset) << "}: dim H_Lambda = " << t.m()
                << ", dim A^(Lambda) = " << t.dim_sys() << "\n";
        w.out() << "right coaction: well-defined " << fmt(ra.well_defined) << ", coaction " << fmt(ra.coaction_property)
                << ", counit " << fmt(ra.counit_property) << ", fixed points " << ra.fixed_point_dim << "\n";
        w.out() << "left coaction:  well-defined " << fmt(rb.well_defined) << ", coaction " << fmt(rb.coaction_property)
                << ", counit " << fmt(rb.counit_property) << ", fixed points " << rb.fixed_point_dim << "\n";
        w.out() << "cocommutation " << fmt(cocomm) << ", isometry witness " << fmt(iso) << "\n";
        w.out() << "symbol map: unital " << fmt(sr.unital) << ", down-up " << fmt(sr.down_up) << ", up-down "
                << fmt(sr.up_down) << "\n";
    }
    if (worst > 1e-8 || iso > 1e-8 || ra.fixed_point_dim != 1 || rb.fixed_point_dim != 1)
        return 4;
    return 0;
}

void print_rows(Output& w, const Options& o, const std::vector<SweepRow>& rows)
{
    if (o.format == "text") {
        for (const SweepRow& r : rows) {
            w.out() << "Lambda = {" << lambda_id(r.lambda) << "}, dim A^(Lambda) = " << r.dim_sys << "\n";
            w.out() << "  B = " << r.bound_b << "  (upper bound via criterion: r = " << r.criterion_r << ")\n";
            w.out() << "  diameter in [" << r.diam_lower << ", " << r.diam_upper << "]\n";
            w.out() << "  max residual of the two inequalities " << r.c1_max_residual << "\n";
            w.out() << "  sampled lower bound, n = 1: " << r.n1_hausdorff_lower << "; n = 2: " << r.n2_hausdorff_lower
                    << "\n";
            if (!r.note.empty())
                w.out() << "  note: " << r.note << "\n";
        }
        return;
    }
    w.out() << csv_header() << "\n";
    for (const SweepRow& r : rows)
        w.out() << csv_line(r) << "\n";
    for (const SweepRow& r : rows)
        if (!r.note.empty())
            std::cerr << "note: " << r.note << "\n";
}

int cmd_bound(const Options& o)
{
    LoadedInput in = load(o);
    Experiment e(in.group, require_irreps(in), make_seminorm(o, in.group), o.tol);
    std::vector<int> subset = parse_lambda(o.lambda, e.pw);
    SweepRow row = run_row(e, subset, row_options(o), 0);
    if (o.stable)
        row.runtime_ms = 0;
    Output w(o.output);
    print_rows(w, o, {row});
    return row.c1_max_residual > 1e-8 ? 4 : 0;
}

int cmd_sweep(const Options& o)
{
    LoadedInput in = load(o);
    Experiment e(in.group, require_irreps(in), make_seminorm(o, in.group), o.tol);
    RowOptions ro = row_options(o);
    if (ro.state == StateChoice::explicit_vector)
        fail(Error::Kind::config, "--state explicit applies to single truncations, not sweeps");
    std::vector<std::vector<int>> chain;
    if (o.chain == "frequency")
        chain = frequency_chain(e.g, e.pw);
    else if (o.chain == "incremental")
        chain = incremental_chain(e.pw);
    else if (o.chain == "explicit") {
        std::stringstream ss(o.lambda);
        std::string part;
        while (std::getline(ss, part, ';'))
            chain.push_back(parse_lambda(part, e.pw));
    } else
        fail(Error::Kind::config, "unknown --chain " + o.chain);
    chain = normalize_chain(chain, e.pw, o.include_full);
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        rows.push_back(run_row(e, chain[k], ro, static_cast<int>(k)));
        if (o.stable)
            rows.back().runtime_ms = 0;
    }
    Output w(o.output);
    print_rows(w, o, rows);
    for (const SweepRow& r : rows)
        if (r.c1_max_residual > 1e-8)
            return 4;
    return 0;
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--input", o.input, "group or quantum-group JSON file")->required();
    sub->add_option("--algebra", o.algebra, "function: F(G), group: C*(G) (group files only)")
        ->check(CLI::IsMember({"function", "group"}));
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--samples", o.samples, "samples per row");
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
}

void add_bound_options(CLI::App* sub, Options& o)
{
    sub->add_option("--seminorm", o.seminorm, "metric | length | file:PATH");
    sub->add_option("--state", o.state, "canonical | optimized | explicit");
    sub->add_option("--vector", o.vector, "explicit state vector on H_Lambda, comma separated");
    sub->add_flag("--stable", o.stable, "write runtime_ms as 0");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finite quantum groups as compact quantum metric spaces"};
    app.require_subcommand(1);
    Options o;

    CLI::App* check = app.add_subcommand("check", "validate the Hopf axioms, Haar state and irreps");
    add_common(check, o);
    check->add_flag("--pw", o.pw, "also build the Peter-Weyl decomposition");

    CLI::App* pw = app.add_subcommand("pw", "Peter-Weyl decomposition");
    add_common(pw, o);

    CLI::App* trunc = app.add_subcommand("truncate", "truncation certificates");
    add_common(trunc, o);
    trunc->add_option("--lambda", o.lambda, "irrep indices or all")->required();

    CLI::App* bound = app.add_subcommand("bound", "bound for one truncation");
    add_common(bound, o);
    bound->add_option("--lambda", o.lambda, "irrep indices or all")->required();
    add_bound_options(bound, o);

    CLI::App* sweep = app.add_subcommand("sweep", "bounds along a chain of truncations");
    add_common(sweep, o);
    add_bound_options(sweep, o);
    sweep->add_option("--chain", o.chain, "frequency | incremental | explicit")
        ->check(CLI::IsMember({"frequency", "incremental", "explicit"}));
    sweep->add_option("--lambda", o.lambda, "explicit chain: subsets separated by ';'");
    sweep->add_flag("--include-full", o.include_full, "end the chain with the complete set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*check)
            return cmd_check(o);
        if (*pw)
            return cmd_pw(o);
        if (*trunc)
            return cmd_truncate(o);
        if (o.format.empty())
            o.format = *sweep ? "csv" : "text";
        if (*bound)
            return cmd_bound(o);
        return cmd_sweep(o);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
