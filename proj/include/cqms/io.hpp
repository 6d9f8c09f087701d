#ifndef CQMS_IO_HPP
#define CQMS_IO_HPP

// JSON input files.
//
// Group file:
//   { "order": n, "mult_table": [[...]], "metric": [[...]], "length": [...],
//     "irreps": [...] }                      (metric, length, irreps optional)
// Quantum-group file:
//   { "dim": n, "mult": n x n x n, "comult": n x n x n, "unit": n,
//     "star": n x n, "counit": n, "antipode": n x n, "rep": n x d0 x d0,
//     "irreps": [ { "dim": d, "matrices_over_A": d x d x n } ] }
// mult[i][j] lists the coefficients of e_i e_j, comult[i][j][k] the
// coefficient of e_j (x) e_k in Delta(e_i). Complex entries are a number or
// a pair [re, im].
// Seminorm file:
//   { "family": [ { "functional": [...], "c": positive } ] }

#include "cqms/corep_pw.hpp"
#include "cqms/lipnorm.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace cqms {

using json = nlohmann::json;

inline json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(Error::Kind::parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(Error::Kind::config, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

namespace detail {

inline const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        fail(Error::Kind::parse, std::string("missing field \"") + name + "\"");
    return j.at(name);
}

inline cplx scalar(const json& j, const std::string& where)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(Error::Kind::parse, where + ": expected a number or [re, im]");
}

inline void expect_array(const json& j, std::size_t size, const std::string& where)
{
    if (!j.is_array() || j.size() != size)
        fail(Error::Kind::structural, where + ": expected an array of length " + std::to_string(size));
}

inline cvec vector_of(const json& j, int n, const std::string& where)
{
    expect_array(j, static_cast<std::size_t>(n), where);
    cvec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = scalar(j[static_cast<std::size_t>(i)], where);
    return v;
}

inline cmat matrix_of(const json& j, int rows, int cols, const std::string& where)
{
    expect_array(j, static_cast<std::size_t>(rows), where);
    cmat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        m.row(r) = vector_of(j[static_cast<std::size_t>(r)], cols, where).transpose();
    return m;
}

inline json scalar_json(cplx z)
{
    if (z.imag() == 0.0)
        return z.real();
    return json::array({z.real(), z.imag()});
}

inline json vector_json(const cvec& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(scalar_json(v(i)));
    return a;
}

inline json matrix_json(const cmat& m)
{
    json a = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        a.push_back(vector_json(m.row(r).transpose()));
    return a;
}

} // namespace detail

inline std::vector<Corepresentation> parse_irreps(const json& j, int n)
{
    if (!j.is_array())
        fail(Error::Kind::parse, "\"irreps\" must be an array");
    std::vector<Corepresentation> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string where = "irreps[" + std::to_string(k) + "]";
        Corepresentation c;
        c.d = detail::field(j[k], "dim").get<int>();
        if (c.d < 1)
            fail(Error::Kind::structural, where + ": dim must be positive");
        const json& mats = detail::field(j[k], "matrices_over_A");
        detail::expect_array(mats, static_cast<std::size_t>(c.d), where);
        for (int a = 0; a < c.d; ++a) {
            detail::expect_array(mats[static_cast<std::size_t>(a)], static_cast<std::size_t>(c.d), where);
            for (int b = 0; b < c.d; ++b)
                c.entries.push_back(detail::vector_of(mats[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], n, where));
        }
        out.push_back(std::move(c));
    }
    return out;
}

enum class AlgebraChoice { function, group };

struct LoadedInput {
    FiniteQuantumGroup group;
    std::optional<std::vector<Corepresentation>> irreps;
    bool from_group_table = false;
};

inline CayleyTable parse_table(const json& j)
{
    const int n = detail::field(j, "order").get<int>();
    const json& t = detail::field(j, "mult_table");
    detail::expect_array(t, static_cast<std::size_t>(n), "mult_table");
    CayleyTable table(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) {
        detail::expect_array(t[static_cast<std::size_t>(g)], static_cast<std::size_t>(n), "mult_table");
        for (const json& e : t[static_cast<std::size_t>(g)]) {
            if (!e.is_number_integer())
                fail(Error::Kind::table, "mult_table entries must be integers");
            table[static_cast<std::size_t>(g)].push_back(e.get<int>());
        }
    }
    return table;
}

inline LoadedInput load_group_json(const json& j, AlgebraChoice algebra)
{
    LoadedInput out;
    out.from_group_table = true;
    CayleyTable table = parse_table(j);
    const int n = static_cast<int>(table.size());
    std::optional<rmat> metric;
    std::optional<rvec> length;
    if (j.contains("metric"))
        metric = detail::matrix_of(j.at("metric"), n, n, "metric").real();
    if (j.contains("length"))
        length = detail::vector_of(j.at("length"), n, "length").real();
    if (algebra == AlgebraChoice::function) {
        if (!metric && length)
            metric = metric_from_length(FiniteGroup(table), *length);
        out.group = function_algebra(table, metric);
    } else {
        out.group = group_algebra(table, length);
    }
    if (j.contains("irreps"))
        out.irreps = parse_irreps(j.at("irreps"), n);
    else
        out.irreps = builtin_coreps(out.group);
    return out;
}

inline LoadedInput load_quantum_group_json(const json& j)
{
    LoadedInput out;
    FiniteQuantumGroup& g = out.group;
    const int n = detail::field(j, "dim").get<int>();
    if (n < 1)
        fail(Error::Kind::structural, "dim must be positive");
    g.dim = n;
    const json& mult = detail::field(j, "mult");
    detail::expect_array(mult, static_cast<std::size_t>(n), "mult");
    g.mult.resize(n, n * n);
    for (int a = 0; a < n; ++a) {
        detail::expect_array(mult[static_cast<std::size_t>(a)], static_cast<std::size_t>(n), "mult");
        for (int b = 0; b < n; ++b)
            g.mult.col(a * n + b) = detail::vector_of(mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], n, "mult");
    }
    const json& comult = detail::field(j, "comult");
    detail::expect_array(comult, static_cast<std::size_t>(n), "comult");
    g.comult.resize(n * n, n);
    for (int i = 0; i < n; ++i)
        g.comult.col(i) = flatten(detail::matrix_of(comult[static_cast<std::size_t>(i)], n, n, "comult"));
    g.unit = detail::vector_of(detail::field(j, "unit"), n, "unit");
    g.star = detail::matrix_of(detail::field(j, "star"), n, n, "star");
    g.counit = detail::vector_of(detail::field(j, "counit"), n, "counit");
    g.antipode = detail::matrix_of(detail::field(j, "antipode"), n, n, "antipode");
    const json& rep = detail::field(j, "rep");
    detail::expect_array(rep, static_cast<std::size_t>(n), "rep");
    const int d0 = rep[0].is_array() ? static_cast<int>(rep[0].size()) : 0;
    if (d0 < 1)
        fail(Error::Kind::structural, "rep: matrices must be nonempty");
    for (int i = 0; i < n; ++i)
        g.rep.push_back(detail::matrix_of(rep[static_cast<std::size_t>(i)], d0, d0, "rep"));
    check_shapes(g);
    if (j.contains("irreps"))
        out.irreps = parse_irreps(j.at("irreps"), n);
    return out;
}

/// Group files are recognised by "mult_table" or "order", quantum-group files by "dim".
inline LoadedInput load_input(const std::string& path, AlgebraChoice algebra)
{
    json j = read_json_file(path);
    if (!j.is_object())
        fail(Error::Kind::parse, path + ": top level must be an object");
    if (j.contains("mult_table") || j.contains("order"))
        return load_group_json(j, algebra);
    if (j.contains("dim"))
        return load_quantum_group_json(j);
    fail(Error::Kind::parse, path + ": neither a group file nor a quantum-group file");
}

inline json quantum_group_to_json(const FiniteQuantumGroup& g, const std::vector<Corepresentation>* irreps = nullptr)
{
    const int n = g.dim;
    json j;
    j["dim"] = n;
    json mult = json::array();
    for (int a = 0; a < n; ++a) {
        json row = json::array();
        for (int b = 0; b < n; ++b)
            row.push_back(detail::vector_json(g.mult.col(a * n + b)));
        mult.push_back(row);
    }
    j["mult"] = mult;
    json comult = json::array();
    for (int i = 0; i < n; ++i)
        comult.push_back(detail::matrix_json(unflatten(g.comult.col(i), n, n)));
    j["comult"] = comult;
    j["unit"] = detail::vector_json(g.unit);
    j["star"] = detail::matrix_json(g.star);
    j["counit"] = detail::vector_json(g.counit);
    j["antipode"] = detail::matrix_json(g.antipode);
    json rep = json::array();
    for (const cmat& r : g.rep)
        rep.push_back(detail::matrix_json(r));
    j["rep"] = rep;
    if (irreps) {
        json arr = json::array();
        for (const Corepresentation& c : *irreps) {
            json mats = json::array();
            for (int a = 0; a < c.d; ++a) {
                json row = json::array();
                for (int b = 0; b < c.d; ++b)
                    row.push_back(detail::vector_json(c.u(a, b)));
                mats.push_back(row);
            }
            arr.push_back({{"dim", c.d}, {"matrices_over_A", mats}});
        }
        j["irreps"] = arr;
    }
    return j;
}

inline PolyhedralSeminorm load_seminorm(const std::string& path, int n)
{
    json j = read_json_file(path);
    const json& fam = detail::field(j, "family");
    if (!fam.is_array() || fam.empty())
        fail(Error::Kind::parse, "\"family\" must be a nonempty array");
    PolyhedralSeminorm l;
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const std::string where = "family[" + std::to_string(k) + "]";
        l.functionals.push_back(detail::vector_of(detail::field(fam[k], "functional"), n, where));
        const double c = detail::field(fam[k], "c").get<double>();
        if (!(c > 0))
            fail(Error::Kind::config, where + ": c must be positive");
        l.constants.push_back(c);
    }
    return l;
}

} // namespace cqms

#endif
