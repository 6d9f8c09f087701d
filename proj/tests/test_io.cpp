#include "cqms/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace cqms;

namespace {

std::string data(const std::string& name) { return std::string(CQMS_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text)
{
    std::string path = testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

Error::Kind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return Error::Kind::internal_inconsistency;
}

} // namespace

TEST(Json, ParseErrorReportsLineAndColumn)
{
    try {
        parse_json_text("{\n  \"a\": 1,\n  \"b\" 2\n}", "x.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::parse);
        EXPECT_NE(std::string(e.what()).find("x.json:3:"), std::string::npos) << e.what();
    }
}

TEST(Json, MalformedDataFile)
{
    try {
        read_json_file(data("malformed.json"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::parse);
        EXPECT_NE(std::string(e.what()).find("malformed.json:3:"), std::string::npos);
    }
}

TEST(Json, ComplexScalars)
{
    json j = json::parse(R"([1.5, [0, 2], [3, -1]])");
    cvec v = detail::vector_of(j, 3, "v");
    EXPECT_EQ(v(0), cplx(1.5, 0));
    EXPECT_EQ(v(1), cplx(0, 2));
    EXPECT_EQ(v(2), cplx(3, -1));
    EXPECT_EQ(kind_of([] { detail::vector_of(json::parse("[1, 2]"), 3, "v"); }), Error::Kind::structural);
    EXPECT_EQ(kind_of([] { detail::vector_of(json::parse("[1, \"x\", 2]"), 3, "v"); }), Error::Kind::parse);
}

TEST(GroupFile, LoadsZ4BothWays)
{
    LoadedInput f = load_input(data("z4.json"), AlgebraChoice::function);
    EXPECT_EQ(f.group.dim, 4);
    EXPECT_EQ(f.group.family, Family::function_algebra);
    ASSERT_TRUE(f.irreps.has_value());
    EXPECT_EQ(f.irreps->size(), 4u);
    EXPECT_NEAR((*f.group.metric)(0, 2), pi, 1e-15);
    LoadedInput g = load_input(data("z4.json"), AlgebraChoice::group);
    EXPECT_EQ(g.group.family, Family::group_algebra);
    EXPECT_NEAR((*g.group.length)(2), 2.0, 0.0);
}

TEST(GroupFile, S3MetricIsBiInvariant)
{
    LoadedInput f = load_input(data("s3.json"), AlgebraChoice::function);
    EXPECT_NO_THROW(lip_from_metric(f.group));
    EXPECT_LT(check_axioms(f.group).max_residual(), 1e-12);
}

TEST(GroupFile, BadTable)
{
    EXPECT_EQ(kind_of([] { load_input(data("bad_table.json"), AlgebraChoice::function); }), Error::Kind::table);
}

TEST(GroupFile, MissingField)
{
    std::string path = write_temp("nofield.json", R"({"order": 2})");
    try {
        load_input(path, AlgebraChoice::function);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("mult_table"), std::string::npos);
    }
}

TEST(QuantumGroupFile, RoundTrip)
{
    FiniteQuantumGroup g = group_algebra(symmetric_group_3().table);
    std::vector<Corepresentation> irr = *builtin_coreps(g);
    json j = quantum_group_to_json(g, &irr);
    std::string path = write_temp("cs3_qg.json", j.dump());
    LoadedInput back = load_input(path, AlgebraChoice::function);
    EXPECT_FALSE(back.from_group_table);
    EXPECT_EQ(back.group.dim, 6);
    EXPECT_LT(max_abs(cmat(back.group.mult - g.mult)), 1e-15);
    EXPECT_LT(max_abs(cmat(back.group.comult - g.comult)), 1e-15);
    EXPECT_LT(max_abs(cmat(back.group.star - g.star)), 1e-15);
    EXPECT_LT(max_abs(cvec(back.group.counit - g.counit)), 1e-15);
    ASSERT_TRUE(back.irreps.has_value());
    ASSERT_EQ(back.irreps->size(), irr.size());
    for (std::size_t k = 0; k < irr.size(); ++k)
        EXPECT_LT(max_abs(cvec(back.irreps->at(k).u(0, 0) - irr[k].u(0, 0))), 1e-15);
    EXPECT_LT(check_axioms(back.group).max_residual(), 1e-12);
}

TEST(QuantumGroupFile, NoIrrepsInFile)
{
    LoadedInput in = load_input(data("cz4_qg.json"), AlgebraChoice::function);
    EXPECT_FALSE(in.irreps.has_value());
    EXPECT_LT(check_axioms(in.group).max_residual(), 1e-12);
}

TEST(QuantumGroupFile, WrongShapeIsStructural)
{
    json j = quantum_group_to_json(group_algebra(cyclic_table(2)));
    j["counit"] = json::array({1});
    std::string path = write_temp("short.json", j.dump());
    EXPECT_EQ(kind_of([&] { load_input(path, AlgebraChoice::function); }), Error::Kind::structural);
}

TEST(SeminormFile, Loads)
{
    PolyhedralSeminorm l = load_seminorm(data("cz4_seminorm.json"), 4);
    ASSERT_EQ(l.size(), 3);
    EXPECT_DOUBLE_EQ(l.constants[1], 0.5);
    EXPECT_EQ(l.functionals[2](3), cplx(1.0));
}

TEST(SeminormFile, RejectsNonPositiveConstant)
{
    std::string path = write_temp("bad_sn.json", R"({"family": [{"functional": [0, 1], "c": 0}]})");
    EXPECT_EQ(kind_of([&] { load_seminorm(path, 2); }), Error::Kind::config);
    std::string empty = write_temp("empty_sn.json", R"({"family": []})");
    EXPECT_EQ(kind_of([&] { load_seminorm(empty, 2); }), Error::Kind::parse);
}

TEST(Input, UnknownFormat)
{
    std::string path = write_temp("unknown.json", R"({"hello": 1})");
    EXPECT_EQ(kind_of([&] { load_input(path, AlgebraChoice::function); }), Error::Kind::parse);
    EXPECT_EQ(kind_of([] { load_input("/nonexistent/file.json", AlgebraChoice::function); }), Error::Kind::config);
}
