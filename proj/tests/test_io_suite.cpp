#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <numbers>

#include <json.hpp>

#include <qsvt/demos.hpp>
#include <qsvt/io.hpp>
#include <qsvt/suite.hpp>

using namespace qsvt;

namespace {

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("qsvt_test_" + name)).string();
}

Errc code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return Errc::NonFinite;
}

} // namespace

TEST(Io, MatrixRoundTripIsBitExact) {
    const ComplexMatrix m = haar_unitary(5, 3);
    EXPECT_TRUE((matrix_from_json(matrix_to_json(m)).array() == m.array()).all());
    const auto path = temp_path("matrix.json");
    save_matrix(m, path);
    EXPECT_TRUE((load_matrix(path).array() == m.array()).all());
    std::filesystem::remove(path);
    EXPECT_EQ(matrix_from_json(matrix_to_json(ComplexMatrix(0, 0))).size(), 0);
}

TEST(Io, ScheduleRoundTrip) {
    RandomStream rng(61);
    for (bool odd : {false, true}) {
        const auto s = PhaseSchedule::random(rng, 7, odd);
        const auto back = schedule_from_json(schedule_to_json(s));
        ASSERT_EQ(back.size(), s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_EQ(back[k].theta, s[k].theta);
            EXPECT_EQ(back[k].phi, s[k].phi);
        }
        EXPECT_EQ(back.final_phi(), s.final_phi());
    }
}

TEST(Io, ParseErrorsNameTheField) {
    try {
        matrix_from_json(R"({"rows": 1, "cols": 2, "re": [[1, "x"]], "im": [[0, 0]]})");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::ParseError);
        const std::string msg = e.what();
        EXPECT_NE(msg.find("'re'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column 1"), std::string::npos) << msg;
    }
    try {
        matrix_from_json(R"({"rows": 1, "cols": 1, "re": [[1]]})");
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("'im'"), std::string::npos);
    }
    EXPECT_EQ(code_of([] { matrix_from_json("{not json"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { schedule_from_json(R"({"pairs": [[7.0, 0.0]]})"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { schedule_from_json(R"({"pairs": [[1.0]]})"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { load_matrix("/nonexistent/dir/m.json"); }), Errc::IoError);
    EXPECT_EQ(code_of([] { write_text_file("/nonexistent/dir/m.json", "x"); }), Errc::IoError);
}

TEST(Config, DefaultsAndValidation) {
    const SuiteConfig def;
    EXPECT_NO_THROW(def.validate());
    EXPECT_EQ(def.suites.size(), suite_names().size());
    const auto cfg = config_from_json(R"({"seed": 9, "trials": 3, "suites": ["lemma1"], "tolerances": {"poly": 1e-8}})");
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.trials, 3);
    EXPECT_EQ(cfg.tolerances.poly, 1e-8);
    EXPECT_EQ(code_of([] { config_from_json(R"({"trials": 0})"); }), Errc::ConfigInvalid);
    EXPECT_EQ(code_of([] { config_from_json(R"({"trails": 3})"); }), Errc::ConfigInvalid);
    EXPECT_EQ(code_of([] { config_from_json(R"({"suites": ["nope"]})"); }), Errc::ConfigInvalid);
    EXPECT_EQ(code_of([] { config_from_json(R"({"tolerances": {"unit": -1}})"); }), Errc::ConfigInvalid);
    EXPECT_EQ(code_of([] { config_from_json("[1]"); }), Errc::ConfigInvalid);
}

TEST(Demos, AllPassTheirChecks) {
    for (const auto &name : demo_names()) {
        const auto demo = demo_instance(name);
        const auto report = check_instance(demo.unitary, demo.schedule);
        EXPECT_TRUE(report.passed()) << name << "\n" << report_to_text(report);
    }
    EXPECT_EQ(code_of([] { demo_instance("nope"); }), Errc::UnknownDemo);
}

TEST(Demos, HomogeneousProductIsMinusIdentity) {
    const auto demo = demo_instance("homogeneous-pi2");
    EXPECT_LE((even_product(demo.unitary, demo.schedule).matrix + identity(8)).norm(), 1e-10);
}

TEST(Suite, SmallRunCountsRecords) {
    SuiteConfig cfg;
    cfg.suites = {"lemma1", "lemma2"};
    cfg.trials = 5;
    cfg.max_dim = 8;
    const auto report = run_suite(cfg);
    EXPECT_EQ(report.records.size(), 10u);
    EXPECT_TRUE(report.passed());
    for (const auto &r : report.records) EXPECT_LE(r.dim, 8);
}

TEST(Suite, RecordsDependOnlyOnSeedSuiteAndTrial) {
    SuiteConfig a;
    a.trials = 4;
    a.suites = {"blockform", "qsp"};
    SuiteConfig b = a;
    b.suites = {"qsp"};
    const auto ra = run_suite(a);
    const auto rb = run_suite(b);
    for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(ra.records[4 + t], rb.records[t]);
    SuiteConfig c = a;
    c.seed = 2;
    EXPECT_NE(run_suite(c).records, ra.records);
}

TEST(Suite, EvenOnlyInstanceAndExceptionRecords) {
    const auto bad = decompose(identity(2), 1, 1);
    SuiteReport rep = check_instance(bad, PhaseSchedule({{0.1, 0.2}}));
    EXPECT_TRUE(rep.passed());
    SuiteRecord r{"x", 0, 0, 0, 0, 0, 0, "exception", std::numeric_limits<double>::infinity(), 1.0, "boom"};
    EXPECT_FALSE(r.passed());
}

TEST(Suite, MachineReportParses) {
    SuiteConfig cfg;
    cfg.trials = 2;
    cfg.suites = {"lemma6", "theorem7"};
    const auto doc = nlohmann::json::parse(report_to_json(run_suite(cfg)));
    EXPECT_EQ(doc["summary"]["records"], 4);
    EXPECT_EQ(doc["records"].size(), 4u);
    EXPECT_EQ(doc["records"][0]["suite"], "lemma6");
    EXPECT_TRUE(doc["records"][0]["passed"].get<bool>());
    EXPECT_EQ(doc["config"]["tolerances"]["unit"], 1e-10);
}
