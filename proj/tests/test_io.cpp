#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "specrig/io/pipeline.hpp"

using namespace specrig;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string data(const std::string& name) { return std::string(SPECRIG_DATA_DIR) + "/" + name; }

AnalysisResult analyze(const std::string& name) { return run_analysis(parse_problem(read_file(data(name)))); }

std::string problem(const std::string& rows, const std::string& poles, const std::string& extra = "") {
    return "rank 2\nmatrix\n" + rows + "end\npoles " + poles + "\n" + extra;
}

/// Whitespace-separated fields of the table row for the given point.
std::vector<std::string> row(const std::string& text, const std::string& point) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first != point) continue;
        std::vector<std::string> out;
        for (std::string w; ls >> w;) out.push_back(w);
        return out;
    }
    return {};
}

std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
    switch (pick(rng)) {
        case 0: return std::to_string(std::uniform_int_distribution<int>(0, 9)(rng));
        case 1: return "z";
        case 2: return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
        case 3: return random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1);
        case 4: return "(" + random_expr(rng, depth - 1) + ")*(" + random_expr(rng, depth - 1) + ")";
        case 5: return "(" + random_expr(rng, depth - 1) + ")/(z^2 + " + std::to_string(1 + rng() % 5) + ")";
        default: return "(" + random_expr(rng, depth - 1) + ")^(" + std::to_string(static_cast<int>(rng() % 5) - 2) + ")";
    }
}

}  // namespace

TEST(Parser, RationalEntry) {
    RatFn f = parse_ratfn("(3*z^2+1)/(z*(z-1)^2)");
    EXPECT_EQ(f.num(), QPoly({Rat(1), Rat(0), Rat(3)}));
    EXPECT_EQ(f.den(), QPoly({Rat(0), Rat(1), Rat(-2), Rat(1)}));
    EXPECT_EQ(parse_ratfn("z^(-2)"), RatFn(Rat(1)) / (RatFn::var() * RatFn::var()));
    EXPECT_EQ(parse_ratfn("-z^2"), RatFn(Rat(0)) - RatFn::var().pow(2));
    EXPECT_EQ(parse_ratfn("2^3/4"), RatFn(Rat(2)));
    EXPECT_EQ(parse_ratfn("x + 1", "x"), RatFn::var() + RatFn(Rat(1)));
}

TEST(Parser, ExpressionErrors) {
    try {
        parse_ratfn("z^(1/2)", "z", 4, 3);
        FAIL() << "non-integer exponent accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
        EXPECT_EQ(e.column(), 5);
    }
    EXPECT_THROW(parse_ratfn("1/(z-z)"), ParseError);
    EXPECT_THROW(parse_ratfn("w + 1"), ParseError);
    EXPECT_THROW(parse_ratfn("(z + 1"), ParseError);
    EXPECT_THROW(parse_ratfn("z z"), ParseError);
    EXPECT_THROW(parse_ratfn(""), ParseError);
    EXPECT_THROW(parse_ratfn("0^(-1)"), ParseError);
    EXPECT_THROW(parse_ratfn("1.5"), ParseError);
}

TEST(Parser, ProblemFile) {
    auto p = parse_problem("# Airy\nvariable x\nrank 2\nmatrix\n  0, 1\n  x, 0  # lower left\nend\npoles inf\ngenus 0\n");
    EXPECT_EQ(p.variable, "x");
    EXPECT_EQ(p.rank, 2u);
    EXPECT_EQ(p.matrix(1, 0), RatFn::var());
    EXPECT_EQ(p.poles, std::vector<Point>{Point::at_infinity()});
    auto q = parse_problem(problem("1/z, 0\n0, 1/(2*z-1)\n", "0 1/2 inf"));
    EXPECT_EQ(q.poles.size(), 3u);
    EXPECT_EQ(q.poles[1], Point::at(make_rat(1, 2)));
}

TEST(Parser, ProblemErrors) {
    auto line_of = [](const std::string& text) {
        try {
            parse_problem(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of(problem("0, 1\nz, 0\n", "0 0")), 6);
    EXPECT_EQ(line_of(problem("0, 1\nz, 0\n", "inf", "genus 1\n")), 7);
    EXPECT_EQ(line_of(problem("0, 1, 2\nz, 0, 1\n", "inf")), 3);
    EXPECT_EQ(line_of(problem("0, 1\n", "inf")), 2);
    EXPECT_EQ(line_of(problem("0, 1\nz^(1/2), 0\n", "inf")), 4);
    EXPECT_EQ(line_of(problem("0, 1\nz,\n", "inf")), 4);
    EXPECT_EQ(line_of("rank 2\nmatrix\n0, 1\nz, 0\n"), 2);
    EXPECT_EQ(line_of(problem("0, 1\nz, 0\n", "sqrt2")), 6);
    EXPECT_EQ(line_of("rank two\n"), 1);
    EXPECT_EQ(line_of("colour blue\n"), 1);
    EXPECT_THROW(parse_problem("rank 2\n"), ParseError);
}

TEST(Parser, RandomRoundTrip) {
    std::mt19937 rng(7);
    int parsed = 0;
    for (int i = 0; i < 300; ++i) {
        const std::string e = random_expr(rng, 3);
        RatFn f;
        try {
            f = parse_ratfn(e);
        } catch (const ParseError&) {
            continue;  // a zero base with negative exponent or a zero divisor
        }
        ++parsed;
        EXPECT_EQ(parse_ratfn(f.to_string("z")), f) << e;
        EXPECT_EQ(parse_ratfn(f.to_string("t"), "t"), f) << e;
    }
    EXPECT_GT(parsed, 200);
}

TEST(Parser, ProblemTextRoundTrip) {
    for (const char* name : {"airy.problem", "fuchsian_diag.problem", "rank1_log.problem", "bessel.problem"}) {
        auto p = parse_problem(read_file(data(name)));
        auto q = parse_problem(to_text(p));
        EXPECT_EQ(q.matrix, p.matrix) << name;
        EXPECT_EQ(q.poles, p.poles) << name;
        EXPECT_EQ(to_text(q), to_text(p)) << name;
    }
}

TEST(Report, RoundTripAndDeterminism) {
    for (const char* name : {"airy.problem", "airy_k3.problem", "fuchsian_diag.problem", "rank1_double.problem", "bessel.problem"}) {
        const std::string a = dump_report(analyze(name).report);
        EXPECT_EQ(dump_report(parse_report(a)), a) << name;
        EXPECT_EQ(dump_report(analyze(name).report), a) << name;
    }
}

TEST(Report, Goldens) {
    for (const char* s : {"airy", "airy_k3", "airy_k5", "fuchsian_diag", "rank1_double", "rank1_log"}) {
        const std::string golden = read_file(data(std::string("golden/") + s + ".json"));
        ASSERT_FALSE(golden.empty()) << s;
        EXPECT_EQ(dump_report(analyze(std::string(s) + ".problem").report), golden) << s;
    }
}

TEST(Report, TextRows) {
    const std::string airy = render_text(analyze("airy.problem").report);
    EXPECT_EQ(row(airy, "inf"), (std::vector<std::string>{"3", "1", "3", "3", "6", "4", "2", "1", "5"}));
    EXPECT_EQ(airy.find("warnings"), std::string::npos);
    EXPECT_NE(airy.find("main theorem: true"), std::string::npos);
    const std::string r1 = render_text(analyze("rank1_double.problem").report);
    EXPECT_EQ(row(r1, "0"), (std::vector<std::string>{"2", "1", "1", "0", "0", "0", "0", "1", "2"}));
    auto w = run_analysis(parse_problem(problem("0, 1\nz, 0\n", "inf 3")));
    EXPECT_EQ(w.exit_code, 0);
    EXPECT_NE(render_text(w.report).find("warnings"), std::string::npos);
}

TEST(Pipeline, ExitCodes) {
    auto airy = analyze("airy.problem");
    EXPECT_EQ(airy.exit_code, kExitOk);
    EXPECT_EQ(airy.report["main_theorem"]["verdict"], "true");
    EXPECT_EQ(airy.report["global"]["rig"], 2);
    EXPECT_EQ(airy.report["global"]["chi"], 2);

    auto bessel = analyze("bessel.problem");
    EXPECT_EQ(bessel.exit_code, kExitAnalysisError);
    const auto& p0 = bessel.report["poles"][0];
    EXPECT_EQ(p0["point"], "0");
    EXPECT_EQ(p0["status"], "assumption-violation");
    EXPECT_FALSE(p0.contains("invariants"));
    EXPECT_FALSE(p0.contains("germ"));
    EXPECT_EQ(bessel.report["diagnostics"][0]["kind"], "assumption-violation");

    auto fu = analyze("fuchsian_diag.problem");
    EXPECT_EQ(fu.exit_code, kExitOk);
    EXPECT_EQ(fu.report["main_theorem"]["verdict"], "not-applicable");
    for (const auto& p : fu.report["poles"])
        for (const auto& [k, v] : p["verdicts"].items()) EXPECT_EQ(v["verdict"], "pass") << k;

    auto undeclared = run_analysis(parse_problem(problem("0, 1/z\n1, 0\n", "inf")));
    EXPECT_EQ(undeclared.exit_code, kExitAnalysisError);
    EXPECT_EQ(undeclared.report["diagnostics"][0]["kind"], "pole-set");

    auto spec = parse_problem(read_file(data("airy.problem")));
    spec.truncation = 3;
    auto t = run_analysis(spec);
    EXPECT_EQ(t.exit_code, kExitOk);
    EXPECT_EQ(t.report["poles"][0]["truncation"], 3);
    EXPECT_EQ(t.report["input"]["flags"]["truncation"], 3);
}

TEST(Pipeline, Flags) {
    auto spec = parse_problem(read_file(data("airy_k3.problem")));
    spec.assert_irreducible_connection = true;
    spec.check_reduction = true;
    auto r = run_analysis(spec);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_EQ(r.report["global"]["cohomology"], (Json{{"h0", 1}, {"h1", 2}, {"h2", 1}}));
    EXPECT_EQ(r.report["poles"][0]["verdicts"]["reduction_cells"]["verdict"], "pass");
    EXPECT_FALSE(analyze("airy_k3.problem").report["global"].contains("cohomology"));

    auto unknown = parse_problem(problem("0, 1\nz^2 + 1, 0\n", "inf"));
    auto u = run_analysis(unknown);
    EXPECT_EQ(u.report["global"]["irreducibility"]["status"], "unknown");
    EXPECT_EQ(u.report["main_theorem"]["verdict"], "not-applicable");
    unknown.assume_irreducible_curve = true;
    EXPECT_EQ(run_analysis(unknown).report["main_theorem"]["verdict"], "true");
}

TEST(Cli, ExitStatus) {
    auto status = [](const std::string& args) {
        const std::string cmd = std::string(SPECRIG_CLI) + " analyze " + args + " > /dev/null 2>&1";
        const int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(data("airy.problem")), 0);
    EXPECT_EQ(status(data("airy.problem") + " --text --check-reduction"), 0);
    EXPECT_EQ(status(data("bessel.problem")), 2);
    EXPECT_EQ(status(data("fuchsian_diag.problem") + " --assume-irreducible-curve"), 0);
    EXPECT_EQ(status(data("missing.problem")), 2);
}

TEST(Pipeline, ArithmeticGenusNonnegativeOnCorpus) {
    for (const char* name : {"airy.problem", "airy_k3.problem", "airy_k5.problem", "fuchsian_diag.problem", "rank1_double.problem",
                             "rank1_log.problem"}) {
        const auto r = analyze(name).report;
        ASSERT_TRUE(r["global"].contains("g_a")) << name;
        EXPECT_GE(r["global"]["g_a"].get<long>(), 0) << name;
    }
}
