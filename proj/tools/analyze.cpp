// specrig analyze <file>: prints the report document, or a table with --text.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "specrig/io/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Invariants of meromorphic connections on the projective line and their spectral curves"};
    app.require_subcommand(1);
    auto* analyze = app.add_subcommand("analyze", "Analyze a problem file");
    std::string path;
    bool text = false;
    specrig::ProblemSpec flags;
    analyze->add_option("file", path, "Problem file")->required();
    analyze->add_flag("--text", text, "Print a table instead of the report document");
    analyze->add_flag("--assume-irreducible-curve", flags.assume_irreducible_curve,
                      "Treat the spectral curve as irreducible when this cannot be decided");
    analyze->add_flag("--assert-irreducible-connection", flags.assert_irreducible_connection,
                      "Report cohomology dimensions of the endomorphism connection");
    analyze->add_option("--truncation", flags.truncation, "Series truncation order for all expansions")
        ->check(CLI::PositiveNumber);
    analyze->add_flag("--check-reduction", flags.check_reduction,
                      "Cross-check HTL cells against the splitting reduction");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return specrig::kExitAnalysisError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    specrig::ProblemSpec spec;
    try {
        spec = specrig::parse_problem(buf.str());
    } catch (const specrig::ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return specrig::kExitAnalysisError;
    }
    spec.assume_irreducible_curve = flags.assume_irreducible_curve;
    spec.assert_irreducible_connection = flags.assert_irreducible_connection;
    spec.truncation = flags.truncation;
    spec.check_reduction = flags.check_reduction;
    const auto res = specrig::run_analysis(spec);
    std::cout << (text ? specrig::render_text(res.report) : specrig::dump_report(res.report));
    return res.exit_code;
}
