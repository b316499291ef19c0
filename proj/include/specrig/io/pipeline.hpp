#pragma once

// End-to-end analysis of a problem: local modules and germs at each pole,
// the global invariants, and the verdicts, collected into a report.

#include <string>
#include <vector>

#include "specrig/exact/poles.hpp"
#include "specrig/global/global.hpp"
#include "specrig/io/parser.hpp"
#include "specrig/io/report.hpp"

namespace specrig {

enum ExitCode : int { kExitOk = 0, kExitVerdictFailure = 1, kExitAnalysisError = 2 };

struct AnalysisResult {
    Json report;
    int exit_code = kExitOk;
};

namespace detail {

inline const char* error_kind(const Error& e) {
    if (dynamic_cast<const InsufficientTruncation*>(&e)) return "insufficient-truncation";
    if (dynamic_cast<const UnsupportedExtension*>(&e)) return "unsupported-extension";
    if (dynamic_cast<const UnsupportedPoint*>(&e)) return "unsupported-point";
    if (dynamic_cast<const PoleSetError*>(&e)) return "pole-set";
    if (dynamic_cast<const InternalInconsistency*>(&e)) return "internal-inconsistency";
    return "math-error";
}

inline Json verdict_json(Verdict v, const Json& lhs, const Json& rhs, const std::string& reason = "") {
    Json j;
    j["verdict"] = to_string(v);
    if (!lhs.is_null()) j["lhs"] = lhs;
    if (!rhs.is_null()) j["rhs"] = rhs;
    if (!reason.empty()) j["reason"] = reason;
    return j;
}

inline Json verdict_json(const IdentityCheck& c) { return verdict_json(c.verdict, c.lhs, c.rhs, c.reason); }

inline Json cell_json(const HTLCell& c) {
    Json j;
    j["r"] = c.r;
    j["p"] = c.p;
    Json q = Json::array();
    for (const auto& t : c.q) q.push_back({{"exponent", to_pq(t.exponent)}, {"coeff", exact_string(t.coeff)}});
    j["q"] = std::move(q);
    if (c.residue) j["residue"] = exact_string(*c.residue);
    return j;
}

inline LocalOptions local_options(const ProblemSpec& spec) {
    LocalOptions opt;
    if (spec.truncation > 0) {
        opt.truncation = spec.truncation;
        opt.puiseux.initial_precision = spec.truncation;
        opt.puiseux.max_precision = spec.truncation;
    }
    return opt;
}

inline Json input_json(const ProblemSpec& spec) {
    Json in;
    in["variable"] = spec.variable;
    in["rank"] = spec.rank;
    Json rows = Json::array();
    for (std::size_t i = 0; i < spec.matrix.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < spec.matrix.cols(); ++j) row.push_back(spec.matrix(i, j).to_string(spec.variable));
        rows.push_back(std::move(row));
    }
    in["matrix"] = std::move(rows);
    Json poles = Json::array();
    for (const auto& p : spec.poles) poles.push_back(to_string(p));
    in["poles"] = std::move(poles);
    in["genus"] = spec.genus;
    in["flags"] = {{"assume_irreducible_curve", spec.assume_irreducible_curve},
                   {"assert_irreducible_connection", spec.assert_irreducible_connection},
                   {"truncation", spec.truncation > 0 ? Json(spec.truncation) : Json()},
                   {"check_reduction", spec.check_reduction}};
    return in;
}

struct PoleOutcome {
    bool ok = false;
    LocalModule local;
    GermData germ;
    long delta_end = 0;
};

}  // namespace detail

inline AnalysisResult run_analysis(const ProblemSpec& spec) {
    AnalysisResult res;
    Json& r = res.report;
    r["schema_version"] = kSchemaVersion;
    r["input"] = detail::input_json(spec);
    Json poles_out = Json::array();
    Json warnings = Json::array();
    Json diagnostics = Json::array();
    bool analysis_error = false;
    bool verdict_failure = false;
    auto fail_on = [&](Verdict v) { verdict_failure = verdict_failure || v == Verdict::Fail; };

    std::vector<Point> poles;
    try {
        if (spec.genus != 0) throw MathError("only genus 0 is supported");
        auto pv = pole_set_validate(spec.matrix, spec.poles);
        poles = pv.poles;
        for (auto& w : pv.warnings) warnings.push_back(w);
    } catch (const Error& e) {
        diagnostics.push_back({{"kind", detail::error_kind(e)}, {"message", e.what()}});
        analysis_error = true;
    }

    const LocalOptions opt = detail::local_options(spec);
    std::vector<detail::PoleOutcome> outcomes;
    bool unreliable = false;
    for (const auto& a : poles) {
        Json pj;
        pj["point"] = to_string(a);
        detail::PoleOutcome out;
        try {
            out.local = build_local(spec.matrix, a, opt);
            const auto& L = out.local;
            pj["nu"] = L.nu;
            pj["truncation"] = L.truncation;
            pj["assumption"] = {{"mode", to_string(L.assumption.mode)}};
            if (!L.assumption.ok()) {
                pj["assumption"]["reason"] = L.assumption.reason;
                pj["status"] = "assumption-violation";
                pj["error"] = L.assumption.reason;
                diagnostics.push_back({{"kind", "assumption-violation"}, {"point", to_string(a)}, {"message", L.assumption.reason}});
                analysis_error = true;
                poles_out.push_back(std::move(pj));
                outcomes.push_back(std::move(out));
                continue;
            }
            for (const auto& w : L.warnings) warnings.push_back(w);
            unreliable = unreliable || L.unreliable;
            Json cells = Json::array();
            for (const auto& c : L.cells) cells.push_back(detail::cell_json(c));
            pj["cells"] = std::move(cells);

            out.germ = build_germ(L);
            out.delta_end = delta_end(L);
            const auto& g = out.germ;
            const long ie = irr_end(L);
            const long ie_disc = irr_end_from_discriminant(L);
            pj["invariants"] = {{"m", static_cast<long>(L.m())}, {"irr", irregularity(L)},   {"irr_end", ie},
                                {"irr_end_discriminant", ie_disc}, {"delta_end", out.delta_end}, {"hor_dim", hor_dim(L)}};

            Json gj;
            Json branches = Json::array();
            for (const auto& b : g.branches) branches.push_back({{"cell", b.cell}, {"r", b.r}, {"p", b.p}});
            gj["branches"] = std::move(branches);
            gj["r_C"] = g.r_C();
            gj["local_inf"] = g.local_inf;
            Json verdicts;
            if (g.empty()) {
                gj["mu"] = 0;
                gj["delta"] = 0;
                verdicts["milnor"] = detail::verdict_json(Verdict::NotApplicable, Json(), Json(), "no point at infinity over this pole");
                verdicts["delta_identity"] = verdicts["milnor"];
            } else {
                const MilnorOracle o = germ_milnor_oracle(L.charpoly);
                gj["mu"] = g.mu;
                gj["mu_branches"] = germ_milnor_from_branches(g);
                gj["mu_oracle"] = o.mu;
                gj["oracle_degree"] = o.degree;
                gj["delta"] = g.delta;
                auto mc = verify_milnor(g, out.delta_end, o);
                if (mc.verdict == Verdict::Pass && o.mu != g.mu) {
                    mc.verdict = Verdict::Fail;
                    mc.reason = "oracle differs from the germ formula";
                }
                auto dc = verify_delta_identity(g, out.delta_end);
                fail_on(mc.verdict);
                fail_on(dc.verdict);
                verdicts["milnor"] = detail::verdict_json(mc);
                verdicts["delta_identity"] = detail::verdict_json(dc);
            }
            pj["germ"] = std::move(gj);

            Rat contacts(0);
            for (std::size_t i = 0; i < L.n; ++i)
                for (std::size_t j = 0; j < L.n; ++j)
                    if (i != j) contacts += L.puiseux.contact[i][j];
            contacts.canonicalize();
            const Rat ord_disc(discriminant_rf(L.charpoly).order_at_zero());
            const Verdict dv = contacts == ord_disc ? Verdict::Pass : Verdict::Fail;
            fail_on(dv);
            verdicts["discriminant_valuation"] = detail::verdict_json(dv, to_pq(contacts), to_pq(ord_disc));
            const Verdict iv = ie == ie_disc ? Verdict::Pass : Verdict::Fail;
            fail_on(iv);
            verdicts["irr_end_routes"] = detail::verdict_json(iv, ie, ie_disc);
            if (spec.check_reduction) {
                try {
                    const auto R = reduce_local(L, opt);
                    const Verdict rv = reduction_cells_agree(L, R) ? Verdict::Pass : Verdict::Fail;
                    fail_on(rv);
                    verdicts["reduction_cells"] = detail::verdict_json(rv, Json(), Json());
                } catch (const Error& e) {
                    verdicts["reduction_cells"] =
                        detail::verdict_json(Verdict::NotApplicable, Json(), Json(), std::string("reduction unavailable: ") + e.what());
                }
            }
            pj["verdicts"] = std::move(verdicts);
            pj["status"] = "ok";
            out.ok = true;
        } catch (const Error& e) {
            pj["status"] = "error";
            pj["error"] = e.what();
            diagnostics.push_back({{"kind", detail::error_kind(e)}, {"point", to_string(a)}, {"message", e.what()}});
            analysis_error = true;
        }
        poles_out.push_back(std::move(pj));
        outcomes.push_back(std::move(out));
    }
    r["poles"] = std::move(poles_out);

    Json gl;
    const long n = static_cast<long>(spec.rank);
    gl["n"] = n;
    gl["g"] = spec.genus;
    Json mt;
    if (analysis_error) {
        gl["status"] = "incomplete";
        gl["reason"] = "local analysis failed at some pole";
        mt["verdict"] = "not-applicable";
        mt["reason"] = "analysis incomplete";
    } else {
        try {
            std::vector<GermData> germs;
            std::vector<LocalModule> locals;
            std::vector<long> delta_ends;
            long sum_delta = 0;
            for (const auto& o : outcomes) {
                germs.push_back(o.germ);
                locals.push_back(o.local);
                delta_ends.push_back(o.delta_end);
                sum_delta += o.germ.delta;
            }
            const CurveClass cc{n, total_inf_intersection(germs), spec.genus};
            const long g_a = arithmetic_genus(cc);
            const long chi = euler_char_normalization(g_a, sum_delta);
            const long rig = rigidity_index(n, spec.genus, delta_ends);
            gl["b"] = cc.b;
            gl["g_a"] = g_a;
            gl["sum_delta"] = sum_delta;
            gl["chi"] = chi;
            gl["rig"] = rig;
            if (spec.assert_irreducible_connection) {
                const auto h = cohomology_dims(rig);
                gl["cohomology"] = {{"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}};
                if (h.warning) warnings.push_back(*h.warning);
            }
            const auto irr = irreducibility_status(charpoly(spec.matrix), locals);
            gl["irreducibility"] = {{"status", to_string(irr.status)}, {"reason", irr.reason}};
            const auto sm = smoothness_check(spec.matrix, poles);
            Json sp = Json::array();
            for (const auto& s : sm.singular_points) sp.push_back(s);
            gl["smoothness"] = {{"status", to_string(sm.status)}, {"singular_points", std::move(sp)}, {"reason", sm.reason}};

            std::string why;
            if (irr.status == Irreducibility::Reducible) why = "spectral curve is reducible";
            else if (irr.status == Irreducibility::Unknown && !spec.assume_irreducible_curve)
                why = "irreducibility of the spectral curve is unknown (" + irr.reason + ")";
            else if (sm.status != Smoothness::Smooth) why = "spectral curve is " + std::string(to_string(sm.status)) + ": " + sm.reason;
            else if (unreliable) why = "resonant residues make the local data unreliable";
            if (!why.empty()) {
                mt["verdict"] = "not-applicable";
                mt["reason"] = why;
            } else {
                mt["verdict"] = rig == chi ? "true" : "false";
                mt["rig"] = rig;
                mt["chi"] = chi;
                if (rig != chi) verdict_failure = true;
            }
        } catch (const Error& e) {
            diagnostics.push_back({{"kind", detail::error_kind(e)}, {"message", e.what()}});
            analysis_error = true;
            gl = {{"n", n}, {"g", spec.genus}, {"status", "incomplete"}, {"reason", e.what()}};
            mt = {{"verdict", "not-applicable"}, {"reason", "analysis incomplete"}};
        }
    }
    r["global"] = std::move(gl);
    r["main_theorem"] = std::move(mt);
    r["warnings"] = std::move(warnings);
    r["diagnostics"] = std::move(diagnostics);
    res.exit_code = analysis_error ? kExitAnalysisError : verdict_failure ? kExitVerdictFailure : kExitOk;
    r["exit_code"] = res.exit_code;
    return res;
}

}  // namespace specrig
