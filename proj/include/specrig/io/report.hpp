#pragma once

// Report documents: an ordered JSON tree with exact values as strings, and a
// fixed-layout text rendering of it.

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"
#include "specrig/algebra/numfield.hpp"
#include "specrig/exact/rational.hpp"

namespace specrig {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// "p/q" for rationals, "root of f(x)" otherwise.
inline std::string exact_string(const AlgNum& a) {
    if (a.is_rational()) return to_pq(a.rational_value());
    return "root of " + to_string(a.minpoly_q(), "x");
}

inline std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

inline Json parse_report(const std::string& text) { return Json::parse(text); }

namespace detail {

inline std::string cell(const Json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string pad_left(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

}  // namespace detail

inline std::string render_text(const Json& r) {
    std::ostringstream os;
    const auto& in = r.at("input");
    os << "rank " << in.at("rank").get<long>() << " connection in " << in.at("variable").get<std::string>() << "\n\n";
    static const char* heads[] = {"nu", "m", "Irr", "Irr(End)", "delta(End)", "mu", "delta", "r_C", "(C,X_inf)"};
    static const char* keys[] = {"nu", "m", "irr", "irr_end", "delta_end", "mu", "delta", "r_C", "local_inf"};
    os << detail::pad_right("pole", 8);
    for (const char* h : heads) os << "  " << detail::pad_left(h, 10);
    os << "\n";
    for (const auto& p : r.at("poles")) {
        os << detail::pad_right(p.at("point").get<std::string>(), 8);
        if (p.at("status") != "ok") {
            os << "  " << p.at("status").get<std::string>() << ": " << p.at("error").get<std::string>() << "\n";
            continue;
        }
        const auto& inv = p.at("invariants");
        const auto& g = p.at("germ");
        for (const char* k : keys) {
            Json v;
            if (inv.contains(k)) v = inv.at(k);
            else if (std::string(k) == "nu") v = p.at("nu");
            else v = g.at(k);
            os << "  " << detail::pad_left(detail::cell(v), 10);
        }
        os << "\n";
    }
    os << "\n";
    const auto& gl = r.at("global");
    os << "global\n";
    if (gl.contains("rig")) {
        os << "  n = " << detail::cell(gl.at("n")) << ", b = " << detail::cell(gl.at("b"))
           << ", g_a = " << detail::cell(gl.at("g_a")) << ", chi = " << detail::cell(gl.at("chi"))
           << ", rig = " << detail::cell(gl.at("rig")) << "\n";
        if (gl.contains("cohomology")) {
            const auto& h = gl.at("cohomology");
            os << "  h^i = " << detail::cell(h.at("h0")) << ", " << detail::cell(h.at("h1")) << ", "
               << detail::cell(h.at("h2")) << "\n";
        }
        os << "  irreducibility: " << gl.at("irreducibility").at("status").get<std::string>() << "\n";
        os << "  smoothness: " << gl.at("smoothness").at("status").get<std::string>() << "\n";
    } else {
        os << "  n = " << detail::cell(gl.at("n")) << ", incomplete: " << gl.at("reason").get<std::string>() << "\n";
    }
    os << "\nverdicts\n";
    for (const auto& p : r.at("poles")) {
        if (!p.contains("verdicts")) continue;
        for (const auto& [name, v] : p.at("verdicts").items())
            os << "  " << name << " at " << p.at("point").get<std::string>() << ": " << v.at("verdict").get<std::string>()
               << "\n";
    }
    const auto& mt = r.at("main_theorem");
    os << "  main theorem: " << mt.at("verdict").get<std::string>();
    if (mt.contains("reason")) os << " (" << mt.at("reason").get<std::string>() << ")";
    os << "\n";
    if (!r.at("warnings").empty()) {
        os << "\nwarnings\n";
        for (const auto& w : r.at("warnings")) os << "  " << w.get<std::string>() << "\n";
    }
    os << "\nexit code " << r.at("exit_code").get<int>() << "\n";
    return os.str();
}

}  // namespace specrig
