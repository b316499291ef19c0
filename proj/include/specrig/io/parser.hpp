#pragma once

// Problem files: a connection matrix of rational functions on the projective
// line with its declared poles.
//
//   # comment
//   variable z
//   rank 2
//   matrix
//     0, 1
//     z, 0
//   end
//   poles inf
//   genus 0
//
// Entries use integers, the variable, + - * / ^ (integer exponents) and
// parentheses.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "specrig/exact/errors.hpp"
#include "specrig/exact/localize.hpp"
#include "specrig/exact/ratfn.hpp"

namespace specrig {

struct ProblemSpec {
    std::string variable = "z";
    std::size_t rank = 0;
    std::vector<std::vector<std::string>> entries;
    MatRF matrix;
    std::vector<Point> poles;
    long genus = 0;
    bool assume_irreducible_curve = false;
    bool assert_irreducible_connection = false;
    long truncation = 0;
    bool check_reduction = false;
};

namespace detail {

class ExprParser {
   public:
    ExprParser(const std::string& text, const std::string& var, int line, int col0)
        : s_(text), var_(var), line_(line), col0_(col0) {}

    RatFn parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        RatFn v = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFn expr() {
        RatFn v = term();
        while (true) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    RatFn term() {
        RatFn v = unary();
        while (true) {
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                RatFn d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v = v / d;
            } else {
                return v;
            }
        }
    }

    RatFn unary() {
        if (eat('-')) return RatFn(Rat(0)) - unary();
        if (eat('+')) return unary();
        return power();
    }

    RatFn power() {
        RatFn base = atom();
        if (!eat('^')) return base;
        skip();
        const std::size_t at = pos_;
        long e = 0;
        if (eat('(')) {
            e = integer(true);
            if (!eat(')')) {
                pos_ = at;
                fail("exponent must be an integer");
            }
        } else {
            e = integer(true);
        }
        if (e < 0 && base.is_zero()) {
            pos_ = at;
            fail("negative power of zero");
        }
        return base.pow(e);
    }

    long integer(bool allow_sign) {
        skip();
        const std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("exponent must be an integer");
        }
        if (pos_ - digits > 6) {
            pos_ = start;
            fail("exponent too large");
        }
        long v = std::stol(s_.substr(digits, pos_ - digits));
        return neg ? -v : v;
    }

    RatFn atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFn v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFn(Rat(Int(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name != var_) {
                pos_ = start;
                fail("unknown identifier '" + name + "'");
            }
            return RatFn::var();
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    const std::string& var_;
    int line_;
    int col0_;
    std::size_t pos_ = 0;
};

inline std::string trim_copy(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Whitespace- or comma-separated words with their 1-based columns.
inline std::vector<std::pair<std::string, int>> words(const std::string& s, std::size_t from) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = from;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
        out.emplace_back(s.substr(i, j - i), static_cast<int>(i) + 1);
        i = j;
    }
    return out;
}

}  // namespace detail

/// Parses one expression in the given variable.
inline RatFn parse_ratfn(const std::string& text, const std::string& var = "z", int line = 0, int col = 1) {
    return detail::ExprParser(text, var, line, col).parse();
}

/// Parses a rational number or "inf".
inline Point parse_point(const std::string& word, int line, int col) {
    if (word == "inf") return Point::at_infinity();
    try {
        return Point::at(parse_rat(word));
    } catch (const std::exception&) {
        throw ParseError("invalid pole '" + word + "'", line, col);
    }
}

inline ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_rank = false, have_matrix = false, have_poles = false;
    std::vector<std::vector<std::pair<std::string, std::pair<int, int>>>> rows;
    int matrix_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        if (detail::trim_copy(s).empty()) continue;
        auto ws = detail::words(s, 0);
        const std::string key = ws[0].first;
        const int kcol = ws[0].second;
        auto need_args = [&](std::size_t k) {
            if (ws.size() != k + 1)
                throw ParseError("'" + key + "' expects " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"), line,
                                 kcol);
        };
        if (key == "variable") {
            need_args(1);
            const auto& v = ws[1].first;
            if (!std::isalpha(static_cast<unsigned char>(v[0])) || v == "inf" ||
                !std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
                throw ParseError("invalid variable name '" + v + "'", line, ws[1].second);
            spec.variable = v;
        } else if (key == "rank") {
            need_args(1);
            const auto& v = ws[1].first;
            if (v.empty() || v.size() > 3 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                std::stol(v) < 1)
                throw ParseError("rank must be a positive integer", line, ws[1].second);
            spec.rank = static_cast<std::size_t>(std::stol(v));
            have_rank = true;
        } else if (key == "genus") {
            need_args(1);
            if (ws[1].first != "0") throw ParseError("only genus 0 is supported", line, ws[1].second);
            spec.genus = 0;
        } else if (key == "poles") {
            if (ws.size() < 2) throw ParseError("'poles' expects at least one point", line, kcol);
            for (std::size_t i = 1; i < ws.size(); ++i) {
                Point p = parse_point(ws[i].first, line, ws[i].second);
                if (std::find(spec.poles.begin(), spec.poles.end(), p) != spec.poles.end())
                    throw ParseError("duplicate pole " + to_string(p), line, ws[i].second);
                spec.poles.push_back(p);
            }
            have_poles = true;
        } else if (key == "matrix") {
            need_args(0);
            if (have_matrix) throw ParseError("duplicate matrix block", line, kcol);
            matrix_line = line;
            bool closed = false;
            while (std::getline(in, raw)) {
                ++line;
                std::string r = raw.substr(0, raw.find('#'));
                if (detail::trim_copy(r).empty()) continue;
                if (detail::trim_copy(r) == "end") {
                    closed = true;
                    break;
                }
                std::vector<std::pair<std::string, std::pair<int, int>>> row;
                std::size_t start = 0;
                while (true) {
                    std::size_t comma = r.find(',', start);
                    std::string cell = r.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                    std::size_t lead = cell.find_first_not_of(" \t\r");
                    int col = static_cast<int>(start + (lead == std::string::npos ? 0 : lead)) + 1;
                    if (detail::trim_copy(cell).empty()) throw ParseError("empty matrix entry", line, col);
                    row.push_back({detail::trim_copy(cell), {line, col}});
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
                rows.push_back(std::move(row));
            }
            if (!closed) throw ParseError("matrix block is not closed by 'end'", matrix_line, kcol);
            have_matrix = true;
        } else {
            throw ParseError("unknown keyword '" + key + "'", line, kcol);
        }
    }
    if (!have_rank) throw ParseError("missing 'rank'");
    if (!have_matrix) throw ParseError("missing 'matrix' block");
    if (!have_poles) throw ParseError("missing 'poles'");
    if (rows.size() != spec.rank)
        throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(spec.rank),
                         matrix_line, 1);
    spec.matrix = MatRF(spec.rank, spec.rank);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != spec.rank)
            throw ParseError("row has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(spec.rank),
                             rows[i][0].second.first, rows[i][0].second.second);
        std::vector<std::string> texts;
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            const auto& [t, pos] = rows[i][j];
            spec.matrix(i, j) = parse_ratfn(t, spec.variable, pos.first, pos.second);
            texts.push_back(t);
        }
        spec.entries.push_back(std::move(texts));
    }
    return spec;
}

/// Canonical problem text; parse_problem(to_text(p)) reproduces the matrix.
inline std::string to_text(const ProblemSpec& p) {
    std::ostringstream os;
    os << "variable " << p.variable << "\n";
    os << "rank " << p.rank << "\n";
    os << "matrix\n";
    for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
        os << " ";
        for (std::size_t j = 0; j < p.matrix.cols(); ++j) os << (j ? ", " : " ") << p.matrix(i, j).to_string(p.variable);
        os << "\n";
    }
    os << "end\n";
    os << "poles";
    for (const auto& a : p.poles) os << " " << to_string(a);
    os << "\n";
    os << "genus " << p.genus << "\n";
    return os.str();
}

}  // namespace specrig
