#pragma once

// The germ file format: a line-based structured text document holding the
// weighting, the trusted truncation, and the nonzero coefficients of the
// defining series as exact rationals.
//
//   # comment
//   weights u 2
//   truncation 8
//   term 1 1 0 1 0        (i j m re im, rationals as p/q or integers)

#include <crnf/germ.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace crnf {

inline Series3<GaussianRational> parse_germ_series(std::istream& in) {
    std::optional<int> u_weight;
    std::optional<int> truncation;
    std::vector<std::pair<Mono3, GaussianRational>> terms;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        raise(Errc::ParseError, "line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "weights") {
            std::string var;
            int w = 0;
            if (!(ls >> var >> w) || var != "u") fail("expected 'weights u <positive integer>'");
            if (w < 2) fail("u weight must be at least 2");
            u_weight = w;
        } else if (head == "truncation") {
            int t = 0;
            if (!(ls >> t) || t < 0) fail("expected 'truncation <nonnegative integer>'");
            truncation = t;
        } else if (head == "term") {
            int i = 0, j = 0, m = 0;
            std::string re, im;
            if (!(ls >> i >> j >> m >> re >> im)) fail("expected 'term i j m re im'");
            if (i < 0 || j < 0 || m < 0) fail("negative exponent");
            GaussianRational c;
            try {
                c = GaussianRational(parse_rational(re), parse_rational(im));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
            terms.emplace_back(Mono3{i, j, m}, c);
        } else {
            fail("unknown directive '" + head + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing content '" + extra + "'");
    }
    lineno = 0;
    if (!u_weight) raise(Errc::ParseError, "missing 'weights u <w>' line");
    if (!truncation) raise(Errc::ParseError, "missing 'truncation <t>' line");
    Series3<GaussianRational> s(Weighting(*u_weight), *truncation);
    for (const auto& [key, c] : terms) {
        if (key.weighted_degree(s.weighting()) > s.trunc())
            raise(Errc::ParseError, "term " + std::to_string(key.i) + " " + std::to_string(key.j) +
                                        " " + std::to_string(key.m) +
                                        " exceeds the declared truncation");
        if (!s.coeff(key).is_zero())
            raise(Errc::ParseError, "duplicate term " + std::to_string(key.i) + " " +
                                        std::to_string(key.j) + " " + std::to_string(key.m));
        s.set(key, c);
    }
    if (!is_hermitian(s))
        raise(Errc::ParseError,
              "series is not hermitian-real: coeff(i,j,m) must equal conj(coeff(j,i,m))");
    return s;
}

inline Germ parse_germ(std::istream& in) {
    Series3<GaussianRational> s = parse_germ_series(in);
    try {
        return Germ(std::move(s));
    } catch (const Error& e) {
        raise(Errc::ParseError, std::string("not a valid germ: ") + e.what());
    }
}

/// Keys ordered by (weighted degree, i, j, m): the stable report order.
inline std::vector<Mono3> sorted_keys(const Series3<GaussianRational>& s) {
    std::vector<Mono3> keys;
    for (const auto& [key, c] : s.terms()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](const Mono3& a, const Mono3& b) {
        const int da = a.weighted_degree(s.weighting());
        const int db = b.weighted_degree(s.weighting());
        if (da != db) return da < db;
        return std::tie(a.i, a.j, a.m) < std::tie(b.i, b.j, b.m);
    });
    return keys;
}

inline void serialize_germ_series(const Series3<GaussianRational>& s, std::ostream& out) {
    out << "weights u " << s.weighting().u_weight << "\n";
    out << "truncation " << s.trunc() << "\n";
    for (const auto& key : sorted_keys(s)) {
        const GaussianRational c = s.coeff(key);
        out << "term " << key.i << " " << key.j << " " << key.m << " " << to_string(c.re) << " "
            << to_string(c.im) << "\n";
    }
}

}  // namespace crnf
