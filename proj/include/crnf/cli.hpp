#pragma once

// Command line front end. `run` takes the argument vector (without the
// program name) and streams; reports go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 domain verdicts (unsupported or undecidable
// inputs), 2 malformed input or usage.

#include <crnf/aut_classify.hpp>
#include <crnf/counting.hpp>
#include <crnf/equivalence.hpp>
#include <crnf/germ_file.hpp>
#include <crnf/pipeline.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace crnf::cli {

inline Germ load_germ(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::ParseError, "cannot open '" + path + "'");
    return parse_germ(in);
}

inline void print_series(const Series3<GaussianRational>& s, const std::string& prefix,
                         std::ostream& out) {
    for (const auto& key : sorted_keys(s)) {
        const GaussianRational c = s.coeff(key);
        out << prefix << "term " << key.i << " " << key.j << " " << key.m << " "
            << to_string(c.re) << " " << to_string(c.im) << "\n";
    }
}

inline void print_holo(const HoloSeries<GaussianRational>& h, const std::string& prefix,
                       std::ostream& out) {
    std::vector<Mono2> keys;
    for (const auto& [key, c] : h.terms()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](const Mono2& a, const Mono2& b) {
        const int da = a.weighted_degree(h.weighting());
        const int db = b.weighted_degree(h.weighting());
        if (da != db) return da < db;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    for (const auto& key : keys) {
        const GaussianRational c = h.coeff(key);
        out << prefix << "term " << key.i << " " << key.j << " " << to_string(c.re) << " "
            << to_string(c.im) << "\n";
    }
}

inline void print_model(const ModelPoly& model, std::ostream& out) {
    out << "k " << model.k << "\n";
    out << "l " << model.l << "\n";
    out << "class " << model_class_name(model.klass) << "\n";
    for (const auto& [j, c] : model.a)
        out << "P term " << j << " " << model.k - j << " 0 " << to_string(c.re) << " "
            << to_string(c.im) << "\n";
}

inline void print_report(const NormalFormReport& report, std::ostream& out) {
    out << "case " << case_name(report.kase) << "\n";
    out << "order " << report.order << "\n";
    out << "weights u " << report.normalized.weighting().u_weight << "\n";
    print_model(report.model, out);
    out << "map f\n";
    print_holo(report.map.f(), "  ", out);
    out << "map g\n";
    print_holo(report.map.g(), "  ", out);
    out << "normalized\n";
    print_series(report.normalized.phi(), "  ", out);
    for (const auto& cert : report.conditions) {
        out << "condition " << cert.family << " all-zero "
            << (cert.all_zero ? "true" : "false") << "\n";
        if (!cert.all_zero)
            for (const auto& [label, value] : cert.entries)
                if (!value.is_zero())
                    out << "  residual " << label << " " << to_string(value) << "\n";
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact invariants and formal normal forms of hypersurface germs in C^2"};
    app.require_subcommand(1);

    std::string file1, file2;
    int order = -1;
    int max_order = -1;
    int max_n = 9;

    auto* levi = app.add_subcommand("levi", "Levi form sign and value at the point");
    levi->add_option("file", file1, "germ file")->required();

    auto* type = app.add_subcommand("type", "type of the point (finite or not within truncation)");
    type->add_option("file", file1, "germ file")->required();
    type->add_option("--max-order", max_order, "search depth (default: the trusted truncation)");

    auto* model = app.add_subcommand("model", "model polynomial, essential type, class, symmetry");
    model->add_option("file", file1, "germ file")->required();

    auto* normalize = app.add_subcommand("normalize", "formal normal form to the given order");
    normalize->add_option("file", file1, "germ file")->required();
    normalize->add_option("--order", order, "weighted order (default: the trusted truncation)");

    auto* classify = app.add_subcommand("classify", "local automorphism group classification");
    classify->add_option("file", file1, "germ file")->required();
    classify->add_option("--order", order, "weighted order (default: the trusted truncation)");

    auto* equiv = app.add_subcommand("equiv", "decide formal equivalence of two germs");
    equiv->add_option("file1", file1, "first germ file")->required();
    equiv->add_option("file2", file2, "second germ file")->required();
    equiv->add_option("--order", order, "weighted order (default: the common truncation)");

    auto* count = app.add_subcommand("count", "surface/map coefficient counts and the threshold");
    count->add_option("--max-n", max_n, "last row of the table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (levi->parsed()) {
            const Germ germ = load_germ(file1);
            const LeviValue value = levi_sign(germ);
            out << (value.sign > 0 ? "+1" : value.sign < 0 ? "-1" : "0") << "\n";
            out << "value " << to_string(value.value) << "\n";
            return 0;
        }
        if (type->parsed()) {
            const Germ germ = load_germ(file1);
            const Germ g2 = reweight(germ, Weighting(2));
            const int depth = max_order > 0 ? max_order : g2.trunc();
            const auto removal = remove_harmonics(germ, depth);
            if (const auto* inf = std::get_if<InfiniteTypeWithinTruncation>(&removal)) {
                out << "InfiniteTypeWithinTruncation checked-to " << inf->max_checked << "\n";
                return 0;
            }
            out << "k " << std::get<TypeDecomposition>(removal).k << "\n";
            return 0;
        }
        if (model->parsed()) {
            const Germ germ = load_germ(file1);
            const Germ g2 = reweight(germ, Weighting(2));
            const auto removal = remove_harmonics(germ, g2.trunc());
            if (const auto* inf = std::get_if<InfiniteTypeWithinTruncation>(&removal))
                raise(Errc::InfiniteType,
                      "no finite type up to order " + std::to_string(inf->max_checked));
            const auto& dec = std::get<TypeDecomposition>(removal);
            print_model(dec.model, out);
            const auto sym = model_symmetries(dec.model);
            out << "H dimension " << sym.dimension << " cyclic "
                << sym.cyclic_order << "\n";
            for (const auto& gen : sym.generators) out << "H generator " << gen << "\n";
            return 0;
        }
        if (normalize->parsed()) {
            const Germ germ = load_germ(file1);
            const int n = order > 0 ? order : reweight(germ, Weighting(2)).trunc();
            const Analysis analysis = analyze(germ, n);
            if (analysis.kind == Analysis::Kind::InfiniteType)
                raise(Errc::InfiniteType,
                      "no finite type up to order " + std::to_string(n) +
                          "; normal forms need a finite type point");
            if (analysis.kind == Analysis::Kind::Tubular) tubular_normalize();
            print_report(*analysis.report, out);
            return 0;
        }
        if (classify->parsed()) {
            const Germ germ = load_germ(file1);
            const int n = order > 0 ? order : reweight(germ, Weighting(2)).trunc();
            const Analysis analysis = analyze(germ, n);
            if (analysis.kind == Analysis::Kind::InfiniteType)
                raise(Errc::InfiniteType, "no finite type up to order " + std::to_string(n));
            if (analysis.kind == Analysis::Kind::Tubular) tubular_normalize();
            const AutVerdict verdict = classify_aut(*analysis.report);
            out << "case " << verdict.case_id << "\n";
            out << "dimension " << verdict.dimension << "\n";
            out << "structure " << aut_structure_name(verdict.structure) << "\n";
            if (verdict.m) out << "m " << *verdict.m << "\n";
            out << "jet-order " << jet_order(verdict) << "\n";
            out << "order-of-validity " << verdict.order_of_validity << "\n";
            return 0;
        }
        if (equiv->parsed()) {
            const Germ g1 = load_germ(file1);
            const Germ g2 = load_germ(file2);
            const int common =
                std::min(reweight(g1, Weighting(2)).trunc(), reweight(g2, Weighting(2)).trunc());
            const int n = order > 0 ? order : common;
            const EquivalenceResult result = equivalent(g1, g2, n);
            out << "verdict " << equivalence_name(result.verdict) << "\n";
            out << "order " << result.order << "\n";
            if (!result.detail.empty()) out << "detail " << result.detail << "\n";
            if (result.witness) {
                out << "witness f\n";
                print_holo(result.witness->f(), "  ", out);
                out << "witness g\n";
                print_holo(result.witness->g(), "  ", out);
            }
            return result.verdict == Equivalence::EquivalentToOrder ||
                           result.verdict == Equivalence::DistinctToOrder
                       ? 0
                       : 1;
        }
        if (count->parsed()) {
            for (const auto& row : count_table(max_n))
                out << row.n << " " << row.surface_coeffs.get_str() << " "
                    << row.map_coeffs.get_str() << " "
                    << (row.solvable_expected ? "true" : "false") << "\n";
            out << "threshold " << threshold() << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.kind() == Errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "no command\n";
    return 2;
}

}  // namespace crnf::cli
