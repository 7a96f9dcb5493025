// drext: exact Ext-group computations for Drinfeld modules and t-modules.
//
// Exit codes: 0 success, 1 malformed input, 2 request outside the supported
// theory, 3 verification failure.

#include "drx/errors.hpp"
#include "drx/ext_engine.hpp"
#include "drx/json_io.hpp"
#include "drx/parser.hpp"

#include "verify_suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace drx;

namespace {

struct GlobalOpts {
    std::uint64_t q = 2;
    std::string modulus;
    std::string output = "pretty";
    std::uint64_t seed = 1;
    int trials = 100;
    int bound = -1;   // -1: default per context
    bool normalize = false;
};

FqPtr make_field(const GlobalOpts& g) {
    // factor q as a prime power
    std::uint64_t q = g.q;
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * static_cast<std::uint64_t>(d) <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = static_cast<std::uint32_t>(q);
    std::uint32_t m = 0;
    std::uint64_t v = q;
    while (v > 1) {
        if (v % p != 0) throw std::invalid_argument("q must be a prime power");
        v /= p;
        ++m;
    }
    std::vector<std::uint32_t> mod;
    if (!g.modulus.empty()) mod = parse_fp_poly(p, g.modulus);
    return Fq::make(p, m, std::move(mod));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

DrinfeldModule drinfeld_from_opts(const FqPtr& f, const std::string& coeffs,
                                  const std::string& file) {
    if (!file.empty()) {
        json j = load_json_file(file);
        return drinfeld_from_json(j);
    }
    if (coeffs.empty()) throw std::invalid_argument("missing --drinfeld coefficients");
    std::vector<KElement> a;
    std::size_t pos = 0;
    while (pos <= coeffs.size()) {
        std::size_t comma = coeffs.find(',', pos);
        std::string piece = coeffs.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
        a.push_back(parse_k_element(f, piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return make_drinfeld(std::move(a));
}

// rows separated by ';', entries by ','
SkewMatrix matrix_from_text(const FqPtr& f, const std::string& text, std::size_t rows,
                            std::size_t cols) {
    std::vector<std::vector<std::string>> cells;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string row =
            text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        std::vector<std::string> entries;
        std::size_t rp = 0;
        while (rp <= row.size()) {
            std::size_t comma = row.find(',', rp);
            entries.push_back(
                row.substr(rp, comma == std::string::npos ? std::string::npos : comma - rp));
            if (comma == std::string::npos) break;
            rp = comma + 1;
        }
        cells.push_back(std::move(entries));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (cells.size() != rows)
        throw std::invalid_argument("expected " + std::to_string(rows) + " rows in the value");
    SkewMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (cells[i].size() != cols)
            throw std::invalid_argument("expected " + std::to_string(cols) +
                                        " entries per row in the value");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, parse_skew_poly(f, cells[i][j]));
    }
    return m;
}

void emit(const GlobalOpts& g, const json& as_json, const std::string& as_pretty) {
    if (g.output == "json")
        std::cout << as_json.dump(2) << "\n";
    else
        std::cout << as_pretty << "\n";
}

struct ReduceContext {
    std::string kind;
    Biderivation delta;
    std::optional<DrinfeldModule> drinfeld;   // context for e-vs-c / dual-vs-c
};

DrinfeldModule drinfeld_from_presentation(const TModule& e) {
    if (e.dim() != 1) throw std::invalid_argument("expected a one-dimensional source module");
    const SkewPoly& p = e.phi_t().at(0, 0);
    if (p.degree() < 1 || p.constant_term() != KElement::theta(e.field()))
        throw std::invalid_argument("source is not a Drinfeld module presentation");
    std::vector<KElement> a(p.coeffs().begin() + 1, p.coeffs().end());
    return make_drinfeld(std::move(a));
}

ReduceContext build_context(const FqPtr& f, const std::string& kind,
                            const std::string& drinfeld, const std::string& file,
                            const std::string& delta_text, std::size_t m, std::size_t n) {
    if (!file.empty() && delta_text.empty()) {
        json j = load_json_file(file);
        Biderivation d = biderivation_from_json(j);
        std::optional<DrinfeldModule> ctx;
        if (kind == "e-vs-c") {
            ctx = drinfeld_from_presentation(d.source());
        } else if (kind == "dual-vs-c") {
            if (drinfeld.empty())
                throw std::invalid_argument(
                    "dual-vs-c with --file also needs --drinfeld for the module context");
            ctx = drinfeld_from_opts(f, drinfeld, "");
        }
        return {kind, std::move(d), std::move(ctx)};
    }
    if (kind == "e-vs-c") {
        DrinfeldModule e = drinfeld_from_opts(f, drinfeld, file);
        SkewMatrix v = matrix_from_text(f, delta_text, 1, 1);
        Biderivation d(e.underlying(), carlitz(f).underlying(), std::move(v));
        return {kind, std::move(d), std::move(e)};
    }
    if (kind == "dual-vs-c") {
        DrinfeldModule e = drinfeld_from_opts(f, drinfeld, file);
        TModule psi = dual_tmodule(e).dual;
        SkewMatrix v = matrix_from_text(f, delta_text, 1, e.rank() - 1);
        Biderivation d(std::move(psi), carlitz(f).underlying(), std::move(v));
        return {kind, std::move(d), std::move(e)};
    }
    if (kind == "carlitz") {
        if (n <= m)
            throw unsupported_error(
                "unsupported: Ext^1(C^" + std::to_string(m) + ", C^" + std::to_string(n) +
                ") with n <= m is not a t-module in general (the reduction needs tau-inverses "
                "or Artin-Schreier roots)");
        SkewMatrix v = matrix_from_text(f, delta_text, n, m);
        Biderivation d(carlitz_tensor(f, m), carlitz_tensor(f, n), std::move(v));
        return {kind, std::move(d), std::nullopt};
    }
    throw std::invalid_argument("unknown kind: " + kind + " (use e-vs-c, dual-vs-c, carlitz)");
}

std::string pretty_cert(const json& cert) {
    std::string out;
    out += "reduced:  " + cert.at("reduced").dump() + "\n";
    out += "witness:  " + cert.at("witness").dump() + "\n";
    out += "check:    ";
    out += cert.at("check").get<bool>() ? "true" : "false";
    return out;
}

int cmd_dual(const GlobalOpts& g, const std::string& drinfeld, const std::string& file) {
    FqPtr f = make_field(g);
    DrinfeldModule e = drinfeld_from_opts(f, drinfeld, file);
    DualTModule d = dual_tmodule(e);
    json j;
    j["pi"] = tmodule_to_json(d.pi);
    j["dual"] = tmodule_to_json(d.dual);
    emit(g, j,
         "Pi(t) =\n" + d.pi.phi_t().str() + "\n\nE^dual(t) =\n" + d.dual.phi_t().str());
    return 0;
}

int cmd_bidual(const GlobalOpts& g, const std::string& drinfeld, const std::string& file) {
    FqPtr f = make_field(g);
    DrinfeldModule e = drinfeld_from_opts(f, drinfeld, file);
    if (!e.a(e.rank()).is_one() && !g.normalize)
        throw unsupported_error(
            "top coefficient a_r != 1: the closed-form bidual display assumes a monic module; "
            "pass --normalize to compute with general a_r (the biduality check then holds up "
            "to conjugation by a_r)");
    TModule xi = bidual_tmodule(e);
    emit(g, tmodule_to_json(xi), "Xi(t) =\n" + xi.phi_t().str());
    return 0;
}

int cmd_carlitz_ext(const GlobalOpts& g, std::size_t m, std::size_t n) {
    FqPtr f = make_field(g);
    TModule pi = carlitz_ext_structure(f, m, n);
    emit(g, tmodule_to_json(pi), "Pi(t) =\n" + pi.phi_t().str());
    return 0;
}

int cmd_reduce(const GlobalOpts& g, const ReduceContext& cx) {
    json cert;
    if (cx.kind == "e-vs-c") {
        ReducedEC r = reduce_vs_carlitz(*cx.drinfeld, cx.delta);
        cert = certificate_to_json(cx.delta, r);
    } else if (cx.kind == "dual-vs-c") {
        ReducedDualC r = reduce_dualC(*cx.drinfeld, cx.delta);
        cert = certificate_to_json(cx.delta, r);
    } else {
        ReducedCtens r = reduce_carlitz(cx.delta);
        cert = certificate_to_json(cx.delta, r);
    }
    if (!cert.at("check").get<bool>())
        throw std::logic_error("reduction certificate failed its own check");
    emit(g, cert, pretty_cert(cert));
    return 0;
}

int cmd_split(const GlobalOpts& g, const ReduceContext& cx) {
    int bound = g.bound;
    std::optional<InnerWitness> w;
    if (cx.kind == "dual-vs-c") {
        if (bound < 0) bound = static_cast<int>(cx.drinfeld->rank()) + 3;
        w = find_splitting_dual(*cx.drinfeld, cx.delta, bound);
    } else {
        if (bound < 0) {
            int rank = cx.drinfeld ? static_cast<int>(cx.drinfeld->rank())
                                   : static_cast<int>(cx.delta.target().dim());
            bound = std::max(cx.delta.value().max_tau_degree(), rank) + 3;
        }
        w = find_splitting(cx.delta, bound);
    }
    json j;
    j["bound"] = bound;
    if (w) {
        bool check = inner(*w, cx.delta.source(), cx.delta.target()).value() == cx.delta.value();
        j["witness"] = skew_matrix_to_json(w->u);
        j["check"] = check;
        emit(g, j, "witness:\n" + w->u.str() + "\ncheck:    " + (check ? "true" : "false"));
    } else {
        j["witness"] = nullptr;
        emit(g, j, "no witness within degree bound " + std::to_string(bound));
    }
    return 0;
}

int cmd_act(const GlobalOpts& g, const ReduceContext& cx, const std::string& b_text) {
    FqPtr f = cx.delta.field();
    TPoly b = parse_t_poly(f, b_text);
    Biderivation right = t_action_right(cx.delta, b);
    Biderivation left = t_action_left(b, cx.delta);
    json cert;
    bool agree = false;
    if (cx.kind == "e-vs-c") {
        ReducedEC r = reduce_vs_carlitz(*cx.drinfeld, right);
        ReducedEC l = reduce_vs_carlitz(*cx.drinfeld, left);
        agree = r.cls == l.cls;
        cert = certificate_to_json(right, r);
    } else if (cx.kind == "dual-vs-c") {
        ReducedDualC r = reduce_dualC(*cx.drinfeld, right);
        ReducedDualC l = reduce_dualC(*cx.drinfeld, left);
        agree = r.cls == l.cls;
        cert = certificate_to_json(right, r);
    } else {
        ReducedCtens r = reduce_carlitz(right);
        ReducedCtens l = reduce_carlitz(left);
        agree = r.cls == l.cls;
        cert = certificate_to_json(right, r);
    }
    cert["left_right_agree"] = agree;
    if (!agree) throw std::logic_error("left and right t-actions disagree on the class");
    emit(g, cert, pretty_cert(cert) + "\nleft/right classes agree: true");
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    FqPtr f = make_field(g);
    std::vector<std::string> todo;
    if (suite == "all")
        todo = verify::suite_names();
    else
        todo = {suite};
    bool all_ok = true;
    for (const auto& name : todo) {
        verify::SuiteResult res = verify::run_suite(name, f, g.seed, g.trials);
        std::cout << (res.ok ? "[pass] " : "[FAIL] ") << res.name << " (" << res.trials_run
                  << " checks)\n";
        if (!res.ok) {
            std::cout << "counterexample: " << res.counterexample << "\n";
            all_ok = false;
        }
    }
    return all_ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("DRINFELD_EXT_ABORT_DEG")) {
        try {
            set_abort_theta_degree(std::stol(env));
        } catch (...) {
            std::cerr << "error: DRINFELD_EXT_ABORT_DEG is not an integer\n";
            return 1;
        }
    }

    CLI::App app{"exact Ext-group computations for Drinfeld modules and t-modules"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--q", g.q, "field size q = p^m")->capture_default_str();
    app.add_option("--modulus", g.modulus, "irreducible modulus in g over F_p (m > 1)");
    app.add_option("--output", g.output, "output format: pretty or json")
        ->check(CLI::IsMember({"pretty", "json"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--trials", g.trials, "trials per suite")->capture_default_str();
    app.add_option("--bound", g.bound, "degree bound for the splitting search");
    app.add_flag("--normalize", g.normalize, "accept non-monic modules where supported");

    std::string drinfeld, file, delta_text, kind, b_text, suite = "all";
    std::size_t m = 1, n = 2;

    auto* dual = app.add_subcommand("dual", "t-module structure on Ext^1(E, C) and the dual");
    dual->fallthrough();
    dual->add_option("--drinfeld", drinfeld, "comma-separated coefficients a_1,...,a_r");
    dual->add_option("--file", file, "module JSON file");

    auto* bidual = app.add_subcommand("bidual", "t-module structure on Ext^1(E^dual, C)");
    bidual->fallthrough();
    bidual->add_option("--drinfeld", drinfeld, "comma-separated coefficients a_1,...,a_r");
    bidual->add_option("--file", file, "module JSON file");

    auto* cext = app.add_subcommand("carlitz-ext", "block presentation of Ext^1(C^m, C^n)");
    cext->fallthrough();
    cext->add_option("--m", m, "source tensor power")->required();
    cext->add_option("--n", n, "target tensor power")->required();

    auto add_ctx = [&](CLI::App* cmd) {
        cmd->add_option("--kind", kind, "context: e-vs-c, dual-vs-c, carlitz")->required();
        cmd->add_option("--drinfeld", drinfeld, "comma-separated coefficients a_1,...,a_r");
        cmd->add_option("--file", file, "biderivation JSON file");
        cmd->add_option("--m", m, "source tensor power (carlitz kind)");
        cmd->add_option("--n", n, "target tensor power (carlitz kind)");
        cmd->add_option("--delta", delta_text,
                        "value delta(t): rows split on ';', entries on ','");
    };

    auto* reduce = app.add_subcommand("reduce", "canonical reduction with certificate");
    reduce->fallthrough();
    add_ctx(reduce);
    auto* split = app.add_subcommand("split", "search for an inner witness");
    split->fallthrough();
    add_ctx(split);
    auto* act = app.add_subcommand("act", "apply the t-action of b and reduce");
    act->fallthrough();
    add_ctx(act);
    act->add_option("--b", b_text, "polynomial in t over F_q")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run randomized property suites");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--suite", suite,
                           "cocycle, inner, split, taction, reduce, canonical or all")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (dual->parsed()) return cmd_dual(g, drinfeld, file);
        if (bidual->parsed()) return cmd_bidual(g, drinfeld, file);
        if (cext->parsed()) return cmd_carlitz_ext(g, m, n);
        if (verify_cmd->parsed()) {
            if (!verify::is_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
            return cmd_verify(g, suite);
        }
        FqPtr f = make_field(g);
        ReduceContext cx = build_context(f, kind, drinfeld, file, delta_text, m, n);
        if (reduce->parsed()) return cmd_reduce(g, cx);
        if (split->parsed()) return cmd_split(g, cx);
        if (act->parsed()) return cmd_act(g, cx, b_text);
        return 1;
    } catch (const unsupported_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const degree_limit_error& e) {
        std::cerr << "aborted: " << e.what()
                  << " (override with DRINFELD_EXT_ABORT_DEG)\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
