// rankforge command-line front end.
//
// Exit codes: 0 success / property holds, 1 malformed input or invalid parameters,
// 2 property fails, 3 exhaustive work exceeds the budget.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rankforge.hpp"

using namespace rankforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitFail = 2;
constexpr int kExitBudget = 3;

/// `p^k` or `p`.
FieldPtr parse_field(const std::string& s) {
    auto caret = s.find('^');
    auto p = detail::parse_int64(s.substr(0, caret), "--field");
    std::int64_t k = caret == std::string::npos ? 1 : detail::parse_int64(s.substr(caret + 1), "--field");
    if (p < 2 || p > UINT32_MAX || k < 1 || k > 64) throw ParseError("--field: expected p^k with p prime, k >= 1");
    return make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
}

Rational parse_opt_rational(const std::string& s, const std::string& name) {
    try {
        return parse_rational(s, name);
    } catch (const ParseError&) {
        throw ParseError(name + ": expected an exact rational a/b, got '" + s + "'");
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("--in: cannot open '" + path + "'");
    return in;
}

template <class Write>
void write_out(const std::string& path, Write w) {
    if (path.empty() || path == "-") {
        w(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("--out: cannot open '" + path + "' for writing");
    w(out);
}

struct Common {
    std::string field;
    std::size_t n = 0, m = 0, t = 0, r = 0, s = 0, d = 0;
    std::string eps = "0", delta = "1/4", gamma = "0", alpha = "1";
    std::optional<std::size_t> size;
    std::string method = "pruned";
    std::uint32_t q = 0;
    std::string out;
    std::string in;
};

int run_construct(const std::string& what, const Common& o) {
    if (what == "lossless") {
        auto c = lossless_collection(parse_field(o.field), o.n, o.t, o.r);
        write_out(o.out, [&](std::ostream& os) { write_collection(os, c); });
    } else if (what == "lossy") {
        auto c = lossy_collection(parse_field(o.field), o.n, o.t, o.r, parse_opt_rational(o.eps, "--eps"), o.size);
        write_out(o.out, [&](std::ostream& os) { write_collection(os, c); });
    } else if (what == "expander") {
        auto x = build_expander(parse_field(o.field), o.n, o.d, parse_opt_rational(o.eps, "--eps"),
                                parse_opt_rational(o.delta, "--delta"), parse_opt_rational(o.gamma, "--gamma"));
        write_out(o.out, [&](std::ostream& os) { write_expander(os, x); });
    } else if (what == "two-source") {
        auto f = parse_field(o.field);
        BilinearCondenser b;
        if (o.method == "pruned")
            b = pruned_lossless(f, o.n, o.m, o.r, o.s);
        else if (o.method == "condense-tensor")
            b = condense_tensor_lossless(f, o.n, o.m, o.r, o.s);
        else
            throw ParseError("--method: expected pruned or condense-tensor, got '" + o.method + "'");
        write_out(o.out, [&](std::ostream& os) { write_bilinear(os, b); });
    } else if (what == "gabidulin") {
        auto c = gabidulin_code(o.q, o.m, o.n, o.r);
        write_out(o.out, [&](std::ostream& os) { write_code(os, c); });
    } else if (what == "roth") {
        auto c = roth_code(parse_field(o.field), o.n, o.m, o.r);
        write_out(o.out, [&](std::ostream& os) { write_code(os, c); });
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string in;
    std::string mode = "exhaustive";
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 1000;
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
    bool json = false;
};

int run_verify(const VerifyArgs& a) {
    if (a.mode != "exhaustive" && a.mode != "sampled")
        throw ParseError("--mode: expected exhaustive or sampled, got '" + a.mode + "'");
    VerifyOptions opt;
    opt.budget = a.budget;
    opt.jobs = std::max(1u, a.jobs);
    if (a.mode == "sampled") {
        if (!a.seed) throw ParseError("--seed: sampled mode requires an explicit seed");
        opt.sampled = true;
        opt.seed = *a.seed;
        opt.trials = a.trials;
    }
    auto in = open_in(a.in);
    const auto kind = peek_kind(in);
    VerifyReport rep;
    if (kind == "collection") {
        rep = verify_seeded(read_collection(in), opt);
    } else if (kind == "design") {
        rep = verify_design(read_design(in), opt);
    } else if (kind == "expander") {
        rep = verify_expander(read_expander(in), opt);
    } else if (kind == "bilinear") {
        rep = verify_two_source(read_bilinear(in), opt);
    } else if (kind == "code") {
        if (opt.sampled) throw ParseError("--mode: rank-metric codes are verified exhaustively only");
        auto c = read_code(in);
        rep.object = "rank-metric code over F_" + std::to_string(c.field->order()) + " " + std::to_string(c.n) + "x" +
                     std::to_string(c.m) + " dim=" + std::to_string(c.dim());
        rep.property = "min-rank-distance";
        rep.worst = static_cast<std::int64_t>(min_rank_distance(c, opt.budget));
        rep.threshold = static_cast<std::int64_t>(c.dist);
        rep.comparison = ">=";
        rep.pass = rep.worst >= rep.threshold;
        rep.checked = c.dim() == 0 ? 0 : detail::checked_pow(c.field->order(), c.dim(), "verify") - 1;
    } else {
        throw ParseError("--in: unsupported file kind '" + kind + "'");
    }
    if (a.json)
        std::cout << to_json(rep).dump(2) << "\n";
    else
        std::cout << to_text(rep);
    return rep.pass ? kExitOk : kExitFail;
}

int run_convert(const std::string& what, const Common& o, const std::string& base) {
    auto in = open_in(o.in);
    if (what == "design-from-condenser") {
        auto d = design_from_condenser(read_collection(in));
        write_out(o.out, [&](std::ostream& os) { write_design(os, d); });
    } else if (what == "condenser-from-design") {
        auto c = condenser_from_design(read_design(in), o.t);
        write_out(o.out, [&](std::ostream& os) { write_collection(os, c); });
    } else if (what == "condenser-to-code") {
        auto c = condenser_to_code(read_bilinear(in));
        write_out(o.out, [&](std::ostream& os) { write_code(os, c); });
    } else if (what == "code-to-condenser") {
        auto b = code_to_condenser(read_code(in));
        write_out(o.out, [&](std::ostream& os) { write_bilinear(os, b); });
    } else if (what == "lift") {
        auto c = read_collection(in);
        auto bf = parse_field(base);
        if (!bf->is_prime_field() || bf->characteristic() != c.field->characteristic())
            throw ParseError("--base: must be the prime subfield F_" + std::to_string(c.field->characteristic()));
        auto l = lift_condenser(c);
        write_out(o.out, [&](std::ostream& os) { write_collection(os, l); });
    }
    return kExitOk;
}

struct BoundArgs {
    std::uint64_t q = 0;
    std::size_t n = 0, m = 0, t = 0, r = 0, s = 0;
    std::string alpha = "1", eps = "0", mode;
    bool json = false;
};

int run_bounds(const std::string& what, const BoundArgs& a) {
    ThresholdReport rep;
    const Rational eps = parse_opt_rational(a.eps, "--eps");
    if (what == "dim-exp") {
        rep = bound_dim_expander(a.q, parse_opt_rational(a.alpha, "--alpha"), eps);
    } else if (what == "lossy") {
        const std::string mode = a.mode.empty() ? "le" : a.mode;
        if (mode != "le" && mode != "eq") throw ParseError("--mode: expected le or eq, got '" + mode + "'");
        rep = bound_lossy_seeded(a.q, a.n, a.t, a.r, eps, mode == "eq" ? RankMode::Eq : RankMode::Le);
    } else {
        const std::string mode = a.mode.empty() ? "lossless" : a.mode;
        TwoSourceMode m;
        if (mode == "lossless")
            m = TwoSourceMode::Lossless;
        else if (mode == "eq")
            m = TwoSourceMode::Eq;
        else if (mode == "le")
            m = TwoSourceMode::Le;
        else
            throw ParseError("--mode: expected lossless, eq or le, got '" + mode + "'");
        rep = bound_two_source(a.q, a.n, a.m, a.r, a.s, eps, m);
    }
    if (a.json)
        std::cout << to_json(rep).dump(2) << "\n";
    else
        std::cout << to_text(rep);
    return rep.applicable ? kExitOk : kExitFail;
}

struct McArgs {
    std::string field;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 1000;
    std::size_t rows = 0, cols = 0, rank = 0;
    std::size_t n = 0, m = 0, t = 0, r = 0, s = 0, k = 0, degree = 0;
    std::string eps = "0", alpha = "1", mode = "le";
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
    bool json = false;
};

int run_montecarlo(const std::string& what, const McArgs& a) {
    if (!a.seed) throw ParseError("--seed: montecarlo requires an explicit seed");
    auto f = parse_field(a.field);
    const unsigned jobs = std::max(1u, a.jobs);
    if (what == "subspace-count") {
        auto rep = montecarlo_subspace_count(f, a.n, a.r, *a.seed, a.trials);
        std::cout << (a.json ? to_json(rep).dump(2) + "\n" : to_text(rep));
        return kExitOk;
    }
    MonteCarloReport rep;
    const Rational eps = parse_opt_rational(a.eps, "--eps");
    if (what == "rank") {
        rep = montecarlo_rank(f, a.rows, a.cols, a.rank, *a.seed, a.trials, jobs);
    } else if (what == "dim-expander") {
        rep = montecarlo_dim_expander(f, a.n, a.degree, eps, parse_opt_rational(a.alpha, "--alpha"), *a.seed,
                                      a.trials, a.budget, jobs);
    } else if (what == "lossy-seeded") {
        if (a.mode != "le" && a.mode != "eq") throw ParseError("--mode: expected le or eq, got '" + a.mode + "'");
        rep = montecarlo_lossy_seeded(f, a.n, a.t, a.k, a.r, eps, a.mode == "eq" ? RankMode::Eq : RankMode::Le,
                                      *a.seed, a.trials, a.budget, jobs);
    } else {
        rep = montecarlo_two_source(f, a.n, a.m, a.t, a.r, a.s, eps, *a.seed, a.trials, a.budget, jobs);
    }
    std::cout << (a.json ? to_json(rep).dump(2) + "\n" : to_text(rep));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankforge: rank condensers, subspace designs, dimension expanders and rank-metric codes"};
    app.require_subcommand(1);

    Common co;
    auto* construct = app.add_subcommand("construct", "build an object and write it to a file");
    construct->require_subcommand(1);
    for (const char* name : {"lossless", "lossy", "expander", "two-source", "gabidulin", "roth"}) {
        auto* sc = construct->add_subcommand(name);
        std::string nm = name;
        if (nm != "gabidulin") sc->add_option("--field", co.field, "field as p^k")->required();
        sc->add_option("--n", co.n)->required();
        sc->add_option("--out", co.out, "output file (default stdout)");
        if (nm == "lossless" || nm == "lossy") sc->add_option("--t", co.t)->required();
        if (nm != "expander") sc->add_option("--r", co.r)->required();
        if (nm == "lossy") {
            sc->add_option("--eps", co.eps)->required();
            sc->add_option("--size", co.size, "pad with zero matrices to this many");
        }
        if (nm == "expander") {
            sc->add_option("--d", co.d)->required();
            sc->add_option("--eps", co.eps)->required();
            sc->add_option("--delta", co.delta)->required();
            sc->add_option("--gamma", co.gamma);
        }
        if (nm == "two-source" || nm == "gabidulin" || nm == "roth") sc->add_option("--m", co.m)->required();
        if (nm == "two-source") {
            sc->add_option("--s", co.s)->required();
            sc->add_option("--method", co.method, "pruned or condense-tensor");
        }
        if (nm == "gabidulin") sc->add_option("--q", co.q, "prime base field order")->required();
    }

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check an object's claimed property");
    verify->add_option("--in", va.in)->required();
    verify->add_option("--mode", va.mode, "exhaustive or sampled");
    verify->add_option("--seed", va.seed);
    verify->add_option("--trials", va.trials, "samples per checked dimension");
    verify->add_option("--budget", va.budget, "maximum exhaustive work units");
    verify->add_option("--jobs", va.jobs, "worker threads");
    verify->add_flag("--json", va.json);

    std::string base;
    auto* convert = app.add_subcommand("convert", "transform between equivalent views");
    convert->require_subcommand(1);
    for (const char* name :
         {"design-from-condenser", "condenser-from-design", "condenser-to-code", "code-to-condenser", "lift"}) {
        auto* sc = convert->add_subcommand(name);
        sc->add_option("--in", co.in)->required();
        sc->add_option("--out", co.out);
        if (std::string(name) == "condenser-from-design") sc->add_option("--t", co.t)->required();
        if (std::string(name) == "lift") sc->add_option("--base", base, "prime subfield as p^1")->required();
    }

    BoundArgs ba;
    auto* bounds = app.add_subcommand("bounds", "existential parameter thresholds");
    bounds->require_subcommand(1);
    auto* b_dim = bounds->add_subcommand("dim-exp");
    b_dim->add_option("--q", ba.q)->required();
    b_dim->add_option("--alpha", ba.alpha)->required();
    b_dim->add_option("--eps", ba.eps)->required();
    auto* b_lossy = bounds->add_subcommand("lossy");
    b_lossy->add_option("--q", ba.q)->required();
    b_lossy->add_option("--n", ba.n)->required();
    b_lossy->add_option("--t", ba.t)->required();
    b_lossy->add_option("--r", ba.r)->required();
    b_lossy->add_option("--eps", ba.eps)->required();
    b_lossy->add_option("--mode", ba.mode, "le or eq");
    auto* b_two = bounds->add_subcommand("two-source");
    b_two->add_option("--q", ba.q)->required();
    b_two->add_option("--n", ba.n)->required();
    b_two->add_option("--m", ba.m)->required();
    b_two->add_option("--r", ba.r)->required();
    b_two->add_option("--s", ba.s)->required();
    b_two->add_option("--eps", ba.eps);
    b_two->add_option("--mode", ba.mode, "lossless, eq or le");
    for (auto* sc : {b_dim, b_lossy, b_two}) sc->add_flag("--json", ba.json);

    McArgs ma;
    auto* mc = app.add_subcommand("montecarlo", "success frequency of uniformly random objects");
    mc->require_subcommand(1);
    for (const char* name : {"rank", "dim-expander", "lossy-seeded", "two-source", "subspace-count"}) {
        auto* sc = mc->add_subcommand(name);
        std::string nm = name;
        sc->add_option("--field", ma.field)->required();
        sc->add_option("--seed", ma.seed);
        sc->add_option("--trials", ma.trials);
        sc->add_option("--jobs", ma.jobs);
        sc->add_option("--budget", ma.budget);
        sc->add_flag("--json", ma.json);
        if (nm == "rank") {
            sc->add_option("--rows", ma.rows)->required();
            sc->add_option("--cols", ma.cols)->required();
            sc->add_option("--rank", ma.rank, "event rank <= this")->required();
            continue;
        }
        sc->add_option("--n", ma.n)->required();
        if (nm == "subspace-count") {
            sc->add_option("--r", ma.r)->required();
            continue;
        }
        sc->add_option("--eps", ma.eps)->required();
        if (nm == "dim-expander") {
            sc->add_option("--degree", ma.degree)->required();
            sc->add_option("--alpha", ma.alpha)->required();
        }
        if (nm == "lossy-seeded") {
            sc->add_option("--t", ma.t)->required();
            sc->add_option("--k", ma.k, "collection size")->required();
            sc->add_option("--r", ma.r)->required();
            sc->add_option("--mode", ma.mode, "le or eq");
        }
        if (nm == "two-source") {
            sc->add_option("--m", ma.m)->required();
            sc->add_option("--t", ma.t)->required();
            sc->add_option("--r", ma.r)->required();
            sc->add_option("--s", ma.s)->required();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }

    try {
        auto chosen = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
        if (construct->parsed()) return run_construct(chosen(construct), co);
        if (verify->parsed()) return run_verify(va);
        if (convert->parsed()) return run_convert(chosen(convert), co, base);
        if (bounds->parsed()) return run_bounds(chosen(bounds), ba);
        if (mc->parsed()) return run_montecarlo(chosen(mc), ma);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}
