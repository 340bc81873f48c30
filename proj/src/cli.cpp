#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "supenv/envelope.hpp"
#include "supenv/harness.hpp"

namespace supenv {

namespace {

struct Common {
    std::string format = "text";
    uint32_t samples = 40;
    uint64_t seed = 0;
    std::string spec_path, example_id;
};

void add_common(CLI::App* sub, Common& c, bool algebra_source) {
    sub->add_option("--format", c.format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--samples", c.samples, "size of sampled scans");
    sub->add_option("--seed", c.seed, "seed for sampled scans");
    if (algebra_source) {
        sub->add_option("--spec", c.spec_path, "algebra spec file");
        sub->add_option("--example", c.example_id,
                        "builtin example id (defaults for field and parameters)");
    }
}

RestrictedLieSuperalgebra source(const Common& c) {
    if (!c.spec_path.empty() && !c.example_id.empty())
        throw InvalidParameter("--spec and --example are mutually exclusive");
    if (!c.spec_path.empty()) return load_algebra(c.spec_path);
    if (!c.example_id.empty()) return build_example(c.example_id);
    throw InvalidParameter("one of --spec or --example is required");
}

std::string instance_name(const Common& c) {
    if (!c.example_id.empty()) return c.example_id;
    std::string s = c.spec_path;
    size_t slash = s.find_last_of("/\\");
    if (slash != std::string::npos) s = s.substr(slash + 1);
    if (s.size() > 4 && s.compare(s.size() - 4, 4, ".alg") == 0)
        s.resize(s.size() - 4);
    return s;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunReport from_condition(std::string instance, std::string command,
                         const ConditionReport& rep, uint64_t seed, double ms) {
    RunReport r;
    r.instance = std::move(instance);
    r.command = std::move(command);
    r.checks = rep.checks;
    r.status = rep.verdict;
    r.complete = rep.complete;
    r.seed = seed;
    r.wall_ms = ms;
    if (rep.s_exponent)
        r.figures.emplace_back("p-nilpotence exponent", std::to_string(*rep.s_exponent));
    if (rep.t_exponent)
        r.figures.emplace_back("identity exponent t", std::to_string(*rep.t_exponent));
    if (rep.nil_index)
        r.figures.emplace_back("nil index", std::to_string(*rep.nil_index));
    return r;
}

UElement random_uelement(std::mt19937_64& rng, PBWContext& ctx) {
    std::map<uint32_t, FieldElement> acc;
    uint32_t terms = 1 + static_cast<uint32_t>(rng() % 2);
    for (uint32_t k = 0; k < terms; ++k) {
        uint32_t mono = static_cast<uint32_t>(rng() % ctx.dimension());
        FieldElement c = random_field_element(rng, ctx.algebra().field, false);
        auto [it, fresh] = acc.emplace(mono, c);
        if (!fresh) it->second += c;
    }
    UElement u;
    for (auto& [mono, c] : acc)
        if (!c.is_zero()) u.emplace_back(mono, c);
    return u;
}

void cmd_verify(const Common& c, std::vector<RunReport>& reports) {
    RestrictedLieSuperalgebra L = source(c);
    Timer t;
    AxiomReport ar = verify_axioms(L, c.samples, c.seed);
    RunReport r;
    r.instance = instance_name(c);
    r.command = "verify";
    r.seed = c.seed;
    bool ok = true;
    for (const AxiomCheck& ac : ar.checks) {
        r.checks.push_back({ac.name, ac.pass ? Verdict::pass : Verdict::fail, true,
                            ac.witness});
        ok = ok && ac.pass;
    }
    r.figures.emplace_back("p", std::to_string(L.field.p));
    r.figures.emplace_back("n", std::to_string(L.n));
    r.figures.emplace_back("m", std::to_string(L.m));
    r.status = ok ? Verdict::pass : Verdict::fail;
    r.wall_ms = t.ms();
    reports.push_back(std::move(r));
}

void cmd_analyze(const Common& c, std::vector<RunReport>& reports) {
    RestrictedLieSuperalgebra L = source(c);
    Timer t;
    RunReport r;
    r.instance = instance_name(c);
    r.command = "analyze";
    r.seed = c.seed;

    auto dims = [](const std::vector<Subspace>& chain) {
        std::string s;
        for (const Subspace& term : chain)
            s += (s.empty() ? "" : " ") + std::to_string(term.dim());
        return s;
    };
    r.figures.emplace_back("lower central dims", dims(series(L, SeriesKind::lower_central)));
    r.figures.emplace_back("derived dims", dims(series(L, SeriesKind::derived)));
    r.figures.emplace_back("nilpotent", is_nilpotent(L) ? "yes" : "no");
    r.figures.emplace_back("solvable", is_solvable(L) ? "yes" : "no");

    Subspace zc = center(L);
    std::string zbasis;
    for (const SparseVec& row : zc.basis())
        zbasis += (zbasis.empty() ? "" : "; ") + to_string(L, L.from_coords(row));
    r.figures.emplace_back("center dim", std::to_string(zc.dim()));
    if (!zbasis.empty()) r.figures.emplace_back("center basis", zbasis);

    std::optional<SampledScan> sc;
    if (!L.field.finite()) sc = SampledScan{c.samples, c.seed};
    SubspaceScan M = compute_M(L, sc);
    SubspaceScan P = compute_p_nil_part(L, sc);
    auto scan_check = [](const char* name, const SubspaceScan& s) {
        return SubCheck{name, s.complete ? Verdict::pass : Verdict::incomplete, true,
                        "dim " + std::to_string(s.space.dim()) +
                            (s.complete ? " (exhaustive)" : " (sampled lower bound)")};
    };
    r.checks.push_back(scan_check("M", M));
    r.checks.push_back(scan_check("p-nil part of L_0", P));
    r.complete = M.complete && P.complete;
    r.status = Verdict::pass;
    r.wall_ms = t.ms();
    reports.push_back(std::move(r));
}

void cmd_envelope(const Common& c, const std::string& power_combo, uint32_t exponent,
                  std::vector<RunReport>& reports) {
    RestrictedLieSuperalgebra L = source(c);
    Timer t;
    PBWContext ctx(L);
    RunReport r;
    r.instance = instance_name(c);
    r.command = "envelope";
    r.seed = c.seed;
    r.figures.emplace_back("dimension", std::to_string(ctx.dimension()));

    std::mt19937_64 rng = seeded_rng(c.seed, "cli envelope assoc", L.instance_hash());
    SubCheck assoc{"associativity spot-check", Verdict::pass, true, ""};
    for (uint32_t k = 0; k < c.samples; ++k) {
        UElement a = random_uelement(rng, ctx);
        UElement b = random_uelement(rng, ctx);
        UElement d = random_uelement(rng, ctx);
        UElement left = ctx.multiply(ctx.multiply(a, b), d);
        UElement right = ctx.multiply(a, ctx.multiply(b, d));
        if (!sv_eq(left, right)) {
            assoc.verdict = Verdict::fail;
            assoc.witness = "triple #" + std::to_string(k) + ": (" + ctx.to_string(a) +
                            ", " + ctx.to_string(b) + ", " + ctx.to_string(d) + ")";
            break;
        }
    }
    assoc.witness = assoc.witness.empty()
                        ? std::to_string(c.samples) + " seeded triples"
                        : assoc.witness;
    r.checks.push_back(assoc);

    if (!power_combo.empty()) {
        UElement u = ctx.embed(parse_combination(L, power_combo));
        UElement w = ctx.power(u, exponent);
        r.figures.emplace_back("(" + power_combo + ")^" + std::to_string(exponent),
                               ctx.to_string(w));
    }
    r.status = assoc.verdict;
    r.wall_ms = t.ms();
    reports.push_back(std::move(r));
}

void cmd_theorem(const Common& c, int condition, const std::vector<std::string>& petro,
                 bool audit, int tmax, std::vector<RunReport>& reports) {
    int modes = (condition != 0) + !petro.empty() + audit + (tmax >= 0);
    if (modes != 1)
        throw InvalidParameter(
            "choose exactly one of --condition, --petrogradsky, --audit, "
            "--identity-t-max");
    RestrictedLieSuperalgebra L = source(c);
    std::optional<SampledScan> sc;
    if (!L.field.finite()) sc = SampledScan{c.samples, c.seed};
    Timer t;

    if (condition == 2) {
        ConditionReport rep = sc ? check_condition2(L, ComputedM{*sc}, sc)
                                 : check_condition2(L);
        reports.push_back(from_condition(instance_name(c), "theorem --condition 2", rep,
                                         c.seed, t.ms()));
    } else if (condition == 3) {
        ConditionReport rep = check_condition3(L);
        reports.push_back(from_condition(instance_name(c), "theorem --condition 3", rep,
                                         c.seed, t.ms()));
    } else if (!petro.empty()) {
        Subspace A = parse_subspace(L, read_file(petro[0]));
        Subspace B = parse_subspace(L, read_file(petro[1]));
        ConditionReport rep = check_petrogradsky(L, A, B, sc);
        reports.push_back(from_condition(instance_name(c), "theorem --petrogradsky", rep,
                                         c.seed, t.ms()));
    } else if (audit) {
        ConditionReport rep = equivalence_audit(L, SampledScan{c.samples, c.seed});
        reports.push_back(from_condition(instance_name(c), "theorem --audit", rep,
                                         c.seed, t.ms()));
    } else {
        IdentityScan scan =
            check_nonmatrix_identity(L, static_cast<uint32_t>(tmax),
                                     SampledScan{c.samples, c.seed});
        RunReport r;
        r.instance = instance_name(c);
        r.command = "theorem --identity-t-max " + std::to_string(tmax);
        r.seed = c.seed;
        if (scan.t) {
            r.checks.push_back({"non-matrix identity", Verdict::pass, true, scan.witness});
            r.figures.emplace_back("identity exponent t", std::to_string(*scan.t));
            r.complete = scan.complete;
            r.status = Verdict::pass;
        } else {
            // the surviving triple certifies failure for every t up to the cap
            r.checks.push_back({"non-matrix identity", Verdict::fail, true, scan.witness});
            r.figures.emplace_back("identity exponent t", "none");
            r.complete = true;
            r.status = Verdict::fail;
        }
        r.wall_ms = t.ms();
        reports.push_back(std::move(r));
    }
}

void cmd_corpus(const Common& c, uint32_t count, const std::string& profile,
                std::vector<RunReport>& reports) {
    CorpusProfile prof = parse_profile(profile);
    Corpus corpus = generate_corpus(count, c.seed, prof);
    for (const CorpusInstance& inst : corpus.instances) {
        Timer t;
        ConditionReport rep = equivalence_audit(inst.algebra);
        reports.push_back(from_condition(inst.id, "corpus", rep, c.seed, t.ms()));
    }
    RunReport summary;
    summary.instance = "corpus/" + profile;
    summary.command = "corpus";
    summary.seed = c.seed;
    summary.figures.emplace_back("count", std::to_string(corpus.instances.size()));
    summary.figures.emplace_back("attempts", std::to_string(corpus.attempts));
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.3f", corpus.rejection_rate());
    summary.figures.emplace_back("rejection rate", rate);
    summary.status = Verdict::pass;
    reports.push_back(std::move(summary));
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"exact workbench for restricted Lie superalgebras in odd characteristic"};
    app.require_subcommand(1);

    Common common;
    std::vector<RunReport> reports;
    std::string direct;

    auto* verify = app.add_subcommand("verify", "check the defining axioms");
    add_common(verify, common, true);
    verify->callback([&] { cmd_verify(common, reports); });

    auto* analyze =
        app.add_subcommand("analyze", "series, center, M and the p-nil part");
    add_common(analyze, common, true);
    analyze->callback([&] { cmd_analyze(common, reports); });

    auto* envelope = app.add_subcommand(
        "envelope", "enveloping-algebra dimension, associativity, powers");
    add_common(envelope, common, true);
    std::string power_combo;
    uint32_t exponent = 2;
    envelope->add_option("--power", power_combo,
                         "element (combination of basis names) to raise");
    envelope->add_option("--exponent", exponent, "power to compute");
    envelope->callback([&] { cmd_envelope(common, power_combo, exponent, reports); });

    auto* theorem = app.add_subcommand("theorem", "main-theorem condition checks");
    add_common(theorem, common, true);
    int condition = 0;
    std::vector<std::string> petro;
    bool audit = false;
    int tmax = -1;
    theorem->add_option("--condition", condition, "2 or 3")
        ->check(CLI::IsMember({2, 3}));
    theorem->add_option("--petrogradsky", petro, "A and B subspace files")
        ->expected(2);
    theorem->add_flag("--audit", audit, "equivalence audit of conditions (2) and (3)");
    theorem->add_option("--identity-t-max", tmax, "probe ([u,v]w)^(p^t) = 0 up to t");
    theorem->callback(
        [&] { cmd_theorem(common, condition, petro, audit, tmax, reports); });

    auto* corpus = app.add_subcommand("corpus", "generate instances and audit each");
    add_common(corpus, common, false);
    uint32_t count = 0;
    std::string profile;
    corpus->add_option("--count", count, "number of instances")->required();
    corpus->add_option("--profile", profile,
                       "nilpotent_pnil | toral_mix | odd_heavy")
        ->required();
    corpus->callback([&] { cmd_corpus(common, count, profile, reports); });

    auto* example = app.add_subcommand("example", "print a builtin algebra spec");
    std::string example_id;
    ExampleOptions opt;
    std::string field_text;
    example->add_option("id", example_id, "ex41 | ex42 | heisenberg_super | "
                                          "even_heisenberg_toral | abelian(n,m)")
        ->required();
    example->add_option("--p", opt.p, "characteristic (when no --field)");
    example->add_option("--field", field_text, "field override, e.g. F3 or F5(t)");
    example->add_option("--alpha", opt.alpha, "alpha literal over the field");
    example->add_option("--beta", opt.beta, "beta literal over the field");
    example->callback([&] {
        if (!field_text.empty()) opt.field = field_text;
        direct = print_algebra(build_example(example_id, opt));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!direct.empty()) {
        std::cout << direct;
        return 0;
    }
    ReportFormat fmt =
        common.format == "machine" ? ReportFormat::machine : ReportFormat::text;
    for (size_t i = 0; i < reports.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << render_report(reports[i], fmt);
    }
    return exit_code(reports);
}

} // namespace supenv
