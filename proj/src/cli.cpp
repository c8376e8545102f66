#include "htpair/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "htpair/auxgraph.hpp"
#include "htpair/regularize.hpp"
#include "htpair/rng.hpp"

namespace htpair {

namespace {

nlohmann::json read_json_file(const std::string& path) {
    if (path == "-") return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return nlohmann::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

nlohmann::json to_json(const ValidationReport& rep) {
    nlohmann::json viols = nlohmann::json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"edge_a", v.edge_a},
                         {"edge_b", v.edge_b},
                         {"vertex", v.vertex},
                         {"color", v.color}});
    return {{"ok", rep.ok},
            {"proper", rep.proper},
            {"structural_errors", rep.structural_errors},
            {"violations", viols}};
}

}  // namespace

PipelineResult run_pipeline(const ProperColoring& c, const PipelineOptions& opt) {
    PipelineResult res;
    auto sel = select_good_partition(c, opt.seed, opt.max_tries);
    res.partition = sel.partition;
    res.partition_count = sel.count;

    AuxGraph aux = build_aux(c, sel.partition);
    res.aux_edges = aux.edge_count();

    auto pc = pipeline_constants(opt.t, opt.gamma);
    RegularizedSubgraph g0;
    try {
        g0 = almost_regular_balanced_subgraph(aux, pc.alpha);
    } catch (const RegularizeError& e) {
        res.embed_outcome =
            e.kind == RegularizeError::Kind::EmptyInput ? "empty-aux" : "too-sparse";
        return res;
    }
    res.m = g0.m;
    res.delta = g0.delta;
    res.bigK = g0.bigK;

    PipelineParams params = PipelineParams::for_t(opt.t);
    params.gamma = opt.gamma;
    params.relaxed = !opt.strict;
    params.seed = opt.seed;
    params.max_backtracks = opt.budget;

    EmbedOutcome out = greedy_embed(g0, params);
    if (out.ok()) {
        res.cert = lift_to_certificate(g0, *out.embedding, c);
        auto rep = verify_certificate(c, *res.cert);
        if (!rep.ok)
            throw InternalInconsistencyError("pipeline: certificate failed re-verification: " +
                                             rep.errors.front());
        res.embed_outcome = "success";
    } else {
        res.embed_outcome = to_string(out.reason);
    }
    res.embed = std::move(out);
    return res;
}

int parse_colors_expr(const std::string& expr, int n) {
    std::string s;
    for (char ch : expr)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto digits = [](const std::string& str) {
        return !str.empty() && std::all_of(str.begin(), str.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    auto fail = [&]() -> long long {
        throw std::invalid_argument("bad color expression '" + expr +
                                    "' (want K, n, An, n+K, n-K, or An/B)");
    };
    long long v = 0;
    if (digits(s)) {
        v = std::stoll(s);
    } else {
        const auto p = s.find('n');
        if (p == std::string::npos) fail();
        const std::string pre = s.substr(0, p), post = s.substr(p + 1);
        if (!pre.empty() && !digits(pre)) fail();
        v = (pre.empty() ? 1 : std::stoll(pre)) * n;
        if (!post.empty()) {
            const std::string rest = post.substr(1);
            if (!digits(rest)) fail();
            if (post[0] == '+')
                v += std::stoll(rest);
            else if (post[0] == '-')
                v -= std::stoll(rest);
            else if (post[0] == '/')
                v /= std::stoll(rest);
            else
                fail();
        }
    }
    if (v < 1 || v > 1000000)
        throw std::invalid_argument("color count out of range: '" + expr + "'");
    return static_cast<int>(v);
}

std::string experiment_csv_header() {
    return "n,t,num_colors,seed,partition_count,aux_edges,m,delta,bigK,embed_outcome,"
           "oracle_outcome,wall_time_ms";
}

std::string to_csv(const ExperimentRow& r) {
    std::ostringstream os;
    os << r.n << ',' << r.t << ',' << r.num_colors << ',' << r.seed << ',' << r.partition_count
       << ',' << r.aux_edges << ',' << r.m << ',' << r.delta << ',' << r.bigK << ','
       << r.embed_outcome << ',' << r.oracle_outcome << ',' << r.wall_time_ms;
    return os.str();
}

ExperimentRow run_experiment_row(const std::string& family, int n, int t, int target_colors,
                                 std::uint64_t seed, const PipelineOptions& opt0,
                                 std::optional<CertificatePair>* cert_out) {
    const auto t_start = std::chrono::steady_clock::now();
    ProperColoring c = family == "roundrobin"
                           ? generate_round_robin(n)
                           : generate_greedy_random(n, target_colors, derive_seed(seed, {0xc01}));
    PipelineOptions opt = opt0;
    opt.t = t;
    opt.seed = derive_seed(seed, {0x91e});

    ExperimentRow row;
    row.n = n;
    row.t = t;
    row.num_colors = c.num_colors;
    row.seed = seed;

    PipelineResult pr = run_pipeline(c, opt);
    row.partition_count = pr.partition_count;
    row.aux_edges = pr.aux_edges;
    row.m = pr.m;
    row.delta = pr.delta;
    row.bigK = to_string(pr.bigK);
    row.embed_outcome = pr.embed_outcome;
    if (cert_out) *cert_out = pr.cert;

    if (t == 3 && n <= 16)
        row.oracle_outcome = to_string(find_disjoint_color_iso_pair(c, t).status);
    else
        row.oracle_outcome = "skipped";

    row.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();
    return row;
}

nlohmann::json to_json(const PipelineResult& r) {
    nlohmann::json j{{"partition_count", r.partition_count},
                     {"aux_edges", r.aux_edges},
                     {"m", r.m},
                     {"delta", r.delta},
                     {"bigK", to_string(r.bigK)},
                     {"embed_outcome", r.embed_outcome}};
    if (r.embed) j["embed"] = to_json(*r.embed);
    if (r.cert) j["certificate"] = cert_to_json(*r.cert);
    return j;
}

int run_command(const std::vector<std::string>& argv) {
    CLI::App app{"color-isomorphic subdivision pair pipeline"};
    app.require_subcommand(1);

    // generate
    auto* g = app.add_subcommand("generate", "emit a proper edge-coloring of K_n as JSON");
    int g_n = 8;
    std::string g_family = "greedy", g_colors = "n-1", g_out;
    std::uint64_t g_seed = 0;
    g->add_option("--n", g_n, "number of vertices")->required();
    g->add_option("--family", g_family)->check(CLI::IsMember({"roundrobin", "greedy"}));
    g->add_option("--colors", g_colors, "target palette, e.g. 31, n-1, 2n, 3n/2");
    g->add_option("--seed", g_seed);
    g->add_option("--out", g_out, "output path (default stdout)");

    // verify
    auto* v = app.add_subcommand("verify", "check a coloring JSON for properness");
    std::string v_in, v_out;
    v->add_option("--in", v_in)->required();
    v->add_option("--out", v_out);

    // find-pair
    auto* f = app.add_subcommand("find-pair",
                                 "run the constructive pipeline and emit a certificate");
    std::string f_in, f_out;
    int f_t = 3, f_tries = 64;
    long long f_budget = 100000;
    std::uint64_t f_seed = 0;
    bool f_strict = false, f_relaxed = false;
    f->add_option("--in", f_in)->required();
    f->add_option("--t", f_t)->check(CLI::Range(3, 16));
    f->add_option("--seed", f_seed);
    f->add_option("--max-tries", f_tries, "partition resampling budget");
    f->add_option("--budget", f_budget, "embedder backtrack budget");
    f->add_flag("--strict", f_strict, "enforce the cardinality gates");
    f->add_flag("--relaxed", f_relaxed, "record gates without enforcing (default)");
    f->add_option("--out", f_out, "certificate path (default stdout)");

    // oracle
    auto* o = app.add_subcommand("oracle", "brute-force pair search, certificate or absence");
    std::string o_in, o_out;
    int o_t = 3;
    long long o_budget = 4000000;
    o->add_option("--in", o_in)->required();
    o->add_option("--t", o_t)->check(CLI::Range(3, 16));
    o->add_option("--budget", o_budget, "max copies to enumerate");
    o->add_option("--out", o_out);

    // check-cert
    auto* k = app.add_subcommand("check-cert", "verify a certificate against a coloring");
    std::string k_in, k_cert;
    k->add_option("--in", k_in, "coloring JSON")->required();
    k->add_option("--cert", k_cert, "certificate JSON")->required();

    // audit
    auto* a = app.add_subcommand("audit", "per-stage diagnostic report for one instance");
    std::string a_in, a_out;
    int a_t = 3, a_tries = 64;
    std::uint64_t a_seed = 0;
    a->add_option("--in", a_in)->required();
    a->add_option("--t", a_t)->check(CLI::Range(3, 16));
    a->add_option("--seed", a_seed);
    a->add_option("--max-tries", a_tries);
    a->add_option("--out", a_out);

    // experiment
    auto* e = app.add_subcommand("experiment", "sweep n x colors x seeds, emit CSV");
    std::vector<int> e_ns;
    std::vector<std::string> e_colors{"n-1"};
    std::string e_family = "greedy", e_out, e_certdir;
    int e_t = 3, e_seeds = 1, e_tries = 64;
    long long e_budget = 100000;
    std::uint64_t e_seed = 0;
    bool e_strict = false, e_relaxed = false;
    e->add_option("--n", e_ns, "comma list of n values")->required()->delimiter(',');
    e->add_option("--t", e_t)->check(CLI::Range(3, 16));
    e->add_option("--family", e_family)->check(CLI::IsMember({"roundrobin", "greedy"}));
    e->add_option("--colors", e_colors, "comma list of palette expressions")->delimiter(',');
    e->add_option("--seeds", e_seeds, "seeds per (n, colors) cell")->check(CLI::PositiveNumber);
    e->add_option("--seed", e_seed, "base seed");
    e->add_option("--max-tries", e_tries);
    e->add_option("--budget", e_budget);
    e->add_flag("--strict", e_strict);
    e->add_flag("--relaxed", e_relaxed);
    e->add_option("--out", e_out, "CSV path")->required();
    e->add_option("--cert-dir", e_certdir, "certificate directory (default <out>.certs)");

    try {
        std::vector<std::string> args(argv.rbegin(), argv.rend());
        app.parse(args);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*g) {
            ProperColoring c = g_family == "roundrobin"
                                   ? generate_round_robin(g_n)
                                   : generate_greedy_random(
                                         g_n, parse_colors_expr(g_colors, g_n), g_seed);
            if (!validate(c).ok) {
                std::cerr << "generator produced an invalid coloring\n";
                return 2;
            }
            emit_json(g_out, to_json(c));
            return 0;
        }
        if (*v) {
            ProperColoring c = coloring_from_json(read_json_file(v_in));
            auto rep = validate(c);
            emit_json(v_out, to_json(rep));
            return rep.ok ? 0 : 1;
        }
        if (*f) {
            ProperColoring c = coloring_from_json(read_json_file(f_in));
            PipelineOptions opt;
            opt.t = f_t;
            opt.seed = f_seed;
            opt.strict = f_strict && !f_relaxed;
            opt.max_tries = f_tries;
            opt.budget = f_budget;
            PipelineResult res = run_pipeline(c, opt);
            if (res.cert) {
                emit_json(f_out, cert_to_json(*res.cert));
                return 0;
            }
            emit_json("", to_json(res));
            return 1;
        }
        if (*o) {
            ProperColoring c = coloring_from_json(read_json_file(o_in));
            auto res = find_disjoint_color_iso_pair(c, o_t, o_budget);
            if (res.status == PairSearchStatus::FoundPair) {
                emit_json(o_out, cert_to_json(*res.pair));
                return 0;
            }
            emit_json(o_out, res.status == PairSearchStatus::ProvenAbsent
                                 ? absence_to_json(c, o_t)
                                 : to_json(res));
            return 1;
        }
        if (*k) {
            ProperColoring c = coloring_from_json(read_json_file(k_in));
            CertificatePair cert = cert_from_json(read_json_file(k_cert));
            auto rep = verify_certificate(c, cert);
            nlohmann::json j{{"ok", rep.ok}, {"errors", rep.errors}};
            emit_json("", j);
            return rep.ok ? 0 : 1;
        }
        if (*a) {
            ProperColoring c = coloring_from_json(read_json_file(a_in));
            auto vrep = validate(c);
            if (!vrep.ok) {
                emit_json(a_out, {{"validation", to_json(vrep)}});
                return 1;
            }
            nlohmann::json j;
            j["validation"] = to_json(vrep);
            auto sel = select_good_partition(c, a_seed, a_tries);
            j["partition"] = {{"count", sel.count},
                              {"threshold", to_string(sel.threshold)},
                              {"met_threshold", sel.met_threshold},
                              {"tries_used", sel.tries_used}};
            AuxGraph aux = build_aux(c, sel.partition);
            auto viol = check_unique_shared_neighbor(aux);
            j["aux"] = {{"edges", aux.edge_count()},
                        {"unique_shared_neighbor_ok", !viol.has_value()}};
            if (viol)
                j["aux"]["violation"] = {{"on_left", viol->on_left},
                                         {"s", viol->s},
                                         {"kn_vertex", viol->kn_vertex},
                                         {"t1", viol->t1},
                                         {"t2", viol->t2}};
            const Rational gamma(1, 1024);
            j["edge_bound"] = to_json(edge_lower_bound_report(c, aux, gamma, a_t));
            auto pc = pipeline_constants(a_t, gamma);
            j["constants"] = {{"alpha", to_string(pc.alpha)},
                              {"regularity_cap", pc.regularity_cap},
                              {"c0", to_string(pc.c0)},
                              {"c1", to_string(pc.c1)}};
            try {
                RegularizedSubgraph g0 = almost_regular_balanced_subgraph(aux, pc.alpha);
                j["regularized"] = to_json(g0);
                std::vector<int> U(g0.size_a());
                for (int i = 0; i < g0.size_a(); ++i) U[i] = i;
                auto cs = codegree_sum_check(g0, U);
                j["codegree_check"] = {{"weight", cs.weight},
                                       {"bound", to_string(cs.bound)},
                                       {"precondition", cs.precondition},
                                       {"holds", cs.holds}};
                j["turan"] = to_json(turan_light_audit(g0, U, PipelineParams::for_t(a_t)));
            } catch (const RegularizeError& err) {
                j["regularize_error"] = {{"kind", err.kind == RegularizeError::Kind::EmptyInput
                                                      ? "empty-aux"
                                                      : "too-sparse"},
                                         {"detail", err.what()}};
            }
            emit_json(a_out, j);
            return 0;
        }
        if (*e) {
            std::sort(e_ns.begin(), e_ns.end());
            const std::string certdir = e_certdir.empty() ? e_out + ".certs" : e_certdir;
            std::filesystem::create_directories(certdir);
            PipelineOptions opt;
            opt.strict = e_strict && !e_relaxed;
            opt.max_tries = e_tries;
            opt.budget = e_budget;
            std::ostringstream csv;
            csv << experiment_csv_header() << '\n';
            for (int n : e_ns)
                for (size_t ci = 0; ci < e_colors.size(); ++ci) {
                    const int target = parse_colors_expr(e_colors[ci], n);
                    for (int s = 0; s < e_seeds; ++s) {
                        const std::uint64_t row_seed =
                            derive_seed(e_seed, {static_cast<std::uint64_t>(n), ci,
                                                 static_cast<std::uint64_t>(s)});
                        std::optional<CertificatePair> cert;
                        ExperimentRow row =
                            run_experiment_row(e_family, n, e_t, target, row_seed, opt, &cert);
                        if (cert) {
                            std::ostringstream name;
                            name << certdir << "/cert_n" << n << "_t" << e_t << "_c" << target
                                 << "_s" << s << ".json";
                            emit_json(name.str(), cert_to_json(*cert));
                        }
                        csv << to_csv(row) << '\n';
                    }
                }
            write_text(e_out, csv.str());
            return 0;
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace htpair
