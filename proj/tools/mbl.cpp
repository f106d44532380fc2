// Command-line front end. Every subcommand writes JSON (one object per instance,
// one per line) to stdout or --out.
//
// Exit codes: 0 ok, 2 some bound flag failed, 3 hard error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mbl/mbl.hpp>

namespace {

using namespace mbl;

constexpr int kExitOk = 0;
constexpr int kExitFlags = 2;
constexpr int kExitError = 3;

struct Global {
    std::uint64_t seed = 42;
    std::optional<int> kmax;
    std::optional<int> truncation;
    unsigned precision_bits = 200;
    std::string out;
    std::string format = "json";
    unsigned jobs = 0;
};

struct InstanceArgs {
    std::string P, Q, a = "-1", b = "1", file;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("-P,--P", P, "P as an expression, e.g. z^3-3*z");
        cmd->add_option("-Q,--Q", Q, "Q as an expression");
        cmd->add_option("-a,--a", a, "left endpoint (rational)")->capture_default_str();
        cmd->add_option("-b,--b", b, "right endpoint (rational)")->capture_default_str();
        cmd->add_option("-i,--instance", file, "JSON instance file (object, array, or one object per line)");
    }

    std::vector<MomentInstance> load() const
    {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) {
                throw std::runtime_error("cannot open " + file);
            }
            return read_instances(in);
        }
        if (P.empty() || Q.empty()) {
            throw std::invalid_argument("give --P and --Q, or --instance");
        }
        return {MomentInstance(parse_polynomial(P), parse_polynomial(Q), parse_rational(a), parse_rational(b), "cli")};
    }
};

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void line(const Json& j) { stream() << j.dump() << '\n'; }

private:
    std::unique_ptr<std::ofstream> file_;
};

MomentKind parse_kind(const std::string& k)
{
    if (k == "standard") {
        return MomentKind::standard;
    }
    if (k == "tilde") {
        return MomentKind::tilde;
    }
    throw std::invalid_argument("kind must be standard or tilde");
}

Json rational_list(MomentSequence& seq, int kmax)
{
    Json out = Json::array();
    for (int k = 0; k <= kmax; ++k) {
        out.push_back(to_string(seq[k]));
    }
    return out;
}

Json index_json(const VanishingResult& v)
{
    if (const auto* f = std::get_if<FirstNonzero>(&v)) {
        return Json{{"first_nonzero", f->index}, {"value", to_string(f->value)}};
    }
    return Json{{"all_zero_up_to", std::get<AllZeroUpTo>(v).kmax}};
}

int write_reports(const std::vector<BoundReport>& reports, const Global& g, Output& out)
{
    if (g.format == "csv") {
        out.stream() << csv_header() << '\n';
    }
    int code = kExitOk;
    for (const auto& r : reports) {
        if (g.format == "csv") {
            out.stream() << bound_report_csv(r) << '\n';
        } else {
            out.line(bound_report_to_json(r));
        }
        if (r.error) {
            code = kExitError;
        } else if (!r.all_pass() && code == kExitOk) {
            code = kExitFlags;
        }
    }
    return code;
}

AuditOptions audit_options(const Global& g)
{
    AuditOptions o;
    o.kmax = g.kmax;
    o.truncation = g.truncation;
    return o;
}

int abel_sweep(const std::string& config_path, const Global& g, Output& out)
{
    std::ifstream in(config_path);
    if (!in) {
        throw std::runtime_error("cannot open " + config_path);
    }
    const Json cfg = Json::parse(in);
    const Rational a = rational_from_json(cfg.at("a"));
    const Rational b = rational_from_json(cfg.at("b"));
    Poly p = parse_polynomial(cfg.at("p").get<std::string>());
    if (cfg.value("center_p", false)) {
        p = center_p(p, a, b);
    }
    const AbelInstance base(p, parse_polynomial(cfg.at("q").get<std::string>()), a, b, 0.0);
    ScanOptions opt;
    opt.tol = cfg.value("tol", 1e-12);
    opt.jobs = resolve_jobs(g.jobs);
    const double y_max = cfg.value("y_max", 0.3);
    const int grid = cfg.value("grid", 200);
    int code = kExitOk;
    for (double eps : cfg.at("epsilons")) {
        const auto pc = count_periodic(base.with_epsilon(eps), y_max, grid, opt);
        out.line(periodic_count_to_json(pc));
        if (!pc.within_bound) {
            code = kExitFlags;
        }
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moment vanishing, annihilating operators and bound audits for polynomial moment sequences"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--kmax", g.kmax, "moment scan length (default 3 * bound)");
    app.add_option("--truncation", g.truncation, "series truncation order");
    app.add_option("--precision-bits", g.precision_bits, "working precision of numeric checks")->capture_default_str();
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads (default MBL_JOBS or 1)");
    app.fallthrough();

    InstanceArgs ia;
    std::string kind = "standard";

    auto* moments_cmd = app.add_subcommand("moments", "exact moments m_0..m_kmax");
    ia.attach(moments_cmd);
    moments_cmd->add_option("--kind", kind, "standard or tilde")->capture_default_str();

    auto* index_cmd = app.add_subcommand("index", "vanishing indices with their bounds");
    ia.attach(index_cmd);

    auto* pcc_cmd = app.add_subcommand("pcc", "search for a composition witness");
    ia.attach(pcc_cmd);

    auto* series_cmd = app.add_subcommand("series", "moment generating series at infinity");
    ia.attach(series_cmd);
    series_cmd->add_option("--kind", kind, "standard or tilde")->capture_default_str();

    bool verify = false;
    auto* ann_cmd = app.add_subcommand("annihilator", "minimal annihilating operator and its Euler form");
    ia.attach(ann_cmd);
    ann_cmd->add_flag("--verify", verify, "numeric residual on the branches and Wronskian orders");

    auto* kis_cmd = app.add_subcommand("kisunko", "apply the operator to the series and fit the rational right-hand side");
    ia.attach(kis_cmd);

    auto* audit_cmd = app.add_subcommand("audit", "compare every computed order and degree with its bound");
    ia.attach(audit_cmd);

    CorpusSpec spec;
    bool emit_only = false;
    auto* corpus_cmd = app.add_subcommand("corpus", "generate a corpus and audit it");
    corpus_cmd->add_option("--random", spec.random, "random instances")->capture_default_str();
    corpus_cmd->add_option("--pcc", spec.pcc_center, "composition-center instances")->capture_default_str();
    corpus_cmd->add_option("--near", spec.near_vanishing, "near-vanishing instances")->capture_default_str();
    corpus_cmd->add_option("--dP-min", spec.dP_min)->capture_default_str();
    corpus_cmd->add_option("--dP-max", spec.dP_max)->capture_default_str();
    corpus_cmd->add_option("--dQ-min", spec.dQ_min)->capture_default_str();
    corpus_cmd->add_option("--dQ-max", spec.dQ_max)->capture_default_str();
    corpus_cmd->add_option("--height", spec.height)->capture_default_str();
    corpus_cmd->add_option("--max-den", spec.max_den)->capture_default_str();
    corpus_cmd->add_flag("--emit-only", emit_only, "write the instances instead of auditing them");

    std::string sweep_config;
    auto* sweep_cmd = app.add_subcommand("abel-sweep", "count fixed points of the return map for each epsilon");
    sweep_cmd->add_option("config", sweep_config, "sweep configuration JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        Output out(g.out);
        if (moments_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                MomentSequence seq(inst, parse_kind(kind));
                const int kmax = g.kmax.value_or(default_kmax(inst));
                out.line(Json{{"instance", instance_to_json(inst)}, {"kind", kind}, {"moments", rational_list(seq, kmax)}});
            }
        } else if (index_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                const int K = bautin_bound(inst.deg_P(), inst.deg_Q());
                const int Kt = bautin_bound_tilde(inst.deg_P(), std::max(inst.deg_Q() - 1, 0));
                const int kmax = g.kmax.value_or(3 * std::max(K, Kt));
                out.line(Json{{"instance", instance_to_json(inst)},
                              {"standard", index_json(vanishing_index(inst, kmax))},
                              {"bound", K},
                              {"tilde", index_json(vanishing_index(inst, kmax, MomentKind::tilde))},
                              {"tilde_bound", Kt}});
            }
        } else if (pcc_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                const auto r = pcc_check(inst);
                out.line(Json{{"instance", instance_to_json(inst)},
                              {"holds", r.holds()},
                              {"witness", r.holds() ? Json(to_expression(*r.witness)) : Json(nullptr)}});
            }
        } else if (series_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                const int K = g.truncation.value_or(20);
                const auto s = parse_kind(kind) == MomentKind::standard ? h_series(inst, K) : ht_series(inst, K);
                out.line(Json{{"instance", instance_to_json(inst)}, {"kind", kind}, {"valid_to", s.valid_to()}, {"series", series_to_json(s)}});
            }
        } else if (ann_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                const auto L = minimal_annihilator(inst.P, inst.Q);
                const auto ef = euler_form(L);
                Json j{{"instance", instance_to_json(inst)}, {"operator", operator_to_json(L)}};
                Json c_hat = Json::array();
                for (const auto& c : ef.c_hat) {
                    c_hat.push_back(rational_function_to_json(c));
                }
                j["euler_form"] = Json{{"u", rational_function_to_json(ef.u)}, {"ord_u", ef.ord_inf_u}, {"c_hat", c_hat}};
                if (verify && inst.Q.degree() >= 1) {
                    const auto chk = verify_annihilation_numeric(L, algebraic_resultant(inst.P, inst.Q), 5, g.precision_bits, g.seed);
                    j["residual"] = chk.max_residual;
                    const auto w = wronskian_order_infinity(inst.P, inst.Q, std::max(g.precision_bits, 128u));
                    j["wronskian_at_infinity"] = Json{{"order", to_string(w.at_infinity.order)},
                                                      {"bound", to_string(w.at_infinity.bound)},
                                                      {"status", to_string(w.at_infinity.status)},
                                                      {"pass", w.at_infinity.pass}};
                    j["wronskian_pass"] = w.pass();
                }
                out.line(j);
            }
        } else if (kis_cmd->parsed()) {
            for (const auto& inst : ia.load()) {
                const auto L = minimal_annihilator(inst.P, inst.Q);
                const auto rep = kisunko_check(inst, L, g.truncation.value_or(default_truncation(L)));
                out.line(Json{{"instance", instance_to_json(inst)}, {"kisunko", kisunko_to_json(rep)}});
            }
        } else if (audit_cmd->parsed()) {
            PipelineOptions po;
            po.audit = audit_options(g);
            po.jobs = g.jobs;
            return write_reports(run_pipeline(ia.load(), po).reports, g, out);
        } else if (corpus_cmd->parsed()) {
            spec.seed = g.seed;
            if (emit_only) {
                for (const auto& inst : generate_corpus(spec)) {
                    out.line(instance_to_json(inst));
                }
                return kExitOk;
            }
            PipelineOptions po;
            po.audit = audit_options(g);
            po.jobs = g.jobs;
            const auto rep = run_corpus(spec, po);
            const int code = write_reports(rep.reports, g, out);
            std::cerr << run_summary_to_json(rep).dump() << '\n';
            return code;
        } else if (sweep_cmd->parsed()) {
            return abel_sweep(sweep_config, g, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}
