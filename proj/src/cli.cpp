#include "geoindex/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "geoindex/config.hpp"
#include "geoindex/errors.hpp"
#include "geoindex/homology.hpp"
#include "geoindex/jump.hpp"
#include "geoindex/morse.hpp"
#include "json.hpp"

namespace geoindex {

using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string format;  // empty: take it from the configuration, else tsv
    std::string config;
    std::string cert;
    std::string out_file;
    std::string window;
    std::optional<std::int64_t> m_max;
    std::optional<std::int64_t> probe;
    int n = 0;
    int q_max = 0;
    std::string eps;
    std::string delta;
    std::int64_t max_M = 100;
    std::int64_t max_N = 10'000;
    std::int64_t min_N = 1;
    bool no_eps_bound = false;
    bool canonical = false;
};

std::filesystem::path resolve(const std::string& name) {
    std::filesystem::path p(name);
    if (std::filesystem::exists(p)) return p;
    std::filesystem::path with_ext(name + ".json");
    if (std::filesystem::exists(with_ext)) return with_ext;
    throw ValidationError("no such file \"" + name + "\"");
}

unsigned worker_count() {
    const char* env = std::getenv("GEOINDEX_WORKERS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024)
        throw ValidationError("GEOINDEX_WORKERS must be an integer in [1, 1024], got \"" + std::string(env) + "\"");
    return static_cast<unsigned>(v);
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("window must be lo:hi, got \"" + text + "\"");
    try {
        std::size_t a = 0, b = 0;
        const std::string lo_text = text.substr(0, colon), hi_text = text.substr(colon + 1);
        const std::int64_t lo = std::stoll(lo_text, &a);
        const std::int64_t hi = std::stoll(hi_text, &b);
        if (a != lo_text.size() || b != hi_text.size()) throw std::invalid_argument("trailing");
        if (lo < 0 || hi < lo) throw ValidationError("window needs 0 <= lo <= hi, got \"" + text + "\"");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ValidationError("window must be lo:hi with integers, got \"" + text + "\"");
    }
}

class Command {
public:
    Command(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

    ConfigDocument& config() {
        if (!doc_) doc_ = load_config(resolve(opt_.config));
        return *doc_;
    }

    bool json() {
        if (!opt_.format.empty()) return opt_.format == "json";
        if (!opt_.config.empty()) return config().output_format == "json";
        return false;
    }

    void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

    std::ostream& out() { return out_; }

    const Options& opt() const { return opt_; }

private:
    const Options& opt_;
    std::ostream& out_;
    std::optional<ConfigDocument> doc_;
};

std::string pass_text(bool pass) { return pass ? "pass" : "fail"; }

// ---------------------------------------------------------------------------
// Commands

int cmd_index_table(Command& c) {
    const auto& cfg = c.config().sphere;
    const std::int64_t m_max = c.opt().m_max.value_or(10);
    if (m_max < 1) throw ValidationError("--m-max must be positive");
    Json rows = Json::array();
    if (!c.json()) c.out() << "label\tm\tindex\tnullity\n";
    for (const auto& g : cfg.geodesics) {
        for (std::int64_t m = 1; m <= m_max; ++m) {
            const std::int64_t i = index_at(g, m), nu = nullity_at(g, m);
            if (c.json())
                rows.push_back(Json{{"label", g.label}, {"m", m}, {"index", i}, {"nullity", nu}});
            else
                c.out() << g.label << "\t" << m << "\t" << i << "\t" << nu << "\n";
        }
    }
    if (c.json()) c.emit(Json{{"command", "index-table"}, {"rows", rows}});
    return exit_pass;
}

int cmd_mean_index(Command& c) {
    const auto& cfg = c.config().sphere;
    Json rows = Json::array();
    if (!c.json()) c.out() << "label\tmean_index\n";
    for (const auto& g : cfg.geodesics) {
        const std::string v = to_string(mean_index(g));
        if (c.json())
            rows.push_back(Json{{"label", g.label}, {"mean_index", v}});
        else
            c.out() << g.label << "\t" << v << "\n";
    }
    if (c.json()) c.emit(Json{{"command", "mean-index"}, {"geodesics", rows}});
    return exit_pass;
}

int cmd_betti(Command& c) {
    const BettiLadder ladder = betti_ladder(c.opt().n, c.opt().q_max);
    if (c.json()) {
        c.emit(Json{{"command", "betti"}, {"n", ladder.n}, {"q_max", ladder.q_max}, {"betti", ladder.values}});
    } else {
        c.out() << "q\tb_q\n";
        for (std::size_t q = 0; q < ladder.values.size(); ++q) c.out() << q << "\t" << ladder.values[q] << "\n";
    }
    return exit_pass;
}

int cmd_verify_morse(Command& c) {
    const auto& cfg = c.config().sphere;
    require_bumpy(cfg);
    const auto [lo, hi] = parse_window(c.opt().window);
    const std::int64_t m_max = c.opt().m_max ? *c.opt().m_max : sufficient_m_max(cfg, hi);
    const MorseWindow full = morse_counts(cfg, 0, hi, m_max);
    if (hi > 1'000'000) throw RangeError("window upper end is too large");
    const BettiLadder ladder = betti_ladder(cfg.n, static_cast<int>(hi));
    const std::vector<std::int64_t> betti(ladder.values.begin(), ladder.values.end());
    const MorseInequalityReport report = check_morse_inequalities(full.counts, betti);

    std::string verdict = pass_text(report.pass);
    if (!report.pass)
        verdict += report.kind == MorseViolation::weak ? " (M_q >= b_q violated at q = " : " (alternating Morse inequality violated at q = ";
    if (!report.pass) verdict += std::to_string(*report.first_violation) + ")";

    if (c.json()) {
        Json rows = Json::array();
        for (std::int64_t q = lo; q <= hi; ++q) {
            const auto k = static_cast<std::size_t>(q);
            rows.push_back(Json{{"q", q}, {"M_q", full.counts[k]}, {"b_q", betti[k]}, {"alternating_margin", report.alternating_margin[k]}});
        }
        Json contributors = Json::array();
        for (const auto& x : full.contributors)
            if (x.q >= lo && x.q <= hi) contributors.push_back(Json{{"label", x.label}, {"m", x.m}, {"index", x.q}});
        Json j{{"command", "verify-morse"}, {"window", {lo, hi}}, {"m_max", m_max}, {"counts", rows},
               {"contributors", contributors}, {"pass", report.pass}};
        if (!report.pass) j["first_violation"] = *report.first_violation;
        c.emit(j);
    } else {
        c.out() << "# window " << lo << ":" << hi << ", m_max " << m_max << "\n";
        c.out() << "q\tM_q\tb_q\talternating_margin\n";
        for (std::int64_t q = lo; q <= hi; ++q) {
            const auto k = static_cast<std::size_t>(q);
            c.out() << q << "\t" << full.counts[k] << "\t" << betti[k] << "\t" << report.alternating_margin[k] << "\n";
        }
        c.out() << "\nlabel\tm\tindex\n";
        for (const auto& x : full.contributors)
            if (x.q >= lo && x.q <= hi) c.out() << x.label << "\t" << x.m << "\t" << x.q << "\n";
        c.out() << "\nresult\t" << verdict << "\n";
    }
    return report.pass ? exit_pass : exit_failure;
}

int cmd_identity_check(Command& c) {
    const IdentityReport r = check_mean_index_identity(c.config().sphere);
    if (c.json()) {
        Json rows = Json::array();
        for (const auto& x : r.contributions)
            rows.push_back(Json{{"label", x.label}, {"avg_chi", to_string(x.avg_chi)}, {"mean_index", to_string(x.mean_index)},
                                {"term", to_string(x.term)}});
        c.emit(Json{{"command", "identity-check"}, {"contributions", rows}, {"lhs", to_string(r.lhs)},
                    {"rhs", to_string(r.rhs)}, {"pass", r.pass}});
    } else {
        c.out() << "label\tavg_chi\tmean_index\tterm\n";
        for (const auto& x : r.contributions)
            c.out() << x.label << "\t" << to_string(x.avg_chi) << "\t" << to_string(x.mean_index) << "\t" << to_string(x.term) << "\n";
        c.out() << "\nlhs\t" << to_string(r.lhs) << "\nrhs\t" << to_string(r.rhs) << "\nresult\t"
                << (r.pass ? "pass" : "fail (sum avg_chi/mean_index differs from B(n,1))") << "\n";
    }
    return r.pass ? exit_pass : exit_failure;
}

void print_certificate_tsv(std::ostream& out, const JumpCertificate& cert, const SphereConfiguration& cfg) {
    out << "N\t" << cert.N << "\nM\t" << cert.M << "\neps\t" << to_string(cert.eps) << "\ndelta\t" << to_string(cert.delta)
        << "\n\nlabel\tm\txi\n";
    for (std::size_t j = 0; j < cfg.geodesics.size(); ++j)
        out << cfg.geodesics[j].label << "\t" << cert.m[j] << "\t" << cert.xi[j] << "\n";
}

int cmd_jump_search(Command& c) {
    const auto& cfg = c.config().sphere;
    JumpSearchOptions o;
    o.eps = parse_rational(c.opt().eps);
    o.delta = parse_rational(c.opt().delta);
    o.max_M = c.opt().max_M;
    o.max_N = c.opt().max_N;
    o.min_N = c.opt().min_N;
    o.enforce_eps_bound = !c.opt().no_eps_bound;
    o.workers = worker_count();
    const JumpCertificate cert = find_common_jump(cfg, o);
    if (!c.opt().out_file.empty()) {
        std::ofstream f(c.opt().out_file, std::ios::binary);
        if (!f) throw ValidationError("cannot write \"" + c.opt().out_file + "\"");
        f << serialize_certificate(cert, cfg);
    }
    if (c.json())
        c.out() << serialize_certificate(cert, cfg);
    else
        print_certificate_tsv(c.out(), cert, cfg);
    return exit_pass;
}

Json jump_json(const JumpReport& r) {
    Json list = Json::array();
    for (const auto& g : r.geodesics) {
        Json checks = Json::array();
        for (const auto& x : g.checks) {
            Json cj{{"check", x.name}, {"pass", x.pass}, {"bound", x.bound}};
            if (x.witness_iterate) {
                cj["iterate"] = *x.witness_iterate;
                cj["index"] = x.witness_index;
            }
            checks.push_back(cj);
        }
        list.push_back(Json{{"label", g.label}, {"m", g.m}, {"index_at_2m", g.index_at_2m},
                            {"elliptic_height", g.elliptic_height}, {"checks", checks}, {"pass", g.pass}});
    }
    return Json{{"geodesics", list}, {"pass", r.pass}};
}

void print_jump_tsv(std::ostream& out, const JumpReport& r) {
    out << "label\tcheck\tresult\titerate\tindex\tbound\n";
    for (const auto& g : r.geodesics)
        for (const auto& x : g.checks) {
            out << g.label << "\t" << x.name << "\t" << pass_text(x.pass) << "\t";
            if (x.witness_iterate)
                out << *x.witness_iterate << "\t" << x.witness_index;
            else
                out << "-\t-";
            out << "\t" << x.bound << "\n";
        }
}

int cmd_verify_jump(Command& c) {
    const auto& cfg = c.config().sphere;
    const JumpCertificate cert = load_certificate(resolve(c.opt().cert), &cfg);
    const JumpReport r = verify_jump(cfg, cert, c.opt().probe, !c.opt().no_eps_bound);
    if (c.json()) {
        Json j = jump_json(r);
        c.emit(Json{{"command", "verify-jump"}, {"geodesics", j["geodesics"]}, {"pass", r.pass}});
    } else {
        print_jump_tsv(c.out(), r);
        c.out() << "\nresult\t"
                << (r.pass ? "pass" : "fail (configuration inconsistent with the common index jump inequalities)") << "\n";
    }
    return r.pass ? exit_pass : exit_failure;
}

Json replay_json(const ProofReplay& r) {
    Json j{{"command", "replay-proof"}, {"jump", jump_json(r.jump)}};
    if (r.euler)
        j["euler_balance"] = Json{{"lhs", to_string(r.euler->lhs)}, {"rhs", to_string(r.euler->rhs)}, {"pass", r.euler->pass}};
    if (r.truncated) {
        const auto& t = *r.truncated;
        Json failures = Json::array();
        for (const auto& f : t.truncation_failures)
            failures.push_back(Json{{"condition", f.condition}, {"label", f.label}, {"iterate", f.iterate}, {"index", f.index}});
        Json tj{{"q_top", t.q_top}, {"truncation_holds", t.truncation_holds}, {"truncation_failures", failures}};
        tj["morse_alternating"] = t.morse_alternating ? Json(*t.morse_alternating) : Json(nullptr);
        tj["euler_sum"] = t.euler_sum;
        tj["lhs"] = to_string(t.lhs);
        tj["pass"] = t.pass;
        j["truncated_morse_sum"] = tj;
    }
    if (r.edge) {
        Json e = Json::object();
        e["witness"] = r.edge->witness ? Json(*r.edge->witness) : Json(nullptr);
        if (r.edge->contradiction) {
            const auto& x = *r.edge->contradiction;
            e["contradiction"] = Json{{"q_top", x.q_top},
                                      {"s", x.s},
                                      {"morse_alternating", to_string(x.morse_alternating)},
                                      {"betti_alternating", x.betti_alternating},
                                      {"expected_betti", x.expected_betti},
                                      {"difference", to_string(x.difference)},
                                      {"inequality_holds", x.inequality_holds},
                                      {"off_by_one", x.off_by_one}};
        }
        j["top_edge"] = e;
    }
    Json below = Json::array();
    for (const auto& b : r.below_window) {
        Json bj{{"label", b.label}, {"holds", b.holds}, {"degenerate", b.degenerate}, {"index", b.index}, {"bound", b.bound}};
        if (b.ceiling_increase) bj["ceiling_increase"] = *b.ceiling_increase;
        below.push_back(bj);
    }
    j["below_window"] = below;
    Json ell = Json::array();
    for (const auto& e : r.ellipticity)
        ell.push_back(Json{{"label", e.label}, {"index_at_2m", e.index_at_2m}, {"forced_elliptic", e.forced_elliptic},
                           {"elliptic_height", e.elliptic_height}, {"contradiction", e.contradiction}});
    j["ellipticity"] = ell;
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back(Json{{"count", s.name}, {"required", s.required}, {"found", s.found}, {"labels", s.labels}, {"pass", s.pass}});
    j["counts"] = steps;
    j["geodesics_with_index_n_minus_1"] = r.count_index_n_minus_1;
    j["edge_case"] = r.edge_case;
    j["target"] = r.target;
    j["distinct"] = r.distinct;
    j["failing"] = r.failing;
    j["pass"] = r.pass;
    return j;
}

void print_replay_tsv(std::ostream& out, const ProofReplay& r) {
    out << "# jump inequalities\n";
    print_jump_tsv(out, r.jump);
    if (r.euler)
        out << "\n# Euler balance sum_j 2 m_j avg_chi(c_j) = 2N B(n,1)\nlhs\t" << to_string(r.euler->lhs) << "\nrhs\t"
            << to_string(r.euler->rhs) << "\nresult\t" << pass_text(r.euler->pass) << "\n";
    if (r.truncated) {
        const auto& t = *r.truncated;
        out << "\n# truncated Morse sum over q <= " << t.q_top << "\ntruncation\t" << pass_text(t.truncation_holds) << "\n";
        for (const auto& f : t.truncation_failures)
            out << "truncation_failure\t" << f.label << "\t" << f.condition << "\t" << f.iterate << "\t" << f.index << "\n";
        out << "morse_alternating\t" << (t.morse_alternating ? std::to_string(*t.morse_alternating) : "-") << "\neuler_sum\t"
            << t.euler_sum << "\nlhs\t" << to_string(t.lhs) << "\nresult\t" << pass_text(t.pass) << "\n";
    }
    if (r.edge) {
        out << "\n# top edge 2N+n-1\nwitness\t" << r.edge->witness.value_or("-") << "\n";
        if (r.edge->contradiction) {
            const auto& x = *r.edge->contradiction;
            out << "s\t" << x.s << "\nmorse_alternating\t" << to_string(x.morse_alternating) << "\nbetti_alternating\t"
                << x.betti_alternating << "\nexpected_betti\t" << x.expected_betti << "\ndifference\t"
                << to_string(x.difference) << "\nmorse_inequality\t" << pass_text(x.inequality_holds) << "\noff_by_one\t"
                << (x.off_by_one ? "yes" : "no") << "\n";
        }
    }
    if (!r.below_window.empty()) {
        out << "\n# below window i(c^{2m-2}) < 2N-(n-1)\nlabel\tresult\tindex\tbound\tceiling_increase\n";
        for (const auto& b : r.below_window)
            out << b.label << "\t" << (b.degenerate ? "degenerate" : pass_text(b.holds)) << "\t" << b.index << "\t" << b.bound
                << "\t" << (b.ceiling_increase ? pass_text(*b.ceiling_increase) : "-") << "\n";
    }
    out << "\n# ellipticity\nlabel\tindex_at_2m\tforced_elliptic\telliptic_height\tcontradiction\n";
    for (const auto& e : r.ellipticity)
        out << e.label << "\t" << e.index_at_2m << "\t" << (e.forced_elliptic ? "yes" : "no") << "\t" << e.elliptic_height << "\t"
            << (e.contradiction ? "yes" : "no") << "\n";
    if (!r.steps.empty()) {
        out << "\n# distinct geodesic counts\ngeodesics_with_index_n_minus_1\t" << r.count_index_n_minus_1 << "\t" << r.edge_case
            << "\ncount\trequired\tfound\tlabels\n";
        for (const auto& s : r.steps) {
            out << s.name << "\t" << s.required << "\t" << s.found << "\t";
            for (std::size_t i = 0; i < s.labels.size(); ++i) out << (i ? "," : "") << s.labels[i];
            out << "\n";
        }
        out << "target\t" << r.target << "\ndistinct\t" << r.distinct << "\n";
    }
    out << "\n";
    for (const auto& f : r.failing) out << "failing\t" << f << "\n";
    out << "result\t" << pass_text(r.pass) << "\n";
}

int cmd_replay_proof(Command& c) {
    const auto& cfg = c.config().sphere;
    require_bumpy(cfg);
    const JumpCertificate cert = load_certificate(resolve(c.opt().cert), &cfg);
    const ProofReplay r = replay_proof(cfg, cert, !c.opt().no_eps_bound);
    if (c.json())
        c.emit(replay_json(r));
    else
        print_replay_tsv(c.out(), r);
    return r.pass ? exit_pass : exit_failure;
}

int cmd_validate(Command& c) {
    const ConfigDocument& doc = c.config();
    if (c.opt().canonical) {
        c.out() << serialize_config(doc);
        return exit_pass;
    }
    if (c.json())
        c.emit(Json{{"command", "validate"}, {"n", doc.sphere.n}, {"geodesics", doc.sphere.geodesics.size()}, {"valid", true}});
    else
        c.out() << "valid\tn=" << doc.sphere.n << "\tgeodesics=" << doc.sphere.geodesics.size() << "\n";
    return exit_pass;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Index iteration, Morse count and common index jump checks for closed geodesics on spheres", "geoindex"};
    app.require_subcommand(1);
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"tsv", "json"}));

    std::function<int(Command&)> action;
    auto sub = [&](const char* name, const char* help, int (*fn)(Command&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        s->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"tsv", "json"}));
        return s;
    };
    auto with_config = [&](CLI::App* s) {
        s->add_option("--config", opt.config, "Configuration file")->required();
        return s;
    };

    with_config(sub("index-table", "Index and nullity of iterates", cmd_index_table))
        ->add_option("--m-max", opt.m_max, "Largest iterate (default 10)");
    with_config(sub("mean-index", "Mean index of each geodesic", cmd_mean_index));
    {
        auto* s = sub("betti", "Betti numbers of the S^1-quotient loop space pair", cmd_betti);
        s->add_option("--n", opt.n, "Sphere dimension")->required();
        s->add_option("--qmax", opt.q_max, "Largest degree")->required();
    }
    {
        auto* s = with_config(sub("verify-morse", "Morse counts over a window and the Morse inequalities", cmd_verify_morse));
        s->add_option("--window", opt.window, "Degree window lo:hi")->required();
        s->add_option("--m-max", opt.m_max, "Largest iterate (default: smallest sufficient)");
    }
    with_config(sub("identity-check", "Mean index identity sum avg_chi/mean_index = B(n,1)", cmd_identity_check));
    {
        auto* s = with_config(sub("jump-search", "Search a common index jump certificate", cmd_jump_search));
        s->add_option("--eps", opt.eps, "Fractional deviation bound (rational)")->required();
        s->add_option("--delta", opt.delta, "Rotation closeness bound (rational)")->required();
        s->add_option("--max-M", opt.max_M, "Largest M");
        s->add_option("--max-N", opt.max_N, "Largest N");
        s->add_option("--min-N", opt.min_N, "Smallest N");
        s->add_flag("--no-eps-bound", opt.no_eps_bound, "Do not require eps < 1/(1 + sum 4M|avg chi|)");
        s->add_option("--out", opt.out_file, "Also write the certificate to this file");
    }
    {
        auto* s = with_config(sub("verify-jump", "Check a certificate against the jump inequalities", cmd_verify_jump));
        s->add_option("--cert", opt.cert, "Certificate file")->required();
        s->add_option("--probe", opt.probe, "Iterates probed past 2m_j (default 2m_j)");
        s->add_flag("--no-eps-bound", opt.no_eps_bound, "Do not require eps < 1/(1 + sum 4M|avg chi|)");
    }
    {
        auto* s = with_config(sub("replay-proof", "Replay the counting argument on a certificate", cmd_replay_proof));
        s->add_option("--cert", opt.cert, "Certificate file")->required();
        s->add_flag("--no-eps-bound", opt.no_eps_bound, "Do not require eps < 1/(1 + sum 4M|avg chi|)");
    }
    {
        auto* s = with_config(sub("validate", "Validate a configuration", cmd_validate));
        s->add_flag("--canonical", opt.canonical, "Print the canonical serialization");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    Command command(opt, out);
    try {
        return action(command);
    } catch (const NotFoundError& e) {
        err << "not found: " << e.what() << "\nnear miss: " << e.near_miss() << "\n";
        return exit_failure;
    } catch (const InvalidCertificateError& e) {
        err << "invalid certificate: " << e.what() << "\n";
        return exit_failure;
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << "\n";
        return exit_precision;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    }
}

}  // namespace geoindex
