#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "uchida/cli/reports.hpp"
#include "uchida/core/identities.hpp"

using namespace uchida;
using namespace uchida::arith;
using uchida::cli::RunConfig;
using nf::Json;

namespace {

int exit_code(Errc e)
{
    switch (e) {
    case Errc::parameter:
    case Errc::precondition: return 2;
    case Errc::budget_exhausted:
    case Errc::bound_exhausted: return 3;
    case Errc::inconclusive:
    case Errc::precision: return 4;
    case Errc::internal_assertion: return 5;
    }
    return 5;
}

Integer parse_integer(const std::string& s, const char* flag)
{
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
        fail(Errc::parameter, "bad-integer", std::string("--") + flag + " expects a decimal integer, got '" + s + "'");
    return z;
}

Integer require(const std::optional<Integer>& v, const char* flag)
{
    if (!v)
        fail(Errc::parameter, "missing-flag", std::string("--") + flag + " is required");
    return *v;
}

void emit(const RunConfig& cfg, Json j, bool timestamp)
{
    if (timestamp) {
        std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        j["run"] = Json{{"timestamp", buf}};
    }
    std::string text = j.dump(2) + "\n";
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        fail(Errc::parameter, "out-path", "cannot write " + cfg.out);
    f << text;
}

Json read_json(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        fail(Errc::parameter, "input-path", "cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        fail(Errc::parameter, "input-json", path + ": " + e.what());
    }
}

core::UchidaInstance instance_of(const RunConfig& cfg)
{
    return core::build_instance(require(cfg.d, "d"), cfg.n, cfg.s, require(cfg.a, "a"));
}

int cmd_construct(const RunConfig& cfg, bool ts)
{
    auto I = instance_of(cfg);
    emit(cfg, cli::instance_report(cfg, I), ts);
    return 0;
}

int cmd_verify(const RunConfig& cfg, bool ts)
{
    auto I = instance_of(cfg);
    auto v = cli::verify_report(cfg, I);
    emit(cfg, v.report, ts);
    std::cerr << "verify: " << I.n() << " | h(K) " << oracle::verdict_name(v.verdict) << "\n";
    return v.verdict == oracle::Verdict::certified ? 0 : 4;
}

int cmd_search(const RunConfig& cfg, bool ts)
{
    if (cfg.n == 0)
        fail(Errc::parameter, "missing-flag", "--n is required");
    auto b = search::build_base(require(cfg.a_tilde, "a-tilde"), cfg.n, cfg.s, cfg.orientation);
    Integer d = require(cfg.d, "d");
    auto r = search::search_pairs(b, d, search::SearchOptions{cfg.q_bound, cfg.workers, 1 << 16, cfg.resume});
    emit(cfg, cli::search_report(cfg, b, d, r), ts);
    std::size_t open = r.not_found.size() - r.obstructed.size();
    for (auto& t : r.obstructed)
        std::cerr << "search: " << t.key() << " obstructed (alpha~_ij is a global l-th power)\n";
    if (open > 0) {
        std::cerr << "search: " << open << " triple(s) without a pair below " << cfg.q_bound << "; raise --q-bound\n";
        return 3;
    }
    return 0;
}

int cmd_solve(const RunConfig& cfg, bool ts)
{
    if (cfg.certs.empty())
        fail(Errc::parameter, "missing-flag", "--certs is required");
    Json in = read_json(cfg.certs);
    if (in.value("kind", std::string()) != "search")
        fail(Errc::parameter, "certs-kind", cfg.certs + " is not a search output");
    auto b = cli::base_from_json(in);
    Integer d(in.at("d").get<std::string>());
    std::vector<search::PrimePairCertificate> certs;
    for (auto& cj : in.at("certificates")) {
        auto c = search::certificate_from_json(cj);
        if (!search::verify_certificate(c, b, d))
            fail(Errc::parameter, "certificate-invalid", "certificate " + cj.at("key").get<std::string>() + " does not re-verify");
        certs.push_back(std::move(c));
    }
    auto sol = search::solve_congruences(certs, b, d);
    sol = search::augment_ramification(sol, d, b.n, b.s, cfg.ramify);
    RunConfig c2 = cfg;
    c2.d = d;
    c2.a_tilde = b.a_tilde;
    c2.n = b.n;
    c2.s = b.s;
    emit(cfg, cli::solve_report(c2, b, d, sol), ts);
    return 0;
}

std::string tsv_escape(std::string s)
{
    for (auto& c : s)
        if (c == '\t' || c == '\n')
            c = ' ';
    return s;
}

int cmd_report(const RunConfig& cfg)
{
    if (cfg.inputs.empty())
        fail(Errc::parameter, "missing-input", "report needs at least one file");
    std::ostringstream os;
    os << "source\tkind\tid\tq1\tq2\ta\tverdict\tconfig_hash\n";
    auto row = [&](const std::string& src, const std::string& kind, const std::string& id, const std::string& q1, const std::string& q2,
                   const std::string& a, const std::string& verdict, const std::string& hash) {
        os << tsv_escape(src) << '\t' << kind << '\t' << tsv_escape(id) << '\t' << q1 << '\t' << q2 << '\t' << a << '\t' << verdict << '\t'
           << hash << '\n';
    };
    for (auto& path : cfg.inputs) {
        Json j = read_json(path);
        std::string kind = j.value("kind", std::string()), hash = j.value("config_hash", std::string("-"));
        auto pid = [&](const Json& p) {
            return "d=" + p.at("d").get<std::string>() + ";n=" + std::to_string(p.at("n").get<unsigned long>()) +
                   ";s=" + std::to_string(p.at("s").get<unsigned long>()) + ";a=" + p.at("a").get<std::string>();
        };
        if (kind == "search") {
            for (auto& c : j.at("certificates")) {
                std::string q1 = c.at("q1").is_null() ? "-" : c["q1"].at("q").get<std::string>();
                std::string q2 = c.at("q2").is_null() ? "-" : c["q2"].at("q").get<std::string>();
                row(path, kind, c.at("key").get<std::string>(), q1, q2, "-", c.at("v_unsatisfiable").get<bool>() ? "found-v-unsatisfiable" : "found",
                    hash);
            }
            std::set<std::string> ob;
            for (auto& k : j.at("obstructed"))
                ob.insert(k.get<std::string>());
            for (auto& k : j.at("not_found"))
                row(path, kind, k.get<std::string>(), "-", "-", "-", ob.count(k.get<std::string>()) ? "obstructed" : "not-found-below-bound", hash);
        } else if (kind == "verify") {
            row(path, kind, pid(j.at("params")), "-", "-", j.at("params").at("a").get<std::string>(),
                j.at("certificate").at("verdict").get<std::string>(), hash);
        } else if (kind == "solve") {
            row(path, kind, "a~=" + j.at("base").at("a_tilde").get<std::string>() + ";d=" + j.at("d").get<std::string>(), "-", "-",
                j.at("a").get<std::string>(), "solved", hash);
        } else if (kind == "instance") {
            row(path, kind, pid(j.at("params")), "-", "-", j.at("params").at("a").get<std::string>(), "constructed", hash);
        } else {
            fail(Errc::parameter, "report-kind", path + " has no recognised kind");
        }
    }
    if (cfg.out.empty() || cfg.out == "-")
        std::cout << os.str();
    else
        std::ofstream(cfg.out, std::ios::binary) << os.str();
    return 0;
}

int cmd_selftest()
{
    int bad = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << "selftest " << name << ": " << (ok ? "ok" : "FAILED") << "\n";
        bad += !ok;
    };
    std::mt19937_64 rng(7);
    bool ids = true;
    for (int i = 0; i < 20; ++i)
        ids = ids && core::check_identities(core::random_params(rng)).all();
    check("identities", ids);

    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    auto rep = core::ramification_report(I);
    check("ramification", rep.cross_checked && rep.totally_ramified_count == 2);
    auto cert = oracle::class_element_order(I, core::beta_ideal(I, core::alpha_data(I)));
    check("class-element-order", cert.verdict == oracle::Verdict::certified);

    auto b = search::build_base(Integer(1), 5, 1);
    auto r = search::search_pairs(b, Integer(-7), search::SearchOptions{10'000, 2, 4096, {}});
    bool all = r.found.size() == 28;
    for (auto& [t, c] : r.found)
        all = all && search::verify_certificate(c, b, Integer(-7));
    check("prime-search", all);
    return bad ? 5 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cubic fields u(x) = x^3 + m(x+1)^2 with n | h(K): construction, prime-pair search and certificates"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string d, a, at, config_in, config_out;
    bool timestamp = false;

    auto common = [&](CLI::App* c) {
        c->add_option("--config", config_in, "read the run configuration from a JSON file");
        c->add_option("--save-config", config_out, "write the effective configuration and exit");
        c->add_option("--out", cfg.out, "output file (default stdout)");
        c->add_flag("--timestamp", timestamp, "add a run.timestamp field (the only non-deterministic field)");
    };
    auto instance_flags = [&](CLI::App* c) {
        c->add_option("-d,--d", d, "negative squarefree d = 1 mod 4");
        c->add_option("-n,--n", cfg.n, "odd n");
        c->add_option("-s,--s", cfg.s, "s >= 1");
        c->add_option("-a,--a", a, "odd a");
    };

    auto* construct = app.add_subcommand("construct", "build K, the ramification table and the n-th power witness");
    instance_flags(construct);
    common(construct);

    auto* verify = app.add_subcommand("verify", "certify that n divides h(K); exit 0 only when certified");
    instance_flags(verify);
    verify->add_option("--effort", cfg.effort, "Minkowski-bound limit for --class-group");
    verify->add_flag("--class-group", cfg.class_group, "also compute the class group from relations");
    common(verify);

    auto* search_cmd = app.add_subcommand("search", "find prime pairs for every triple (l; i, j)");
    search_cmd->add_option("--a-tilde", at, "odd a~ > 0");
    search_cmd->add_option("-n,--n", cfg.n, "n with gcd(n, 6) = 1");
    search_cmd->add_option("-s,--s", cfg.s, "s >= 1");
    search_cmd->add_option("-d,--d", d, "target d");
    search_cmd->add_option("--q-bound", cfg.q_bound, "scan primes below this bound");
    search_cmd->add_option("--workers", cfg.workers, "worker threads");
    search_cmd->add_option("--resume", cfg.resume, "resume file (created if missing)");
    search_cmd->add_option("--orientation", cfg.orientation, "1: sigma~ by the trace convention, 2: its square");
    common(search_cmd);

    auto* solve = app.add_subcommand("solve", "combine the certificate congruences into one odd a");
    solve->add_option("--certs", cfg.certs, "search output");
    solve->add_option("--ramify", cfg.ramify, "extra primes p with p || 4m (totally ramified)");
    common(solve);

    auto* report = app.add_subcommand("report", "TSV summary, one row per certificate");
    report->add_option("files", cfg.inputs, "JSON outputs of the other commands")->required();
    report->add_option("--out", cfg.out, "output file (default stdout)");

    auto* selftest = app.add_subcommand("selftest", "quick internal consistency run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_in.empty()) {
            RunConfig file = RunConfig::from_json(read_json(config_in));
            if (file.command != sub->get_name())
                fail(Errc::parameter, "config-command", "config is for '" + file.command + "'");
            std::string out = cfg.out;
            cfg = file;
            if (!out.empty())
                cfg.out = out;
        } else {
            cfg.command = sub->get_name();
            if (!d.empty())
                cfg.d = parse_integer(d, "d");
            if (!a.empty())
                cfg.a = parse_integer(a, "a");
            if (!at.empty())
                cfg.a_tilde = parse_integer(at, "a-tilde");
        }
        if (!config_out.empty()) {
            std::ofstream(config_out, std::ios::binary) << cfg.to_json().dump(2) << "\n";
            return 0;
        }
        if (sub == construct)
            return cmd_construct(cfg, timestamp);
        if (sub == verify)
            return cmd_verify(cfg, timestamp);
        if (sub == search_cmd)
            return cmd_search(cfg, timestamp);
        if (sub == solve)
            return cmd_solve(cfg, timestamp);
        if (sub == report)
            return cmd_report(cfg);
        if (sub == selftest)
            return cmd_selftest();
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "] " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error [internal] " << e.what() << "\n";
        return 5;
    }
    return 5;
}
