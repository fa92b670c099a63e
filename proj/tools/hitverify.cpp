// Command-line harness: runs the verification suites, answers ad-hoc hit
// queries, and emits machine-checkable certificates and JSON reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "steenrod/certio.hpp"
#include "steenrod/hit.hpp"
#include "steenrod/margolis.hpp"
#include "steenrod/modules.hpp"
#include "steenrod/verify.hpp"

using namespace steenrod;

namespace {

void print_summary(const SuiteResult& res) {
    for (const auto& item : res.items) {
        std::cout << (item.pass ? "  ok   " : "  FAIL ") << item.name;
        if (!item.detail.empty()) std::cout << "  [" << item.detail << "]";
        std::cout << "\n";
    }
    std::printf("%s: %zu/%zu checks passed (%.1f ms)\n", res.suite.c_str(),
                res.items.size() - res.failures(), res.items.size(), res.ms);
}

int finish(const SuiteResult& res, const std::string& report_path,
           const std::vector<HitCertificate>& certs, const std::string& cert_path) {
    print_summary(res);
    if (!report_path.empty()) {
        write_report(report_path, res);
        std::cout << "report written to " << report_path << "\n";
    }
    if (!cert_path.empty() && !certs.empty()) {
        write_certificates(cert_path, certs);
        std::cout << "certificate(s) written to " << cert_path << "\n";
    }
    return res.overall() ? 0 : 1;
}

std::string read_target_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::runtime_error("cannot read " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        std::string s = ss.str();
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
            s.pop_back();
        return s;
    }
    return arg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hit-problem verifier for Steenrod module realizations over F2"};
    app.require_subcommand(1);

    std::string report_path, cert_path, module_spec, target_arg, ops_spec = "full";
    int n = 1, s = 3, i_op = 0, d_max = 32, k_vars = -1, degree_cap = 40;
    bool refined = false;
    std::uint64_t seed = 1;
    int samples = 1000;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    auto add_report = [&](CLI::App* cmd) {
        cmd->add_option("--report", report_path, "write a JSON report to this path");
    };
    auto add_cert = [&](CLI::App* cmd) {
        cmd->add_option("--emit-cert", cert_path, "write certificate JSON to this path");
    };

    auto* cmd_action = app.add_subcommand("action-table",
                                          "recompute the Steenrod action on the rank-3 "
                                          "invariant-ring generators");
    add_report(cmd_action);

    auto* cmd_lemma_b = app.add_subcommand("lemma-b",
                                           "certify c32*c31 as a sum Sq^1 u1 + Sq^2 u2 in P_3");
    add_report(cmd_lemma_b);
    add_cert(cmd_lemma_b);

    auto* cmd_st3 = app.add_subcommand("st3-hit",
                                       "certify St_s of the fundamental class as hit");
    cmd_st3->add_option("--n", n, "rank of the free module (1..3)")->default_val(1);
    cmd_st3->add_option("--s", s, "Singer rank (3, or 4 with --n 1)")->default_val(3);
    add_report(cmd_st3);
    add_cert(cmd_st3);

    auto* cmd_main = app.add_subcommand("theorem-main",
                                        "verify that positive-degree basis elements of "
                                        "R_3 F(n) are hit");
    cmd_main->add_option("--n", n, "rank of the free module (0..3)")->default_val(1);
    cmd_main->add_option("--max-degree", d_max, "largest total degree")->default_val(32);
    cmd_main->add_option("--degree-cap", degree_cap, "hard cap on --max-degree")
        ->default_val(40);
    cmd_main->add_flag("--refined", refined, "use the A(f)/A(f+1) bounds in SingerFree(n)");
    cmd_main->add_option("--jobs", jobs, "worker threads over degrees");
    add_report(cmd_main);
    add_cert(cmd_main);

    auto* cmd_marg = app.add_subcommand("margolis", "tabulate ker/im/H of a Milnor operation");
    cmd_marg->add_option("--module", module_spec, "module spec, e.g. P(2), Pbar(3), D3");
    cmd_marg->add_option("--k", k_vars, "shorthand for --module P(k)");
    cmd_marg->add_option("--i", i_op, "Milnor operation index (0 or 1)")->default_val(0);
    cmd_marg->add_option("--max-degree", d_max, "largest degree")->default_val(20);
    add_report(cmd_marg);

    auto* cmd_hit = app.add_subcommand("hit", "ad-hoc hit query");
    cmd_hit->add_option("--module", module_spec, "module spec, e.g. P(3), F(2), P3xF(1)")
        ->required();
    cmd_hit->add_option("--target", target_arg, "polynomial text, or @file")->required();
    cmd_hit->add_option("--ops", ops_spec, "full | A(m) | allk | sq:k1,k2,...")
        ->default_val("full");
    add_report(cmd_hit);
    add_cert(cmd_hit);

    auto* cmd_props = app.add_subcommand("properties", "run the seeded property suites");
    cmd_props->add_option("--seed", seed, "random seed recorded in the report")->default_val(1);
    cmd_props->add_option("--samples", samples, "samples per property")->default_val(1000);
    cmd_props->add_option("--jobs", jobs, "unused; properties run serially for determinism");
    add_report(cmd_props);

    std::string cert_file;
    auto* cmd_verify = app.add_subcommand("verify-cert", "re-verify a certificate file");
    cmd_verify->add_option("file", cert_file, "certificate JSON path")->required();
    add_report(cmd_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_action->parsed()) {
            return finish(run_action_table(), report_path, {}, "");
        }
        if (cmd_lemma_b->parsed()) {
            auto run = run_lemma_b();
            return finish(run.suite, report_path, run.certificates, cert_path);
        }
        if (cmd_st3->parsed()) {
            auto run = run_st3_hit(n, s);
            return finish(run.suite, report_path, run.certificates, cert_path);
        }
        if (cmd_main->parsed()) {
            TheoremMainConfig cfg;
            cfg.n = n;
            cfg.d_max = d_max;
            cfg.degree_cap = degree_cap;
            cfg.refined = refined;
            cfg.jobs = jobs;
            cfg.collect_certificates = !cert_path.empty();
            auto run = run_theorem_main(cfg);
            return finish(run.suite, report_path, run.certificates, cert_path);
        }
        if (cmd_marg->parsed()) {
            if (module_spec.empty()) {
                if (k_vars < 0)
                    throw std::runtime_error("margolis: give --module or --k");
                module_spec = "P(" + std::to_string(k_vars) + ")";
            }
            return finish(run_margolis_cmd(module_spec, i_op, d_max), report_path, {}, "");
        }
        if (cmd_hit->parsed()) {
            detail::Stopwatch sw;
            auto module = ModuleRealization::parse(module_spec);
            Polynomial target =
                parse_poly(read_target_arg(target_arg), module->ambient_vars());
            OpSet ops = OpSet::parse(ops_spec);
            HitReport rep = hit_membership(module, target, ops);
            SuiteResult res;
            res.suite = "hit";
            res.params = {{"module", module_spec},
                          {"degree", std::to_string(target.degree())},
                          {"ops", ops.to_string()}};
            res.add("target is hit", rep.hit,
                    "slice dim " + std::to_string(rep.slice_dim) + ", hit dim " +
                        std::to_string(rep.hit_dim));
            res.ms = sw.ms();
            std::vector<HitCertificate> certs;
            if (rep.certificate) certs.push_back(*rep.certificate);
            return finish(res, report_path, certs, cert_path);
        }
        if (cmd_props->parsed()) {
            PropertyConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            return finish(run_property_suites(cfg), report_path, {}, "");
        }
        if (cmd_verify->parsed()) {
            detail::Stopwatch sw;
            SuiteResult res;
            res.suite = "verify-cert";
            res.params = {{"file", cert_file}};
            auto certs = read_certificates(cert_file);
            for (std::size_t idx = 0; idx < certs.size(); ++idx) {
                auto ver = verify_certificate(certs[idx]);
                res.add("certificate " + std::to_string(idx) + " (" + certs[idx].module_spec +
                            ", degree " + std::to_string(certs[idx].degree) + ")",
                        ver.ok, ver.message);
            }
            res.ms = sw.ms();
            return finish(res, report_path, {}, "");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
