#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "curvelab/charts.hpp"
#include "curvelab/driver.hpp"

using namespace curvelab;

namespace {

uint64_t env_u64(const char* name, uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoull(v);
    } catch (...) {
        return fallback;
    }
}

struct CommonOpts {
    int n = 4, d = 1, h = 5;
    int trials = 25;
    std::string prime;
    uint64_t seed = 1;
    int threads = 0;
    std::string out;
    bool pretty = false;

    VerifyConfig to_config() const {
        VerifyConfig cfg;
        cfg.n = n;
        cfg.d = d;
        cfg.h = h;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads > 0 ? threads : static_cast<int>(env_u64("CURVELAB_THREADS", 1));
        if (prime == "rational") {
            cfg.rational = true;
        } else if (!prime.empty()) {
            cfg.prime = std::stoull(prime);
        } else {
            cfg.prime = env_u64("CURVELAB_PRIME", 65521);
        }
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = true) {
    cmd->set_help_flag("--help", "print this help");
    cmd->add_option("--n", o.n, "ambient projective dimension");
    cmd->add_option("--d", o.d, "curve degree");
    cmd->add_option("--h", o.h, "hypersurface degree");
    if (with_trials) cmd->add_option("--trials", o.trials, "number of sampled trials");
    cmd->add_option("--prime", o.prime,
                    "field: an odd prime < 2^32, or 'rational' (default: CURVELAB_PRIME or 65521)");
    cmd->add_option("--seed", o.seed, "base seed; trial i uses an independent derived stream");
    cmd->add_option("--threads", o.threads, "worker threads (default: CURVELAB_THREADS or 1)");
    cmd->add_option("--out", o.out, "write JSONL records to this file (appended)");
    cmd->add_flag("--pretty", o.pretty, "human-readable summary instead of bare JSON");
}

std::ofstream open_ledger(const std::string& path) {
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::runtime_error("cannot open ledger file " + path);
    return f;
}

void emit_records(const VerifyConfig& cfg, const VerifyOutcome& out, const std::string& path) {
    ordered_json header;
    header["run_id"] = cfg.run_id();
    header["config"] = {{"field", cfg.field_label()}, {"n", cfg.n}, {"d", cfg.d},
                        {"h", cfg.h},                 {"seed", cfg.seed}, {"trials", cfg.trials}};
    if (path.empty()) {
        std::cout << header.dump() << "\n";
        for (const auto& r : out.records) std::cout << r.canonical_json().dump() << "\n";
    } else {
        auto f = open_ledger(path);
        f << header.dump() << "\n";
        for (const auto& r : out.records) f << r.canonical_json().dump() << "\n";
    }
}

int summarize_policy(const VerifyConfig& cfg, const VerifyOutcome& out, bool pretty) {
    if (pretty) {
        std::cout << "config (n=" << cfg.n << ", d=" << cfg.d << ", h=" << cfg.h << ") over "
                  << cfg.field_label() << ": " << (out.within_regime ? "inside" : "outside")
                  << " the unobstructed regime\n";
        std::cout << "  h1=0 trials: " << out.h1_zero_count
                  << ", h1>=1 trials: " << out.h1_positive_count
                  << ", degenerate: " << out.degenerate_count << "\n";
        std::cout << "  policy: " << (out.policy_pass ? "PASS" : "FAIL") << "\n";
    }
    return out.policy_pass ? 0 : 1;
}

template <class Fn>
int with_field(const VerifyConfig& cfg, Fn&& fn) {
    if (cfg.rational) return fn.template operator()<Rat>();
    FpContext ctx(cfg.prime);
    return fn.template operator()<Fp>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "curvelab: exact verification of deformation invariants of rational curves on hypersurfaces"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);

    // ---- verify-h1 ----------------------------------------------------
    CommonOpts vh;
    std::string vh_fixture;
    bool vh_with_omega = false;
    auto* verify_cmd = app.add_subcommand(
        "verify-h1",
        "sample incident pairs and verify the obstruction policy for the configuration. A "
        "hypersurface 'through a generic curve' is drawn uniformly from the space of degree-h "
        "forms vanishing on the sampled curve; this matches a generic point of the incidence "
        "correspondence, not a generic hypersurface (which would contain no curve at all).");
    add_common(verify_cmd, vh);
    verify_cmd->add_option("--fixture", vh_fixture, "replay a stored fixture instead of sampling");
    verify_cmd->add_flag("--with-omega", vh_with_omega,
                         "also record the determinant-form rank and tangent dimensions per trial");

    // ---- gen ----------------------------------------------------------
    CommonOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "sample one incident pair and write it as a fixture");
    add_common(gen_cmd, gen, /*with_trials=*/false);

    // ---- splitting ----------------------------------------------------
    CommonOpts sp;
    auto* split_cmd =
        app.add_subcommand("splitting", "splitting type of the pulled-back tangent bundle per trial");
    add_common(split_cmd, sp);

    // ---- omega-rank ---------------------------------------------------
    CommonOpts om;
    auto* omega_cmd = app.add_subcommand("omega-rank", "rank of the determinant-form matrix per trial");
    add_common(omega_cmd, om);

    // ---- tangent-dims ---------------------------------------------------
    CommonOpts td;
    auto* tangent_cmd =
        app.add_subcommand("tangent-dims", "tangent dimensions of the incidence fiber and its projection");
    add_common(tangent_cmd, td);

    // ---- chart-check ----------------------------------------------------
    int cc_instances = 10, cc_d = 2, cc_n = 4;
    uint64_t cc_seed = 1;
    bool cc_pretty = false;
    auto* chart_cmd = app.add_subcommand("chart-check",
                                         "floating-point chart Jacobian versus its closed form");
    chart_cmd->add_option("--instances", cc_instances, "number of random instances");
    chart_cmd->add_option("--n", cc_n, "ambient projective dimension (>= 4)");
    chart_cmd->add_option("--d", cc_d, "curve degree");
    chart_cmd->add_option("--seed", cc_seed, "seed");
    chart_cmd->add_flag("--pretty", cc_pretty, "human-readable summary");

    // ---- bounds ---------------------------------------------------------
    std::vector<int> bd_range = {4, 12};
    bool bd_json = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form classification table");
    bounds_cmd->add_option("--n-range", bd_range, "inclusive range of ambient dimensions")
        ->expected(2);
    bounds_cmd->add_flag("--json", bd_json, "emit JSON rows instead of markdown");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*verify_cmd) {
            auto cfg = vh.to_config();
            cfg.with_omega = vh_with_omega;
            if (!vh_fixture.empty()) {
                std::ifstream f(vh_fixture);
                if (!f) {
                    std::cerr << "cannot read fixture " << vh_fixture << "\n";
                    return 2;
                }
                ordered_json j = ordered_json::parse(f, nullptr, true);
                return with_field(cfg, [&]<class K>() {
                    const auto pair = pair_from_json<K>(j);
                    cfg.n = pair.n();
                    cfg.d = pair.d();
                    cfg.h = pair.h();
                    const auto rec = run_fixture_trial<K>(cfg, pair);
                    if (vh.out.empty())
                        std::cout << rec.canonical_json().dump() << "\n";
                    else
                        open_ledger(vh.out) << rec.canonical_json().dump() << "\n";
                    return rec.checks_pass ? 0 : 1;
                });
            }
            return with_field(cfg, [&]<class K>() {
                const auto out = run_verify<K>(cfg);
                emit_records(cfg, out, vh.out);
                return summarize_policy(cfg, out, vh.pretty);
            });
        }

        if (*gen_cmd) {
            const auto cfg = gen.to_config();
            return with_field(cfg, [&]<class K>() {
                Rng rng(cfg.seed);
                const auto pair = sample_incident_pair<K>(cfg.n, cfg.d, cfg.h, rng);
                const std::string text = pair_to_json(pair).dump(2);
                if (gen.out.empty()) {
                    std::cout << text << "\n";
                } else {
                    std::ofstream f(gen.out, std::ios::trunc);
                    f << text << "\n";
                }
                return 0;
            });
        }

        if (*split_cmd) {
            const auto cfg = sp.to_config();
            return with_field(cfg, [&]<class K>() {
                std::ofstream file;
                if (!sp.out.empty()) file = open_ledger(sp.out);
                std::ostream& dst = sp.out.empty() ? std::cout : file;
                for (int i = 0; i < cfg.trials; ++i) {
                    Rng rng = Rng::derive(cfg.seed, i);
                    const auto pair = sample_incident_pair<K>(cfg.n, cfg.d, cfg.h, rng);
                    const auto s = splitting_type(tangent_monad(pair));
                    if (sp.pretty) {
                        dst << "trial " << i << ": " << s.str() << "\n";
                    } else {
                        ordered_json j;
                        j["trial"] = i;
                        j["splitting"] = s.degrees;
                        dst << j.dump() << "\n";
                    }
                }
                return 0;
            });
        }

        if (*omega_cmd || *tangent_cmd) {
            const CommonOpts& o = *omega_cmd ? om : td;
            const auto cfg = o.to_config();
            return with_field(cfg, [&]<class K>() {
                std::ofstream file;
                if (!o.out.empty()) file = open_ledger(o.out);
                std::ostream& dst = o.out.empty() ? std::cout : file;
                for (int i = 0; i < cfg.trials; ++i) {
                    Rng rng = Rng::derive(cfg.seed, i);
                    const auto pair = sample_incident_pair<K>(cfg.n, cfg.d, cfg.h, rng);
                    const auto f1 = HomForm<K>::random_dense(cfg.n, cfg.h, rng);
                    const auto f2 = HomForm<K>::random_dense(cfg.n, cfg.h, rng);
                    const auto dims = tangent_dims(pair, f1, f2, rng);
                    ordered_json j;
                    j["trial"] = i;
                    j["omega_rank"] = dims.omega_rank;
                    j["dim_gamma_f0"] = dims.dim_gamma_f0;
                    j["dim_p_gamma_net"] = dims.dim_p_gamma_net;
                    dst << j.dump() << "\n";
                }
                return 0;
            });
        }

        if (*chart_cmd) {
            Rng rng(cc_seed);
            const auto report = verify_chart(cc_instances, cc_n, cc_d, rng);
            if (cc_pretty) {
                std::cout << report.closed_form_pass << "/" << report.requested
                          << " instances within 1e-6 of the closed form ("
                          << report.skipped << " skipped)\n";
                for (size_t i = 0; i < report.instances.size(); ++i) {
                    const auto& inst = report.instances[i];
                    if (inst.skipped) {
                        std::cout << "  instance " << i << ": skipped (degenerate roots)\n";
                        continue;
                    }
                    std::cout << "  instance " << i << ": rel_err=" << inst.closed_form_rel_err
                              << " residual=" << inst.root_residual << " minor_product_ratio=("
                              << inst.minor_product_ratio.real() << ","
                              << inst.minor_product_ratio.imag() << ")\n";
                }
            } else {
                ordered_json j;
                j["requested"] = report.requested;
                j["converged"] = report.converged;
                j["skipped"] = report.skipped;
                j["closed_form_pass"] = report.closed_form_pass;
                ordered_json arr = ordered_json::array();
                for (const auto& inst : report.instances) {
                    ordered_json r;
                    r["skipped"] = inst.skipped;
                    if (!inst.skipped) {
                        r["closed_form_rel_err"] = inst.closed_form_rel_err;
                        r["root_residual"] = inst.root_residual;
                        r["minor_product_ratio"] = {inst.minor_product_ratio.real(),
                                                    inst.minor_product_ratio.imag()};
                    }
                    arr.push_back(std::move(r));
                }
                j["instances"] = std::move(arr);
                std::cout << j.dump() << "\n";
            }
            return report.closed_form_pass == report.converged && report.skipped == 0 ? 0 : 1;
        }

        if (*bounds_cmd) {
            if (bd_json) {
                for (int n = bd_range[0]; n <= bd_range[1]; ++n)
                    for (int h = 1; h <= 2 * n - 2; ++h) {
                        const auto row = classify(n, h);
                        ordered_json j;
                        j["n"] = n;
                        j["h"] = h;
                        j["regime"] = regime_name(row.regime);
                        j["curves"] = curve_class_name(row.curve_class);
                        if (row.max_curve_degree)
                            j["max_curve_degree"] = *row.max_curve_degree;
                        else
                            j["max_curve_degree"] = nullptr;
                        j["finitely_many_per_degree"] = row.finitely_many_per_degree;
                        std::cout << j.dump() << "\n";
                    }
            } else {
                std::cout << classification_table_markdown(bd_range[0], bd_range[1]);
            }
            return 0;
        }
    } catch (const fixture_error& e) {
        std::cerr << "fixture error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
