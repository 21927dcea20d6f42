#ifndef CURVELAB_DRIVER_HPP
#define CURVELAB_DRIVER_HPP

#include <atomic>
#include <mutex>
#include <chrono>
#include <optional>
#include <thread>
#include <vector>

#include "curvelab/bounds.hpp"
#include "curvelab/cohomology.hpp"
#include "curvelab/fixture.hpp"

namespace curvelab {

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// One verified sample: configuration, outcome and audit counters.  The
// canonical serialization excludes wall-clock timing so that replaying the
// seed reproduces the record byte for byte.
struct TrialRecord {
    // config
    std::string field;
    int n = 0, d = 0, h = 0;
    uint64_t seed = 0;
    int trial_index = 0;
    uint64_t run_id = 0;
    // outcome
    int rank_m = 0;
    int h0_normal = 0, h1_normal = 0;
    int h0_tangent = 0, h1_tangent = 0;
    int h0_ambient_normal = 0;
    int expected_h0 = 0;
    std::vector<int> splitting;
    bool checks_pass = false;
    std::vector<std::string> failed_checks;
    std::optional<int> omega_rank;
    std::optional<int> dim_gamma_f0;
    std::optional<int> dim_p_gamma_net;
    // audit
    int curve_resamples = 0, pair_resamples = 0, point_resamples = 0;
    // full fixture attached when the sample fell below the generic rank
    std::optional<ordered_json> degenerate_fixture;
    // non-canonical
    double elapsed_ms = 0.0;

    ordered_json canonical_json() const {
        ordered_json j;
        j["run_id"] = run_id;
        j["trial"] = trial_index;
        j["config"] = {{"field", field}, {"n", n}, {"d", d}, {"h", h}, {"seed", seed}};
        ordered_json out;
        out["rank_m"] = rank_m;
        out["h0_normal"] = h0_normal;
        out["h1_normal"] = h1_normal;
        out["h0_tangent"] = h0_tangent;
        out["h1_tangent"] = h1_tangent;
        out["h0_ambient_normal"] = h0_ambient_normal;
        out["expected_h0"] = expected_h0;
        out["splitting"] = splitting;
        out["checks_pass"] = checks_pass;
        out["failed_checks"] = failed_checks;
        if (omega_rank) out["omega_rank"] = *omega_rank;
        if (dim_gamma_f0) out["dim_gamma_f0"] = *dim_gamma_f0;
        if (dim_p_gamma_net) out["dim_p_gamma_net"] = *dim_p_gamma_net;
        j["outcome"] = std::move(out);
        j["resamples"] = {{"curve", curve_resamples},
                          {"pair", pair_resamples},
                          {"points", point_resamples}};
        if (degenerate_fixture) j["degenerate_fixture"] = *degenerate_fixture;
        return j;
    }
};

struct VerifyConfig {
    int n = 4, d = 1, h = 5;
    int trials = 25;
    uint64_t prime = 65521;
    bool rational = false;
    uint64_t seed = 1;
    int threads = 1;
    bool with_omega = false;

    std::string field_label() const { return rational ? "rational" : std::to_string(prime); }
    uint64_t run_id() const {
        return fnv1a64("n=" + std::to_string(n) + ";d=" + std::to_string(d) +
                       ";h=" + std::to_string(h) + ";field=" + field_label() +
                       ";seed=" + std::to_string(seed) + ";trials=" + std::to_string(trials));
    }
};

template <class K>
TrialRecord run_trial(const VerifyConfig& cfg, int trial_index) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.field = cfg.field_label();
    rec.n = cfg.n;
    rec.d = cfg.d;
    rec.h = cfg.h;
    rec.seed = cfg.seed;
    rec.trial_index = trial_index;
    rec.run_id = cfg.run_id();

    Rng rng = Rng::derive(cfg.seed, static_cast<uint64_t>(trial_index));
    const auto pair = sample_incident_pair<K>(cfg.n, cfg.d, cfg.h, rng);
    rec.curve_resamples = pair.curve_resamples;
    rec.pair_resamples = pair.pair_resamples;

    const auto rep = normal_report(pair, rng);
    rec.rank_m = rep.rank_M;
    rec.h0_normal = rep.h0_normal;
    rec.h1_normal = rep.h1_normal;
    rec.h0_tangent = rep.h0_tangent;
    rec.h1_tangent = rep.h1_tangent;
    rec.h0_ambient_normal = rep.h0_ambient_normal;
    rec.expected_h0 = rep.expected_h0;
    rec.splitting = rep.splitting_TX.degrees;
    rec.checks_pass = rep.all_pass();
    for (const auto& c : rep.checks)
        if (!c.pass) rec.failed_checks.push_back(c.name);

    if (cfg.with_omega) {
        const auto f1 = HomForm<K>::random_dense(cfg.n, cfg.h, rng);
        const auto f2 = HomForm<K>::random_dense(cfg.n, cfg.h, rng);
        const auto dims = tangent_dims(pair, f1, f2, rng);
        rec.omega_rank = dims.omega_rank;
        rec.dim_gamma_f0 = dims.dim_gamma_f0;
        rec.dim_p_gamma_net = dims.dim_p_gamma_net;
        rec.point_resamples = dims.point_resamples;
    }

    // a sample below the generic rank is kept, flagged with its full fixture
    if (cfg.n >= 4 && naive_count_holds(cfg.n, cfg.d, cfg.h) && rec.h1_normal > 0)
        rec.degenerate_fixture = pair_to_json(pair);

    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

// Replay a stored fixture instead of sampling.
template <class K>
TrialRecord run_fixture_trial(const VerifyConfig& cfg, const IncidentPair<K>& pair) {
    TrialRecord rec;
    rec.field = cfg.field_label();
    rec.n = pair.n();
    rec.d = pair.d();
    rec.h = pair.h();
    rec.seed = pair.seed;
    rec.trial_index = 0;
    rec.run_id = cfg.run_id();
    Rng rng(pair.seed);
    const auto rep = normal_report(pair, rng);
    rec.rank_m = rep.rank_M;
    rec.h0_normal = rep.h0_normal;
    rec.h1_normal = rep.h1_normal;
    rec.h0_tangent = rep.h0_tangent;
    rec.h1_tangent = rep.h1_tangent;
    rec.h0_ambient_normal = rep.h0_ambient_normal;
    rec.expected_h0 = rep.expected_h0;
    rec.splitting = rep.splitting_TX.degrees;
    rec.checks_pass = rep.all_pass();
    for (const auto& c : rep.checks)
        if (!c.pass) rec.failed_checks.push_back(c.name);
    rec.curve_resamples = pair.curve_resamples;
    rec.pair_resamples = pair.pair_resamples;
    return rec;
}

struct VerifyOutcome {
    std::vector<TrialRecord> records;
    bool within_regime = false;
    bool policy_pass = false;
    int h1_zero_count = 0;
    int h1_positive_count = 0;
    int degenerate_count = 0;  // sampler gave up on a trial
};

// Exit-code policy: inside the unobstructed regime (n >= 4 and the naive
// parameter count holds) all but at most one trial must be unobstructed;
// outside it every trial must be obstructed.
template <class K>
VerifyOutcome run_verify(const VerifyConfig& cfg) {
    if (cfg.trials < 1) throw precondition_error("need at least one trial");
    if (HomForm<K>::monomial_count(cfg.n, cfg.h) <= static_cast<int64_t>(cfg.h) * cfg.d + 1)
        throw precondition_error("invalid shape: C(n+h,n) <= hd+1, no hypersurface can contain the curve");

    VerifyOutcome out;
    out.within_regime = cfg.n >= 4 && naive_count_holds(cfg.n, cfg.d, cfg.h);
    out.records.resize(cfg.trials);
    std::vector<char> ok(cfg.trials, 0);

    std::atomic<int> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        std::optional<FpContext> ctx;
        if (!cfg.rational) ctx.emplace(cfg.prime);
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.trials) break;
            try {
                out.records[i] = run_trial<K>(cfg, i);
                ok[i] = 1;
            } catch (const degeneracy_error&) {
                ok[i] = 0;
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (!failure) failure = std::current_exception();
                break;
            }
        }
    };
    const int nthreads = std::max(1, std::min(cfg.threads, cfg.trials));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<TrialRecord> kept;
    for (int i = 0; i < cfg.trials; ++i) {
        if (!ok[i]) {
            ++out.degenerate_count;
            continue;
        }
        if (out.records[i].h1_normal == 0)
            ++out.h1_zero_count;
        else
            ++out.h1_positive_count;
        kept.push_back(std::move(out.records[i]));
    }
    out.records = std::move(kept);

    if (out.within_regime)
        out.policy_pass = out.h1_zero_count >= cfg.trials - 1;
    else
        out.policy_pass =
            out.h1_positive_count == cfg.trials - out.degenerate_count && out.degenerate_count == 0;
    return out;
}

}  // namespace curvelab

#endif
