#pragma once

// Randomized verification suites. Each (suite, trial) pair draws its
// instance from its own Philox stream, so a record depends only on the seed,
// the suite and the trial index, never on which other suites run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "block_unitary.hpp"
#include "io.hpp"
#include "qsp_reduction.hpp"
#include "qsvt_engine.hpp"
#include "subspace_lab.hpp"

namespace qsvt {

inline const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{
        "relations",   "lemma1",        "lemma2",    "blockform",   "lemma6",
        "theorem7",    "inclusions",    "basis-change", "invariance", "evolution",
        "kernel-phases", "qsp",         "chebyshev", "spectral-decomposition", "spectral",
        "spectral-n1-cos", "spectral-n1-eigvec"};
    return names;
}

inline std::size_t suite_index(const std::string &name) {
    const auto &names = suite_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(Errc::ConfigInvalid, "unknown suite '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

/// Suites that need a BlockUnitary; the others work on 2x2 sectors or on
/// polynomials alone.
inline bool suite_uses_instance(const std::string &name) {
    return name != "lemma6" && name != "qsp" && name != "chebyshev" && name != "spectral-decomposition" &&
           name != "spectral-n1-cos";
}

struct SuiteConfig {
    std::uint64_t seed = 1;
    long trials = 100;
    long max_dim = 16;
    long max_n = 10;
    long max_scalar_n = 50; // schedule length for the polynomial and 2x2 suites
    Tolerances tolerances;
    std::vector<std::string> suites = suite_names();

    void validate() const {
        if (trials < 1) throw Error(Errc::ConfigInvalid, "trials must be >= 1");
        if (max_dim < 2) throw Error(Errc::ConfigInvalid, "max_dim must be >= 2");
        if (max_n < 1) throw Error(Errc::ConfigInvalid, "max_n must be >= 1");
        if (max_scalar_n < 1) throw Error(Errc::ConfigInvalid, "max_scalar_n must be >= 1");
        if (suites.empty()) throw Error(Errc::ConfigInvalid, "no suites selected");
        for (const auto &s : suites) suite_index(s);
        for (const auto &[name, value] : tolerance_entries())
            if (!(value > 0.0)) throw Error(Errc::ConfigInvalid, "tolerance " + name + " must be > 0");
        if (!(tolerances.sigma_lo < tolerances.sigma_hi && tolerances.sigma_hi < 1.0))
            throw Error(Errc::ConfigInvalid, "need 0 < sigma_lo < sigma_hi < 1");
    }

    [[nodiscard]] std::vector<std::pair<std::string, double>> tolerance_entries() const {
        const auto &t = tolerances;
        return {{"herm", t.herm}, {"unit", t.unit}, {"recon", t.recon}, {"psd", t.psd},
                {"poly", t.poly}, {"eig", t.eig},   {"sigma_lo", t.sigma_lo}, {"sigma_hi", t.sigma_hi},
                {"degenerate_sin", t.degenerate_sin}};
    }

    void set_tolerance(const std::string &name, double v) {
        auto &t = tolerances;
        if (name == "herm") t.herm = v;
        else if (name == "unit") t.unit = v;
        else if (name == "recon") t.recon = v;
        else if (name == "psd") t.psd = v;
        else if (name == "poly") t.poly = v;
        else if (name == "eig") t.eig = v;
        else if (name == "sigma_lo") t.sigma_lo = v;
        else if (name == "sigma_hi") t.sigma_hi = v;
        else if (name == "degenerate_sin") t.degenerate_sin = v;
        else throw Error(Errc::ConfigInvalid, "unknown tolerance '" + name + "'");
    }
};

/// Parse a JSON config. Unknown keys are rejected; absent keys keep defaults.
inline SuiteConfig config_from_json(const std::string &text, const std::string &what = "config") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(Errc::ConfigInvalid, what + ": malformed JSON at byte " + std::to_string(e.byte));
    }
    if (!doc.is_object()) throw Error(Errc::ConfigInvalid, what + ": top level must be an object");
    SuiteConfig cfg;
    auto integer = [&](const nlohmann::json &v, const std::string &key) {
        if (!v.is_number_integer()) throw Error(Errc::ConfigInvalid, what + ": '" + key + "' must be an integer");
        return v.get<long long>();
    };
    for (const auto &[key, v] : doc.items()) {
        if (key == "seed") {
            if (!v.is_number_unsigned()) throw Error(Errc::ConfigInvalid, what + ": 'seed' must be a non-negative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (key == "trials") cfg.trials = static_cast<long>(integer(v, key));
        else if (key == "max_dim") cfg.max_dim = static_cast<long>(integer(v, key));
        else if (key == "max_n") cfg.max_n = static_cast<long>(integer(v, key));
        else if (key == "max_scalar_n") cfg.max_scalar_n = static_cast<long>(integer(v, key));
        else if (key == "tolerances") {
            if (!v.is_object()) throw Error(Errc::ConfigInvalid, what + ": 'tolerances' must be an object");
            for (const auto &[tk, tv] : v.items()) {
                if (!tv.is_number()) throw Error(Errc::ConfigInvalid, what + ": tolerance '" + tk + "' must be a number");
                cfg.set_tolerance(tk, tv.get<double>());
            }
        } else if (key == "suites") {
            if (!v.is_array()) throw Error(Errc::ConfigInvalid, what + ": 'suites' must be an array of names");
            cfg.suites.clear();
            for (const auto &s : v) {
                if (!s.is_string()) throw Error(Errc::ConfigInvalid, what + ": suite names must be strings");
                cfg.suites.push_back(s.get<std::string>());
            }
        } else {
            throw Error(Errc::ConfigInvalid, what + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

struct SuiteRecord {
    std::string suite;
    std::uint64_t seed = 0;
    long trial = 0;
    Index dim = 0, h = 0, k = 0;
    std::size_t n = 0;
    std::string check; // residual with the largest value/threshold ratio
    double residual = 0.0;
    double threshold = 0.0;
    std::string error; // set when the trial raised instead of producing residuals

    [[nodiscard]] bool passed() const noexcept { return error.empty() && residual <= threshold; }

    friend bool operator==(const SuiteRecord &, const SuiteRecord &) = default;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteRecord> records;
    double wall_seconds = 0.0;

    [[nodiscard]] std::size_t passed_count() const {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [](const SuiteRecord &r) { return r.passed(); }));
    }
    [[nodiscard]] std::size_t failed_count() const { return records.size() - passed_count(); }
    [[nodiscard]] bool passed() const { return failed_count() == 0; }
};

/// A random unitary with random (or edge-case) subspace dimensions. Trials
/// 0-5 pin one of h, k to 0, N or 1; odd trials use Haar-random splits,
/// even trials coordinate splits.
inline BlockUnitary random_block_unitary(RandomStream &rng, long trial, long max_dim, const Tolerances &tol = {}) {
    const Index n = rng.uniform_int(2, max_dim);
    Index h = rng.uniform_int(0, n);
    Index k = rng.uniform_int(0, n);
    switch (trial) {
    case 0: h = 0; break;
    case 1: h = n; break;
    case 2: h = 1; break;
    case 3: k = 0; break;
    case 4: k = n; break;
    case 5: k = 1; break;
    default: break;
    }
    const ComplexMatrix u = haar_unitary(n, rng);
    if (trial % 2 == 1)
        return decompose(u, SubspaceSplit::random(n, h, rng), SubspaceSplit::random(n, k, rng), tol);
    return decompose(u, SubspaceSplit::coordinate(n, h), SubspaceSplit::coordinate(n, k), tol);
}

/// Run one instance-level suite on a given unitary and schedule. Suites that
/// need a single (theta, phi) take the first pair, or (1.234, 0.567) when the
/// schedule is empty. Odd-product claims are skipped without a final phase.
inline CheckReport evaluate_instance_suite(const std::string &suite, const BlockUnitary &bu,
                                           const PhaseSchedule &schedule, const Tolerances &tol = {}) {
    const PhasePair first = schedule.size() ? schedule[0] : PhasePair{1.234, 0.567};
    const bool odd = schedule.final_phi().has_value();
    CheckReport rep;
    if (suite == "relations") {
        rep.merge(relation_residuals(bu, identity_scaled(tol, bu.dim())));
        rep.merge(projector_check(bu, tol));
    } else if (suite == "lemma1") {
        rep.merge(delta_check(bu, tol));
    } else if (suite == "lemma2") {
        rep.merge(rotated_projector_check(bu, first.theta, tol));
    } else if (suite == "blockform") {
        const auto even = even_product(bu, schedule);
        rep.merge(block_form_check(even, tol));
        rep.merge(product_unitarity(even, tol), "even ");
        if (odd) {
            const auto oddp = odd_product(bu, schedule);
            rep.merge(block_form_check(oddp, tol));
            rep.merge(product_unitarity(oddp, tol), "odd ");
        }
    } else if (suite == "theorem7") {
        const auto triples = singular_triples(bu, tol);
        rep.merge(triple_check(bu, triples, tol));
        rep.merge(svt_values(even_product(bu, schedule), triples, tol));
        if (odd) rep.merge(svt_values(odd_product(bu, schedule), triples, tol));
    } else {
        const auto triples = singular_triples(bu, tol);
        const auto subs = build_subspaces(bu, triples, tol);
        if (suite == "inclusions") {
            rep.merge(structure_check(bu, subs, tol));
            auto map = u_mapping_check(bu, subs, tol);
            for (const auto &r : map.residuals)
                if (r.name.find("basis change") == std::string::npos) rep.residuals.push_back(r);
        } else if (suite == "basis-change") {
            const auto map = u_mapping_check(bu, subs, tol);
            for (const auto &r : map.residuals)
                if (r.name.find("basis change") != std::string::npos) rep.residuals.push_back(r);
        } else if (suite == "invariance") {
            rep.merge(invariance_check(bu, first.theta, first.phi, subs, tol));
        } else if (suite == "evolution" || suite == "kernel-phases") {
            CheckReport all = even_evolution_check(bu, schedule, subs, tol);
            if (odd) all.merge(odd_evolution_check(bu, schedule, subs, tol));
            const bool kernel = suite == "kernel-phases";
            for (const auto &r : all.residuals)
                if ((r.name.find("kernel") != std::string::npos) == kernel) rep.residuals.push_back(r);
        } else if (suite == "spectral") {
            rep.merge(spectral_map_check(bu, schedule, subs, tol));
        } else if (suite == "spectral-n1-eigvec") {
            rep.merge(n1_eigenvector_check(bu, first.theta, first.phi, subs, tol));
        } else {
            throw Error(Errc::ConfigInvalid, "suite '" + suite + "' is not an instance suite");
        }
    }
    return rep;
}

inline std::vector<double> unit_grid(std::size_t points, double hi) {
    std::vector<double> g(points);
    for (std::size_t j = 0; j < points; ++j) g[j] = hi * static_cast<double>(j) / static_cast<double>(points - 1);
    return g;
}

/// The 2x2 sector identities on a 20-point sigma grid for one schedule, both
/// without and with its final phase.
inline CheckReport qsp_grid_check(const PhaseSchedule &schedule, double threshold = 1e-10) {
    CheckReport rep;
    for (double sigma : unit_grid(20, 1.0)) {
        std::ostringstream tag;
        tag << "sigma=" << sigma << " ";
        rep.merge(qsp_check(QspInstance::from_sigma(sigma, schedule.with_final_phi(std::nullopt)), threshold),
                  tag.str() + "even ");
        if (schedule.final_phi()) rep.merge(qsp_check(QspInstance::from_sigma(sigma, schedule), threshold), tag.str() + "odd ");
    }
    return rep;
}

/// Fold a report into one record: the residual with the worst ratio.
inline SuiteRecord make_record(const std::string &suite, std::uint64_t seed, long trial, Index dim, Index h, Index k,
                               std::size_t n, const CheckReport &rep) {
    SuiteRecord rec{suite, seed, trial, dim, h, k, n, "", 0.0, 1.0, ""};
    double worst = -1.0;
    for (const auto &r : rep.residuals) {
        const double ratio = r.value / r.threshold;
        if (!(ratio <= worst)) {
            worst = ratio;
            rec.check = r.name;
            rec.residual = r.value;
            rec.threshold = r.threshold;
            if (ratio != ratio) break;
        }
    }
    if (rep.residuals.empty()) rec.check = "vacuous";
    return rec;
}

inline SuiteRecord run_trial(const std::string &suite, const SuiteConfig &cfg, long trial) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(suite_index(suite)) << 32) |
                                 static_cast<std::uint32_t>(trial);
    RandomStream rng(cfg.seed, stream);
    const auto &tol = cfg.tolerances;
    constexpr double half_pi = std::numbers::pi / 2;
    SuiteRecord rec{suite, cfg.seed, trial, 0, 0, 0, 0, "", 0.0, 1.0, ""};
    try {
        if (suite_uses_instance(suite)) {
            const auto bu = random_block_unitary(rng, trial, cfg.max_dim, tol);
            const std::size_t n = suite == "spectral-n1-eigvec"
                                      ? 1
                                      : static_cast<std::size_t>(rng.uniform_int(suite == "spectral" ? 1 : 0, cfg.max_n));
            const auto schedule = PhaseSchedule::random(rng, n, true);
            return make_record(suite, cfg.seed, trial, bu.dim(), bu.h_dim(), bu.k_dim(), n,
                               evaluate_instance_suite(suite, bu, schedule, tol));
        }
        if (suite == "lemma6") {
            const auto n = static_cast<std::size_t>(rng.uniform_int(1, cfg.max_scalar_n));
            return make_record(suite, cfg.seed, trial, 0, 0, 0, n,
                               boundary_values(PhaseSchedule::random(rng, n, true), tol));
        }
        if (suite == "qsp") {
            const auto n = static_cast<std::size_t>(rng.uniform_int(0, cfg.max_scalar_n));
            return make_record(suite, cfg.seed, trial, 2, 1, 1, n, qsp_grid_check(PhaseSchedule::random(rng, n, true)));
        }
        const auto n = static_cast<std::size_t>(1 + trial % cfg.max_scalar_n);
        double theta = rng.angle();
        double phi = rng.angle();
        CheckReport rep;
        if (suite == "chebyshev") {
            for (double k : unit_grid(20, half_pi)) rep.merge(homogeneous_closed_form_check(theta, phi, k, n));
        } else if (suite == "spectral-decomposition") {
            if (trial == 0) theta = phi = 0.0;             // the step is I
            if (trial == 1) theta = std::numbers::pi, phi = 0.0; // the step is -I
            for (double k : unit_grid(20, half_pi)) rep.merge(spectral_decomposition_check(theta, phi, k, n, tol));
        } else if (suite == "spectral-n1-cos") {
            for (double k : unit_grid(20, half_pi)) rep.merge(n1_cos_check(theta, phi, k, tol));
            return make_record(suite, cfg.seed, trial, 2, 1, 1, 1, rep);
        }
        return make_record(suite, cfg.seed, trial, 2, 1, 1, n, rep);
    } catch (const Error &e) {
        rec.check = "exception";
        rec.residual = std::numeric_limits<double>::infinity();
        rec.error = e.what();
        return rec;
    }
}

inline SuiteReport run_suite(const SuiteConfig &cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.config = cfg;
    for (const auto &suite : cfg.suites)
        for (long t = 0; t < cfg.trials; ++t) report.records.push_back(run_trial(suite, cfg, t));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// All applicable suites on a user-supplied unitary and schedule (trial 0).
inline SuiteReport check_instance(const BlockUnitary &bu, const PhaseSchedule &schedule, const Tolerances &tol = {}) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.config.tolerances = tol;
    report.config.trials = 1;
    report.config.seed = 0;
    report.config.suites.clear();
    auto push = [&](const std::string &suite, Index dim, Index h, Index k, auto &&fn) {
        report.config.suites.push_back(suite);
        try {
            report.records.push_back(make_record(suite, 0, 0, dim, h, k, schedule.size(), fn()));
        } catch (const Error &e) {
            SuiteRecord rec{suite, 0, 0, dim, h, k, schedule.size(), "exception",
                            std::numeric_limits<double>::infinity(), 1.0, e.what()};
            report.records.push_back(std::move(rec));
        }
    };
    for (const auto &suite : suite_names()) {
        if (suite_uses_instance(suite))
            push(suite, bu.dim(), bu.h_dim(), bu.k_dim(),
                 [&] { return evaluate_instance_suite(suite, bu, schedule, tol); });
    }
    push("lemma6", 0, 0, 0, [&] { return boundary_values(schedule, tol); });
    push("qsp", 2, 1, 1, [&] { return qsp_grid_check(schedule); });
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline std::string json_string(const std::string &s) { return nlohmann::json(s).dump(); }

inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

inline std::string record_to_json(const SuiteRecord &r) {
    std::string s = "{\"suite\": " + json_string(r.suite) + ", \"seed\": " + std::to_string(r.seed) +
                    ", \"trial\": " + std::to_string(r.trial) + ", \"dims\": [" + std::to_string(r.dim) + ", " +
                    std::to_string(r.h) + ", " + std::to_string(r.k) + "], \"n\": " + std::to_string(r.n) +
                    ", \"check\": " + json_string(r.check) + ", \"residual\": " + json_number(r.residual) +
                    ", \"threshold\": " + json_number(r.threshold) +
                    ", \"passed\": " + (r.passed() ? "true" : "false");
    if (!r.error.empty()) s += ", \"error\": " + json_string(r.error);
    return s + "}";
}

inline std::string report_to_json(const SuiteReport &rep) {
    const auto &c = rep.config;
    std::string s = "{\n  \"config\": {\"seed\": " + std::to_string(c.seed) + ", \"trials\": " +
                    std::to_string(c.trials) + ", \"max_dim\": " + std::to_string(c.max_dim) + ", \"max_n\": " +
                    std::to_string(c.max_n) + ", \"max_scalar_n\": " + std::to_string(c.max_scalar_n) +
                    ", \"tolerances\": {";
    bool first = true;
    for (const auto &[name, v] : c.tolerance_entries()) {
        s += (first ? "" : ", ") + json_string(name) + ": " + format_double(v);
        first = false;
    }
    s += "}, \"suites\": [";
    for (std::size_t i = 0; i < c.suites.size(); ++i) s += (i ? ", " : "") + json_string(c.suites[i]);
    s += "]},\n  \"summary\": {\"records\": " + std::to_string(rep.records.size()) +
         ", \"passed\": " + std::to_string(rep.passed_count()) + ", \"failed\": " + std::to_string(rep.failed_count()) +
         "},\n  \"wall_seconds\": " + format_double(rep.wall_seconds) + ",\n  \"records\": [";
    for (std::size_t i = 0; i < rep.records.size(); ++i)
        s += (i ? ",\n    " : "\n    ") + record_to_json(rep.records[i]);
    return s + (rep.records.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

inline std::string report_to_text(const SuiteReport &rep) {
    std::ostringstream os;
    os << "qsvt verification: seed " << rep.config.seed << ", " << rep.config.trials << " trials, max_dim "
       << rep.config.max_dim << ", max_n " << rep.config.max_n << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %8s %8s %14s\n", "suite", "records", "failed", "worst ratio");
    os << line;
    for (const auto &suite : rep.config.suites) {
        std::size_t total = 0, failed = 0;
        double worst = 0.0;
        for (const auto &r : rep.records) {
            if (r.suite != suite) continue;
            ++total;
            if (!r.passed()) ++failed;
            worst = std::max(worst, r.error.empty() ? r.residual / r.threshold : std::numeric_limits<double>::infinity());
        }
        std::snprintf(line, sizeof line, "%-24s %8zu %8zu %14.3e\n", suite.c_str(), total, failed, worst);
        os << line;
    }
    for (const auto &r : rep.records) {
        if (r.passed()) continue;
        os << "FAIL " << r.suite << " trial " << r.trial << " dims [" << r.dim << ", " << r.h << ", " << r.k
           << "] n " << r.n << ": " << r.check << " = " << format_double(r.residual) << " > "
           << format_double(r.threshold);
        if (!r.error.empty()) os << " (" << r.error << ")";
        os << "\n";
    }
    os << "total " << rep.records.size() << " records, " << rep.passed_count() << " passed, " << rep.failed_count()
       << " failed, " << short_num(rep.wall_seconds) << " s\n";
    return os.str();
}

} // namespace qsvt
