// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <qsvt/qsvt.hpp>

using namespace qsvt;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string &what, const std::string &detail) {
    std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    if (!ok) ++failures;
}

struct Summary {
    std::size_t records = 0;
    std::size_t failed = 0;
    double worst_ratio = 0.0;
    std::string worst;
};

Summary summarize(const SuiteReport &rep, const std::vector<std::string> &suites) {
    Summary s;
    for (const auto &r : rep.records) {
        if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) continue;
        ++s.records;
        if (!r.passed()) ++s.failed;
        const double ratio = r.error.empty() ? r.residual / r.threshold : std::numeric_limits<double>::infinity();
        if (!(ratio <= s.worst_ratio)) {
            s.worst_ratio = ratio;
            s.worst = r.suite + " trial " + std::to_string(r.trial) + " " + r.check + " = " + format_double(r.residual) +
                      " vs " + format_double(r.threshold) + (r.error.empty() ? "" : " (" + r.error + ")");
        }
    }
    return s;
}

std::string describe(const Summary &s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu records, %zu failed, worst ratio %.3e", s.records, s.failed, s.worst_ratio);
    return std::string(buf) + (s.worst.empty() ? "" : "; worst: " + s.worst);
}

bool suites_pass(int id, const std::string &what, const SuiteReport &rep, const std::vector<std::string> &suites,
                 std::size_t expected_records) {
    const auto s = summarize(rep, suites);
    const bool ok = s.failed == 0 && s.records == expected_records;
    verdict(id, ok, what, describe(s));
    return ok;
}

} // namespace

int main() {
    constexpr double pi = std::numbers::pi;

    SuiteConfig cfg; // seed 1, 100 trials, N <= 16, n <= 10, scalar n <= 50
    const auto full = run_suite(cfg);
    std::printf("full run: %zu records in %.3f s\n", full.records.size(), full.wall_seconds);

    {
        SuiteConfig c1 = cfg;
        c1.suites = {"lemma1", "lemma2"};
        const auto start = std::chrono::steady_clock::now();
        const auto rep = run_suite(c1);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto s = summarize(rep, c1.suites);
        char t[48];
        std::snprintf(t, sizeof t, "; runtime %.3f s (< 5 s)", secs);
        verdict(1, s.failed == 0 && s.records == 200 && secs < 5.0,
                "coisometry and rotated-projector identities, 100 instances, <= 1e-10", describe(s) + t);
    }

    suites_pass(2, "even and odd block forms, 100 instances incl. edge dims, <= 1e-9 n", full, {"blockform"}, 100);
    suites_pass(3, "boundary values for schedules up to n = 50, <= 1e-9", full, {"lemma6"}, 100);

    {
        const auto s = summarize(full, {"theorem7"});
        const auto demo = demo_instance("homogeneous-pi2");
        const auto triples = singular_triples(demo.unitary);
        const auto prod = even_product(demo.unitary, demo.schedule);
        double fixture = 0.0;
        std::size_t interior = 0;
        for (const auto &t : triples) {
            if (!t.has_h()) continue;
            interior += t.kind == SigmaClass::Interior;
            const ComplexVector h = demo.unitary.embed_domain(t.h, ComplexVector::Zero(8 - 3));
            fixture = std::max(fixture, std::abs(h.dot(prod.matrix * h) + 1.0));
        }
        const auto polys = even_recursion(demo.schedule);
        for (double x : unit_grid(101, 1.0)) fixture = std::max(fixture, std::abs(polys.pi(x) + 1.0));
        char buf[96];
        std::snprintf(buf, sizeof buf, "; fixture max |value + 1| = %.3e over %zu interior triples and a grid", fixture,
                      interior);
        verdict(4, s.failed == 0 && s.records == 100 && fixture <= 1e-10 && interior > 0,
                "transformed singular values, <= 1e-9; homogeneous fixture = -1 within 1e-10", describe(s) + buf);
    }

    suites_pass(5, "ten inclusions, five invariances (<= 1e-9), basis change = U_sigma (<= 1e-10)", full,
                {"inclusions", "invariance", "basis-change"}, 300);
    suites_pass(6, "mu->nu evolution matrices (<= 1e-9) and kernel-line phases (<= 1e-10)", full,
                {"evolution", "kernel-phases"}, 200);
    suites_pass(7, "2x2 sector product vs polynomial matrix and unit norm, 20 sigma x 100 schedules, <= 1e-10", full,
                {"qsp"}, 100);
    suites_pass(8, "Chebyshev closed form (<= 1e-8 n) and spectral projectors (<= 1e-9 n), n = 1..50", full,
                {"chebyshev", "spectral-decomposition"}, 200);

    {
        const auto s = summarize(full, {"spectral", "spectral-n1-cos", "spectral-n1-eigvec"});
        const auto e = homogeneous_eig(pi / 2, pi / 2, pi / 4);
        const double quarter = std::abs(e.lambda - pi / 2);
        char buf[80];
        std::snprintf(buf, sizeof buf, "; quarter-turn lambda error %.3e", quarter);
        verdict(9, s.failed == 0 && s.records == 300 && quarter <= 1e-12,
                "spectral catalogue (<= 1e-9), one-step cos formula, eigenvector overlap >= 1 - 1e-8",
                describe(s) + buf);
    }

    {
        const auto again = run_suite(cfg);
        std::size_t diff = 0;
        for (std::size_t i = 0; i < std::min(again.records.size(), full.records.size()); ++i)
            diff += !(again.records[i] == full.records[i]);
        const bool ok = again.records.size() == full.records.size() && diff == 0;
        verdict(10, ok, "two full runs with seed 1 give identical records",
                std::to_string(full.records.size()) + " records, " + std::to_string(diff) + " differ");
    }

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
