// qsvt_verify: run the verification suites, inspect named demo instances,
// or check a user-supplied unitary and schedule.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 bad config or I/O.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <qsvt/qsvt.hpp>

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// --report-path wins over QSVT_REPORT_PATH; with neither, the report goes to stdout.
void emit(const qsvt::SuiteReport &rep, const std::string &format, const std::string &path_flag) {
    const std::string body = format == "machine" ? qsvt::report_to_json(rep) : qsvt::report_to_text(rep);
    std::string path = path_flag;
    if (path.empty())
        if (const char *env = std::getenv("QSVT_REPORT_PATH"); env && *env) path = env;
    if (path.empty()) {
        std::cout << body;
        return;
    }
    qsvt::write_text_file(path, body);
    std::cout << rep.records.size() << " records, " << rep.failed_count() << " failed; report written to " << path
              << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Numerical verification of generalized quantum singular value transformation identities"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string report_path;
    auto add_output = [&](CLI::App *cmd) {
        cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
        cmd->add_option("--report-path", report_path, "Write the report here (else $QSVT_REPORT_PATH, else stdout)");
    };

    auto *run = app.add_subcommand("run", "Run randomized verification suites");
    std::string config_path, suites;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials, max_dim, max_n;
    run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--trials", trials, "Trials per suite");
    run->add_option("--max-dim", max_dim, "Largest ambient dimension");
    run->add_option("--max-n", max_n, "Longest schedule for instance suites");
    run->add_option("--suites", suites, "Comma-separated suite names (default: all)");
    add_output(run);

    auto *demo = app.add_subcommand("demo", "Check a named demo instance");
    std::string demo_name, save_unitary, save_schedule;
    bool list = false;
    demo->add_option("--name", demo_name, "Demo name");
    demo->add_flag("--list", list, "List demo names");
    demo->add_option("--save-unitary", save_unitary, "Write the demo unitary to this file");
    demo->add_option("--save-schedule", save_schedule, "Write the demo schedule to this file");
    add_output(demo);

    auto *check = app.add_subcommand("check-file", "Check a unitary and schedule read from files");
    std::string unitary_path, schedule_path;
    long domain_dim = -1, codomain_dim = -1;
    check->add_option("--unitary", unitary_path, "Matrix file")->required();
    check->add_option("--schedule", schedule_path, "Schedule file (default: empty schedule)");
    check->add_option("--domain-dim", domain_dim, "dim H (H = first coordinates)")->required();
    check->add_option("--codomain-dim", codomain_dim, "dim K (K = first coordinates)")->required();
    add_output(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            qsvt::SuiteConfig cfg;
            if (!config_path.empty()) cfg = qsvt::config_from_json(qsvt::read_text_file(config_path), config_path);
            if (seed) cfg.seed = *seed;
            if (trials) cfg.trials = *trials;
            if (max_dim) cfg.max_dim = *max_dim;
            if (max_n) cfg.max_n = *max_n;
            if (!suites.empty()) cfg.suites = split_list(suites);
            const auto rep = qsvt::run_suite(cfg);
            emit(rep, format, report_path);
            return rep.passed() ? 0 : kExitFail;
        }
        if (*demo) {
            if (list) {
                for (const auto &n : qsvt::demo_names()) std::cout << n << " - " << qsvt::demo_instance(n).description << "\n";
                return 0;
            }
            if (demo_name.empty()) throw qsvt::Error(qsvt::Errc::ConfigInvalid, "demo needs --name or --list");
            const auto inst = qsvt::demo_instance(demo_name);
            if (!save_unitary.empty()) qsvt::save_matrix(inst.unitary.u, save_unitary);
            if (!save_schedule.empty()) qsvt::save_schedule(inst.schedule, save_schedule);
            if (format == "text") std::cout << inst.name << ": " << inst.description << "\n";
            const auto rep = qsvt::check_instance(inst.unitary, inst.schedule);
            emit(rep, format, report_path);
            return rep.passed() ? 0 : kExitFail;
        }
        const auto u = qsvt::load_matrix(unitary_path);
        const auto schedule = schedule_path.empty() ? qsvt::PhaseSchedule{} : qsvt::load_schedule(schedule_path);
        const auto bu = qsvt::decompose(u, domain_dim, codomain_dim);
        const auto rep = qsvt::check_instance(bu, schedule);
        emit(rep, format, report_path);
        return rep.passed() ? 0 : kExitFail;
    } catch (const qsvt::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
