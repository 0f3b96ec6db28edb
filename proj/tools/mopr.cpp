#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mopr/cli/config.hpp"
#include "mopr/cli/run.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::string seq;
    std::optional<std::size_t> jobs;
};

std::size_t jobs_from_env() {
    const char* env = std::getenv("MOPRS_JOBS");
    if (!env || !*env) return 1;
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos || std::stoul(text) == 0)
        throw mopr::cli::ConfigError("MOPRS_JOBS must be a positive integer, got \"" + text + "\"");
    return std::stoul(text);
}

int execute(mopr::cli::Mode mode, const Flags& flags) {
    using namespace mopr::cli;
    RunResult result;
    try {
        const JobConfig job = load_job(flags.config);
        RunOptions opt;
        opt.mode = mode;
        opt.format = !flags.format.empty() ? parse_format(flags.format) : job.format.value_or(Format::Csv);
        opt.sequence = !flags.seq.empty() ? flags.seq : job.sequence.value_or("frame");
        opt.jobs = flags.jobs ? *flags.jobs : jobs_from_env();
        result = run(job, opt);
    } catch (const mopr::Error& e) {
        result.status = 2;
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    }
    std::cerr << result.diagnostics;
    if (result.status == 2) return 2;
    if (flags.out.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(flags.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return 2;
        }
        out << result.output;
    }
    return result.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple orthogonal polynomials and their rational transforms in exact arithmetic"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        mopr::cli::Mode mode;
    };
    const Sub subs[] = {
        {"compute", "Moment-matrix MOPs of the base system", mopr::cli::Mode::Compute},
        {"transform", "Determinantal MOPs of the transformed system", mopr::cli::Mode::Transform},
        {"verify", "Check determinantal MOPs against the transformed system", mopr::cli::Mode::Verify},
        {"sweep", "Normality table for the base and transformed systems", mopr::cli::Mode::Sweep},
    };
    Flags flags;
    std::optional<mopr::cli::Mode> chosen;
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        cmd->add_option("--config", flags.config, "Job description (JSON)")->required();
        cmd->add_option("--out", flags.out, "Write the table here instead of stdout");
        cmd->add_option("--format", flags.format, "csv, json or pretty")
            ->check(CLI::IsMember({"csv", "json", "pretty"}));
        cmd->add_option("--seq", flags.seq, "path, frame or file:PATH");
        cmd->add_option("--jobs", flags.jobs, "Worker threads (default: MOPRS_JOBS, else 1)")
            ->check(CLI::PositiveNumber);
        cmd->callback([&chosen, mode = s.mode] { chosen = mode; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return execute(*chosen, flags);
}
