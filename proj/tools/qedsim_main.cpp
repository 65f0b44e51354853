// qedsim — configuration-driven experiment runner. Subcommands:
//   run <configs...> [--out DIR] [--jobs K]
//   validate <config>
//   presets list | presets emit <name> [--out FILE]

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qedsim/runner.hpp"
#include "qedsim/version.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int do_run(const std::vector<std::string>& configs, const std::string& out_dir, unsigned jobs) {
    namespace fs = std::filesystem;
    struct Task {
        std::string path;
        fs::path out;
    };
    std::vector<Task> tasks;
    for (const std::string& c : configs) {
        fs::path out = out_dir;
        if (configs.size() > 1) out /= fs::path(c).stem();
        tasks.push_back({c, out});
    }

    std::vector<int> codes(tasks.size(), 0);
    std::vector<std::string> messages(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            try {
                const qedsim::RunOutcome out = qedsim::run_config_text(slurp(tasks[i].path), tasks[i].out);
                codes[i] = out.exit_code;
                messages[i] = out.exit_code == 0
                                  ? "wrote " + out.csv_path.string() + ", " + out.manifest_path.string()
                                  : out.error;
            } catch (const std::exception& e) {
                codes[i] = 2;
                messages[i] = e.what();
            }
        }
    };

    const unsigned n_threads = std::min<std::size_t>(std::max(1u, jobs), tasks.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    int rc = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (codes[i] == 0) {
            std::cout << tasks[i].path << ": ok, " << messages[i] << "\n";
        } else {
            std::cerr << tasks[i].path << ": error (exit " << codes[i] << "): " << messages[i] << "\n";
            rc = std::max(rc, codes[i]);
        }
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity-QED quadrature simulator: Jahn-Teller surfaces, gauge potentials, "
                 "geometric phases and open-system dynamics"};
    app.set_version_flag("--version", std::string("qedsim ") + qedsim::kVersion);
    app.require_subcommand(1);

    // run
    std::vector<std::string> run_configs;
    std::string run_out = ".";
    unsigned run_jobs = 1;
    CLI::App* run = app.add_subcommand("run", "execute experiment config(s)");
    run->add_option("configs", run_configs, "config file path(s)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "output directory (per-config subdirectories when several)");
    run->add_option("--jobs", run_jobs, "run up to K configs concurrently")->check(CLI::PositiveNumber);

    // validate
    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "parse and validate a config");
    validate->add_option("config", validate_path, "config file path")->required()->check(CLI::ExistingFile);

    // presets
    CLI::App* presets_cmd = app.add_subcommand("presets", "list or emit shipped experiment presets");
    presets_cmd->require_subcommand(1);
    CLI::App* presets_list = presets_cmd->add_subcommand("list", "list preset names");
    std::string emit_name, emit_out;
    CLI::App* presets_emit = presets_cmd->add_subcommand("emit", "write a preset config");
    presets_emit->add_option("name", emit_name, "preset name")->required();
    presets_emit->add_option("--out", emit_out, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return do_run(run_configs, run_out, run_jobs);

        if (*validate) {
            try {
                const qedsim::RunConfig cfg = qedsim::parse_config(slurp(validate_path));
                std::cout << validate_path << ": valid (" << cfg.experiment << " experiment, model "
                          << qedsim::variant_name(cfg.model.variant) << ")\n";
                return 0;
            } catch (const std::exception& e) {
                std::cerr << validate_path << ": invalid: " << e.what() << "\n";
                return 2;
            }
        }

        if (*presets_list) {
            for (const qedsim::Preset& p : qedsim::presets())
                std::cout << p.name << "  -  " << p.description << "\n";
            return 0;
        }

        if (*presets_emit) {
            const qedsim::Preset& p = qedsim::find_preset(emit_name);
            const std::string text = p.config.dump(2) + "\n";
            if (emit_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(emit_out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot write '" + emit_out + "'");
                f << text;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "qedsim: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
