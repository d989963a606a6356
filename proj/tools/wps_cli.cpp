#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "wps/errors.hpp"
#include "wps/experiments.hpp"
#include "wps/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Wave packet transform scattering experiments"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    std::string config_path;
    run->add_option("config", config_path, "config file")->required();

    auto* list = app.add_subcommand("list", "list experiments");
    bool as_json = false;
    list->add_flag("--json", as_json, "machine readable listing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    wps::set_max_threads(threads);

    if (*list) {
        if (as_json)
            std::cout << wps::listing_json().dump(2) << "\n";
        else
            std::cout << wps::listing_text();
        return 0;
    }

    try {
        auto cfg = wps::Config::load(config_path);
        std::string out = cfg.str("output.dir", "out");
        if (const char* env = std::getenv("WPS_OUTPUT_DIR"); env && *env) out = env;
        auto summary = wps::run_experiment(cfg, out);
        std::cout << summary["experiment"].get<std::string>() << ": ";
        if (summary["verdict"].is_string())
            std::cout << summary["verdict"].get<std::string>();
        else
            std::cout << "done";
        std::cout << " (" << out << "/summary.json)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wps::exit_code_for(e);
    }
    return 0;
}
