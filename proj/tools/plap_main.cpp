#include <map>
#include <string>

#include <CLI11.hpp>

#include "plap/cli.hpp"

namespace {

struct RawArgs {
    std::string config_path;
    std::map<std::string, std::string> entries;
};

void add_common_options(CLI::App* cmd, RawArgs& raw) {
    cmd->add_option("--config", raw.config_path, "key = value config file");
    // Flag values are collected as strings and go through the same parser as
    // the config file; flags win over file entries.
    static const char* keys[] = {"domain",     "p",          "p_list",   "beta",
                                 "beta_list",  "resolution", "solver",   "tolerance",
                                 "max_iters",  "steps",      "output_dir",
                                 "field",      "field_file", "eps_list", "n",
                                 "volume",     "inner_radius"};
    for (const char* key : keys) {
        std::string flag = "--" + std::string(key);
        for (char& c : flag)
            if (c == '_') c = '-';
        cmd->add_option_function<std::string>(
            flag, [&raw, key](const std::string& v) { raw.entries[key] = v; });
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robin p-Laplacian eigenvalue laboratory"};
    app.require_subcommand(1);

    const char* commands[] = {"solve", "sweep", "expand", "compare", "check", "bracket"};
    const char* descriptions[] = {
        "solve one (domain, p, beta) eigenvalue problem",
        "run a p-sweep toward the p->infinity limit",
        "check the beta->infinity curvature expansion",
        "compare the shell against the equal-volume ball",
        "verify the limit PDE residuals of a field",
        "bracket the limit eigenvalue with distance barriers"};

    std::map<std::string, RawArgs> raw;
    for (std::size_t k = 0; k < std::size(commands); ++k)
        add_common_options(app.add_subcommand(commands[k], descriptions[k]),
                           raw[commands[k]]);

    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    const RawArgs& args = raw[sub->get_name()];

    plap::RunConfig config;
    config.command = sub->get_name();
    try {
        if (!args.config_path.empty())
            plap::apply_config_entries(config, plap::parse_config_file(args.config_path));
        plap::apply_config_entries(config, args.entries);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return plap::cli::kExitConfigError;
    }
    return plap::cli::run(config);
}
