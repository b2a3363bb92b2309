// awe: run accuracy-weighted ensemble experiments, audit oracle matrices and
// emit synthetic drifting streams.
//
// Exit codes: 0 ok, 2 configuration, 3 I/O, 4 runtime.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "awe/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitRuntime = 4;

struct SettingOptions {
    std::string config_file;
    std::map<std::string, std::string> values;
};

void add_setting_options(CLI::App& cmd, SettingOptions& opts) {
    cmd.add_option("--config", opts.config_file, "key=value settings file; flags override it");
    // --out - writes to standard output.
    for (auto key : awe::settings_keys()) {
        const std::string name(key);
        cmd.add_option("--" + name, opts.values[name]);
    }
}

awe::Settings merged_settings(const CLI::App& cmd, const SettingOptions& opts) {
    awe::Settings settings;
    if (!opts.config_file.empty()) {
        settings = awe::read_settings_file(opts.config_file);
    }
    for (const auto& [key, value] : opts.values) {
        if (cmd.count("--" + key) > 0) {
            settings[key] = value;
        }
    }
    return settings;
}

int run_command(const CLI::App& cmd, const SettingOptions& opts) {
    const awe::ExperimentConfig config = awe::build_config(merged_settings(cmd, opts));
    const auto summary = config.out == "-" ? awe::run_experiment(config, std::cout) : awe::run_experiment(config);
    std::cerr << "wrote " << summary.chunks << " rows (" << summary.instances << " instances) to "
              << config.out.string() << '\n';
    return kExitOk;
}

int generate_command(const CLI::App& cmd, const SettingOptions& opts, bool with_amount) {
    awe::Settings settings = merged_settings(cmd, opts);
    const auto out_it = settings.find("out");
    if (out_it == settings.end() || out_it->second.empty()) {
        throw awe::ConfigError("generate needs --out (use - for standard output)");
    }
    const std::string out_path = out_it->second;
    const awe::ExperimentConfig config = awe::build_config(settings);
    if (!config.stream.generator) {
        throw awe::ConfigError("generate needs a synthetic stream (sea or hyperplane)");
    }
    auto source = awe::open_stream(config.stream);
    if (out_path == "-") {
        awe::write_csv(*source, std::cout, with_amount);
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw awe::IoError("cannot create " + out_path);
    }
    awe::write_csv(*source, out, with_amount);
    return kExitOk;
}

int measures_command(const std::string& path) {
    const awe::OracleMatrix oracle = awe::read_oracle_csv(path);
    awe::print_measures(oracle, std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Accuracy-weighted ensembles and diversity measures for drifting streams"};
    app.require_subcommand(1);

    SettingOptions run_opts;
    auto* run = app.add_subcommand("run", "Run a chunk-prequential experiment and write a metrics CSV");
    add_setting_options(*run, run_opts);

    SettingOptions gen_opts;
    bool with_amount = false;
    auto* gen = app.add_subcommand("generate", "Write a synthetic drifting stream as CSV");
    add_setting_options(*gen, gen_opts);
    gen->add_flag("--with-amount", with_amount, "Append the transaction amount before the label");

    std::string oracle_path;
    auto* measures = app.add_subcommand("measures", "Print every static diversity measure of a 0/1 oracle CSV");
    measures->add_option("oracle", oracle_path, "rows = samples, columns = classifiers")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) {
            return run_command(*run, run_opts);
        }
        if (gen->parsed()) {
            return generate_command(*gen, gen_opts, with_amount);
        }
        return measures_command(oracle_path);
    } catch (const awe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const awe::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const awe::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
