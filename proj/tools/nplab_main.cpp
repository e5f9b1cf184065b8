// Command-line driver: runs one experiment from a JSON configuration and
// writes <out>/<experiment>.csv plus <out>/<experiment>.json. Results are
// cached by a hash of the experiment name and the effective configuration;
// a repeated run with the same inputs replays the stored files byte for byte.
//
// Exit status: 0 when the experiment's acceptance comparison passes (or it
// has none), 1 when it fails, 2 on configuration errors.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <nplab/cache.hpp>
#include <nplab/experiments.hpp>
#include <nplab/parallel.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file_atomic(const fs::path& p, const std::string& data) {
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << data;
    }
    fs::rename(tmp, p);
}

std::string joined_names() {
    std::string s;
    for (const auto& n : nplab::experiment_names()) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for nonlocal seminorms and perimeters"};
    std::string experiment, config_path, out_dir = ".";
    std::string cache_dir = ".nplab-cache";
    int threads = 0;
    std::int64_t seed = 0;
    bool no_cache = false;

    app.add_option("experiment", experiment, "one of: " + joined_names())
        ->required();
    app.add_option("--config", config_path, "JSON configuration file")
        ->required();
    app.add_option("--out", out_dir, "output directory (default: .)");
    app.add_option("--threads", threads,
                   "worker threads (overrides NPLAB_THREADS)");
    auto* seed_opt =
        app.add_option("--seed", seed, "override the config's seed field");
    app.add_flag("--no-cache", no_cache, "recompute even if a result is cached");
    app.add_option("--cache-dir", cache_dir,
                   "result cache directory (default: .nplab-cache)");
    CLI11_PARSE(app, argc, argv);

    nplab::thread_count() =
        threads >= 1 ? threads : nplab::resolve_thread_count_from_env();

    json config;
    {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "config error at --config: cannot open '"
                      << config_path << "'\n";
            return 2;
        }
        try {
            config = json::parse(f);
        } catch (const json::parse_error& e) {
            std::cerr << "config error at " << config_path << ": " << e.what()
                      << "\n";
            return 2;
        }
    }
    if (!config.is_object()) {
        std::cerr << "config error at " << config_path
                  << ": top level must be an object\n";
        return 2;
    }
    if (seed_opt->count() > 0) config["seed"] = seed;

    try {
        std::string name = nplab::resolve_experiment(experiment);
        json key_doc = config;
        key_doc["experiment"] = name;
        std::string key = nplab::canonical_cache_key(key_doc);

        nplab::ResultCache cache(cache_dir, !no_cache);
        std::string csv_text, json_text;
        bool pass = false, cached = false;
        if (auto hit = cache.get(key)) {
            csv_text = hit->at("csv").get<std::string>();
            json_text = hit->at("json").get<std::string>();
            pass = hit->at("pass").get<bool>();
            cached = true;
        } else {
            auto t0 = std::chrono::steady_clock::now();
            nplab::ResultTable rt = nplab::run_experiment(experiment, config);
            std::chrono::duration<double> dt =
                std::chrono::steady_clock::now() - t0;
            rt.sidecar["wall_time_s"] = dt.count();
            rt.sidecar["cache_key"] = key;
            csv_text = rt.csv();
            json_text = rt.sidecar.dump(2) + "\n";
            pass = rt.pass;
            cache.put(key,
                      {{"csv", csv_text}, {"json", json_text}, {"pass", pass}});
        }

        fs::create_directories(out_dir);
        fs::path csv_path = fs::path(out_dir) / (name + ".csv");
        fs::path json_path = fs::path(out_dir) / (name + ".json");
        write_file_atomic(csv_path, csv_text);
        write_file_atomic(json_path, json_text);

        for (const auto& w : cache.warnings())
            std::cerr << "warning: " << w << "\n";
        std::cout << name << ": " << (pass ? "PASS" : "FAIL")
                  << (cached ? " (cached)" : "") << "\n"
                  << "  " << csv_path.string() << "\n"
                  << "  " << json_path.string() << "\n";
        return pass ? 0 : 1;
    } catch (const nplab::ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
