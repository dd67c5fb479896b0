#include "zzl/cli.hpp"
#include "zzl/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <map>
#include <thread>

namespace {

int default_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/** One value slot a config file may fill; flags always win. */
using Setters = std::map<std::string, std::function<void(const std::string&)>>;

long long to_int(const std::string& v)
{
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: not an integer: '" + v + "'");
    }
    if (used != v.size()) throw std::invalid_argument("config: not an integer: '" + v + "'");
    return out;
}

bool to_bool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: not a boolean: '" + v + "'");
}

std::string trimmed(const std::string& s)
{
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/**
 * Applies a key=value config file to a subcommand.  A key is skipped
 * when its flag was given on the command line, so flags take
 * precedence.  '#' starts a comment; unknown keys are errors.
 */
void apply_config(const CLI::App& sub, const std::string& path, const Setters& setters)
{
    const std::string text = zzl::io::read_text_file(path);
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trimmed(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        const std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        if (sub.count("--" + key) > 0) continue; // the flag wins
        it->second(value);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sliding-window topology: zigzag landscapes over window/scale grids"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------
    zzl::cli::GenerateArgs gen;
    std::string gen_snr = "inf";
    std::string gen_config;
    CLI::App* g = app.add_subcommand("generate", "Synthesize a benchmark series as CSV");
    g->add_option("--config", gen_config, "key=value file; command-line flags win");
    g->add_option("kind", gen.kind, "sine | sine-jump | selkov")->required();
    g->add_option("--snr", gen_snr, "additive noise SNR in dB ('inf' = noiseless)");
    g->add_option("--seed", gen.seed, "noise seed");
    g->add_option("--out", gen.out, "output CSV path");
    g->add_option("--t0", gen.sine.t0, "sine start time");
    g->add_option("--t1", gen.sine.t1, "sine end time");
    g->add_option("--rate", gen.sine.rate, "sine samples per unit time");
    g->add_option("--freq", gen.sine.freq, "sine frequency");
    g->add_option("--offset", gen.sine.offset, "sine additive offset");
    g->add_option("--offset-before", gen.sine.offset_before, "jump offset for t < 0");
    g->add_option("--offset-after", gen.sine.offset_after, "jump offset for t >= 0");
    g->add_option("--a", gen.selkov.a, "oscillator parameter a");
    g->add_option("--b-min", gen.selkov.b_min, "first b value");
    g->add_option("--b-max", gen.selkov.b_max, "last b value");
    g->add_option("--b-step", gen.selkov.b_step, "b grid step");
    g->add_option("--x0", gen.selkov.x0, "initial x");
    g->add_option("--y0", gen.selkov.y0, "initial y");
    g->add_option("--dt", gen.selkov.dt, "integrator step");
    g->add_option("--t-end", gen.selkov.t_end, "integration end time");
    g->add_option("--drop-before", gen.selkov.drop_before, "discard samples before this time");
    const Setters gen_setters = {
        {"snr", [&](const std::string& v) { gen_snr = v; }},
        {"seed", [&](const std::string& v) { gen.seed = std::uint64_t(to_int(v)); }},
        {"out", [&](const std::string& v) { gen.out = v; }},
        {"t0", [&](const std::string& v) { gen.sine.t0 = zzl::cli::parse_real_or_inf(v); }},
        {"t1", [&](const std::string& v) { gen.sine.t1 = zzl::cli::parse_real_or_inf(v); }},
        {"rate", [&](const std::string& v) { gen.sine.rate = zzl::cli::parse_real_or_inf(v); }},
        {"freq", [&](const std::string& v) { gen.sine.freq = zzl::cli::parse_real_or_inf(v); }},
        {"offset",
         [&](const std::string& v) { gen.sine.offset = zzl::cli::parse_real_or_inf(v); }},
        {"offset-before",
         [&](const std::string& v) { gen.sine.offset_before = zzl::cli::parse_real_or_inf(v); }},
        {"offset-after",
         [&](const std::string& v) { gen.sine.offset_after = zzl::cli::parse_real_or_inf(v); }},
        {"a", [&](const std::string& v) { gen.selkov.a = zzl::cli::parse_real_or_inf(v); }},
        {"b-min",
         [&](const std::string& v) { gen.selkov.b_min = zzl::cli::parse_real_or_inf(v); }},
        {"b-max",
         [&](const std::string& v) { gen.selkov.b_max = zzl::cli::parse_real_or_inf(v); }},
        {"b-step",
         [&](const std::string& v) { gen.selkov.b_step = zzl::cli::parse_real_or_inf(v); }},
        {"x0", [&](const std::string& v) { gen.selkov.x0 = zzl::cli::parse_real_or_inf(v); }},
        {"y0", [&](const std::string& v) { gen.selkov.y0 = zzl::cli::parse_real_or_inf(v); }},
        {"dt", [&](const std::string& v) { gen.selkov.dt = zzl::cli::parse_real_or_inf(v); }},
        {"t-end",
         [&](const std::string& v) { gen.selkov.t_end = zzl::cli::parse_real_or_inf(v); }},
        {"drop-before",
         [&](const std::string& v) { gen.selkov.drop_before = zzl::cli::parse_real_or_inf(v); }},
    };
    g->callback([&] {
        if (!gen_config.empty()) apply_config(*g, gen_config, gen_setters);
        if (gen.out.empty()) throw std::invalid_argument("generate: --out is required");
        gen.snr_db = zzl::cli::parse_real_or_inf(gen_snr);
        zzl::cli::cmd_generate(gen);
    });

    // ---- landscape ----------------------------------------------------
    zzl::cli::LandscapeArgs land;
    std::string land_eps = "auto:12";
    std::string land_config;
    land.cfg.threads = default_threads();
    CLI::App* l = app.add_subcommand("landscape", "Run the full pipeline: CSV in, JSON out");
    l->add_option("--config", land_config, "key=value file; command-line flags win");
    l->add_option("input", land.input, "input series CSV")->required();
    l->add_option("--out", land.out, "output landscape JSON");
    l->add_option("--windows", land.cfg.t_windows, "number of time windows");
    l->add_option("--points-per-window", land.cfg.points_per_window,
                  "cloud size after downsampling");
    l->add_option("--embed-dim", land.cfg.embed_dim, "delay embedding dimension");
    l->add_option("--delay", land.cfg.delay, "embedding delay in samples");
    l->add_option("--epsilons", land_eps, "comma-separated ascending scales, or auto:N");
    l->add_option("--hom-dim", land.cfg.hom_dim, "homology degree");
    l->add_option("--k-max", land.cfg.k_max, "landscape levels to compute");
    l->add_option("--seed", land.cfg.seed, "downsampling seed");
    l->add_option("--threads", land.cfg.threads, "worker threads");
    l->add_option("--channels", land.channels, "value columns per CSV row");
    l->add_flag("--time-col", land.time_column, "treat the first CSV column as time, drop it");
    const Setters land_setters = {
        {"out", [&](const std::string& v) { land.out = v; }},
        {"windows", [&](const std::string& v) { land.cfg.t_windows = int(to_int(v)); }},
        {"points-per-window",
         [&](const std::string& v) { land.cfg.points_per_window = int(to_int(v)); }},
        {"embed-dim", [&](const std::string& v) { land.cfg.embed_dim = int(to_int(v)); }},
        {"delay", [&](const std::string& v) { land.cfg.delay = int(to_int(v)); }},
        {"epsilons", [&](const std::string& v) { land_eps = v; }},
        {"hom-dim", [&](const std::string& v) { land.cfg.hom_dim = int(to_int(v)); }},
        {"k-max", [&](const std::string& v) { land.cfg.k_max = int(to_int(v)); }},
        {"seed", [&](const std::string& v) { land.cfg.seed = std::uint64_t(to_int(v)); }},
        {"threads", [&](const std::string& v) { land.cfg.threads = int(to_int(v)); }},
        {"channels", [&](const std::string& v) { land.channels = int(to_int(v)); }},
        {"time-col", [&](const std::string& v) { land.time_column = to_bool(v); }},
    };
    l->callback([&] {
        if (!land_config.empty()) apply_config(*l, land_config, land_setters);
        if (land.out.empty()) throw std::invalid_argument("landscape: --out is required");
        land.cfg.epsilons = zzl::pipeline::parse_epsilon_spec(land_eps);
        zzl::cli::cmd_landscape(land);
    });

    // ---- distance -----------------------------------------------------
    std::string dist_a, dist_b, dist_p = "2";
    CLI::App* d = app.add_subcommand("distance", "L^p distance between two landscape files");
    d->add_option("a", dist_a, "first landscape JSON")->required();
    d->add_option("b", dist_b, "second landscape JSON")->required();
    d->add_option("--p", dist_p, "norm order: a real >= 1, or 'inf'");
    d->callback([&] {
        const double v =
            zzl::cli::cmd_distance(dist_a, dist_b, zzl::cli::parse_real_or_inf(dist_p));
        std::printf("%.6f\n", v);
    });

    // ---- mean ---------------------------------------------------------
    std::vector<std::string> mean_inputs;
    std::string mean_out;
    CLI::App* m = app.add_subcommand("mean", "Pointwise mean of landscape files");
    m->add_option("inputs", mean_inputs, "landscape JSON files")->required()->expected(-1);
    m->add_option("--out", mean_out, "output mean-landscape JSON")->required();
    m->callback([&] { zzl::cli::cmd_mean(mean_inputs, mean_out); });

    // ---- plot -----------------------------------------------------------
    std::string plot_in, plot_out;
    int plot_k = 1;
    bool plot_pgm = false;
    CLI::App* p = app.add_subcommand("plot", "Heatmap of one landscape level");
    p->add_option("input", plot_in, "landscape JSON")->required();
    p->add_option("--k", plot_k, "level to draw (1-based)");
    p->add_option("--out", plot_out, "output image path")->required();
    p->add_flag("--pgm", plot_pgm, "emit ASCII PGM instead of SVG");
    p->callback([&] { zzl::cli::cmd_plot(plot_in, plot_k, plot_out, plot_pgm); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const zzl::io::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const zzl::io::data_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
