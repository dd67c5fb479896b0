#include "zzl/cli.hpp"

#include "zzl/io.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace zzl::cli {

double parse_real_or_inf(const std::string& text)
{
    std::string lower;
    for (char c : text) lower += char(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "inf" || lower == "infinity")
        return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

void cmd_generate(const GenerateArgs& a)
{
    signal::TimeSeries ts;
    if (a.kind == "sine")
        ts = pipeline::make_sine(a.sine);
    else if (a.kind == "sine-jump")
        ts = pipeline::make_sine_jump(a.sine);
    else if (a.kind == "selkov")
        ts = pipeline::make_selkov(a.selkov);
    else
        throw std::invalid_argument("unknown kind '" + a.kind +
                                    "' (expected sine, sine-jump, or selkov)");
    ts = signal::add_awgn(std::move(ts), a.snr_db, a.seed);
    io::write_series_csv(a.out, ts);
}

void cmd_landscape(const LandscapeArgs& a)
{
    pipeline::validate_config(a.cfg); // bad parameters stay usage errors
    const signal::TimeSeries ts = io::read_series_csv(a.input, a.channels, a.time_column);
    landscape::Landscape l;
    try {
        l = pipeline::run_pipeline(ts, a.cfg);
    } catch (const std::invalid_argument& e) {
        // the config is fine on its own, so the data cannot support it
        // (e.g. a series too short to embed)
        throw io::data_error(e.what());
    }
    io::write_text_file(a.out, io::landscape_to_json(l));
}

double cmd_distance(const std::string& file_a, const std::string& file_b, double p)
{
    if (!(p >= 1.0)) throw std::invalid_argument("distance: need p >= 1 (or inf)");
    const landscape::MeanLandscape a =
        io::mean_landscape_from_json(io::read_text_file(file_a));
    const landscape::MeanLandscape b =
        io::mean_landscape_from_json(io::read_text_file(file_b));
    try {
        return landscape::distance_p(a, b, p);
    } catch (const std::invalid_argument& e) {
        throw io::data_error(e.what());
    }
}

void cmd_mean(const std::vector<std::string>& inputs, const std::string& out)
{
    if (inputs.empty()) throw std::invalid_argument("mean: need at least one input");
    std::vector<landscape::Landscape> ls;
    for (const auto& path : inputs)
        ls.push_back(io::landscape_from_json(io::read_text_file(path)));
    landscape::MeanLandscape m;
    try {
        m = landscape::mean_landscape(ls);
    } catch (const std::invalid_argument& e) {
        throw io::data_error(e.what());
    }
    io::write_text_file(out, io::landscape_to_json(m));
}

void cmd_plot(const std::string& input, int k, const std::string& out, bool pgm)
{
    if (k < 1) throw std::invalid_argument("plot: need k >= 1");
    const landscape::MeanLandscape l = io::mean_landscape_from_json(io::read_text_file(input));
    if (k > l.k_max)
        throw io::data_error("plot: k = " + std::to_string(k) + " exceeds the file's k_max = " +
                             std::to_string(l.k_max));
    const auto& cells = l.values[std::size_t(k - 1)];
    io::write_text_file(out, pgm ? io::render_pgm_heatmap(cells)
                                 : io::render_svg_heatmap(cells, l.epsilons));
}

} // namespace zzl::cli
