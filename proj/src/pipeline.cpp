#include "zzl/pipeline.hpp"

#include "zzl/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace zzl::pipeline {

EpsilonSpec parse_epsilon_spec(const std::string& text)
{
    EpsilonSpec spec;
    if (text.rfind("auto:", 0) == 0) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(text.substr(5), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("epsilons: bad count in '" + text + "'");
        }
        if (used != text.size() - 5 || n < 1)
            throw std::invalid_argument("epsilons: bad count in '" + text + "'");
        spec.auto_count = n;
        return spec;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string field = text.substr(pos, comma - pos);
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0')
            throw std::invalid_argument("epsilons: not a number: '" + field + "'");
        if (!spec.values.empty() && v <= spec.values.back())
            throw std::invalid_argument("epsilons: values must be strictly ascending");
        spec.values.push_back(v);
        pos = comma + 1;
    }
    if (spec.values.empty() || spec.values.front() < 0.0)
        throw std::invalid_argument("epsilons: need non-negative ascending values");
    return spec;
}

void validate_config(const PipelineConfig& cfg)
{
    if (cfg.t_windows < 1 || cfg.points_per_window < 1 || cfg.embed_dim < 1 ||
        cfg.delay < 1 || cfg.hom_dim < 0 || cfg.k_max < 1 || cfg.threads < 1)
        throw std::invalid_argument("pipeline: all counts must be positive");
    if (cfg.epsilons.values.empty() && cfg.epsilons.auto_count < 1)
        throw std::invalid_argument("pipeline: empty epsilon spec");
}

namespace {

signal::PointCloud dedup_rows(const signal::PointCloud& pc)
{
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < pc.rows(); ++i) {
        bool dup = false;
        for (Eigen::Index j : keep)
            if (pc.row(i) == pc.row(j)) {
                dup = true;
                break;
            }
        if (!dup) keep.push_back(i);
    }
    if (Eigen::Index(keep.size()) == pc.rows()) return pc;
    signal::PointCloud out(Eigen::Index(keep.size()), pc.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) out.row(Eigen::Index(r)) = pc.row(keep[r]);
    return out;
}

} // namespace

signal::WindowedClouds prepare_clouds(const signal::TimeSeries& ts, const PipelineConfig& cfg)
{
    validate_config(cfg);
    if (ts.channels() < 1) throw std::invalid_argument("pipeline: series has no channels");

    signal::PointCloud embedded;
    for (Eigen::Index c = 0; c < ts.channels(); ++c) {
        signal::TimeSeries ch;
        ch.t0 = ts.t0;
        ch.dt = ts.dt;
        ch.samples = ts.samples.col(c);
        signal::PointCloud part = signal::delay_embed(ch, cfg.embed_dim, cfg.delay);
        if (c == 0) {
            embedded.resize(part.rows(), ts.channels() * cfg.embed_dim);
        }
        embedded.block(0, c * cfg.embed_dim, part.rows(), cfg.embed_dim) = part;
    }

    signal::WindowedClouds clouds = signal::segment_windows(embedded, cfg.t_windows);
    for (std::size_t w = 0; w < clouds.size(); ++w) {
        clouds[w] = signal::kmeans_downsample(clouds[w], cfg.points_per_window,
                                              signal::mix_seed(cfg.seed, w));
        clouds[w] = dedup_rows(clouds[w]);
    }
    return clouds;
}

std::vector<double> auto_epsilons(const signal::WindowedClouds& clouds, int n)
{
    if (n < 1) throw std::invalid_argument("auto_epsilons: need n >= 1");
    Eigen::Index total = 0, dim = -1;
    for (const auto& c : clouds) {
        total += c.rows();
        if (dim < 0) dim = c.cols();
        if (c.cols() != dim) throw std::invalid_argument("auto_epsilons: mixed dimensions");
    }
    signal::PointCloud all(total, std::max<Eigen::Index>(dim, 0));
    Eigen::Index at = 0;
    for (const auto& c : clouds) {
        all.middleRows(at, c.rows()) = c;
        at += c.rows();
    }
    double diam2 = 0.0;
    for (Eigen::Index i = 0; i < all.rows(); ++i)
        for (Eigen::Index j = i + 1; j < all.rows(); ++j)
            diam2 = std::max(diam2, (all.row(i) - all.row(j)).squaredNorm());

    std::vector<double> eps(static_cast<std::size_t>(n));
    if (diam2 == 0.0) {
        for (int i = 0; i < n; ++i) eps[std::size_t(i)] = i; // no pair exists at any scale
        return eps;
    }
    const double top = std::sqrt(diam2) / 2.0;
    for (int i = 0; i < n; ++i)
        eps[std::size_t(i)] = n == 1 ? 0.0 : top * double(i) / double(n - 1);
    return eps;
}

std::vector<double> resolve_epsilons(const EpsilonSpec& spec,
                                     const signal::WindowedClouds& clouds)
{
    if (!spec.values.empty()) return spec.values;
    return auto_epsilons(clouds, spec.auto_count);
}

landscape::Landscape run_pipeline(const signal::TimeSeries& ts, const PipelineConfig& cfg)
{
    const signal::WindowedClouds clouds = prepare_clouds(ts, cfg);
    const std::vector<double> eps = resolve_epsilons(cfg.epsilons, clouds);
    const grid::BifiltrationGrid g = grid::build_grid(clouds, eps, cfg.hom_dim, cfg.threads);
    return landscape::compute_landscape(g, cfg.k_max, eps, cfg.hom_dim, cfg.threads);
}

signal::TimeSeries make_sine(const SineParams& p)
{
    return signal::gen_sine(p.t0, p.t1, p.rate, p.freq, p.offset);
}

signal::TimeSeries make_sine_jump(const SineParams& p)
{
    return signal::gen_sine_jump(p.t0, p.t1, p.rate, p.freq, p.offset_before, p.offset_after);
}

int selkov_segment_count(const SelkovParams& p)
{
    if (p.b_step <= 0.0 || p.b_max < p.b_min)
        throw std::invalid_argument("selkov: need b_step > 0 and b_max >= b_min");
    return int(std::floor((p.b_max - p.b_min) / p.b_step + 0.5)) + 1;
}

signal::TimeSeries make_selkov(const SelkovParams& p)
{
    const int segments = selkov_segment_count(p);
    if (p.dt <= 0.0 || p.t_end <= p.drop_before || p.drop_before < 0.0)
        throw std::invalid_argument("selkov: need dt > 0 and t_end > drop_before >= 0");

    signal::TimeSeries out;
    out.t0 = 0.0;
    out.dt = p.dt;
    std::vector<double> xs;
    for (int s = 0; s < segments; ++s) {
        const double b = p.b_min + s * p.b_step;
        const signal::TimeSeries traj =
            signal::gen_selkov(p.a, b, Eigen::Vector2d(p.x0, p.y0), p.t_end, p.dt);
        for (Eigen::Index i = 0; i < traj.size(); ++i)
            if (i * p.dt >= p.drop_before) xs.push_back(traj.samples(i, 0));
    }
    out.samples.resize(Eigen::Index(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) out.samples(Eigen::Index(i), 0) = xs[i];
    return out;
}

} // namespace zzl::pipeline
