#ifndef ZZL_PIPELINE_HPP
#define ZZL_PIPELINE_HPP

#include "zzl/landscape.hpp"
#include "zzl/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

/**
 * The end-to-end pipeline: time series -> delay embedding -> windowed
 * point clouds -> bifiltration grid -> landscape, plus the canonical
 * synthetic series the experiments run on.
 */
namespace zzl::pipeline {

/** Either an explicit ascending scale list or "pick n automatically". */
struct EpsilonSpec {
    std::vector<double> values; // used when non-empty
    int auto_count = 0;         // otherwise: auto-spaced count
};

/** Parses "0.1,0.2,0.5" or "auto:12". Throws std::invalid_argument. */
EpsilonSpec parse_epsilon_spec(const std::string& text);

struct PipelineConfig {
    int t_windows = 1;
    int points_per_window = 40;
    int embed_dim = 2;
    int delay = 1;
    EpsilonSpec epsilons{{}, 12};
    int hom_dim = 1;
    int k_max = 2;
    std::uint64_t seed = 0;
    int threads = 1;
};

/** Throws std::invalid_argument when any count or the scale spec is bad. */
void validate_config(const PipelineConfig& cfg);

/**
 * Delay-embeds every channel (coordinates concatenated), splits the
 * point sequence into t_windows contiguous blocks, k-means-downsamples
 * each block to points_per_window points with a per-window seed derived
 * from cfg.seed, and drops exact duplicate points within a window.
 */
signal::WindowedClouds prepare_clouds(const signal::TimeSeries& ts,
                                      const PipelineConfig& cfg);

/**
 * n scales linearly spaced from 0 to half the diameter of the union of
 * all clouds.  A degenerate (single-point) union falls back to unit
 * steps 0, 1, ..., n-1; any scale then yields the same complexes.
 */
std::vector<double> auto_epsilons(const signal::WindowedClouds& clouds, int n);

/** The scales a config resolves to for the given clouds. */
std::vector<double> resolve_epsilons(const EpsilonSpec& spec,
                                     const signal::WindowedClouds& clouds);

/** Full run: prepare clouds, resolve scales, build the grid, landscape. */
landscape::Landscape run_pipeline(const signal::TimeSeries& ts, const PipelineConfig& cfg);

/**
 * Canonical sine family: sampled on [t0, t1] at `rate` samples per unit
 * time, unit amplitude, frequency `freq`.  The jump variant switches the
 * additive offset at t = 0 (halfway through the series).
 */
struct SineParams {
    double t0 = -250.0;
    double t1 = 250.0;
    double rate = 2.5;
    double freq = 0.1;
    double offset = 0.0;        // plain variant
    double offset_before = -2.0; // jump variant
    double offset_after = 2.0;
};

signal::TimeSeries make_sine(const SineParams& p = {});
signal::TimeSeries make_sine_jump(const SineParams& p = {});

/**
 * Canonical two-species oscillator sweep: one trajectory per parameter
 * b in b_min, b_min+b_step, ..., b_max, each integrated to t_end with
 * the transient before drop_before discarded, x coordinates only,
 * concatenated into one univariate series of equal-length segments.
 */
struct SelkovParams {
    double a = 0.1;
    double b_min = 0.35;
    double b_max = 0.9;
    double b_step = 0.05;
    double x0 = 1.0;
    double y0 = 1.0;
    double dt = 0.02;
    double t_end = 500.0;
    double drop_before = 250.0;
};

int selkov_segment_count(const SelkovParams& p = {});
signal::TimeSeries make_selkov(const SelkovParams& p = {});

} // namespace zzl::pipeline

#endif
