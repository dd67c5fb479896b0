#ifndef ZZL_SIGNAL_HPP
#define ZZL_SIGNAL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

/**
 * Signal generation and point-cloud preparation.
 *
 * Everything here is deterministic given its seed: random draws use a
 * fixed engine (std::mt19937_64) and hand-rolled uniform/Gaussian
 * transforms so results do not depend on the standard library build.
 */
namespace zzl::signal {

/** Uniformly sampled multichannel series; samples(i, c) is channel c at t0 + i*dt. */
struct TimeSeries {
    double t0 = 0.0;
    double dt = 1.0;
    Eigen::MatrixXd samples;

    Eigen::Index size() const { return samples.rows(); }
    Eigen::Index channels() const { return samples.cols(); }
};

/** Rows are points. */
using PointCloud = Eigen::MatrixXd;

/** Consecutive per-window clouds, in time order. */
using WindowedClouds = std::vector<PointCloud>;

/**
 * Sine sampled on the closed interval [t0, t1] at `rate` samples per
 * second: sin(2 pi freq t) + offset, with round((t1-t0)*rate) + 1 samples.
 */
TimeSeries gen_sine(double t0, double t1, double rate, double freq, double offset = 0.0);

/** Sine whose additive offset switches at t = 0 (requires t0 < 0 < t1). */
TimeSeries gen_sine_jump(double t0, double t1, double rate, double freq,
                         double offset_before, double offset_after);

/**
 * Two-species oscillator
 *     x' = -x + a y + x^2 y
 *     y' =  b - a y - x^2 y
 * integrated with classical fourth-order Runge-Kutta at fixed step dt
 * from t = 0 to t_end.  Returns a two-channel series (x, y).
 */
TimeSeries gen_selkov(double a, double b, const Eigen::Vector2d& start,
                      double t_end, double dt);

/**
 * Adds white Gaussian noise so each channel reaches the given
 * signal-to-noise ratio in dB (signal power measured as the mean square).
 * snr_db = +infinity returns the input unchanged.
 */
TimeSeries add_awgn(TimeSeries ts, double snr_db, std::uint64_t seed);

/**
 * Sliding-window delay embedding of a single-channel series: point i is
 * (x_i, x_{i+delay}, ..., x_{i+(dim-1)*delay}).
 */
PointCloud delay_embed(const TimeSeries& ts, int dim, int delay);

/**
 * Splits the rows into t_windows contiguous blocks whose sizes differ by
 * at most one; earlier blocks take the remainder.
 */
WindowedClouds segment_windows(const PointCloud& pc, int t_windows);

/**
 * Downsamples to m points with seeded k-means++ initialization followed
 * by Lloyd iterations (until the largest centroid shift drops below 1e-9,
 * or 100 iterations).  Returns the input unchanged when it already has at
 * most m points.  Assignment ties go to the lowest centroid index.
 */
PointCloud kmeans_downsample(const PointCloud& pc, int m, std::uint64_t seed);

/** Splits one stream seed into independent per-task seeds. */
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace zzl::signal

#endif
