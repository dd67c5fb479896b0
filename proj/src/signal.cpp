#include "zzl/signal.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace zzl::signal {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double uniform01(std::mt19937_64& rng)
{
    // 53 random mantissa bits; in [0, 1)
    return double(rng() >> 11) * 0x1.0p-53;
}

/** Box-Muller, consuming two uniforms per pair of normals. */
class GaussianDraw {
  public:
    explicit GaussianDraw(std::uint64_t seed) : rng_(seed) {}

    double operator()()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01(rng_);
        } while (u1 <= 0.0);
        double u2 = uniform01(rng_);
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

Eigen::Vector2d selkov_rhs(const Eigen::Vector2d& s, double a, double b)
{
    const double x = s(0);
    const double y = s(1);
    return {-x + a * y + x * x * y, b - a * y - x * x * y};
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64 finalizer over the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

TimeSeries gen_sine(double t0, double t1, double rate, double freq, double offset)
{
    if (!(t1 > t0) || !(rate > 0.0) || !(freq > 0.0))
        throw std::invalid_argument("gen_sine: need t1 > t0, rate > 0, freq > 0");
    const Eigen::Index n = Eigen::Index(std::llround((t1 - t0) * rate)) + 1;
    TimeSeries ts;
    ts.t0 = t0;
    ts.dt = 1.0 / rate;
    ts.samples.resize(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = t0 + double(i) / rate;
        ts.samples(i, 0) = std::sin(kTwoPi * freq * t) + offset;
    }
    return ts;
}

TimeSeries gen_sine_jump(double t0, double t1, double rate, double freq,
                         double offset_before, double offset_after)
{
    if (!(t0 < 0.0) || !(t1 > 0.0))
        throw std::invalid_argument("gen_sine_jump: need t0 < 0 < t1");
    TimeSeries ts = gen_sine(t0, t1, rate, freq, 0.0);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double t = t0 + double(i) / rate;
        ts.samples(i, 0) += (t < 0.0) ? offset_before : offset_after;
    }
    return ts;
}

TimeSeries gen_selkov(double a, double b, const Eigen::Vector2d& start,
                      double t_end, double dt)
{
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("gen_selkov: need dt > 0 and t_end > 0");
    const Eigen::Index steps = Eigen::Index(std::llround(t_end / dt));
    TimeSeries ts;
    ts.t0 = 0.0;
    ts.dt = dt;
    ts.samples.resize(steps + 1, 2);
    Eigen::Vector2d s = start;
    ts.samples.row(0) = s.transpose();
    for (Eigen::Index i = 0; i < steps; ++i) {
        const Eigen::Vector2d k1 = selkov_rhs(s, a, b);
        const Eigen::Vector2d k2 = selkov_rhs(s + 0.5 * dt * k1, a, b);
        const Eigen::Vector2d k3 = selkov_rhs(s + 0.5 * dt * k2, a, b);
        const Eigen::Vector2d k4 = selkov_rhs(s + dt * k3, a, b);
        s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ts.samples.row(i + 1) = s.transpose();
    }
    return ts;
}

TimeSeries add_awgn(TimeSeries ts, double snr_db, std::uint64_t seed)
{
    if (std::isinf(snr_db))
        return ts;
    GaussianDraw gauss(seed);
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    for (Eigen::Index c = 0; c < ts.channels(); ++c) {
        const double power = ts.samples.col(c).squaredNorm() / double(ts.size());
        const double sigma = std::sqrt(power / snr_linear);
        for (Eigen::Index i = 0; i < ts.size(); ++i)
            ts.samples(i, c) += sigma * gauss();
    }
    return ts;
}

PointCloud delay_embed(const TimeSeries& ts, int dim, int delay)
{
    if (ts.channels() != 1)
        throw std::invalid_argument("delay_embed: series must have one channel");
    if (dim < 1 || delay < 1)
        throw std::invalid_argument("delay_embed: need dim >= 1 and delay >= 1");
    const Eigen::Index n = ts.size() - Eigen::Index(dim - 1) * delay;
    if (n < 1)
        throw std::invalid_argument("delay_embed: series too short for embedding");
    PointCloud pc(n, dim);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d)
            pc(i, d) = ts.samples(i + Eigen::Index(d) * delay, 0);
    return pc;
}

WindowedClouds segment_windows(const PointCloud& pc, int t_windows)
{
    if (t_windows < 1 || Eigen::Index(t_windows) > pc.rows())
        throw std::invalid_argument("segment_windows: need 1 <= t_windows <= point count");
    const Eigen::Index base = pc.rows() / t_windows;
    const Eigen::Index rem = pc.rows() % t_windows;
    WindowedClouds out;
    out.reserve(t_windows);
    Eigen::Index at = 0;
    for (int w = 0; w < t_windows; ++w) {
        const Eigen::Index len = base + (Eigen::Index(w) < rem ? 1 : 0);
        out.push_back(pc.middleRows(at, len));
        at += len;
    }
    return out;
}

PointCloud kmeans_downsample(const PointCloud& pc, int m, std::uint64_t seed)
{
    if (pc.rows() == 0)
        throw std::invalid_argument("kmeans_downsample: empty point cloud");
    if (m < 1)
        throw std::invalid_argument("kmeans_downsample: need m >= 1");
    const Eigen::Index n = pc.rows();
    if (n <= Eigen::Index(m))
        return pc;

    std::mt19937_64 rng(seed);
    PointCloud centroids(m, pc.cols());

    // k-means++ seeding
    Eigen::VectorXd dist2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    centroids.row(0) = pc.row(Eigen::Index(rng() % std::uint64_t(n)));
    for (int k = 1; k < m; ++k) {
        dist2 = dist2.cwiseMin(
            (pc.rowwise() - centroids.row(k - 1)).rowwise().squaredNorm());
        const double total = dist2.sum();
        Eigen::Index chosen = 0;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double cum = 0.0;
            chosen = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                cum += dist2(i);
                if (cum > target) {
                    chosen = i;
                    break;
                }
            }
        }
        centroids.row(k) = pc.row(chosen);
    }

    // Lloyd iterations
    std::vector<Eigen::Index> assign(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            Eigen::Index best_k = 0;
            for (int k = 0; k < m; ++k) {
                const double d = (pc.row(i) - centroids.row(k)).squaredNorm();
                if (d < best) {
                    best = d;
                    best_k = k;
                }
            }
            assign[i] = best_k;
        }
        PointCloud sums = PointCloud::Zero(m, pc.cols());
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(m);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(assign[i]) += pc.row(i);
            counts(assign[i]) += 1.0;
        }
        double shift = 0.0;
        for (int k = 0; k < m; ++k) {
            if (counts(k) == 0.0)
                continue; // empty cluster keeps its centroid
            Eigen::RowVectorXd updated = sums.row(k) / counts(k);
            shift = std::max(shift, (updated - centroids.row(k)).norm());
            centroids.row(k) = updated;
        }
        if (shift < 1e-9)
            break;
    }
    return centroids;
}

} // namespace zzl::signal
