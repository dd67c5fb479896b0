#ifndef ZZL_IO_HPP
#define ZZL_IO_HPP

#include "zzl/landscape.hpp"
#include "zzl/signal.hpp"

#include <stdexcept>
#include <string>
#include <vector>

/**
 * File formats: CSV series, the JSON landscape schema, and heatmap
 * renderers (SVG, plus ASCII PGM for pixel-exact comparisons).
 *
 * Everything here is deterministic: the same in-memory object always
 * serializes to the same bytes, and write-then-read is the identity.
 */
namespace zzl::io {

/** A file that cannot be opened, read, or written. */
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A file that opens fine but holds malformed or mismatched content. */
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/**
 * Reads a header-free CSV with `channels` comma-separated numbers per
 * row (one sample per row) into a unit-step series (t0 = 0, dt = 1).
 * Blank lines are skipped.  When drop_time_column is set the first
 * column is treated as a timestamp and discarded, so rows must carry
 * channels + 1 numbers.
 */
signal::TimeSeries read_series_csv(const std::string& path, int channels = 1,
                                   bool drop_time_column = false);

/** One row per sample, channels comma-separated, %.17g (round-trip safe). */
void write_series_csv(const std::string& path, const signal::TimeSeries& ts);

/** Serializes to the interchange schema; integer cell values. */
std::string landscape_to_json(const landscape::Landscape& l);
/** Same schema with float cell values (pointwise means). */
std::string landscape_to_json(const landscape::MeanLandscape& l);

landscape::Landscape landscape_from_json(const std::string& text);
/** Accepts integer or float cell values, so it can load either flavor. */
landscape::MeanLandscape mean_landscape_from_json(const std::string& text);

/**
 * SVG heatmap of one landscape level.  cells is indexed [row][col] with
 * row 0 the smallest scale; the image puts columns left to right and
 * scales bottom to top.  Zero cells show the shared background; nonzero
 * cells get a linear light-to-dark ramp topped at the maximum value.
 * Row labels carry the epsilon legend.  Output text is deterministic.
 */
std::string render_svg_heatmap(const std::vector<std::vector<double>>& cells,
                               const std::vector<double>& epsilons);

/**
 * P2 (ASCII) graymap of the same cells: width = columns, height = rows,
 * top image row = largest scale, 255 = zero cells, 0 = maximum value.
 */
std::string render_pgm_heatmap(const std::vector<std::vector<double>>& cells);

} // namespace zzl::io

#endif
