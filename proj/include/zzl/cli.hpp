#ifndef ZZL_CLI_HPP
#define ZZL_CLI_HPP

#include "zzl/pipeline.hpp"

#include <cstdint>
#include <string>
#include <vector>

/**
 * Command implementations behind the command-line tool, kept free of
 * flag parsing so they can be driven in-process.
 *
 * Error contract: std::invalid_argument for bad parameters (usage),
 * io::data_error for malformed or mismatched file content, io::io_error
 * for unreadable/unwritable files.
 */
namespace zzl::cli {

/** "inf" (any case) or a finite real; rejects trailing junk. */
double parse_real_or_inf(const std::string& text);

struct GenerateArgs {
    std::string kind; // sine | sine-jump | selkov
    pipeline::SineParams sine;
    pipeline::SelkovParams selkov;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_generate(const GenerateArgs& a);

struct LandscapeArgs {
    std::string input;
    int channels = 1;
    bool time_column = false;
    pipeline::PipelineConfig cfg;
    std::string out;
};

void cmd_landscape(const LandscapeArgs& a);

/** Returns the L^p distance between the two landscape files. */
double cmd_distance(const std::string& file_a, const std::string& file_b, double p);

void cmd_mean(const std::vector<std::string>& inputs, const std::string& out);

/** Renders level k (1-based) of a landscape file; PGM when pgm is set. */
void cmd_plot(const std::string& input, int k, const std::string& out, bool pgm);

} // namespace zzl::cli

#endif
