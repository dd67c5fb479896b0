#include "zzl/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

using namespace zzl;
using io::data_error;
using io::io_error;

namespace {

std::string tmp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("zzl_io_" + name)).string();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle)
{
    std::size_t n = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

landscape::Landscape sample_landscape()
{
    landscape::Landscape l;
    l.cols = 3;
    l.rows = 2;
    l.k_max = 2;
    l.hom_dim = 1;
    l.epsilons = {0.0, 0.75};
    l.values = {{{0, 1, 0}, {2, 3, 1}}, {{0, 0, 0}, {1, 0, 0}}};
    return l;
}

} // namespace

TEST_CASE("series CSV writes and reads back exactly")
{
    signal::TimeSeries ts;
    ts.samples.resize(4, 1);
    ts.samples << 0.1, -3.25, 1e-17, 3.141592653589793;
    const std::string path = tmp_path("roundtrip.csv");
    io::write_series_csv(path, ts);
    const signal::TimeSeries back = io::read_series_csv(path, 1);
    REQUIRE(back.size() == 4);
    REQUIRE(back.channels() == 1);
    for (int i = 0; i < 4; ++i) CHECK(back.samples(i, 0) == ts.samples(i, 0));
}

TEST_CASE("series CSV handles several channels and a time column")
{
    signal::TimeSeries ts;
    ts.samples.resize(2, 2);
    ts.samples << 1.5, 2.5, 3.5, 4.5;
    const std::string path = tmp_path("two_channel.csv");
    io::write_series_csv(path, ts);
    const signal::TimeSeries back = io::read_series_csv(path, 2);
    CHECK(back.samples == ts.samples);

    const std::string timed = tmp_path("timed.csv");
    io::write_text_file(timed, "0,1.5,2.5\r\n\n1,3.5,4.5\n");
    const signal::TimeSeries dropped = io::read_series_csv(timed, 2, true);
    CHECK(dropped.samples == ts.samples);
}

TEST_CASE("series CSV rejects bad shapes and content")
{
    const std::string path = tmp_path("bad.csv");
    io::write_text_file(path, "1.0,2.0\n");
    CHECK_THROWS_AS(io::read_series_csv(path, 1), data_error);   // too many columns
    CHECK_THROWS_AS(io::read_series_csv(path, 3), data_error);   // too few
    io::write_text_file(path, "1.0\nnope\n");
    CHECK_THROWS_AS(io::read_series_csv(path, 1), data_error);
    io::write_text_file(path, "\n  \n");
    CHECK_THROWS_AS(io::read_series_csv(path, 1), data_error);   // no samples
    CHECK_THROWS_AS(io::read_series_csv(tmp_path("does_not_exist.csv"), 1), io_error);
    CHECK_THROWS_AS(io::read_series_csv(path, 0), std::invalid_argument);
}

TEST_CASE("landscape JSON round-trips exactly and stays stable")
{
    const landscape::Landscape l = sample_landscape();
    const std::string text = io::landscape_to_json(l);
    const landscape::Landscape back = io::landscape_from_json(text);
    CHECK(back.cols == l.cols);
    CHECK(back.rows == l.rows);
    CHECK(back.k_max == l.k_max);
    CHECK(back.hom_dim == l.hom_dim);
    CHECK(back.epsilons == l.epsilons);
    CHECK(back.values == l.values);
    CHECK(io::landscape_to_json(back) == text); // serialize -> parse -> serialize is stable
}

TEST_CASE("landscape JSON field layout is pinned")
{
    landscape::Landscape l;
    l.cols = 1;
    l.rows = 1;
    l.k_max = 1;
    l.hom_dim = 0;
    l.epsilons = {0.0};
    l.values = {{{4}}};
    CHECK(io::landscape_to_json(l) ==
          "{\"t_windows\":1,\"cols\":1,\"rows\":1,\"k_max\":1,\"hom_dim\":0,"
          "\"epsilons\":[0.0],\"values\":[[[4]]]}\n");
}

TEST_CASE("mean landscape JSON keeps float cells exactly")
{
    landscape::MeanLandscape m;
    m.cols = 1;
    m.rows = 2;
    m.k_max = 1;
    m.hom_dim = 1;
    m.epsilons = {0.0, 1.0 / 3.0};
    m.values = {{{2.0 / 3.0}, {1.25}}};
    const std::string text = io::landscape_to_json(m);
    const landscape::MeanLandscape back = io::mean_landscape_from_json(text);
    CHECK(back.epsilons[1] == 1.0 / 3.0);
    CHECK(back.values[0][0][0] == 2.0 / 3.0);
    CHECK(back.values[0][1][0] == 1.25);

    // the float reader accepts integer-valued files as well
    const landscape::MeanLandscape as_mean =
        io::mean_landscape_from_json(io::landscape_to_json(sample_landscape()));
    CHECK(as_mean.values[0][1][1] == 3.0);
}

TEST_CASE("landscape JSON parsing rejects malformed content")
{
    const std::string good = io::landscape_to_json(sample_landscape());
    CHECK_THROWS_AS(io::landscape_from_json("{"), data_error);
    CHECK_THROWS_AS(io::landscape_from_json("{}"), data_error);

    auto broken = [&](const std::string& from, const std::string& to) {
        std::string t = good;
        const std::size_t at = t.find(from);
        REQUIRE(at != std::string::npos);
        t.replace(at, from.size(), to);
        return t;
    };
    // integer landscapes must hold non-negative integers
    CHECK_THROWS_AS(io::landscape_from_json(broken("[[0,1,0]", "[[0,1.5,0]")), data_error);
    CHECK_THROWS_AS(io::landscape_from_json(broken("[[0,1,0]", "[[0,-1,0]")), data_error);
    // header consistency
    CHECK_THROWS_AS(io::landscape_from_json(broken("\"t_windows\":2", "\"t_windows\":3")),
                    data_error);
    CHECK_THROWS_AS(io::landscape_from_json(broken("\"rows\":2", "\"rows\":3")), data_error);
    // row length must equal cols
    CHECK_THROWS_AS(io::landscape_from_json(broken("[1,0,0]", "[1,0]")), data_error);
    // the float reader still rejects negatives
    CHECK_THROWS_AS(io::mean_landscape_from_json(broken("[[0,1,0]", "[[0,-1,0]")), data_error);
}

TEST_CASE("SVG heatmap marks exactly the nonzero cells")
{
    const std::vector<double> eps = {0.0, 0.25};

    const std::string blank = io::render_svg_heatmap({{0, 0, 0}, {0, 0, 0}}, eps);
    CHECK(count_occurrences(blank, "class=\"bg\"") == 1);
    CHECK(count_occurrences(blank, "class=\"cell\"") == 0);
    CHECK(count_occurrences(blank, "class=\"sw\"") == 0);
    CHECK(count_occurrences(blank, "<line ") == 2);
    CHECK(blank.find("0.25") != std::string::npos); // scale legend present

    const std::string one = io::render_svg_heatmap({{0, 0, 3}, {0, 0, 0}}, eps);
    CHECK(count_occurrences(one, "class=\"cell\"") == 1);
    // col 2, row 0 of 2 rows: x = 72 + 2*24, y = 20 + (2-1-0)*18, full-scale color
    CHECK(one.find("<rect class=\"cell\" x=\"120\" y=\"38\" width=\"24\" height=\"18\" "
                   "fill=\"#00441b\"/>") != std::string::npos);
    CHECK(count_occurrences(one, "class=\"sw\"") == 12);

    CHECK(io::render_svg_heatmap({{0, 0, 3}, {0, 0, 0}}, eps) == one); // deterministic
}

TEST_CASE("PGM heatmap is pixel-exact with the largest scale on top")
{
    CHECK(io::render_pgm_heatmap({{0, 2}, {1, 0}}) == "P2\n2 2\n255\n128 255\n255 0\n");
    CHECK(io::render_pgm_heatmap({{0, 0}}) == "P2\n2 1\n255\n255 255\n");
}

TEST_CASE("heatmap renderers validate their input")
{
    CHECK_THROWS_AS(io::render_pgm_heatmap({}), std::invalid_argument);
    CHECK_THROWS_AS(io::render_pgm_heatmap({{1.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(io::render_pgm_heatmap({{-1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(io::render_svg_heatmap({{1.0}}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("text file helpers report the failing path")
{
    CHECK_THROWS_AS(io::read_text_file("/nonexistent/dir/x.txt"), io_error);
    CHECK_THROWS_AS(io::write_text_file("/nonexistent/dir/x.txt", "y"), io_error);
}
