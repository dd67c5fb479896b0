#include "zzl/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zzl::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw io_error("read failed: " + path);
    return std::move(out).str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

signal::TimeSeries read_series_csv(const std::string& path, int channels,
                                   bool drop_time_column)
{
    if (channels < 1) throw std::invalid_argument("read_series_csv: channels must be >= 1");
    const std::string text = read_text_file(path);
    const int want = channels + (drop_time_column ? 1 : 0);

    std::vector<double> flat;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        int got = 0;
        std::size_t field_start = 0;
        while (true) {
            std::size_t comma = line.find(',', field_start);
            std::string field = line.substr(field_start, comma == std::string::npos
                                                             ? std::string::npos
                                                             : comma - field_start);
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            while (end && *end == ' ') ++end;
            if (end == field.c_str() || (end && *end != '\0'))
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": not a number: '" + field + "'");
            ++got;
            if (got > want)
                throw data_error(path + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(want) + " columns");
            if (!(drop_time_column && got == 1)) flat.push_back(v);
            if (comma == std::string::npos) break;
            field_start = comma + 1;
        }
        if (got != want)
            throw data_error(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(want) + " columns, found " + std::to_string(got));
    }
    if (flat.empty()) throw data_error(path + ": no samples");

    signal::TimeSeries ts;
    const Eigen::Index n = Eigen::Index(flat.size()) / channels;
    ts.samples.resize(n, channels);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < channels; ++c)
            ts.samples(i, c) = flat[std::size_t(i * channels + c)];
    return ts;
}

void write_series_csv(const std::string& path, const signal::TimeSeries& ts)
{
    std::string out;
    out.reserve(std::size_t(ts.size()) * 20);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        for (Eigen::Index c = 0; c < ts.channels(); ++c) {
            if (c) out += ',';
            out += fmt("%.17g", ts.samples(i, c));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

namespace {

template <typename Cell>
ordered_json schema_json(f2::Index cols, f2::Index rows, f2::Index k_max, int hom_dim,
                         const std::vector<double>& epsilons,
                         const std::vector<std::vector<std::vector<Cell>>>& values)
{
    ordered_json j;
    j["t_windows"] = (cols + 1) / 2;
    j["cols"] = cols;
    j["rows"] = rows;
    j["k_max"] = k_max;
    j["hom_dim"] = hom_dim;
    j["epsilons"] = epsilons;
    j["values"] = values;
    return j;
}

ordered_json parse(const std::string& text)
{
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw data_error("landscape JSON: parse error");
    return j;
}

long long get_int(const ordered_json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer())
        throw data_error(std::string("landscape JSON: missing integer field '") + key + "'");
    return j[key].get<long long>();
}

/** Shared shape checks; fills everything but the cell values. */
template <typename L>
const ordered_json& load_header(const ordered_json& j, L& l)
{
    l.cols = get_int(j, "cols");
    l.rows = get_int(j, "rows");
    l.k_max = get_int(j, "k_max");
    l.hom_dim = int(get_int(j, "hom_dim"));
    const long long tw = get_int(j, "t_windows");
    if (l.cols < 1 || l.cols % 2 == 0 || tw != (l.cols + 1) / 2 || l.rows < 1 || l.k_max < 1 ||
        l.hom_dim < 0)
        throw data_error("landscape JSON: inconsistent header");
    if (!j.contains("epsilons") || !j["epsilons"].is_array() ||
        j["epsilons"].size() != std::size_t(l.rows))
        throw data_error("landscape JSON: epsilons must list one scale per row");
    l.epsilons.clear();
    for (const auto& e : j["epsilons"]) {
        if (!e.is_number()) throw data_error("landscape JSON: epsilon is not a number");
        l.epsilons.push_back(e.get<double>());
    }
    if (!j.contains("values") || !j["values"].is_array() ||
        j["values"].size() != std::size_t(l.k_max))
        throw data_error("landscape JSON: values must have k_max layers");
    return j["values"];
}

template <typename L, typename Get>
L load(const std::string& text, Get get_cell)
{
    L l;
    const ordered_json doc = parse(text);
    const ordered_json& layers = load_header(doc, l);
    l.values.assign(std::size_t(l.k_max), {});
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& layer = layers[k];
        if (!layer.is_array() || layer.size() != std::size_t(l.rows))
            throw data_error("landscape JSON: layer must have one row per scale");
        l.values[k].assign(std::size_t(l.rows), {});
        for (std::size_t r = 0; r < layer.size(); ++r) {
            const auto& row = layer[r];
            if (!row.is_array() || row.size() != std::size_t(l.cols))
                throw data_error("landscape JSON: row length must equal cols");
            for (const auto& cell : row) l.values[k][r].push_back(get_cell(cell));
        }
    }
    return l;
}

} // namespace

std::string landscape_to_json(const landscape::Landscape& l)
{
    return schema_json(l.cols, l.rows, l.k_max, l.hom_dim, l.epsilons, l.values).dump() + "\n";
}

std::string landscape_to_json(const landscape::MeanLandscape& l)
{
    return schema_json(l.cols, l.rows, l.k_max, l.hom_dim, l.epsilons, l.values).dump() + "\n";
}

landscape::Landscape landscape_from_json(const std::string& text)
{
    return load<landscape::Landscape>(text, [](const ordered_json& cell) -> f2::Index {
        if (!cell.is_number_integer() || cell.get<long long>() < 0)
            throw data_error("landscape JSON: cell values must be non-negative integers");
        return cell.get<long long>();
    });
}

landscape::MeanLandscape mean_landscape_from_json(const std::string& text)
{
    return load<landscape::MeanLandscape>(text, [](const ordered_json& cell) -> double {
        if (!cell.is_number() || cell.get<double>() < 0.0)
            throw data_error("landscape JSON: cell values must be non-negative numbers");
        return cell.get<double>();
    });
}

namespace {

void check_cells(const std::vector<std::vector<double>>& cells,
                 const std::vector<double>* epsilons)
{
    if (cells.empty() || cells.front().empty())
        throw std::invalid_argument("heatmap: need at least one cell");
    for (const auto& row : cells) {
        if (row.size() != cells.front().size())
            throw std::invalid_argument("heatmap: ragged rows");
        for (double v : row)
            if (!(v >= 0.0)) throw std::invalid_argument("heatmap: negative cell");
    }
    if (epsilons && epsilons->size() != cells.size())
        throw std::invalid_argument("heatmap: need one epsilon per row");
}

double max_cell(const std::vector<std::vector<double>>& cells)
{
    double vmax = 0.0;
    for (const auto& row : cells)
        for (double v : row) vmax = std::max(vmax, v);
    return vmax;
}

std::string ramp_color(double t)
{
    // light green -> dark green, linear per channel
    static const int lo[3] = {229, 245, 224};
    static const int hi[3] = {0, 68, 27};
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::lround(lo[0] + (hi[0] - lo[0]) * t)),
                  int(std::lround(lo[1] + (hi[1] - lo[1]) * t)),
                  int(std::lround(lo[2] + (hi[2] - lo[2]) * t)));
    return buf;
}

} // namespace

std::string render_svg_heatmap(const std::vector<std::vector<double>>& cells,
                               const std::vector<double>& epsilons)
{
    check_cells(cells, &epsilons);
    const int rows = int(cells.size());
    const int cols = int(cells.front().size());
    const double vmax = max_cell(cells);

    const int cw = 24, ch = 18;
    const int ml = 72, mt = 20, mb = 48, mr = 108;
    const int pw = cols * cw, ph = rows * ch;
    const int width = ml + pw + mr, height = mt + ph + mb;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    s << "<style>text{font-family:monospace;font-size:10px;fill:#333}</style>\n";
    s << "<rect class=\"bg\" x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"#f4f4f4\"/>\n";

    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double v = cells[std::size_t(r)][std::size_t(c)];
            if (v <= 0.0) continue;
            s << "<rect class=\"cell\" x=\"" << ml + c * cw << "\" y=\""
              << mt + (rows - 1 - r) * ch << "\" width=\"" << cw << "\" height=\"" << ch
              << "\" fill=\"" << ramp_color(v / vmax) << "\"/>\n";
        }

    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"#333\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"#333\"/>\n";

    // scale legend: one label per row (thinned when tall)
    const int rstride = std::max(1, (rows + 15) / 16);
    for (int r = 0; r < rows; r += rstride)
        s << "<text x=\"" << ml - 6 << "\" y=\"" << mt + (rows - 1 - r) * ch + ch / 2 + 3
          << "\" text-anchor=\"end\">" << fmt("%.4g", epsilons[std::size_t(r)]) << "</text>\n";

    const int cstride = std::max(1, (cols + 23) / 24);
    for (int c = 0; c < cols; c += cstride)
        s << "<text x=\"" << ml + c * cw + cw / 2 << "\" y=\"" << mt + ph + 14
          << "\" text-anchor=\"middle\">" << c << "</text>\n";

    s << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt + ph + 32
      << "\" text-anchor=\"middle\">zigzag column</text>\n";
    s << "<text x=\"" << ml - 6 << "\" y=\"" << mt - 8
      << "\" text-anchor=\"end\">epsilon</text>\n";

    if (vmax > 0.0) {
        const int swatches = 12, sw = 16;
        const int sh = std::max(6, ph / swatches);
        const int sx = ml + pw + 28;
        for (int i = 1; i <= swatches; ++i)
            s << "<rect class=\"sw\" x=\"" << sx << "\" y=\"" << mt + ph - i * sh
              << "\" width=\"" << sw << "\" height=\"" << sh << "\" fill=\""
              << ramp_color(double(i) / swatches) << "\"/>\n";
        s << "<text x=\"" << sx + sw + 5 << "\" y=\"" << mt + ph + 3 << "\">0</text>\n";
        s << "<text x=\"" << sx + sw + 5 << "\" y=\"" << mt + ph - swatches * sh + 9 << "\">"
          << fmt("%.4g", vmax) << "</text>\n";
    }
    s << "</svg>\n";
    return std::move(s).str();
}

std::string render_pgm_heatmap(const std::vector<std::vector<double>>& cells)
{
    check_cells(cells, nullptr);
    const int rows = int(cells.size());
    const int cols = int(cells.front().size());
    const double vmax = max_cell(cells);

    std::ostringstream s;
    s << "P2\n" << cols << " " << rows << "\n255\n";
    for (int r = rows - 1; r >= 0; --r) {
        for (int c = 0; c < cols; ++c) {
            const double v = cells[std::size_t(r)][std::size_t(c)];
            const int gray = vmax == 0.0 ? 255 : int(std::lround(255.0 * (1.0 - v / vmax)));
            s << (c ? " " : "") << gray;
        }
        s << "\n";
    }
    return std::move(s).str();
}

} // namespace zzl::io
