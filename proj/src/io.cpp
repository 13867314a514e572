#include "levy/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levy {

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string num(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

fs::path with_ext(fs::path stem, const char* ext) { return stem.replace_extension(ext); }

}  // namespace

void write_grid_csv(const GridFunction& f, const fs::path& path, const std::string& value_name) {
    const Grid& g = f.grid();
    std::ofstream out = open_out(path);
    out << (g.dim() == 1 ? "x," : "x,y,") << value_name << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec2 p = g.point(i);
        out << num(p[0]) << ',';
        if (g.dim() == 2) out << num(p[1]) << ',';
        out << num(f[i]) << '\n';
    }
}

GridFunction read_grid_csv(const fs::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<double> values;
    values.reserve(grid.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.rfind(',');
        const char* s = line.c_str() + comma + 1;
        double v = 0.0;
        auto r = std::from_chars(s, line.c_str() + line.size(), v);
        if (r.ec != std::errc()) throw std::runtime_error(path.string() + ": bad value '" + std::string(s) + "'");
        values.push_back(v);
    }
    if (values.size() != grid.size()) throw std::runtime_error(path.string() + ": row count does not match the grid");
    return GridFunction(grid, std::move(values));
}

void write_grid_raw(const GridFunction& f, const fs::path& stem, const std::string& name) {
    std::ofstream out = open_out(with_ext(stem, ".bin"), std::ios::binary);
    for (double v : f.values()) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        char b[8];
        std::memcpy(b, &bits, 8);
        out.write(b, 8);
    }
    const Grid& g = f.grid();
    write_json({{"d", g.dim()}, {"N", g.n()}, {"L", g.half_width()}, {"name", name}}, with_ext(stem, ".json"));
}

RawField read_grid_raw(const fs::path& stem) {
    std::ifstream js(with_ext(stem, ".json"));
    if (!js) throw std::runtime_error("cannot read " + with_ext(stem, ".json").string());
    const json meta = json::parse(js);
    const Grid g(meta.at("d").get<int>(), meta.at("N").get<int>(), meta.at("L").get<double>());
    std::ifstream in(with_ext(stem, ".bin"), std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + with_ext(stem, ".bin").string());
    std::vector<double> values(g.size());
    for (double& v : values) {
        char b[8];
        if (!in.read(b, 8)) throw std::runtime_error(with_ext(stem, ".bin").string() + ": truncated");
        std::uint64_t bits;
        std::memcpy(&bits, b, 8);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        v = std::bit_cast<double>(bits);
    }
    return {GridFunction(g, std::move(values)), meta.at("name").get<std::string>()};
}

void write_dual_csv(const Grid& grid, const std::vector<double>& values, const fs::path& path,
                    const std::string& value_name) {
    if (values.size() != grid.size()) throw std::invalid_argument("dual array does not match the grid");
    std::ofstream out = open_out(path);
    out << (grid.dim() == 1 ? "xi," : "xi1,xi2,") << value_name << "\n";
    const int N = grid.n();
    auto fft_index = [N](int s) { return s < 0 ? s + N : s; };
    if (grid.dim() == 1) {
        for (int s = -N / 2; s < N / 2; ++s) {
            const int k = fft_index(s);
            out << num(grid.frequency(k)) << ',' << num(values[std::size_t(k)]) << '\n';
        }
        return;
    }
    for (int s0 = -N / 2; s0 < N / 2; ++s0)
        for (int s1 = -N / 2; s1 < N / 2; ++s1) {
            const int k0 = fft_index(s0), k1 = fft_index(s1);
            out << num(grid.frequency(k0)) << ',' << num(grid.frequency(k1)) << ','
                << num(values[grid.index(k0, k1)]) << '\n';
        }
}

void write_table_csv(const fs::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
        out << '\n';
    }
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace levy
