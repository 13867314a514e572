#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "levy/grid.hpp"
#include "levy/report.hpp"

namespace levy {

namespace fs = std::filesystem;

// Columns: coordinates..., value. Values use round-trip precision.
void write_grid_csv(const GridFunction& f, const fs::path& path, const std::string& value_name = "value");
GridFunction read_grid_csv(const fs::path& path, const Grid& grid);

// Little-endian float64 array at <stem>.bin plus <stem>.json holding d, N, L, name.
void write_grid_raw(const GridFunction& f, const fs::path& stem, const std::string& name);
struct RawField {
    GridFunction field;
    std::string name;
};
RawField read_grid_raw(const fs::path& stem);

// Values on the FFT-ordered dual grid, written in ascending frequency order.
void write_dual_csv(const Grid& grid, const std::vector<double>& values, const fs::path& path,
                    const std::string& value_name);

void write_table_csv(const fs::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

void write_json(const json& j, const fs::path& path);

}  // namespace levy
