#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kinsl/grid.hpp"
#include "kinsl/json.hpp"
#include "kinsl/state.hpp"
#include "kinsl/velocity.hpp"

namespace kinsl {

/// "%.10e".
std::string format_real(double v);

/// x,rho
void write_rho_csv(const std::filesystem::path& path, const Axis& x, std::span<const double> rho);

/// x,v_index,v,f
void write_f_csv(const std::filesystem::path& path, const Axis& x, const VelocitySpace& vs, const KineticState& s);

/// x,y,rho with p = i * ny + j.
void write_rho2d_csv(const std::filesystem::path& path, const Axis& x, const Axis& y, std::span<const double> rho);

inline constexpr char binary_magic[8] = {'K', 'I', 'N', 'S', 'L', 'F', '0', '1'};

/// Magic, uint32 nx, uint32 ny, then nx*ny little-endian doubles in row-major order.
void write_binary_field(const std::filesystem::path& path, std::uint32_t nx, std::uint32_t ny,
                        std::span<const double> data);

struct BinaryField {
    std::uint32_t nx = 0;
    std::uint32_t ny = 0;
    std::vector<double> data;
};

BinaryField read_binary_field(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const Json& doc);

}  // namespace kinsl
