#include "kinsl/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "kinsl/errors.hpp"

namespace kinsl {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream os(path, mode);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

}  // namespace

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

void write_rho_csv(const std::filesystem::path& path, const Axis& x, std::span<const double> rho)
{
    if (rho.size() != std::size_t(x.n)) throw IoError("write_rho_csv: size mismatch");
    auto os = open_out(path);
    os << "x,rho\n";
    for (int i = 0; i < x.n; ++i) os << format_real(x.node(i)) << ',' << format_real(rho[std::size_t(i)]) << '\n';
}

void write_f_csv(const std::filesystem::path& path, const Axis& x, const VelocitySpace& vs, const KineticState& s)
{
    auto os = open_out(path);
    os << "x,v_index,v,f\n";
    for (int i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < vs.size(); ++k)
            os << format_real(x.node(i)) << ',' << k << ',' << format_real(vs.v(k)) << ','
               << format_real(s.f_slice(k)[std::size_t(i)]) << '\n';
}

void write_rho2d_csv(const std::filesystem::path& path, const Axis& x, const Axis& y, std::span<const double> rho)
{
    if (rho.size() != std::size_t(x.n) * std::size_t(y.n)) throw IoError("write_rho2d_csv: size mismatch");
    auto os = open_out(path);
    os << "x,y,rho\n";
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < y.n; ++j)
            os << format_real(x.node(i)) << ',' << format_real(y.node(j)) << ','
               << format_real(rho[std::size_t(i) * std::size_t(y.n) + std::size_t(j)]) << '\n';
}

void write_binary_field(const std::filesystem::path& path, std::uint32_t nx, std::uint32_t ny,
                        std::span<const double> data)
{
    if (data.size() != std::size_t(nx) * std::size_t(ny)) throw IoError("write_binary_field: size mismatch");
    auto os = open_out(path, std::ios::out | std::ios::binary);
    os.write(binary_magic, sizeof binary_magic);
    os.write(reinterpret_cast<const char*>(&nx), sizeof nx);
    os.write(reinterpret_cast<const char*>(&ny), sizeof ny);
    os.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size() * sizeof(double)));
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

BinaryField read_binary_field(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "'");
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, binary_magic, sizeof magic) != 0) throw IoError("bad magic in '" + path.string() + "'");
    BinaryField b;
    is.read(reinterpret_cast<char*>(&b.nx), sizeof b.nx);
    is.read(reinterpret_cast<char*>(&b.ny), sizeof b.ny);
    b.data.resize(std::size_t(b.nx) * std::size_t(b.ny));
    is.read(reinterpret_cast<char*>(b.data.data()), std::streamsize(b.data.size() * sizeof(double)));
    if (!is) throw IoError("truncated field in '" + path.string() + "'");
    return b;
}

void write_json(const std::filesystem::path& path, const Json& doc)
{
    auto os = open_out(path);
    os << doc.dump(2) << '\n';
}

}  // namespace kinsl
