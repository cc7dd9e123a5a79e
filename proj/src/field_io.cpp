#include "turbo/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace turbo {

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("write_snapshot: cannot open " + tmp);
        os.write("TRBF", 4);
        const unsigned char version = 1;
        const unsigned char dim = static_cast<unsigned char>(f.grid().dim);
        const unsigned char channels = static_cast<unsigned char>(f.channels());
        os.write(reinterpret_cast<const char*>(&version), 1);
        os.write(reinterpret_cast<const char*>(&dim), 1);
        os.write(reinterpret_cast<const char*>(&channels), 1);
        put_u32_le(os, static_cast<std::uint32_t>(f.grid().n));
        const Eigen::MatrixXd samples = f.samples();
        for (int c = 0; c < f.channels(); ++c) {
            for (std::int64_t i = 0; i < samples.rows(); ++i) {
                const double v = samples(i, c);
                // Assumes little-endian host (checked nowhere else in this codebase).
                os.write(reinterpret_cast<const char*>(&v), 8);
            }
        }
        if (!os) throw std::runtime_error("write_snapshot: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

SpectralField read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, "TRBF", 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    unsigned char version = 0, dim = 0, channels = 0;
    is.read(reinterpret_cast<char*>(&version), 1);
    is.read(reinterpret_cast<char*>(&dim), 1);
    is.read(reinterpret_cast<char*>(&channels), 1);
    if (version != 1) throw std::runtime_error("read_snapshot: unsupported version");
    const std::uint32_t n = get_u32_le(is);
    Grid g(dim, static_cast<int>(n));
    Eigen::MatrixXd samples(g.size(), channels);
    for (int c = 0; c < channels; ++c)
        for (std::int64_t i = 0; i < samples.rows(); ++i) {
            double v;
            is.read(reinterpret_cast<char*>(&v), 8);
            samples(i, c) = v;
        }
    if (!is) throw std::runtime_error("read_snapshot: truncated file " + path);
    return SpectralField::from_samples(g, samples);
}

void write_csv(const std::string& path, const SpectralField& f) {
    std::ostringstream os;
    const Grid& g = f.grid();
    os << "ix";
    if (g.dim > 1) os << ",iy";
    if (g.dim > 2) os << ",iz";
    for (int c = 0; c < f.channels(); ++c) os << ",v" << c;
    os << "\n";
    const Eigen::MatrixXd samples = f.samples();
    char buf[64];
    for (std::int64_t idx = 0; idx < samples.rows(); ++idx) {
        const auto iv = g.unflat(idx);
        os << iv[0];
        if (g.dim > 1) os << "," << iv[1];
        if (g.dim > 2) os << "," << iv[2];
        for (int c = 0; c < f.channels(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", samples(idx, c));
            os << "," << buf;
        }
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
        os << content;
        if (!os) throw std::runtime_error("write_text_atomic: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace turbo
