#pragma once

#include <string>

#include "turbo/spectral_field.hpp"

namespace turbo {

/// Binary snapshot: magic "TRBF", u8 version=1, u8 dim, u8 channels,
/// u32 n_per_axis (little endian), then channel-major, row-major (x fastest)
/// samples as little-endian 64-bit floats.
void write_snapshot(const std::string& path, const SpectralField& f);
SpectralField read_snapshot(const std::string& path);

/// CSV export: one row per sample, index columns then one value per channel.
void write_csv(const std::string& path, const SpectralField& f);

/// Write text atomically (temp file in the same directory, then rename).
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace turbo
