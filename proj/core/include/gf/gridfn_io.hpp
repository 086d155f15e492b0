#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "gf/grid_fn.hpp"

namespace gf {

/// Persists u as a directory: `metadata.json` describing the grid, the
/// eps-grid, and free-form provenance strings, plus one raw little-endian
/// binary file `layer_<k>.f64` of interleaved (re, im) doubles per eps_k.
/// The directory is created if needed; existing layer files are replaced.
void save_gridfn(const GridFn& u, const std::filesystem::path& dir,
                 const std::map<std::string, std::string>& provenance = {});

/// Inverse of save_gridfn; the round trip is bit-exact. Throws
/// std::runtime_error on missing or malformed files. Provenance strings
/// are returned through `provenance` when non-null.
GridFn load_gridfn(const std::filesystem::path& dir,
                   std::map<std::string, std::string>* provenance = nullptr);

}  // namespace gf
