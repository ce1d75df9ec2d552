#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scpair::io {

// Scientific notation, 17 significant digits.
std::string format_double(double x);

// Write to a sibling temporary file and rename over `path`, so readers never
// see a partial file.  Parent directories are created.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Cache of computed dataset rows, keyed by config hash and dataset name.
// Values are stored as hex floats, so a cache hit reproduces the computed
// rows bit for bit.  An empty directory disables the cache.
class RowCache {
public:
    RowCache() = default;
    RowCache(std::filesystem::path dir, std::string config_hash);

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::vector<std::vector<double>>> load(const std::string& dataset, std::size_t rows,
                                                         std::size_t columns) const;
    void store(const std::string& dataset, const std::vector<std::vector<double>>& rows) const;
    std::filesystem::path path_for(const std::string& dataset) const;

private:
    std::filesystem::path dir_;
    std::string hash_;
};

} // namespace scpair::io
