#include "scpair/io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "scpair/errors.hpp"

namespace scpair::io {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content)
{
    static std::atomic<unsigned> counter{0};
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp =
        path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RowCache::RowCache(std::filesystem::path dir, std::string config_hash) : dir_(std::move(dir)), hash_(std::move(config_hash)) {}

std::filesystem::path RowCache::path_for(const std::string& dataset) const
{
    return dir_ / hash_ / (dataset + ".rows");
}

std::optional<std::vector<std::vector<double>>> RowCache::load(const std::string& dataset, std::size_t rows,
                                                               std::size_t columns) const
{
    if (!enabled())
        return std::nullopt;
    std::ifstream in(path_for(dataset));
    if (!in)
        return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::ostringstream expect;
    expect << "scpair-rows " << hash_ << ' ' << dataset << ' ' << rows << ' ' << columns;
    if (header != expect.str())
        return std::nullopt;
    std::vector<std::vector<double>> out(rows, std::vector<double>(columns));
    for (auto& row : out)
        for (auto& v : row) {
            std::string tok;
            if (!(in >> tok))
                return std::nullopt;
            char* end = nullptr;
            v = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size())
                return std::nullopt;
        }
    return out;
}

void RowCache::store(const std::string& dataset, const std::vector<std::vector<double>>& rows) const
{
    if (!enabled())
        return;
    std::ostringstream o;
    o << "scpair-rows " << hash_ << ' ' << dataset << ' ' << rows.size() << ' ' << (rows.empty() ? 0 : rows[0].size())
      << '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%a", row[j]);
            o << (j ? " " : "") << buf;
        }
        o << '\n';
    }
    atomic_write(path_for(dataset), o.str());
}

} // namespace scpair::io
