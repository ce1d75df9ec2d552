#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "scpair/config.hpp"
#include "scpair/io.hpp"

using namespace scpair;
namespace fs = std::filesystem;

TEST_CASE("parse key = value text")
{
    const RunConfig c = parse_config("# defaults for a run\n delta = 1e-2 \nec=0.005 # inline\n\nsweep_param = w\nthreads = 3\n");
    CHECK(c.delta == 1e-2);
    CHECK(c.ec == 0.005);
    CHECK(c.sweep_param == "w");
    CHECK(c.threads == 3);
    CHECK(c.w == RunConfig{}.w);
}

TEST_CASE("malformed configuration is rejected")
{
    CHECK_THROWS_AS(parse_config("colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("delta 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("delta = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("delta = 0.1x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("ec = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sweep_count = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("theta_min = 2\ntheta_max = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sweep_min = 5\nsweep_max = 5\n"), ConfigError);
    try {
        parse_config("w = 1\nbogus = 2\n");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config hash covers physics, not plumbing")
{
    RunConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.threads = 8;
    b.output_dir = "/tmp/elsewhere";
    b.cache_dir = "/tmp/cache";
    CHECK(config_hash(a) == config_hash(b));
    b.delta = std::nextafter(a.delta, 1.0);
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.rel_tol = 1e-4;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("cache directory precedence")
{
    RunConfig file;
    ::unsetenv("SCPAIR_CACHE_DIR");
    CHECK(resolve_cache_dir(std::nullopt, file) == fs::path(".scpair-cache"));
    file.cache_dir = "from-file";
    CHECK(resolve_cache_dir(std::nullopt, file) == fs::path("from-file"));
    ::setenv("SCPAIR_CACHE_DIR", "from-env", 1);
    CHECK(resolve_cache_dir(std::nullopt, file) == fs::path("from-env"));
    CHECK(resolve_cache_dir(std::string("from-flag"), file) == fs::path("from-flag"));
    ::unsetenv("SCPAIR_CACHE_DIR");
}

TEST_CASE("row cache round trip is exact")
{
    const fs::path dir = fs::temp_directory_path() / "scpair-test-cache";
    fs::remove_all(dir);
    const io::RowCache cache(dir, "0123456789abcdef");
    const std::vector<std::vector<double>> rows = {{0.1, 1.0 / 3.0, 5e-300}, {-2.5, 1e300, std::nextafter(1.0, 2.0)}};
    CHECK_FALSE(cache.load("set", 2, 3).has_value());
    cache.store("set", rows);
    const auto back = cache.load("set", 2, 3);
    REQUIRE(back.has_value());
    CHECK(*back == rows);
    // shape mismatch or corruption is a miss, never an error
    CHECK_FALSE(cache.load("set", 3, 3).has_value());
    { std::ofstream(cache.path_for("set")) << "garbage"; }
    CHECK_FALSE(cache.load("set", 2, 3).has_value());
    CHECK_FALSE(io::RowCache().load("set", 2, 3).has_value());
    fs::remove_all(dir);
}

TEST_CASE("atomic write leaves no temporaries")
{
    const fs::path dir = fs::temp_directory_path() / "scpair-test-atomic";
    fs::remove_all(dir);
    io::atomic_write(dir / "sub" / "a.csv", "x,y\n1,2\n");
    io::atomic_write(dir / "sub" / "a.csv", "x,y\n3,4\n");
    CHECK(io::read_file(dir / "sub" / "a.csv") == "x,y\n3,4\n");
    int n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub"))
        ++n;
    CHECK(n == 1);
    fs::remove_all(dir);
}

TEST_CASE("number format")
{
    CHECK(io::format_double(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
