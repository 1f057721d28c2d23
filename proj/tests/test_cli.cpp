#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "specdim/spectra.hpp"
#include "specdim/theory.hpp"

namespace fs = std::filesystem;
using specdim::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

specdim::DimensionCurve read_curve(const std::string& path) {
    std::ifstream f(path);
    return specdim::read_dimension_csv(f);
}

}  // namespace

TEST_CASE("theory command") {
    TempDir dir("specdim_cli_theory");
    auto r = invoke({"theory", "--model", "poisson", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    const auto c = read_curve(dir / "theory.csv");
    bool found = false;
    for (const auto& p : c.points())
        if (p.r_over_sbar == 1.0) {
            found = true;
            CHECK(std::abs(p.d_b - 0.418023) < 5e-7);
        }
    CHECK(found);
    CHECK(c.size() == 115);

    r = invoke({"theory", "--model", "equal", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    const auto step = read_curve(dir / "theory.csv");
    for (const auto& p : step.points()) CHECK(p.d_b == (p.r_over_sbar <= 1.0 ? 0.0 : 1.0));

    CHECK(invoke({"theory", "--model", "wigner"}).code == 2);
    CHECK(invoke({"theory"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);

    r = invoke({"theory", "--model", "gse", "--plot", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "theory.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("theory --transform agrees with the closed form") {
    TempDir dir("specdim_cli_transform");
    REQUIRE(invoke({"theory", "--model", "gue", "--out", dir / "a"}).code == 0);
    REQUIRE(invoke({"theory", "--model", "gue", "--transform", "--out", dir / "b"}).code == 0);
    const auto r = invoke({"compare", dir / "a/theory.csv", dir / "b/theory.csv", "--tol", "1e-8"});
    CHECK(r.code == 0);
}

TEST_CASE("sample command") {
    TempDir dir("specdim_cli_sample");
    REQUIRE(invoke({"sample", "--model", "equal", "--n", "4", "--out", dir.path.string()}).code == 0);
    const auto s = specdim::ingest_levels(dir / "spectrum.txt");
    CHECK(std::vector<double>(s.levels().begin(), s.levels().end()) == std::vector<double>{0, 1, 2, 3});

    REQUIRE(invoke({"sample", "--model", "gue", "--n", "500", "--seed", "9", "--out", dir / "a"}).code == 0);
    REQUIRE(invoke({"sample", "--model", "gue", "--n", "500", "--seed", "9", "--out", dir / "b"}).code == 0);
    CHECK(slurp(dir / "a/spectrum.txt") == slurp(dir / "b/spectrum.txt"));

    CHECK(invoke({"sample", "--model", "gue", "--n", "10"}).code == 2);
    CHECK(invoke({"sample", "--model", "goe-matrix", "--n", "10"}).code == 2);

    REQUIRE(invoke({"sample", "--model", "goe-matrix", "--n", "20000", "--seed", "3", "--out", dir / "m"}).code == 0);
    CHECK(specdim::ingest_levels(dir / "m/spectrum.txt").size() == 20000);
}

TEST_CASE("analyze command") {
    TempDir dir("specdim_cli_analyze");
    REQUIRE(invoke({"sample", "--model", "equal", "--n", "2001", "--out", dir.path.string()}).code == 0);
    auto r = invoke({"analyze", dir / "spectrum.txt", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "boxcount.csv"));
    const auto d = read_curve(dir / "dimension.csv");
    CHECK(d.source() == specdim::CurveSource::BoxCounting);
    for (const auto& p : d.points()) {
        if (p.r_over_sbar < 0.9) CHECK(p.d_b == 0.0);
        if (p.r_over_sbar > 1.2) CHECK(std::abs(p.d_b - 1.0) < 0.05);
    }

    REQUIRE(invoke({"sample", "--model", "poisson", "--n", "100000", "--seed", "1", "--out", dir / "p"}).code == 0);
    r = invoke({"analyze", dir / "p/spectrum.txt", "--overlay", "poisson", "--plot", "--out", dir / "p"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "p/overlay.csv"));
    CHECK(fs::exists(dir / "p/analyze.svg"));
    r = invoke({"compare", dir / "p/dimension.csv", dir / "p/overlay.csv", "--tol", "0.02", "--r-min", "0.05",
                "--r-max", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("max deviation") != std::string::npos);

    {
        std::ofstream bad(dir / "bad.txt");
        bad << "1\n2\nfoo\n";
    }
    r = invoke({"analyze", dir / "bad.txt"});
    CHECK(r.code == 3);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(invoke({"analyze", dir / "missing.txt"}).code == 3);
    CHECK(invoke({"analyze", dir / "spectrum.txt", "--decimate", "both"}).code == 2);
}

TEST_CASE("analyze preprocessing of a GOE matrix spectrum") {
    TempDir dir("specdim_cli_goe");
    REQUIRE(invoke({"sample", "--model", "goe-matrix", "--n", "2000", "--seed", "4", "--out", dir.path.string()}).code ==
            0);
    const auto r = invoke({"analyze", dir / "spectrum.txt", "--unfold-semicircle", "--decimate", "even", "--rescale",
                           "--overlay", "gse", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("levels 900,") != std::string::npos);
    CHECK(r.out.find("mean spacing 1\n") != std::string::npos);
}

TEST_CASE("compare command") {
    TempDir dir("specdim_cli_compare");
    REQUIRE(invoke({"theory", "--model", "poisson", "--out", dir / "p"}).code == 0);
    REQUIRE(invoke({"theory", "--model", "gue", "--out", dir / "g"}).code == 0);
    auto r = invoke({"compare", dir / "p/theory.csv", dir / "p/theory.csv", "--tol", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("max deviation 0 ") != std::string::npos);
    CHECK(invoke({"compare", dir / "p/theory.csv", dir / "g/theory.csv", "--tol", "0.01"}).code == 4);

    REQUIRE(invoke({"--grid-min", "0.02", "--grid-max", "0.1", "theory", "--model", "gue", "--out", dir / "lo"}).code ==
            0);
    REQUIRE(invoke({"--grid-min", "1", "--grid-max", "5", "theory", "--model", "gue", "--out", dir / "hi"}).code == 0);
    CHECK(invoke({"compare", dir / "lo/theory.csv", dir / "hi/theory.csv"}).code == 3);
}

TEST_CASE("crossing command") {
    auto r = invoke({"crossing", "--model-a", "poisson", "--model-b", "goe", "--bracket", "0.1", "1.0"});
    REQUIRE(r.code == 0);
    const double x = std::stod(r.out.substr(r.out.find('=') + 1));
    CHECK(std::abs(x - 1.0) > 0.01);
    CHECK(invoke({"crossing", "--model-a", "goe", "--model-b", "goe"}).code == 5);
    CHECK(invoke({"crossing", "--model-a", "poisson", "--model-b", "goe", "--bracket", "1.0", "0.1"}).code == 2);
}

TEST_CASE("config file sits between flags and defaults") {
    TempDir dir("specdim_cli_config");
    {
        std::ofstream cfg(dir / "run.ini");
        cfg << "grid-min = 0.1\ngrid-max = 2\n";
    }
    REQUIRE(invoke({"--config", dir / "run.ini", "theory", "--model", "goe", "--out", dir / "a"}).code == 0);
    auto c = read_curve(dir / "a/theory.csv");
    CHECK(c.points().front().r_over_sbar == doctest::Approx(0.1));
    CHECK(c.points().back().r_over_sbar <= 2.0);

    REQUIRE(invoke({"--config", dir / "run.ini", "--grid-min", "0.5", "theory", "--model", "goe", "--out", dir / "b"})
                .code == 0);
    c = read_curve(dir / "b/theory.csv");
    CHECK(c.points().front().r_over_sbar >= 0.5);
    CHECK(c.points().back().r_over_sbar <= 2.0);
}

TEST_CASE("outputs are byte-identical across runs") {
    TempDir dir("specdim_cli_repeat");
    for (const char* sub : {"a", "b"}) {
        REQUIRE(invoke({"sample", "--model", "goe", "--n", "20000", "--seed", "12", "--out", dir / sub}).code == 0);
        REQUIRE(invoke({"analyze", dir / (std::string(sub) + "/spectrum.txt"), "--out", dir / sub}).code == 0);
    }
    CHECK(slurp(dir / "a/boxcount.csv") == slurp(dir / "b/boxcount.csv"));
    CHECK(slurp(dir / "a/dimension.csv") == slurp(dir / "b/dimension.csv"));
}
