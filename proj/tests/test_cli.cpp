#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;  // path to the dualnest binary, from argv

int run(const std::string& args) {
    const int status = std::system((g_cli + " " + args).c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("dualnest_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("rays: c = 0 radial segments with known landings") {
    const fs::path dir = temp_dir("rays");
    REQUIRE(run("rays --c-re 0 --c-im 0 --angles 0,1/4 --out " +
                dir.string()) == 0);
    const auto rays = load(dir / "rays.json");
    REQUIRE(rays["rays"].size() == 2);
    CHECK(rays["meta"]["tool"].get<std::string>().find("dualnest") == 0);
    CHECK(rays["meta"]["annulus_index_convention"].is_string());
    const auto& r0 = rays["rays"][0];
    CHECK(r0["angle"] == "0/1");
    CHECK(r0["landed"] == true);
    CHECK(std::abs(r0["landing"][0].get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(r0["landing"][1].get<double>()) < 1e-6);
    const auto& r1 = rays["rays"][1];
    CHECK(std::abs(r1["landing"][0].get<double>()) < 1e-6);
    CHECK(std::abs(r1["landing"][1].get<double>() - 1.0) < 1e-6);
    CHECK(fs::exists(dir / "equipotentials.json"));
    CHECK(fs::exists(dir / "rays.svg"));
}

TEST_CASE("usage errors exit 1") {
    const fs::path dir = temp_dir("usage");
    CHECK(run("rays --angles 1/0 --out " + dir.string() +
              " 2>/dev/null") == 1);
    CHECK(run("frobnicate 2>/dev/null") == 1);
    CHECK(run("nest --mode sideways 2>/dev/null") == 1);
}

TEST_CASE("tableau: c = i reports and verdict fields") {
    const fs::path dir = temp_dir("tableau");
    REQUIRE(run("tableau --c-re 0 --c-im 1 --limb 1/3 --depth 5 --out " +
                dir.string()) == 0);
    const std::string csv = slurp(dir / "tableau.csv");
    CHECK(csv.substr(0, 2) == "C,");  // column zero stays critical
    const auto verdicts = load(dir / "verdicts.json");
    CHECK(verdicts["recurrence"]["window_depth"] == 5);
    CHECK(verdicts["recurrence"]["window_width"] == 20);
    CHECK(verdicts["column_rule_violations"] == 0);
    CHECK(fs::exists(dir / "children.json"));
}

TEST_CASE("nest synthetic: exact accounting and determinism") {
    const fs::path dir1 = temp_dir("nest1");
    const fs::path dir2 = temp_dir("nest2");
    REQUIRE(run("nest --mode synthetic --batches 5 --out " + dir1.string()) ==
            0);
    REQUIRE(run("nest --mode synthetic --batches 5 --out " + dir2.string()) ==
            0);
    CHECK(slurp(dir1 / "nest.json") == slurp(dir2 / "nest.json"));
    CHECK(slurp(dir1 / "divergence.json") == slurp(dir2 / "divergence.json"));

    const auto div = load(dir1 / "divergence.json");
    CHECK(div["M0"] == "1");
    CHECK(div["all_bounds_hold"] == true);
    CHECK(div["partial"] == false);
    CHECK(div["batches"].size() == 5);
    CHECK(div["violations"].empty());
}

TEST_CASE("nest: planted violation exits 3") {
    const fs::path dir = temp_dir("nestv");
    {
        std::ofstream spec(dir / "spec.json");
        spec << "{\"violation_alpha\": 0}\n";
    }
    const int code = run("nest --mode synthetic --batches 5 --spec " +
                         (dir / "spec.json").string() + " --out " +
                         dir.string() + " 2>" + (dir / "err.txt").string());
    CHECK(code == 3);
    CHECK(slurp(dir / "err.txt").find("one-step ancestor modulus bound") !=
          std::string::npos);
    const auto div = load(dir / "divergence.json");
    CHECK(div["all_bounds_hold"] == false);
}

TEST_CASE("modulus: round annulus fixture") {
    const fs::path dir = temp_dir("modulus");
    {
        std::ofstream region(dir / "region.json");
        region << "{\"outer\": [";
        for (int k = 0; k < 128; ++k) {
            const double a = 2.0 * M_PI * k / 128;
            region << (k ? "," : "") << "[" << std::exp(1.0) * std::cos(a)
                   << "," << std::exp(1.0) * std::sin(a) << "]";
        }
        region << "], \"inner\": [";
        for (int k = 0; k < 128; ++k) {
            const double a = 2.0 * M_PI * k / 128;
            region << (k ? "," : "") << "[" << std::cos(a) << ","
                   << std::sin(a) << "]";
        }
        region << "]}\n";
    }
    REQUIRE(run("modulus " + (dir / "region.json").string() +
                " --grid 256 --out " + dir.string()) == 0);
    const auto mod = load(dir / "modulus.json");
    CHECK(mod["degenerate"] == false);
    CHECK(std::abs(mod["value"].get<double>() - 0.15915494309189535) <
          0.02 * 0.159);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-dualnest-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
