#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sihdr/cli.hpp"
#include "sihdr/image_io.hpp"
#include "synth.hpp"

using namespace sihdr;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    const fs::path dir = fs::temp_directory_path() / "sihdr_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string path_of(const std::string& name)
{
    return (scratch() / name).string();
}

std::string write_sample(const std::string& name, const RgbImage& img)
{
    const std::string p = path_of(name);
    write_image(img, p);
    return p;
}

} // namespace

TEST_CASE("metrics on identical files")
{
    const std::string a = write_sample("same.png", test::synthetic_photo(test::Scene::indoor, 40, 30, 1));
    const Run r = run({"metrics", a, a});
    CHECK(r.code == 0);
    CHECK(r.out.find("gmsd=0.000000\n") == 0);
    CHECK(r.out.find("de_ref=") != std::string::npos);
}

TEST_CASE("usage errors exit with 1")
{
    CHECK(run({"enhance", "a.png", "b.png", "--bogus"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"metrics", "only_one.png"}).code == 1);
    CHECK(run({"enhance", path_of("missing.png"), path_of("x.png")}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bad parameter values exit with 1")
{
    const std::string in = write_sample("in_bad.png", test::synthetic_photo(test::Scene::portrait, 32, 32, 2));
    const Run r = run({"enhance", in, path_of("out_bad.png"), "--gamma-r", "3"});
    CHECK(r.code == 1);
    CHECK(r.err.find("gamma_r") != std::string::npos);
    CHECK(run({"enhance", in, path_of("out_bad.png"), "--weight-inverse", "nope"}).code == 1);
}

TEST_CASE("dark image is declined and copied")
{
    const RgbImage dark = test::patch_image(40, 40, 0.03, 0.9, 0.02, 5);
    const std::string in = write_sample("dark.png", dark);
    const std::string out = path_of("dark_out.png");
    const Run r = run({"enhance", in, out, "--report-json", path_of("dark.json")});
    CHECK(r.code == 2);
    CHECK(r.out.find("gate=declined") != std::string::npos);
    CHECK(read_file_bytes(in) == read_file_bytes(out));
    std::ifstream json(path_of("dark.json"));
    std::string text((std::istreambuf_iterator<char>(json)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"declined\": true") != std::string::npos);
}

TEST_CASE("enhance writes output, dumps and HDR")
{
    const std::string in = write_sample("backlit.png", test::synthetic_photo(test::Scene::backlit, 64, 48, 3));
    const fs::path dump = scratch() / "dump";
    fs::remove_all(dump);
    const std::string hdr = path_of("backlit.hdr");
    const Run r = run({"enhance", in, path_of("backlit_out.ppm"), "--dump-dir", dump.string(), "--hdr-out", hdr});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("gate=accepted") != std::string::npos);
    CHECK(fs::exists(path_of("backlit_out.ppm")));
    const auto decoded = decode_image_file(path_of("backlit_out.ppm"));
    CHECK(decoded.image.width() == 64);
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dump))
        ++n;
    CHECK(n == 7 + 2 * 5);
    const auto bytes = read_file_bytes(hdr);
    const std::string head(bytes.begin(), bytes.begin() + 10);
    CHECK(head == "#?RADIANCE");
}

TEST_CASE("config precedence: defaults < file < flags")
{
    const std::string in = write_sample("prec.png", test::synthetic_photo(test::Scene::portrait, 40, 40, 6));
    const std::string cfg = path_of("prec.cfg");
    {
        std::ofstream f(cfg);
        f << "levels = 2\n";
    }
    // the file alone yields an invalid level count; the flag overrides it
    CHECK(run({"enhance", in, path_of("prec_out.png"), "--config", cfg}).code == 1);
    CHECK(run({"enhance", in, path_of("prec_out.png"), "--config", cfg, "--levels", "5"}).code == 0);

    {
        std::ofstream f(cfg);
        f << "lambda = 0.5\n";
    }
    const Run from_file = run({"enhance", in, path_of("p1.png"), "--config", cfg});
    const Run explicit_flag = run({"enhance", in, path_of("p2.png"), "--lambda", "0.5"});
    const Run flag_wins = run({"enhance", in, path_of("p3.png"), "--config", cfg, "--lambda", "1"});
    const Run defaults = run({"enhance", in, path_of("p4.png")});
    CHECK(from_file.out == explicit_flag.out);
    CHECK(flag_wins.out == defaults.out);
    CHECK(from_file.out != defaults.out);
}

TEST_CASE("decompose dumps four planes")
{
    const std::string in = write_sample("dec.png", test::synthetic_photo(test::Scene::landscape, 32, 24, 7));
    const fs::path dir = scratch() / "dec";
    fs::remove_all(dir);
    const Run r = run({"decompose", in, "--dump-dir", dir.string()});
    CHECK(r.code == 0);
    for (const char* name : {"I.png", "R.png", "BM.png", "DM.png"})
        CHECK(fs::exists(dir / name));
    CHECK(run({"decompose", in}).code == 1);
}

TEST_CASE("the installed binary reports exit codes")
{
    const std::string a = write_sample("bin.png", test::synthetic_photo(test::Scene::indoor, 24, 24, 9));
    const std::string bin = SIHDR_CLI_PATH;
    const int ok = std::system((bin + " metrics " + a + " " + a + " > /dev/null").c_str());
    CHECK(WEXITSTATUS(ok) == 0);
    const int bad = std::system((bin + " enhance " + a + " x.png --nope > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad) == 1);
    const std::string dark = write_sample("bin_dark.png", test::patch_image(24, 24, 0.03, 0.9, 0.02, 1));
    const int declined = std::system((bin + " enhance " + dark + " " + path_of("bin_dark_out.png") + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(declined) == 2);
}
