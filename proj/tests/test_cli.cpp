#include "pcdga/cli.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pcdga;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(PCDGA_SOURCE_DIR) + "/corpus/" + rel; }

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("pcdga_cli_" + std::to_string(counter_++)))
    {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string str() const { return path_.string(); }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

const std::string kHopfA = corpus("hopf_vs_trivial/trivial.model");
const std::string kHopfB = corpus("hopf_vs_trivial/hopf.model");
const std::string kHopfCert = corpus("hopf_vs_trivial/eps3.cert");

}  // namespace

TEST_CASE("check on a valid model")
{
    auto r = run({"check", kHopfB});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("cap 6") != std::string::npos);
    CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("check names the offending generator")
{
    TempDir d;
    auto bad = d.write("bad.model", "[algebra]\nx 2\nu 3\nw 4\n[differential]\nu = x^2\nw = x*u\n");
    auto r = run({"check", bad});
    CHECK(r.code == kExitViolation);
    CHECK(r.out.find("d_squared at w") != std::string::npos);

    auto lin = d.write("lin.model", "[algebra]\nx 2\nv 4\nw 3\n[differential]\nw = v + x*x\n"
                                    "[relative]\nbase = x\nfiber = v, w\n");
    r = run({"check", lin});
    CHECK(r.code == kExitViolation);
    CHECK(r.out.find("linear_fiber_term at w") != std::string::npos);
}

TEST_CASE("input errors exit with code 2")
{
    TempDir d;
    CHECK(run({"check", d.str() + "/missing.model"}).code == kExitInput);
    auto r = run({"check", d.write("p.model", "[algebra]\nx two\n")});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"frobnicate"}).code == kExitInput);
    CHECK(run({"check"}).code == kExitInput);
    CHECK(run({"--field", "R", "check", kHopfB}).code == kExitInput);
    auto qi = d.write("qi.model", "[field]\nQ(i)\n[algebra]\nx 2\n");
    CHECK(run({"dist", kHopfB, qi}).code == kExitInput);
}

TEST_CASE("barcode of the even path fibration")
{
    auto r = run({"barcode", corpus("path_fibration_even_n1/path.model")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "cap 6\n0 0 inf\n2 0 1\n3 1 2\n");
}

TEST_CASE("JSON and text reports carry the same numbers")
{
    auto text = run({"dist", kHopfA, kHopfB});
    auto js = run({"--json", "dist", kHopfA, kHopfB});
    REQUIRE(text.code == kExitOk);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["report"]["value"] == "2");
    CHECK(j["report"]["cap"] == 6);
    CHECK(text.out.find("value 2") != std::string::npos);
    CHECK(text.out.find("cap 6") != std::string::npos);

    auto bt = run({"barcode", kHopfA});
    auto bj = nlohmann::json::parse(run({"--json", "barcode", kHopfA}).out);
    std::string rebuilt = "cap " + std::to_string(bj["cap"].get<int>()) + "\n";
    for (const auto& bar : bj["bars"])
        rebuilt += bar.get<std::string>() + "\n";
    CHECK(rebuilt == bt.out);

    auto ot = run({"obstruct", kHopfA, kHopfB});
    auto oj = nlohmann::json::parse(run({"--json", "obstruct", kHopfA, kHopfB}).out);
    CHECK(oj["lower_bound"] == "3");
    CHECK(ot.out.find("lower_bound 3") != std::string::npos);
}

TEST_CASE("every report states the cap")
{
    std::vector<std::vector<std::string>> cmds = {
        {"check", kHopfB},       {"theta", kHopfB},           {"cohomology", kHopfB},
        {"barcode", kHopfB},     {"dist", kHopfA, kHopfB},    {"verify", kHopfA, kHopfB, kHopfCert},
        {"bounds", kHopfB},      {"obstruct", kHopfA, kHopfB, "--eps", "1"},
    };
    for (auto c : cmds) {
        std::string name = c.front();
        INFO(name);
        auto r = run(c);
        CHECK(r.out.find("cap ") != std::string::npos);
        c.insert(c.begin(), "--json");
        auto j = nlohmann::json::parse(run(c).out);
        CHECK((j.contains("cap") || j["report"].contains("cap")));
    }
    auto capped = run({"--cap", "4", "barcode", kHopfB});
    CHECK(capped.out.rfind("cap 4\n", 0) == 0);
}

TEST_CASE("verify and obstruct exit codes")
{
    CHECK(run({"verify", kHopfA, kHopfB, kHopfCert}).code == kExitOk);
    TempDir d;
    auto text = read_file(kHopfCert);
    auto pos = text.find("epsilon = 3");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "epsilon = 1/2");
    auto r = run({"verify", kHopfA, kHopfB, d.write("small.cert", text)});
    CHECK(r.code == kExitViolation);
    CHECK(r.out.find("stage_shift") != std::string::npos);

    CHECK(run({"obstruct", kHopfA, kHopfB, "--eps", "5/2"}).code == kExitOk);
    auto f = d.write("f.model", "[algebra]\nu 3\n");
    auto g = d.write("g.model", "[algebra]\nu 3\na 4\nb 3\n[differential]\nb = a\n");
    auto fam = d.write("s.family", "[family]\nparameters = l\nnondegenerate = l\n\n[branch]\nu = l*u\n");
    CHECK(run({"obstruct", f, g, "--eps", "1/4", "--family", fam}).code == kExitInconclusive);
}

TEST_CASE("output is deterministic")
{
    auto a = run({"--json", "run-corpus"});
    auto b = run({"--json", "run-corpus"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["entries"].size() == 34);
    CHECK(run({"obstruct", kHopfA, kHopfB}).out == run({"obstruct", kHopfA, kHopfB}).out);
}

TEST_CASE("run-corpus on named entries and on a directory")
{
    auto r = run({"run-corpus", "hopf_vs_trivial", "path_fibration_odd(2)"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("2/2 entries hold") != std::string::npos);
    CHECK(run({"run-corpus", "--dir", std::string(PCDGA_SOURCE_DIR) + "/corpus"}).code == kExitOk);
    CHECK(run({"run-corpus", "nope"}).code == kExitInput);

    TempDir d;
    CHECK(run({"export-corpus", d.str()}).code == kExitOk);
    CHECK(fs::exists(fs::path(d.str()) / "hopf_vs_trivial" / "entry.ini"));
}

TEST_CASE("canonical model files survive parse and serialize")
{
    for (const auto& entry : fs::directory_iterator(std::string(PCDGA_SOURCE_DIR) + "/corpus"))
        for (const auto& f : fs::directory_iterator(entry.path())) {
            if (f.path().extension() != ".model")
                continue;
            INFO(f.path().string());
            auto text = read_file(f.path().string());
            auto p = parse_model(text);
            CHECK(serialize_model(p.model, p.cap) == text);
        }
}
