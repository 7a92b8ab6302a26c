#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

using namespace pcdga;

namespace {

const std::string kCorpus = std::string(PCDGA_SOURCE_DIR) + "/corpus";

std::string entry_name(const std::map<std::string, std::string>& files)
{
    return parse_entry(files).name;
}

}  // namespace

TEST_CASE("built-in corpus")
{
    auto names = corpus_names();
    CHECK(names.size() == 34);
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
    CHECK(get("even_sphere_trivial_vs_id(1)").name == "even_sphere_trivial_vs_id_n1");
    CHECK(get("s1_bundle(2,3,1)").name == "s1_bundle_k2_l3_n1");
    CHECK(get("connected_sum_f1_vs_f2(Q(i))").field == Field::QI);
    CHECK_THROWS_AS(get("no_such_entry"), CorpusError);
}

TEST_CASE("the corpus directory matches the builders")
{
    std::map<std::string, std::map<std::string, std::string>> built;
    for (const auto& files : corpus_builders::all())
        built[entry_name(files)] = files;
    auto disk = load_corpus_dir(kCorpus);
    CHECK(disk.size() == built.size());
    for (const auto& e : disk) {
        INFO(e.name);
        REQUIRE(built.count(e.name));
        CHECK(e.files == built[e.name]);
    }
}

TEST_CASE("export then load round trip")
{
    auto dir = std::filesystem::temp_directory_path() / "pcdga_corpus_roundtrip";
    std::filesystem::remove_all(dir);
    export_corpus(dir.string());
    std::map<std::string, std::map<std::string, std::string>> orig;
    for (const auto& e : all_entries())
        orig[e.name] = e.files;
    auto back = load_corpus_dir(dir.string());
    REQUIRE(back.size() == orig.size());
    for (const auto& e : back) {
        REQUIRE(orig.count(e.name));
        CHECK(e.files == orig[e.name]);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("corpus model files are canonical")
{
    for (const auto& e : all_entries())
        for (const auto& [file, text] : e.files) {
            if (!file.ends_with(".model"))
                continue;
            INFO(e.name << "/" << file);
            auto p = parse_model(text);
            CHECK(serialize_model(p.model, p.cap) == text);
            auto again = parse_model(serialize_model(p.model, p.cap));
            CHECK(again.model.stages() == p.model.stages());
            CHECK(again.model.fiber_mask() == p.model.fiber_mask());
        }
}

TEST_CASE("every corpus expectation holds")
{
    for (const auto& e : all_entries()) {
        auto r = run_entry(e);
        INFO(r.str());
        CHECK(r.ok());
        CHECK_FALSE(r.error.has_value());
        bool has_consistency = false;
        for (const auto& x : r.results)
            if (x.key.starts_with("consistency."))
                has_consistency = true;
        if (!e.certificates.empty())
            CHECK(has_consistency);
    }
}

TEST_CASE("entry file errors")
{
    CHECK_THROWS_AS(parse_entry({}), CorpusError);
    CHECK_THROWS(parse_entry({{"entry.ini", "[entry]\nname = x\nbogus = 1\n"}}));
    CHECK_THROWS(parse_entry({{"entry.ini", "[entry]\nname x\n"}}));
    CHECK_THROWS_AS(parse_entry({{"entry.ini", "[entry]\nname = broken\na = missing.model\n"}}), CorpusError);
    auto failing = parse_entry({{"entry.ini", "[entry]\nname = wrong\na = s.model\n[expect]\nbound_N.s.model = 5\n"},
                                {"s.model", "[algebra]\nx 2\ny 3\nxb 1\n[differential]\ny = x^2\nxb = x\n"
                                            "[relative]\nbase = x, y\nfiber = xb\n"}});
    auto r = run_entry(failing);
    CHECK_FALSE(r.ok());
    REQUIRE(r.results.size() == 1);
    CHECK(r.results[0].actual == "1");
    CHECK(r.results[0].outcome == Outcome::Fail);
}
