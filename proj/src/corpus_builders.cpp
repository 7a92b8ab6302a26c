#include "pcdga/corpus.hpp"
#include "pcdga/parse.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace pcdga::corpus_builders {

namespace {

using Files = std::map<std::string, std::string>;
using Gens = std::vector<std::pair<std::string, int>>;
using Lines = std::vector<std::string>;

struct Ini {
    std::string name;
    std::string alias;
    std::string note;
    std::string a;
    std::string b;
    std::string field;
    std::string eps_max;
    std::string family;
    Lines certificates;
    std::vector<std::pair<std::string, std::string>> expect;

    std::string str() const
    {
        std::string s = "[entry]\nname = " + name + "\n";
        if (!alias.empty())
            s += "alias = " + alias + "\n";
        s += "note = " + note + "\na = " + a + "\n";
        if (!b.empty())
            s += "b = " + b + "\n";
        if (!field.empty())
            s += "field = " + field + "\n";
        if (!eps_max.empty())
            s += "eps_max = " + eps_max + "\n";
        if (!family.empty())
            s += "family = " + family + "\n";
        if (!certificates.empty()) {
            s += "\n[certificates]\n";
            for (const auto& c : certificates)
                s += c + "\n";
        }
        s += "\n[expect]\n";
        for (const auto& [k, v] : expect)
            s += k + " = " + v + "\n";
        return s;
    }
};

// Model text in canonical form (parsed once and re-serialized).
std::string model(const Gens& gens, const Lines& diff, const Lines& base, const Lines& fiber,
                  const std::string& extra = "")
{
    std::string s = "[field]\nQ\n\n[algebra]\n";
    for (const auto& [n, d] : gens)
        s += n + " " + std::to_string(d) + "\n";
    s += "\n[differential]\n";
    for (const auto& l : diff)
        s += l + "\n";
    auto join = [](const Lines& v) {
        std::string out;
        for (const auto& x : v)
            out += (out.empty() ? "" : ", ") + x;
        return out;
    };
    s += "\n[relative]\nbase = " + join(base) + "\nfiber = " + join(fiber) + "\n" + extra;
    auto parsed = parse_model(s);
    return serialize_model(parsed.model, parsed.cap);
}

std::string cert(const std::string& eps, const Lines& phi, const Lines& psi, const Lines& hf = {},
                 const Lines& hg = {})
{
    std::string s = "[certificate]\nepsilon = " + eps + "\n";
    auto section = [&](const char* name, const Lines& lines) {
        if (lines.empty())
            return;
        s += std::string("\n[") + name + "]\n";
        for (const auto& l : lines)
            s += l + "\n";
    };
    section("phi", phi);
    section("psi", psi);
    section("homotopy_F", hf);
    section("homotopy_G", hg);
    return s;
}

std::string q(const mpq_class& v)
{
    return rational_str(v);
}

Files finish(const Ini& ini, Files files)
{
    files["entry.ini"] = ini.str();
    return files;
}

std::string empty_model()
{
    return model({}, {}, {}, {});
}

// ∧(x, y), dy = x²: a model of S^{2n}.
std::string even_sphere(int n)
{
    return model({{"x", 2 * n}, {"y", 4 * n - 1}}, {"y = x^2"}, {"x", "y"}, {});
}

Files hopf_vs_trivial()
{
    Files f;
    f["trivial.model"] = model({{"x", 2}, {"y", 3}, {"xb", 1}, {"yb", 2}, {"yt", 3}},
                               {"y = x^2", "xb = x", "yb = y - x*xb"}, {"x", "y"}, {"xb", "yb", "yt"});
    f["hopf.model"] = model({{"x", 2}, {"y", 3}, {"xb", 1}}, {"y = x^2", "xb = x"}, {"x", "y"}, {"xb"});
    f["eps3.cert"] = cert("3", {"A.yt = B.y - B.x*B.xb"}, {"B.y = A.yt"},
                          {"A.xb = A.xb*t", "A.x = A.x*t - A.xb*dt", "A.yb = A.yb*t^2",
                           "A.y = A.y*t^2 + 2*A.yb*t*dt"},
                          {"B.xb = B.xb*t", "B.x = B.x*t - B.xb*dt", "B.y = B.y - B.x*B.xb + B.x*B.xb*t^2"});
    Ini ini;
    ini.name = "hopf_vs_trivial";
    ini.note = "trivial map versus the Hopf map S^3 -> S^2";
    ini.a = "trivial.model";
    ini.b = "hopf.model";
    ini.eps_max = "4";
    ini.certificates = {"eps3.cert"};
    ini.expect = {{"barcode.trivial.model", "0 0 inf; 2 0 1; 3 1 2; 3 3 inf"},
                  {"barcode.hopf.model", "0 0 inf; 2 0 1; 3 1 inf"},
                  {"d_cohi", "2"},
                  {"fires", "5/2 ZeroFactorHQ"},
                  {"lower_bound", "3"},
                  {"upper_bound", "3"},
                  {"d_ihc", "3"}};
    return finish(ini, f);
}

Files cp2_inclusion_vs_id()
{
    Files f;
    f["inclusion.model"] = model({{"x", 2}, {"z", 5}, {"v", 3}, {"w", 4}}, {"z = x^3", "v = x^2", "w = x*v - z"},
                                 {"x", "z"}, {"v", "w"});
    f["id.model"] = even_sphere(1);
    f["eps3.cert"] = cert("3", {"A.x = B.x", "A.z = B.x*B.y", "A.v = B.y"}, {"B.x = A.x", "B.y = A.v"},
                          {"A.z = A.z*t + A.x*A.v - A.x*A.v*t - A.w*dt", "A.w = A.w*t"});
    Ini ini;
    ini.name = "cp2_inclusion_vs_id";
    ini.note = "inclusion S^2 -> CP^2 versus the identity of S^2";
    ini.a = "inclusion.model";
    ini.b = "id.model";
    ini.eps_max = "4";
    ini.certificates = {"eps3.cert"};
    ini.expect = {{"barcode.inclusion.model", "0 0 inf; 2 0 inf; 4 0 3; 5 3 4; 7 3 4"},
                  {"bound_N.inclusion.model", "4"},
                  {"d_cohi", "3/2"},
                  {"fires", "5/2 NilpotentFactor"},
                  {"lower_bound", "3"},
                  {"upper_bound", "3"},
                  {"d_ihc", "3"}};
    return finish(ini, f);
}

Files even_sphere_trivial_vs_id(int n)
{
    Files f;
    f["trivial.model"] = model({{"x", 2 * n}, {"y", 4 * n - 1}, {"z", 2 * n - 1}, {"w", 4 * n - 2}, {"xp", 2 * n},
                                {"yp", 4 * n - 1}},
                               {"y = x^2", "z = x", "w = x*z - y", "yp = xp^2"}, {"x", "y"}, {"z", "w", "xp", "yp"});
    f["id.model"] = even_sphere(n);
    int e = 4 * n - 1;
    f[fmt::format("eps{}.cert", e)] =
        cert(std::to_string(e), {"A.xp = B.x", "A.yp = B.y"}, {"B.x = A.xp", "B.y = A.yp"},
             {"A.z = A.z*t", "A.x = A.x*t - A.z*dt", "A.w = A.w*t",
              "A.y = A.y*t + A.x*A.z*t^2 - A.x*A.z*t - A.w*dt"});
    Ini ini;
    ini.name = fmt::format("even_sphere_trivial_vs_id_n{}", n);
    ini.alias = fmt::format("even_sphere_trivial_vs_id({})", n);
    ini.note = fmt::format("trivial map versus the identity of S^{}", 2 * n);
    ini.a = "trivial.model";
    ini.b = "id.model";
    ini.eps_max = std::to_string(e + 1);
    ini.certificates = {fmt::format("eps{}.cert", e)};
    ini.expect = {{"bound_N.trivial.model", std::to_string(e)},
                  {"d_cohi", std::to_string(2 * n)},
                  {"fires", fmt::format("{}/2 NilpotentFactor", 2 * e - 1)},
                  {"lower_bound", std::to_string(e)},
                  {"upper_bound", std::to_string(e)},
                  {"d_ihc", std::to_string(e)}};
    return finish(ini, f);
}

Files odd_sphere_trivial_vs_id(int n)
{
    Files f;
    int e = 2 * n + 1;
    f["trivial.model"] = model({{"x", e}, {"y", 2 * n}, {"z", e}}, {"y = x"}, {"x"}, {"y", "z"});
    f["id.model"] = model({{"x", e}}, {}, {"x"}, {});
    f[fmt::format("eps{}.cert", e)] = cert(std::to_string(e), {"A.z = B.x"}, {"B.x = A.z"},
                                           {"A.x = A.x*t + A.y*dt", "A.y = A.y*t"});
    Ini ini;
    ini.name = fmt::format("odd_sphere_trivial_vs_id_n{}", n);
    ini.alias = fmt::format("odd_sphere_trivial_vs_id({})", n);
    ini.note = fmt::format("trivial map versus the identity of S^{}", e);
    ini.a = "trivial.model";
    ini.b = "id.model";
    ini.eps_max = std::to_string(e + 1);
    ini.certificates = {fmt::format("eps{}.cert", e)};
    ini.expect = {{"bound_N.trivial.model", std::to_string(e)},
                  {"d_cohi", std::to_string(e)},
                  {"fires", fmt::format("{}/2 ZeroFactorH", 2 * e - 1)},
                  {"lower_bound", std::to_string(e)},
                  {"upper_bound", std::to_string(e)},
                  {"d_ihc", std::to_string(e)}};
    return finish(ini, f);
}

Files basepoint_inclusion(const std::string& y)
{
    Files f;
    Lines h;
    if (y == "S2") {
        f["y.model"] = model({{"x", 2}, {"y", 3}, {"xb", 1}, {"yb", 2}}, {"y = x^2", "xb = x", "yb = y - x*xb"},
                             {"x", "y"}, {"xb", "yb"});
        h = {"A.xb = A.xb*t", "A.x = A.x*t - A.xb*dt", "A.yb = A.yb*t",
             "A.y = A.y*t + A.x*A.xb*t^2 - A.x*A.xb*t + A.yb*dt"};
    } else {
        f["y.model"] = model({{"e", 3}, {"eb", 2}}, {"eb = e"}, {"e"}, {"eb"});
        h = {"A.eb = A.eb*t", "A.e = A.e*t + A.eb*dt"};
    }
    f["point.model"] = empty_model();
    f["eps1.cert"] = cert("1", {}, {}, h);
    Ini ini;
    ini.name = "basepoint_inclusion_" + y;
    ini.alias = "basepoint_inclusion(" + y + ")";
    ini.note = "inclusion of the base point of " + y + " versus the identity of a point";
    ini.a = "y.model";
    ini.b = "point.model";
    ini.eps_max = "2";
    ini.certificates = {"eps1.cert"};
    ini.expect = {{"bound_N.y.model", "2"},
                  {"bound_basepoint.y.model", "1"},
                  {"fires", "1/2 ZeroFactorHQ"},
                  {"lower_bound", "1"},
                  {"upper_bound", "1"},
                  {"d_ihc", "1"}};
    return finish(ini, f);
}

Files path_fibration_even(int n)
{
    Files f;
    f["path.model"] = model({{"x", 2 * n}, {"y", 4 * n - 1}, {"z", 2 * n - 1}, {"w", 4 * n - 2}},
                            {"y = x^2", "z = x", "w = x*z - y"}, {"x", "y"}, {"z", "w"});
    Ini ini;
    ini.name = fmt::format("path_fibration_even_n{}", n);
    ini.alias = fmt::format("path_fibration_even({})", n);
    ini.note = fmt::format("path fibration over S^{}", 2 * n);
    ini.a = "path.model";
    ini.expect = {{"barcode.path.model",
                   fmt::format("0 0 inf; {} 0 {}; {} {} {}", 2 * n, 2 * n - 1, 4 * n - 1, 2 * n - 1, 4 * n - 2)},
                  {"bound_N.path.model", std::to_string(4 * n - 2)}};
    return finish(ini, f);
}

Files path_fibration_odd(int n)
{
    Files f;
    Ini ini;
    if (n == 1) {
        // S^1 would need a degree-0 fiber generator; its colimit is acyclic.
        f["path.model"] = empty_model();
        ini.expect = {{"barcode.path.model", "0 0 inf"}};
    } else {
        f["path.model"] = model({{"x", 2 * n - 1}, {"z", 2 * n - 2}}, {"z = x"}, {"x"}, {"z"});
        ini.expect = {{"barcode.path.model", fmt::format("0 0 inf; {} 0 {}", 2 * n - 1, 2 * n - 2)},
                      {"bound_N.path.model", std::to_string(2 * n - 2)}};
    }
    ini.name = fmt::format("path_fibration_odd_n{}", n);
    ini.alias = fmt::format("path_fibration_odd({})", n);
    ini.note = fmt::format("path fibration over S^{}", 2 * n - 1);
    ini.a = "path.model";
    return finish(ini, f);
}

Gens connected_sum_gens(const std::string& yb)
{
    return {{"x1", 2}, {"x2", 2}, {"y1", 3}, {"y2", 3}, {"xb1", 1}, {"xb2", 1}, {yb, 2}};
}

Files connected_sum(bool gaussian)
{
    Files f;
    Lines base_diff = {"y1 = x1^2 + x2^2", "y2 = x1*x2", "xb1 = x1", "xb2 = x2"};
    Lines d1 = base_diff, d2 = base_diff;
    d1.push_back("yb1 = y2 - x1*xb2");
    d2.push_back("yb2 = y1 - x1*xb1 - x2*xb2");
    Lines base = {"x1", "x2", "y1", "y2"};
    f["f1.model"] = model(connected_sum_gens("yb1"), d1, base, {"xb1", "xb2", "yb1"});
    f["f2.model"] = model(connected_sum_gens("yb2"), d2, base, {"xb1", "xb2", "yb2"});
    f["automorphisms.family"] = "[family]\n"
                                "parameters = l, m\n"
                                "nondegenerate = l^2 - m^2\n"
                                "\n[branch]\n"
                                "x1 = l*x1 + m*x2\n"
                                "x2 = m*x1 + l*x2\n"
                                "y1 = (l^2 + m^2)*y1 + 4*l*m*y2\n"
                                "y2 = l*m*y1 + (l^2 + m^2)*y2\n"
                                "\n[branch]\n"
                                "x1 = l*x1 + m*x2\n"
                                "x2 = -m*x1 - l*x2\n"
                                "y1 = (l^2 + m^2)*y1 + 4*l*m*y2\n"
                                "y2 = -l*m*y1 - (l^2 + m^2)*y2\n";
    Ini ini;
    ini.a = "f1.model";
    ini.b = "f2.model";
    ini.family = "automorphisms.family";
    ini.eps_max = "1";
    if (!gaussian) {
        f["eps1.cert"] = cert("1",
                              {"A.x1 = B.x1", "A.x2 = B.x2", "A.xb1 = B.xb1", "A.xb2 = B.xb2",
                               "A.y1 = B.x1*B.xb1 + B.x2*B.xb2 + B.y2 - B.x1*B.xb2", "A.y2 = B.x1*B.xb2"},
                              {"B.x1 = A.x1", "B.x2 = A.x2", "B.xb1 = A.xb1", "B.xb2 = A.xb2",
                               "B.y1 = A.x1*A.xb1 + A.x2*A.xb2",
                               "B.y2 = A.x1*A.xb2 + A.y1 - A.x1*A.xb1 - A.x2*A.xb2"},
                              {"A.yb1 = A.yb1*t", "A.y2 = A.x1*A.xb2 + A.y2*t - A.x1*A.xb2*t + A.yb1*dt"},
                              {"B.yb2 = B.yb2*t",
                               "B.y1 = B.x1*B.xb1 + B.x2*B.xb2 + (B.y1 - B.x1*B.xb1 - B.x2*B.xb2)*t + B.yb2*dt"});
        ini.name = "connected_sum_f1_vs_f2_Q";
        ini.alias = "connected_sum_f1_vs_f2(Q)";
        ini.note = "maps S^3 -> CP^2 # -CP^2 dual to y1 and y2, over Q";
        ini.field = "Q";
        ini.certificates = {"eps1.cert"};
        ini.expect = {{"d_cohi", "0"},
                      {"fires", "1/4 RigidFamilyHQ"},
                      {"no_obstruction", "3/4"},
                      {"lower_bound", "1/2"},
                      {"upper_bound", "1"}};
    } else {
        f["iso.cert"] = cert("0",
                             {"A.x1 = B.x1 + i*B.x2", "A.x2 = i*B.x1 + B.x2", "A.xb1 = B.xb1 + i*B.xb2",
                              "A.xb2 = i*B.xb1 + B.xb2", "A.y1 = 4*i*B.y2", "A.y2 = i*B.y1",
                              "A.yb1 = i*B.yb2 - B.xb1*B.xb2"},
                             {"B.x1 = (A.x1 - i*A.x2)/2", "B.x2 = (A.x2 - i*A.x1)/2", "B.xb1 = (A.xb1 - i*A.xb2)/2",
                              "B.xb2 = (A.xb2 - i*A.xb1)/2", "B.y1 = -i*A.y2", "B.y2 = -i*A.y1/4",
                              "B.yb2 = -i*A.yb1 - i*A.xb1*A.xb2/2"});
        ini.name = "connected_sum_f1_vs_f2_QI";
        ini.alias = "connected_sum_f1_vs_f2(Q(i))";
        ini.note = "the same pair over Q(i), where the relative models become isomorphic";
        ini.field = "Q(i)";
        ini.certificates = {"iso.cert"};
        ini.expect = {{"d_cohi", "0"},
                      {"no_obstruction", "1/4"},
                      {"lower_bound", "0"},
                      {"upper_bound", "0"},
                      {"d_ihc", "0"}};
    }
    return finish(ini, f);
}

std::string xi_model(int k, int n)
{
    if (k == 0)
        return model({{"u", 2}, {"z", 1}, {"x", 2}, {"y", 2 * n + 1}}, {"z = u", fmt::format("y = x^{}", n + 1)},
                     {"u"}, {"z", "x", "y"});
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n + 1));
    return model({{"u", 2}, {"y", 2 * n + 1}}, {fmt::format("y = 1/{}*u^{}", p.get_str(), n + 1)}, {"u"}, {"y"});
}

Files s1_bundle(int k, int l, int n)
{
    Files f;
    std::string a = fmt::format("xi{}.model", k), b = fmt::format("xi{}.model", l);
    f[a] = xi_model(k, n);
    f[b] = xi_model(l, n);
    Ini ini;
    ini.name = fmt::format("s1_bundle_k{}_l{}_n{}", k, l, n);
    ini.alias = fmt::format("s1_bundle({},{},{})", k, l, n);
    ini.note = fmt::format("principal S^1-bundles over CP^{} with classes {} and {}", n, k, l);
    ini.a = a;
    ini.b = b;
    mpq_class kk(k), ll(l);
    auto pw = [n](const mpq_class& v) {
        mpq_class r(1);
        for (int j = 0; j <= n; ++j)
            r *= v;
        return r;
    };
    if (l != 0) {
        f["iso.cert"] = cert("0", {"A.u = B.u", "A.y = " + q(pw(ll / kk)) + "*B.y"},
                             {"B.u = A.u", "B.y = " + q(pw(kk / ll)) + "*A.y"});
        ini.eps_max = "1";
        ini.certificates = {"iso.cert"};
        ini.expect = {{"d_cohi", "0"}, {"lower_bound", "0"}, {"upper_bound", "0"}, {"d_ihc", "0"}};
    } else {
        f["eps2.cert"] = cert("2", {"A.u = B.x", "A.y = " + q(1 / pw(kk)) + "*B.y"},
                              {"B.x = A.u", "B.y = " + q(pw(kk)) + "*A.y"}, {},
                              {"B.z = B.z*t", "B.u = B.u*t - B.z*dt"});
        ini.eps_max = "3";
        ini.certificates = {"eps2.cert"};
        ini.expect = {{"d_cohi", "2"},
                      {"fires", "3/2 ZeroFactorH"},
                      {"lower_bound", "2"},
                      {"upper_bound", "2"},
                      {"d_ihc", "2"}};
    }
    return finish(ini, f);
}

Files hopf_vs_its_cohomology()
{
    Files f;
    f["hopf.model"] = model({{"x", 2}, {"y", 3}, {"xb", 1}}, {"y = x^2", "xb = x"}, {"x", "y"}, {"xb"});
    f["cohomology.model"] = model({{"x", 2}, {"y", 3}, {"a", 1}, {"b", 2}, {"c", 3}},
                                  {"y = x^2", "a = x", "b = y - x*a"}, {"x", "y"}, {"a", "b", "c"},
                                  "\n[stages]\na = 1\nb = 1\nc = 1\n");
    f["eps1.cert"] = cert("1", {"A.x = B.x", "A.y = B.y + B.c", "A.xb = B.a"},
                          {"B.x = A.x", "B.y = A.x*A.xb", "B.a = A.xb", "B.c = A.y - A.x*A.xb"}, {},
                          {"B.y = B.y*t + B.x*B.a - B.x*B.a*t + B.b*dt", "B.b = B.b*t",
                           "B.c = B.c + B.y - B.x*B.a - B.y*t + B.x*B.a*t - B.b*dt"});
    Ini ini;
    ini.name = "hopf_vs_its_cohomology";
    ini.note = "the Hopf persistence CDGA versus a model of its cohomology";
    ini.a = "hopf.model";
    ini.b = "cohomology.model";
    ini.eps_max = "2";
    ini.certificates = {"eps1.cert"};
    ini.expect = {{"d_cohi", "0"},
                  {"fires", "1/2 ModuleHQ"},
                  {"lower_bound", "1"},
                  {"upper_bound", "1"},
                  {"d_ihc", "1"}};
    return finish(ini, f);
}

// Truncation of the minimal model of S^3 v S^3 to generators of degree ≤ top.
std::string wedge_model(int top, const Lines& base)
{
    Gens all = {{"x", 3}, {"y", 3}, {"z", 5}, {"u", 7}, {"w", 7}};
    Lines diff_all = {"z = x*y", "u = x*z", "w = y*z"};
    Gens gens;
    Lines diff, b, fib;
    for (const auto& [name, d] : all) {
        if (d > top)
            continue;
        gens.emplace_back(name, d);
        bool in_base = std::find(base.begin(), base.end(), name) != base.end();
        (in_base ? b : fib).push_back(name);
    }
    for (const auto& l : diff_all)
        if (std::any_of(gens.begin(), gens.end(), [&](const auto& g) { return l.rfind(g.first + " ", 0) == 0; }))
            diff.push_back(l);
    return model(gens, diff, b, fib, "\n[truncated]\n" + std::to_string(top) + "\n");
}

Files wedge_id_vs_collapse()
{
    Files f;
    f["h.model"] = wedge_model(7, {"x"});
    f["g.model"] = wedge_model(7, {});
    Lines phi, psi;
    for (const char* g : {"x", "y", "z", "u", "w"}) {
        phi.push_back(fmt::format("A.{0} = B.{0}", g));
        psi.push_back(fmt::format("B.{0} = A.{0}", g));
    }
    f["eps3.cert"] = cert("3", phi, psi);
    Ini ini;
    ini.name = "wedge_s3s3_id_vs_collapse";
    ini.note = "S^3 v S^3 -> S^3 collapsing the second summand versus the constant map, truncated at stage 7";
    ini.a = "h.model";
    ini.b = "g.model";
    ini.eps_max = "4";
    ini.certificates = {"eps3.cert"};
    ini.expect = {{"truncated", "yes"},
                  {"fires", "5/2 ZeroFactorH"},
                  {"lower_bound", "3"},
                  {"upper_bound", "3"},
                  {"d_ihc", "3"}};
    return finish(ini, f);
}

Files wedge_id_vs_const(int top)
{
    Files f;
    f["id.model"] = wedge_model(top, {"x", "y", "z", "u", "w"});
    f["const.model"] = wedge_model(top, {});
    Ini ini;
    ini.name = fmt::format("wedge_s3s3_id_vs_const_t{}", top);
    ini.alias = fmt::format("wedge_s3s3_id_vs_const({})", top);
    ini.note = fmt::format("identity of S^3 v S^3 versus the constant map, truncated at stage {}", top);
    ini.a = "id.model";
    ini.b = "const.model";
    ini.eps_max = std::to_string(top + 1);
    ini.expect = {{"truncated", "yes"}, {"lower_bound", std::to_string(top)}};
    return finish(ini, f);
}

Files wht_projection_bound()
{
    Files f;
    f["proj3.model"] = model({{"a", 3}, {"b", 5}}, {}, {"a"}, {"b"});
    f["proj5.model"] = model({{"a", 3}, {"b", 5}}, {}, {"b"}, {"a"});
    f["eps5.cert"] = cert("5", {"A.a = B.a", "A.b = B.b"}, {"B.a = A.a", "B.b = A.b"});
    Ini ini;
    ini.name = "wht_projection_bound";
    ini.note = "the two projections of S^3 x S^5";
    ini.a = "proj3.model";
    ini.b = "proj5.model";
    ini.eps_max = "6";
    ini.certificates = {"eps5.cert"};
    ini.expect = {{"bound_wht", "5"},
                  {"d_cohi", "5"},
                  {"lower_bound", "5"},
                  {"upper_bound", "5"},
                  {"d_ihc", "5"}};
    return finish(ini, f);
}

Files path_fibration_bound_pair()
{
    Files f;
    f["s3.model"] = model({{"a", 3}, {"ab", 2}}, {"ab = a"}, {"a"}, {"ab"});
    f["s5.model"] = model({{"b", 5}, {"bb", 4}}, {"bb = b"}, {"b"}, {"bb"});
    f["eps2.cert"] =
        cert("2", {}, {}, {"A.ab = A.ab*t", "A.a = A.a*t + A.ab*dt"}, {"B.bb = B.bb*t", "B.b = B.b*t + B.bb*dt"});
    Ini ini;
    ini.name = "path_fibration_bound_pair";
    ini.note = "path fibrations over S^3 and S^5";
    ini.a = "s3.model";
    ini.b = "s5.model";
    ini.eps_max = "3";
    ini.certificates = {"eps2.cert"};
    ini.expect = {{"bound_path_fibration", "2"},
                  {"d_cohi", "2"},
                  {"lower_bound", "2"},
                  {"upper_bound", "2"},
                  {"d_ihc", "2"}};
    return finish(ini, f);
}

}  // namespace

std::vector<Files> all()
{
    std::vector<Files> out;
    out.push_back(hopf_vs_trivial());
    out.push_back(cp2_inclusion_vs_id());
    for (int n : {1, 2})
        out.push_back(even_sphere_trivial_vs_id(n));
    for (int n : {1, 2})
        out.push_back(odd_sphere_trivial_vs_id(n));
    out.push_back(basepoint_inclusion("S2"));
    out.push_back(basepoint_inclusion("S3"));
    for (int n : {1, 2})
        out.push_back(path_fibration_even(n));
    for (int n : {1, 2, 3})
        out.push_back(path_fibration_odd(n));
    out.push_back(connected_sum(false));
    out.push_back(connected_sum(true));
    for (int n : {1, 2}) {
        for (auto [k, l] : {std::pair{1, 2}, {1, 3}, {2, 3}})
            out.push_back(s1_bundle(k, l, n));
        for (int k : {1, 2, 3})
            out.push_back(s1_bundle(k, 0, n));
    }
    out.push_back(hopf_vs_its_cohomology());
    out.push_back(wedge_id_vs_collapse());
    for (int t : {3, 5, 7})
        out.push_back(wedge_id_vs_const(t));
    out.push_back(wht_projection_bound());
    out.push_back(path_fibration_bound_pair());
    return out;
}

}  // namespace pcdga::corpus_builders
