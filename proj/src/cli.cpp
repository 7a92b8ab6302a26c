#include "pcdga/cli.hpp"

#include "pcdga/corpus.hpp"
#include "pcdga/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

namespace pcdga {

namespace {

using json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    std::optional<int> cap;
    std::optional<std::string> eps_max;
    std::optional<std::string> field;
};

std::optional<Field> field_option(const Options& o)
{
    if (!o.field)
        return std::nullopt;
    try {
        return parse_field(*o.field);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

mpq_class rational_option(const std::string& s, const char* what)
{
    try {
        mpq_class q = parse_rational(s);
        if (sgn(q) < 0)
            throw std::invalid_argument("negative");
        return q;
    } catch (const std::exception&) {
        throw InputError(std::string("bad ") + what + " '" + s + "'");
    }
}

// Loads models, resolves the common cap and rebuilds each colimit with
// algebra cap = cap + 1.
struct Inputs {
    int cap = 0;
    std::vector<RelativeSullivanModel> models;
};

Inputs load_inputs(const std::vector<std::string>& files, const Options& o)
{
    Inputs in;
    std::vector<ParsedModel> parsed;
    int cap = 0;
    for (const auto& f : files) {
        parsed.push_back(load_model(f, field_option(o)));
        cap = std::max(cap, parsed.back().cap.value_or(default_cap(*parsed.back().model.algebra())));
    }
    in.cap = o.cap.value_or(cap);
    if (in.cap < 0)
        throw InputError("cap must be non-negative");
    for (auto& p : parsed)
        in.models.push_back(p.model.with_cap(in.cap + 1));
    return in;
}

PersistenceCDGA theta_of(const RelativeSullivanModel& m)
{
    try {
        return PersistenceCDGA(m);
    } catch (const StageEscape& e) {
        throw InputError(e.what());
    }
}

json check_json(const std::string& name, const CheckResult& r)
{
    json j;
    j["name"] = name;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["kind"] = r.kind;
        j["generator"] = r.generator;
        j["detail"] = r.detail;
    }
    return j;
}

void emit(const Options& o, std::ostream& out, const json& j, const std::string& text)
{
    if (o.json)
        out << j.dump(2) << "\n";
    else
        out << text;
}

std::vector<std::string> bar_lines(const Barcode& b)
{
    std::vector<std::string> v;
    std::string s = serialize(b);
    std::size_t start = 0;
    while (start < s.size()) {
        auto end = s.find('\n', start);
        v.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return v;
}

int cmd_check(const std::string& file, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({file}, o);
    const auto& m = in.models.front();
    std::vector<std::pair<std::string, CheckResult>> checks;
    checks.emplace_back("d_squared", check_d_squared(*m.algebra()));
    checks.emplace_back("minimality", verify_minimality(m));
    try {
        PersistenceCDGA p(m);
        checks.emplace_back("stage_closure", CheckResult::pass());
    } catch (const StageEscape& e) {
        checks.emplace_back("stage_closure", CheckResult::fail("stage", "", e.what()));
    }
    bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.ok; });
    json j;
    j["command"] = "check";
    j["file"] = file;
    j["field"] = field_name(m.algebra()->field());
    j["cap"] = in.cap;
    j["checks"] = json::array();
    std::string text = "file " + file + "\nfield " + field_name(m.algebra()->field()) + "\ncap " +
                       std::to_string(in.cap) + "\n";
    for (const auto& [name, r] : checks) {
        j["checks"].push_back(check_json(name, r));
        text += name + ": " + (r.ok ? std::string("ok") : r.str()) + "\n";
    }
    j["ok"] = ok;
    text += ok ? "all checks passed\n" : "check failed\n";
    emit(o, out, j, text);
    return ok ? kExitOk : kExitViolation;
}

int cmd_theta(const std::string& file, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({file}, o);
    PersistenceCDGA p = theta_of(in.models.front());
    const FreeCDGA& a = *p.colimit();
    json j;
    j["command"] = "theta";
    j["file"] = file;
    j["cap"] = in.cap;
    j["N"] = p.N();
    j["truncated"] = p.truncated() ? json(*p.truncated()) : json(nullptr);
    j["minimal"] = p.minimality().ok;
    j["stages"] = json::array();
    std::string text = "file " + file + "\ncap " + std::to_string(in.cap) + "\nN " + std::to_string(p.N()) + "\n";
    if (p.truncated())
        text += "truncated at stage " + std::to_string(*p.truncated()) + "\n";
    text += std::string("minimal ") + (p.minimality().ok ? "yes" : "no: " + p.minimality().str()) + "\n";
    for (int s = 0; s <= p.N(); ++s) {
        std::vector<std::string> added;
        for (GenId g = 0; g < a.size(); ++g)
            if (p.staging()[g] == s)
                added.push_back(a.gen(g).name);
        if (s > 0 && added.empty())
            continue;
        json st;
        st["stage"] = s;
        st["generators"] = added;
        j["stages"].push_back(st);
        text += "stage " + std::to_string(s) + ":";
        for (const auto& n : added)
            text += " " + n;
        text += "\n";
    }
    emit(o, out, j, text);
    return kExitOk;
}

int cmd_cohomology(const std::string& file, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({file}, o);
    PersistenceCDGA p = theta_of(in.models.front());
    ThetaHomology th(p, in.cap);
    json j;
    j["command"] = "cohomology";
    j["file"] = file;
    j["cap"] = in.cap;
    j["stages"] = json::array();
    std::string text = "file " + file + "\ncap " + std::to_string(in.cap) + "\n";
    for (int s = 0; s <= p.last_stage(); ++s) {
        json st;
        st["stage"] = s;
        st["H"] = json::array();
        st["HQ"] = json::array();
        std::string h, hq;
        for (int n = 0; n <= in.cap; ++n) {
            auto dh = th.h_module().dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
            auto dq = th.hq_module().dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
            st["H"].push_back(dh);
            st["HQ"].push_back(dq);
            h += " " + std::to_string(dh);
            hq += " " + std::to_string(dq);
        }
        j["stages"].push_back(st);
        text += "stage " + std::to_string(s) + " H:" + h + " | HQ:" + hq + "\n";
    }
    const auto& hc = th.H(p.last_stage());
    json reps = json::array();
    text += "colimit representatives:\n";
    for (int n = 0; n <= in.cap; ++n)
        for (const auto& r : hc.reps(n)) {
            std::string e = hc.algebra()->str(r);
            reps.push_back({{"degree", n}, {"element", e}});
            text += "  " + std::to_string(n) + ": " + e + "\n";
        }
    j["colimit_representatives"] = reps;
    emit(o, out, j, text);
    return kExitOk;
}

int cmd_barcode(const std::string& file, bool linear, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({file}, o);
    PersistenceCDGA p = theta_of(in.models.front());
    ThetaHomology th(p, in.cap);
    Barcode b = barcode(linear ? th.hq_module() : th.h_module());
    json j;
    j["command"] = "barcode";
    j["file"] = file;
    j["module"] = linear ? "HQ" : "H";
    j["cap"] = in.cap;
    j["truncated"] = p.truncated().has_value();
    j["bars"] = bar_lines(b);
    std::string text = "cap " + std::to_string(in.cap) + "\n";
    if (p.truncated())
        text += "truncated at stage " + std::to_string(*p.truncated()) + "\n";
    text += serialize(b);
    emit(o, out, j, text);
    return kExitOk;
}

json distance_json(const DistanceReport& r)
{
    json j;
    j["value"] = r.value.str();
    j["module_level"] = r.module_level;
    j["truncated"] = r.truncated;
    j["cap"] = r.cap;
    j["degrees"] = json::array();
    for (const auto& d : r.degrees) {
        json m = json::array();
        for (const auto& [a, b] : d.matching)
            m.push_back({a >= 0 ? interval_str(d.a[static_cast<std::size_t>(a)]) : "diag",
                         b >= 0 ? interval_str(d.b[static_cast<std::size_t>(b)]) : "diag"});
        j["degrees"].push_back({{"degree", d.degree}, {"value", d.value.str()}, {"matching", m}});
    }
    return j;
}

int cmd_dist(const std::string& fa, const std::string& fb, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({fa, fb}, o);
    auto r = d_cohi_module(theta_of(in.models[0]), theta_of(in.models[1]), in.cap);
    json j;
    j["command"] = "dist";
    j["a"] = fa;
    j["b"] = fb;
    j["report"] = distance_json(r);
    emit(o, out, j, r.str());
    return kExitOk;
}

int cmd_verify(const std::string& fa, const std::string& fb, const std::string& fc, const Options& o,
               std::ostream& out)
{
    Inputs in = load_inputs({fa, fb}, o);
    PersistenceCDGA pf = theta_of(in.models[0]), pg = theta_of(in.models[1]);
    auto c = load_certificate(fc, pf, pg);
    auto r = verify_certificate(c, pf, pg);
    json j;
    j["command"] = "verify";
    j["a"] = fa;
    j["b"] = fb;
    j["certificate"] = fc;
    j["epsilon"] = rational_str(c.epsilon);
    j["cap"] = in.cap;
    j["checks"] = json::array();
    for (const auto& ch : r.checks) {
        json cj = check_json(ch.name, ch.result);
        cj["index"] = ch.index;
        j["checks"].push_back(cj);
    }
    j["verified"] = r.ok();
    emit(o, out, j, "epsilon " + rational_str(c.epsilon) + "\ncap " + std::to_string(in.cap) + "\n" + r.str());
    return r.ok() ? kExitOk : kExitViolation;
}

json obstruction_json(const ObstructionReport& r)
{
    json j;
    j["epsilon"] = rational_str(r.epsilon);
    j["cap"] = r.cap;
    j["truncated"] = r.truncated;
    j["verdict"] = r.obstructed() ? "Obstructed" : "NoObstructionFound";
    j["firings"] = json::array();
    for (const auto& f : r.firings)
        j["firings"].push_back({{"mechanism", mechanism_name(f.mechanism)},
                                {"direction", f.forward ? "F->G->F" : "G->F->G"},
                                {"degree", f.degree},
                                {"stages", {f.a, f.b, f.c}},
                                {"detail", f.detail}});
    j["inconclusive"] = r.inconclusive;
    return j;
}

int cmd_obstruct(const std::string& fa, const std::string& fb, const std::optional<std::string>& eps,
                 const std::optional<std::string>& family_file, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs({fa, fb}, o);
    PersistenceCDGA pf = theta_of(in.models[0]), pg = theta_of(in.models[1]);
    std::optional<MapFamily> fam;
    if (family_file) {
        fam = load_family(*family_file, pf.stage(0).alg);
        if (auto v = fam->verify(); !v)
            throw InputError("family: " + v.str());
    }
    ObstructionEngine engine(pf, pg, in.cap, fam ? &*fam : nullptr);
    json j;
    j["command"] = "obstruct";
    j["a"] = fa;
    j["b"] = fb;
    if (eps) {
        auto r = engine.obstruct(rational_option(*eps, "epsilon"));
        j["report"] = obstruction_json(r);
        emit(o, out, j, r.str());
        return !r.obstructed() && !r.inconclusive.empty() ? kExitInconclusive : kExitOk;
    }
    mpq_class eps_max = o.eps_max ? rational_option(*o.eps_max, "--eps-max") : mpq_class(std::max(pf.N(), pg.N()) + 1);
    auto r = engine.lower_bound_scan(eps_max);
    j["lower_bound"] = r.value.str();
    j["eps_max"] = rational_str(r.eps_max);
    j["cap"] = r.cap;
    j["truncated"] = r.truncated;
    j["scans"] = json::array();
    bool any_inconclusive = false;
    for (const auto& s : r.scans) {
        j["scans"].push_back(obstruction_json(s));
        any_inconclusive = any_inconclusive || (!s.obstructed() && !s.inconclusive.empty());
    }
    emit(o, out, j, r.str());
    return r.value == HalfValue::halves(0) && any_inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_bounds(const std::vector<std::string>& files, const Options& o, std::ostream& out)
{
    Inputs in = load_inputs(files, o);
    json j;
    j["command"] = "bounds";
    j["cap"] = in.cap;
    j["models"] = json::array();
    std::string text = "cap " + std::to_string(in.cap) + "\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto& m = in.models[i];
        json mj;
        mj["file"] = files[i];
        mj["bound_N"] = bound_N(m);
        text += files[i] + ": bound_N " + std::to_string(bound_N(m));
        try {
            std::string b = rational_str(bound_basepoint(m, in.cap));
            mj["bound_basepoint"] = b;
            text += ", bound_basepoint " + b;
        } catch (const std::invalid_argument&) {
            mj["bound_basepoint"] = nullptr;
        }
        text += "\n";
        j["models"].push_back(mj);
    }
    if (files.size() == 2) {
        auto ya = in.models[0].base_algebra();
        auto yb = in.models[1].base_algebra();
        std::string wht = std::to_string(bound_wht(*ya, *yb));
        std::string path = rational_str(bound_path_fibration(*ya, *yb));
        j["bound_wht"] = wht;
        j["bound_path_fibration"] = path;
        text += "bound_wht " + wht + " (if both maps are W.H.T. fibrations)\n";
        text += "bound_path_fibration " + path + " (if both are path fibrations)\n";
    }
    emit(o, out, j, text);
    return kExitOk;
}

int cmd_run_corpus(const std::optional<std::string>& dir, const std::vector<std::string>& only, const Options& o,
                   std::ostream& out)
{
    std::vector<CorpusEntry> entries = dir ? load_corpus_dir(*dir) : all_entries();
    if (!only.empty()) {
        std::vector<CorpusEntry> keep;
        for (const auto& name : only) {
            auto it = std::find_if(entries.begin(), entries.end(),
                                   [&](const CorpusEntry& e) { return e.name == name || e.alias == name; });
            if (it == entries.end())
                throw InputError("unknown corpus entry '" + name + "'");
            keep.push_back(*it);
        }
        entries = std::move(keep);
    }
    std::vector<EntryResult> results(entries.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < entries.size(); i = next++)
                results[i] = run_entry(entries[i]);
        });
    for (auto& t : pool)
        t.join();
    json j;
    j["command"] = "run-corpus";
    j["entries"] = json::array();
    std::string text;
    std::size_t failed = 0;
    for (const auto& r : results) {
        failed += r.ok() ? 0 : 1;
        json ej;
        ej["name"] = r.name;
        ej["cap"] = r.cap;
        ej["ok"] = r.ok();
        if (r.error)
            ej["error"] = *r.error;
        ej["expectations"] = json::array();
        for (const auto& x : r.results)
            ej["expectations"].push_back(
                {{"key", x.key}, {"expected", x.expected}, {"actual", x.actual}, {"outcome", outcome_name(x.outcome)}});
        j["entries"].push_back(ej);
        text += r.str();
    }
    j["failed"] = failed;
    j["ok"] = failed == 0;
    text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " entries hold\n";
    emit(o, out, j, text);
    return failed == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Persistence CDGA toolkit: models, barcodes, distances and interleaving certificates", "pcdga"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "structured output");
    app.add_option("--cap", o.cap, "cohomology degree cap (default: largest generator degree + 3)");
    app.add_option("--eps-max", o.eps_max, "largest epsilon scanned by obstruct");
    app.add_option("--field", o.field, "override the coefficient field: Q or Q(i)");

    std::string fa, fb, fc;
    std::vector<std::string> files;
    std::optional<std::string> eps, family, dir;
    std::vector<std::string> only;
    bool linear = false;

    auto* check = app.add_subcommand("check", "d^2, minimality and stage checks of a model file");
    check->add_option("file", fa)->required();
    auto* theta = app.add_subcommand("theta", "stages of the persistence CDGA");
    theta->add_option("file", fa)->required();
    auto* coh = app.add_subcommand("cohomology", "stage-wise dimensions of H and H(Q)");
    coh->add_option("file", fa)->required();
    auto* bar = app.add_subcommand("barcode", "barcode of the cohomology module");
    bar->add_option("file", fa)->required();
    bar->add_flag("--linear", linear, "barcode of H(Q) instead of H");
    auto* dist = app.add_subcommand("dist", "module-level cohomology interleaving distance");
    dist->add_option("a", fa)->required();
    dist->add_option("b", fb)->required();
    auto* verify = app.add_subcommand("verify", "check an interleaving certificate");
    verify->add_option("a", fa)->required();
    verify->add_option("b", fb)->required();
    verify->add_option("certificate", fc)->required();
    auto* obs = app.add_subcommand("obstruct", "obstructions at one epsilon or a lower-bound scan");
    obs->add_option("a", fa)->required();
    obs->add_option("b", fb)->required();
    obs->add_option("--eps", eps, "single epsilon instead of a scan");
    obs->add_option("--family", family, "trusted automorphism family of the common stage-0 algebra");
    auto* bounds = app.add_subcommand("bounds", "closed-form upper bounds");
    bounds->add_option("files", files)->required()->expected(1, 2);
    auto* corpus = app.add_subcommand("run-corpus", "check every corpus expectation");
    corpus->add_option("--dir", dir, "corpus directory (default: built-in entries)");
    corpus->add_option("entries", only, "restrict to these entries");
    auto* exp = app.add_subcommand("export-corpus", "write the built-in corpus to a directory");
    exp->add_option("dir", fa)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (check->parsed())
            return cmd_check(fa, o, out);
        if (theta->parsed())
            return cmd_theta(fa, o, out);
        if (coh->parsed())
            return cmd_cohomology(fa, o, out);
        if (bar->parsed())
            return cmd_barcode(fa, linear, o, out);
        if (dist->parsed())
            return cmd_dist(fa, fb, o, out);
        if (verify->parsed())
            return cmd_verify(fa, fb, fc, o, out);
        if (obs->parsed())
            return cmd_obstruct(fa, fb, eps, family, o, out);
        if (bounds->parsed())
            return cmd_bounds(files, o, out);
        if (corpus->parsed())
            return cmd_run_corpus(dir, only, o, out);
        if (exp->parsed()) {
            export_corpus(fa);
            out << "wrote " << corpus_names().size() << " entries to " << fa << "\n";
            return kExitOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CorpusError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const FieldMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace pcdga
