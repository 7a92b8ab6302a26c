#include "pcdga/corpus.hpp"
#include "pcdga/parse.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>

namespace pcdga {

namespace fs = std::filesystem;

CorpusEntry parse_entry(std::map<std::string, std::string> files)
{
    auto it = files.find("entry.ini");
    if (it == files.end())
        throw CorpusError("entry without entry.ini");
    CorpusEntry e;
    try {
        for (const auto& sec : read_sections(it->second)) {
            if (sec.name == "entry") {
                for (const auto& [ln, l] : sec.lines) {
                    auto kv = split_assignment(l);
                    if (!kv)
                        throw ParseError("expected 'key = value'", ln);
                    const auto& [k, v] = *kv;
                    if (k == "name")
                        e.name = v;
                    else if (k == "alias")
                        e.alias = v;
                    else if (k == "note")
                        e.note = v;
                    else if (k == "a")
                        e.a = v;
                    else if (k == "b")
                        e.b = v;
                    else if (k == "field")
                        e.field = parse_field(v);
                    else if (k == "cap")
                        e.cap = std::stoi(v);
                    else if (k == "eps_max")
                        e.eps_max = parse_rational(v);
                    else if (k == "family")
                        e.family = v;
                    else
                        throw ParseError("unknown key '" + k + "'", ln);
                }
            } else if (sec.name == "certificates") {
                for (const auto& [ln, l] : sec.lines)
                    e.certificates.push_back(l);
            } else if (sec.name == "expect") {
                for (const auto& [ln, l] : sec.lines) {
                    auto kv = split_assignment(l);
                    if (!kv)
                        throw ParseError("expected 'key = value'", ln);
                    e.expect.push_back(*kv);
                }
            } else {
                throw ParseError("unknown section [" + sec.name + "]", sec.line);
            }
        }
    } catch (const std::exception& ex) {
        throw CorpusError("entry.ini: " + std::string(ex.what()));
    }
    if (e.name.empty() || e.a.empty())
        throw CorpusError("entry.ini needs name and a");
    std::vector<std::string> needed = {e.a};
    if (!e.b.empty())
        needed.push_back(e.b);
    if (e.family)
        needed.push_back(*e.family);
    needed.insert(needed.end(), e.certificates.begin(), e.certificates.end());
    for (const auto& n : needed)
        if (!files.count(n))
            throw CorpusError(e.name + ": missing file " + n);
    e.files = std::move(files);
    return e;
}

namespace {

const std::vector<CorpusEntry>& registry()
{
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (auto& files : corpus_builders::all())
            out.push_back(parse_entry(std::move(files)));
        return out;
    }();
    return entries;
}

}  // namespace

std::vector<std::string> corpus_names()
{
    std::vector<std::string> out;
    for (const auto& e : registry())
        out.push_back(e.name);
    return out;
}

CorpusEntry get(const std::string& name)
{
    for (const auto& e : registry())
        if (e.name == name || (!e.alias.empty() && e.alias == name)) {
            load(e);
            return e;
        }
    throw CorpusError("unknown corpus entry '" + name + "'");
}

std::vector<CorpusEntry> all_entries()
{
    return registry();
}

CorpusEntry load_entry_dir(const std::string& dir)
{
    std::map<std::string, std::string> files;
    if (!fs::is_directory(dir))
        throw CorpusError("not a directory: " + dir);
    for (const auto& f : fs::directory_iterator(dir))
        if (f.is_regular_file())
            files[f.path().filename().string()] = read_file(f.path().string());
    return parse_entry(std::move(files));
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& root)
{
    std::vector<fs::path> dirs;
    if (!fs::is_directory(root))
        throw CorpusError("not a directory: " + root);
    for (const auto& d : fs::directory_iterator(root))
        if (d.is_directory() && fs::exists(d.path() / "entry.ini"))
            dirs.push_back(d.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<CorpusEntry> out;
    for (const auto& d : dirs)
        out.push_back(load_entry_dir(d.string()));
    return out;
}

void export_corpus(const std::string& root)
{
    for (const auto& e : registry()) {
        fs::path dir = fs::path(root) / e.name;
        fs::create_directories(dir);
        for (const auto& [name, text] : e.files) {
            std::ofstream out(dir / name, std::ios::binary);
            if (!out)
                throw CorpusError("cannot write " + (dir / name).string());
            out << text;
        }
    }
}

LoadedEntry load(const CorpusEntry& e)
{
    LoadedEntry out;
    try {
        std::vector<std::string> names = {e.a};
        if (!e.b.empty())
            names.push_back(e.b);
        std::vector<ParsedModel> parsed;
        int cap = 0;
        for (const auto& n : names) {
            parsed.push_back(parse_model(e.files.at(n), e.field));
            cap = std::max(cap, parsed.back().cap.value_or(default_cap(*parsed.back().model.algebra())));
        }
        out.cap = e.cap.value_or(cap);
        out.field = e.field.value_or(parsed.front().declared_field);
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            auto m = parsed[i].model.with_cap(out.cap + 1);
            if (auto r = check_d_squared(*m.algebra()); !r)
                throw CorpusError(names[i] + ": " + r.str());
            if (auto r = verify_minimality(m); !r)
                throw CorpusError(names[i] + ": " + r.str());
            out.models.emplace_back(std::move(m));
        }
        if (e.family)
            out.family = parse_family(e.files.at(*e.family), out.models.front().stage(0).alg);
        if (!e.certificates.empty() && out.models.size() != 2)
            throw CorpusError("certificates need two models");
        for (const auto& c : e.certificates)
            out.certificates.emplace_back(c, parse_certificate(e.files.at(c), out.models[0], out.models[1]));
    } catch (const CorpusError& ex) {
        throw CorpusError(e.name + ": " + ex.what());
    } catch (const std::exception& ex) {
        throw CorpusError(e.name + ": " + ex.what());
    }
    return out;
}

std::string outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Pass:
        return "PASS";
    case Outcome::Fail:
        return "FAIL";
    case Outcome::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

bool EntryResult::ok() const
{
    if (error)
        return false;
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.outcome == Outcome::Pass; });
}

std::string EntryResult::str() const
{
    std::string s = name + " (cap " + std::to_string(cap) + "): " + (ok() ? "ok" : "FAILED") + "\n";
    if (error)
        s += "  error: " + *error + "\n";
    for (const auto& r : results) {
        s += "  " + outcome_name(r.outcome) + " " + r.key + ": expected " + r.expected;
        if (r.outcome != Outcome::Pass)
            s += ", got " + r.actual;
        s += "\n";
    }
    return s;
}

namespace {

HalfValue parse_half(const std::string& s)
{
    if (s == "inf")
        return HalfValue::infinity();
    return HalfValue::from_rational(parse_rational(s));
}

class Evaluator {
public:
    Evaluator(const CorpusEntry& e, LoadedEntry l) : e_(e), l_(std::move(l)) {}

    const LoadedEntry& loaded() const { return l_; }

    const PersistenceCDGA& model(const std::string& file)
    {
        if (file == e_.a)
            return l_.models.at(0);
        if (!e_.b.empty() && file == e_.b)
            return l_.models.at(1);
        throw CorpusError("no model " + file);
    }

    ObstructionEngine& engine()
    {
        if (!engine_)
            engine_.emplace(pair().first, pair().second, l_.cap, l_.family ? &*l_.family : nullptr);
        return *engine_;
    }

    const LowerBoundReport& lower()
    {
        if (!lower_) {
            mpq_class eps_max = e_.eps_max.value_or(max_certified() + 1);
            lower_ = engine().lower_bound_scan(eps_max);
        }
        return *lower_;
    }

    // Certified ε per certificate; nullopt when verification fails.
    const std::vector<std::pair<std::string, std::optional<mpq_class>>>& certified()
    {
        if (!certified_) {
            certified_.emplace();
            for (const auto& [name, c] : l_.certificates) {
                auto rep = verify_certificate(c, pair().first, pair().second);
                if (!rep.ok())
                    failures_ += name + ": " + rep.first_failure()->name + " " + rep.first_failure()->result.str() + "; ";
                certified_->emplace_back(name, rep.ok() ? std::optional<mpq_class>(c.epsilon) : std::nullopt);
            }
        }
        return *certified_;
    }

    std::optional<mpq_class> upper()
    {
        std::optional<mpq_class> best;
        for (const auto& [n, eps] : certified())
            if (eps && (!best || *eps < *best))
                best = eps;
        return best;
    }

    bool all_certified()
    {
        const auto& c = certified();
        return std::all_of(c.begin(), c.end(), [](const auto& p) { return p.second.has_value(); });
    }

    const std::string& certificate_failures()
    {
        certified();
        return failures_;
    }

    const DistanceReport& distance()
    {
        if (!distance_)
            distance_ = d_cohi_module(pair().first, pair().second, l_.cap);
        return *distance_;
    }

    std::pair<const PersistenceCDGA&, const PersistenceCDGA&> pair() const
    {
        if (l_.models.size() != 2)
            throw CorpusError("expectation needs two models");
        return {l_.models[0], l_.models[1]};
    }

private:
    mpq_class max_certified()
    {
        mpq_class m(0);
        for (const auto& [n, c] : l_.certificates)
            m = std::max(m, c.epsilon);
        return m;
    }

    const CorpusEntry& e_;
    LoadedEntry l_;
    std::optional<ObstructionEngine> engine_;
    std::optional<LowerBoundReport> lower_;
    std::optional<std::vector<std::pair<std::string, std::optional<mpq_class>>>> certified_;
    std::optional<DistanceReport> distance_;
    std::string failures_;
};

ExpectationResult check(Evaluator& ev, const std::string& key, const std::string& value)
{
    ExpectationResult r{key, value, "", Outcome::Pass};
    auto compare = [&](const std::string& actual, bool equal) {
        r.actual = actual;
        r.outcome = equal ? Outcome::Pass : Outcome::Fail;
    };
    auto suffix = [&](const std::string& prefix) -> std::optional<std::string> {
        if (key.rfind(prefix, 0) == 0)
            return key.substr(prefix.size());
        return std::nullopt;
    };
    const int cap = ev.loaded().cap;
    if (auto file = suffix("barcode.")) {
        Barcode b = barcode(ThetaHomology(ev.model(*file), cap).h_module());
        Barcode want = parse_barcode(value);
        std::string got = serialize(b);
        std::replace(got.begin(), got.end(), '\n', ';');
        compare(got, b == want);
    } else if (auto file = suffix("bound_N.")) {
        compare(std::to_string(bound_N(ev.model(*file).model())), bound_N(ev.model(*file).model()) == std::stoi(value));
    } else if (auto file = suffix("bound_basepoint.")) {
        mpq_class v = bound_basepoint(ev.model(*file).model(), cap);
        compare(rational_str(v), v == parse_rational(value));
    } else if (key == "bound_wht" || key == "bound_path_fibration") {
        auto [f, g] = ev.pair();
        auto ya = f.model().base_algebra();
        auto yb = g.model().base_algebra();
        mpq_class v = key == "bound_wht" ? mpq_class(bound_wht(*ya, *yb)) : bound_path_fibration(*ya, *yb);
        compare(rational_str(v), v == parse_rational(value));
    } else if (key == "d_cohi") {
        HalfValue v = ev.distance().value;
        compare(v.str(), v == parse_half(value));
    } else if (key == "lower_bound") {
        HalfValue v = ev.lower().value;
        compare(v.str(), v == parse_half(value));
    } else if (key == "upper_bound") {
        auto u = ev.upper();
        if (!ev.all_certified())
            compare("certificate rejected: " + ev.certificate_failures(), false);
        else
            compare(u ? rational_str(*u) : "none", u && *u == parse_rational(value));
    } else if (key == "d_ihc") {
        auto u = ev.upper();
        HalfValue lb = ev.lower().value;
        mpq_class want = parse_rational(value);
        bool ok = ev.all_certified() && u && *u == want && !lb.is_inf() && lb.to_rational() == want;
        compare("lower " + lb.str() + ", upper " + (u ? rational_str(*u) : "none"), ok);
    } else if (key == "fires" || key == "no_obstruction") {
        std::istringstream in(value);
        std::string eps_s, mech_s;
        in >> eps_s >> mech_s;
        auto rep = ev.engine().obstruct(parse_rational(eps_s));
        std::string fired;
        for (const auto& f : rep.firings)
            if (fired.find(mechanism_name(f.mechanism)) == std::string::npos)
                fired += (fired.empty() ? "" : ",") + mechanism_name(f.mechanism);
        if (key == "no_obstruction") {
            compare(fired.empty() ? "none" : fired, !rep.obstructed());
        } else {
            auto m = parse_mechanism(mech_s);
            if (!m)
                throw CorpusError("unknown mechanism '" + mech_s + "'");
            compare(fired.empty() ? "none" : fired, rep.fired(*m));
        }
    } else if (key == "truncated") {
        bool t = ev.lower().truncated;
        compare(t ? "yes" : "no", t == (value == "yes"));
    } else {
        throw CorpusError("unknown expectation '" + key + "'");
    }
    return r;
}

}  // namespace

EntryResult run_entry(const CorpusEntry& e)
{
    EntryResult out;
    out.name = e.name;
    try {
        Evaluator ev(e, load(e));
        out.cap = ev.loaded().cap;
        for (const auto& [k, v] : e.expect) {
            try {
                out.results.push_back(check(ev, k, v));
            } catch (const std::exception& ex) {
                out.results.push_back({k, v, ex.what(), Outcome::Fail});
            }
        }
        if (!ev.loaded().certificates.empty()) {
            ExpectationResult chain{"consistency.lower_le_upper", "lower bound <= certified epsilon", "", Outcome::Pass};
            ExpectationResult disjoint{"consistency.no_obstruction_at_certified", "no firing at a certified epsilon", "",
                                       Outcome::Pass};
            auto u = ev.upper();
            if (u) {
                HalfValue lb = ev.lower().value;
                HalfValue d = ev.distance().value;
                chain.actual = "lower " + lb.str() + ", d_cohi " + d.str() + ", upper " + rational_str(*u);
                if (lb.is_inf() || lb.to_rational() > *u || d.is_inf() || d.to_rational() > *u)
                    chain.outcome = Outcome::Fail;
                for (const auto& [n, eps] : ev.certified())
                    if (eps && ev.engine().obstruct(*eps).obstructed()) {
                        disjoint.outcome = Outcome::Fail;
                        disjoint.actual += n + " obstructed; ";
                    }
                out.results.push_back(chain);
                out.results.push_back(disjoint);
            }
        }
    } catch (const std::exception& ex) {
        out.error = ex.what();
    }
    return out;
}

}  // namespace pcdga
