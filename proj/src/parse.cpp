#include "pcdga/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pcdga {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::vector<TextSection> read_sections(std::string_view text)
{
    std::vector<TextSection> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", ln);
            out.push_back({trim(line.substr(1, line.size() - 2)), ln, {}});
            continue;
        }
        if (out.empty())
            throw ParseError("content before the first section", ln);
        out.back().lines.emplace_back(ln, line);
    }
    return out;
}

std::optional<std::pair<std::string, std::string>> split_assignment(std::string_view line)
{
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
        return std::nullopt;
    return std::pair{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

std::vector<std::string> split_list(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(sep, start);
        if (end == std::string_view::npos)
            end = s.size();
        std::string item = trim(s.substr(start, end - start));
        if (!item.empty())
            out.push_back(item);
        start = end + 1;
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

bool valid_name(std::string_view s)
{
    return !s.empty() && ident_start(s[0]) && std::all_of(s.begin(), s.end(), ident_char);
}

class ExprParser {
public:
    ExprParser(std::string_view s, const FreeCDGA& alg, const NameResolver& resolve)
        : s_(s), alg_(alg), resolve_(resolve)
    {
    }

    Element parse()
    {
        skip();
        if (p_ == s_.size())
            fail("empty expression");
        Element e = element();
        skip();
        if (p_ != s_.size())
            fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " in '" + std::string(s_) + "'");
    }

    void skip()
    {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_])))
            ++p_;
    }

    char peek()
    {
        skip();
        return p_ < s_.size() ? s_[p_] : '\0';
    }

    Element element()
    {
        bool neg = false;
        if (peek() == '+' || peek() == '-')
            neg = s_[p_++] == '-';
        Element sum = term();
        if (neg)
            sum = -sum;
        while (peek() == '+' || peek() == '-') {
            bool minus = s_[p_++] == '-';
            Element t = term();
            if (minus)
                sum -= t;
            else
                sum += t;
        }
        return sum;
    }

    Element term()
    {
        Element v = item();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++p_;
                v = alg_.mul(v, item());
            } else if (c == '/') {
                ++p_;
                auto d = item().as_constant();
                if (!d || d->is_zero())
                    fail("division by a non-constant or zero");
                v *= d->inverse();
            } else {
                return v;
            }
        }
    }

    std::uint32_t exponent()
    {
        if (peek() != '^')
            return 1;
        ++p_;
        skip();
        std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_])))
            ++p_;
        if (start == p_)
            fail("expected an exponent");
        return static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, p_ - start))));
    }

    Element item()
    {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_])))
                ++p_;
            return Element::constant(Scalar(mpq_class(mpz_class(std::string(s_.substr(start, p_ - start))))));
        }
        if (c == '(') {
            ++p_;
            Element e = element();
            if (peek() != ')')
                fail("expected ')'");
            ++p_;
            auto k = exponent();
            return k == 1 ? e : alg_.pow(e, k);
        }
        if (ident_start(c)) {
            std::size_t start = p_;
            while (p_ < s_.size() && ident_char(s_[p_]))
                ++p_;
            std::string_view name = s_.substr(start, p_ - start);
            Element base;
            if (auto id = resolve_(name))
                base = alg_.gen_element(*id);
            else if (name == "i" && alg_.field() == Field::QI)
                base = Element::constant(Scalar::i());
            else
                fail("unknown name '" + std::string(name) + "'");
            auto k = exponent();
            return k == 1 ? base : alg_.pow(base, k);
        }
        if (c == '\0')
            fail("unexpected end of expression");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t p_ = 0;
    const FreeCDGA& alg_;
    const NameResolver& resolve_;
};

int parse_int(const std::string& s, int line)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line);
    }
}

// Runs fn, rethrowing library errors with the line number attached.
template <typename Fn>
auto at_line(int line, Fn fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ParseError& e) {
        if (e.line() > 0)
            throw;
        throw ParseError(e.what(), line);
    } catch (const TDegreeOverflow& e) {
        throw ParseError(e.what(), line);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    } catch (const FieldMismatch& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

Element parse_element(std::string_view text, const FreeCDGA& alg, const NameResolver& resolve)
{
    return ExprParser(text, alg, resolve).parse();
}

Element parse_element(std::string_view text, const FreeCDGA& alg)
{
    NameResolver r = [&](std::string_view n) { return alg.find(n); };
    return parse_element(text, alg, r);
}

int default_cap(const FreeCDGA& a)
{
    return (a.size() == 0 ? 0 : a.max_degree()) + 3;
}

ParsedModel parse_model(std::string_view text, std::optional<Field> field, int algebra_cap)
{
    auto sections = read_sections(text);
    std::set<std::string> seen;
    std::optional<Field> declared;
    std::vector<Generator> gens;
    std::vector<std::pair<int, std::string>> diff_lines;
    std::optional<std::vector<std::string>> base_names, fiber_names;
    int relative_line = 0;
    std::vector<std::pair<int, std::string>> stage_lines;
    std::optional<int> truncated, cap;

    for (const auto& sec : sections) {
        if (!seen.insert(sec.name).second)
            throw ParseError("repeated section [" + sec.name + "]", sec.line);
        if (sec.name == "field") {
            for (const auto& [ln, l] : sec.lines) {
                auto kv = split_assignment(l);
                std::string v = kv ? kv->second : l;
                declared = at_line(ln, [&] { return parse_field(v); });
            }
        } else if (sec.name == "algebra") {
            for (const auto& [ln, l] : sec.lines) {
                std::istringstream ls(l);
                std::string name, deg, extra;
                if (!(ls >> name >> deg) || (ls >> extra))
                    throw ParseError("expected 'name degree'", ln);
                if (!valid_name(name))
                    throw ParseError("invalid generator name '" + name + "'", ln);
                int d = parse_int(deg, ln);
                if (d < 1)
                    throw ParseError("generator '" + name + "' must have positive degree", ln);
                gens.push_back({name, d});
            }
        } else if (sec.name == "differential") {
            diff_lines = sec.lines;
        } else if (sec.name == "relative") {
            relative_line = sec.line;
            for (const auto& [ln, l] : sec.lines) {
                auto kv = split_assignment(l);
                if (!kv || (kv->first != "base" && kv->first != "fiber"))
                    throw ParseError("expected 'base = ...' or 'fiber = ...'", ln);
                (kv->first == "base" ? base_names : fiber_names) = split_list(kv->second);
            }
        } else if (sec.name == "stages") {
            stage_lines = sec.lines;
        } else if (sec.name == "truncated" || sec.name == "cap") {
            if (sec.lines.size() != 1)
                throw ParseError("[" + sec.name + "] takes one value", sec.line);
            auto [ln, l] = sec.lines.front();
            auto kv = split_assignment(l);
            int v = parse_int(kv ? kv->second : l, ln);
            if (v < 0)
                throw ParseError("[" + sec.name + "] must be non-negative", ln);
            (sec.name == "cap" ? cap : truncated) = v;
        } else {
            throw ParseError("unknown section [" + sec.name + "]", sec.line);
        }
    }
    if (gens.empty() && !seen.count("algebra"))
        throw ParseError("missing [algebra] section");

    Field fld = field.value_or(declared.value_or(Field::Q));
    if (fld == Field::QI)
        for (const auto& g : gens)
            if (g.name == "i")
                throw ParseError("'i' is reserved for the imaginary unit over Q(i)");
    int top = 0;
    for (const auto& g : gens)
        top = std::max(top, g.degree);
    int acap = algebra_cap > 0 ? algebra_cap : cap.value_or(top + 3) + 1;

    AlgebraPtr shell;
    try {
        shell = std::make_shared<const FreeCDGA>(fld, gens, std::vector<Element>{}, acap);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    std::vector<Element> diff(gens.size());
    std::vector<bool> has_diff(gens.size(), false);
    for (const auto& [ln, l] : diff_lines) {
        auto kv = split_assignment(l);
        if (!kv)
            throw ParseError("expected 'name = expression'", ln);
        auto id = shell->find(kv->first);
        if (!id)
            throw ParseError("unknown generator '" + kv->first + "'", ln);
        if (has_diff[*id])
            throw ParseError("differential of '" + kv->first + "' given twice", ln);
        has_diff[*id] = true;
        diff[*id] = at_line(ln, [&] { return parse_element(kv->second, *shell); });
    }
    AlgebraPtr alg = std::make_shared<const FreeCDGA>(fld, gens, diff, acap);

    std::vector<bool> fiber(gens.size(), false);
    std::vector<int> mark(gens.size(), 0);
    auto assign = [&](const std::optional<std::vector<std::string>>& names, bool is_fiber) {
        if (!names)
            return;
        for (const auto& n : *names) {
            auto id = alg->find(n);
            if (!id)
                throw ParseError("unknown generator '" + n + "' in [relative]", relative_line);
            if (mark[*id]++)
                throw ParseError("generator '" + n + "' listed twice in [relative]", relative_line);
            fiber[*id] = is_fiber;
        }
    };
    assign(base_names, false);
    assign(fiber_names, true);
    if (base_names || fiber_names)
        for (GenId g = 0; g < alg->size(); ++g)
            if (!mark[g])
                throw ParseError("generator '" + alg->gen(g).name + "' is neither base nor fiber", relative_line);

    std::optional<std::vector<int>> stages;
    if (!stage_lines.empty()) {
        stages = std::vector<int>(gens.size());
        for (GenId g = 0; g < alg->size(); ++g)
            (*stages)[g] = fiber[g] ? alg->degree(g) : 0;
        for (const auto& [ln, l] : stage_lines) {
            auto kv = split_assignment(l);
            if (!kv)
                throw ParseError("expected 'name = stage'", ln);
            auto id = alg->find(kv->first);
            if (!id)
                throw ParseError("unknown generator '" + kv->first + "'", ln);
            (*stages)[*id] = parse_int(kv->second, ln);
        }
    }
    try {
        return ParsedModel{RelativeSullivanModel(alg, fiber, stages, truncated), declared.value_or(Field::Q), cap};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

ParsedModel load_model(const std::string& path, std::optional<Field> field, int algebra_cap)
{
    try {
        return parse_model(read_file(path), field, algebra_cap);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_model(const RelativeSullivanModel& m, std::optional<int> cap)
{
    const FreeCDGA& a = *m.algebra();
    std::string s = "[field]\n" + field_name(a.field()) + "\n\n[algebra]\n";
    for (const auto& g : a.generators())
        s += g.name + " " + std::to_string(g.degree) + "\n";
    s += "\n[differential]\n";
    for (GenId g = 0; g < a.size(); ++g)
        if (!a.d(g).is_zero())
            s += a.gen(g).name + " = " + a.str(a.d(g)) + "\n";
    auto names = [&](const std::vector<GenId>& ids) {
        std::string out;
        for (auto id : ids)
            out += (out.empty() ? "" : ", ") + a.gen(id).name;
        return out;
    };
    s += "\n[relative]\nbase = " + names(m.base_ids()) + "\nfiber = " + names(m.fiber_ids()) + "\n";
    if (m.has_stage_override()) {
        s += "\n[stages]\n";
        for (GenId g : m.fiber_ids())
            s += a.gen(g).name + " = " + std::to_string(m.stage(g)) + "\n";
    }
    if (m.truncated_at())
        s += "\n[truncated]\n" + std::to_string(*m.truncated_at()) + "\n";
    if (cap)
        s += "\n[cap]\n" + std::to_string(*cap) + "\n";
    return s;
}

namespace {

NameResolver prefixed(const std::string& prefix, const FreeCDGA& alg, std::optional<GenId> t = {},
                      std::optional<GenId> dt = {})
{
    return [prefix, &alg, t, dt](std::string_view n) -> std::optional<GenId> {
        if (t && n == "t")
            return t;
        if (dt && n == "dt")
            return dt;
        if (n.substr(0, prefix.size()) != prefix)
            return std::nullopt;
        return alg.find(n.substr(prefix.size()));
    };
}

// Lines `P.name = expr` into images indexed by source generator.
std::vector<Element> read_images(const TextSection& sec, const std::string& prefix, const FreeCDGA& source,
                                 const FreeCDGA& target, const NameResolver& resolve, bool identity_default)
{
    std::vector<Element> imgs(source.size());
    std::vector<bool> given(source.size(), false);
    for (const auto& [ln, l] : sec.lines) {
        auto kv = split_assignment(l);
        if (!kv)
            throw ParseError("expected '" + prefix + "name = expression'", ln);
        if (kv->first.substr(0, prefix.size()) != prefix)
            throw ParseError("left side must be a generator " + prefix + "name in [" + sec.name + "]", ln);
        auto id = source.find(kv->first.substr(prefix.size()));
        if (!id)
            throw ParseError("unknown generator '" + kv->first + "'", ln);
        if (given[*id])
            throw ParseError("image of '" + kv->first + "' given twice", ln);
        given[*id] = true;
        imgs[*id] = at_line(ln, [&] { return parse_element(kv->second, target, resolve); });
    }
    if (identity_default)
        for (GenId g = 0; g < source.size(); ++g)
            if (!given[g])
                imgs[g] = source.gen_element(g);
    return imgs;
}

}  // namespace

InterleavingCertificate parse_certificate(std::string_view text, const PersistenceCDGA& f, const PersistenceCDGA& g,
                                          std::uint32_t t_cap)
{
    auto sections = read_sections(text);
    const AlgebraPtr& fa = f.colimit();
    const AlgebraPtr& ga = g.colimit();
    std::optional<mpq_class> eps;
    auto pf = std::make_shared<const IntervalTensor>(fa, t_cap);
    auto pg = std::make_shared<const IntervalTensor>(ga, t_cap);
    std::optional<std::vector<Element>> phi, psi, hf, hg;
    std::set<std::string> seen;
    for (const auto& sec : sections) {
        if (!seen.insert(sec.name).second)
            throw ParseError("repeated section [" + sec.name + "]", sec.line);
        if (sec.name == "certificate") {
            for (const auto& [ln, l] : sec.lines) {
                auto kv = split_assignment(l);
                if (!kv || kv->first != "epsilon")
                    throw ParseError("expected 'epsilon = q'", ln);
                eps = at_line(ln, [&] { return parse_rational(kv->second); });
                if (sgn(*eps) < 0)
                    throw ParseError("epsilon must be non-negative", ln);
            }
        } else if (sec.name == "phi") {
            phi = read_images(sec, "A.", *fa, *ga, prefixed("B.", *ga), false);
        } else if (sec.name == "psi") {
            psi = read_images(sec, "B.", *ga, *fa, prefixed("A.", *fa), false);
        } else if (sec.name == "homotopy_F") {
            hf = read_images(sec, "A.", *fa, *pf->algebra(), prefixed("A.", *pf->algebra(), pf->t(), pf->dt()), true);
        } else if (sec.name == "homotopy_G") {
            hg = read_images(sec, "B.", *ga, *pg->algebra(), prefixed("B.", *pg->algebra(), pg->t(), pg->dt()), true);
        } else {
            throw ParseError("unknown section [" + sec.name + "]", sec.line);
        }
    }
    if (!eps)
        throw ParseError("missing [certificate] epsilon");
    auto identity_images = [](const FreeCDGA& a) {
        std::vector<Element> v;
        for (GenId id = 0; id < a.size(); ++id)
            v.push_back(a.gen_element(id));
        return v;
    };
    return InterleavingCertificate{
        *eps,
        Morphism(fa, ga, phi.value_or(std::vector<Element>(fa->size()))),
        Morphism(ga, fa, psi.value_or(std::vector<Element>(ga->size()))),
        Homotopy{pf, Morphism(fa, pf->algebra(), hf.value_or(identity_images(*fa)))},
        Homotopy{pg, Morphism(ga, pg->algebra(), hg.value_or(identity_images(*ga)))},
    };
}

InterleavingCertificate load_certificate(const std::string& path, const PersistenceCDGA& f, const PersistenceCDGA& g,
                                         std::uint32_t t_cap)
{
    try {
        return parse_certificate(read_file(path), f, g, t_cap);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

MapFamily parse_family(std::string_view text, const AlgebraPtr& base)
{
    auto sections = read_sections(text);
    MapFamily fam;
    fam.base = base;
    std::optional<std::pair<int, std::string>> nondeg;
    std::vector<const TextSection*> branches;
    bool header = false;
    for (const auto& sec : sections) {
        if (sec.name == "family") {
            if (header)
                throw ParseError("repeated section [family]", sec.line);
            header = true;
            for (const auto& [ln, l] : sec.lines) {
                auto kv = split_assignment(l);
                if (kv && kv->first == "parameters")
                    fam.parameters = split_list(kv->second);
                else if (kv && kv->first == "nondegenerate")
                    nondeg = std::pair{ln, kv->second};
                else
                    throw ParseError("expected 'parameters = ...' or 'nondegenerate = ...'", ln);
            }
        } else if (sec.name == "branch") {
            branches.push_back(&sec);
        } else {
            throw ParseError("unknown section [" + sec.name + "]", sec.line);
        }
    }
    if (!header || fam.parameters.empty() || !nondeg)
        throw ParseError("[family] needs parameters and a nondegenerate polynomial");
    if (branches.empty())
        throw ParseError("family without [branch] sections");

    std::vector<Generator> gens = base->generators();
    std::vector<Element> diff;
    for (GenId g = 0; g < base->size(); ++g)
        diff.push_back(base->d(g));
    for (const auto& p : fam.parameters) {
        if (!valid_name(p))
            throw ParseError("invalid parameter name '" + p + "'");
        gens.push_back({p, 0});
    }
    FreeCDGA::Options opt;
    opt.cap = base->cap();
    opt.allow_degree_zero = true;
    try {
        fam.extended = std::make_shared<const FreeCDGA>(base->field(), gens, diff, opt);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    fam.nondegenerate =
        at_line(nondeg->first, [&] { return fam.to_poly(parse_element(nondeg->second, *fam.extended)); });
    for (const auto* sec : branches) {
        NameResolver r = [&](std::string_view n) { return fam.extended->find(n); };
        auto imgs = read_images(*sec, "", *base, *fam.extended, r, true);
        fam.branches.emplace_back(base, fam.extended, std::move(imgs));
    }
    return fam;
}

MapFamily load_family(const std::string& path, const AlgebraPtr& base)
{
    try {
        return parse_family(read_file(path), base);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace pcdga
