#include "pcdga/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pcdga {

std::size_t Monomial::word_length() const
{
    std::size_t n = 0;
    for (const auto& [id, e] : factors)
        n += e;
    return n;
}

Element Element::constant(const Scalar& c)
{
    if (c.is_zero())
        return {};
    return Element({Term{Monomial{}, c}});
}

Element Element::monomial(Monomial m, const Scalar& c)
{
    if (c.is_zero())
        return {};
    return Element({Term{std::move(m), c}});
}

std::optional<Scalar> Element::as_constant() const
{
    if (terms_.empty())
        return Scalar(0);
    if (terms_.size() == 1 && terms_[0].mono.is_one())
        return terms_[0].coef;
    return std::nullopt;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].mono < a[i].mono) {
            out.push_back(b[j++]);
            if (subtract)
                out.back().coef = -out.back().coef;
        } else {
            Scalar c = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
            if (!c.is_zero())
                out.push_back(Term{a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

Element from_map(std::map<Monomial, Scalar>& acc)
{
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero())
            terms.push_back(Term{m, std::move(c)});
    return Element(std::move(terms));
}

}  // namespace

Element& Element::operator+=(const Element& o)
{
    if (o.is_zero())
        return *this;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    if (o.is_zero())
        return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Element& Element::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.coef *= c;
    return *this;
}

Element Element::operator-() const
{
    Element e = *this;
    for (auto& t : e.terms_)
        t.coef = -t.coef;
    return e;
}

FreeCDGA::FreeCDGA(Field field, std::vector<Generator> gens, std::vector<Element> differential, Options opt)
    : field_(field), gens_(std::move(gens)), diff_(std::move(differential)), opt_(std::move(opt))
{
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.name.empty())
            throw std::invalid_argument("generator with empty name");
        if (!names.insert(g.name).second)
            throw std::invalid_argument("duplicate generator name '" + g.name + "'");
        if (g.degree < 0 || (g.degree == 0 && !opt_.allow_degree_zero))
            throw std::invalid_argument("generator '" + g.name + "' must have positive degree");
    }
    if (diff_.size() > gens_.size())
        throw std::invalid_argument("more differentials than generators");
    diff_.resize(gens_.size());
    opt_.exponent_caps.resize(gens_.size(), 0);
    for (std::size_t k = 0; k < diff_.size(); ++k)
        for (const auto& t : diff_[k].terms()) {
            if (!in_field(t.coef, field_))
                throw FieldMismatch("coefficient " + t.coef.str() + " of d(" + gens_[k].name + ") is not in " +
                                    field_name(field_));
            for (const auto& [id, e] : t.mono.factors) {
                if (id >= gens_.size())
                    throw std::invalid_argument("unknown generator id in d(" + gens_[k].name + ")");
                if (e > 1 && is_odd(id))
                    throw std::invalid_argument("non-canonical monomial in d(" + gens_[k].name + ")");
            }
        }
}

FreeCDGA::FreeCDGA(Field field, std::vector<Generator> gens, std::vector<Element> differential, int cap)
    : FreeCDGA(field, std::move(gens), std::move(differential), Options{cap, false, {}})
{
}

AlgebraPtr make_algebra(Field field, std::vector<Generator> gens, std::vector<Element> differential, int cap)
{
    return std::make_shared<const FreeCDGA>(field, std::move(gens), std::move(differential), cap);
}

AlgebraPtr FreeCDGA::with_cap(int cap) const
{
    Options o = opt_;
    o.cap = cap;
    return std::make_shared<const FreeCDGA>(field_, gens_, diff_, o);
}

std::optional<GenId> FreeCDGA::find(std::string_view name) const
{
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name == name)
            return static_cast<GenId>(k);
    return std::nullopt;
}

int FreeCDGA::max_degree() const
{
    int m = 0;
    for (const auto& g : gens_)
        m = std::max(m, g.degree);
    return m;
}

Element FreeCDGA::gen_element(GenId id) const
{
    if (id >= gens_.size())
        throw std::out_of_range("unknown generator id");
    return Element::monomial(Monomial{{{id, 1}}});
}

int FreeCDGA::degree(const Monomial& m) const
{
    int d = 0;
    for (const auto& [id, e] : m.factors)
        d += static_cast<int>(e) * gens_.at(id).degree;
    return d;
}

std::optional<int> FreeCDGA::degree(const Element& e) const
{
    if (e.is_zero())
        return std::nullopt;
    int d0 = degree(e.terms().front().mono);
    for (const auto& t : e.terms())
        if (degree(t.mono) != d0)
            return std::nullopt;
    return d0;
}

void FreeCDGA::check_exponent(GenId id, std::uint32_t e) const
{
    std::uint32_t c = opt_.exponent_caps[id];
    if (c != 0 && e > c)
        throw TDegreeOverflow("exponent of '" + gens_[id].name + "' exceeds its cap " + std::to_string(c));
}

Element FreeCDGA::normalize(const std::vector<RawTerm>& raw) const
{
    std::map<Monomial, Scalar> acc;
    for (const auto& r : raw) {
        if (r.coef.is_zero())
            continue;
        if (!in_field(r.coef, field_))
            throw FieldMismatch("coefficient " + r.coef.str() + " is not in " + field_name(field_));
        // expand into a flat sequence of factors
        std::vector<GenId> seq;
        for (const auto& [id, e] : r.factors) {
            if (id >= gens_.size())
                throw std::invalid_argument("unknown generator id " + std::to_string(id));
            for (std::uint32_t k = 0; k < e; ++k)
                seq.push_back(id);
        }
        int sign = 1;
        for (std::size_t p = 0; p < seq.size(); ++p)
            for (std::size_t q = p + 1; q < seq.size(); ++q)
                if (seq[p] > seq[q] && is_odd(seq[p]) && is_odd(seq[q]))
                    sign = -sign;
        std::sort(seq.begin(), seq.end());
        Monomial m;
        bool vanishes = false;
        for (GenId id : seq) {
            if (!m.factors.empty() && m.factors.back().first == id) {
                if (is_odd(id)) {
                    vanishes = true;
                    break;
                }
                ++m.factors.back().second;
            } else {
                m.factors.push_back({id, 1});
            }
        }
        if (vanishes)
            continue;
        for (const auto& [id, e] : m.factors)
            check_exponent(id, e);
        Scalar c = r.coef;
        if (sign < 0)
            c = -c;
        acc[m] += c;
    }
    return from_map(acc);
}

int FreeCDGA::mul_mono(const Monomial& a, const Monomial& b, Monomial& out) const
{
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    int odd_left = 0;
    for (const auto& f : a.factors)
        if (is_odd(f.first))
            ++odd_left;
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            if (is_odd(a.factors[i].first))
                --odd_left;
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            if (is_odd(b.factors[j].first) && (odd_left & 1))
                sign = -sign;
            out.factors.push_back(b.factors[j++]);
        } else {
            GenId id = a.factors[i].first;
            if (is_odd(id))
                return 0;
            std::uint32_t e = a.factors[i].second + b.factors[j].second;
            check_exponent(id, e);
            out.factors.push_back({id, e});
            ++i;
            ++j;
        }
    }
    return sign;
}

Element FreeCDGA::mul(const Element& a, const Element& b) const
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::map<Monomial, Scalar> acc;
    Monomial m;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            int s = mul_mono(ta.mono, tb.mono, m);
            if (s == 0)
                continue;
            Scalar c = ta.coef * tb.coef;
            if (s < 0)
                acc[m] -= c;
            else
                acc[m] += c;
        }
    return from_map(acc);
}

Element FreeCDGA::pow(const Element& a, std::uint32_t k) const
{
    Element r = Element::constant(Scalar(1));
    for (std::uint32_t n = 0; n < k; ++n)
        r = mul(r, a);
    return r;
}

Element FreeCDGA::d(const Element& a) const
{
    Element result;
    for (const auto& t : a.terms()) {
        const auto& fs = t.mono.factors;
        Monomial prefix;
        int prefix_deg = 0;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            auto [id, e] = fs[k];
            const Element& dg = diff_[id];
            if (!dg.is_zero()) {
                // d(g^e) = e·g^(e-1)·dg for even g; odd generators have e = 1
                Element part = dg;
                if (e > 1)
                    part = mul(Element::monomial(Monomial{{{id, e - 1}}}, Scalar(static_cast<long>(e))), dg);
                Monomial suffix;
                suffix.factors.assign(fs.begin() + static_cast<std::ptrdiff_t>(k + 1), fs.end());
                Element term = mul(mul(Element::monomial(prefix), part), Element::monomial(suffix));
                Scalar c = t.coef;
                if (prefix_deg & 1)
                    c = -c;
                result += term * c;
            }
            prefix.factors.push_back({id, e});
            prefix_deg += static_cast<int>(e) * gens_[id].degree;
        }
    }
    return result;
}

Element FreeCDGA::linear_part(const Element& a) const
{
    std::vector<Term> out;
    for (const auto& t : a.terms())
        if (t.mono.factors.size() == 1 && t.mono.factors[0].second == 1)
            out.push_back(t);
    return Element(std::move(out));
}

std::vector<Monomial> FreeCDGA::monomial_basis(int n) const
{
    for (const auto& g : gens_)
        if (g.degree == 0)
            throw std::logic_error("monomial bases need positive-degree generators");
    std::vector<Monomial> out;
    if (n < 0)
        return out;
    Monomial cur;
    auto rec = [&](auto&& self, std::size_t id, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (id == gens_.size())
            return;
        int deg = gens_[id].degree;
        int max_e = is_odd(static_cast<GenId>(id)) ? 1 : left / deg;
        if (deg > left)
            max_e = 0;
        for (int e = 0; e <= max_e; ++e) {
            if (e > 0)
                cur.factors.push_back({static_cast<GenId>(id), static_cast<std::uint32_t>(e)});
            self(self, id + 1, left - e * deg);
            if (e > 0)
                cur.factors.pop_back();
        }
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end());
    return out;
}

std::string FreeCDGA::str(const Monomial& m) const
{
    if (m.is_one())
        return "1";
    std::string s;
    for (const auto& [id, e] : m.factors) {
        if (!s.empty())
            s += "*";
        s += gens_.at(id).name;
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

namespace {

// Splits a coefficient into a sign and an unsigned textual magnitude.
std::pair<bool, std::string> coef_text(const Scalar& c, bool& is_unit)
{
    is_unit = false;
    if (c.is_real()) {
        bool neg = sgn(c.re()) < 0;
        mpq_class a = abs(c.re());
        is_unit = a == 1;
        return {neg, rational_str(a)};
    }
    if (sgn(c.re()) == 0) {
        bool neg = sgn(c.im()) < 0;
        mpq_class a = abs(c.im());
        return {neg, a == 1 ? std::string("i") : rational_str(a) + "*i"};
    }
    return {false, "(" + c.str() + ")"};
}

}  // namespace

std::string FreeCDGA::str(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& t : e.terms()) {
        bool unit = false;
        auto [neg, mag] = coef_text(t.coef, unit);
        std::string body;
        if (t.mono.is_one())
            body = mag;
        else if (unit)
            body = str(t.mono);
        else
            body = mag + "*" + str(t.mono);
        if (first)
            s += neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

std::string CheckResult::str() const
{
    if (ok)
        return "ok";
    std::string s = kind;
    if (!generator.empty())
        s += " at " + generator;
    if (!detail.empty())
        s += ": " + detail;
    return s;
}

CheckResult check_d_squared(const FreeCDGA& a)
{
    for (GenId g = 0; g < a.size(); ++g) {
        const Element& dg = a.d(g);
        if (dg.is_zero())
            continue;
        auto deg = a.degree(dg);
        if (!deg || *deg != a.degree(g) + 1)
            return CheckResult::fail("degree", a.gen(g).name,
                                     "d(" + a.gen(g).name + ") = " + a.str(dg) + " does not have degree " +
                                         std::to_string(a.degree(g) + 1));
    }
    for (GenId g = 0; g < a.size(); ++g) {
        if (a.degree(g) + 2 > a.cap())
            continue;
        Element dd = a.d(a.d(g));
        if (!dd.is_zero())
            return CheckResult::fail("d_squared", a.gen(g).name, "d(d(" + a.gen(g).name + ")) = " + a.str(dd));
    }
    return CheckResult::pass();
}

Morphism::Morphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images))
{
    if (!src_ || !tgt_)
        throw std::invalid_argument("morphism with null algebra");
    if (src_->field() != tgt_->field())
        throw FieldMismatch("morphism between algebras over different fields");
    if (images_.size() != src_->size())
        throw std::invalid_argument("morphism needs one image per source generator");
}

Morphism Morphism::identity(const AlgebraPtr& a)
{
    std::vector<Element> imgs;
    for (GenId g = 0; g < a->size(); ++g)
        imgs.push_back(a->gen_element(g));
    return Morphism(a, a, std::move(imgs));
}

Morphism Morphism::zero(const AlgebraPtr& source, const AlgebraPtr& target)
{
    return Morphism(source, target, std::vector<Element>(source->size()));
}

Element Morphism::apply(const Element& e) const
{
    std::map<std::pair<GenId, std::uint32_t>, Element> powers;
    auto power = [&](GenId id, std::uint32_t k) -> const Element& {
        auto key = std::make_pair(id, k);
        auto it = powers.find(key);
        if (it != powers.end())
            return it->second;
        return powers.emplace(key, tgt_->pow(images_[id], k)).first->second;
    };
    Element out;
    for (const auto& t : e.terms()) {
        Element prod = Element::constant(t.coef);
        for (const auto& [id, k] : t.mono.factors) {
            prod = tgt_->mul(prod, power(id, k));
            if (prod.is_zero())
                break;
        }
        out += prod;
    }
    return out;
}

Morphism compose(const Morphism& g, const Morphism& f)
{
    if (f.target()->size() != g.source()->size())
        throw std::invalid_argument("morphisms are not composable");
    std::vector<Element> imgs;
    for (GenId id = 0; id < f.source()->size(); ++id)
        imgs.push_back(g.apply(f.image(id)));
    return Morphism(f.source(), g.target(), std::move(imgs));
}

CheckResult verify_morphism(const Morphism& m)
{
    const FreeCDGA& s = *m.source();
    const FreeCDGA& t = *m.target();
    for (GenId g = 0; g < s.size(); ++g) {
        const Element& img = m.image(g);
        for (const auto& term : img.terms())
            if (!in_field(term.coef, t.field()))
                return CheckResult::fail("field", s.gen(g).name, "coefficient " + term.coef.str());
        if (!img.is_zero()) {
            auto deg = t.degree(img);
            if (!deg || *deg != s.degree(g))
                return CheckResult::fail("degree", s.gen(g).name,
                                         "image " + t.str(img) + " is not homogeneous of degree " +
                                             std::to_string(s.degree(g)));
        }
    }
    for (GenId g = 0; g < s.size(); ++g) {
        Element diff;
        try {
            diff = t.d(m.image(g)) - m.apply(s.d(g));
        } catch (const TDegreeOverflow& e) {
            return CheckResult::fail("t_degree", s.gen(g).name, e.what());
        }
        if (!diff.is_zero())
            return CheckResult::fail("chain", s.gen(g).name, "d(f(g)) - f(d(g)) = " + t.str(diff));
    }
    return CheckResult::pass();
}

IntervalTensor::IntervalTensor(AlgebraPtr base, std::uint32_t t_cap) : base_(std::move(base)), t_cap_(t_cap)
{
    std::vector<Generator> gens = base_->generators();
    std::vector<Element> diff;
    for (GenId g = 0; g < base_->size(); ++g)
        diff.push_back(base_->d(g));
    GenId t_id = static_cast<GenId>(gens.size());
    gens.push_back({"t", 0});
    gens.push_back({"dt", 1});
    diff.push_back(Element::monomial(Monomial{{{t_id + 1, 1}}}));
    diff.push_back(Element());
    FreeCDGA::Options opt;
    opt.cap = base_->cap();
    opt.allow_degree_zero = true;
    opt.exponent_caps.assign(gens.size(), 0);
    opt.exponent_caps[t_id] = t_cap_;
    ext_ = std::make_shared<const FreeCDGA>(base_->field(), std::move(gens), std::move(diff), opt);
}

Element IntervalTensor::ev(const Element& e, int endpoint) const
{
    std::map<Monomial, Scalar> acc;
    for (const auto& term : e.terms()) {
        Monomial m;
        bool keep = true;
        for (const auto& [id, k] : term.mono.factors) {
            if (id == dt()) {
                keep = false;
                break;
            }
            if (id == t()) {
                if (endpoint == 0)
                    keep = false;
                continue;
            }
            m.factors.push_back({id, k});
        }
        if (keep)
            acc[m] += term.coef;
    }
    return from_map(acc);
}

Morphism IntervalTensor::ev_morphism(int endpoint) const
{
    std::vector<Element> imgs;
    for (GenId g = 0; g < base_->size(); ++g)
        imgs.push_back(base_->gen_element(g));
    imgs.push_back(endpoint == 0 ? Element() : Element::constant(Scalar(1)));
    imgs.push_back(Element());
    return Morphism(ext_, base_, std::move(imgs));
}

CheckResult verify_homotopy(const Homotopy& h, const Morphism& f, const Morphism& g)
{
    const FreeCDGA& s = *h.map.source();
    if (h.map.target().get() != h.path->algebra().get())
        return CheckResult::fail("target", "", "homotopy does not land in the interval tensor");
    CheckResult chain = verify_morphism(h.map);
    if (!chain)
        return chain;
    const FreeCDGA& b = *h.path->base();
    for (GenId id = 0; id < s.size(); ++id) {
        Element img = h.map.image(id);
        Element e0 = h.path->ev(img, 0);
        if (e0 != f.image(id))
            return CheckResult::fail("endpoint", s.gen(id).name,
                                     "ev0 gives " + b.str(e0) + ", expected " + b.str(f.image(id)));
        Element e1 = h.path->ev(img, 1);
        if (e1 != g.image(id))
            return CheckResult::fail("endpoint", s.gen(id).name,
                                     "ev1 gives " + b.str(e1) + ", expected " + b.str(g.image(id)));
    }
    return CheckResult::pass();
}

Homotopy constant_homotopy(const Morphism& f, std::shared_ptr<const IntervalTensor> path)
{
    Morphism m(f.source(), path->algebra(), f.images());
    return Homotopy{std::move(path), std::move(m)};
}

int stage_support(const Element& e, const std::vector<int>& staging)
{
    int s = 0;
    for (const auto& t : e.terms())
        for (const auto& [id, k] : t.mono.factors)
            if (id < staging.size())
                s = std::max(s, staging[id]);
    return s;
}

}  // namespace pcdga
