#include "pcdga/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcdga {

Poly Poly::constant(std::size_t nvars, const Scalar& c)
{
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::var(std::size_t nvars, std::size_t v, const Scalar& c)
{
    Poly p(nvars);
    Exponents e(nvars, 0);
    e.at(v) = 1;
    p.add_term(e, c);
    return p;
}

std::optional<Scalar> Poly::as_constant() const
{
    if (t_.empty())
        return Scalar(0);
    if (t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(), [](auto k) { return k == 0; }))
        return t_.begin()->second;
    return std::nullopt;
}

bool Poly::uses(std::size_t v) const
{
    for (const auto& [e, c] : t_)
        if (e[v] != 0)
            return true;
    return false;
}

void Poly::add_term(const Exponents& e, const Scalar& c)
{
    if (e.size() != n_)
        throw std::invalid_argument("exponent vector length mismatch");
    if (c.is_zero())
        return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            t_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    if (n_ == 0 && t_.empty())
        n_ = o.n_;
    for (const auto& [e, c] : o.t_)
        add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (n_ == 0 && t_.empty())
        n_ = o.n_;
    for (const auto& [e, c] : o.t_)
        add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [e, v] : t_)
        v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly out(std::max(a.n_, b.n_));
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            Poly::Exponents e(ea);
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] += eb[k];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly Poly::substitute(std::size_t v, const Poly& value) const
{
    Poly out(n_);
    std::vector<Poly> powers{constant(n_, Scalar(1))};
    for (const auto& [e, c] : t_) {
        while (powers.size() <= e[v])
            powers.push_back(powers.back() * value);
        Exponents rest(e);
        rest[v] = 0;
        Poly mono(n_);
        mono.add_term(rest, c);
        out += mono * powers[e[v]];
    }
    return out;
}

Scalar Poly::evaluate(const std::vector<Scalar>& values) const
{
    Scalar sum;
    for (const auto& [e, c] : t_) {
        Scalar term = c;
        for (std::size_t k = 0; k < n_; ++k)
            for (std::uint32_t j = 0; j < e[k]; ++j)
                term *= values[k];
        sum += term;
    }
    return sum;
}

std::string Poly::str(const std::vector<std::string>& names) const
{
    if (t_.empty())
        return "0";
    std::string s;
    for (const auto& [e, c] : t_) {
        std::string mono;
        for (std::size_t k = 0; k < n_; ++k) {
            if (e[k] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += k < names.size() ? names[k] : "v" + std::to_string(k);
            if (e[k] > 1)
                mono += "^" + std::to_string(e[k]);
        }
        bool neg = c.is_real() && sgn(c.re()) < 0;
        Scalar a = neg ? -c : c;
        std::string cs = a.is_real() ? a.str() : "(" + a.str() + ")";
        if (!s.empty())
            s += neg ? " - " : " + ";
        else if (neg)
            s += "-";
        if (mono.empty())
            s += cs;
        else if (a.is_one())
            s += mono;
        else
            s += cs + "*" + mono;
    }
    return s;
}

void ConstraintSystem::add(Poly p)
{
    if (p.nvars() != n_ && !p.is_zero())
        throw std::invalid_argument("constraint over the wrong number of unknowns");
    if (!p.is_zero())
        eqs_.push_back(std::move(p));
}

Poly ConstraintSystem::Reduced::reduce(const Poly& p) const
{
    Poly out = p;
    for (std::size_t v = 0; v < solved.size(); ++v)
        if (solved[v] && out.uses(v))
            out = out.substitute(v, *solved[v]);
    return out;
}

std::vector<std::size_t> ConstraintSystem::Reduced::free_vars() const
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < solved.size(); ++v)
        if (!solved[v])
            out.push_back(v);
    return out;
}

namespace {

std::vector<std::size_t> vars_of(const Poly::Exponents& e)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] != 0)
            out.push_back(k);
    return out;
}

}  // namespace

ConstraintSystem::Reduced ConstraintSystem::reduce() const
{
    Reduced r;
    r.solved.assign(n_, std::nullopt);
    std::vector<Poly> eqs = eqs_;

    auto solve = [&](std::size_t v, const Poly& value) {
        for (auto& s : r.solved)
            if (s && s->uses(v))
                *s = s->substitute(v, value);
        r.solved[v] = value;
        for (auto& e : eqs)
            if (e.uses(v))
                e = e.substitute(v, value);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Poly> kept;
        for (auto& e : eqs) {
            if (e.is_zero())
                continue;
            if (e.as_constant()) {
                r.infeasible = true;
                r.residual = {e};
                return r;
            }
            kept.push_back(std::move(e));
        }
        eqs = std::move(kept);

        for (const auto& e : eqs) {
            if (e.terms().size() == 1) {
                auto vs = vars_of(e.terms().begin()->first);
                if (vs.size() == 1) {
                    solve(vs[0], Poly(n_));
                    changed = true;
                    break;
                }
            }
            if (field_ == Field::Q) {
                bool definite = true;
                int sign = 0;
                std::vector<std::size_t> vs;
                for (const auto& [ex, c] : e.terms()) {
                    auto tv = vars_of(ex);
                    if (tv.size() != 1 || ex[tv[0]] % 2 != 0 || !c.is_real()) {
                        definite = false;
                        break;
                    }
                    int s = sgn(c.re());
                    if (sign != 0 && s != sign) {
                        definite = false;
                        break;
                    }
                    sign = s;
                    vs.push_back(tv[0]);
                }
                if (definite) {
                    for (auto v : vs)
                        if (!r.solved[v])
                            solve(v, Poly(n_));
                    changed = true;
                    break;
                }
            }
            for (std::size_t v = 0; v < n_ && !changed; ++v) {
                const Poly::Exponents* lin = nullptr;
                int count = 0;
                for (const auto& [ex, c] : e.terms())
                    if (ex[v] != 0) {
                        ++count;
                        lin = &ex;
                    }
                if (count != 1 || (*lin)[v] != 1 || vars_of(*lin).size() != 1)
                    continue;
                Scalar c = e.terms().at(*lin);
                Poly rest = e - Poly::var(n_, v, c);
                solve(v, rest * (-c.inverse()));
                changed = true;
            }
            if (changed)
                break;
        }
    }
    r.residual = std::move(eqs);
    return r;
}

std::optional<std::vector<Scalar>>
ConstraintSystem::search_witness(const Reduced& r, std::size_t max_free,
                                 const std::function<bool(const std::vector<Scalar>&)>& accept) const
{
    if (r.infeasible)
        return std::nullopt;
    auto fv = r.free_vars();
    if (fv.size() > max_free)
        return std::nullopt;
    std::vector<Scalar> choices{Scalar(0), Scalar(1), Scalar(-1)};
    if (field_ == Field::QI) {
        choices.push_back(Scalar::i());
        choices.push_back(-Scalar::i());
    }
    std::vector<std::size_t> idx(fv.size(), 0);
    while (true) {
        std::vector<Scalar> vals(n_);
        for (std::size_t k = 0; k < fv.size(); ++k)
            vals[fv[k]] = choices[idx[k]];
        for (std::size_t v = 0; v < n_; ++v)
            if (r.solved[v])
                vals[v] = r.solved[v]->evaluate(vals);
        bool ok = std::all_of(eqs_.begin(), eqs_.end(), [&](const Poly& p) { return p.evaluate(vals).is_zero(); });
        if (ok && accept(vals))
            return vals;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices.size())
            idx[k++] = 0;
        if (k == idx.size())
            return std::nullopt;
    }
}

std::string AlgebraMapVerdict::str() const
{
    switch (kind) {
    case Kind::OnlyTrivialOnDegree:
        return "OnlyTrivialOnDegree(" + std::to_string(degree) + ")";
    case Kind::ExistsWitness:
        return "ExistsWitness(degree " + std::to_string(degree) + ")";
    case Kind::Inconclusive:
        break;
    }
    return "Inconclusive(" + reason + ")";
}

AlgebraMapVerdict algebra_map_space(const Cohomology& source, const Cohomology& target, const std::vector<int>& degrees)
{
    Field field = source.algebra()->field();
    if (field != target.algebra()->field())
        throw FieldMismatch("algebra maps between cohomologies over different fields");
    AlgebraMapVerdict out;
    if (source.dim(0) != 1 || target.dim(0) != 1) {
        out.reason = "H^0 is not one-dimensional";
        return out;
    }
    int cap = std::min(source.cap(), target.cap());
    // var(p, i, l): coefficient of target class l in f(source class i), degree p
    std::vector<std::vector<std::size_t>> base(static_cast<std::size_t>(cap + 1));
    std::size_t n = 0;
    for (int p = 1; p <= cap; ++p) {
        base[static_cast<std::size_t>(p)].push_back(n);
        n += source.dim(p) * target.dim(p);
    }
    auto var = [&](int p, std::size_t i, std::size_t l) {
        return base[static_cast<std::size_t>(p)][0] + i * target.dim(p) + l;
    };

    ConstraintSystem sys(field, n);
    for (int p = 1; p <= cap; ++p)
        for (int q = p; p + q <= cap; ++q)
            for (std::size_t i = 0; i < source.dim(p); ++i)
                for (std::size_t j = (p == q ? i : 0); j < source.dim(q); ++j) {
                    int s = p + q;
                    std::vector<Poly> eq(target.dim(s), Poly(n));
                    Vec cs = source.product(p, i, q, j);
                    for (std::size_t k = 0; k < cs.size(); ++k)
                        if (!cs[k].is_zero())
                            for (std::size_t r = 0; r < target.dim(s); ++r)
                                eq[r] += Poly::var(n, var(s, k, r), cs[k]);
                    for (std::size_t l = 0; l < target.dim(p); ++l)
                        for (std::size_t m = 0; m < target.dim(q); ++m) {
                            Vec ct = target.product(p, l, q, m);
                            Poly lm = Poly::var(n, var(p, i, l)) * Poly::var(n, var(q, j, m));
                            for (std::size_t r = 0; r < ct.size(); ++r)
                                if (!ct[r].is_zero())
                                    eq[r] -= lm * ct[r];
                        }
                    for (auto& e : eq)
                        sys.add(std::move(e));
                }

    auto red = sys.reduce();
    if (red.infeasible) {
        out.reason = "constraint system reported infeasible";
        return out;
    }
    for (int d : degrees) {
        if (d < 1 || d > cap)
            continue;
        std::vector<std::size_t> vs;
        for (std::size_t i = 0; i < source.dim(d); ++i)
            for (std::size_t l = 0; l < target.dim(d); ++l)
                vs.push_back(var(d, i, l));
        if (std::all_of(vs.begin(), vs.end(), [&](std::size_t v) { return red.forced_zero(v); })) {
            out.kind = AlgebraMapVerdict::Kind::OnlyTrivialOnDegree;
            out.degree = d;
            return out;
        }
    }
    for (int d : degrees) {
        if (d < 1 || d > cap)
            continue;
        auto w = sys.search_witness(red, 6, [&](const std::vector<Scalar>& vals) {
            for (std::size_t i = 0; i < source.dim(d); ++i)
                for (std::size_t l = 0; l < target.dim(d); ++l)
                    if (!vals[var(d, i, l)].is_zero())
                        return true;
            return false;
        });
        if (w) {
            out.kind = AlgebraMapVerdict::Kind::ExistsWitness;
            out.degree = d;
            for (int p = 1; p <= cap; ++p) {
                Matrix m(target.dim(p), source.dim(p));
                for (std::size_t i = 0; i < source.dim(p); ++i)
                    for (std::size_t l = 0; l < target.dim(p); ++l)
                        m(l, i) = (*w)[var(p, i, l)];
                out.assignment.emplace(p, std::move(m));
            }
            return out;
        }
    }
    out.reason = std::to_string(red.free_vars().size()) + " unknowns and " + std::to_string(red.residual.size()) +
                 " equations survive the reduction rules";
    return out;
}

}  // namespace pcdga
