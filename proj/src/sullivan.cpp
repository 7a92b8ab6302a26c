#include "pcdga/sullivan.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pcdga {

namespace {

Element rename(const Element& e, const std::function<long(GenId)>& map)
{
    std::vector<Term> terms;
    terms.reserve(e.terms().size());
    for (const auto& t : e.terms()) {
        Monomial m;
        for (const auto& [id, k] : t.mono.factors) {
            long n = map(id);
            if (n < 0)
                throw std::out_of_range("element uses a generator outside the sub-algebra");
            m.factors.push_back({static_cast<GenId>(n), k});
        }
        terms.push_back(Term{std::move(m), t.coef});
    }
    return Element(std::move(terms));
}

}  // namespace

Element SubAlgebra::to_sub(const Element& e) const
{
    return rename(e, [this](GenId id) { return id < sub_of.size() ? sub_of[id] : -1L; });
}

Element SubAlgebra::to_ambient(const Element& e) const
{
    return rename(e, [this](GenId id) { return static_cast<long>(ambient_ids.at(id)); });
}

SubAlgebra sub_algebra(const FreeCDGA& a, const std::vector<GenId>& ids)
{
    SubAlgebra s;
    s.ambient_ids = ids;
    std::sort(s.ambient_ids.begin(), s.ambient_ids.end());
    s.sub_of.assign(a.size(), -1);
    for (std::size_t k = 0; k < s.ambient_ids.size(); ++k)
        s.sub_of[s.ambient_ids[k]] = static_cast<long>(k);
    std::vector<Generator> gens;
    std::vector<Element> diff;
    for (GenId id : s.ambient_ids) {
        gens.push_back(a.gen(id));
        try {
            diff.push_back(s.to_sub(a.d(id)));
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("d(" + a.gen(id).name + ") leaves the sub-algebra");
        }
    }
    s.alg = std::make_shared<const FreeCDGA>(a.field(), std::move(gens), std::move(diff), a.cap());
    return s;
}

std::optional<Vec> DegreeHomology::coords(const Vec& v) const
{
    auto c = solver.coords(v);
    if (!c)
        return std::nullopt;
    return Vec(c->begin() + static_cast<std::ptrdiff_t>(boundaries), c->end());
}

DegreeHomology degree_homology(const Matrix& d_in, const Matrix& d_out)
{
    DegreeHomology h;
    h.ambient = d_out.cols();
    if (d_in.rows() != h.ambient)
        throw std::invalid_argument("degree_homology: incompatible differentials");
    std::vector<Vec> z = nullspace(d_out);
    std::vector<Vec> b;
    for (auto p : rref(d_in).pivots)
        b.push_back(d_in.column(p));
    h.boundaries = b.size();
    SpanSolver zs(z, h.ambient);
    std::vector<Vec> b_in_z;
    for (const auto& v : b) {
        auto c = zs.coords(v);
        if (!c)
            throw std::logic_error("boundary is not a cocycle (d^2 != 0)");
        b_in_z.push_back(*c);
    }
    for (const auto& q : quotient_basis(b_in_z, z.size())) {
        Vec r(h.ambient);
        for (std::size_t k = 0; k < z.size(); ++k)
            if (!q[k].is_zero())
                for (std::size_t i = 0; i < h.ambient; ++i)
                    r[i] += q[k] * z[k][i];
        h.reps.push_back(std::move(r));
    }
    std::vector<Vec> all = b;
    all.insert(all.end(), h.reps.begin(), h.reps.end());
    h.solver = SpanSolver(all, h.ambient);
    return h;
}

Cohomology::Cohomology(AlgebraPtr a, int cap) : alg_(std::move(a)), cap_(cap)
{
    if (cap_ < 0)
        throw std::invalid_argument("negative cohomology cap");
    if (alg_->cap() < cap_ + 1)
        throw std::invalid_argument("cohomology cap " + std::to_string(cap_) + " exceeds algebra cap " +
                                    std::to_string(alg_->cap()) + " minus one");
    for (int n = 0; n <= cap_ + 1; ++n) {
        basis_.push_back(alg_->monomial_basis(n));
        std::map<Monomial, std::size_t> idx;
        for (std::size_t k = 0; k < basis_.back().size(); ++k)
            idx.emplace(basis_.back()[k], k);
        index_.push_back(std::move(idx));
    }
    std::vector<Matrix> dmat;
    for (int n = 0; n <= cap_; ++n) {
        const auto& bn = basis_[static_cast<std::size_t>(n)];
        std::vector<Vec> cols;
        for (const auto& m : bn)
            cols.push_back(to_vector(alg_->d(Element::monomial(m)), n + 1));
        dmat.push_back(Matrix::from_columns(cols, basis_[static_cast<std::size_t>(n + 1)].size()));
    }
    for (int n = 0; n <= cap_; ++n) {
        Matrix d_in = n == 0 ? Matrix(basis_[0].size(), 0) : dmat[static_cast<std::size_t>(n - 1)];
        hom_.push_back(degree_homology(d_in, dmat[static_cast<std::size_t>(n)]));
        std::vector<Element> reps;
        for (const auto& r : hom_.back().reps)
            reps.push_back(from_vector(r, n));
        reps_.push_back(std::move(reps));
    }
}

std::size_t Cohomology::dim(int n) const
{
    if (n < 0 || n > cap_)
        throw std::out_of_range("degree outside cohomology cap");
    return hom_[static_cast<std::size_t>(n)].dim();
}

Vec Cohomology::to_vector(const Element& e, int n) const
{
    const auto& idx = index_.at(static_cast<std::size_t>(n));
    Vec v(idx.size());
    for (const auto& t : e.terms()) {
        auto it = idx.find(t.mono);
        if (it == idx.end())
            throw std::invalid_argument("element " + alg_->str(e) + " is not of degree " + std::to_string(n));
        v[it->second] = t.coef;
    }
    return v;
}

Element Cohomology::from_vector(const Vec& v, int n) const
{
    const auto& b = basis_.at(static_cast<std::size_t>(n));
    std::vector<Term> terms;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero())
            terms.push_back(Term{b[k], v[k]});
    return Element(std::move(terms));
}

std::optional<Vec> Cohomology::coords(const Element& cocycle, int n) const
{
    if (n < 0 || n > cap_)
        throw std::out_of_range("degree outside cohomology cap");
    return hom_[static_cast<std::size_t>(n)].coords(to_vector(cocycle, n));
}

Vec Cohomology::product(int p, std::size_t i, int q, std::size_t j) const
{
    if (p + q > cap_)
        throw std::out_of_range("product degree exceeds cap");
    auto key = std::make_tuple(p, i, q, j);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = products_.find(key);
        if (it != products_.end())
            return it->second;
    }
    Element prod = alg_->mul(reps(p).at(i), reps(q).at(j));
    auto c = coords(prod, p + q);
    if (!c)
        throw std::logic_error("product of cocycles is not a cocycle");
    std::lock_guard<std::mutex> lock(mu_);
    products_.emplace(key, *c);
    return *c;
}

LinearHomology::LinearHomology(AlgebraPtr a, int cap) : alg_(std::move(a)), cap_(cap)
{
    gens_.resize(static_cast<std::size_t>(cap_ + 2));
    index_.resize(static_cast<std::size_t>(cap_ + 2));
    for (GenId g = 0; g < alg_->size(); ++g) {
        int d = alg_->degree(g);
        if (d <= cap_ + 1) {
            auto& v = gens_[static_cast<std::size_t>(d)];
            index_[static_cast<std::size_t>(d)].emplace(g, v.size());
            v.push_back(g);
        }
    }
    std::vector<Matrix> dmat;
    for (int n = 0; n <= cap_; ++n) {
        std::vector<Vec> cols;
        for (GenId g : gens_[static_cast<std::size_t>(n)])
            cols.push_back(to_vector(alg_->linear_part(alg_->d(g)), n + 1));
        dmat.push_back(Matrix::from_columns(cols, gens_[static_cast<std::size_t>(n + 1)].size()));
    }
    for (int n = 0; n <= cap_; ++n) {
        Matrix d_in = n == 0 ? Matrix(gens_[0].size(), 0) : dmat[static_cast<std::size_t>(n - 1)];
        hom_.push_back(degree_homology(d_in, dmat[static_cast<std::size_t>(n)]));
    }
}

std::size_t LinearHomology::dim(int n) const
{
    if (n < 0 || n > cap_)
        throw std::out_of_range("degree outside cap");
    return hom_[static_cast<std::size_t>(n)].dim();
}

Vec LinearHomology::to_vector(const Element& linear, int n) const
{
    const auto& idx = index_.at(static_cast<std::size_t>(n));
    Vec v(idx.size());
    for (const auto& t : linear.terms()) {
        if (t.mono.factors.size() != 1 || t.mono.factors[0].second != 1)
            throw std::invalid_argument("element is not linear");
        auto it = idx.find(t.mono.factors[0].first);
        if (it == idx.end())
            throw std::invalid_argument("linear element has a generator of the wrong degree");
        v[it->second] = t.coef;
    }
    return v;
}

std::optional<Vec> LinearHomology::coords(const Vec& v, int n) const
{
    return hom_.at(static_cast<std::size_t>(n)).coords(v);
}

Vec LinearHomology::project(const Vec& v, int n) const
{
    const auto& h = hom_.at(static_cast<std::size_t>(n));
    Vec c = h.solver.project(v);
    return Vec(c.begin() + static_cast<std::ptrdiff_t>(h.boundaries), c.end());
}

RelativeSullivanModel::RelativeSullivanModel(AlgebraPtr algebra, std::vector<bool> fiber,
                                             std::optional<std::vector<int>> stages, std::optional<int> truncated_at)
    : alg_(std::move(algebra)), fiber_(std::move(fiber)), truncated_(truncated_at)
{
    if (fiber_.size() != alg_->size())
        throw std::invalid_argument("fiber mask size differs from generator count");
    stages_.resize(alg_->size());
    for (GenId g = 0; g < alg_->size(); ++g)
        stages_[g] = fiber_[g] ? alg_->degree(g) : 0;
    if (stages) {
        if (stages->size() != alg_->size())
            throw std::invalid_argument("stage list size differs from generator count");
        for (GenId g = 0; g < alg_->size(); ++g) {
            int s = (*stages)[g];
            if (!fiber_[g] && s != 0)
                throw std::invalid_argument("base generator '" + alg_->gen(g).name + "' must have stage 0");
            if (fiber_[g] && s < 1)
                throw std::invalid_argument("fiber generator '" + alg_->gen(g).name + "' needs a positive stage");
        }
        override_ = *stages != stages_;
        stages_ = *stages;
    }
}

std::vector<GenId> RelativeSullivanModel::base_ids() const
{
    std::vector<GenId> v;
    for (GenId g = 0; g < alg_->size(); ++g)
        if (!fiber_[g])
            v.push_back(g);
    return v;
}

std::vector<GenId> RelativeSullivanModel::fiber_ids() const
{
    std::vector<GenId> v;
    for (GenId g = 0; g < alg_->size(); ++g)
        if (fiber_[g])
            v.push_back(g);
    return v;
}

int RelativeSullivanModel::max_stage() const
{
    int m = 0;
    for (GenId g = 0; g < alg_->size(); ++g)
        if (fiber_[g])
            m = std::max(m, stages_[g]);
    return m;
}

AlgebraPtr RelativeSullivanModel::base_algebra() const
{
    return sub_algebra(*alg_, base_ids()).alg;
}

RelativeSullivanModel RelativeSullivanModel::with_cap(int cap) const
{
    RelativeSullivanModel m = *this;
    m.alg_ = alg_->with_cap(cap);
    return m;
}

CheckResult verify_minimality(const RelativeSullivanModel& m)
{
    const FreeCDGA& a = *m.algebra();
    for (GenId v : m.base_ids())
        for (const auto& t : a.d(v).terms())
            for (const auto& [id, k] : t.mono.factors)
                if (m.is_fiber(id))
                    return CheckResult::fail("base_not_closed", a.gen(v).name,
                                             "d(" + a.gen(v).name + ") involves fiber generator " + a.gen(id).name);
    for (GenId w : m.fiber_ids()) {
        Element lin = a.linear_part(a.d(w));
        for (const auto& t : lin.terms()) {
            GenId id = t.mono.factors[0].first;
            if (m.is_fiber(id))
                return CheckResult::fail("linear_fiber_term", a.gen(w).name,
                                         "d(" + a.gen(w).name + ") has linear fiber term " + a.gen(id).name);
        }
    }
    // same-degree dependency graph among fiber generators
    std::vector<std::vector<GenId>> edges(a.size());
    for (GenId w : m.fiber_ids())
        for (const auto& t : a.d(w).terms())
            for (const auto& [id, k] : t.mono.factors)
                if (m.is_fiber(id) && a.degree(id) == a.degree(w))
                    edges[w].push_back(id);
    std::vector<int> color(a.size(), 0);
    std::string cycle_at;
    std::function<bool(GenId)> dfs = [&](GenId u) {
        color[u] = 1;
        for (GenId v : edges[u]) {
            if (color[v] == 1) {
                cycle_at = a.gen(v).name;
                return true;
            }
            if (color[v] == 0 && dfs(v))
                return true;
        }
        color[u] = 2;
        return false;
    };
    for (GenId w : m.fiber_ids())
        if (color[w] == 0 && dfs(w))
            return CheckResult::fail("dependency_cycle", cycle_at,
                                     "same-degree fiber generators depend on each other cyclically");
    return CheckResult::pass();
}

Matrix induced_map(const Morphism& f, const Cohomology& hs, const Cohomology& ht, int n)
{
    std::vector<Vec> cols;
    for (const auto& r : hs.reps(n)) {
        auto c = ht.coords(f.apply(r), n);
        if (!c)
            throw std::logic_error("image of a cocycle is not a cocycle");
        cols.push_back(*c);
    }
    return Matrix::from_columns(cols, ht.dim(n));
}

CheckResult verify_quasi_iso(const Morphism& f, int cap)
{
    AlgebraPtr s = f.source()->cap() >= cap + 1 ? f.source() : f.source()->with_cap(cap + 1);
    AlgebraPtr t = f.target()->cap() >= cap + 1 ? f.target() : f.target()->with_cap(cap + 1);
    Cohomology hs(s, cap);
    Cohomology ht(t, cap);
    for (int n = 0; n <= cap; ++n) {
        std::size_t ds = hs.dim(n), dt = ht.dim(n);
        Matrix m = induced_map(f, hs, ht, n);
        std::size_t r = rank(m);
        if (ds != dt || r != ds)
            return CheckResult::fail("quasi_iso", "",
                                     "degree " + std::to_string(n) + ": dims " + std::to_string(ds) + " -> " +
                                         std::to_string(dt) + ", rank " + std::to_string(r));
    }
    return CheckResult::pass();
}

CheckResult verify_isomorphism_pair(const Morphism& f, const Morphism& g)
{
    Morphism gf = compose(g, f);
    for (GenId id = 0; id < gf.source()->size(); ++id)
        if (gf.image(id) != f.source()->gen_element(id))
            return CheckResult::fail("not_inverse", f.source()->gen(id).name,
                                     "g(f(" + f.source()->gen(id).name + ")) = " + f.source()->str(gf.image(id)));
    Morphism fg = compose(f, g);
    for (GenId id = 0; id < fg.source()->size(); ++id)
        if (fg.image(id) != g.source()->gen_element(id))
            return CheckResult::fail("not_inverse", g.source()->gen(id).name,
                                     "f(g(" + g.source()->gen(id).name + ")) = " + g.source()->str(fg.image(id)));
    return CheckResult::pass();
}

}  // namespace pcdga
