#include "pcdga/persistence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pcdga {

PersistenceCDGA::PersistenceCDGA(RelativeSullivanModel m) : model_(std::move(m))
{
    const FreeCDGA& a = *model_.algebra();
    n_ = model_.max_stage();
    minimality_ = verify_minimality(model_);
    for (GenId g = 0; g < a.size(); ++g)
        for (const auto& t : a.d(g).terms())
            for (const auto& [id, k] : t.mono.factors)
                if (model_.stage(id) > model_.stage(g))
                    throw StageEscape("d(" + a.gen(g).name + ") involves " + a.gen(id).name + " of stage " +
                                      std::to_string(model_.stage(id)) + " > " + std::to_string(model_.stage(g)));
    std::vector<GenId> prev;
    for (int s = 0; s <= n_; ++s) {
        std::vector<GenId> ids;
        for (GenId g = 0; g < a.size(); ++g)
            if (model_.stage(g) <= s)
                ids.push_back(g);
        if (stages_.empty() || ids != prev) {
            stages_.push_back(std::make_shared<const SubAlgebra>(sub_algebra(a, ids)));
            prev = ids;
        }
        key_.push_back(stages_.size() - 1);
    }
}

PersistenceCDGA build_theta(const RelativeSullivanModel& m)
{
    return PersistenceCDGA(m);
}

PersistenceCDGA ensure_cap(const PersistenceCDGA& p, int cap)
{
    if (p.colimit()->cap() >= cap + 1)
        return p;
    return PersistenceCDGA(p.model().with_cap(cap + 1));
}

Matrix PersistenceModule::composite(int n, int s, int t) const
{
    if (s > t)
        throw std::invalid_argument("composite needs s <= t");
    auto nn = static_cast<std::size_t>(n);
    s = std::clamp(s, 0, last);
    t = std::clamp(t, 0, last);
    Matrix m = Matrix::identity(dims.at(nn).at(static_cast<std::size_t>(s)));
    for (int k = s; k < t; ++k)
        m = maps[nn][static_cast<std::size_t>(k)] * m;
    return m;
}

std::size_t PersistenceModule::rank(int n, int s, int t) const
{
    return pcdga::rank(composite(n, s, t));
}

ThetaHomology::ThetaHomology(const PersistenceCDGA& p, int cap) : p_(p), cap_(cap)
{
    for (std::size_t k = 0; k < p_.distinct_stages(); ++k) {
        int s = 0;
        while (p_.stage_key(s) != k)
            ++s;
        h_.push_back(std::make_shared<const Cohomology>(p_.stage(s).alg, cap_));
        hq_.push_back(std::make_shared<const LinearHomology>(p_.stage(s).alg, cap_));
    }
    int last = p_.last_stage();
    for (PersistenceModule* m : {&hmod_, &hqmod_}) {
        m->cap = cap_;
        m->last = last;
        m->dims.assign(static_cast<std::size_t>(cap_ + 1), {});
        m->maps.assign(static_cast<std::size_t>(cap_ + 1), {});
    }
    for (int n = 0; n <= cap_; ++n) {
        auto nn = static_cast<std::size_t>(n);
        for (int s = 0; s <= last; ++s) {
            hmod_.dims[nn].push_back(H(s).dim(n));
            hqmod_.dims[nn].push_back(HQ(s).dim(n));
        }
        for (int s = 0; s < last; ++s) {
            const SubAlgebra& from = p_.stage(s);
            const SubAlgebra& to = p_.stage(s + 1);
            if (p_.stage_key(s) == p_.stage_key(s + 1)) {
                hmod_.maps[nn].push_back(Matrix::identity(H(s).dim(n)));
                hqmod_.maps[nn].push_back(Matrix::identity(HQ(s).dim(n)));
                continue;
            }
            std::vector<Vec> cols;
            for (const auto& r : H(s).reps(n)) {
                auto c = H(s + 1).coords(to.to_sub(from.to_ambient(r)), n);
                if (!c)
                    throw std::logic_error("cohomology representative not expressible at the next stage");
                cols.push_back(*c);
            }
            hmod_.maps[nn].push_back(Matrix::from_columns(cols, H(s + 1).dim(n)));
            cols.clear();
            const auto& gs = HQ(s).generators(n);
            for (const auto& r : HQ(s).reps(n)) {
                std::vector<Term> terms;
                for (std::size_t k = 0; k < gs.size(); ++k)
                    if (!r[k].is_zero())
                        terms.push_back(Term{Monomial{{{gs[k], 1}}}, r[k]});
                Element lin = to.to_sub(from.to_ambient(Element(std::move(terms))));
                auto c = HQ(s + 1).coords(HQ(s + 1).to_vector(lin, n), n);
                if (!c)
                    throw std::logic_error("linear homology representative not expressible at the next stage");
                cols.push_back(*c);
            }
            hqmod_.maps[nn].push_back(Matrix::from_columns(cols, HQ(s + 1).dim(n)));
        }
    }
}

PersistenceModule persistence_cohomology(const PersistenceCDGA& p, int cap)
{
    return ThetaHomology(p, cap).h_module();
}

PersistenceModule persistence_linear_homology(const PersistenceCDGA& p, int cap)
{
    return ThetaHomology(p, cap).hq_module();
}

Barcode barcode(const PersistenceModule& m)
{
    Barcode out;
    int last = m.last;
    for (int n = 0; n <= m.cap; ++n) {
        // r(s, t) = rank of s -> t, with r(-1, t) = 0
        std::vector<std::vector<long>> r(static_cast<std::size_t>(last + 2),
                                         std::vector<long>(static_cast<std::size_t>(last + 1), 0));
        for (int s = 0; s <= last; ++s) {
            Matrix c = Matrix::identity(m.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)]);
            for (int t = s; t <= last; ++t) {
                if (t > s)
                    c = m.maps[static_cast<std::size_t>(n)][static_cast<std::size_t>(t - 1)] * c;
                r[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(t)] = static_cast<long>(pcdga::rank(c));
            }
        }
        auto R = [&](int s, int t) { return r[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(t)]; };
        for (int b = 0; b <= last; ++b) {
            for (int d = b + 1; d <= last; ++d) {
                long mult = R(b, d - 1) - (b > 0 ? R(b - 1, d - 1) : 0) - R(b, d) + (b > 0 ? R(b - 1, d) : 0);
                for (long k = 0; k < mult; ++k)
                    out.push_back(Bar{n, b, d});
            }
            long inf = R(b, last) - (b > 0 ? R(b - 1, last) : 0);
            for (long k = 0; k < inf; ++k)
                out.push_back(Bar{n, b, kInf});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string serialize(const Barcode& b)
{
    std::string s;
    for (const auto& bar : b)
        s += std::to_string(bar.degree) + " " + std::to_string(bar.birth) + " " +
             (bar.death == kInf ? std::string("inf") : std::to_string(bar.death)) + "\n";
    return s;
}

Barcode parse_barcode(const std::string& text)
{
    Barcode out;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    std::istringstream in(norm);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string deg, birth, death;
        if (!(ls >> deg))
            continue;
        if (!(ls >> birth >> death))
            throw std::invalid_argument("bad bar line '" + line + "'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("bad bar line '" + line + "'");
        Bar b{std::stoi(deg), std::stoi(birth), death == "inf" ? kInf : std::stoi(death)};
        if (b.degree < 0 || b.birth < 0 || b.death <= b.birth)
            throw std::invalid_argument("empty or negative bar '" + line + "'");
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool barcode_matches_dims(const Barcode& b, const PersistenceModule& m)
{
    for (int n = 0; n <= m.cap; ++n)
        for (int s = 0; s <= m.last; ++s) {
            std::size_t count = 0;
            for (const auto& bar : b)
                if (bar.degree == n && bar.birth <= s && s < bar.death)
                    ++count;
            if (count != m.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)])
                return false;
        }
    return true;
}

mpz_class floor_q(const mpq_class& q)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

PersistenceModule shift(const PersistenceModule& m, const mpq_class& eps)
{
    if (sgn(eps) < 0)
        throw std::invalid_argument("negative shift");
    auto orig = [&](int s) {
        mpz_class f = floor_q(mpq_class(s) + eps);
        if (f > m.last)
            return m.last;
        return static_cast<int>(f.get_si());
    };
    PersistenceModule out;
    out.cap = m.cap;
    out.last = m.last;
    out.dims.resize(m.dims.size());
    out.maps.resize(m.maps.size());
    for (int n = 0; n <= m.cap; ++n) {
        auto nn = static_cast<std::size_t>(n);
        for (int s = 0; s <= m.last; ++s)
            out.dims[nn].push_back(m.dims[nn][static_cast<std::size_t>(orig(s))]);
        for (int s = 0; s < m.last; ++s)
            out.maps[nn].push_back(m.composite(n, orig(s), orig(s + 1)));
    }
    return out;
}

}  // namespace pcdga
