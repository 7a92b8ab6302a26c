#include "pcdga/distance.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>

namespace pcdga {

HalfValue HalfValue::from_rational(const mpq_class& q)
{
    mpq_class twice = q * 2;
    if (sgn(q) < 0 || twice.get_den() != 1)
        throw std::invalid_argument("value " + rational_str(q) + " is not a non-negative half-integer");
    return halves(twice.get_num().get_si());
}

mpq_class HalfValue::to_rational() const
{
    if (inf_)
        throw std::logic_error("infinite value has no rational form");
    mpq_class q(h_, 2);
    q.canonicalize();
    return q;
}

std::string HalfValue::str() const
{
    return inf_ ? std::string("inf") : rational_str(to_rational());
}

std::string interval_str(const Interval& i)
{
    return "[" + std::to_string(i.birth) + "," + (i.death == kInf ? std::string("inf") : std::to_string(i.death)) + ")";
}

std::vector<Interval> bars_in_degree(const Barcode& b, int degree)
{
    std::vector<Interval> out;
    for (const auto& bar : b)
        if (bar.degree == degree)
            out.push_back(Interval{bar.birth, bar.death});
    return out;
}

HalfValue match_cost(const Interval& a, const Interval& b)
{
    bool ia = a.death == kInf;
    bool ib = b.death == kInf;
    if (ia != ib)
        return HalfValue::infinity();
    long db = std::labs(static_cast<long>(a.birth) - b.birth);
    if (ia)
        return HalfValue::whole(db);
    long dd = std::labs(static_cast<long>(a.death) - b.death);
    return HalfValue::whole(std::max(db, dd));
}

HalfValue deletion_cost(const Interval& a)
{
    if (a.death == kInf)
        return HalfValue::infinity();
    return HalfValue::halves(static_cast<long>(a.death) - a.birth);
}

namespace {

// Perfect matching on the augmented bipartite graph (bars plus diagonal
// copies) using only edges of cost ≤ t. Returns left -> right assignment.
std::optional<std::vector<long>> feasible(const std::vector<Interval>& a, const std::vector<Interval>& b, HalfValue t)
{
    std::size_t na = a.size(), nb = b.size(), n = na + nb;
    auto edge = [&](std::size_t l, std::size_t r) {
        bool ld = l >= na, rd = r >= nb;
        if (ld && rd)
            return true;
        if (!ld && !rd)
            return match_cost(a[l], b[r]) <= t;
        if (!ld)
            return r - nb == l && deletion_cost(a[l]) <= t;
        return l - na == r && deletion_cost(b[r]) <= t;
    };
    std::vector<long> match_r(n, -1);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t l) {
        for (std::size_t r = 0; r < n; ++r) {
            if (seen[r] || !edge(l, r))
                continue;
            seen[r] = 1;
            if (match_r[r] < 0 || augment(static_cast<std::size_t>(match_r[r]))) {
                match_r[r] = static_cast<long>(l);
                return true;
            }
        }
        return false;
    };
    for (std::size_t l = 0; l < n; ++l) {
        seen.assign(n, 0);
        if (!augment(l))
            return std::nullopt;
    }
    std::vector<long> match_l(n, -1);
    for (std::size_t r = 0; r < n; ++r)
        match_l[static_cast<std::size_t>(match_r[r])] = static_cast<long>(r);
    return match_l;
}

}  // namespace

BottleneckResult bottleneck(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    std::set<HalfValue> cand{HalfValue::halves(0)};
    for (const auto& x : a) {
        cand.insert(deletion_cost(x));
        for (const auto& y : b)
            cand.insert(match_cost(x, y));
    }
    for (const auto& y : b)
        cand.insert(deletion_cost(y));
    cand.erase(HalfValue::infinity());
    std::vector<HalfValue> c(cand.begin(), cand.end());

    if (!feasible(a, b, c.back()))
        return {HalfValue::infinity(), {}};
    std::size_t lo = 0, hi = c.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(a, b, c[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto m = *feasible(a, b, c[lo]);
    BottleneckResult res{c[lo], {}};
    std::size_t na = a.size(), nb = b.size();
    for (std::size_t l = 0; l < na; ++l) {
        auto r = static_cast<std::size_t>(m[l]);
        res.matching.emplace_back(static_cast<long>(l), r < nb ? static_cast<long>(r) : -1L);
    }
    for (std::size_t l = na; l < na + nb; ++l) {
        auto r = static_cast<std::size_t>(m[l]);
        if (r < nb)
            res.matching.emplace_back(-1L, static_cast<long>(r));
    }
    return res;
}

HalfValue matching_cost(const std::vector<Interval>& a, const std::vector<Interval>& b, const std::vector<MatchPair>& m)
{
    std::vector<int> used_a(a.size(), 0), used_b(b.size(), 0);
    HalfValue worst = HalfValue::halves(0);
    for (const auto& [i, j] : m) {
        HalfValue c;
        if (i >= 0 && j >= 0)
            c = match_cost(a.at(static_cast<std::size_t>(i)), b.at(static_cast<std::size_t>(j)));
        else if (i >= 0)
            c = deletion_cost(a.at(static_cast<std::size_t>(i)));
        else if (j >= 0)
            c = deletion_cost(b.at(static_cast<std::size_t>(j)));
        if (i >= 0)
            ++used_a[static_cast<std::size_t>(i)];
        if (j >= 0)
            ++used_b[static_cast<std::size_t>(j)];
        worst = std::max(worst, c);
    }
    for (int u : used_a)
        if (u != 1)
            throw std::invalid_argument("matching does not cover every bar exactly once");
    for (int u : used_b)
        if (u != 1)
            throw std::invalid_argument("matching does not cover every bar exactly once");
    return worst;
}

std::string DistanceReport::str() const
{
    std::string s = "value " + value.str() + (module_level ? " (module-level)" : "") +
                    (truncated ? " (truncated: bound only)" : "") + "\ncap " + std::to_string(cap) + "\n";
    for (const auto& d : degrees) {
        s += "deg " + std::to_string(d.degree) + ": " + d.value.str() + " [";
        bool first = true;
        for (const auto& [i, j] : d.matching) {
            if (!first)
                s += ", ";
            first = false;
            s += (i >= 0 ? interval_str(d.a[static_cast<std::size_t>(i)]) : std::string("diag")) + "->" +
                 (j >= 0 ? interval_str(d.b[static_cast<std::size_t>(j)]) : std::string("diag"));
        }
        s += "]\n";
    }
    return s;
}

DistanceReport distance_from_barcodes(const Barcode& a, const Barcode& b, int cap)
{
    DistanceReport r;
    r.cap = cap;
    r.value = HalfValue::halves(0);
    for (int n = 0; n <= cap; ++n) {
        DegreeDistance d;
        d.degree = n;
        d.a = bars_in_degree(a, n);
        d.b = bars_in_degree(b, n);
        if (d.a.empty() && d.b.empty())
            continue;
        auto res = bottleneck(d.a, d.b);
        d.value = res.value;
        d.matching = std::move(res.matching);
        r.value = std::max(r.value, d.value);
        r.degrees.push_back(std::move(d));
    }
    return r;
}

DistanceReport d_cohi_module(const PersistenceCDGA& pa, const PersistenceCDGA& pb, int cap)
{
    if (pa.colimit()->field() != pb.colimit()->field())
        throw FieldMismatch("distance between models over different fields");
    auto ra = barcode(ThetaHomology(pa, cap).h_module());
    auto rb = barcode(ThetaHomology(pb, cap).h_module());
    auto r = distance_from_barcodes(ra, rb, cap);
    r.truncated = pa.truncated().has_value() || pb.truncated().has_value();
    return r;
}

int top_degree(const FreeCDGA& a)
{
    return a.size() == 0 ? 0 : a.max_degree();
}

int bound_N(const RelativeSullivanModel& m)
{
    int n = 0;
    for (GenId g : m.fiber_ids())
        n = std::max(n, m.algebra()->degree(g));
    return n;
}

mpq_class bound_basepoint(const RelativeSullivanModel& m, int cap)
{
    if (!m.base_ids().empty()) {
        Cohomology h(m.algebra(), cap);
        for (int n = 1; n <= cap; ++n)
            if (h.dim(n) != 0)
                throw std::invalid_argument("basepoint bound needs a model of * -> Y: colimit has H^" +
                                            std::to_string(n) + " != 0");
    }
    mpq_class q(bound_N(m), 2);
    q.canonicalize();
    return q;
}

int bound_wht(const FreeCDGA& y, const FreeCDGA& z)
{
    return std::max(top_degree(y), top_degree(z));
}

mpq_class bound_path_fibration(const FreeCDGA& x, const FreeCDGA& y)
{
    mpq_class q(std::max({top_degree(x) - 1, top_degree(y) - 1, 0}), 2);
    q.canonicalize();
    return q;
}

}  // namespace pcdga
