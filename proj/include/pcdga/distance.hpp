#pragma once

#include "pcdga/persistence.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace pcdga {

// Non-negative element of ½ℤ or ∞, stored as a count of halves.
class HalfValue {
public:
    HalfValue() = default;
    static HalfValue halves(long h) { return HalfValue(h, false); }
    static HalfValue whole(long n) { return HalfValue(2 * n, false); }
    static HalfValue infinity() { return HalfValue(0, true); }
    // Throws unless q ≥ 0 lies on the half-integer grid.
    static HalfValue from_rational(const mpq_class& q);

    bool is_inf() const { return inf_; }
    long half_count() const { return h_; }
    mpq_class to_rational() const;  // throws on ∞
    std::string str() const;

    friend bool operator==(const HalfValue&, const HalfValue&) = default;
    friend std::strong_ordering operator<=>(const HalfValue& a, const HalfValue& b)
    {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_ ? std::strong_ordering::equal
                                    : (a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less);
        return a.h_ <=> b.h_;
    }

private:
    HalfValue(long h, bool inf) : h_(h), inf_(inf) {}
    long h_ = 0;
    bool inf_ = false;
};

struct Interval {
    int birth = 0;
    int death = kInf;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

std::string interval_str(const Interval& i);
std::vector<Interval> bars_in_degree(const Barcode& b, int degree);

// Pair (i, j) matches a[i] with b[j]; -1 stands for the diagonal.
using MatchPair = std::pair<long, long>;

struct BottleneckResult {
    HalfValue value;
    std::vector<MatchPair> matching;  // empty when value is ∞
};

HalfValue match_cost(const Interval& a, const Interval& b);
HalfValue deletion_cost(const Interval& a);
// Exact bottleneck distance: binary search over candidate costs with a
// perfect-matching feasibility test.
BottleneckResult bottleneck(const std::vector<Interval>& a, const std::vector<Interval>& b);
// Cost of a complete matching given as pairs (used by tests and reports).
HalfValue matching_cost(const std::vector<Interval>& a, const std::vector<Interval>& b,
                        const std::vector<MatchPair>& m);

struct DegreeDistance {
    int degree = 0;
    HalfValue value;
    std::vector<Interval> a;
    std::vector<Interval> b;
    std::vector<MatchPair> matching;
};

struct DistanceReport {
    HalfValue value;
    std::vector<DegreeDistance> degrees;
    bool module_level = true;
    bool truncated = false;  // bound only
    int cap = 0;

    std::string str() const;
};

DistanceReport distance_from_barcodes(const Barcode& a, const Barcode& b, int cap);
DistanceReport d_cohi_module(const PersistenceCDGA& pa, const PersistenceCDGA& pb, int cap);

int top_degree(const FreeCDGA& a);
int bound_N(const RelativeSullivanModel& m);
// N/2 for a model of * → Y; throws std::invalid_argument when the colimit has
// positive-degree cohomology up to `cap`.
mpq_class bound_basepoint(const RelativeSullivanModel& m, int cap);
int bound_wht(const FreeCDGA& y, const FreeCDGA& z);
mpq_class bound_path_fibration(const FreeCDGA& x, const FreeCDGA& y);

}  // namespace pcdga
