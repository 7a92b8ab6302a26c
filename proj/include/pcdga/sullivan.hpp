#pragma once

#include "pcdga/algebra.hpp"
#include "pcdga/linalg.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <optional>
#include <vector>

namespace pcdga {

// Sub-algebra on a subset of generators (closed under d), ids renumbered in
// increasing order.
struct SubAlgebra {
    AlgebraPtr alg;
    std::vector<GenId> ambient_ids;  // sub id -> ambient id
    std::vector<long> sub_of;        // ambient id -> sub id or -1

    Element to_sub(const Element& ambient_element) const;
    Element to_ambient(const Element& sub_element) const;
};

SubAlgebra sub_algebra(const FreeCDGA& a, const std::vector<GenId>& ids);

// Homology of one degree of a cochain complex given by coordinate matrices.
struct DegreeHomology {
    std::size_t ambient = 0;
    std::size_t boundaries = 0;  // rank of the incoming differential
    std::vector<Vec> reps;       // cocycle representatives of a basis
    SpanSolver solver;           // over [boundary basis..., reps...]

    std::size_t dim() const { return reps.size(); }
    // Coordinates of a cocycle; nullopt if v is not a cocycle.
    std::optional<Vec> coords(const Vec& v) const;
};

// d_in: ambient × previous, d_out: next × ambient.
DegreeHomology degree_homology(const Matrix& d_in, const Matrix& d_out);

// H(A) up to a cap, with cocycle representatives and a lazily filled product
// table. Requires the algebra cap to be at least cap + 1.
class Cohomology {
public:
    Cohomology(AlgebraPtr a, int cap);

    const AlgebraPtr& algebra() const { return alg_; }
    int cap() const { return cap_; }
    std::size_t dim(int n) const;
    const std::vector<Element>& reps(int n) const { return reps_.at(static_cast<std::size_t>(n)); }
    const std::vector<Monomial>& basis(int n) const { return basis_.at(static_cast<std::size_t>(n)); }

    Vec to_vector(const Element& e, int n) const;
    Element from_vector(const Vec& v, int n) const;
    // Coordinates of a degree-n cocycle in the representative basis.
    std::optional<Vec> coords(const Element& cocycle, int n) const;
    // rep(p,i)·rep(q,j) in coordinates of degree p+q (requires p+q ≤ cap).
    Vec product(int p, std::size_t i, int q, std::size_t j) const;

private:
    AlgebraPtr alg_;
    int cap_;
    std::vector<std::vector<Monomial>> basis_;  // degrees 0..cap+1
    std::vector<std::map<Monomial, std::size_t>> index_;
    std::vector<DegreeHomology> hom_;
    std::vector<std::vector<Element>> reps_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, std::size_t, int, std::size_t>, Vec> products_;
};

// Homology of the indecomposables (V, d1), where d1 is the linear part of d.
class LinearHomology {
public:
    LinearHomology(AlgebraPtr a, int cap);

    std::size_t dim(int n) const;
    const std::vector<GenId>& generators(int n) const { return gens_.at(static_cast<std::size_t>(n)); }
    const std::vector<Vec>& reps(int n) const { return hom_.at(static_cast<std::size_t>(n)).reps; }
    // Coordinates (over generators of degree n) of a linear element.
    Vec to_vector(const Element& linear, int n) const;
    std::optional<Vec> coords(const Vec& v, int n) const;
    Vec project(const Vec& v, int n) const;
    int cap() const { return cap_; }

private:
    AlgebraPtr alg_;
    int cap_;
    std::vector<std::vector<GenId>> gens_;  // degrees 0..cap+1
    std::vector<std::map<GenId, std::size_t>> index_;
    std::vector<DegreeHomology> hom_;
};

class RelativeSullivanModel {
public:
    // Stage of a fiber generator defaults to its degree; `stages` overrides
    // this per generator (base generators must stay at stage 0).
    RelativeSullivanModel(AlgebraPtr algebra, std::vector<bool> fiber, std::optional<std::vector<int>> stages = {},
                          std::optional<int> truncated_at = {});

    const AlgebraPtr& algebra() const { return alg_; }
    bool is_fiber(GenId id) const { return fiber_.at(id); }
    bool is_base(GenId id) const { return !fiber_.at(id); }
    int stage(GenId id) const { return stages_.at(id); }
    const std::vector<int>& stages() const { return stages_; }
    const std::vector<bool>& fiber_mask() const { return fiber_; }
    bool has_stage_override() const { return override_; }
    std::optional<int> truncated_at() const { return truncated_; }
    std::vector<GenId> base_ids() const;
    std::vector<GenId> fiber_ids() const;
    int max_stage() const;
    // Base sub-CDGA ∧V.
    AlgebraPtr base_algebra() const;
    RelativeSullivanModel with_cap(int cap) const;

private:
    AlgebraPtr alg_;
    std::vector<bool> fiber_;
    std::vector<int> stages_;
    bool override_ = false;
    std::optional<int> truncated_;
};

// Base closed under d, no linear fiber term in d(w), acyclic same-degree
// dependency among fiber generators.
CheckResult verify_minimality(const RelativeSullivanModel& m);

// Matrix of H^n(f) in the representative bases.
Matrix induced_map(const Morphism& f, const Cohomology& hs, const Cohomology& ht, int n);

CheckResult verify_quasi_iso(const Morphism& f, int cap);
CheckResult verify_isomorphism_pair(const Morphism& f, const Morphism& g);

}  // namespace pcdga
