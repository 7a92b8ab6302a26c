#pragma once

#include "pcdga/scalar.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcdga {

using GenId = std::uint32_t;

struct Generator {
    std::string name;
    int degree = 1;
};

// Product of generators in canonical (ascending id) order. Odd generators
// appear with exponent 1.
struct Monomial {
    std::vector<std::pair<GenId, std::uint32_t>> factors;

    bool is_one() const { return factors.empty(); }
    std::size_t word_length() const;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Term {
    Monomial mono;
    Scalar coef;
    friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coef == b.coef; }
};

// Linear combination of distinct monomials sorted by monomial order, with
// nonzero coefficients. The empty term list is zero. Addition needs no algebra;
// products and differentials go through FreeCDGA.
class Element {
public:
    Element() = default;
    explicit Element(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}

    static Element constant(const Scalar& c);
    static Element monomial(Monomial m, const Scalar& c = Scalar(1));

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<Scalar> as_constant() const;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Scalar& c);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Scalar& c) { return a *= c; }
    friend Element operator*(const Scalar& c, Element a) { return a *= c; }
    Element operator-() const;

    friend bool operator==(const Element&, const Element&) = default;

private:
    std::vector<Term> terms_;
};

// Raw product as written: coefficient and generator factors in any order.
struct RawTerm {
    Scalar coef;
    std::vector<std::pair<GenId, std::uint32_t>> factors;
};

// Free graded-commutative algebra on named generators with a differential.
// Immutable after construction; share through AlgebraPtr.
class FreeCDGA {
public:
    struct Options {
        int cap = 16;
        // Permit degree-0 generators (used for the interval coordinate t and
        // polynomial parameters). Such algebras have no finite monomial bases.
        bool allow_degree_zero = false;
        // Per-generator exponent bound; 0 means unbounded. Exceeding it throws.
        std::vector<std::uint32_t> exponent_caps;
    };

    FreeCDGA(Field field, std::vector<Generator> gens, std::vector<Element> differential, Options opt);
    FreeCDGA(Field field, std::vector<Generator> gens, std::vector<Element> differential, int cap);

    Field field() const { return field_; }
    int cap() const { return opt_.cap; }
    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(GenId id) const { return gens_.at(id); }
    int degree(GenId id) const { return gens_[id].degree; }
    bool is_odd(GenId id) const { return (gens_[id].degree & 1) != 0; }
    std::optional<GenId> find(std::string_view name) const;
    const Element& d(GenId id) const { return diff_.at(id); }
    int max_degree() const;
    bool allows_degree_zero() const { return opt_.allow_degree_zero; }
    const Options& options() const { return opt_; }

    Element gen_element(GenId id) const;
    int degree(const Monomial& m) const;
    // Common degree, or nullopt for zero and for mixed elements.
    std::optional<int> degree(const Element& e) const;

    Element normalize(const std::vector<RawTerm>& raw) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, std::uint32_t k) const;
    Element d(const Element& a) const;
    Element linear_part(const Element& a) const;

    // Monomials of total degree n (n ≥ 0), ascending monomial order.
    std::vector<Monomial> monomial_basis(int n) const;

    std::string str(const Monomial& m) const;
    std::string str(const Element& e) const;

    // Copy with a different cap.
    std::shared_ptr<const FreeCDGA> with_cap(int cap) const;

private:
    // Returns sign (0 when the product vanishes) and fills out.
    int mul_mono(const Monomial& a, const Monomial& b, Monomial& out) const;
    void check_exponent(GenId id, std::uint32_t e) const;

    Field field_;
    std::vector<Generator> gens_;
    std::vector<Element> diff_;
    Options opt_;
};

using AlgebraPtr = std::shared_ptr<const FreeCDGA>;

AlgebraPtr make_algebra(Field field, std::vector<Generator> gens, std::vector<Element> differential, int cap);

struct CheckResult {
    bool ok = true;
    std::string kind;       // e.g. "degree", "chain", "endpoint"
    std::string generator;  // offending generator name, if any
    std::string detail;

    explicit operator bool() const { return ok; }
    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string kind, std::string generator, std::string detail)
    {
        return {false, std::move(kind), std::move(generator), std::move(detail)};
    }
    std::string str() const;
};

// d(d(g)) = 0 for every generator g with degree(g) + 2 ≤ cap; also checks that
// d raises degree by one.
CheckResult check_d_squared(const FreeCDGA& a);

class Morphism {
public:
    Morphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images);
    static Morphism identity(const AlgebraPtr& a);
    static Morphism zero(const AlgebraPtr& source, const AlgebraPtr& target);

    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return tgt_; }
    const Element& image(GenId id) const { return images_.at(id); }
    const std::vector<Element>& images() const { return images_; }

    Element apply(const Element& e) const;

private:
    AlgebraPtr src_;
    AlgebraPtr tgt_;
    std::vector<Element> images_;
};

// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);

CheckResult verify_morphism(const Morphism& m);

// A ⊗ ∧(t, dt): the generators of A followed by t (degree 0, even) and dt
// (degree 1) with d(t) = dt. Polynomial degree in t is capped.
class IntervalTensor {
public:
    explicit IntervalTensor(AlgebraPtr base, std::uint32_t t_cap = 8);

    const AlgebraPtr& base() const { return base_; }
    const AlgebraPtr& algebra() const { return ext_; }
    GenId t() const { return static_cast<GenId>(base_->size()); }
    GenId dt() const { return static_cast<GenId>(base_->size() + 1); }
    std::uint32_t t_cap() const { return t_cap_; }

    Element lift(const Element& base_element) const { return base_element; }
    // Evaluation t ↦ endpoint, dt ↦ 0.
    Element ev(const Element& e, int endpoint) const;
    Morphism ev_morphism(int endpoint) const;

private:
    AlgebraPtr base_;
    AlgebraPtr ext_;
    std::uint32_t t_cap_;
};

class TDegreeOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Homotopy {
    std::shared_ptr<const IntervalTensor> path;
    Morphism map;  // source → path->algebra()
};

// H is a chain algebra map with ev0∘H = f and ev1∘H = g on generators.
CheckResult verify_homotopy(const Homotopy& h, const Morphism& f, const Morphism& g);

Homotopy constant_homotopy(const Morphism& f, std::shared_ptr<const IntervalTensor> path);

// Largest stage over generators occurring in e; ids outside `staging`
// (t, dt) count as stage 0.
int stage_support(const Element& e, const std::vector<int>& staging);

}  // namespace pcdga
