#pragma once

#include "pcdga/sullivan.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pcdga {

// Commutative polynomial in a fixed number of scalar unknowns.
class Poly {
public:
    using Exponents = std::vector<std::uint32_t>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : n_(nvars) {}
    static Poly constant(std::size_t nvars, const Scalar& c);
    static Poly var(std::size_t nvars, std::size_t v, const Scalar& c = Scalar(1));

    std::size_t nvars() const { return n_; }
    const std::map<Exponents, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::optional<Scalar> as_constant() const;
    bool uses(std::size_t v) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Scalar& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly&, const Poly&) = default;

    void add_term(const Exponents& e, const Scalar& c);
    Poly substitute(std::size_t v, const Poly& value) const;
    Scalar evaluate(const std::vector<Scalar>& values) const;
    std::string str(const std::vector<std::string>& names = {}) const;

private:
    std::size_t n_ = 0;
    std::map<Exponents, Scalar> t_;
};

// Equations p = 0 over a field, reduced by a small sound rule set.
class ConstraintSystem {
public:
    ConstraintSystem(Field field, std::size_t nvars) : field_(field), n_(nvars) {}

    Field field() const { return field_; }
    std::size_t nvars() const { return n_; }
    void add(Poly p);
    const std::vector<Poly>& equations() const { return eqs_; }

    struct Reduced {
        bool infeasible = false;
        // Solved unknowns as polynomials in the remaining unknowns.
        std::vector<std::optional<Poly>> solved;
        std::vector<Poly> residual;

        Poly reduce(const Poly& p) const;
        bool forced_zero(std::size_t v) const { return solved[v] && solved[v]->is_zero(); }
        std::vector<std::size_t> free_vars() const;
    };

    // Rules: substitution, nonzero constant ⇒ infeasible, c·v^k = 0 ⇒ v = 0,
    // elimination of a variable occurring only linearly, and over Q a
    // definite sum of even single-variable powers ⇒ all vanish.
    Reduced reduce() const;

    // Search {0, ±1} (and ±i over Q(i)) on the free unknowns of `r`.
    // `accept` is tested on full assignments satisfying every equation.
    std::optional<std::vector<Scalar>> search_witness(const Reduced& r, std::size_t max_free,
                                                      const std::function<bool(const std::vector<Scalar>&)>& accept) const;

private:
    Field field_;
    std::size_t n_;
    std::vector<Poly> eqs_;
};

struct AlgebraMapVerdict {
    enum class Kind { OnlyTrivialOnDegree, ExistsWitness, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int degree = 0;
    // For ExistsWitness: matrix of the map per degree, columns are images of
    // source classes.
    std::map<int, Matrix> assignment;
    std::string reason;

    std::string str() const;
};

// Graded algebra maps H(source) → H(target) (unital, degrees ≥ 1 free).
// Reports OnlyTrivialOnDegree(n) for the first n in `degrees` on which every
// such map vanishes.
AlgebraMapVerdict algebra_map_space(const Cohomology& source, const Cohomology& target, const std::vector<int>& degrees);

}  // namespace pcdga
