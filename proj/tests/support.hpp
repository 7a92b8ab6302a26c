#pragma once

#include "pcdga/corpus.hpp"
#include "pcdga/parse.hpp"

#include <random>
#include <string>
#include <vector>

namespace pcdga::testing {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, Field f, int range = 3)
{
    std::uniform_int_distribution<int> v(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    mpq_class re(v(rng), den(rng));
    re.canonicalize();
    if (f == Field::Q)
        return Scalar(re);
    mpq_class im(v(rng), den(rng));
    im.canonicalize();
    return Scalar(re, im);
}

// Entries are zero with probability `sparsity`, which keeps ranks varied.
inline Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, Field f, double sparsity = 0.4)
{
    std::bernoulli_distribution zero(sparsity);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = zero(rng) ? Scalar(0) : random_scalar(rng, f);
    return m;
}

// Random homogeneous element of degree n (possibly zero when the degree is empty).
inline Element random_element(Rng& rng, const FreeCDGA& a, int n, int max_terms = 4)
{
    auto basis = a.monomial_basis(n);
    if (basis.empty())
        return {};
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    Element e;
    for (int k = count(rng); k > 0; --k)
        e += Element::monomial(basis[pick(rng)], random_scalar(rng, a.field()));
    return e;
}

struct CorpusModel {
    std::string entry;
    std::string file;
    int cap = 0;
    PersistenceCDGA model;
};

inline std::vector<CorpusModel> corpus_models()
{
    std::vector<CorpusModel> out;
    for (const auto& e : all_entries()) {
        auto l = load(e);
        out.push_back({e.name, e.a, l.cap, l.models[0]});
        if (!e.b.empty())
            out.push_back({e.name, e.b, l.cap, l.models[1]});
    }
    return out;
}

inline PersistenceCDGA model_from(const std::string& text, int cap = 0)
{
    return build_theta(parse_model(text, {}, cap).model);
}

}  // namespace pcdga::testing
