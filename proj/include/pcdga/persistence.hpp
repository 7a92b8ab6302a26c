#pragma once

#include "pcdga/sullivan.hpp"

#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace pcdga {

class StageEscape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Θ(t) = ∧V ⊗ ∧W^{≤⌊t⌋} over integer stages; constant from N on.
class PersistenceCDGA {
public:
    explicit PersistenceCDGA(RelativeSullivanModel m);

    const RelativeSullivanModel& model() const { return model_; }
    const AlgebraPtr& colimit() const { return model_.algebra(); }
    const std::vector<int>& staging() const { return model_.stages(); }
    int N() const { return n_; }
    int last_stage() const { return n_ + 1; }
    int clamp(int s) const { return s < 0 ? 0 : (s > n_ ? n_ : s); }
    std::optional<int> truncated() const { return model_.truncated_at(); }
    const CheckResult& minimality() const { return minimality_; }

    const SubAlgebra& stage(int s) const { return *stages_[key_[static_cast<std::size_t>(clamp(s))]]; }
    std::size_t stage_key(int s) const { return key_[static_cast<std::size_t>(clamp(s))]; }
    std::size_t distinct_stages() const { return stages_.size(); }

private:
    RelativeSullivanModel model_;
    int n_ = 0;
    CheckResult minimality_;
    std::vector<std::size_t> key_;  // stage 0..N -> distinct sub-algebra
    std::vector<std::shared_ptr<const SubAlgebra>> stages_;
};

PersistenceCDGA build_theta(const RelativeSullivanModel& m);
// Same object with an algebra cap of at least cap + 1.
PersistenceCDGA ensure_cap(const PersistenceCDGA& p, int cap);

// Dimensions and transition matrices per degree over stages 0..last.
struct PersistenceModule {
    int cap = 0;
    int last = 0;
    std::vector<std::vector<std::size_t>> dims;  // [degree][stage]
    std::vector<std::vector<Matrix>> maps;       // [degree][s]: stage s -> s+1

    Matrix composite(int n, int s, int t) const;
    std::size_t rank(int n, int s, int t) const;
};

// Stage-wise cohomology and linear-part homology of a persistence CDGA.
class ThetaHomology {
public:
    ThetaHomology(const PersistenceCDGA& p, int cap);

    const PersistenceCDGA& theta() const { return p_; }
    int cap() const { return cap_; }
    const Cohomology& H(int stage) const { return *h_[p_.stage_key(stage)]; }
    const LinearHomology& HQ(int stage) const { return *hq_[p_.stage_key(stage)]; }
    const PersistenceModule& h_module() const { return hmod_; }
    const PersistenceModule& hq_module() const { return hqmod_; }

    // Matrix of H^n(Θ(s) -> Θ(t)) and HQ^n(Θ(s) -> Θ(t)).
    Matrix h_map(int n, int s, int t) const { return hmod_.composite(n, p_.clamp(s), p_.clamp(t)); }
    Matrix hq_map(int n, int s, int t) const { return hqmod_.composite(n, p_.clamp(s), p_.clamp(t)); }

private:
    PersistenceCDGA p_;
    int cap_;
    std::vector<std::shared_ptr<const Cohomology>> h_;
    std::vector<std::shared_ptr<const LinearHomology>> hq_;
    PersistenceModule hmod_;
    PersistenceModule hqmod_;
};

PersistenceModule persistence_cohomology(const PersistenceCDGA& p, int cap);
PersistenceModule persistence_linear_homology(const PersistenceCDGA& p, int cap);

constexpr int kInf = std::numeric_limits<int>::max();

struct Bar {
    int degree = 0;
    int birth = 0;
    int death = kInf;
    friend auto operator<=>(const Bar&, const Bar&) = default;
};

using Barcode = std::vector<Bar>;

// Interval decomposition; bars alive at the last stage get death kInf.
Barcode barcode(const PersistenceModule& m);
// One line `degree birth death` per bar, `inf` for an infinite death.
std::string serialize(const Barcode& b);
Barcode parse_barcode(const std::string& text);
bool barcode_matches_dims(const Barcode& b, const PersistenceModule& m);

// Value at stage s is the original value at stage ⌊s + eps⌋.
PersistenceModule shift(const PersistenceModule& m, const mpq_class& eps);

mpz_class floor_q(const mpq_class& q);

}  // namespace pcdga
