#pragma once

#include "pcdga/constraints.hpp"
#include "pcdga/distance.hpp"
#include "pcdga/persistence.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace pcdga {

// Colimit-level ε-interleaving: φ: colim F → colim G, ψ: colim G → colim F and
// homotopies into the path objects witnessing ψφ ≃ id_F and φψ ≃ id_G.
struct InterleavingCertificate {
    mpq_class epsilon;
    Morphism phi;
    Morphism psi;
    Homotopy h_f;
    Homotopy h_g;
};

struct CertificateCheck {
    int index = 0;
    std::string name;
    CheckResult result;
};

struct CertificateReport {
    std::vector<CertificateCheck> checks;

    bool ok() const;
    const CertificateCheck* first_failure() const;
    std::string str() const;
};

// Six checks: (1) φ, ψ are morphisms between the colimits, (2) stage shift
// ≤ ⌊ε⌋, (3) homotopies are chain maps, (4) endpoints are the composite and
// the identity, (5) homotopy stage shift ≤ ⌊2ε⌋, (6) t-degree within its cap.
CertificateReport verify_certificate(const InterleavingCertificate& c, const PersistenceCDGA& f,
                                     const PersistenceCDGA& g);

// Parametrized automorphisms of a common stage-0 algebra ∧V. Each branch
// sends base generators to elements of ∧V ⊗ Q[parameters]; a parameter
// value gives an isomorphism exactly when `nondegenerate` does not vanish.
struct MapFamily {
    std::vector<std::string> parameters;
    AlgebraPtr base;
    AlgebraPtr extended;  // base generators followed by degree-0 parameters
    Poly nondegenerate;
    std::vector<Morphism> branches;  // base -> extended

    // Each branch is a chain map for all parameter values.
    CheckResult verify() const;
    // Degree-0 element of `extended` in parameters only, as a polynomial.
    Poly to_poly(const Element& e) const;
    // Specialization of a branch at parameter values.
    Morphism specialize(std::size_t branch, const std::vector<Scalar>& values) const;
};

enum class Mechanism { ZeroFactorH, ZeroFactorHQ, NilpotentFactor, ModuleH, ModuleHQ, RigidFamilyHQ };

std::string mechanism_name(Mechanism m);
std::optional<Mechanism> parse_mechanism(std::string_view s);

struct Firing {
    Mechanism mechanism = Mechanism::ZeroFactorH;
    bool forward = true;  // triangle F → G → F (false: G → F → G)
    int degree = 0;
    int a = 0, b = 0, c = 0;  // source, middle and target stages
    std::string detail;

    std::string str() const;
};

struct ObstructionReport {
    mpq_class epsilon;
    int cap = 0;
    bool truncated = false;
    std::vector<Firing> firings;
    std::vector<std::string> inconclusive;

    bool obstructed() const { return !firings.empty(); }
    bool fired(Mechanism m) const;
    std::string str() const;
};

struct LowerBoundReport {
    HalfValue value;
    mpq_class eps_max;
    int cap = 0;
    bool truncated = false;
    std::vector<ObstructionReport> scans;  // one per grid interval [k/2, (k+1)/2)

    std::string str() const;
};

// Stage triples (a, b, c) of the triangles X(t) → Y(t+ε) → X(t+2ε) with t
// ranging over [k, k+1), before clamping.
std::vector<std::array<int, 3>> triangle_pattern(const mpq_class& eps, int k);

class ObstructionEngine {
public:
    ObstructionEngine(const PersistenceCDGA& f, const PersistenceCDGA& g, int cap, const MapFamily* family = nullptr);

    const ThetaHomology& hf() const { return hf_; }
    const ThetaHomology& hg() const { return hg_; }
    int cap() const { return cap_; }

    ObstructionReport obstruct(const mpq_class& eps);
    // Scans ε = k/2 + 1/4 for k < 2·eps_max; an obstruction at that point
    // rules out every ε < (k+1)/2.
    LowerBoundReport lower_bound_scan(const mpq_class& eps_max);

private:
    void triangles(const ThetaHomology& x, const ThetaHomology& y, bool forward, const mpq_class& eps,
                   ObstructionReport& out);
    void rigid_family(const ThetaHomology& x, const ThetaHomology& y, bool forward, ObstructionReport& out);
    // Verdict for graded algebra maps H(src(s)) → H(tgt(t)) on degree n.
    AlgebraMapVerdict::Kind map_verdict(bool src_is_f, int s, bool tgt_is_f, int t, int n, std::string& reason);

    ThetaHomology hf_;
    ThetaHomology hg_;
    int cap_;
    const MapFamily* family_;
    std::vector<HalfValue> module_h_;   // per-degree bottleneck of H barcodes
    std::vector<HalfValue> module_hq_;  // and of HQ barcodes
    std::mutex mu_;
    std::map<std::tuple<bool, std::size_t, bool, std::size_t, int>, std::pair<AlgebraMapVerdict::Kind, std::string>>
        verdicts_;
};

ObstructionReport obstruct(const PersistenceCDGA& f, const PersistenceCDGA& g, const mpq_class& eps, int cap,
                           const MapFamily* family = nullptr);
LowerBoundReport lower_bound_scan(const PersistenceCDGA& f, const PersistenceCDGA& g, int cap,
                                  const mpq_class& eps_max, const MapFamily* family = nullptr);

// F = objects[0] ↔ objects[1] ↔ … ↔ objects[k] → H(F). Arrow i joins
// objects[i] and objects[i+1] (forward: i → i+1). The final arrow sends each
// generator of objects[k] to a cocycle of colim F representing its class.
struct ZigzagArrow {
    bool forward = true;
    Morphism map;
};

struct HFormalityZigzag {
    std::vector<PersistenceCDGA> objects;
    std::vector<ZigzagArrow> arrows;
    std::vector<Element> to_cohomology;
};

// Every arrow is stage-preserving and a quasi-isomorphism at every stage in
// degrees ≤ cap; failures name the arrow (index = arrows.size() for the final
// arrow) and the stage.
CheckResult verify_h_formality(const HFormalityZigzag& z, int cap);

}  // namespace pcdga
