#include "pcdga/interleaving.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pcdga {

namespace {

bool same_generators(const FreeCDGA& a, const FreeCDGA& b)
{
    if (a.size() != b.size())
        return false;
    for (GenId g = 0; g < a.size(); ++g)
        if (a.gen(g).name != b.gen(g).name || a.degree(g) != b.degree(g))
            return false;
    return true;
}

int floor_int(const mpq_class& q)
{
    return static_cast<int>(floor_q(q).get_si());
}

mpq_class frac(const mpq_class& q)
{
    return q - mpq_class(floor_q(q));
}

// Largest exponent of generator `id` in e.
std::uint32_t max_exponent(const Element& e, GenId id)
{
    std::uint32_t k = 0;
    for (const auto& t : e.terms())
        for (const auto& [g, x] : t.mono.factors)
            if (g == id)
                k = std::max(k, x);
    return k;
}

CheckResult check_endpoints(const Homotopy& h, const Morphism& composite, const char* side)
{
    const FreeCDGA& s = *h.map.source();
    const FreeCDGA& b = *h.path->base();
    CheckResult first;
    for (int orient = 0; orient < 2; ++orient) {
        CheckResult r;
        for (GenId id = 0; id < s.size() && r.ok; ++id) {
            Element img = h.map.image(id);
            Element comp = composite.image(id);
            Element ident = s.gen_element(id);
            Element e0 = h.path->ev(img, 0);
            Element e1 = h.path->ev(img, 1);
            const Element& want0 = orient == 0 ? comp : ident;
            const Element& want1 = orient == 0 ? ident : comp;
            if (e0 != want0)
                r = CheckResult::fail("endpoint", s.gen(id).name,
                                      std::string(side) + ": ev0 gives " + b.str(e0) + ", expected " + b.str(want0));
            else if (e1 != want1)
                r = CheckResult::fail("endpoint", s.gen(id).name,
                                      std::string(side) + ": ev1 gives " + b.str(e1) + ", expected " + b.str(want1));
        }
        if (r.ok)
            return r;
        if (orient == 0)
            first = r;
    }
    return first;
}

}  // namespace

bool CertificateReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.result.ok; });
}

const CertificateCheck* CertificateReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.result.ok)
            return &c;
    return nullptr;
}

std::string CertificateReport::str() const
{
    std::string s;
    for (const auto& c : checks)
        s += "check " + std::to_string(c.index) + " " + c.name + ": " + (c.result.ok ? "ok" : c.result.str()) + "\n";
    s += ok() ? "certificate verified\n" : "certificate rejected\n";
    return s;
}

CertificateReport verify_certificate(const InterleavingCertificate& c, const PersistenceCDGA& f,
                                     const PersistenceCDGA& g)
{
    CertificateReport rep;
    const FreeCDGA& fa = *f.colimit();
    const FreeCDGA& ga = *g.colimit();
    int e1 = floor_int(c.epsilon);
    int e2 = floor_int(c.epsilon * 2);

    auto guarded = [](auto fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            return CheckResult::fail("exception", "", e.what());
        }
    };

    rep.checks.push_back({1, "morphisms", guarded([&] {
                              if (sgn(c.epsilon) < 0)
                                  return CheckResult::fail("epsilon", "", "negative epsilon");
                              if (!same_generators(*c.phi.source(), fa) || !same_generators(*c.phi.target(), ga))
                                  return CheckResult::fail("shape", "phi", "phi does not map colim F to colim G");
                              if (!same_generators(*c.psi.source(), ga) || !same_generators(*c.psi.target(), fa))
                                  return CheckResult::fail("shape", "psi", "psi does not map colim G to colim F");
                              auto r = verify_morphism(c.phi);
                              if (!r) {
                                  r.detail = "phi: " + r.detail;
                                  return r;
                              }
                              r = verify_morphism(c.psi);
                              if (!r)
                                  r.detail = "psi: " + r.detail;
                              return r;
                          })});

    rep.checks.push_back({2, "stage_shift", guarded([&] {
                              for (GenId id = 0; id < fa.size(); ++id) {
                                  int s = stage_support(c.phi.image(id), g.staging());
                                  if (s > f.staging()[id] + e1)
                                      return CheckResult::fail("stage_shift", fa.gen(id).name,
                                                               "phi image has stage " + std::to_string(s) + " > " +
                                                                   std::to_string(f.staging()[id]) + " + " +
                                                                   std::to_string(e1));
                              }
                              for (GenId id = 0; id < ga.size(); ++id) {
                                  int s = stage_support(c.psi.image(id), f.staging());
                                  if (s > g.staging()[id] + e1)
                                      return CheckResult::fail("stage_shift", ga.gen(id).name,
                                                               "psi image has stage " + std::to_string(s) + " > " +
                                                                   std::to_string(g.staging()[id]) + " + " +
                                                                   std::to_string(e1));
                              }
                              return CheckResult::pass();
                          })});

    CheckResult tdeg;
    rep.checks.push_back({3, "homotopy_chain", guarded([&] {
                              if (!same_generators(*c.h_f.map.source(), fa) || !same_generators(*c.h_f.path->base(), fa))
                                  return CheckResult::fail("shape", "homotopy_F", "homotopy_F is not on colim F");
                              if (!same_generators(*c.h_g.map.source(), ga) || !same_generators(*c.h_g.path->base(), ga))
                                  return CheckResult::fail("shape", "homotopy_G", "homotopy_G is not on colim G");
                              for (const auto* h : {&c.h_f, &c.h_g}) {
                                  auto r = verify_morphism(h->map);
                                  if (!r && r.kind == "t_degree") {
                                      tdeg = r;
                                      continue;
                                  }
                                  if (!r) {
                                      r.detail = std::string(h == &c.h_f ? "homotopy_F: " : "homotopy_G: ") + r.detail;
                                      return r;
                                  }
                              }
                              return CheckResult::pass();
                          })});

    rep.checks.push_back({4, "endpoints", guarded([&] {
                              auto r = check_endpoints(c.h_f, compose(c.psi, c.phi), "homotopy_F");
                              if (!r)
                                  return r;
                              return check_endpoints(c.h_g, compose(c.phi, c.psi), "homotopy_G");
                          })});

    rep.checks.push_back({5, "homotopy_stage_shift", guarded([&] {
                              for (const auto& [h, p] : {std::pair{&c.h_f, &f}, std::pair{&c.h_g, &g}}) {
                                  const FreeCDGA& a = *h->map.source();
                                  for (GenId id = 0; id < a.size(); ++id) {
                                      int s = stage_support(h->map.image(id), p->staging());
                                      if (s > p->staging()[id] + e2)
                                          return CheckResult::fail("homotopy_stage_shift", a.gen(id).name,
                                                                   "homotopy image has stage " + std::to_string(s) +
                                                                       " > " + std::to_string(p->staging()[id]) +
                                                                       " + " + std::to_string(e2));
                                  }
                              }
                              return CheckResult::pass();
                          })});

    rep.checks.push_back({6, "t_degree", guarded([&] {
                              if (!tdeg)
                                  return tdeg;
                              for (const auto* h : {&c.h_f, &c.h_g}) {
                                  const FreeCDGA& a = *h->map.source();
                                  for (GenId id = 0; id < a.size(); ++id)
                                      if (max_exponent(h->map.image(id), h->path->t()) > h->path->t_cap())
                                          return CheckResult::fail("t_degree", a.gen(id).name,
                                                                   "t-degree above " + std::to_string(h->path->t_cap()));
                              }
                              return CheckResult::pass();
                          })});
    return rep;
}

CheckResult MapFamily::verify() const
{
    if (nondegenerate.is_zero())
        return CheckResult::fail("family", "", "nondegeneracy polynomial is zero");
    for (std::size_t b = 0; b < branches.size(); ++b) {
        auto r = verify_morphism(branches[b]);
        if (!r) {
            r.detail = "branch " + std::to_string(b + 1) + ": " + r.detail;
            return r;
        }
    }
    return CheckResult::pass();
}

Poly MapFamily::to_poly(const Element& e) const
{
    std::size_t nb = base->size();
    Poly p(parameters.size());
    for (const auto& t : e.terms()) {
        Poly::Exponents ex(parameters.size(), 0);
        for (const auto& [id, k] : t.mono.factors) {
            if (id < nb)
                throw std::invalid_argument("expression involves generator " + base->gen(id).name +
                                            " where only parameters are allowed");
            ex[id - nb] = k;
        }
        p.add_term(ex, t.coef);
    }
    return p;
}

Morphism MapFamily::specialize(std::size_t branch, const std::vector<Scalar>& values) const
{
    std::size_t nb = base->size();
    const Morphism& m = branches.at(branch);
    std::vector<Element> imgs;
    for (GenId g = 0; g < nb; ++g) {
        Element out;
        for (const auto& t : m.image(g).terms()) {
            Scalar c = t.coef;
            Monomial mono;
            for (const auto& [id, k] : t.mono.factors) {
                if (id < nb)
                    mono.factors.emplace_back(id, k);
                else
                    for (std::uint32_t j = 0; j < k; ++j)
                        c *= values.at(id - nb);
            }
            out += Element::monomial(mono, c);
        }
        imgs.push_back(out);
    }
    return Morphism(base, base, std::move(imgs));
}

std::string mechanism_name(Mechanism m)
{
    switch (m) {
    case Mechanism::ZeroFactorH:
        return "ZeroFactorH";
    case Mechanism::ZeroFactorHQ:
        return "ZeroFactorHQ";
    case Mechanism::NilpotentFactor:
        return "NilpotentFactor";
    case Mechanism::ModuleH:
        return "ModuleH";
    case Mechanism::ModuleHQ:
        return "ModuleHQ";
    case Mechanism::RigidFamilyHQ:
        return "RigidFamilyHQ";
    }
    return "?";
}

std::optional<Mechanism> parse_mechanism(std::string_view s)
{
    for (auto m : {Mechanism::ZeroFactorH, Mechanism::ZeroFactorHQ, Mechanism::NilpotentFactor, Mechanism::ModuleH,
                   Mechanism::ModuleHQ, Mechanism::RigidFamilyHQ})
        if (mechanism_name(m) == s)
            return m;
    return std::nullopt;
}

std::string Firing::str() const
{
    std::string s = mechanism_name(mechanism);
    switch (mechanism) {
    case Mechanism::ModuleH:
    case Mechanism::ModuleHQ:
        s += " degree " + std::to_string(degree);
        break;
    case Mechanism::RigidFamilyHQ:
        s += forward ? " F(0) -> G(0)" : " G(0) -> F(0)";
        break;
    default:
        s += std::string(forward ? " F(" : " G(") + std::to_string(a) + ") -> " + (forward ? "G(" : "F(") +
             std::to_string(b) + ") -> " + (forward ? "F(" : "G(") + std::to_string(c) + ") degree " +
             std::to_string(degree);
    }
    if (!detail.empty())
        s += ": " + detail;
    return s;
}

bool ObstructionReport::fired(Mechanism m) const
{
    return std::any_of(firings.begin(), firings.end(), [&](const Firing& f) { return f.mechanism == m; });
}

std::string ObstructionReport::str() const
{
    std::string s = "epsilon " + rational_str(epsilon) + "\ncap " + std::to_string(cap) + "\n";
    if (truncated)
        s += "truncated model: obstruction concerns the truncation\n";
    s += obstructed() ? "Obstructed\n" : "NoObstructionFound\n";
    for (const auto& f : firings)
        s += "  " + f.str() + "\n";
    for (const auto& i : inconclusive)
        s += "  inconclusive: " + i + "\n";
    return s;
}

std::string LowerBoundReport::str() const
{
    std::string s = "lower_bound " + value.str() + "\neps_max " + rational_str(eps_max) + "\ncap " +
                    std::to_string(cap) + "\n";
    if (truncated)
        s += "truncated model: bound concerns the truncation\n";
    for (const auto& r : scans) {
        mpq_class lo = r.epsilon - mpq_class(1, 4);
        mpq_class hi = r.epsilon + mpq_class(1, 4);
        s += "  [" + rational_str(lo) + ", " + rational_str(hi) + "): ";
        if (r.obstructed()) {
            s += "Obstructed by " + mechanism_name(r.firings.front().mechanism);
            if (r.firings.size() > 1)
                s += " (+" + std::to_string(r.firings.size() - 1) + " more)";
        } else {
            s += "NoObstructionFound";
        }
        s += "\n";
    }
    return s;
}

std::vector<std::array<int, 3>> triangle_pattern(const mpq_class& eps, int k)
{
    std::set<mpq_class> rs{mpq_class(0), frac(-eps), frac(-eps * 2)};
    std::set<std::array<int, 3>> out;
    for (const auto& r : rs)
        out.insert({k, k + floor_int(r + eps), k + floor_int(r + eps * 2)});
    return {out.begin(), out.end()};
}

ObstructionEngine::ObstructionEngine(const PersistenceCDGA& f, const PersistenceCDGA& g, int cap,
                                     const MapFamily* family)
    : hf_(ensure_cap(f, cap), cap), hg_(ensure_cap(g, cap), cap), cap_(cap), family_(family)
{
    if (f.colimit()->field() != g.colimit()->field())
        throw FieldMismatch("obstruction between models over different fields");
    auto bf = barcode(hf_.h_module()), bg = barcode(hg_.h_module());
    auto qf = barcode(hf_.hq_module()), qg = barcode(hg_.hq_module());
    for (int n = 0; n <= cap_; ++n) {
        module_h_.push_back(bottleneck(bars_in_degree(bf, n), bars_in_degree(bg, n)).value);
        module_hq_.push_back(bottleneck(bars_in_degree(qf, n), bars_in_degree(qg, n)).value);
    }
}

AlgebraMapVerdict::Kind ObstructionEngine::map_verdict(bool src_is_f, int s, bool tgt_is_f, int t, int n,
                                                       std::string& reason)
{
    const ThetaHomology& hs = src_is_f ? hf_ : hg_;
    const ThetaHomology& ht = tgt_is_f ? hf_ : hg_;
    auto key = std::make_tuple(src_is_f, hs.theta().stage_key(s), tgt_is_f, ht.theta().stage_key(t), n);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = verdicts_.find(key);
        if (it != verdicts_.end()) {
            reason = it->second.second;
            return it->second.first;
        }
    }
    auto v = algebra_map_space(hs.H(s), ht.H(t), {n});
    std::lock_guard<std::mutex> lock(mu_);
    verdicts_.emplace(key, std::pair{v.kind, v.reason});
    reason = v.reason;
    return v.kind;
}

void ObstructionEngine::triangles(const ThetaHomology& x, const ThetaHomology& y, bool forward, const mpq_class& eps,
                                  ObstructionReport& out)
{
    const PersistenceCDGA& px = x.theta();
    const PersistenceCDGA& py = y.theta();
    int last = std::max(px.last_stage(), py.last_stage());
    std::set<std::array<int, 3>> seen;
    std::set<std::string> inconclusive;
    for (int k = 0; k <= last; ++k)
        for (auto tri : triangle_pattern(eps, k)) {
            int a = px.clamp(tri[0]), b = py.clamp(tri[1]), c = px.clamp(tri[2]);
            if (!seen.insert({a, b, c}).second)
                continue;
            for (int n = 1; n <= cap_; ++n) {
                Matrix comp = x.h_map(n, a, c);
                std::size_t r = rank(comp);
                std::size_t dy = y.H(b).dim(n);
                bool zero_factor = r > dy;
                if (zero_factor)
                    out.firings.push_back({Mechanism::ZeroFactorH, forward, n, a, b, c,
                                           "rank " + std::to_string(r) + " through H^" + std::to_string(n) +
                                               " of dimension " + std::to_string(dy)});
                std::size_t rq = rank(x.hq_map(n, a, c));
                std::size_t dq = y.HQ(b).dim(n);
                if (rq > dq)
                    out.firings.push_back({Mechanism::ZeroFactorHQ, forward, n, a, b, c,
                                           "rank " + std::to_string(rq) + " through HQ^" + std::to_string(n) +
                                               " of dimension " + std::to_string(dq)});
                if (zero_factor || r == 0)
                    continue;
                std::string reason;
                auto k1 = map_verdict(forward, a, !forward, b, n, reason);
                if (k1 == AlgebraMapVerdict::Kind::OnlyTrivialOnDegree) {
                    out.firings.push_back({Mechanism::NilpotentFactor, forward, n, a, b, c,
                                           "every algebra map into the middle stage kills degree " +
                                               std::to_string(n)});
                    continue;
                }
                if (k1 == AlgebraMapVerdict::Kind::Inconclusive)
                    inconclusive.insert("maps out of source stage " + std::to_string(a) + ", degree " +
                                        std::to_string(n) + ": " + reason);
                auto k2 = map_verdict(!forward, b, forward, c, n, reason);
                if (k2 == AlgebraMapVerdict::Kind::OnlyTrivialOnDegree) {
                    out.firings.push_back({Mechanism::NilpotentFactor, forward, n, a, b, c,
                                           "every algebra map out of the middle stage kills degree " +
                                               std::to_string(n)});
                    continue;
                }
                if (k2 == AlgebraMapVerdict::Kind::Inconclusive)
                    inconclusive.insert("maps out of middle stage " + std::to_string(b) + ", degree " +
                                        std::to_string(n) + ": " + reason);
            }
        }
    for (const auto& s : inconclusive)
        out.inconclusive.push_back(std::string(forward ? "F->G->F " : "G->F->G ") + s);
}

void ObstructionEngine::rigid_family(const ThetaHomology& x, const ThetaHomology& y, bool forward,
                                     ObstructionReport& out)
{
    const MapFamily& fam = *family_;
    const FreeCDGA& xb = *x.theta().stage(0).alg;
    const FreeCDGA& yb = *y.theta().stage(0).alg;
    if (!same_generators(xb, *fam.base) || !same_generators(yb, *fam.base)) {
        out.inconclusive.push_back("automorphism family does not act on the common stage-0 algebra");
        return;
    }
    std::size_t np = fam.parameters.size();
    std::size_t nb = fam.base->size();
    Field field = fam.base->field();
    for (std::size_t br = 0; br < fam.branches.size(); ++br) {
        const Morphism& m = fam.branches[br];
        // linear part of each image: base generator -> polynomial coefficient
        std::vector<std::map<GenId, Poly>> lin(nb);
        for (GenId g = 0; g < nb; ++g)
            for (const auto& t : m.image(g).terms()) {
                Poly::Exponents ex(np, 0);
                std::optional<GenId> lone;
                std::size_t word = 0;
                for (const auto& [id, k] : t.mono.factors) {
                    if (id < nb) {
                        word += k;
                        lone = id;
                    } else {
                        ex[id - nb] = k;
                    }
                }
                if (word != 1)
                    continue;
                auto [it, ins] = lin[g].emplace(*lone, Poly(np));
                it->second.add_term(ex, t.coef);
            }

        ConstraintSystem sys(field, np);
        for (int n = 1; n <= cap_; ++n) {
            const LinearHomology& qx = x.HQ(0);
            const LinearHomology& qy = y.HQ(0);
            const auto& gx = qx.generators(n);
            const auto& gy = qy.generators(n);
            if (qx.dim(n) == 0)
                continue;
            std::map<GenId, std::size_t> yidx;
            for (std::size_t k = 0; k < gy.size(); ++k)
                yidx[gy[k]] = k;
            for (int s = 1; s <= x.theta().last_stage(); ++s) {
                auto ker = nullspace(x.hq_map(n, 0, s));
                if (ker.empty())
                    continue;
                Matrix my = y.hq_map(n, 0, s);
                for (const auto& kv : ker) {
                    Vec v(gx.size());
                    for (std::size_t j = 0; j < kv.size(); ++j)
                        for (std::size_t k = 0; k < gx.size(); ++k)
                            v[k] += kv[j] * qx.reps(n)[j][k];
                    // Qφ(v) sliced by parameter monomial
                    std::map<Poly::Exponents, Vec> slices;
                    for (std::size_t k = 0; k < gx.size(); ++k) {
                        if (v[k].is_zero())
                            continue;
                        for (const auto& [tg, poly] : lin[gx[k]])
                            for (const auto& [ex, c] : poly.terms()) {
                                auto& sl = slices.try_emplace(ex, Vec(gy.size())).first->second;
                                sl[yidx.at(tg)] += v[k] * c;
                            }
                    }
                    std::vector<Poly> eq(my.rows(), Poly(np));
                    for (const auto& [ex, vec] : slices) {
                        Vec img = my.apply(qy.project(vec, n));
                        for (std::size_t r = 0; r < img.size(); ++r) {
                            Poly t(np);
                            t.add_term(ex, img[r]);
                            eq[r] += t;
                        }
                    }
                    for (auto& e : eq)
                        sys.add(std::move(e));
                }
            }
        }
        auto red = sys.reduce();
        if (!red.infeasible && !red.reduce(fam.nondegenerate).is_zero())
            return;
    }
    out.firings.push_back({Mechanism::RigidFamilyHQ, forward, 0, 0, 0, 0,
                           "every automorphism of the stage-0 algebra is forced to be degenerate"});
}

ObstructionReport ObstructionEngine::obstruct(const mpq_class& eps)
{
    if (sgn(eps) < 0)
        throw std::invalid_argument("negative epsilon");
    ObstructionReport out;
    out.epsilon = eps;
    out.cap = cap_;
    out.truncated = hf_.theta().truncated().has_value() || hg_.theta().truncated().has_value();
    for (int n = 0; n <= cap_; ++n) {
        auto k = static_cast<std::size_t>(n);
        if (module_h_[k].is_inf() || module_h_[k].to_rational() > eps)
            out.firings.push_back({Mechanism::ModuleH, true, n, 0, 0, 0, "bottleneck " + module_h_[k].str()});
        if (module_hq_[k].is_inf() || module_hq_[k].to_rational() > eps)
            out.firings.push_back({Mechanism::ModuleHQ, true, n, 0, 0, 0, "bottleneck " + module_hq_[k].str()});
    }
    triangles(hf_, hg_, true, eps, out);
    triangles(hg_, hf_, false, eps, out);
    if (family_ && eps < mpq_class(1, 2)) {
        rigid_family(hf_, hg_, true, out);
        rigid_family(hg_, hf_, false, out);
    }
    return out;
}

LowerBoundReport ObstructionEngine::lower_bound_scan(const mpq_class& eps_max)
{
    LowerBoundReport rep;
    rep.eps_max = eps_max;
    rep.cap = cap_;
    rep.value = HalfValue::halves(0);
    rep.truncated = hf_.theta().truncated().has_value() || hg_.theta().truncated().has_value();
    for (long k = 0; mpq_class(k) < eps_max * 2; ++k) {
        mpq_class eps = mpq_class(k, 2) + mpq_class(1, 4);
        eps.canonicalize();
        auto r = obstruct(eps);
        if (r.obstructed())
            rep.value = std::max(rep.value, HalfValue::halves(k + 1));
        rep.scans.push_back(std::move(r));
    }
    return rep;
}

ObstructionReport obstruct(const PersistenceCDGA& f, const PersistenceCDGA& g, const mpq_class& eps, int cap,
                           const MapFamily* family)
{
    return ObstructionEngine(f, g, cap, family).obstruct(eps);
}

LowerBoundReport lower_bound_scan(const PersistenceCDGA& f, const PersistenceCDGA& g, int cap,
                                  const mpq_class& eps_max, const MapFamily* family)
{
    return ObstructionEngine(f, g, cap, family).lower_bound_scan(eps_max);
}

namespace {

// H^n(src(s)) → H^n(tgt(s)) through a stage-preserving colimit map.
CheckResult stage_quasi_iso(const ThetaHomology& src, const std::function<std::optional<Vec>(const Element&, int, int)>& image,
                            const std::function<std::size_t(int, int)>& target_dim, int last, const std::string& label)
{
    for (int s = 0; s <= last; ++s)
        for (int n = 0; n <= src.cap(); ++n) {
            std::vector<Vec> cols;
            for (const auto& r : src.H(s).reps(n)) {
                auto c = image(src.theta().stage(s).to_ambient(r), s, n);
                if (!c)
                    return CheckResult::fail("not_cocycle", label,
                                             "stage " + std::to_string(s) + ": image of a cocycle is not a cocycle");
                cols.push_back(*c);
            }
            std::size_t ds = src.H(s).dim(n), dt = target_dim(s, n);
            std::size_t r = rank(Matrix::from_columns(cols, dt));
            if (ds != dt || r != ds)
                return CheckResult::fail("quasi_iso", label,
                                         "stage " + std::to_string(s) + " degree " + std::to_string(n) + ": dims " +
                                             std::to_string(ds) + " -> " + std::to_string(dt) + ", rank " +
                                             std::to_string(r));
        }
    return CheckResult::pass();
}

}  // namespace

CheckResult verify_h_formality(const HFormalityZigzag& z, int cap)
{
    if (z.objects.empty() || z.arrows.size() + 1 != z.objects.size())
        return CheckResult::fail("shape", "", "zigzag needs one arrow between consecutive objects");
    std::vector<ThetaHomology> hs;
    for (const auto& o : z.objects)
        hs.emplace_back(ensure_cap(o, cap), cap);
    int last = 0;
    for (const auto& o : z.objects)
        last = std::max(last, o.last_stage());

    for (std::size_t i = 0; i < z.arrows.size(); ++i) {
        const auto& arrow = z.arrows[i];
        const ThetaHomology& src = hs[arrow.forward ? i : i + 1];
        const ThetaHomology& tgt = hs[arrow.forward ? i + 1 : i];
        std::string label = "arrow " + std::to_string(i);
        if (!same_generators(*arrow.map.source(), *src.theta().colimit()) ||
            !same_generators(*arrow.map.target(), *tgt.theta().colimit()))
            return CheckResult::fail("shape", label, "map does not join the adjacent objects");
        auto r = verify_morphism(arrow.map);
        if (!r) {
            r.generator = label + " " + r.generator;
            return r;
        }
        const FreeCDGA& a = *src.theta().colimit();
        for (GenId g = 0; g < a.size(); ++g) {
            int s = stage_support(arrow.map.image(g), tgt.theta().staging());
            if (s > src.theta().staging()[g])
                return CheckResult::fail("stage", label,
                                         "image of " + a.gen(g).name + " lives at stage " + std::to_string(s));
        }
        r = stage_quasi_iso(
            src,
            [&](const Element& e, int s, int n) {
                return tgt.H(s).coords(tgt.theta().stage(s).to_sub(arrow.map.apply(e)), n);
            },
            [&](int s, int n) { return tgt.H(s).dim(n); }, last, label);
        if (!r)
            return r;
    }

    const ThetaHomology& m = hs.back();
    const ThetaHomology& f = hs.front();
    const FreeCDGA& ma = *m.theta().colimit();
    const FreeCDGA& fa = *f.theta().colimit();
    std::string label = "arrow " + std::to_string(z.arrows.size());
    if (z.to_cohomology.size() != ma.size())
        return CheckResult::fail("shape", label, "final arrow needs one representative per generator");
    Morphism rep(m.theta().colimit(), f.theta().colimit(), z.to_cohomology);
    for (GenId g = 0; g < ma.size(); ++g) {
        const Element& c = z.to_cohomology[g];
        int st = m.theta().staging()[g];
        if (!c.is_zero() && fa.degree(c) != ma.degree(g))
            return CheckResult::fail("degree", label + " " + ma.gen(g).name, "representative has the wrong degree");
        if (stage_support(c, f.theta().staging()) > st)
            return CheckResult::fail("stage", label + " " + ma.gen(g).name, "representative lives above its stage");
        if (!fa.d(c).is_zero())
            return CheckResult::fail("not_cocycle", label + " " + ma.gen(g).name, "representative is not a cocycle");
        int n = ma.degree(g) + 1;
        if (n > cap)
            continue;
        Element dg = f.theta().stage(st).to_sub(rep.apply(ma.d(g)));
        auto co = f.H(st).coords(dg, n);
        if (!co || !is_zero(*co))
            return CheckResult::fail("not_exact", label + " " + ma.gen(g).name,
                                     "image of the differential is not exact at stage " + std::to_string(st));
    }
    return stage_quasi_iso(
        m,
        [&](const Element& e, int s, int n) { return f.H(s).coords(f.theta().stage(s).to_sub(rep.apply(e)), n); },
        [&](int s, int n) { return f.H(s).dim(n); }, last, label);
}

}  // namespace pcdga
