#include "moddist/weildeligne.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "moddist/characters.hpp"
#include "moddist/localfield.hpp"
#include "moddist/rootunity.hpp"

namespace moddist {

namespace {

long long mult_order(long long q, long long ell) {
    long long r = ((q % ell) + ell) % ell;
    if (r == 0)
        throw std::invalid_argument("wrong-domain: q divisible by ell");
    long long d = 1;
    long long x = r;
    while (x != 1) {
        x = (x * r) % ell;
        ++d;
    }
    return d;
}

// the norm character of the field phi represents, on phi's own domain
SmoothCharacter side_nu(const WeilRep2& phi) {
    const FieldSpec& spec = phi.ctx().spec();
    long long q = phi.over_base_field() ? spec.qF() : spec.qE();
    const UnitGroupModel* dom = phi.kind() == WeilRep2::Kind::Sum
                                    ? phi.chi1().dom
                                    : &phi.tower()->base_units();
    return nu_character(dom, q, spec.ell);
}

struct GenImage {
    Mat2 rho;
    Fq nu;
};

// phi and nu evaluated at the generators of phi's group, over K
std::vector<GenImage> generator_images(const WeilRep2& phi,
                                       const SmoothCharacter& nu,
                                       const FqContext* K) {
    std::vector<GenImage> out;
    if (phi.kind() == WeilRep2::Kind::Sum) {
        const UnitGroupModel* dom = phi.chi1().dom;
        auto add = [&](FieldElem g) {
            Mat2 rho = Mat2::diag(K->embed_root(phi.chi1().eval(g)),
                                  K->embed_root(phi.chi2().eval(g)));
            out.push_back({rho, K->embed_root(nu.eval(g))});
        };
        for (const auto& f : dom->grp.factors)
            add(fe_unit(dom->ring, f.gen));
        add(fe_unif());
        return out;
    }
    const WeilTower& tw = *phi.tower();
    const SmoothCharacter& th = phi.theta();
    const SmoothCharacter& ths = phi.theta_conj();
    for (const WeilElem& w : tw.generators()) {
        Mat2 rho = Mat2::zero(K);
        if (w.eps == 0) {
            rho = Mat2::diag(K->embed_root(th.eval(w.x)),
                             K->embed_root(ths.eval(w.x)));
        } else {
            FieldElem xt = fe_mul(tw.top_ring(), w.x, tw.t_in_top());
            rho = Mat2::antidiag(K->embed_root(th.eval(xt)),
                                 K->embed_root(ths.eval(w.x)));
        }
        out.push_back({rho, K->embed_root(nu.eval(tw.abelianized(w)))});
    }
    return out;
}

bool check_law(const std::vector<GenImage>& gens, const Mat2& N) {
    for (const GenImage& g : gens)
        if (g.rho * N != (N * g.rho).scaled(g.nu))
            return false;
    return true;
}

// basis of {N : rho N = nu N rho on every generator}
std::vector<Mat2> solve_N(const std::vector<GenImage>& gens, const FqContext* K) {
    std::vector<std::vector<Fq>> rows;
    Fq z = K->zero();
    for (const GenImage& g : gens) {
        const Fq& p = g.rho.a;
        const Fq& q = g.rho.b;
        const Fq& r = g.rho.c;
        const Fq& s = g.rho.d;
        const Fq& n = g.nu;
        rows.push_back({p - n * p, -(n * r), q, z});
        rows.push_back({-(n * q), p - n * s, z, q});
        rows.push_back({r, z, s - n * p, -(n * r)});
        rows.push_back({z, r, -(n * q), s - n * s});
    }
    std::vector<Mat2> basis;
    for (const auto& v : nullspace(std::move(rows), 4, K))
        basis.push_back(Mat2(v[0], v[1], v[2], v[3]));
    return basis;
}

bool ru_less(const RootOfUnity& x, const RootOfUnity& y) {
    if (x.den() != y.den())
        return x.den() < y.den();
    return x.num() < y.num();
}

bool chi_less(const SmoothCharacter& a, const SmoothCharacter& b) {
    if (a.unif_value != b.unif_value)
        return ru_less(a.unif_value, b.unif_value);
    for (size_t i = 0; i < a.unit_values.size() && i < b.unit_values.size(); ++i)
        if (a.unit_values[i] != b.unit_values[i])
            return ru_less(a.unit_values[i], b.unit_values[i]);
    return a.unit_values.size() < b.unit_values.size();
}

// first nonzero entry (row-major) rescaled to 1; N != 0
Mat2 normalize_scale(const Mat2& N) {
    Fq lead = !N.a.is_zero()   ? N.a
              : !N.b.is_zero() ? N.b
              : !N.c.is_zero() ? N.c
                               : N.d;
    return N.scaled(lead.inverse());
}

struct NForm {
    std::string label;
    int a = 0, b = 0, c = 0, d = 0;
};

// normal form of N on a sum of characters (components already ordered)
NForm classify_sum_N(bool repeated, const Mat2& N) {
    if (N.is_zero())
        return {"0", 0, 0, 0, 0};
    if (repeated) {
        if (!N.det().is_zero()) {
            bool scalar = N.b.is_zero() && N.c.is_zero() && N.a == N.d;
            Fq disc = N.trace() * N.trace() - (N.det() + N.det() + N.det() + N.det());
            if (scalar || !disc.is_zero())
                return {"diag(1,-1)", 1, 0, 0, -1};
            return {"jordan", 1, 1, 0, 1};
        }
        if (N.trace().is_zero())
            return {"E12", 0, 1, 0, 0};
        return {"diag(1,0)", 1, 0, 0, 0};
    }
    bool upper = !N.b.is_zero();
    bool lower = !N.c.is_zero();
    if (upper || lower) {
        if (upper && lower)
            return {"antidiag(1,1)", 0, 1, 1, 0};
        if (upper)
            return {"E12", 0, 1, 0, 0};
        return {"E21", 0, 0, 1, 0};
    }
    bool first = !N.a.is_zero();
    bool second = !N.d.is_zero();
    if (first && second)
        return {"diag(1,-1)", 1, 0, 0, -1};
    if (first)
        return {"diag(1,0)", 1, 0, 0, 0};
    return {"diag(0,1)", 0, 0, 0, 1};
}

bool q_congruent(long long q, long long ell, long long r) {
    return ((q - r) % ell + ell) % ell == 0;
}

// multiplicative transport of a root of unity (or zero) between value fields
Fq transport(const FqContext* to, const Fq& x) {
    if (x.is_zero())
        return to->zero();
    return to->embed_root(x.ctx()->dlog(x));
}

} // namespace

std::shared_ptr<const FqContext> wd_value_field(const WeilRep2& phi) {
    const FieldSpec& spec = phi.ctx().spec();
    long long n = phi.value_order();
    n = std::lcm(n, mult_order(spec.qF(), spec.ell));
    n = std::lcm(n, mult_order(spec.qE(), spec.ell));
    n = std::lcm(n, 2LL);
    return value_field(spec.ell, value_field_degree(spec.ell, n));
}

Mat2 mat2_from_ints(const FqContext* F, long long a, long long b, long long c,
                    long long d) {
    return Mat2(F->from_int(a), F->from_int(b), F->from_int(c), F->from_int(d));
}

bool is_nilpotent(const Mat2& N) { return N.trace().is_zero() && N.det().is_zero(); }

bool validate(const WeilRep2& phi, const Mat2& N) {
    auto K = wd_value_field(phi);
    if (N.a.ctx() != K.get() || N.b.ctx() != K.get() || N.c.ctx() != K.get() ||
        N.d.ctx() != K.get())
        return false;
    return check_law(generator_images(phi, side_nu(phi), K.get()), N);
}

WeilDeligneRep::WeilDeligneRep(WeilRep2 phi, Mat2 N)
    : phi_(std::move(phi)), n_(N), fq_(wd_value_field(phi_)) {
    const FqContext* K = fq_.get();
    if (n_.a.ctx() != K || n_.b.ctx() != K || n_.c.ctx() != K || n_.d.ctx() != K)
        throw std::invalid_argument(
            "wrong-domain: N must live over the pair's value field");
    if (!check_law(generator_images(phi_, side_nu(phi_), K), n_))
        throw std::invalid_argument(
            "not-equivariant: phi(w) N = nu(w) N phi(w) fails on a generator");
}

bool WeilDeligneRep::sl2_type() const {
    return phi_.det_character().is_trivial() && n_.trace().is_zero();
}

std::string WeilDeligneRep::describe() const {
    return "(" + phi_.str() + ", N=" + n_.str() + ")";
}

bool validate(const WeilDeligneRep& rep) { return validate(rep.phi(), rep.N()); }

WDEquivClass::WDEquivClass(WeilDeligneRep rep, std::string key)
    : rep_(std::move(rep)), key_(std::move(key)) {}

WDEquivClass canonicalize(const WeilDeligneRep& rep) {
    const WeilRep2& phi = rep.phi();
    std::string side = phi.over_base_field() ? "F" : "E";
    if (phi.kind() == WeilRep2::Kind::Sum) {
        SmoothCharacter c1 = phi.chi1();
        SmoothCharacter c2 = phi.chi2();
        Mat2 N = rep.N();
        if (chi_less(c2, c1)) {
            std::swap(c1, c2);
            N = Mat2(N.d, N.c, N.b, N.a); // conjugate by the swap
        }
        NForm nf = classify_sum_N(c1 == c2, N);
        WeilRep2 cphi = WeilRep2::sum(phi.ctx(), c1, c2);
        auto K = wd_value_field(cphi);
        WeilDeligneRep crep(std::move(cphi),
                            mat2_from_ints(K.get(), nf.a, nf.b, nf.c, nf.d));
        std::string key =
            side + "|Sum|" + c1.str() + "|" + c2.str() + "|N=" + nf.label;
        return WDEquivClass(std::move(crep), std::move(key));
    }
    SmoothCharacter th = phi.theta();
    SmoothCharacter ths = phi.theta_conj();
    SmoothCharacter tmin = chi_less(ths, th) ? ths : th;
    WeilRep2 cphi = WeilRep2::induced(phi.tower(), tmin);
    auto K = wd_value_field(cphi);
    std::string label = "0";
    Mat2 canonN = Mat2::zero(K.get());
    if (!rep.N().is_zero()) {
        // the space of admissible N is one-dimensional (Schur); re-solve on
        // the canonical theta and normalize the basis vector
        auto basis = solve_N(generator_images(cphi, side_nu(cphi), K.get()), K.get());
        if (basis.size() != 1)
            throw std::logic_error("induced admissible space is not a line");
        label = "nonzero";
        canonN = normalize_scale(basis[0]);
    }
    WeilDeligneRep crep(std::move(cphi), canonN);
    std::string key = side + "|Ind|" + phi.tower()->describe() + "|" + tmin.str() +
                      "|N=" + label;
    return WDEquivClass(std::move(crep), std::move(key));
}

bool equivalent(const WeilDeligneRep& a, const WeilDeligneRep& b) {
    const WeilRep2& pa = a.phi();
    const WeilRep2& pb = b.phi();
    if (&pa.ctx() != &pb.ctx() || pa.over_base_field() != pb.over_base_field())
        throw std::invalid_argument("wrong-domain: pairs represent different groups");
    if (pa.kind() == WeilRep2::Kind::Induced &&
        pb.kind() == WeilRep2::Kind::Induced && pa.tower() != pb.tower())
        throw std::invalid_argument("wrong-domain: induced pairs on different towers");
    if (pa.kind() != pb.kind())
        return false; // an irreducible never matches a sum of characters
    return canonicalize(a).key() == canonicalize(b).key();
}

WDEquivClass P_inject(const WeilDeligneRep& psi) {
    if (!psi.nilpotent_N())
        throw std::invalid_argument("not-nilpotent: the injection acts on nilpotent pairs");
    if (!psi.sl2_type())
        throw std::invalid_argument("not-SL2: the injection acts on SL2-type pairs");
    WDEquivClass cls = canonicalize(psi);
    const WeilRep2& phi = cls.rep().phi();
    if (phi.kind() != WeilRep2::Kind::Sum)
        return cls;
    const FieldSpec& spec = phi.ctx().spec();
    long long q = phi.over_base_field() ? spec.qF() : spec.qE();
    CongruenceClass cc = q_mod_ell_class(q, spec.ell);
    const SmoothCharacter& c1 = phi.chi1();
    const SmoothCharacter& c2 = phi.chi2();
    bool repeated = (c1 == c2);
    bool moved = false;
    if (cc == CongruenceClass::OneMod && repeated && !cls.rep().N().is_zero()) {
        moved = true; // the Steinberg point (psi + psi, one-slot nilpotent)
    } else if (cc == CongruenceClass::MinusOneMod && !repeated &&
               cls.rep().N().is_zero()) {
        SmoothCharacter nu = side_nu(phi);
        if (c2 == c1 * nu || c1 == c2 * nu)
            moved = true; // the special point (psi + psi nu, 0)
    }
    if (!moved)
        return cls;
    const FqContext* K = cls.rep().fq().get();
    return canonicalize(
        WeilDeligneRep(phi, Mat2::antidiag(K->one(), K->one())));
}

WeilDeligneRep PV(const GL2Rep& pi, NuHalfConvention conv) {
    if (pi.cls() == GL2Class::PrimitiveSupercuspidal)
        throw std::invalid_argument("primitive-marker: no induced parameter data");
    if (!pi.pgl2_type())
        throw std::invalid_argument(
            "nontrivial-central-character: parameters are assigned to PGL2-type inputs");
    const LocalFieldContext& ctx = pi.ctx();
    const FieldSpec& spec = ctx.spec();
    auto finish = [](WeilRep2 phi, int a, int b, int c, int d) {
        if (!phi.det_character().is_trivial())
            throw std::logic_error("parameter determinant is not trivial");
        auto K = wd_value_field(phi);
        return WeilDeligneRep(std::move(phi), mat2_from_ints(K.get(), a, b, c, d));
    };
    switch (pi.cls()) {
    case GL2Class::PrincipalSeries: {
        if (!pi.is_irreducible())
            throw std::invalid_argument(
                "not-generic: a reducible principal series carries no parameter");
        return finish(WeilRep2::sum(ctx, pi.chi1(), pi.chi2()), 0, 0, 0, 0);
    }
    case GL2Class::Steinberg: {
        SmoothCharacter nh =
            nu_half_character(pi.chi().dom, spec.qE(), spec.ell, conv);
        if (q_mod_ell_class(spec.qE(), spec.ell) == CongruenceClass::OneMod) {
            SmoothCharacter ps = pi.chi() * nh.inverse();
            return finish(WeilRep2::sum(ctx, ps, ps), 0, 1, 0, 0);
        }
        // banal: N occupies the slot the equivariance law admits for the
        // component order (chi nu^{-1/2}, chi nu^{1/2})
        return finish(
            WeilRep2::sum(ctx, pi.chi() * nh.inverse(), pi.chi() * nh), 0, 0, 1, 0);
    }
    case GL2Class::Special: {
        SmoothCharacter nh =
            nu_half_character(pi.chi().dom, spec.qE(), spec.ell, conv);
        return finish(
            WeilRep2::sum(ctx, pi.chi() * nh.inverse(), pi.chi() * nh), 0, 0, 0, 0);
    }
    case GL2Class::DihedralSupercuspidal:
        return finish(pi.parameter(), 0, 0, 0, 0);
    default:
        throw std::invalid_argument("primitive-marker: no induced parameter data");
    }
}

LiftVerdict lift_exists_closed_form(const WDEquivClass& cls) {
    const WeilDeligneRep& rep = cls.rep();
    const WeilRep2& phi = rep.phi();
    if (phi.over_base_field())
        throw std::invalid_argument("out-of-case-table: base-side class");
    if (!phi.det_character().is_trivial() || !rep.N().trace().is_zero())
        throw std::invalid_argument("out-of-case-table: class is not SL2-type");
    const LocalFieldContext& ctx = phi.ctx();
    const FieldSpec& spec = ctx.spec();
    if (phi.kind() == WeilRep2::Kind::Induced) {
        if (!rep.N().is_zero())
            throw std::invalid_argument(
                "out-of-case-table: irreducible semisimple part with nonzero N");
        DualitySign s = conjugate_dual_sign(phi);
        bool ok = (s == DualitySign::ConjugateSymplectic || s == DualitySign::Both);
        return {ok, ok ? "irreducible extension, certified by the symplectic duality sign"
                       : "no SL2-valued extension: the duality sign is not symplectic"};
    }
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    SmoothCharacter om = cl.omega();
    SmoothCharacter nuF = nu_character(&ctx.F_units(), spec.qF(), spec.ell);
    bool qf1 = q_congruent(spec.qF(), spec.ell, 1);
    bool qfm1 = q_congruent(spec.qF(), spec.ell, -1);
    const SmoothCharacter& c1 = phi.chi1();
    const SmoothCharacter& c2 = phi.chi2();
    bool repeated = (c1 == c2);
    const Mat2& N = rep.N();
    if (N.is_zero()) {
        // semisimple classes: a norm-invariant component splits, a component
        // restricting to omega induces
        if (cl.galois_twist(c1) == c1)
            return {true, "split lift (eta, eta^{-1}, 0), eta through the norm"};
        if (cl.restrict_to_base(c1) == om)
            return {true, "induced lift (Ind(psi1), 0), SL2-valued since psi1 "
                          "restricts to omega"};
        return {false, "no lift: the first component is neither norm-invariant "
                       "nor restricting to omega"};
    }
    if (repeated) {
        if (is_nilpotent(N))
            throw std::invalid_argument(
                "out-of-case-table: Steinberg-point pair outside the image of the injection");
        // invertible semisimple N at the Steinberg point
        SmoothCharacter r = cl.restrict_to_base(c1);
        if (qf1 && (r.is_trivial() || r == om))
            return {true, "split lift (eta, eta^{-1}, diag(1,-1)), eta through "
                          "the norm up to the class character"};
        if (qfm1 && r == om)
            return {true, "split lift (alpha, alpha^{-1}, antidiag), alpha^2 the "
                          "base norm character"};
        return {false, "no lift: the repeated component restricts outside the "
                       "congruence case table"};
    }
    if (is_nilpotent(N)) {
        // one-slot nilpotent: the column component must restrict to the
        // inverse base norm character
        const SmoothCharacter& col = !N.b.is_zero() ? c2 : c1;
        if (cl.restrict_to_base(col) == nuF.inverse())
            return {true, "split lift carrying the matching one-slot N"};
        return {false, "no lift: the column component does not restrict to the "
                       "inverse base norm character"};
    }
    if (N.b.is_zero() && N.c.is_zero())
        throw std::invalid_argument(
            "out-of-case-table: diagonal N on distinct components");
    // invertible antidiagonal N at the special point
    SmoothCharacter nu = side_nu(phi);
    if (!(c2 == c1 * nu || c1 == c2 * nu))
        throw std::invalid_argument(
            "out-of-case-table: components not shifted by the norm character");
    SmoothCharacter r = cl.restrict_to_base(c1);
    if (!qfm1)
        return {false, "no lift: the base cardinality is not -1 mod ell"};
    if (r == nuF)
        return {true, "split lift (alpha, alpha^{-1}, antidiag), alpha^2 the base "
                      "norm character"};
    if (r == om)
        return {true, "induced lift (Ind(psi1), [[0,1],[-1,0]]) with invertible N"};
    return {false, "no lift: the first component restricts to neither the base "
                   "norm character nor omega"};
}

std::optional<WeilDeligneRep> lift_search(const WDEquivClass& cls,
                                          const LiftSearchBounds& bounds) {
    const WeilRep2& tphi = cls.rep().phi();
    if (tphi.over_base_field())
        throw std::invalid_argument("wrong-domain: the search lifts extension-side classes");
    const LocalFieldContext& ctx = tphi.ctx();
    const FieldSpec& spec = ctx.spec();
    if (bounds.max_conductor < 0 || bounds.max_conductor > ctx.F_depth() ||
        bounds.max_unif_order < 1 || bounds.max_unif_order > 64)
        throw std::invalid_argument("bound-too-large: enumeration leaves the "
                                    "tabulated character ranges");
    const std::string& tkey = cls.key();
    static const long long menu[3] = {0, 1, -1};
    auto try_candidate =
        [&](const WeilRep2& phiF) -> std::optional<WeilDeligneRep> {
        auto K = wd_value_field(phiF);
        auto gens = generator_images(phiF, side_nu(phiF), K.get());
        WeilRep2 phiE = phiF.restrict_to_E();
        auto KE = wd_value_field(phiE);
        std::vector<Mat2> Ms;
        if (phiF.kind() == WeilRep2::Kind::Sum) {
            // slot-supported solutions: scaling classes are covered by the
            // {0, 1, -1} entry menu
            for (long long a : menu)
                for (long long b : menu)
                    for (long long c : menu)
                        for (long long d : menu)
                            Ms.push_back(mat2_from_ints(K.get(), a, b, c, d));
        } else {
            // entry ratios of the admissible line need not be integral
            Ms.push_back(Mat2::zero(K.get()));
            for (const Mat2& v : solve_N(gens, K.get()))
                Ms.push_back(normalize_scale(v));
        }
        for (const Mat2& M : Ms) {
            if (!check_law(gens, M))
                continue;
            Mat2 ME(transport(KE.get(), M.a), transport(KE.get(), M.b),
                    transport(KE.get(), M.c), transport(KE.get(), M.d));
            WeilDeligneRep repE(phiE, ME);
            if (canonicalize(repE).key() == tkey)
                return WeilDeligneRep(phiF, M);
        }
        return std::nullopt;
    };
    auto fchars = enumerate_characters(&ctx.F_units(), bounds.max_unif_order,
                                       bounds.max_conductor, spec.ell);
    if (fchars.size() > 20000)
        throw std::invalid_argument("bound-too-large: split candidate pool");
    for (const SmoothCharacter& eta : fchars) {
        if (auto w = try_candidate(WeilRep2::sum(ctx, eta, eta.inverse())))
            return w;
    }
    auto echars = enumerate_characters(&ctx.E_units(), bounds.max_unif_order,
                                       bounds.max_conductor, spec.ell);
    if (echars.size() > 20000)
        throw std::invalid_argument("bound-too-large: induced candidate pool");
    auto tw = WeilTower::over_base(ctx);
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    for (const SmoothCharacter& mu : echars) {
        SmoothCharacter ms = cl.galois_twist(mu);
        if (ms == mu || chi_less(ms, mu))
            continue;
        WeilRep2 phiF = WeilRep2::induced(tw, mu);
        if (!phiF.det_character().is_trivial())
            continue; // SL2-valued candidates only
        if (auto w = try_candidate(phiF))
            return w;
    }
    return std::nullopt;
}

} // namespace moddist
