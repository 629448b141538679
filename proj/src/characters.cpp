#include "moddist/characters.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "moddist/fq.hpp"

namespace moddist {

// --------------------------------------------------------- SmoothCharacter

RootOfUnity SmoothCharacter::eval_unit(uint64_t code) const {
    const auto& e = dom->grp.exponents(code);
    RootOfUnity acc(0, 1);
    for (size_t i = 0; i < unit_values.size(); ++i)
        acc = acc * unit_values[i].pow(e[i]);
    return acc;
}

RootOfUnity SmoothCharacter::eval(FieldElem x) const {
    return unif_value.pow(x.v) * eval_unit(x.u);
}

bool SmoothCharacter::is_trivial() const {
    if (!(unif_value == RootOfUnity(0, 1)))
        return false;
    for (const auto& v : unit_values)
        if (!(v == RootOfUnity(0, 1)))
            return false;
    return true;
}

long long SmoothCharacter::order() const {
    long long o = unif_value.den();
    for (const auto& v : unit_values)
        o = std::lcm(o, v.den());
    return o;
}

SmoothCharacter SmoothCharacter::operator*(const SmoothCharacter& o) const {
    if (dom != o.dom)
        throw std::invalid_argument("character: mixed-domain product");
    SmoothCharacter r;
    r.dom = dom;
    r.unif_value = unif_value * o.unif_value;
    r.unit_values.reserve(unit_values.size());
    for (size_t i = 0; i < unit_values.size(); ++i)
        r.unit_values.push_back(unit_values[i] * o.unit_values[i]);
    return r;
}

SmoothCharacter SmoothCharacter::inverse() const {
    SmoothCharacter r;
    r.dom = dom;
    r.unif_value = unif_value.inverse();
    r.unit_values.reserve(unit_values.size());
    for (const auto& v : unit_values)
        r.unit_values.push_back(v.inverse());
    return r;
}

SmoothCharacter SmoothCharacter::pow(long long k) const {
    SmoothCharacter r;
    r.dom = dom;
    r.unif_value = unif_value.pow(k);
    r.unit_values.reserve(unit_values.size());
    for (const auto& v : unit_values)
        r.unit_values.push_back(v.pow(k));
    return r;
}

std::string SmoothCharacter::str() const {
    std::string s = "chi(pi)=" + unif_value.str() + ", units=[";
    for (size_t i = 0; i < unit_values.size(); ++i) {
        if (i)
            s += ",";
        s += unit_values[i].str();
    }
    return s + "]";
}

SmoothCharacter make_character(const UnitGroupModel* dom, RootOfUnity unif_value,
                               std::vector<RootOfUnity> unit_values, long long ell) {
    if (dom == nullptr)
        throw std::invalid_argument("character: null domain");
    if (unit_values.size() != dom->grp.factors.size())
        throw std::invalid_argument("character: one value per generator required");
    unif_value.require_prime_to(ell);
    for (size_t i = 0; i < unit_values.size(); ++i) {
        unit_values[i].require_prime_to(ell);
        if (!(unit_values[i].pow(dom->grp.factors[i].order) == RootOfUnity(0, 1)))
            throw std::invalid_argument("character: value order does not divide generator order");
    }
    SmoothCharacter c;
    c.dom = dom;
    c.unif_value = unif_value;
    c.unit_values = std::move(unit_values);
    return c;
}

SmoothCharacter trivial_character(const UnitGroupModel* dom) {
    SmoothCharacter c;
    c.dom = dom;
    c.unit_values.assign(dom->grp.factors.size(), RootOfUnity(0, 1));
    return c;
}

bool is_quadratic(const SmoothCharacter& chi) {
    return chi.pow(2).is_trivial();
}

bool is_unramified(const SmoothCharacter& chi) {
    for (const auto& v : chi.unit_values)
        if (!(v == RootOfUnity(0, 1)))
            return false;
    return true;
}

// ----------------------------------------------------------- nu and nu^1/2

SmoothCharacter nu_character(const UnitGroupModel* dom, long long q, long long ell) {
    if (q % ell == 0)
        throw std::domain_error("nu: ell divides q");
    const FqContext fl(ell, 1);
    SmoothCharacter c = trivial_character(dom);
    c.unif_value = fl.dlog(fl.from_int(q % ell)).inverse();
    return c;
}

SmoothCharacter nu_half_character(const UnitGroupModel* dom, long long q, long long ell,
                                  NuHalfConvention conv) {
    const SmoothCharacter nu = nu_character(dom, q, ell);
    const RootOfUnity r = nu.unif_value;
    const RootOfUnity c1(r.num(), 2 * r.den());
    const RootOfUnity c2(r.num() + r.den(), 2 * r.den());
    const bool e1 = c1.num() % 2 == 0;
    const bool e2 = c2.num() % 2 == 0;
    RootOfUnity pick(0, 1);
    if (e1 != e2) {
        pick = (conv == NuHalfConvention::EvenNumerator) == e1 ? c1 : c2;
    } else {
        const RootOfUnity lo = c1 < c2 ? c1 : c2;
        const RootOfUnity hi = c1 < c2 ? c2 : c1;
        pick = conv == NuHalfConvention::EvenNumerator ? lo : hi;
    }
    SmoothCharacter c = trivial_character(dom);
    c.unif_value = pick;
    return c;
}

// ------------------------------------------------------------- enumeration

namespace {

long long prime_to_ell_part(long long n, long long ell) {
    while (n % ell == 0)
        n /= ell;
    return n;
}

} // namespace

std::vector<SmoothCharacter> enumerate_characters(const UnitGroupModel* dom,
                                                  long long max_unif_order,
                                                  int max_conductor, long long ell) {
    if (max_unif_order < 1)
        throw std::invalid_argument("enumerate: max_unif_order must be positive");
    std::vector<long long> choices; // per-generator admissible value orders
    long long total = max_unif_order;
    for (const auto& f : dom->grp.factors) {
        const long long c = max_conductor == 0 ? 1 : prime_to_ell_part(f.order, ell);
        choices.push_back(c);
        total *= c;
        if (total > 2000000)
            throw std::length_error("bound-too-large: character enumeration");
    }

    // elements of U^max_conductor the characters must kill
    std::vector<uint64_t> filter_elems;
    if (max_conductor >= 1) {
        const TruncRing* R = dom->ring;
        if (max_conductor < R->precision())
            for (const auto& kv : dom->grp.dlog)
                if (R->val(R->sub(kv.first, 1)) >= max_conductor && kv.first != 1)
                    filter_elems.push_back(kv.first);
        std::sort(filter_elems.begin(), filter_elems.end());
    }

    std::vector<SmoothCharacter> out;
    const size_t g = choices.size();
    std::vector<long long> idx(g, 0);
    for (long long ju = 0; ju < max_unif_order; ++ju) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            SmoothCharacter c;
            c.dom = dom;
            c.unif_value = RootOfUnity(ju, max_unif_order);
            c.unit_values.reserve(g);
            for (size_t i = 0; i < g; ++i)
                c.unit_values.push_back(RootOfUnity(idx[i], choices[i]));
            bool ok = true;
            for (uint64_t u : filter_elems)
                if (!(c.eval_unit(u) == RootOfUnity(0, 1))) {
                    ok = false;
                    break;
                }
            if (ok)
                out.push_back(std::move(c));
            // odometer, last index fastest
            size_t k = g;
            while (k > 0) {
                --k;
                if (++idx[k] < choices[k])
                    break;
                idx[k] = 0;
                if (k == 0)
                    goto next_unif;
            }
            if (g == 0)
                break;
        }
    next_unif:;
    }
    return out;
}

SmoothCharacter reduce_character(const SmoothCharacter& chi, const UnitGroupModel* red_dom) {
    const TruncRing* full = chi.dom->ring;
    const TruncRing* red = red_dom->ring;
    const int m2 = red->precision();
    for (const auto& kv : chi.dom->grp.dlog)
        if (full->reduce_code(kv.first, m2) == 1 && !(chi.eval_unit(kv.first) == RootOfUnity(0, 1)))
            throw std::domain_error("dlog-failure: character is nontrivial below precision " +
                                    std::to_string(m2));
    std::vector<RootOfUnity> vals;
    vals.reserve(red_dom->grp.factors.size());
    for (const auto& f : red_dom->grp.factors)
        vals.push_back(chi.eval_unit(full->lift_code(f.gen, m2)));
    SmoothCharacter c;
    c.dom = red_dom;
    c.unif_value = chi.unif_value;
    c.unit_values = std::move(vals);
    return c;
}

// ---------------------------------------------------------- CharacterLayer

CharacterLayer::CharacterLayer(QuadLayer lay, const UnitGroupModel* top,
                               const UnitGroupModel* base, const UnitGroupModel* norm_one,
                               long long ell)
    : lay_(lay), top_(top), base_(base), norm_one_(norm_one), ell_(ell) {}

CharacterLayer CharacterLayer::over_base(const LocalFieldContext& ctx) {
    return {ctx.layer(), &ctx.E_units(), &ctx.F_units(), &ctx.norm_one_units(),
            ctx.spec().ell};
}

CharacterLayer CharacterLayer::over_tower(const LocalFieldContext& ctx, const KTower& kt) {
    return {kt.layer(), &kt.units(), &kt.base_units(), nullptr, ctx.spec().ell};
}

SmoothCharacter CharacterLayer::galois_twist(const SmoothCharacter& chi) const {
    if (chi.dom != top_)
        throw std::invalid_argument("character: twist needs the layer's top domain");
    std::vector<RootOfUnity> vals;
    vals.reserve(top_->grp.factors.size());
    for (const auto& f : top_->grp.factors)
        vals.push_back(chi.eval(lay_.sigma(fe_unit(lay_.L, f.gen))));
    SmoothCharacter c;
    c.dom = top_;
    c.unif_value = chi.eval(lay_.sigma(fe_unif()));
    c.unit_values = std::move(vals);
    return c;
}

SmoothCharacter CharacterLayer::restrict_to_base(const SmoothCharacter& chi) const {
    if (chi.dom != top_)
        throw std::invalid_argument("character: restriction needs the layer's top domain");
    std::vector<RootOfUnity> vals;
    vals.reserve(base_->grp.factors.size());
    for (const auto& f : base_->grp.factors)
        vals.push_back(chi.eval(lay_.embed(fe_unit(lay_.B, f.gen))));
    SmoothCharacter c;
    c.dom = base_;
    c.unif_value = chi.eval(lay_.embed(fe_unif()));
    c.unit_values = std::move(vals);
    return c;
}

SmoothCharacter CharacterLayer::compose_norm(const SmoothCharacter& eta) const {
    if (eta.dom != base_)
        throw std::invalid_argument("character: norm inflation needs the layer's base domain");
    std::vector<RootOfUnity> vals;
    vals.reserve(top_->grp.factors.size());
    for (const auto& f : top_->grp.factors)
        vals.push_back(eta.eval(lay_.norm(fe_unit(lay_.L, f.gen))));
    SmoothCharacter c;
    c.dom = top_;
    c.unif_value = eta.eval(lay_.norm(fe_unif()));
    c.unit_values = std::move(vals);
    return c;
}

SmoothCharacter CharacterLayer::omega() const {
    // norm images of the top generators and uniformizer, reduced mod squares
    std::vector<std::pair<long long, std::vector<long long>>> conds;
    const auto push_cond = [&](FieldElem n) {
        std::vector<long long> e = base_->grp.exponents(n.u);
        for (auto& x : e)
            x &= 1;
        conds.emplace_back(n.v & 1, std::move(e));
    };
    for (const auto& f : top_->grp.factors)
        push_cond(lay_.norm(fe_unit(lay_.L, f.gen)));
    push_cond(lay_.norm(fe_unif()));

    const size_t g = base_->grp.factors.size();
    std::vector<std::pair<long long, std::vector<long long>>> sols;
    for (uint64_t mask = 0; mask < (uint64_t(1) << (g + 1)); ++mask) {
        const long long b0 = static_cast<long long>(mask & 1);
        std::vector<long long> b(g);
        bool well_defined = true;
        for (size_t i = 0; i < g; ++i) {
            b[i] = static_cast<long long>((mask >> (i + 1)) & 1);
            if (b[i] == 1 && base_->grp.factors[i].order % 2 != 0)
                well_defined = false; // no sign character on an odd factor
        }
        if (!well_defined)
            continue;
        bool ok = true;
        for (const auto& [v, e] : conds) {
            long long s = v * b0;
            for (size_t i = 0; i < g; ++i)
                s += e[i] * b[i];
            if (s % 2 != 0) {
                ok = false;
                break;
            }
        }
        if (ok)
            sols.emplace_back(b0, b);
    }
    if (sols.size() != 2)
        throw std::domain_error("omega: norm subgroup does not have index 2 at this depth");
    for (const auto& [b0, b] : sols) {
        bool nontrivial = b0 != 0;
        for (long long x : b)
            nontrivial = nontrivial || x != 0;
        if (!nontrivial)
            continue;
        std::vector<RootOfUnity> vals;
        vals.reserve(g);
        for (size_t i = 0; i < g; ++i)
            vals.push_back(RootOfUnity(b[i], 2));
        return make_character(base_, RootOfUnity(b0, 2), std::move(vals), ell_);
    }
    throw std::logic_error("omega: no nontrivial solution kept");
}

bool CharacterLayer::is_trivial_on_base(const SmoothCharacter& chi) const {
    return restrict_to_base(chi).is_trivial();
}

bool CharacterLayer::is_trivial_on_norm_one(const SmoothCharacter& chi) const {
    if (norm_one_ == nullptr)
        throw std::logic_error("character: layer has no norm-one model");
    for (const auto& f : norm_one_->grp.factors)
        if (!(chi.eval_unit(f.gen) == RootOfUnity(0, 1)))
            return false;
    return true;
}

bool CharacterLayer::is_galois_invariant(const SmoothCharacter& chi) const {
    return galois_twist(chi) == chi;
}

} // namespace moddist
