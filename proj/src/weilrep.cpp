#include "moddist/weilrep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace moddist {

std::string to_string(DualitySign s) {
    switch (s) {
    case DualitySign::ConjugateOrthogonal: return "conjugate-orthogonal";
    case DualitySign::ConjugateSymplectic: return "conjugate-symplectic";
    case DualitySign::Both: return "both";
    case DualitySign::Neither: return "neither";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// value fields

int value_field_degree(long long ell, long long n) {
    if (n <= 0)
        throw std::invalid_argument("value order must be positive");
    if (n % ell == 0)
        throw std::domain_error("value order divisible by the coefficient characteristic");
    long long pw = 1;
    const long long bound = 1LL << 20;
    for (int d = 1;; ++d) {
        if (pw > bound / ell)
            throw std::length_error("too-large: no admissible value field hosts order " +
                                    std::to_string(n));
        pw *= ell;
        if ((pw - 1) % n == 0)
            return d;
    }
}

std::shared_ptr<const FqContext> value_field(long long ell, int d) {
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::weak_ptr<const FqContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{ell, d}];
    if (auto sp = slot.lock())
        return sp;
    auto sp = std::make_shared<const FqContext>(ell, d);
    slot = sp;
    return sp;
}

// ---------------------------------------------------------------------------
// linear solving over one FqContext (4 unknowns throughout)

namespace {

using Row = std::vector<Fq>;

Row zero_row(const FqContext* k) {
    return Row(4, k->zero());
}

Fq at(const Mat2& m, int i, int j) {
    switch (i * 2 + j) {
    case 0: return m.a;
    case 1: return m.b;
    case 2: return m.c;
    default: return m.d;
    }
}

Mat2 mat_of(const Row& v) { return Mat2(v[0], v[1], v[2], v[3]); }

// Whether the span of the basis contains an invertible matrix.  det is a
// quadratic form on the span; in odd characteristic it vanishes on the
// whole span iff every basis value and every polarization vanishes.
bool span_has_invertible(const std::vector<Mat2>& basis) {
    for (const auto& m : basis)
        if (!m.det().is_zero())
            return true;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Fq pol = (basis[i] + basis[j]).det() - basis[i].det() - basis[j].det();
            if (!pol.is_zero())
                return true;
        }
    return false;
}

// rows of A * M1 - M2 * A = 0, unknowns a_{ij} at index 2i + j
void append_intertwine(const FqContext* k, std::vector<Row>& rows, const Mat2& M1,
                       const Mat2& M2) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Row row = zero_row(k);
            for (int t = 0; t < 2; ++t) {
                row[i * 2 + t] = row[i * 2 + t] + at(M1, t, j);
                row[t * 2 + j] = row[t * 2 + j] - at(M2, i, t);
            }
            rows.push_back(row);
        }
}

// rows of R^T B Rs - B = 0, unknowns B_{kl} at index 2k + l
void append_pairing(const FqContext* k, std::vector<Row>& rows, const Mat2& R,
                    const Mat2& Rs) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Row row = zero_row(k);
            for (int kk = 0; kk < 2; ++kk)
                for (int ll = 0; ll < 2; ++ll)
                    row[kk * 2 + ll] = row[kk * 2 + ll] + at(R, kk, i) * at(Rs, ll, j);
            row[i * 2 + j] = row[i * 2 + j] - k->one();
            rows.push_back(row);
        }
}

// rows of B^T - b * B * S = 0
void append_sign(const FqContext* k, std::vector<Row>& rows, const Mat2& S, const Fq& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Row row = zero_row(k);
            row[j * 2 + i] = row[j * 2 + i] + k->one();
            for (int kk = 0; kk < 2; ++kk)
                row[i * 2 + kk] = row[i * 2 + kk] - b * at(S, kk, j);
            rows.push_back(row);
        }
}

CharacterLayer layer_for(const WeilTower& tw) {
    if (tw.is_base_tower())
        return CharacterLayer::over_base(tw.ctx());
    return CharacterLayer::over_tower(tw.ctx(), *tw.k_tower());
}

// square root in E of sigma(gamma)/gamma; empty when none exists, which is
// exactly the non-Galois case for the quartic closure
std::optional<uint64_t> sqrt_of_sigma_ratio(const LocalFieldContext& ctx, const KTower& kt) {
    const QuadRingBase* E = ctx.E_ring();
    QuadLayer ef = ctx.layer();
    FieldElem gamma = kt.gamma();
    FieldElem ratio = fe_mul(E, ef.sigma(gamma), fe_inv(E, gamma));
    if (ratio.v != 0)
        throw std::logic_error("weil tower: gamma ratio has nonzero valuation");
    for (uint64_t u : E->unit_codes())
        if (E->mul(u, u) == ratio.u)
            return u;
    return std::nullopt;
}

// sigma_{E/F} transported to the K ring: fixes the image of F, acts as
// sigma on the E coordinates, and scales delta_K by c (c^2 = sigma(g)/g)
uint64_t sigma_tilde_code(const WeilTower& tw, uint64_t c_full, uint64_t code) {
    const QuadRingBase* K = tw.layer().L;
    const QuadRingBase* Efull = tw.ctx().E_ring();
    if (!K->ramified()) {
        const auto* KU = dynamic_cast<const QuadUnramRing*>(K);
        if (!KU || KU->s_code() != 0)
            throw std::domain_error(
                "unsupported-tower: quadratic shape without a pure square root");
        const TruncRing* B = KU->base();
        const auto* Bq = dynamic_cast<const QuadRingBase*>(B);
        if (!Bq)
            throw std::logic_error("weil tower: K base is not quadratic over F");
        auto [va, vb] = KU->unpack(code);
        uint64_t cB = Efull->reduce_code(c_full, B->precision());
        return KU->pack(Bq->sigma(va), B->mul(Bq->sigma(vb), cB));
    }
    const auto* KR = dynamic_cast<const QuadRamRing*>(K);
    auto [va, vb] = KR->unpack(code);
    const auto* Bh = dynamic_cast<const QuadRingBase*>(KR->high());
    const auto* Bl = dynamic_cast<const QuadRingBase*>(KR->low());
    if (!Bh || !Bl)
        throw std::logic_error("weil tower: K bases are not quadratic over F");
    uint64_t cL = Efull->reduce_code(c_full, KR->low()->precision());
    return KR->pack(Bh->sigma(va), KR->low()->mul(Bl->sigma(vb), cL));
}

FieldElem sigma_tilde_fe(const WeilTower& tw, uint64_t c_full, FieldElem x) {
    const QuadRingBase* K = tw.layer().L;
    uint64_t u = sigma_tilde_code(tw, c_full, x.u);
    if (!K->ramified()) {
        // the uniformizer of K is the one of E, fixed by sigma for
        // unramified E/F and negated for ramified E/F
        if (tw.ctx().spec().ramified() && (x.v & 1LL))
            u = K->neg(u);
        return FieldElem{x.v, u};
    }
    const auto* KR = dynamic_cast<const QuadRamRing*>(K);
    uint64_t cH = tw.ctx().E_ring()->reduce_code(c_full, KR->high()->precision());
    uint64_t cK = KR->embed(cH);
    return FieldElem{x.v, K->mul(u, K->pow(cK, x.v))};
}

} // namespace

// ---------------------------------------------------------------------------
// WeilGaloisData

FieldElem WeilGaloisData::apply(const WeilTower& tw, FieldElem x) const {
    return sigma_tilde_fe(tw, c_code, x);
}

WeilElem WeilGaloisData::conj(const WeilTower& tw, const WeilElem& w) const {
    if (w.tw != &tw)
        throw std::invalid_argument("wrong-domain: element of another tower");
    FieldElem x = sigma_tilde_fe(tw, c_code, w.x);
    if (w.eps)
        x = fe_mul(tw.layer().L, x, x0);
    return WeilElem{&tw, x, w.eps};
}

// ---------------------------------------------------------------------------
// WeilTower

std::shared_ptr<const WeilTower> WeilTower::over_base(const LocalFieldContext& ctx) {
    auto tw = std::shared_ptr<WeilTower>(new WeilTower());
    tw->init(ctx, nullptr);
    return tw;
}

std::shared_ptr<const WeilTower> WeilTower::over_k(const LocalFieldContext& ctx,
                                                   GammaClass cls) {
    auto tw = std::shared_ptr<WeilTower>(new WeilTower());
    tw->init(ctx, &ctx.k_tower(cls));
    return tw;
}

void WeilTower::init(const LocalFieldContext& ctx, const KTower* kt) {
    ctx_ = &ctx;
    kt_ = kt;
    if (!kt) {
        lay_ = ctx.layer();
        top_units_ = &ctx.E_units();
        base_units_ = &ctx.F_units();
        base_full_ = ctx.F_ring();
    } else {
        lay_ = kt->layer();
        top_units_ = &kt->units();
        base_units_ = &kt->base_units();
        base_full_ = ctx.E_ring();
    }
    const TruncRing* nt = lay_.B;
    norm_unit_image_.assign(nt->size(), 0);
    for (uint64_t u : lay_.L->unit_codes())
        norm_unit_image_[lay_.L->norm(u)] = 1;
    norm_unif_ = lay_.norm(fe_unif());
    bool found = false;
    for (int v = 0; v <= 1 && !found; ++v)
        for (uint64_t u : base_full_->unit_codes()) {
            FieldElem cand{v, u};
            if (!is_norm(cand)) {
                t_ = cand;
                found = true;
                break;
            }
        }
    if (!found)
        throw std::logic_error("weil tower: no non-norm representative found");
}

std::shared_ptr<const WeilTower> WeilTower::with_t(FieldElem alt_t) const {
    if (is_norm(alt_t))
        throw std::invalid_argument("weil tower: replacement class must be a non-norm");
    auto tw = std::shared_ptr<WeilTower>(new WeilTower());
    tw->ctx_ = ctx_;
    tw->kt_ = kt_;
    tw->lay_ = lay_;
    tw->top_units_ = top_units_;
    tw->base_units_ = base_units_;
    tw->base_full_ = base_full_;
    tw->norm_unif_ = norm_unif_;
    tw->norm_unit_image_ = norm_unit_image_;
    tw->t_ = alt_t;
    return tw;
}

FieldElem WeilTower::reduce_to_norm_target(FieldElem x) const {
    return FieldElem{x.v, base_full_->reduce_code(x.u, lay_.B->precision())};
}

FieldElem WeilTower::t_in_top() const { return lay_.embed(reduce_to_norm_target(t_)); }

bool WeilTower::is_norm(FieldElem x) const {
    if (!base_full_->is_unit(x.u))
        throw std::invalid_argument("wrong-domain: norm test needs a unit part");
    long long step = norm_unif_.v; // 2 for unramified layers, 1 for ramified
    if (x.v % step != 0)
        return false;
    long long w = x.v / step;
    const TruncRing* nt = lay_.B;
    uint64_t u = base_full_->reduce_code(x.u, nt->precision());
    uint64_t adj = nt->mul(u, nt->pow(norm_unif_.u, -w));
    return norm_unit_image_[adj] != 0;
}

WeilElem WeilTower::elem(FieldElem x, int eps) const {
    if (eps != 0 && eps != 1)
        throw std::invalid_argument("wrong-domain: eps must be 0 or 1");
    if (!lay_.L->is_unit(x.u))
        throw std::invalid_argument("wrong-domain: element unit part is not a unit");
    return WeilElem{this, x, eps};
}

WeilElem WeilTower::mul(const WeilElem& a, const WeilElem& b) const {
    if (a.tw != this || b.tw != this)
        throw std::invalid_argument("wrong-domain: element of another tower");
    FieldElem y = b.x;
    if (a.eps)
        y = lay_.sigma(y);
    FieldElem x = fe_mul(lay_.L, a.x, y);
    int e = a.eps + b.eps;
    if (e == 2)
        x = fe_mul(lay_.L, x, t_in_top());
    return WeilElem{this, x, e & 1};
}

WeilElem WeilTower::inv(const WeilElem& a) const {
    if (a.tw != this)
        throw std::invalid_argument("wrong-domain: element of another tower");
    if (a.eps == 0)
        return WeilElem{this, fe_inv(lay_.L, a.x), 0};
    FieldElem z = fe_inv(lay_.L, fe_mul(lay_.L, lay_.sigma(a.x), t_in_top()));
    return WeilElem{this, z, 1};
}

std::vector<WeilElem> WeilTower::generators() const {
    std::vector<WeilElem> out;
    out.reserve(top_units_->grp.factors.size() + 2);
    for (const auto& f : top_units_->grp.factors)
        out.push_back(elem(fe_unit(lay_.L, f.gen), 0));
    out.push_back(elem(fe_unif(), 0));
    out.push_back(s());
    return out;
}

FieldElem WeilTower::abelianized(const WeilElem& w) const {
    if (w.tw != this)
        throw std::invalid_argument("wrong-domain: element of another tower");
    FieldElem ab = lay_.norm(w.x);
    if (w.eps)
        ab = fe_mul(lay_.B, ab, reduce_to_norm_target(t_));
    return ab;
}

bool WeilTower::quartic_is_galois() const {
    if (!kt_)
        return true;
    return static_cast<bool>(sqrt_of_sigma_ratio(*ctx_, *kt_));
}

const WeilGaloisData& WeilTower::galois() const {
    if (!kt_)
        throw std::logic_error("weil tower: conjugation data describes K towers only");
    std::lock_guard<std::mutex> lock(galois_mu_);
    if (galois_known_failed_)
        throw std::domain_error("unsupported-tower: outer conjugation data unavailable");
    if (!galois_) {
        try {
            galois_ = compute_galois();
        } catch (const std::domain_error&) {
            galois_known_failed_ = true;
            throw;
        }
    }
    return *galois_;
}

WeilGaloisData WeilTower::compute_galois() const {
    const QuadRingBase* E = ctx_->E_ring();
    const QuadRingBase* K = lay_.L;
    QuadLayer ef = ctx_->layer();
    auto e = sqrt_of_sigma_ratio(*ctx_, *kt_);
    if (!e)
        throw std::domain_error("unsupported-tower: the " + to_string(kt_->cls()) +
                                " closure of E is not Galois over the base");
    // The lift squares to the identity or to the layer conjugation
    // according to the sign Nm_{E/F}(e).
    FieldElem nme = ef.norm(fe_unit(E, *e));
    const TruncRing* F = ef.B;
    bool order2;
    if (nme.v == 0 && nme.u == 1)
        order2 = true;
    else if (nme.v == 0 && nme.u == F->neg(1))
        order2 = false;
    else
        throw std::logic_error("weil tower: square-root norm is not a sign");
    int eps2 = order2 ? 0 : 1;

    // Class data of the base quadratic layer: the squared outer lift must
    // sit in the nontrivial E-class over F, tested inside the norm target.
    FieldElem tEF = WeilTower::over_base(*ctx_)->t();
    const TruncRing* nt = lay_.B;
    const auto* ntq = dynamic_cast<const QuadRingBase*>(nt);
    if (!ntq)
        throw std::logic_error("weil tower: norm target is not quadratic over F");
    std::vector<char> normlike(nt->size(), 0);
    for (uint64_t u : nt->unit_codes())
        normlike[nt->mul(u, ntq->sigma(u))] = 1;
    // unit part of unif * sigma(unif) in the norm target
    uint64_t ppu = ctx_->spec().ramified() ? nt->neg(1) : 1;
    FieldElem tEF_E = ef.embed(tEF);
    FieldElem tEF_red{tEF_E.v, E->reduce_code(tEF_E.u, nt->precision())};
    auto in_base_norm_class = [&](FieldElem tau) -> bool {
        FieldElem xi = fe_mul(nt, tau, fe_inv(nt, tEF_red));
        if (xi.v & 1LL)
            return false;
        uint64_t adj = nt->mul(xi.u, nt->pow(ppu, -(xi.v / 2)));
        return normlike[adj] != 0;
    };

    FieldElem t_red = reduce_to_norm_target(t_);
    FieldElem target1 = fe_mul(E, ef.sigma(t_), fe_inv(E, t_));
    FieldElem target1_red{target1.v, E->reduce_code(target1.u, nt->precision())};

    std::vector<uint64_t> kunits = K->unit_codes();
    for (int csign = 0; csign < 2; ++csign) {
        uint64_t c = csign ? E->neg(*e) : *e;
        for (uint64_t ux : kunits) {
            FieldElem x0{0, ux};
            if (!(lay_.norm(x0) == target1_red))
                continue;
            FieldElem w0 = fe_mul(K, sigma_tilde_fe(*this, c, x0), x0);
            for (long long vk = 0; vk <= 3; ++vk) {
                for (uint64_t uk : kunits) {
                    FieldElem k1{vk, uk};
                    FieldElem lhs = fe_mul(K, k1, fe_inv(K, lay_.sigma(k1)));
                    if (!(lhs == w0))
                        continue;
                    FieldElem tau = lay_.norm(k1);
                    if (eps2)
                        tau = fe_mul(nt, tau, t_red);
                    if (!in_base_norm_class(tau))
                        continue;
                    WeilGaloisData d;
                    d.order2 = order2;
                    d.c_code = c;
                    d.x0 = x0;
                    d.k1 = k1;
                    d.eps2 = eps2;
                    return d;
                }
            }
        }
    }
    throw std::domain_error(
        "unsupported-tower: outer conjugation data not realizable at this depth");
}

std::string WeilTower::describe() const {
    if (!kt_)
        return "W(E/F) of " + ctx_->describe();
    return "W(K/E), K of class " + to_string(kt_->cls()) + ", over " + ctx_->describe();
}

// ---------------------------------------------------------------------------
// WeilRep2

WeilRep2 WeilRep2::sum(const LocalFieldContext& ctx, SmoothCharacter chi1,
                       SmoothCharacter chi2) {
    if (!chi1.dom || chi1.dom != chi2.dom)
        throw std::invalid_argument("wrong-domain: summands need one common domain");
    bool overF = chi1.dom == &ctx.F_units();
    bool overE = chi1.dom == &ctx.E_units();
    if (!overF && !overE)
        throw std::invalid_argument("wrong-domain: sum characters must live on F or E units");
    WeilRep2 r;
    r.kind_ = Kind::Sum;
    r.ctx_ = &ctx;
    r.over_F_ = overF;
    r.chi1_ = std::move(chi1);
    r.chi2_ = std::move(chi2);
    r.fq_ = value_field(ctx.spec().ell, value_field_degree(ctx.spec().ell, r.value_order()));
    return r;
}

WeilRep2 WeilRep2::induced(std::shared_ptr<const WeilTower> tower, SmoothCharacter theta) {
    if (!tower)
        throw std::invalid_argument("wrong-domain: induction needs a tower");
    if (theta.dom != &tower->top_units())
        throw std::invalid_argument("wrong-domain: induced character must live on the tower top");
    CharacterLayer cl = layer_for(*tower);
    SmoothCharacter ts = cl.galois_twist(theta);
    if (ts == theta)
        throw std::invalid_argument(
            "reducible-input: induced character equals its tower conjugate");
    WeilRep2 r;
    r.kind_ = Kind::Induced;
    r.ctx_ = &tower->ctx();
    r.over_F_ = tower->is_base_tower();
    r.chi1_ = std::move(theta);
    r.chi2_ = std::move(ts);
    r.fq_ = value_field(r.ctx_->spec().ell,
                        value_field_degree(r.ctx_->spec().ell,
                                           std::lcm(std::lcm(r.chi1_.order(), r.chi2_.order()), 2LL)));
    r.tower_ = std::move(tower);
    return r;
}

long long WeilRep2::value_order() const {
    return std::lcm(std::lcm(chi1_.order(), chi2_.order()), 2LL);
}

namespace {

Mat2 eval_rep(const WeilRep2& rep, const FqContext* k, const WeilElem& w) {
    if (!w.tw)
        throw std::invalid_argument("wrong-domain: empty element");
    if (&w.tw->ctx() != &rep.ctx())
        throw std::invalid_argument("wrong-domain: element of another context");
    if (rep.kind() == WeilRep2::Kind::Induced) {
        const WeilTower* tw = rep.tower().get();
        if (w.tw != tw)
            throw std::invalid_argument("wrong-domain: element of a different tower");
        const SmoothCharacter& th = rep.theta();
        const SmoothCharacter& ths = rep.theta_conj();
        if (w.eps == 0)
            return Mat2::diag(k->embed_root(th.eval(w.x)),
                              k->embed_root(ths.eval(w.x)));
        FieldElem xt = fe_mul(tw->top_ring(), w.x, tw->t_in_top());
        return Mat2::antidiag(k->embed_root(th.eval(xt)),
                              k->embed_root(ths.eval(w.x)));
    }
    const UnitGroupModel* dom = rep.chi1().dom;
    if (w.tw->layer().B != dom->ring)
        throw std::invalid_argument("wrong-domain: tower classes land off the character domain");
    FieldElem ab = w.tw->abelianized(w);
    return Mat2::diag(k->embed_root(rep.chi1().eval(ab)),
                      k->embed_root(rep.chi2().eval(ab)));
}

} // namespace

Mat2 WeilRep2::evaluate(const WeilElem& w) const { return eval_rep(*this, fq_.get(), w); }

Mat2 WeilRep2::evaluate_field(FieldElem x) const {
    if (kind_ != Kind::Sum)
        throw std::invalid_argument("wrong-domain: field evaluation needs a sum");
    return Mat2::diag(fq_->embed_root(chi1_.eval(x)), fq_->embed_root(chi2_.eval(x)));
}

SmoothCharacter WeilRep2::det_character() const {
    if (kind_ == Kind::Sum)
        return chi1_ * chi2_;
    CharacterLayer cl = layer_for(*tower_);
    return cl.omega() * cl.restrict_to_base(chi1_);
}

WeilRep2 WeilRep2::dual() const {
    if (kind_ == Kind::Sum)
        return sum(*ctx_, chi1_.inverse(), chi2_.inverse());
    return induced(tower_, chi1_.inverse());
}

WeilRep2 WeilRep2::twist(const SmoothCharacter& eta) const {
    if (kind_ == Kind::Sum) {
        if (eta.dom != chi1_.dom)
            throw std::invalid_argument("wrong-domain: twisting character domain");
        return sum(*ctx_, chi1_ * eta, chi2_ * eta);
    }
    const UnitGroupModel* field_units = over_F_ ? &ctx_->F_units() : &ctx_->E_units();
    if (eta.dom != field_units)
        throw std::invalid_argument("wrong-domain: twisting character domain");
    CharacterLayer cl = layer_for(*tower_);
    SmoothCharacter eta_base = eta;
    if (cl.base() != eta.dom)
        eta_base = reduce_character(eta, cl.base());
    return induced(tower_, chi1_ * cl.compose_norm(eta_base));
}

WeilRep2 WeilRep2::galois_conjugate() const {
    if (over_F_)
        throw std::invalid_argument("wrong-domain: conjugation acts on the extension side");
    if (kind_ == Kind::Sum) {
        CharacterLayer cl = CharacterLayer::over_base(*ctx_);
        return sum(*ctx_, cl.galois_twist(chi1_), cl.galois_twist(chi2_));
    }
    const WeilGaloisData& gd = tower_->galois();
    const UnitGroupModel& tu = tower_->top_units();
    std::vector<RootOfUnity> vals;
    vals.reserve(tu.grp.factors.size());
    for (const auto& f : tu.grp.factors)
        vals.push_back(chi1_.eval(gd.apply(*tower_, fe_unit(tower_->top_ring(), f.gen))));
    RootOfUnity uv = chi1_.eval(gd.apply(*tower_, fe_unif()));
    SmoothCharacter th = make_character(&tu, uv, std::move(vals), ctx_->spec().ell);
    return induced(tower_, std::move(th));
}

WeilRep2 WeilRep2::restrict_to_E() const {
    if (!over_F_)
        throw std::invalid_argument("wrong-domain: restriction starts from the base side");
    if (kind_ == Kind::Sum) {
        CharacterLayer cl = CharacterLayer::over_base(*ctx_);
        return sum(*ctx_, cl.compose_norm(chi1_), cl.compose_norm(chi2_));
    }
    return sum(*ctx_, chi1_, chi2_);
}

std::string WeilRep2::str() const {
    std::string side = over_F_ ? "base" : "extension";
    if (kind_ == Kind::Sum)
        return "Sum(" + chi1_.str() + ", " + chi2_.str() + ") [" + side + "]";
    return "Ind(" + chi1_.str() + ") [" + tower_->describe() + "]";
}

// ---------------------------------------------------------------------------
// isomorphism and duality solving

namespace {

void check_comparable(const WeilRep2& a, const WeilRep2& b) {
    if (&a.ctx() != &b.ctx() || a.over_base_field() != b.over_base_field())
        throw std::invalid_argument("wrong-domain: representations of different groups");
    if (a.kind() == WeilRep2::Kind::Induced && b.kind() == WeilRep2::Kind::Induced &&
        a.tower().get() != b.tower().get())
        throw std::invalid_argument("wrong-domain: representations on different towers");
}

std::vector<Mat2> intertwiner_basis(const WeilRep2& a, const WeilRep2& b,
                                    std::shared_ptr<const FqContext>& kout) {
    check_comparable(a, b);
    long long n = std::lcm(a.value_order(), b.value_order());
    kout = value_field(a.ctx().spec().ell, value_field_degree(a.ctx().spec().ell, n));
    const FqContext* k = kout.get();
    std::vector<Row> rows;
    if (a.kind() == WeilRep2::Kind::Sum && b.kind() == WeilRep2::Kind::Sum) {
        const UnitGroupModel* dom = a.chi1().dom;
        auto add = [&](FieldElem g) {
            Mat2 Ma = Mat2::diag(k->embed_root(a.chi1().eval(g)),
                                 k->embed_root(a.chi2().eval(g)));
            Mat2 Mb = Mat2::diag(k->embed_root(b.chi1().eval(g)),
                                 k->embed_root(b.chi2().eval(g)));
            append_intertwine(k, rows, Ma, Mb);
        };
        for (const auto& f : dom->grp.factors)
            add(fe_unit(dom->ring, f.gen));
        add(fe_unif());
    } else if (a.kind() == WeilRep2::Kind::Induced && b.kind() == WeilRep2::Kind::Induced) {
        for (const WeilElem& w : a.tower()->generators())
            append_intertwine(k, rows, eval_rep(a, k, w), eval_rep(b, k, w));
    } else {
        // a two-dimensional irreducible shares no constituent with a sum
        // of characters, so the space is zero
        return {};
    }
    std::vector<Mat2> basis;
    for (const Row& v : nullspace(std::move(rows), 4, k))
        basis.push_back(mat_of(v));
    return basis;
}

} // namespace

int intertwiner_dimension(const WeilRep2& a, const WeilRep2& b) {
    std::shared_ptr<const FqContext> k;
    return static_cast<int>(intertwiner_basis(a, b, k).size());
}

int endomorphism_dimension(const WeilRep2& a) { return intertwiner_dimension(a, a); }

bool is_isomorphic(const WeilRep2& a, const WeilRep2& b) {
    if (a.kind() != b.kind()) {
        check_comparable(a, b);
        return false;
    }
    std::shared_ptr<const FqContext> k;
    return span_has_invertible(intertwiner_basis(a, b, k));
}

DualitySign conjugate_dual_sign(const WeilRep2& rep) {
    if (rep.over_base_field())
        throw std::invalid_argument("wrong-domain: duality sign lives on the extension side");
    if (rep.kind() == WeilRep2::Kind::Sum)
        return conjugate_dual_sign(rep, WeilTower::over_base(rep.ctx()));
    return conjugate_dual_sign(rep, rep.tower());
}

DualitySign conjugate_dual_sign(const WeilRep2& rep,
                                const std::shared_ptr<const WeilTower>& tw) {
    if (rep.over_base_field())
        throw std::invalid_argument("wrong-domain: duality sign lives on the extension side");
    if (!tw)
        throw std::invalid_argument("wrong-domain: missing tower");
    const LocalFieldContext& ctx = rep.ctx();
    std::vector<Row> common;
    std::shared_ptr<const FqContext> kown;
    Mat2 S;
    if (rep.kind() == WeilRep2::Kind::Sum) {
        if (!tw->is_base_tower() || &tw->ctx() != &ctx)
            throw std::invalid_argument("wrong-domain: sum inputs pair with the E/F tower");
        CharacterLayer cl = CharacterLayer::over_base(ctx);
        SmoothCharacter c1s = cl.galois_twist(rep.chi1());
        SmoothCharacter c2s = cl.galois_twist(rep.chi2());
        kown = rep.fq();
        const FqContext* k = kown.get();
        const UnitGroupModel* dom = rep.chi1().dom;
        auto add = [&](FieldElem g) {
            Mat2 R = Mat2::diag(k->embed_root(rep.chi1().eval(g)),
                                k->embed_root(rep.chi2().eval(g)));
            Mat2 Rs = Mat2::diag(k->embed_root(c1s.eval(g)),
                                 k->embed_root(c2s.eval(g)));
            append_pairing(k, common, R, Rs);
        };
        for (const auto& f : dom->grp.factors)
            add(fe_unit(dom->ring, f.gen));
        add(fe_unif());
        FieldElem tE = ctx.layer().embed(tw->t());
        S = Mat2::diag(k->embed_root(rep.chi1().eval(tE)),
                       k->embed_root(rep.chi2().eval(tE)));
    } else {
        if (tw->k_tower() != rep.tower()->k_tower())
            throw std::invalid_argument("wrong-domain: tower mismatch for the induced input");
        WeilRep2 r2 = (tw == rep.tower()) ? rep : WeilRep2::induced(tw, rep.theta());
        const WeilGaloisData& gd = tw->galois();
        kown = r2.fq();
        const FqContext* k = kown.get();
        for (const WeilElem& w : tw->generators())
            append_pairing(k, common, eval_rep(r2, k, w), eval_rep(r2, k, gd.conj(*tw, w)));
        S = eval_rep(r2, k, tw->elem(gd.k1, gd.eps2));
    }
    const FqContext* k = kown.get();
    bool orth = false, symp = false;
    for (int sgn = 0; sgn < 2; ++sgn) {
        std::vector<Row> rows = common;
        append_sign(k, rows, S, sgn ? k->from_int(-1) : k->one());
        std::vector<Mat2> basis;
        for (const Row& v : nullspace(std::move(rows), 4, k))
            basis.push_back(mat_of(v));
        bool ok = span_has_invertible(basis);
        if (sgn)
            symp = ok;
        else
            orth = ok;
    }
    if (orth && symp)
        return DualitySign::Both;
    if (orth)
        return DualitySign::ConjugateOrthogonal;
    if (symp)
        return DualitySign::ConjugateSymplectic;
    return DualitySign::Neither;
}

int dihedral_centralizer_order(const WeilRep2& rep) {
    if (rep.kind() != WeilRep2::Kind::Induced)
        throw std::invalid_argument("reducible-input: centralizer order needs an induced input");
    SmoothCharacter ratio = rep.theta() * rep.theta_conj().inverse();
    return is_quadratic(ratio) ? 4 : 2;
}

int projective_centralizer_count(const WeilRep2& rep) {
    if (rep.kind() != WeilRep2::Kind::Induced)
        throw std::invalid_argument("reducible-input: centralizer count needs an induced input");
    const FqContext* k = rep.fq().get();
    std::vector<WeilElem> gens = rep.tower()->generators();
    if (gens.size() > 24)
        throw std::length_error("too-large: generator count for the centralizer sweep");
    std::vector<Mat2> M;
    M.reserve(gens.size());
    for (const auto& w : gens)
        M.push_back(eval_rep(rep, k, w));
    int count = 0;
    for (uint64_t mask = 0; mask < (1ull << gens.size()); ++mask) {
        std::vector<Row> rows;
        for (size_t i = 0; i < gens.size(); ++i) {
            Mat2 target = (mask >> i & 1) ? M[i].scaled(k->from_int(-1)) : M[i];
            append_intertwine(k, rows, M[i], target);
        }
        std::vector<Mat2> basis;
        for (const Row& v : nullspace(std::move(rows), 4, k))
            basis.push_back(mat_of(v));
        if (span_has_invertible(basis))
            ++count;
    }
    return count;
}

} // namespace moddist
