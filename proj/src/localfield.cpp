#include "moddist/localfield.hpp"

#include <stdexcept>

namespace moddist {

namespace {

constexpr long long kUnitBudget = 100000;

bool small_prime(long long n) {
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

long long unit_count(long long q, int m) {
    if (m == 0)
        return 1;
    long long c = q - 1;
    for (int i = 1; i < m; ++i)
        c *= q;
    return c;
}

} // namespace

std::string to_string(BaseChar c) {
    return c == BaseChar::Zero ? "char-zero" : "char-p";
}

std::string to_string(ExtType e) {
    switch (e) {
    case ExtType::Unramified:
        return "unramified";
    case ExtType::RamifiedUnit:
        return "ramified(pi)";
    default:
        return "ramified(u*pi)";
    }
}

std::string to_string(GammaClass g) {
    switch (g) {
    case GammaClass::NonsquareUnit:
        return "nonsquare-unit";
    case GammaClass::Unif:
        return "uniformizer";
    default:
        return "uniformizer-times-nonsquare";
    }
}

// -------------------------------------------------------------- FieldSpec

long long FieldSpec::qF() const {
    long long q = 1;
    for (int i = 0; i < f; ++i)
        q *= p;
    return q;
}

void FieldSpec::validate() const {
    if (!small_prime(p))
        throw std::invalid_argument("fieldspec: p must be prime");
    if (f < 1)
        throw std::invalid_argument("fieldspec: residue degree must be positive");
    if (!small_prime(ell) || ell == 2)
        throw std::invalid_argument("fieldspec: ell must be an odd prime");
    if (ell == p)
        throw std::invalid_argument("fieldspec: ell must differ from p");
    if (depth < 1)
        throw std::invalid_argument("fieldspec: depth must be at least 1");
    if (p == 2 && base_char == BaseChar::CharP)
        throw std::invalid_argument("fieldspec: residue characteristic 2 needs a char-zero base");
    if (p == 2) {
        // depth >= 2 v_E(2) + 1 so every square class of E is separated
        const int need = ramified() ? 5 : 3;
        if (depth < need)
            throw std::invalid_argument("fieldspec: depth too small for p = 2");
    }
}

std::string FieldSpec::describe() const {
    return "E/F: qF=" + std::to_string(qF()) + " (" + to_string(base_char) + "), " +
           to_string(ext) + ", ell=" + std::to_string(ell) + ", depth=" +
           std::to_string(depth);
}

// -------------------------------------------------------------- FieldElem

FieldElem fe_one() {
    return {0, 1};
}

FieldElem fe_unif() {
    return {1, 1};
}

FieldElem fe_mul(const TruncRing* R, FieldElem a, FieldElem b) {
    return {a.v + b.v, R->mul(a.u, b.u)};
}

FieldElem fe_inv(const TruncRing* R, FieldElem a) {
    return {-a.v, R->inv(a.u)};
}

FieldElem fe_pow(const TruncRing* R, FieldElem a, long long e) {
    return {a.v * e, R->pow(a.u, e)};
}

FieldElem fe_unit(const TruncRing* R, uint64_t code) {
    if (!R->is_unit(code))
        throw std::invalid_argument("fieldelem: code is not a unit");
    return {0, code};
}

// -------------------------------------------------------------- QuadLayer

namespace {

uint64_t ram_d(const QuadRingBase* L) {
    const auto* r = dynamic_cast<const QuadRamRing*>(L);
    if (r == nullptr)
        throw std::logic_error("quadlayer: ramified ring of unexpected type");
    return r->d_code();
}

} // namespace

FieldElem QuadLayer::sigma(FieldElem x) const {
    uint64_t u = L->sigma(x.u);
    if (ramified() && (x.v % 2 != 0))
        u = L->neg(u);
    return {x.v, u};
}

FieldElem QuadLayer::norm(FieldElem x) const {
    if (!ramified())
        return {2 * x.v, L->norm(x.u)};
    const uint64_t nd = B->neg(ram_d(L));
    return {x.v, B->mul(B->pow(nd, x.v), L->norm(x.u))};
}

FieldElem QuadLayer::embed(FieldElem x) const {
    if (!ramified())
        return {x.v, L->embed(x.u)};
    const uint64_t w = B->mul(B->pow(ram_d(L), -x.v), x.u);
    return {2 * x.v, L->embed(w)};
}

uint64_t QuadLayer::to_code(FieldElem x) const {
    if (x.v < 0)
        throw std::invalid_argument("quadlayer: negative valuation has no ring code");
    uint64_t c = x.u;
    const long long steps = x.v < L->precision() ? x.v : L->precision();
    for (long long i = 0; i < steps; ++i)
        c = L->times_unif(c);
    return c;
}

std::string QuadLayer::elem_str(FieldElem x) const {
    return "pi^" + std::to_string(x.v) + " * " + L->elem_str(x.u);
}

// --------------------------------------------------------- unit machinery

std::vector<long long> UnitGroupModel::orders() const {
    std::vector<long long> out;
    out.reserve(grp.factors.size());
    for (const auto& f : grp.factors)
        out.push_back(f.order);
    return out;
}

UnitGroupModel build_unit_group(const TruncRing* R) {
    const long long count = unit_count(R->residue_card(), R->precision());
    if (count > kUnitBudget)
        throw std::length_error("too-large: unit group of " + R->describe() + " has " +
                                std::to_string(count) + " elements");
    UnitGroupModel m;
    m.ring = R;
    m.grp = decompose_abelian(R->unit_codes(), 1,
                              [R](uint64_t a, uint64_t b) { return R->mul(a, b); });
    return m;
}

UnitGroupModel build_subgroup(const TruncRing* R, std::vector<uint64_t> codes) {
    UnitGroupModel m;
    m.ring = R;
    m.grp = decompose_abelian(codes, 1,
                              [R](uint64_t a, uint64_t b) { return R->mul(a, b); });
    return m;
}

int unit_power_level(const TruncRing* R, uint64_t x, int i, long long p) {
    if (i < 1 || R->val(R->sub(x, 1)) < i)
        throw std::domain_error("not-a-principal-unit: x is not in U^" + std::to_string(i));
    const int j = R->val(R->sub(R->pow(x, p), 1));
    const int floor_level = i + 1 < R->precision() ? i + 1 : R->precision();
    if (j < floor_level)
        throw std::logic_error("unit_power_level: p-th power left level " + std::to_string(i) +
                               " only to " + std::to_string(j));
    return j;
}

// ----------------------------------------------------------------- KTower

KTower::KTower(const QuadLayer& base_layer, GammaClass cls, long long /*p*/,
               long long unit_budget)
    : cls_(cls), base_full_(base_layer.L) {
    const TruncRing* E = base_layer.L;
    const int nE = E->precision();

    if (cls == GammaClass::NonsquareUnit) {
        int nK = nE;
        const long long qK = E->residue_card() * E->residue_card();
        while (nK > 1 && unit_count(qK, nK) > unit_budget)
            --nK;
        auto* K = new QuadUnramRing(E->reduced(nK));
        K_owned_.reset(K);
        // delta^2 = s delta + r; for odd residue characteristic s = 0 and
        // gamma = r generates the nonsquare class
        gamma_ = {0, E->lift_code(K->r_code(), nK)};
    } else {
        uint64_t d = 1;
        if (cls == GammaClass::UnifTimesNonsquare)
            d = least_nonsquare_unit(E);
        int nK = 2 * nE;
        while (nK > 1 && unit_count(E->residue_card(), nK) > unit_budget)
            --nK;
        K_owned_.reset(new QuadRamRing(E, d, nK));
        gamma_ = {1, d};
    }
    K_ = K_owned_.get();
}

QuadLayer KTower::layer() const {
    return {K_, K_->norm_target()};
}

const UnitGroupModel& KTower::units() const {
    if (!units_)
        units_ = std::make_unique<UnitGroupModel>(build_unit_group(K_));
    return *units_;
}

const UnitGroupModel& KTower::base_units() const {
    if (!base_units_)
        base_units_ = std::make_unique<UnitGroupModel>(build_unit_group(K_->norm_target()));
    return *base_units_;
}

// ------------------------------------------------------- LocalFieldContext

LocalFieldContext::LocalFieldContext(const FieldSpec& spec) : spec_(spec) {
    spec_.validate();
    const int mF = spec_.ramified() ? (spec_.depth + 1) / 2 : spec_.depth;
    if (spec_.base_char == BaseChar::Zero)
        F_owned_ = std::make_unique<ZqRing>(spec_.p, mF, spec_.f);
    else
        F_owned_ = std::make_unique<TqRing>(spec_.p, spec_.f, mF);
    F_ = F_owned_.get();

    if (!spec_.ramified()) {
        E_owned_ = std::make_unique<QuadUnramRing>(F_);
    } else {
        const uint64_t d = spec_.ext == ExtType::RamifiedUnit ? 1 : least_nonsquare_unit(F_);
        E_owned_ = std::make_unique<QuadRamRing>(F_, d, spec_.depth);
    }
    E_ = E_owned_.get();
}

QuadLayer LocalFieldContext::layer() const {
    return {E_, E_->norm_target()};
}

const UnitGroupModel& LocalFieldContext::F_units() const {
    if (!F_units_)
        F_units_ = std::make_unique<UnitGroupModel>(build_unit_group(F_));
    return *F_units_;
}

const UnitGroupModel& LocalFieldContext::E_units() const {
    if (!E_units_)
        E_units_ = std::make_unique<UnitGroupModel>(build_unit_group(E_));
    return *E_units_;
}

std::vector<uint64_t> LocalFieldContext::norm_one_codes() const {
    std::vector<uint64_t> ker;
    for (uint64_t c : E_->unit_codes())
        if (E_->norm(c) == 1)
            ker.push_back(c);
    return ker;
}

const UnitGroupModel& LocalFieldContext::norm_one_units() const {
    if (!norm_one_)
        norm_one_ = std::make_unique<UnitGroupModel>(build_subgroup(E_, norm_one_codes()));
    return *norm_one_;
}

const KTower& LocalFieldContext::k_tower(GammaClass cls) const {
    const int idx = static_cast<int>(cls);
    if (!towers_[idx])
        towers_[idx] = std::make_unique<KTower>(layer(), cls, spec_.p, kUnitBudget);
    return *towers_[idx];
}

std::string LocalFieldContext::describe() const {
    return spec_.describe() + "; F = " + F_->describe() + ", E = " + E_->describe();
}

// ------------------------------------------------------------ lemma hooks

std::optional<std::pair<long long, long long>>
uniformizer_power_witness(const std::vector<QuadLayer>& tower, int N, long long s_max) {
    if (tower.empty())
        throw std::invalid_argument("witness: empty tower");
    const TruncRing* top = tower.back().L;
    if (N < 1 || N > top->precision())
        throw std::invalid_argument("witness: level " + std::to_string(N) +
                                    " outside truncation depth");
    // push the bottom uniformizer up the tower, reducing codes at each
    // handoff to the precision the next layer's base supports
    FieldElem x = fe_unif();
    for (size_t t = 0; t < tower.size(); ++t) {
        if (t > 0)
            x.u = tower[t - 1].L->reduce_code(x.u, tower[t].B->precision());
        x = tower[t].embed(x);
    }
    const long long e = x.v; // ramification index of the tower
    const uint64_t w = top->inv(x.u); // unit part of unif_top^e / unif_bottom
    for (long long s = 1; s <= s_max; ++s) {
        const uint64_t ws = top->pow(w, s);
        if (top->val(top->sub(ws, 1)) >= N)
            return std::make_pair(e * s, s);
    }
    return std::nullopt;
}

} // namespace moddist
