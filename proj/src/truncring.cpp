#include "moddist/truncring.hpp"

#include <stdexcept>

namespace moddist {

namespace {
constexpr uint64_t kRingSizeBound = uint64_t(1) << 24;
}

uint64_t TruncRing::pow(uint64_t a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    uint64_t r = 1, b = a;
    while (e > 0) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

const TruncRing* TruncRing::reduced(int m2) const {
    if (m2 == m_)
        return this;
    if (m2 > m_ || m2 < 0)
        throw std::invalid_argument("truncring: bad reduced precision " + std::to_string(m2));
    const TruncRing* root = root_ == nullptr ? this : root_;
    if (root != this)
        return root->reduced(m2);
    auto it = reduced_cache_.find(m2);
    if (it == reduced_cache_.end()) {
        std::unique_ptr<TruncRing> child = make_reduced(m2);
        child->root_ = this;
        it = reduced_cache_.emplace(m2, std::move(child)).first;
    }
    return it->second.get();
}

std::vector<uint64_t> TruncRing::unit_codes() const {
    std::vector<uint64_t> out;
    for (uint64_t c = 0; c < size_; ++c)
        if (is_unit(c))
            out.push_back(c);
    return out;
}

// ---------------------------------------------------------------- ZqRing

ZqRing::ZqRing(long long p, int m, int f) : p_(p), f_(f), kq_(p, f) {
    if (m < 0)
        throw std::invalid_argument("zq: negative precision");
    m_ = m;
    q_ = kq_.card();
    pm_ = 1;
    for (int i = 0; i < m; ++i)
        pm_ *= p;
    uint64_t sz = 1;
    for (int i = 0; i < f; ++i) {
        sz *= static_cast<uint64_t>(pm_);
        if (sz > kRingSizeBound)
            throw std::length_error("too-large: GR(" + std::to_string(p) + "^" +
                                    std::to_string(m) + "," + std::to_string(f) + ")");
    }
    size_ = sz;
    modulus_.assign(kq_.modulus().begin(), kq_.modulus().end());
}

std::vector<long long> ZqRing::coords(uint64_t a) const {
    std::vector<long long> c(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i) {
        c[static_cast<size_t>(i)] = static_cast<long long>(a % static_cast<uint64_t>(pm_));
        a /= static_cast<uint64_t>(pm_);
    }
    return c;
}

uint64_t ZqRing::pack(const std::vector<long long>& c) const {
    uint64_t a = 0;
    for (int i = f_ - 1; i >= 0; --i)
        a = a * static_cast<uint64_t>(pm_) + static_cast<uint64_t>(c[static_cast<size_t>(i)]);
    return a;
}

uint64_t ZqRing::add(uint64_t a, uint64_t b) const {
    auto ca = coords(a), cb = coords(b);
    for (int i = 0; i < f_; ++i)
        ca[static_cast<size_t>(i)] = (ca[static_cast<size_t>(i)] + cb[static_cast<size_t>(i)]) % pm_;
    return pack(ca);
}

uint64_t ZqRing::sub(uint64_t a, uint64_t b) const {
    auto ca = coords(a), cb = coords(b);
    for (int i = 0; i < f_; ++i)
        ca[static_cast<size_t>(i)] =
            (ca[static_cast<size_t>(i)] - cb[static_cast<size_t>(i)] % pm_ + pm_) % pm_;
    return pack(ca);
}

uint64_t ZqRing::neg(uint64_t a) const {
    return sub(0, a);
}

uint64_t ZqRing::mul(uint64_t a, uint64_t b) const {
    auto ca = coords(a), cb = coords(b);
    std::vector<long long> w(static_cast<size_t>(2 * f_ - 1), 0);
    for (int i = 0; i < f_; ++i) {
        if (ca[static_cast<size_t>(i)] == 0)
            continue;
        for (int j = 0; j < f_; ++j)
            w[static_cast<size_t>(i + j)] =
                (w[static_cast<size_t>(i + j)] +
                 ca[static_cast<size_t>(i)] * cb[static_cast<size_t>(j)]) % pm_;
    }
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        const long long c = w[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        w[static_cast<size_t>(i)] = 0;
        for (int j = 0; j < f_; ++j)
            w[static_cast<size_t>(i - f_ + j)] =
                (w[static_cast<size_t>(i - f_ + j)] - c * modulus_[static_cast<size_t>(j)] % pm_ +
                 pm_ * pm_) % pm_;
    }
    w.resize(static_cast<size_t>(f_));
    return pack(w);
}

uint64_t ZqRing::inv(uint64_t a) const {
    if (!is_unit(a))
        throw std::domain_error("zq: inverse of a non-unit");
    const uint32_t ri = static_cast<uint32_t>(residue_index(a));
    const Fq rinv = Fq(&kq_, ri).inverse();
    uint64_t x = residue_section(rinv.code());
    // Hensel: x <- x(2 - a x), quadratic convergence in the p-adic distance
    for (int it = 0; it < 8; ++it) {
        const uint64_t ax = mul(a, x);
        if (ax == 1)
            return x;
        x = mul(x, sub(from_int(2), ax));
    }
    if (mul(a, x) != 1)
        throw std::logic_error("zq: inverse iteration failed");
    return x;
}

uint64_t ZqRing::from_int(long long n) const {
    long long v = n % pm_;
    if (v < 0)
        v += pm_;
    std::vector<long long> c(static_cast<size_t>(f_), 0);
    c[0] = v;
    return pack(c);
}

uint64_t ZqRing::times_unif(uint64_t a) const {
    auto c = coords(a);
    for (auto& x : c)
        x = x * p_ % pm_;
    return pack(c);
}

int ZqRing::val(uint64_t a) const {
    if (a == 0)
        return m_;
    int best = m_;
    for (long long x : coords(a)) {
        if (x == 0)
            continue;
        int v = 0;
        while (x % p_ == 0) {
            x /= p_;
            ++v;
        }
        if (v < best)
            best = v;
    }
    return best;
}

long long ZqRing::residue_index(uint64_t a) const {
    auto c = coords(a);
    long long idx = 0;
    for (int i = f_ - 1; i >= 0; --i)
        idx = idx * p_ + c[static_cast<size_t>(i)] % p_;
    return idx;
}

uint64_t ZqRing::residue_section(long long idx) const {
    std::vector<long long> c(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i) {
        c[static_cast<size_t>(i)] = idx % p_ % pm_;
        idx /= p_;
    }
    return pack(c);
}

uint64_t ZqRing::reduce_code(uint64_t a, int m2) const {
    if (m2 == m_)
        return a;
    long long pm2 = 1;
    for (int i = 0; i < m2; ++i)
        pm2 *= p_;
    auto c = coords(a);
    uint64_t out = 0;
    for (int i = f_ - 1; i >= 0; --i)
        out = out * static_cast<uint64_t>(pm2) +
              static_cast<uint64_t>(c[static_cast<size_t>(i)] % pm2);
    return out;
}

uint64_t ZqRing::lift_code(uint64_t a, int m_from) const {
    long long pmf = 1;
    for (int i = 0; i < m_from; ++i)
        pmf *= p_;
    std::vector<long long> c(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i) {
        c[static_cast<size_t>(i)] = static_cast<long long>(a % static_cast<uint64_t>(pmf));
        a /= static_cast<uint64_t>(pmf);
    }
    return pack(c);
}

std::string ZqRing::describe() const {
    return "GR(" + std::to_string(p_) + "^" + std::to_string(m_) + "," + std::to_string(f_) + ")";
}

std::string ZqRing::elem_str(uint64_t a) const {
    auto c = coords(a);
    std::string s = "[";
    for (int i = 0; i < f_; ++i) {
        if (i)
            s += ",";
        s += std::to_string(c[static_cast<size_t>(i)]);
    }
    return s + "]";
}

std::unique_ptr<TruncRing> ZqRing::make_reduced(int m2) const {
    return std::make_unique<ZqRing>(p_, m2, f_);
}

// ---------------------------------------------------------------- TqRing

TqRing::TqRing(long long p, int f, int m) : p_(p), f_(f), kq_(p, f) {
    if (m < 0)
        throw std::invalid_argument("tq: negative precision");
    m_ = m;
    q_ = kq_.card();
    uint64_t sz = 1;
    for (int i = 0; i < m; ++i) {
        sz *= static_cast<uint64_t>(q_);
        if (sz > kRingSizeBound)
            throw std::length_error("too-large: F_q[t]/t^m with q = " + std::to_string(q_) +
                                    ", m = " + std::to_string(m));
    }
    size_ = sz;
}

std::vector<uint32_t> TqRing::digits(uint64_t a) const {
    std::vector<uint32_t> d(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
        d[static_cast<size_t>(i)] = static_cast<uint32_t>(a % static_cast<uint64_t>(q_));
        a /= static_cast<uint64_t>(q_);
    }
    return d;
}

uint64_t TqRing::pack(const std::vector<uint32_t>& d) const {
    uint64_t a = 0;
    for (int i = m_ - 1; i >= 0; --i)
        a = a * static_cast<uint64_t>(q_) + d[static_cast<size_t>(i)];
    return a;
}

Fq TqRing::at(const std::vector<uint32_t>& d, size_t i) const {
    return Fq(&kq_, d[i]);
}

uint64_t TqRing::add(uint64_t a, uint64_t b) const {
    auto da = digits(a), db = digits(b);
    for (size_t i = 0; i < da.size(); ++i)
        da[i] = (at(da, i) + at(db, i)).code();
    return pack(da);
}

uint64_t TqRing::sub(uint64_t a, uint64_t b) const {
    auto da = digits(a), db = digits(b);
    for (size_t i = 0; i < da.size(); ++i)
        da[i] = (at(da, i) - at(db, i)).code();
    return pack(da);
}

uint64_t TqRing::neg(uint64_t a) const {
    return sub(0, a);
}

uint64_t TqRing::mul(uint64_t a, uint64_t b) const {
    auto da = digits(a), db = digits(b);
    std::vector<uint32_t> w(static_cast<size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
        if (da[static_cast<size_t>(i)] == 0)
            continue;
        for (int j = 0; j + i < m_; ++j) {
            const Fq prod = at(da, static_cast<size_t>(i)) * at(db, static_cast<size_t>(j));
            w[static_cast<size_t>(i + j)] = (Fq(&kq_, w[static_cast<size_t>(i + j)]) + prod).code();
        }
    }
    return pack(w);
}

uint64_t TqRing::inv(uint64_t a) const {
    if (!is_unit(a))
        throw std::domain_error("tq: inverse of a non-unit");
    auto da = digits(a);
    std::vector<uint32_t> b(static_cast<size_t>(m_), 0);
    const Fq a0inv = at(da, 0).inverse();
    b[0] = a0inv.code();
    for (int k = 1; k < m_; ++k) {
        Fq acc = kq_.zero();
        for (int i = 1; i <= k; ++i)
            acc = acc + at(da, static_cast<size_t>(i)) * Fq(&kq_, b[static_cast<size_t>(k - i)]);
        b[static_cast<size_t>(k)] = (-(a0inv * acc)).code();
    }
    return pack(b);
}

uint64_t TqRing::from_int(long long n) const {
    long long v = n % p_;
    if (v < 0)
        v += p_;
    if (m_ == 0)
        return 0;
    return static_cast<uint64_t>(v); // prime-subfield codes coincide with integers
}

uint64_t TqRing::times_unif(uint64_t a) const {
    auto d = digits(a);
    std::vector<uint32_t> w(static_cast<size_t>(m_), 0);
    for (int i = 1; i < m_; ++i)
        w[static_cast<size_t>(i)] = d[static_cast<size_t>(i - 1)];
    return pack(w);
}

int TqRing::val(uint64_t a) const {
    if (a == 0)
        return m_;
    auto d = digits(a);
    for (int i = 0; i < m_; ++i)
        if (d[static_cast<size_t>(i)] != 0)
            return i;
    return m_;
}

long long TqRing::residue_index(uint64_t a) const {
    return static_cast<long long>(a % static_cast<uint64_t>(q_));
}

uint64_t TqRing::residue_section(long long idx) const {
    if (m_ == 0)
        return 0;
    return static_cast<uint64_t>(idx);
}

uint64_t TqRing::reduce_code(uint64_t a, int m2) const {
    if (m2 == m_)
        return a;
    uint64_t mod = 1;
    for (int i = 0; i < m2; ++i)
        mod *= static_cast<uint64_t>(q_);
    return a % mod;
}

uint64_t TqRing::lift_code(uint64_t a, int /*m_from*/) const {
    return a;
}

std::string TqRing::describe() const {
    return "F_" + std::to_string(q_) + "[t]/t^" + std::to_string(m_);
}

std::string TqRing::elem_str(uint64_t a) const {
    auto d = digits(a);
    std::string s = "[";
    for (int i = 0; i < m_; ++i) {
        if (i)
            s += ",";
        s += std::to_string(d[static_cast<size_t>(i)]);
    }
    return s + "]";
}

std::unique_ptr<TruncRing> TqRing::make_reduced(int m2) const {
    return std::make_unique<TqRing>(p_, f_, m2);
}

// ---------------------------------------------------------- QuadUnramRing

namespace {

// least (c1, c0) with y^2 + c1 y + c0 irreducible over the residue field,
// detected by the absence of residue roots
std::pair<long long, long long> least_residue_quadratic(const TruncRing* B) {
    const long long q = B->residue_card();
    for (long long c1 = 0; c1 < q; ++c1)
        for (long long c0 = 0; c0 < q; ++c0) {
            bool has_root = false;
            const uint64_t u1 = B->residue_section(c1);
            const uint64_t u0 = B->residue_section(c0);
            for (long long w = 0; w < q && !has_root; ++w) {
                const uint64_t x = B->residue_section(w);
                const uint64_t v = B->add(B->add(B->mul(x, x), B->mul(u1, x)), u0);
                has_root = B->val(v) >= 1;
            }
            if (!has_root)
                return {c1, c0};
        }
    throw std::logic_error("quad: residue field admits no irreducible quadratic");
}

} // namespace

QuadUnramRing::QuadUnramRing(const TruncRing* base) : QuadRingBase(base), s_(0), r_(0) {
    const auto [c1, c0] = least_residue_quadratic(base);
    s_ = base->neg(base->residue_section(c1));
    r_ = base->neg(base->residue_section(c0));
    m_ = base->precision();
    q_ = base->residue_card() * base->residue_card();
    size_ = base->size() * base->size();
    if (size_ > kRingSizeBound)
        throw std::length_error("too-large: quadratic layer over " + base->describe());
}

QuadUnramRing::QuadUnramRing(const TruncRing* base, uint64_t s_code, uint64_t r_code)
    : QuadRingBase(base), s_(s_code), r_(r_code) {
    m_ = base->precision();
    q_ = base->residue_card() * base->residue_card();
    size_ = base->size() * base->size();
    if (size_ > kRingSizeBound)
        throw std::length_error("too-large: quadratic layer over " + base->describe());
}

uint64_t QuadUnramRing::pack(uint64_t a, uint64_t b) const {
    return a + base_->size() * b;
}

std::pair<uint64_t, uint64_t> QuadUnramRing::unpack(uint64_t c) const {
    return {c % base_->size(), c / base_->size()};
}

uint64_t QuadUnramRing::add(uint64_t a, uint64_t b) const {
    const auto [xa, xb] = unpack(a);
    const auto [ya, yb] = unpack(b);
    return pack(base_->add(xa, ya), base_->add(xb, yb));
}

uint64_t QuadUnramRing::sub(uint64_t a, uint64_t b) const {
    const auto [xa, xb] = unpack(a);
    const auto [ya, yb] = unpack(b);
    return pack(base_->sub(xa, ya), base_->sub(xb, yb));
}

uint64_t QuadUnramRing::neg(uint64_t a) const {
    const auto [xa, xb] = unpack(a);
    return pack(base_->neg(xa), base_->neg(xb));
}

uint64_t QuadUnramRing::mul(uint64_t x, uint64_t y) const {
    // (a + b delta)(c + e delta) with delta^2 = s delta + r
    const auto [a, b] = unpack(x);
    const auto [c, e] = unpack(y);
    const uint64_t be = base_->mul(b, e);
    const uint64_t lo = base_->add(base_->mul(a, c), base_->mul(be, r_));
    const uint64_t hi = base_->add(base_->add(base_->mul(a, e), base_->mul(b, c)),
                                   base_->mul(be, s_));
    return pack(lo, hi);
}

uint64_t QuadUnramRing::sigma(uint64_t x) const {
    // delta -> s - delta
    const auto [a, b] = unpack(x);
    return pack(base_->add(a, base_->mul(b, s_)), base_->neg(b));
}

uint64_t QuadUnramRing::norm(uint64_t x) const {
    // a^2 + a b s - b^2 r
    const auto [a, b] = unpack(x);
    const uint64_t t = base_->add(base_->mul(a, a), base_->mul(base_->mul(a, b), s_));
    return base_->sub(t, base_->mul(base_->mul(b, b), r_));
}

uint64_t QuadUnramRing::embed(uint64_t base_code) const {
    return pack(base_code, 0);
}

uint64_t QuadUnramRing::inv(uint64_t x) const {
    if (!is_unit(x))
        throw std::domain_error("quad: inverse of a non-unit");
    const uint64_t ni = base_->inv(norm(x));
    const auto [a, b] = unpack(sigma(x));
    return pack(base_->mul(a, ni), base_->mul(b, ni));
}

uint64_t QuadUnramRing::from_int(long long n) const {
    return pack(base_->from_int(n), 0);
}

uint64_t QuadUnramRing::times_unif(uint64_t x) const {
    const auto [a, b] = unpack(x);
    return pack(base_->times_unif(a), base_->times_unif(b));
}

int QuadUnramRing::val(uint64_t x) const {
    const auto [a, b] = unpack(x);
    const int va = base_->val(a), vb = base_->val(b);
    return va < vb ? va : vb;
}

long long QuadUnramRing::residue_index(uint64_t x) const {
    const auto [a, b] = unpack(x);
    return base_->residue_index(a) + base_->residue_card() * base_->residue_index(b);
}

uint64_t QuadUnramRing::residue_section(long long idx) const {
    const long long qb = base_->residue_card();
    return pack(base_->residue_section(idx % qb), base_->residue_section(idx / qb));
}

uint64_t QuadUnramRing::reduce_code(uint64_t x, int m2) const {
    if (m2 == m_)
        return x;
    const auto [a, b] = unpack(x);
    const TruncRing* b2 = base_->reduced(m2);
    return base_->reduce_code(a, m2) + b2->size() * base_->reduce_code(b, m2);
}

uint64_t QuadUnramRing::lift_code(uint64_t x, int m_from) const {
    const TruncRing* b2 = base_->reduced(m_from);
    const uint64_t a = x % b2->size(), b = x / b2->size();
    return pack(base_->lift_code(a, m_from), base_->lift_code(b, m_from));
}

std::string QuadUnramRing::describe() const {
    return "unram2(" + base_->describe() + ")";
}

std::string QuadUnramRing::elem_str(uint64_t x) const {
    const auto [a, b] = unpack(x);
    return base_->elem_str(a) + "+" + base_->elem_str(b) + "*w";
}

std::unique_ptr<TruncRing> QuadUnramRing::make_reduced(int m2) const {
    return std::unique_ptr<TruncRing>(new QuadUnramRing(
        base_->reduced(m2), base_->reduce_code(s_, m2), base_->reduce_code(r_, m2)));
}

// ------------------------------------------------------------ QuadRamRing

QuadRamRing::QuadRamRing(const TruncRing* base_full, uint64_t d_code_full, int n)
    : QuadRingBase(base_full) {
    if (n < 0)
        throw std::invalid_argument("quadram: negative precision");
    const int hm = (n + 1) / 2, lm = n / 2;
    if (hm > base_full->precision())
        throw std::invalid_argument("quadram: base precision too low for depth " +
                                    std::to_string(n));
    bh_ = base_full->reduced(hm);
    bl_ = base_full->reduced(lm);
    d_ = base_full->reduce_code(d_code_full, hm);
    if (n > 0 && !bh_->is_unit(d_))
        throw std::invalid_argument("quadram: d must be a unit");
    m_ = n;
    q_ = base_full->residue_card();
    size_ = bh_->size() * bl_->size();
    if (size_ > kRingSizeBound)
        throw std::length_error("too-large: ramified layer over " + base_full->describe());
}

uint64_t QuadRamRing::pack(uint64_t a, uint64_t b) const {
    return a + bh_->size() * b;
}

std::pair<uint64_t, uint64_t> QuadRamRing::unpack(uint64_t c) const {
    return {c % bh_->size(), c / bh_->size()};
}

uint64_t QuadRamRing::add(uint64_t a, uint64_t b) const {
    const auto [xa, xb] = unpack(a);
    const auto [ya, yb] = unpack(b);
    return pack(bh_->add(xa, ya), bl_->add(xb, yb));
}

uint64_t QuadRamRing::sub(uint64_t a, uint64_t b) const {
    const auto [xa, xb] = unpack(a);
    const auto [ya, yb] = unpack(b);
    return pack(bh_->sub(xa, ya), bl_->sub(xb, yb));
}

uint64_t QuadRamRing::neg(uint64_t a) const {
    const auto [xa, xb] = unpack(a);
    return pack(bh_->neg(xa), bl_->neg(xb));
}

uint64_t QuadRamRing::mul(uint64_t x, uint64_t y) const {
    // (a + b delta)(c + e delta) = ac + bed*pi + (ae + bc) delta
    const auto [a, b] = unpack(x);
    const auto [c, e] = unpack(y);
    const int lm = bl_->precision();
    const uint64_t be = bl_->mul(b, e);
    const uint64_t be_h = bh_->lift_code(be, lm);
    const uint64_t lo = bh_->add(bh_->mul(a, c), bh_->times_unif(bh_->mul(be_h, d_)));
    const uint64_t ar = bh_->reduce_code(a, lm), cr = bh_->reduce_code(c, lm);
    const uint64_t hi = bl_->add(bl_->mul(ar, e), bl_->mul(cr, b));
    return pack(lo, hi);
}

uint64_t QuadRamRing::sigma(uint64_t x) const {
    const auto [a, b] = unpack(x);
    return pack(a, bl_->neg(b));
}

uint64_t QuadRamRing::norm(uint64_t x) const {
    // a^2 - b^2 d pi
    const auto [a, b] = unpack(x);
    const uint64_t b2 = bh_->lift_code(bl_->mul(b, b), bl_->precision());
    return bh_->sub(bh_->mul(a, a), bh_->times_unif(bh_->mul(b2, d_)));
}

uint64_t QuadRamRing::embed(uint64_t base_code) const {
    return pack(base_code, 0);
}

uint64_t QuadRamRing::inv(uint64_t x) const {
    if (!is_unit(x))
        throw std::domain_error("quadram: inverse of a non-unit");
    const uint64_t ni = bh_->inv(norm(x));
    const auto [a, b] = unpack(x);
    const uint64_t nil = bh_->reduce_code(ni, bl_->precision());
    return pack(bh_->mul(a, ni), bl_->neg(bl_->mul(b, nil)));
}

uint64_t QuadRamRing::from_int(long long n) const {
    return pack(bh_->from_int(n), 0);
}

uint64_t QuadRamRing::times_unif(uint64_t x) const {
    // (a + b delta) delta = b d pi + a delta
    const auto [a, b] = unpack(x);
    const uint64_t bh = bh_->lift_code(b, bl_->precision());
    return pack(bh_->times_unif(bh_->mul(bh, d_)), bh_->reduce_code(a, bl_->precision()));
}

int QuadRamRing::val(uint64_t x) const {
    const auto [a, b] = unpack(x);
    const int va = 2 * bh_->val(a);
    const int vb = 2 * bl_->val(b) + 1;
    const int v = va < vb ? va : vb;
    return v < m_ ? v : m_;
}

long long QuadRamRing::residue_index(uint64_t x) const {
    const auto [a, b] = unpack(x);
    (void)b;
    return bh_->residue_index(a);
}

uint64_t QuadRamRing::residue_section(long long idx) const {
    if (m_ == 0)
        return 0;
    return pack(bh_->residue_section(idx), 0);
}

uint64_t QuadRamRing::reduce_code(uint64_t x, int n2) const {
    if (n2 == m_)
        return x;
    const auto [a, b] = unpack(x);
    const int hm2 = (n2 + 1) / 2, lm2 = n2 / 2;
    const TruncRing* bh2 = bh_->reduced(hm2);
    return bh_->reduce_code(a, hm2) + bh2->size() * bl_->reduce_code(b, lm2);
}

uint64_t QuadRamRing::lift_code(uint64_t x, int n_from) const {
    const int hm2 = (n_from + 1) / 2, lm2 = n_from / 2;
    const TruncRing* bh2 = bh_->reduced(hm2);
    const uint64_t a = x % bh2->size(), b = x / bh2->size();
    return pack(bh_->lift_code(a, hm2), bl_->lift_code(b, lm2));
}

std::string QuadRamRing::describe() const {
    return "ram2(" + base_->describe() + ", d=" + bh_->elem_str(d_) + ", n=" +
           std::to_string(m_) + ")";
}

std::string QuadRamRing::elem_str(uint64_t x) const {
    const auto [a, b] = unpack(x);
    return bh_->elem_str(a) + "+" + bl_->elem_str(b) + "*u";
}

std::unique_ptr<TruncRing> QuadRamRing::make_reduced(int n2) const {
    return std::unique_ptr<TruncRing>(new QuadRamRing(bh_, d_, n2));
}

// ----------------------------------------------------------------- helpers

uint64_t least_nonsquare_unit(const TruncRing* R) {
    std::vector<bool> is_square(R->size(), false);
    for (uint64_t c = 0; c < R->size(); ++c)
        if (R->is_unit(c))
            is_square[R->mul(c, c)] = true;
    for (uint64_t c = 0; c < R->size(); ++c)
        if (R->is_unit(c) && !is_square[c])
            return c;
    throw std::domain_error("truncring: every unit is a square");
}

} // namespace moddist
