#include "moddist/fq.hpp"

#include <stdexcept>

namespace moddist {
namespace {

// dense polynomials over Z/ell, low degree first, no trailing-zero guarantee
using Poly = std::vector<int>;

int deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0)
            return i;
    return -1;
}

// reduce w in place by the monic modulus x^d + m(x), m = low coefficients
void reduce(Poly& w, const Poly& m, int d, long long ell) {
    for (int i = static_cast<int>(w.size()) - 1; i >= d; --i) {
        const long long c = w[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        w[static_cast<size_t>(i)] = 0;
        for (int j = 0; j < d; ++j) {
            long long v = w[static_cast<size_t>(i - d + j)] - c * m[static_cast<size_t>(j)];
            v %= ell;
            if (v < 0)
                v += ell;
            w[static_cast<size_t>(i - d + j)] = static_cast<int>(v);
        }
    }
    w.resize(static_cast<size_t>(d));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int d, long long ell) {
    Poly w(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j) {
            long long v = w[i + j] + static_cast<long long>(a[i]) * b[j];
            w[i + j] = static_cast<int>(v % ell);
        }
    }
    if (static_cast<int>(w.size()) < d)
        w.resize(static_cast<size_t>(d), 0);
    reduce(w, m, d, ell);
    return w;
}

Poly powmod(Poly base, long long e, const Poly& m, int d, long long ell) {
    Poly r(static_cast<size_t>(d), 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, base, m, d, ell);
        base = mulmod(base, base, m, d, ell);
        e >>= 1;
    }
    return r;
}

long long inv_mod(long long a, long long ell) {
    // Fermat; ell is prime
    long long r = 1, b = a % ell, e = ell - 2;
    while (e > 0) {
        if (e & 1)
            r = r * b % ell;
        b = b * b % ell;
        e >>= 1;
    }
    return r;
}

// gcd of polynomials over Z/ell, result monic (or zero)
Poly poly_gcd(Poly a, Poly b, long long ell) {
    while (deg(b) >= 0) {
        // a mod b
        int db = deg(b);
        const long long lead_inv = inv_mod(b[static_cast<size_t>(db)], ell);
        int da = deg(a);
        while (da >= db) {
            const long long c = a[static_cast<size_t>(da)] * lead_inv % ell;
            if (c != 0) {
                for (int j = 0; j <= db; ++j) {
                    long long v = a[static_cast<size_t>(da - db + j)] -
                                  c * b[static_cast<size_t>(j)];
                    v %= ell;
                    if (v < 0)
                        v += ell;
                    a[static_cast<size_t>(da - db + j)] = static_cast<int>(v);
                }
            }
            da = deg(a);
        }
        std::swap(a, b);
    }
    int da = deg(a);
    if (da >= 0) {
        const long long lead_inv = inv_mod(a[static_cast<size_t>(da)], ell);
        for (auto& c : a)
            c = static_cast<int>(c * lead_inv % ell);
    }
    return a;
}

std::vector<long long> distinct_prime_factors(long long n) {
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool is_prime(long long n) {
    if (n < 2)
        return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

// Rabin irreducibility test for the monic polynomial x^d + m(x)
bool irreducible(const Poly& m, int d, long long ell) {
    Poly x(static_cast<size_t>(d > 1 ? d : 2), 0);
    x[1] = 1;
    if (d == 1) {
        return true;
    }
    // x^(ell^d) = x mod f
    Poly t = x;
    for (int i = 0; i < d; ++i)
        t = powmod(t, ell, m, d, ell);
    Poly xr(static_cast<size_t>(d), 0);
    xr[1 % d] = (d > 1) ? 1 : 0;
    if (t != xr)
        return false;
    // gcd(x^(ell^(d/r)) - x, f) = 1 for each prime r | d
    for (long long r : distinct_prime_factors(d)) {
        Poly u = x;
        for (long long i = 0; i < d / r; ++i)
            u = powmod(u, ell, m, d, ell);
        // u - x
        Poly diff = u;
        long long v = diff[1] - 1;
        v %= ell;
        if (v < 0)
            v += ell;
        diff[1] = static_cast<int>(v);
        Poly f(static_cast<size_t>(d) + 1, 0);
        for (int j = 0; j < d; ++j)
            f[static_cast<size_t>(j)] = m[static_cast<size_t>(j)];
        f[static_cast<size_t>(d)] = 1;
        Poly g = poly_gcd(f, diff, ell);
        if (deg(g) != 0)
            return false;
    }
    return true;
}

Poly decode(uint32_t code, int d, long long ell) {
    Poly f(static_cast<size_t>(d), 0);
    long long c = code;
    for (int i = 0; i < d; ++i) {
        f[static_cast<size_t>(i)] = static_cast<int>(c % ell);
        c /= ell;
    }
    return f;
}

uint32_t encode(const Poly& f, int d, long long ell) {
    long long code = 0;
    for (int i = d - 1; i >= 0; --i)
        code = code * ell + f[static_cast<size_t>(i)];
    return static_cast<uint32_t>(code);
}

} // namespace

FqContext::FqContext(long long ell, int d) : ell_(ell), d_(d) {
    if (!is_prime(ell))
        throw std::invalid_argument("fq: ell must be prime, got " + std::to_string(ell));
    if (d < 1)
        throw std::invalid_argument("fq: degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < d; ++i) {
        q *= ell;
        if (q > (1 << 20))
            throw std::length_error("too-large: ell^d = " + std::to_string(ell) + "^" +
                                    std::to_string(d) + " exceeds the 2^20 dlog table bound");
    }
    q_ = q;

    // least monic irreducible of degree d, ordered by coefficient code
    bool found = false;
    for (long long c = 0; c < q; ++c) {
        Poly m = decode(static_cast<uint32_t>(c), d, ell);
        if (irreducible(m, d, ell)) {
            mod_ = m;
            found = true;
            break;
        }
    }
    if (!found)
        throw std::logic_error("fq: no irreducible modulus found");

    // least primitive element; order test via maximal prime divisors of q-1
    const auto primes = distinct_prime_factors(q - 1);
    gen_ = 0;
    for (long long c = 1; c < q; ++c) {
        Poly a = decode(static_cast<uint32_t>(c), d, ell);
        bool primitive = true;
        for (long long r : primes) {
            Poly t = powmod(a, (q - 1) / r, mod_, d, ell);
            if (deg(t) == 0 && t[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen_ = static_cast<uint32_t>(c);
            break;
        }
    }
    if (gen_ == 0)
        throw std::logic_error("fq: no primitive element found");

    exp_.assign(static_cast<size_t>(q - 1), 0);
    log_.assign(static_cast<size_t>(q), -1);
    Poly g = decode(gen_, d, ell);
    Poly cur(static_cast<size_t>(d), 0);
    cur[0] = 1;
    for (long long k = 0; k < q - 1; ++k) {
        const uint32_t code = encode(cur, d, ell);
        exp_[static_cast<size_t>(k)] = code;
        if (log_[code] != -1)
            throw std::logic_error("fq: generator order defect");
        log_[code] = k;
        cur = mulmod(cur, g, mod_, d, ell);
    }
    if (encode(cur, d, ell) != 1)
        throw std::logic_error("fq: generator cycle does not close");
}

Fq FqContext::from_int(long long a) const {
    a %= ell_;
    if (a < 0)
        a += ell_;
    return Fq(this, static_cast<uint32_t>(a));
}

Fq FqContext::embed_root(const RootOfUnity& z) const {
    if ((q_ - 1) % z.den() != 0)
        throw std::domain_error("order-not-embeddable: den " + std::to_string(z.den()) +
                                " does not divide " + std::to_string(q_ - 1));
    const long long k = z.num() % (q_ - 1) * ((q_ - 1) / z.den()) % (q_ - 1);
    return Fq(this, exp_[static_cast<size_t>(k)]);
}

RootOfUnity FqContext::dlog(const Fq& x) const {
    if (x.ctx() != this)
        throw std::invalid_argument("fq: dlog on element of a different field");
    if (x.is_zero())
        throw std::domain_error("zero-element: dlog of zero");
    return RootOfUnity(log_[x.code()], q_ - 1);
}

Fq FqContext::embed_from(const Fq& x) const {
    const FqContext* src = x.ctx();
    if (src == nullptr)
        throw std::invalid_argument("fq: embed_from null element");
    if (src == this)
        return x;
    if (src->ell_ != ell_)
        throw std::invalid_argument("fq: embed_from across characteristics");
    if (d_ % src->d_ != 0)
        throw std::invalid_argument("fq: not-a-subfield, degree " + std::to_string(src->d_) +
                                    " does not divide " + std::to_string(d_));
    if (x.is_zero())
        return zero();
    const long long factor = (q_ - 1) / (src->q_ - 1);
    const long long k = src->log_[x.code()] % (q_ - 1) * (factor % (q_ - 1)) % (q_ - 1);
    return Fq(this, exp_[static_cast<size_t>(k)]);
}

std::string FqContext::describe_modulus() const {
    std::string s = "x^" + std::to_string(d_);
    if (d_ == 1)
        s = "x";
    for (int i = d_ - 1; i >= 0; --i) {
        const int c = mod_[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        s += " + ";
        if (c != 1 || i == 0)
            s += std::to_string(c);
        if (i >= 1) {
            if (c != 1)
                s += "*";
            s += "x";
            if (i > 1)
                s += "^" + std::to_string(i);
        }
    }
    return s;
}

namespace {

const FqContext* common_ctx(const Fq& a, const Fq& b) {
    if (a.ctx() == nullptr || a.ctx() != b.ctx())
        throw std::invalid_argument("fq: mixed-field operands");
    return a.ctx();
}

} // namespace

Fq Fq::operator+(const Fq& o) const {
    const FqContext* c = common_ctx(*this, o);
    const long long ell = c->ell();
    long long a = code_, b = o.code_, out = 0, place = 1;
    for (int i = 0; i < c->degree(); ++i) {
        out += (a % ell + b % ell) % ell * place;
        a /= ell;
        b /= ell;
        place *= ell;
    }
    return Fq(c, static_cast<uint32_t>(out));
}

Fq Fq::operator-(const Fq& o) const {
    const FqContext* c = common_ctx(*this, o);
    const long long ell = c->ell();
    long long a = code_, b = o.code_, out = 0, place = 1;
    for (int i = 0; i < c->degree(); ++i) {
        out += (a % ell - b % ell + ell) % ell * place;
        a /= ell;
        b /= ell;
        place *= ell;
    }
    return Fq(c, static_cast<uint32_t>(out));
}

Fq Fq::operator-() const {
    if (ctx_ == nullptr)
        throw std::invalid_argument("fq: operation on null element");
    return ctx_->zero() - *this;
}

Fq Fq::operator*(const Fq& o) const {
    const FqContext* c = common_ctx(*this, o);
    if (is_zero() || o.is_zero())
        return c->zero();
    const long long n = c->group_order();
    const long long k = (c->log_table(code_) + c->log_table(o.code_)) % n;
    return Fq(c, c->exp_table(k));
}

Fq Fq::inverse() const {
    if (ctx_ == nullptr)
        throw std::invalid_argument("fq: operation on null element");
    if (is_zero())
        throw std::domain_error("zero-element: inverse of zero");
    const long long n = ctx_->group_order();
    const long long k = (n - ctx_->log_table(code_)) % n;
    return Fq(ctx_, ctx_->exp_table(k));
}

Fq Fq::operator/(const Fq& o) const {
    return *this * o.inverse();
}

Fq Fq::pow(long long k) const {
    if (ctx_ == nullptr)
        throw std::invalid_argument("fq: operation on null element");
    if (is_zero()) {
        if (k > 0)
            return *this;
        if (k == 0)
            return ctx_->one();
        throw std::domain_error("zero-element: negative power of zero");
    }
    const long long n = ctx_->group_order();
    long long e = k % n;
    if (e < 0)
        e += n;
    const long long j = ctx_->log_table(code_) % n * e % n;
    return Fq(ctx_, ctx_->exp_table(j));
}

bool Fq::operator==(const Fq& o) const {
    if (ctx_ != o.ctx_)
        throw std::invalid_argument("fq: mixed-field comparison");
    return code_ == o.code_;
}

std::string Fq::str() const {
    if (ctx_ == nullptr)
        return "<null>";
    if (code_ == 0)
        return "0";
    const long long ell = ctx_->ell();
    std::string s;
    long long a = code_;
    std::vector<int> digits;
    for (int i = 0; i < ctx_->degree(); ++i) {
        digits.push_back(static_cast<int>(a % ell));
        a /= ell;
    }
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        const int c = digits[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        if (!s.empty())
            s += "+";
        if (c != 1 || i == 0)
            s += std::to_string(c);
        if (i >= 1) {
            s += "x";
            if (i > 1)
                s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace moddist
