#pragma once

#include <string>

namespace moddist {

// A root of unity of order prime to ell, encoded as the reduced fraction
// num/den mod 1.  The fraction a/b stands for the abstract root of unity
// "g^(a/b)": these fractions form the value group of every smooth character
// handled by the engine, and embed into concrete finite fields F_{ell^d}
// whenever b divides ell^d - 1 (see FqContext::embed_root).
//
// Invariants: 0 <= num < den, gcd(num, den) = 1, and den is kept coprime
// to ell by every construction site that knows ell (require_prime_to).
class RootOfUnity {
public:
    // the identity, 0/1
    RootOfUnity() : num_(0), den_(1) {}

    // a/b mod 1, reduced; b must be positive
    RootOfUnity(long long a, long long b);

    static RootOfUnity one() { return RootOfUnity(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    // multiplicative order, i.e. the reduced denominator
    long long order() const { return den_; }

    bool is_one() const { return num_ == 0; }

    // group law is addition of fractions mod 1
    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const;
    RootOfUnity pow(long long k) const;

    bool operator==(const RootOfUnity& o) const = default;

    // lexicographic on (den, num); a stable total order for map keys
    bool operator<(const RootOfUnity& o) const;

    // throws std::domain_error unless gcd(den, ell) = 1
    void require_prime_to(long long ell) const;

    // "num/den"
    std::string str() const;

private:
    long long num_;
    long long den_;
};

// the unique element of order two
RootOfUnity minus_one();

// Congruence class of a prime power q modulo ell, the case split that
// drives every statement downstream: q = 1, q = -1, or neither (mod ell).
enum class CongruenceClass { OneMod, MinusOneMod, Banal };

// Classifies q mod ell.  Throws std::domain_error when ell divides q.
// ell is odd, so the first two classes cannot overlap.
CongruenceClass q_mod_ell_class(long long q, long long ell);

const char* to_string(CongruenceClass c);

} // namespace moddist
