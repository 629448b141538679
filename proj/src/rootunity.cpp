#include "moddist/rootunity.hpp"

#include <numeric>
#include <stdexcept>

namespace moddist {

RootOfUnity::RootOfUnity(long long a, long long b) {
    if (b <= 0)
        throw std::invalid_argument("root-of-unity: denominator must be positive");
    a %= b;
    if (a < 0)
        a += b;
    const long long g = std::gcd(a, b);
    num_ = a / g;
    den_ = b / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    // a/b + c/d over the common denominator b*d; both dens stay small
    return RootOfUnity(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RootOfUnity RootOfUnity::inverse() const {
    return RootOfUnity(-num_, den_);
}

RootOfUnity RootOfUnity::pow(long long k) const {
    k %= den_;
    if (k < 0)
        k += den_;
    return RootOfUnity(num_ * k, den_);
}

bool RootOfUnity::operator<(const RootOfUnity& o) const {
    if (den_ != o.den_)
        return den_ < o.den_;
    return num_ < o.num_;
}

void RootOfUnity::require_prime_to(long long ell) const {
    if (std::gcd(den_, ell) != 1)
        throw std::domain_error("root-of-unity: order " + std::to_string(den_) +
                                " is not prime to ell = " + std::to_string(ell));
}

std::string RootOfUnity::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

RootOfUnity minus_one() {
    return RootOfUnity(1, 2);
}

CongruenceClass q_mod_ell_class(long long q, long long ell) {
    if (q % ell == 0)
        throw std::domain_error("q-mod-ell: ell divides q");
    if ((q - 1) % ell == 0)
        return CongruenceClass::OneMod;
    if ((q + 1) % ell == 0)
        return CongruenceClass::MinusOneMod;
    return CongruenceClass::Banal;
}

const char* to_string(CongruenceClass c) {
    switch (c) {
    case CongruenceClass::OneMod: return "OneMod";
    case CongruenceClass::MinusOneMod: return "MinusOneMod";
    default: return "Banal";
    }
}

} // namespace moddist
