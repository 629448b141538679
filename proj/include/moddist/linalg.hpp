#pragma once

#include <string>
#include <vector>

#include "moddist/fq.hpp"

namespace moddist {

// 2x2 matrix over one F_{ell^d} context, row-major [[a,b],[c,d]].
// The engine's representations act through these: group images are
// monomial (diagonal or antidiagonal), intertwiners and bilinear forms
// are general.
struct Mat2 {
    Fq a, b, c, d;

    Mat2() = default;
    Mat2(Fq a_, Fq b_, Fq c_, Fq d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 zero(const FqContext* F);
    static Mat2 identity(const FqContext* F);
    static Mat2 scalar(const Fq& s);
    static Mat2 diag(const Fq& x, const Fq& y);
    static Mat2 antidiag(const Fq& x, const Fq& y); // [[0,x],[y,0]]

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 scaled(const Fq& s) const;
    Mat2 transpose() const;
    Fq det() const;
    Fq trace() const;
    // throws std::domain_error when det = 0
    Mat2 inverse() const;

    bool operator==(const Mat2& o) const;
    bool operator!=(const Mat2& o) const { return !(*this == o); }
    bool is_zero() const;

    std::string str() const;
};

// Basis of the solution space of the homogeneous system rows * v = 0.
// Every row must have the same length; exact Gaussian elimination.
std::vector<std::vector<Fq>> nullspace(std::vector<std::vector<Fq>> rows,
                                       size_t ncols, const FqContext* F);

} // namespace moddist
