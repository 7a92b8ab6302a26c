#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcdga {

// Coefficient field of a computation. All algebras taking part in one
// computation must agree on it.
enum class Field { Q, QI };

std::string field_name(Field f);
Field parse_field(std::string_view text);

class FieldMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of Q or Q(i): a pair of canonical GMP rationals. Over Q the
// imaginary part is always zero, so Q arithmetic is the real slice of Q(i)
// arithmetic.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(const mpq_class& re) : re_(re) {}
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

    Scalar conj() const { return Scalar(re_, -im_); }
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // `p/q` for real values, `a+b*i` otherwise.
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

bool in_field(const Scalar& s, Field f);

// Rational literal `p/q` (q omitted when 1).
mpq_class parse_rational(std::string_view text);

// Rational or Gaussian literal: `p/q`, `a/b+c/d*i`, `c/d*i`, `i`, `-i`.
Scalar parse_scalar(std::string_view text, Field f);

std::string rational_str(const mpq_class& q);

}  // namespace pcdga
