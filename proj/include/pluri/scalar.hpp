#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pluri {

/* Field tags.  Bit 0 = contains i, bit 1 = contains lambda, so the join of
   two tags is their bitwise or. */
enum class FieldTag : unsigned { Q = 0, Qi = 1, Qlambda = 2, Qilambda = 3 };

inline FieldTag join(FieldTag a, FieldTag b) {
    return static_cast<FieldTag>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
inline bool contains(FieldTag big, FieldTag small) {
    return (static_cast<unsigned>(big) | static_cast<unsigned>(small)) == static_cast<unsigned>(big);
}
std::string to_string(FieldTag t);
FieldTag parse_field_tag(const std::string& s);

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p) : std::runtime_error(msg), pos(p) {}
};

/* a + b i with a, b rational */
struct GaussRat {
    mpq_class re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat inv() const;
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

/* dense polynomial in lambda, coefficients low to high, no trailing zeros */
using Poly = std::vector<GaussRat>;

/* Element of Q(i)(lambda).  Values that do not involve lambda are stored
   inline; the rest share an immutable reduced fraction. */
class Scalar {
public:
    Scalar() : tag_(FieldTag::Q) {}
    Scalar(long n) : tag_(FieldTag::Q), c_(mpq_class(n)) {}
    Scalar(int n) : Scalar(long(n)) {}
    Scalar(const mpq_class& q) : tag_(FieldTag::Q), c_(q) {}
    Scalar(long num, long den);

    static Scalar gaussian(const mpq_class& re, const mpq_class& im);
    static Scalar imag_unit();
    static Scalar lambda();
    static Scalar from_fraction(Poly num, Poly den, FieldTag tag);

    FieldTag tag() const { return tag_; }
    Scalar with_tag(FieldTag t) const;

    bool is_zero() const { return !f_ && c_.is_zero(); }
    bool is_one() const { return !f_ && c_.re == 1 && sgn(c_.im) == 0; }
    bool is_constant() const { return !f_; }
    const GaussRat& constant() const { return c_; }
    Poly numerator() const;
    Poly denominator() const;

    Scalar conjugate() const;
    Scalar inverse() const;

    /* smallest tag whose field contains the value */
    FieldTag minimal_tag() const;
    std::optional<Scalar> in_subfield(FieldTag t) const;

    std::string str() const;
    static Scalar parse(const std::string& text);

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    /* value equality; tags are ignored */
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    struct Frac {
        Poly num, den;
    };
    FieldTag tag_;
    GaussRat c_;
    std::shared_ptr<const Frac> f_;

    static Scalar make(Poly num, Poly den, FieldTag tag);
};

enum class ArithOp { Add, Sub, Mul, Div };

/* arith with division by zero reported as an empty result instead of a throw */
std::optional<Scalar> arith(const Scalar& a, const Scalar& b, ArithOp op);

struct SubfieldResult {
    bool member;
    std::optional<Scalar> witness;
};
SubfieldResult is_in_subfield(const Scalar& a, FieldTag t);

/* polynomial helpers shared with tests */
namespace poly {
void trim(Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const GaussRat& c);
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b);
Poly monic(const Poly& a);
}  // namespace poly

}  // namespace pluri
