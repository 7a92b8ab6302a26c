#include "pcdga/scalar.hpp"

#include <cctype>

namespace pcdga {

std::string field_name(Field f)
{
    return f == Field::Q ? "Q" : "Q(i)";
}

Field parse_field(std::string_view text)
{
    if (text == "Q")
        return Field::Q;
    if (text == "Q(i)")
        return Field::QI;
    throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Q(i))");
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero");
    if (is_real())
        return Scalar(mpq_class(1) / re_);
    mpq_class norm = re_ * re_ + im_ * im_;
    return Scalar(re_ / norm, -im_ / norm);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0)
        im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0)
        im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_real()) {
        if (sgn(o.re_) == 0)
            throw std::domain_error("division by zero");
        re_ /= o.re_;
        if (sgn(im_) != 0)
            im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string rational_str(const mpq_class& q)
{
    return q.get_str();
}

std::string Scalar::str() const
{
    if (is_real())
        return rational_str(re_);
    std::string out;
    if (sgn(re_) != 0)
        out = rational_str(re_);
    mpq_class a = abs(im_);
    std::string mag = a == 1 ? "i" : rational_str(a) + "*i";
    if (sgn(im_) < 0)
        out += "-" + mag;
    else
        out += (out.empty() ? "" : "+") + mag;
    return out;
}

bool in_field(const Scalar& s, Field f)
{
    return f == Field::QI || s.is_real();
}

mpq_class parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_since = false;
    for (std::size_t k = start; k < s.size(); ++k) {
        if (std::isdigit(static_cast<unsigned char>(s[k]))) {
            digit_since = true;
        } else if (s[k] == '/' && !seen_slash && digit_since) {
            seen_slash = true;
            digit_since = false;
        } else {
            throw std::invalid_argument("bad rational literal '" + s + "'");
        }
    }
    if (!digit_since)
        throw std::invalid_argument("bad rational literal '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal '" + s + "'");
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

namespace {

// Parses `[sign] [rational] ['*'] 'i'` or `[sign] rational`.
Scalar parse_part(std::string_view p)
{
    if (p.empty())
        throw std::invalid_argument("empty scalar literal");
    if (p.back() != 'i')
        return Scalar(parse_rational(p));
    std::string_view head = p.substr(0, p.size() - 1);
    if (!head.empty() && head.back() == '*')
        head.remove_suffix(1);
    mpq_class coef(1);
    if (head == "-")
        coef = -1;
    else if (head == "+" || head.empty())
        coef = 1;
    else
        coef = parse_rational(head);
    return Scalar(mpq_class(0), coef);
}

}  // namespace

Scalar parse_scalar(std::string_view text, Field f)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw std::invalid_argument("empty scalar literal");
    // split at a sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/')
            split = k;
    Scalar value;
    if (split == std::string::npos) {
        value = parse_part(s);
    } else {
        Scalar a = parse_part(std::string_view(s).substr(0, split));
        Scalar b = parse_part(std::string_view(s).substr(split));
        if (!a.is_real() || b.is_real())
            throw std::invalid_argument("bad Gaussian literal '" + s + "'");
        value = a + b;
    }
    if (!in_field(value, f))
        throw FieldMismatch("literal '" + s + "' is not in " + field_name(f));
    return value;
}

}  // namespace pcdga
