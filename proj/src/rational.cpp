#include "ctrump/rational.hpp"

#include "ctrump/error.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace ctrump {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view body = s;
    if (!body.empty() && (body.front() == '+' || body.front() == '-'))
        body.remove_prefix(1);
    if (!all_digits(body))
        throw DomainError("malformed number '" + std::string(whole) + "'");
    std::string text(s.front() == '+' ? s.substr(1) : s);
    return Integer(text, 10);
}

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        Integer ez = parse_integer(exp_text, whole);
        if (abs(ez) > 100000)
            throw DomainError("exponent out of range in '" + std::string(whole) + "'");
        exponent = ez.get_si();
        s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
        throw DomainError("malformed number '" + std::string(whole) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw DomainError("malformed number '" + std::string(whole) + "'");

    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer mantissa(digits.empty() ? std::string("0") : digits, 10);
    exponent -= static_cast<long>(frac_part.size());
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty())
        throw DomainError("empty number");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(trim(s.substr(0, slash)), text);
        std::string_view den_text = trim(s.substr(slash + 1));
        if (!den_text.empty() && den_text.front() == '-')
            throw DomainError("negative denominator in '" + std::string(text) + "'");
        Integer den = parse_integer(den_text, text);
        if (den == 0)
            throw DomainError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    return parse_decimal(s, text);
}

std::string to_string(const Rational& r)
{
    return r.get_str(10);
}

Rational rationalize(double x, const Integer& max_denominator)
{
    if (!std::isfinite(x))
        throw DomainError("cannot rationalize a non-finite value");
    if (max_denominator < 1)
        throw DomainError("denominator bound must be positive");
    Rational exact(x);
    if (exact.get_den() <= max_denominator)
        return exact;

    // Convergents p_k/q_k of the continued fraction of `exact`.
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer n = exact.get_num(), d = exact.get_den();
    while (d != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        Integer q2 = q0 + a * q1;
        if (q2 > max_denominator)
            break;
        Integer p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Integer rem = n - a * d;
        n = d;
        d = rem;
    }
    Integer k = (max_denominator - q0) / q1;
    Rational semi(p0 + k * p1, q0 + k * q1);
    Rational conv(p1, q1);
    semi.canonicalize();
    conv.canonicalize();
    return abs(semi - exact) <= abs(conv - exact) ? semi : conv;
}

} // namespace ctrump
