#include "ctrump/real.hpp"

#include <cmath>
#include <limits>

namespace ctrump {

namespace {

// The backend otherwise starts at 20 digits.
const bool precision_initialized = [] {
    Real::default_precision(kDefaultDigits);
    return true;
}();

} // namespace

PrecisionScope::PrecisionScope(unsigned digits) : previous_(Real::default_precision())
{
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope()
{
    Real::default_precision(previous_);
}

unsigned working_digits()
{
    return Real::default_precision();
}

Real to_real(const Rational& r)
{
    Real x;
    mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
    return x;
}

Real to_real(double x)
{
    return Real(x);
}

Real log_of(const Rational& r)
{
    if (r == 0)
        return minus_infinity();
    return log(to_real(r));
}

Real infinity()
{
    return Real(std::numeric_limits<double>::infinity());
}

Real minus_infinity()
{
    return Real(-std::numeric_limits<double>::infinity());
}

std::string to_string(const Real& x, int digits)
{
    if (isnan(x))
        return "nan";
    if (isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x.str(digits, std::ios_base::scientific);
}

double to_double(const Real& x)
{
    return x.convert_to<double>();
}

} // namespace ctrump
