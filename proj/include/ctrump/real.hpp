#pragma once

#include "ctrump/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace ctrump {

/// Extended real in configurable precision; holds -inf and +inf natively.
/// Expression templates are off so that `auto` never captures temporaries.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 50;

/// Sets the working precision (decimal digits) for Reals created in this
/// thread while alive, restoring the previous value on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits = kDefaultDigits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_;
};

unsigned working_digits();

Real to_real(const Rational& r);
Real to_real(double x);
Real log_of(const Rational& r); // -inf for zero

Real infinity();
Real minus_infinity();

/// Scientific notation with `digits` significant digits; "inf", "-inf", "nan"
/// for the non-finite cases. Locale independent.
std::string to_string(const Real& x, int digits = 25);

double to_double(const Real& x);

} // namespace ctrump
