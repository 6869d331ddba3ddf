#pragma once

#include <boost/multiprecision/cpp_int.hpp>


#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualnest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact rational angle in [0, 1). Denominators grow like 2^d (2^q - 1)
/// under repeated halving, hence the arbitrary-precision integers.
class Angle {
  public:
    Angle() : num_(0), den_(1) {}
    Angle(BigInt num, BigInt den);
    explicit Angle(const Rational& r) : Angle(numerator(r), denominator(r)) {}

    static Angle parse(const std::string& text);  // "p/q" or "p"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    Rational value() const { return Rational(num_, den_); }
    double to_double() const;

    Angle doubled() const;                   // 2a mod 1
    std::pair<Angle, Angle> halved() const;  // a/2 and a/2 + 1/2

    std::string str() const;

    bool operator<(const Angle& o) const {
        return BigInt(num_ * o.den_) < BigInt(o.num_ * den_);
    }
    bool operator>(const Angle& o) const { return o < *this; }
    bool operator==(const Angle& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Angle& o) const { return !(*this == o); }

  private:
    BigInt num_, den_;  // reduced, 0 <= num < den
};

/// True when b lies in the open circular arc from a counterclockwise to c.
bool in_open_arc(const Angle& a, const Angle& b, const Angle& c);

struct AngleCycle {
    std::vector<Angle> angles;  // sorted ascending
    long p = 0, q = 1;          // rotation number
};

struct NoCycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The unique period-q cycle of angle doubling whose circular order has
/// rotation number p/q (the cycle landing at alpha for the p/q limb).
AngleCycle alpha_cycle(long p, long q);

}  // namespace dualnest
