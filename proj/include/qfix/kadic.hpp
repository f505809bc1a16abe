#pragma once

#include <string>
#include <vector>

#include "qfix/substitution.hpp"

namespace qfix {

// Eventually periodic base-k digit stream, least significant digit first:
// value = pre[0] + pre[1] k + ... followed by the cycle repeated forever.
struct DigitExpansion {
    unsigned base = 2;
    std::vector<unsigned> pre;
    std::vector<unsigned> cycle;  // never empty once canonical

    // Shortest preperiod and primitive cycle, so equal values compare equal.
    DigitExpansion canonical() const;
    unsigned digit(std::size_t i) const;

    bool operator==(const DigitExpansion&) const = default;
};

// `pre=<digits> cyc=<digits>`; digits are comma-separated when base > 10.
std::string render(const DigitExpansion& d);

// A rational point p/q of Z_k, gcd(q, k) = 1, kept reduced with q >= 1.
class KAdicRational {
public:
    KAdicRational(BigInt num, BigInt den, unsigned base);
    static KAdicRational integer(const BigInt& n, unsigned base) { return {n, 1, base}; }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    unsigned base() const { return base_; }

    bool operator==(const KAdicRational&) const = default;

private:
    BigInt num_;
    BigInt den_;
    unsigned base_;
};

// `p/q (base k)`; integers print without "/1".
std::string render(const KAdicRational& r);
std::string render_fraction(const KAdicRational& r);

// Address of a point with z = T^c(phi^m(z)): c / (1 - k^m).
KAdicRational from_relation(std::int64_t c, unsigned m, unsigned base);

DigitExpansion expansion(const KAdicRational& r);
KAdicRational from_expansion(const DigitExpansion& d);

KAdicRational add(const KAdicRational& a, const KAdicRational& b);
KAdicRational negate(const KAdicRational& r);
KAdicRational add_one(const KAdicRational& r);  // models the shift
KAdicRational times_k(const KAdicRational& r);  // models the substitution
KAdicRational add_integer(const KAdicRational& r, const BigInt& n);

}  // namespace qfix
