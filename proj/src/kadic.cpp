#include "qfix/kadic.hpp"

#include <map>

#include <boost/integer/common_factor.hpp>

#include "qfix/error.hpp"

namespace qfix {

namespace {

BigInt gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of q modulo k (q coprime to k).
unsigned inverse_mod(const BigInt& q, unsigned k) {
    const unsigned qm = static_cast<unsigned>(floor_mod(q, k));
    for (unsigned x = 0; x < k; ++x)
        if ((static_cast<unsigned long long>(qm) * x) % k == 1 % k) return x;
    throw Error("denominator is not invertible in Z_k");
}

}  // namespace

KAdicRational::KAdicRational(BigInt num, BigInt den, unsigned base)
    : num_(std::move(num)), den_(std::move(den)), base_(base) {
    if (base_ < 2) throw Error("k-adic base must be at least 2");
    if (den_ == 0) throw Error("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    const BigInt g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (gcd(den_, base_) != 1)
        throw Error("denominator shares a factor with the base; not a point of Z_k");
}

std::string render_fraction(const KAdicRational& r) {
    std::string s = r.num().str();
    if (r.den() != 1) s += "/" + r.den().str();
    return s;
}

std::string render(const KAdicRational& r) {
    return render_fraction(r) + " (base " + std::to_string(r.base()) + ")";
}

KAdicRational from_relation(std::int64_t c, unsigned m, unsigned base) {
    if (m < 1) throw Error("relation period must be at least 1");
    BigInt km = boost::multiprecision::pow(BigInt(base), m);
    return KAdicRational(BigInt(c), 1 - km, base);
}

DigitExpansion expansion(const KAdicRational& r) {
    const unsigned k = r.base();
    const unsigned qinv = inverse_mod(r.den(), k);
    DigitExpansion d;
    d.base = k;
    // z_i = p_i / q; digit c_i = p_i q^{-1} mod k; p_{i+1} = (p_i - c_i q) / k.
    // |p_i| shrinks towards [-q, 0], so the numerators eventually cycle.
    std::map<BigInt, std::size_t> seen;
    std::vector<unsigned> digits;
    BigInt p = r.num();
    while (!seen.count(p)) {
        seen[p] = digits.size();
        const unsigned c = static_cast<unsigned>(
            (static_cast<unsigned long long>(floor_mod(p, k)) * qinv) % k);
        digits.push_back(c);
        p = (p - BigInt(c) * r.den()) / k;
    }
    const std::size_t start = seen[p];
    d.pre.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
    d.cycle.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
    return d.canonical();
}

DigitExpansion DigitExpansion::canonical() const {
    if (cycle.empty()) throw Error("digit expansion needs a non-empty cycle");
    DigitExpansion d = *this;
    const std::size_t n = d.cycle.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = d.cycle[i] == d.cycle[i - p];
        if (ok) {
            d.cycle.resize(p);
            break;
        }
    }
    while (!d.pre.empty() && d.pre.back() == d.cycle.back()) {
        d.pre.pop_back();
        d.cycle.insert(d.cycle.begin(), d.cycle.back());
        d.cycle.pop_back();
    }
    return d;
}

unsigned DigitExpansion::digit(std::size_t i) const {
    if (i < pre.size()) return pre[i];
    return cycle.at((i - pre.size()) % cycle.size());
}

std::string render(const DigitExpansion& d) {
    auto digits = [&](const std::vector<unsigned>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (d.base > 10 && i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    return "pre=" + digits(d.pre) + " cyc=" + digits(d.cycle);
}

KAdicRational from_expansion(const DigitExpansion& d) {
    const BigInt k = d.base;
    for (unsigned x : d.pre)
        if (x >= d.base) throw Error("digit out of range");
    for (unsigned x : d.cycle)
        if (x >= d.base) throw Error("digit out of range");
    if (d.cycle.empty()) throw Error("digit expansion needs a non-empty cycle");
    BigInt pre_val = 0, scale = 1;
    for (unsigned x : d.pre) {
        pre_val += scale * x;
        scale *= k;
    }
    BigInt cyc_val = 0, cscale = 1;
    for (unsigned x : d.cycle) {
        cyc_val += cscale * x;
        cscale *= k;
    }
    // pre + k^|pre| * cyc / (1 - k^|cyc|)
    const BigInt den = 1 - cscale;
    return KAdicRational(pre_val * den + scale * cyc_val, den, d.base);
}

KAdicRational add(const KAdicRational& a, const KAdicRational& b) {
    if (a.base() != b.base()) throw Error("k-adic base mismatch");
    return KAdicRational(a.num() * b.den() + b.num() * a.den(), a.den() * b.den(), a.base());
}

KAdicRational negate(const KAdicRational& r) { return KAdicRational(-r.num(), r.den(), r.base()); }

KAdicRational add_one(const KAdicRational& r) { return add_integer(r, 1); }

KAdicRational add_integer(const KAdicRational& r, const BigInt& n) {
    return KAdicRational(r.num() + n * r.den(), r.den(), r.base());
}

KAdicRational times_k(const KAdicRational& r) {
    return KAdicRational(r.num() * r.base(), r.den(), r.base());
}

}  // namespace qfix
