#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <json.hpp>

#include "lqf/errors.hpp"

namespace lqf {

namespace mp = boost::multiprecision;
using Int = mp::mpz_int;
using Rat = mp::mpq_rational;

enum class FieldKind { Real, Complex, Padic, Laurent };

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long mod_pow(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = static_cast<long long>((__int128)r * b % m);
        b = static_cast<long long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

inline int legendre(long long a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// A local field: R, C, Q_p or F_q((t)) with q an odd prime.
struct GroundField {
    FieldKind kind = FieldKind::Real;
    int p = 0;
    int precision = 48;
    // Negative-control hook: flips one entry (and its transpose) of the Hilbert table.
    int hilbert_flip_a = -1;
    int hilbert_flip_b = -1;

    static GroundField real() { return {FieldKind::Real, 0, 48}; }
    static GroundField complex() { return {FieldKind::Complex, 0, 48}; }
    static GroundField padic(int p, int prec = 48) {
        if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "Qp needs a prime, got " + std::to_string(p));
        if (prec < 8) fail(ErrorCode::InvalidArgument, "precision must be >= 8");
        return {FieldKind::Padic, p, prec};
    }
    static GroundField laurent(int q, int prec = 48) {
        if (!is_prime(q) || q == 2)
            fail(ErrorCode::InvalidArgument, "Fq((t)) needs an odd prime q, got " + std::to_string(q));
        if (prec < 8) fail(ErrorCode::InvalidArgument, "precision must be >= 8");
        return {FieldKind::Laurent, q, prec};
    }

    static GroundField parse(const std::string& s, int prec = 48) {
        if (s == "R") return real();
        if (s == "C") return complex();
        try {
            if (s.rfind("Qp:", 0) == 0) return padic(std::stoi(s.substr(3)), prec);
            if (s.rfind("Fq((t)):", 0) == 0) return laurent(std::stoi(s.substr(8)), prec);
        } catch (const std::logic_error&) {
        }
        fail(ErrorCode::ParseError, "unknown field descriptor '" + s + "'");
    }

    std::string descriptor() const {
        switch (kind) {
        case FieldKind::Real: return "R";
        case FieldKind::Complex: return "C";
        case FieldKind::Padic: return "Qp:" + std::to_string(p);
        case FieldKind::Laurent: return "Fq((t)):" + std::to_string(p);
        }
        return "?";
    }

    bool nonarch() const { return kind == FieldKind::Padic || kind == FieldKind::Laurent; }
    bool is_dyadic() const { return kind == FieldKind::Padic && p == 2; }
    int characteristic() const { return kind == FieldKind::Laurent ? p : 0; }
    int v2() const { return is_dyadic() ? 1 : 0; }

    /// Smallest positive quadratic nonresidue modulo the residue characteristic.
    int nonresidue() const {
        if (!nonarch() || p == 2) return 0;
        for (int u = 2; u < p; ++u)
            if (legendre(u, p) == -1) return u;
        return 0;
    }

    /// Number of F_2-coordinates of F^x/F^x2.
    int class_bits() const {
        switch (kind) {
        case FieldKind::Complex: return 0;
        case FieldKind::Real: return 1;
        case FieldKind::Padic: return p == 2 ? 3 : 2;
        case FieldKind::Laurent: return 2;
        }
        return 0;
    }

    GroundField with_precision(int prec) const {
        GroundField g = *this;
        g.precision = prec;
        return g;
    }

    bool same_field(const GroundField& o) const { return kind == o.kind && p == o.p; }
};

inline void require_same(const GroundField& a, const GroundField& b) {
    if (!a.same_field(b)) fail(ErrorCode::FieldMismatch, a.descriptor() + " vs " + b.descriptor());
}

inline const Int& ppow(int p, int k) {
    thread_local std::unordered_map<int, std::vector<Int>> cache;
    auto& v = cache[p];
    if (v.empty()) v.push_back(Int(1));
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * p);
    return v[k];
}

/// Element of a ground field. Nonarchimedean elements are pi^val * unit with the unit
/// known modulo pi^(absprec - val); zero carries the absolute precision to which it is known.
struct FieldElem {
    static constexpr int kExact = INT_MAX / 4;

    FieldKind kind = FieldKind::Real;
    int p = 0;
    int prec = 48;
    bool zero = true;
    int val = kExact;
    int absprec = kExact;
    Int unit;
    std::vector<int> digits;
    Rat q;

    bool is_zero() const { return zero; }
    int valuation() const { return zero ? absprec : val; }
    int rel_prec() const { return zero ? 0 : absprec - val; }

    static FieldElem make_zero(const GroundField& F, int absprec = kExact) {
        FieldElem e;
        e.kind = F.kind;
        e.p = F.p;
        e.prec = F.precision;
        e.zero = true;
        e.val = absprec;
        e.absprec = absprec;
        return e;
    }

    static FieldElem from_rat(const GroundField& F, const Rat& r) {
        FieldElem e = make_zero(F);
        if (F.kind == FieldKind::Real || F.kind == FieldKind::Complex) {
            e.q = r;
            e.zero = (r == 0);
            e.val = e.zero ? kExact : 0;
            return e;
        }
        if (r == 0) return e;
        Int num = mp::numerator(r), den = mp::denominator(r);
        if (F.kind == FieldKind::Laurent) {
            if (den % F.p == 0) fail(ErrorCode::InvalidArgument, "rational not in F_q");
            long long n = static_cast<long long>(num % F.p), d = static_cast<long long>(den % F.p);
            n = ((n % F.p) + F.p) % F.p;
            if (n == 0) return e;
            long long c = n * mod_pow(d, F.p - 2, F.p) % F.p;
            std::vector<int> dg(F.precision, 0);
            dg[0] = static_cast<int>(c);
            return laurent(F, 0, std::move(dg));
        }
        int v = 0;
        while (num % F.p == 0) { num /= F.p; ++v; }
        while (den % F.p == 0) { den /= F.p; --v; }
        const Int& m = ppow(F.p, F.precision);
        Int dinv;
        mpz_invert(dinv.backend().data(), Int(den % m).backend().data(), m.backend().data());
        Int u = (num % m) * dinv % m;
        if (u < 0) u += m;
        return padic(F, v, u, F.precision);
    }

    static FieldElem from_int(const GroundField& F, long long n) { return from_rat(F, Rat(n)); }

    static FieldElem padic(const GroundField& F, int val, const Int& u, int relprec) {
        FieldElem e = make_zero(F);
        e.zero = false;
        e.val = val;
        e.absprec = val + relprec;
        e.unit = u % ppow(F.p, relprec);
        if (e.unit < 0) e.unit += ppow(F.p, relprec);
        if (e.unit % F.p == 0) fail(ErrorCode::InvalidArgument, "p-adic unit part divisible by p");
        return e;
    }

    /// pi^val * sum digits[k] t^k, digits[0] != 0; relative precision = digits.size().
    static FieldElem laurent(const GroundField& F, int val, std::vector<int> dg) {
        FieldElem e = make_zero(F);
        for (auto& d : dg) d = ((d % F.p) + F.p) % F.p;
        size_t lead = 0;
        while (lead < dg.size() && dg[lead] == 0) ++lead;
        if (lead == dg.size()) return make_zero(F, val + static_cast<int>(dg.size()));
        e.zero = false;
        e.val = val + static_cast<int>(lead);
        e.absprec = val + static_cast<int>(dg.size());
        e.digits.assign(dg.begin() + lead, dg.end());
        return e;
    }

    /// The uniformizer p or t.
    static FieldElem pi(const GroundField& F) {
        if (F.kind == FieldKind::Padic) return padic(F, 1, Int(1), F.precision);
        if (F.kind == FieldKind::Laurent) {
            std::vector<int> dg(F.precision, 0);
            dg[0] = 1;
            return laurent(F, 1, dg);
        }
        fail(ErrorCode::InvalidArgument, "archimedean field has no uniformizer");
    }

    /// Laurent polynomial sum c_k t^k, k from 0, known exactly (to the field precision).
    static FieldElem laurent_poly(const GroundField& F, const std::vector<int>& coeffs) {
        std::vector<int> dg(std::max<size_t>(coeffs.size(), 0) + F.precision, 0);
        for (size_t k = 0; k < coeffs.size(); ++k) dg[k] = coeffs[k];
        size_t lead = 0;
        while (lead < dg.size() && ((dg[lead] % F.p) + F.p) % F.p == 0) ++lead;
        if (lead >= coeffs.size()) return make_zero(F);
        std::vector<int> d2(dg.begin() + lead, dg.begin() + lead + F.precision);
        return laurent(F, static_cast<int>(lead), d2);
    }

    FieldKind field_kind() const { return kind; }

    // ---- arithmetic ----
    FieldElem operator-() const {
        FieldElem r = *this;
        if (zero) return r;
        switch (kind) {
        case FieldKind::Real:
        case FieldKind::Complex: r.q = -q; break;
        case FieldKind::Padic: {
            const Int& m = ppow(p, absprec - val);
            r.unit = (m - unit) % m;
            break;
        }
        case FieldKind::Laurent:
            for (auto& d : r.digits) d = (p - d) % p;
            break;
        }
        return r;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        if (a.kind == FieldKind::Real || a.kind == FieldKind::Complex) {
            FieldElem r = a;
            r.q = a.q + b.q;
            r.zero = (r.q == 0);
            r.val = r.zero ? kExact : 0;
            return r;
        }
        int N = std::min(a.absprec, b.absprec);
        int m = std::min(a.valuation(), b.valuation());
        FieldElem r = a;
        if (m >= N) {
            r.zero = true;
            r.val = r.absprec = N;
            r.unit = 0;
            r.digits.clear();
            return r;
        }
        if (a.kind == FieldKind::Padic) {
            int p = a.p;
            const Int& mod = ppow(p, N - m);
            Int s = 0;
            if (!a.zero && a.val < N) s += a.unit * ppow(p, a.val - m);
            if (!b.zero && b.val < N) s += b.unit * ppow(p, b.val - m);
            s %= mod;
            if (s < 0) s += mod;
            if (s == 0) {
                r.zero = true;
                r.val = r.absprec = N;
                r.unit = 0;
                return r;
            }
            int v = 0;
            while (s % p == 0) { s /= p; ++v; }
            r.zero = false;
            r.val = m + v;
            r.absprec = N;
            r.unit = s;
            return r;
        }
        std::vector<int> dg(N - m, 0);
        auto accum = [&](const FieldElem& x) {
            if (x.zero) return;
            for (size_t k = 0; k < x.digits.size(); ++k) {
                int pos = x.val - m + static_cast<int>(k);
                if (pos >= N - m) break;
                dg[pos] = (dg[pos] + x.digits[k]) % x.p;
            }
        };
        accum(a);
        accum(b);
        GroundField F{FieldKind::Laurent, a.p, a.prec};
        return laurent(F, m, std::move(dg));
    }

    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        FieldElem r = a;
        if (a.kind == FieldKind::Real || a.kind == FieldKind::Complex) {
            r.q = a.q * b.q;
            r.zero = (r.q == 0);
            r.val = r.zero ? kExact : 0;
            return r;
        }
        if (a.zero || b.zero) {
            int ab = a.zero ? a.absprec : a.val;
            int bb = b.zero ? b.absprec : b.val;
            int ap = a.zero ? (b.zero ? std::min(a.absprec + bb, b.absprec + ab) : a.absprec + b.val)
                            : b.absprec + a.val;
            ap = std::min(ap, kExact);
            r.zero = true;
            r.val = r.absprec = ap;
            r.unit = 0;
            r.digits.clear();
            return r;
        }
        int rp = std::min(a.absprec - a.val, b.absprec - b.val);
        r.zero = false;
        r.val = a.val + b.val;
        r.absprec = r.val + rp;
        if (a.kind == FieldKind::Padic) {
            r.unit = a.unit * b.unit % ppow(a.p, rp);
        } else {
            std::vector<long long> acc(rp, 0);
            for (int i = 0; i < rp; ++i) {
                if (a.digits[i] == 0) continue;
                for (int j = 0; i + j < rp; ++j) acc[i + j] += static_cast<long long>(a.digits[i]) * b.digits[j];
            }
            r.digits.resize(rp);
            for (int k = 0; k < rp; ++k) r.digits[k] = static_cast<int>(acc[k] % a.p);
        }
        return r;
    }

    FieldElem inv() const {
        if (zero) fail(ErrorCode::ZeroElement, "inverse of zero");
        FieldElem r = *this;
        if (kind == FieldKind::Real || kind == FieldKind::Complex) {
            r.q = 1 / q;
            return r;
        }
        int rp = absprec - val;
        r.val = -val;
        r.absprec = r.val + rp;
        if (kind == FieldKind::Padic) {
            const Int& m = ppow(p, rp);
            Int out;
            mpz_invert(out.backend().data(), unit.backend().data(), m.backend().data());
            r.unit = out;
        } else {
            // power-series inverse of the unit digits
            std::vector<int> inv(rp, 0);
            long long c0 = mod_pow(digits[0], p - 2, p);
            inv[0] = static_cast<int>(c0);
            for (int k = 1; k < rp; ++k) {
                long long s = 0;
                for (int j = 1; j <= k; ++j) s += static_cast<long long>(digits[j]) * inv[k - j];
                s %= p;
                inv[k] = static_cast<int>(((p - s) % p) * c0 % p);
            }
            r.digits = std::move(inv);
        }
        return r;
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

    FieldElem pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        FieldElem base = *this, acc = *this;
        // acc := 1 in the same field
        acc.zero = false;
        if (kind == FieldKind::Real || kind == FieldKind::Complex) {
            acc.q = 1;
            acc.val = 0;
        } else {
            GroundField F{kind, p, prec};
            acc = from_int(F, 1);
        }
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    /// Residue of an integral element modulo pi^N, as an integer (Qp).
    Int residue_int(int N) const {
        if (kind != FieldKind::Padic) fail(ErrorCode::InvalidArgument, "residue_int needs Qp");
        if (zero) {
            if (absprec < N) fail(ErrorCode::InsufficientPrecision, "zero not known to needed precision");
            return 0;
        }
        if (val < 0) fail(ErrorCode::NotIntegral, "element not integral");
        if (val >= N) return 0;
        if (absprec < N) fail(ErrorCode::InsufficientPrecision, "not enough digits for residue");
        return unit * ppow(p, val) % ppow(p, N);
    }

    /// Coefficients of t^0..t^(N-1) of an integral Laurent element.
    std::vector<int> residue_poly(int N) const {
        if (kind != FieldKind::Laurent) fail(ErrorCode::InvalidArgument, "residue_poly needs Fq((t))");
        std::vector<int> out(N, 0);
        if (zero) {
            if (absprec < N) fail(ErrorCode::InsufficientPrecision, "zero not known to needed precision");
            return out;
        }
        if (val < 0) fail(ErrorCode::NotIntegral, "element not integral");
        if (absprec < N) fail(ErrorCode::InsufficientPrecision, "not enough digits for residue");
        for (int k = val; k < N; ++k) out[k] = digits[k - val];
        return out;
    }

    /// Real/complex value (exact rational).
    const Rat& rational() const { return q; }

    std::string to_string() const {
        switch (kind) {
        case FieldKind::Real:
        case FieldKind::Complex: return q.str();
        case FieldKind::Padic:
            if (zero) return "O(" + std::to_string(p) + "^" + std::to_string(absprec) + ")";
            return std::to_string(p) + "^" + std::to_string(val) + "*" +
                   Int(unit % ppow(p, std::min(absprec - val, 6))).str() + "...";
        case FieldKind::Laurent: {
            if (zero) return "O(t^" + std::to_string(absprec) + ")";
            std::string s = "t^" + std::to_string(val) + "*(";
            for (size_t k = 0; k < std::min<size_t>(digits.size(), 6); ++k) s += std::to_string(digits[k]) + " ";
            return s + "...)";
        }
        }
        return "?";
    }
};

inline FieldElem felem(const GroundField& F, long long n) { return FieldElem::from_int(F, n); }
inline FieldElem felem(const GroundField& F, const Rat& r) { return FieldElem::from_rat(F, r); }

// ---------------------------------------------------------------- square classes

/// Element of F^x / F^x2 as an F_2-vector. Bit layout:
///   R: bit0 = negative.  Qp (p odd), Fq((t)): bit0 = odd valuation, bit1 = nonresidue unit.
///   Q2: bit0 = odd valuation, bit1 = unit = 3 mod 4, bit2 = unit = +-5 mod 8.
struct SquareClass {
    unsigned bits = 0;
    bool is_one() const { return bits == 0; }
    friend bool operator==(SquareClass a, SquareClass b) { return a.bits == b.bits; }
    friend bool operator!=(SquareClass a, SquareClass b) { return a.bits != b.bits; }
    friend SquareClass operator*(SquareClass a, SquareClass b) { return {a.bits ^ b.bits}; }
    SquareClass& operator*=(SquareClass o) { bits ^= o.bits; return *this; }
};

inline std::vector<SquareClass> all_classes(const GroundField& F) {
    std::vector<SquareClass> v;
    for (unsigned b = 0; b < (1u << F.class_bits()); ++b) v.push_back({b});
    return v;
}

inline SquareClass square_class(const GroundField& F, const FieldElem& x) {
    if (x.is_zero()) fail(ErrorCode::ZeroElement, "square class of zero");
    switch (F.kind) {
    case FieldKind::Complex: return {0};
    case FieldKind::Real: return {x.q < 0 ? 1u : 0u};
    case FieldKind::Padic: {
        unsigned v = static_cast<unsigned>(((x.val % 2) + 2) % 2);
        if (F.p == 2) {
            if (x.rel_prec() < 3) fail(ErrorCode::InsufficientPrecision, "need 3 unit digits at p=2");
            int u = static_cast<int>(x.unit % 8);
            unsigned a = (u % 4 == 3) ? 1u : 0u;
            unsigned b = (u == 3 || u == 5) ? 1u : 0u;
            return {v | (a << 1) | (b << 2)};
        }
        if (x.rel_prec() < 1) fail(ErrorCode::InsufficientPrecision, "no unit digit");
        int u = static_cast<int>(x.unit % F.p);
        return {v | ((legendre(u, F.p) == -1 ? 1u : 0u) << 1)};
    }
    case FieldKind::Laurent: {
        unsigned v = static_cast<unsigned>(((x.val % 2) + 2) % 2);
        if (x.rel_prec() < 1) fail(ErrorCode::InsufficientPrecision, "no unit digit");
        return {v | ((legendre(x.digits[0], F.p) == -1 ? 1u : 0u) << 1)};
    }
    }
    return {0};
}

/// Canonical representative of a class as a field element.
inline FieldElem class_rep(const GroundField& F, SquareClass c) {
    switch (F.kind) {
    case FieldKind::Complex: return felem(F, 1);
    case FieldKind::Real: return felem(F, (c.bits & 1) ? -1 : 1);
    case FieldKind::Padic: {
        long long r = 1;
        if (F.p == 2) {
            if (c.bits & 2) r = -r;
            if (c.bits & 4) r *= 5;
        } else if (c.bits & 2) {
            r = F.nonresidue();
        }
        if (c.bits & 1) r *= F.p;
        return felem(F, r);
    }
    case FieldKind::Laurent: {
        FieldElem r = felem(F, (c.bits & 2) ? F.nonresidue() : 1);
        if (c.bits & 1) r = r * FieldElem::pi(F);
        return r;
    }
    }
    return felem(F, 1);
}

/// Serialized code: integer for R, C, Qp; string "1","u","t","ut" (u printed as its value) for Fq((t)).
inline nlohmann::json class_code(const GroundField& F, SquareClass c) {
    if (F.kind == FieldKind::Laurent) {
        std::string s = (c.bits & 2) ? std::to_string(F.nonresidue()) : "";
        if (c.bits & 1) s += "t";
        return s.empty() ? "1" : s;
    }
    if (F.kind == FieldKind::Complex) return 1;
    if (F.kind == FieldKind::Real) return (c.bits & 1) ? -1 : 1;
    long long r = 1;
    if (F.p == 2) {
        if (c.bits & 2) r = -r;
        if (c.bits & 4) r *= 5;
    } else if (c.bits & 2) {
        r = F.nonresidue();
    }
    if (c.bits & 1) r *= F.p;
    return r;
}

inline std::string class_name(const GroundField& F, SquareClass c) {
    auto j = class_code(F, c);
    return j.is_string() ? j.get<std::string>() : std::to_string(j.get<long long>());
}

inline SquareClass class_from_code(const GroundField& F, const nlohmann::json& j) {
    for (auto c : all_classes(F))
        if (class_code(F, c) == j) return c;
    if (j.is_number_integer() && j.get<long long>() != 0 && F.kind != FieldKind::Laurent)
        return square_class(F, felem(F, j.get<long long>()));
    fail(ErrorCode::ParseError, "bad square-class code " + j.dump() + " for " + F.descriptor());
}

inline SquareClass class_of(const GroundField& F, long long n) { return square_class(F, felem(F, n)); }

namespace detail {
inline int hilbert_formula(const GroundField& F, unsigned a, unsigned b) {
    switch (F.kind) {
    case FieldKind::Complex: return 1;
    case FieldKind::Real: return ((a & 1) && (b & 1)) ? -1 : 1;
    case FieldKind::Padic:
    case FieldKind::Laurent: {
        unsigned va = a & 1, vb = b & 1;
        unsigned e;
        if (F.kind == FieldKind::Padic && F.p == 2) {
            unsigned aa = (a >> 1) & 1, ab = (b >> 1) & 1;
            unsigned ba = (a >> 2) & 1, bb = (b >> 2) & 1;
            e = (aa & ab) ^ (va & bb) ^ (vb & ba);
        } else {
            unsigned eps = static_cast<unsigned>(((F.p - 1) / 2) & 1);
            unsigned sa = (a >> 1) & 1, sb = (b >> 1) & 1;
            e = (va & vb & eps) ^ (sa & vb) ^ (sb & va);
        }
        return e ? -1 : 1;
    }
    }
    return 1;
}
} // namespace detail

/// Hilbert symbol (a,b)_F in {+1,-1}.
inline int hilbert(const GroundField& F, SquareClass a, SquareClass b) {
    int h = detail::hilbert_formula(F, a.bits, b.bits);
    if (F.hilbert_flip_a >= 0) {
        unsigned fa = static_cast<unsigned>(F.hilbert_flip_a), fb = static_cast<unsigned>(F.hilbert_flip_b);
        if ((a.bits == fa && b.bits == fb) || (a.bits == fb && b.bits == fa)) h = -h;
    }
    return h;
}

/// The quadratic character attached to a, evaluated on x via local class field theory.
inline int chi_eval(const GroundField& F, SquareClass a, const FieldElem& x) {
    return hilbert(F, a, square_class(F, x));
}

/// Quadratic etale algebra F(sqrt a), split when a = 1.
struct QuadExt {
    GroundField base;
    SquareClass a;
    bool ramified = false;
    bool split() const { return a.is_one(); }
};

inline QuadExt quad_ext(const GroundField& F, SquareClass a) {
    bool ram = false;
    if (F.nonarch()) ram = F.is_dyadic() ? (a.bits != 0 && a.bits != 4u) : ((a.bits & 1) != 0);
    return {F, a, ram};
}

inline std::vector<QuadExt> quadratic_etale_algebras(const GroundField& F) {
    std::vector<QuadExt> v;
    for (auto c : all_classes(F)) v.push_back(quad_ext(F, c));
    return v;
}

/// Additive character psi_n(x) = psi_std(pi^-n x). On R the level sets the frequency sign (-1)^n.
inline std::complex<double> psi_eval(const GroundField& F, int level, const FieldElem& x) {
    constexpr double tau = 2.0 * std::numbers::pi;
    switch (F.kind) {
    case FieldKind::Complex: {
        double re = x.q.convert_to<double>();
        return std::polar(1.0, tau * 2.0 * re);
    }
    case FieldKind::Real: {
        double s = (level % 2 == 0) ? 1.0 : -1.0;
        Rat fr = x.q - Rat(mp::numerator(x.q) / mp::denominator(x.q));
        return std::polar(1.0, tau * s * fr.convert_to<double>());
    }
    case FieldKind::Padic: {
        if (x.is_zero()) {
            if (x.absprec - level < 0) fail(ErrorCode::InsufficientPrecision, "zero too imprecise for psi");
            return 1.0;
        }
        int v = x.val - level;
        if (v >= 0) return 1.0;
        if (x.absprec - level < 0) fail(ErrorCode::InsufficientPrecision, "fractional part undetermined");
        const Int& m = ppow(F.p, -v);
        Int num = x.unit % m;
        long double ratio = num.convert_to<long double>() / m.convert_to<long double>();
        return std::polar(1.0, static_cast<double>(tau * ratio));
    }
    case FieldKind::Laurent: {
        if (x.is_zero()) {
            if (x.absprec - level < 0) fail(ErrorCode::InsufficientPrecision, "zero too imprecise for psi");
            return 1.0;
        }
        int k = -1 + level - x.val;  // index of the t^{-1} coefficient of t^{-level} x
        if (k < 0) return 1.0;
        if (k >= x.rel_prec()) fail(ErrorCode::InsufficientPrecision, "residue coefficient undetermined");
        return std::polar(1.0, tau * x.digits[k] / F.p);
    }
    }
    return 1.0;
}

} // namespace lqf
