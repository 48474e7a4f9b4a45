#pragma once

/// Finite fields F_p and F_{p^k} with table-driven arithmetic.
///
/// Elements are stored as integer codes: the coefficient vector (c_0, ..., c_{k-1}) of the
/// polynomial-basis representation maps to c_0 + c_1 p + ... + c_{k-1} p^{k-1}. The code is a
/// bijective encoding of the reduced coefficient vector, so structural equality is code equality.

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rankforge/error.hpp"

namespace rankforge {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint64_t kDefaultFieldCeiling = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Polynomials over Z_p, coefficients low-to-high, used only while building a field.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is small
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo b over Z_p (b nonzero).
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv_mod_prime(b.back(), p);
    while (a.size() > db) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

/// Irreducibility by trial division against every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        Poly g(d + 1, 0);
        g[d] = 1;
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < d; ++i) combos *= p;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace detail

class Field : public std::enable_shared_from_this<Field> {
public:
    /// Builds F_{p^k} with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared c_0 first). Deterministic for equal inputs.
    static FieldPtr make(std::uint32_t p, std::uint32_t k, std::uint64_t ceiling = kDefaultFieldCeiling) {
        detail::require(detail::is_prime(p), "field: p=" + std::to_string(p) + " is not prime");
        detail::require(k >= 1, "field: extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            q *= p;
            detail::require(q <= ceiling, "field: p^k exceeds the size ceiling " + std::to_string(ceiling));
        }
        detail::Poly modulus;
        if (k > 1) {
            modulus = find_modulus(p, k);
            if (modulus.empty())
                throw Error("field: no monic irreducible polynomial of degree " + std::to_string(k) + " found");
        }
        return std::shared_ptr<const Field>(new Field(p, k, static_cast<std::uint32_t>(q), std::move(modulus)));
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return k_; }
    std::uint32_t order() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }
    /// Monic modulus, coefficients low-to-high (length k+1); empty for prime fields.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    /// The prime subfield F_p (this field itself when k = 1).
    FieldPtr prime_subfield() const {
        if (k_ == 1) return shared_from_this();
        return prime_;
    }

    bool same_as(const Field& o) const noexcept {
        return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_);
    }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }

    Elem add(Elem a, Elem b) const noexcept {
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        if (k_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        Elem r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            Elem d = (a % p_ + b % p_) % p_;
            r += d * pow_p_[i];
            a /= p_;
            b /= p_;
        }
        return r;
    }

    Elem neg(Elem a) const noexcept {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        if (p_ == 2) return a;
        Elem r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            Elem d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
            a /= p_;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const noexcept {
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        if (a == 0 || b == 0) return 0;
        if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
        return exp_[log_[a] + log_[b]];
    }

    Elem inv(Elem a) const {
        detail::require(a != 0, "field: inverse of zero");
        if (q_ == 2) return 1;
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::int64_t e) const {
        if (e == 0) return 1;
        if (a == 0) {
            detail::require(e > 0, "field: negative power of zero");
            return 0;
        }
        const std::int64_t m = q_ - 1;
        std::int64_t idx = (static_cast<std::int64_t>(log_[a]) * (e % m)) % m;
        if (idx < 0) idx += m;
        return exp_[static_cast<std::size_t>(idx)];
    }

    /// Discrete log with respect to generator(); a must be nonzero.
    std::uint32_t log(Elem a) const {
        detail::require(a != 0, "field: log of zero");
        return log_[a];
    }

    /// The primitive element used by the log tables.
    Elem generator() const noexcept { return generator_; }

    /// Image of an integer under Z -> F_p -> F.
    Elem from_int(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    bool contains(Elem a) const noexcept { return a < q_; }

    std::vector<std::uint32_t> coefficients(Elem a) const {
        std::vector<std::uint32_t> c(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }

    Elem from_coefficients(const std::vector<std::uint32_t>& c) const {
        detail::require(c.size() == k_, "field: coefficient vector has wrong length");
        Elem r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            detail::require(c[i] < p_, "field: coefficient out of range");
            r += c[i] * pow_p_[i];
        }
        return r;
    }

    /// `field p=<p> k=<k> modulus=<c0,...,ck>`; modulus omitted for prime fields.
    std::string header() const {
        std::ostringstream os;
        os << "field p=" << p_ << " k=" << k_;
        if (k_ > 1) {
            os << " modulus=";
            for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
        }
        return os.str();
    }

    std::string format(Elem a) const {
        if (k_ == 1) return std::to_string(a);
        std::string s;
        auto c = coefficients(a);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(c[i]);
        }
        return s;
    }

    Elem parse(const std::string& s) const {
        std::vector<std::uint32_t> c;
        std::size_t start = 0;
        while (true) {
            auto comma = s.find(',', start);
            auto tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("element: malformed coefficient '" + tok + "'");
            auto v = std::stoull(tok);
            if (v >= p_) throw ParseError("element: coefficient " + tok + " out of range for p=" + std::to_string(p_));
            c.push_back(static_cast<std::uint32_t>(v));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (c.size() != k_)
            throw ParseError("element: expected " + std::to_string(k_) + " coefficients, got " + std::to_string(c.size()));
        return from_coefficients(c);
    }

private:
    Field(std::uint32_t p, std::uint32_t k, std::uint32_t q, detail::Poly modulus)
        : p_(p), k_(k), q_(q), modulus_(std::move(modulus)) {
        pow_p_.resize(k_);
        std::uint32_t pp = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            pow_p_[i] = pp;
            pp *= p_;
        }
        if (k_ > 1) prime_ = Field::make(p_, 1);
        build_tables();
    }

    static detail::Poly find_modulus(std::uint32_t p, std::uint32_t k) {
        // lexicographic over (c_0, ..., c_{k-1}) with c_0 most significant
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < k; ++i) total *= p;
        detail::Poly f(k + 1, 0);
        f[k] = 1;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (std::uint32_t i = k; i-- > 0;) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (f[0] == 0) continue; // divisible by x
            if (detail::is_irreducible(f, p)) return f;
        }
        return {};
    }

    Elem slow_mul(Elem a, Elem b) const {
        if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
        auto ca = coefficients(a), cb = coefficients(b);
        detail::Poly prod(2 * k_ - 1, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
        auto rem = detail::poly_mod(prod, modulus_, p_);
        rem.resize(k_, 0);
        return from_coefficients(rem);
    }

    void build_tables() {
        const std::uint32_t m = q_ - 1;
        for (Elem g = 1; g < q_; ++g) {
            std::uint32_t ord = 1;
            Elem x = g;
            while (x != 1) {
                x = slow_mul(x, g);
                ++ord;
            }
            if (ord == m) {
                generator_ = g;
                break;
            }
        }
        exp_.assign(2 * static_cast<std::size_t>(m) + 1, 0);
        log_.assign(q_, 0);
        Elem x = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = slow_mul(x, generator_);
        }
        for (std::uint32_t i = m; i < exp_.size(); ++i) exp_[i] = exp_[i - m];
        if (q_ <= kTableOrder) {
            std::vector<std::uint8_t> mt(static_cast<std::size_t>(q_) * q_), at;
            for (Elem a = 0; a < q_; ++a)
                for (Elem b = 0; b < q_; ++b) mt[a * q_ + b] = static_cast<std::uint8_t>(mul(a, b));
            if (k_ > 1 && p_ != 2) {
                at.resize(mt.size());
                for (Elem a = 0; a < q_; ++a)
                    for (Elem b = 0; b < q_; ++b) at[a * q_ + b] = static_cast<std::uint8_t>(add(a, b));
            }
            mul_tab_ = std::move(mt);
            add_tab_ = std::move(at);
        }
    }

    static constexpr std::uint32_t kTableOrder = 256;

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;
    FieldPtr prime_;
    Elem generator_ = 1;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint8_t> mul_tab_; // dense tables for q <= 256
    std::vector<std::uint8_t> add_tab_;
};

inline FieldPtr make_field(std::uint32_t p, std::uint32_t k, std::uint64_t ceiling = kDefaultFieldCeiling) {
    return Field::make(p, k, ceiling);
}

/// A field element bound to its field.
struct FElem {
    FieldPtr field;
    Elem code = 0;

    bool is_zero() const noexcept { return code == 0; }

    friend bool operator==(const FElem& a, const FElem& b) {
        return a.code == b.code && a.field->same_as(*b.field);
    }
    friend FElem operator+(const FElem& a, const FElem& b) { return {a.field, a.field->add(a.code, b.code)}; }
    friend FElem operator-(const FElem& a, const FElem& b) { return {a.field, a.field->sub(a.code, b.code)}; }
    friend FElem operator*(const FElem& a, const FElem& b) { return {a.field, a.field->mul(a.code, b.code)}; }
    FElem pow(std::int64_t e) const { return {field, field->pow(code, e)}; }
    FElem inv() const { return {field, field->inv(code)}; }
};

/// Multiplicative order of a nonzero element: (q-1) / gcd(log a, q-1).
inline std::uint64_t element_order(const Field& f, Elem a) {
    detail::require(a != 0, "element_order: zero has no multiplicative order");
    const std::uint64_t m = f.order() - 1;
    if (m == 1) return 1;
    return m / std::gcd(static_cast<std::uint64_t>(f.log(a)), m);
}

inline std::uint64_t element_order(const FElem& a) { return element_order(*a.field, a.code); }

/// First element of F* in ascending code order whose multiplicative order is at least `min_order`.
inline FElem find_element_of_order(const FieldPtr& f, std::uint64_t min_order) {
    detail::require(min_order >= 1, "find_element_of_order: order must be positive");
    detail::require(min_order <= f->order() - 1,
                    "find_element_of_order: no element of order >= " + std::to_string(min_order) + " in F_" +
                        std::to_string(f->order()));
    for (Elem a = 1; a < f->order(); ++a)
        if (element_order(*f, a) >= min_order) return {f, a};
    throw Error("find_element_of_order: unreachable");
}

/// Polynomial-basis coordinates of a over the prime subfield.
inline std::vector<FElem> phi(const FElem& a) {
    detail::require(!a.field->is_prime_field(), "phi: element is not in an extension field");
    auto base = a.field->prime_subfield();
    std::vector<FElem> out;
    for (auto c : a.field->coefficients(a.code)) out.push_back({base, c});
    return out;
}

} // namespace rankforge
