#ifndef DGAR_FIELD_HPP
#define DGAR_FIELD_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgar {

// Base exception types. Input errors are reported to the CLI as exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};

struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p) { return {Kind::PrimeField, p}; }
    bool operator==(const FieldSpec &) const = default;
    std::string name() const {
        return kind == Kind::Rationals ? std::string("Q") : "GF(" + std::to_string(p) + ")";
    }
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(v) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rational(long num, long den) : v_(num, den) {
        if (den == 0)
            throw InputError("zero denominator");
        v_.canonicalize();
    }

    static constexpr bool char_zero = true;
    static std::uint64_t characteristic() { return 0; }
    static FieldSpec spec() { return FieldSpec::rationals(); }

    const mpq_class &value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational inverse() const {
        if (is_zero())
            throw Error("division by zero");
        return Rational(mpq_class(1) / v_);
    }

    friend Rational operator+(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational &a, const Rational &b) { return a * b.inverse(); }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }

    std::string to_string() const { return v_.get_str(); }

    // Accepts "p", "-p" and "p/q".
    static Rational parse(const std::string &s) {
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0)
            throw InputError("malformed rational scalar '" + s + "'");
        if (q.get_den() == 0)
            throw InputError("zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

private:
    mpq_class v_;
};

// Prime field with a per-thread modulus set through GFp::Scope.
class GFp {
public:
    GFp() = default;
    GFp(long v) {
        const std::uint64_t p = checked_modulus();
        long r = v % static_cast<long>(p);
        if (r < 0)
            r += static_cast<long>(p);
        v_ = static_cast<std::uint64_t>(r);
    }
    GFp(int v) : GFp(static_cast<long>(v)) {}

    class Scope {
    public:
        explicit Scope(std::uint64_t p) : saved_(slot()) {
            if (!is_prime(p))
                throw InputError("GF(p) modulus must be prime, got " + std::to_string(p));
            if (p >= (std::uint64_t(1) << 62))
                throw Unsupported("GF(p) modulus too large");
            slot() = p;
        }
        ~Scope() { slot() = saved_; }
        Scope(const Scope &) = delete;
        Scope &operator=(const Scope &) = delete;

    private:
        std::uint64_t saved_;
    };

    static constexpr bool char_zero = false;
    static std::uint64_t characteristic() { return checked_modulus(); }
    static std::uint64_t modulus() { return slot(); }
    static FieldSpec spec() { return FieldSpec::prime(checked_modulus()); }

    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    GFp inverse() const {
        if (v_ == 0)
            throw Error("division by zero");
        // Fermat: v^(p-2)
        const std::uint64_t p = slot();
        std::uint64_t e = p - 2, b = v_, r = 1;
        while (e) {
            if (e & 1)
                r = mulmod(r, b, p);
            b = mulmod(b, b, p);
            e >>= 1;
        }
        return raw(r);
    }

    friend GFp operator+(const GFp &a, const GFp &b) {
        const std::uint64_t p = slot();
        std::uint64_t s = a.v_ + b.v_;
        return raw(s >= p ? s - p : s);
    }
    friend GFp operator-(const GFp &a, const GFp &b) {
        const std::uint64_t p = slot();
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_);
    }
    friend GFp operator*(const GFp &a, const GFp &b) { return raw(mulmod(a.v_, b.v_, slot())); }
    friend GFp operator/(const GFp &a, const GFp &b) { return a * b.inverse(); }
    GFp operator-() const { return v_ == 0 ? *this : raw(slot() - v_); }
    GFp &operator+=(const GFp &o) { return *this = *this + o; }
    GFp &operator-=(const GFp &o) { return *this = *this - o; }
    GFp &operator*=(const GFp &o) { return *this = *this * o; }
    friend bool operator==(const GFp &a, const GFp &b) { return a.v_ == b.v_; }

    std::string to_string() const { return std::to_string(v_); }

    static GFp parse(const std::string &s) {
        try {
            std::size_t used = 0;
            long v = std::stol(s, &used);
            if (used != s.size())
                throw InputError("");
            return GFp(v);
        } catch (const std::exception &) {
            throw InputError("malformed GF(p) scalar '" + s + "'");
        }
    }

private:
    static std::uint64_t &slot() {
        thread_local std::uint64_t p = 0;
        return p;
    }
    static std::uint64_t checked_modulus() {
        if (slot() == 0)
            throw PreconditionError("GF(p) arithmetic used without an active modulus");
        return slot();
    }
    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    static GFp raw(std::uint64_t v) {
        GFp r;
        r.v_ = v;
        return r;
    }

    std::uint64_t v_ = 0;
};

template <class K>
concept ExactField = requires(K a, K b, std::string s) {
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { a / b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::same_as<K>;
    { a.to_string() } -> std::same_as<std::string>;
    { K::parse(s) } -> std::same_as<K>;
    { K::spec() } -> std::same_as<FieldSpec>;
};

static_assert(ExactField<Rational>);
static_assert(ExactField<GFp>);

inline int sign_of_parity(long n) { return (n % 2 == 0) ? 1 : -1; }

template <class K>
K signed_one(long exponent) {
    return K(sign_of_parity(exponent));
}

} // namespace dgar

#endif
