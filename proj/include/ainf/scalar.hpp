#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ainf {

// Residue modulo a prime fixed by the innermost live PrimeField scope on this thread.
class Zp {
 public:
  constexpr Zp() = default;
  Zp(long long v) : v_(reduce(v)) {}  // NOLINT: implicit so that F(0), F(1) read naturally

  static std::uint32_t modulus() {
    if (p_ == 0) throw std::logic_error("Zp used outside of a PrimeField scope");
    return p_;
  }
  std::uint32_t value() const { return v_; }

  Zp& operator+=(Zp o) {
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    if (s >= modulus()) s -= p_;
    v_ = static_cast<std::uint32_t>(s);
    return *this;
  }
  Zp& operator-=(Zp o) {
    if (o.v_ == 0) return *this;
    return *this += Zp::raw(modulus() - o.v_);
  }
  Zp& operator*=(Zp o) {
    if (v_ == 0 || o.v_ == 0) {
      v_ = 0;
      return *this;
    }
    v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % modulus());
    return *this;
  }
  Zp& operator/=(Zp o) { return *this *= o.inverse(); }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in Zp");
    // Fermat: v^(p-2).
    std::uint64_t base = v_, acc = 1;
    for (std::uint64_t e = modulus() - 2; e != 0; e >>= 1) {
      if (e & 1U) acc = acc * base % p_;
      base = base * base % p_;
    }
    return raw(static_cast<std::uint32_t>(acc));
  }

  friend Zp operator+(Zp a, Zp b) { return a += b; }
  friend Zp operator-(Zp a, Zp b) { return a -= b; }
  friend Zp operator*(Zp a, Zp b) { return a *= b; }
  friend Zp operator/(Zp a, Zp b) { return a /= b; }
  friend Zp operator-(Zp a) { return Zp{} - a; }
  friend bool operator==(Zp a, Zp b) = default;
  friend auto operator<=>(Zp a, Zp b) { return a.v_ <=> b.v_; }
  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  friend class PrimeField;

  static Zp raw(std::uint32_t v) {
    Zp z;
    z.v_ = v;
    return z;
  }
  static std::uint32_t reduce(long long v) {
    if (v == 0) return 0;
    const auto p = static_cast<long long>(modulus());
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t v_ = 0;
  static inline thread_local std::uint32_t p_ = 0;
};

// RAII scope fixing the prime for Zp arithmetic; scopes nest.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : saved_(Zp::p_) {
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    if (p >= (1U << 31)) throw std::invalid_argument("modulus too large");
    Zp::p_ = p;
  }
  ~PrimeField() { Zp::p_ = saved_; }
  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;

  static bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t saved_;
};

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Zp> {
  static std::uint32_t characteristic() { return Zp::modulus(); }
  static constexpr bool finite = true;
  static std::vector<Zp> elements() {
    std::vector<Zp> out;
    for (std::uint32_t v = 0; v < Zp::modulus(); ++v) out.emplace_back(static_cast<long long>(v));
    return out;
  }
  static Zp parse(std::string_view s) {
    std::string t(s);
    std::size_t slash = t.find('/');
    try {
      if (slash == std::string::npos) return Zp(std::stoll(t));
      return Zp(std::stoll(t.substr(0, slash))) / Zp(std::stoll(t.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed scalar '" + t + "'");
    }
  }
  static std::string format(Zp z) { return std::to_string(z.value()); }
  static std::string field_name() { return std::to_string(Zp::modulus()); }
};

template <>
struct FieldTraits<Rational> {
  static std::uint32_t characteristic() { return 0; }
  static constexpr bool finite = false;
  static std::vector<Rational> elements() { throw std::logic_error("the rationals are not enumerable"); }
  static Rational parse(std::string_view s) {
    try {
      return Rational(std::string(s));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed scalar '" + std::string(s) + "'");
    }
  }
  static std::string format(const Rational& r) { return r.str(); }
  static std::string field_name() { return "Q"; }
};

template <class F>
concept Field = requires(F a, F b) {
  { a + b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  FieldTraits<F>::characteristic();
};

template <class F>
bool is_zero(const F& x) {
  return x == F(0);
}

// (-1)^e as a field element.
template <class F>
F sign(long long e) {
  return (e & 1) ? F(-1) : F(1);
}

}  // namespace ainf
