#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dih {

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient ring. Only rings where rank and normal forms are decidable.
struct Ring {
  enum class Kind { Integers, Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;  // modulus for PrimeField, 0 otherwise

  static Ring integers() { return {Kind::Integers, 0}; }
  static Ring rationals() { return {Kind::Rationals, 0}; }
  static Ring prime_field(std::uint32_t p);
  // Accepts "z", "q", "zp:<p>" (and "Z", "Q", "Z/p" spelled "zp:p").
  static Ring parse(const std::string& text);

  bool is_field() const { return kind != Kind::Integers; }
  std::uint32_t modulus() const { return kind == Kind::PrimeField ? p : 0; }
  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.kind == b.kind && a.p == b.p; }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }
};

// Exact scalar. Residues mod p are kept as int64 in [0, p). In characteristic
// zero an int64 fast path is used until a result overflows or stops being an
// integer, at which point the value moves to an mpq_class.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long v, std::uint32_t mod = 0);
  Scalar(const mpq_class& q, std::uint32_t mod = 0);
  static Scalar parse(const std::string& text, const Ring& ring);
  static Scalar of(long long v, const Ring& ring) { return Scalar(v, ring.modulus()); }
  static Scalar zero(const Ring& ring) { return Scalar(0, ring.modulus()); }
  static Scalar one(const Ring& ring) { return Scalar(1, ring.modulus()); }
  static Scalar sign(int exponent, const Ring& ring) {
    return Scalar((exponent & 1) ? -1 : 1, ring.modulus());
  }

  Scalar(const Scalar& o) : v_(o.v_), mod_(o.mod_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      v_ = o.v_;
      mod_ = o.mod_;
      big_.reset(o.big_ ? new mpq_class(*o.big_) : nullptr);
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  bool is_zero() const { return !big_ && v_ == 0; }
  bool is_one() const { return !big_ && v_ == 1; }
  bool is_unit_integer() const { return !big_ && (v_ == 1 || v_ == -1); }
  bool is_integer() const { return !big_ || big_->get_den() == 1; }
  std::uint32_t modulus() const { return mod_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  // a += b * c without a temporary in the common small case.
  void add_mul(const Scalar& b, const Scalar& c);

  // Field inverse (mod p or rational). Throws on zero.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  mpq_class to_mpq() const;
  mpz_class to_mpz() const;  // requires is_integer()
  // Symmetric representative for residues (used in display only).
  std::string to_string() const;
  long long small_value() const { return v_; }
  bool is_small() const { return !big_; }

 private:
  void normalize();
  void promote();

  std::int64_t v_ = 0;
  std::uint32_t mod_ = 0;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace dih
