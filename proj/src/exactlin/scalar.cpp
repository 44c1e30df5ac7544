#include "exactlin/scalar.hpp"

#include <cctype>

namespace dih {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return r < 0 ? r + p : r;
}

std::int64_t mpq_residue(const mpq_class& q, std::uint32_t p) {
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) throw RingError("denominator divisible by the modulus");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class r = (num * inv) % p;
  return r.get_si();
}

}  // namespace

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw RingError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw RingError("modulus too large");
  return {Kind::PrimeField, p};
}

Ring Ring::parse(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "z") return integers();
  if (t == "q") return rationals();
  if (t.rfind("zp:", 0) == 0) {
    const std::string num = t.substr(3);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw RingError("bad prime in ring spec '" + text + "'");
    return prime_field(static_cast<std::uint32_t>(std::stoul(num)));
  }
  throw RingError("unknown ring '" + text + "' (expected z, q or zp:<p>)");
}

std::string Ring::name() const {
  switch (kind) {
    case Kind::Integers: return "z";
    case Kind::Rationals: return "q";
    case Kind::PrimeField: return "zp:" + std::to_string(p);
  }
  return "?";
}

Scalar::Scalar(long long v, std::uint32_t mod) : v_(mod ? reduce(v, mod) : v), mod_(mod) {}

Scalar::Scalar(const mpq_class& q, std::uint32_t mod) : mod_(mod) {
  if (mod) {
    v_ = mpq_residue(q, mod);
  } else {
    big_ = std::make_unique<mpq_class>(q);
    big_->canonicalize();
    normalize();
  }
}

Scalar Scalar::parse(const std::string& text, const Ring& ring) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw RingError("cannot parse scalar '" + text + "'");
  q.canonicalize();
  if (ring.kind == Ring::Kind::Integers && q.get_den() != 1)
    throw RingError("non-integer scalar '" + text + "' over z");
  return Scalar(q, ring.modulus());
}

void Scalar::promote() {
  if (!big_) big_ = std::make_unique<mpq_class>(static_cast<long>(v_));
}

void Scalar::normalize() {
  if (big_ && big_->get_den() == 1 && big_->get_num().fits_slong_p()) {
    v_ = big_->get_num().get_si();
    big_.reset();
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (mod_) {
    r.v_ = v_ ? mod_ - v_ : 0;
  } else if (big_) {
    *r.big_ = -*big_;
  } else if (v_ == INT64_MIN) {
    r.promote();
    *r.big_ = -*r.big_;
  } else {
    r.v_ = -v_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (mod_) {
    v_ += o.v_;
    if (v_ >= mod_) v_ -= mod_;
    return *this;
  }
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  promote();
  *big_ += o.to_mpq();
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (mod_) {
    v_ -= o.v_;
    if (v_ < 0) v_ += mod_;
    return *this;
  }
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  promote();
  *big_ -= o.to_mpq();
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (mod_) {
    v_ = static_cast<std::int64_t>((static_cast<unsigned __int128>(v_) * o.v_) % mod_);
    return *this;
  }
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  promote();
  *big_ *= o.to_mpq();
  normalize();
  return *this;
}

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
  if (mod_) {
    v_ = static_cast<std::int64_t>((static_cast<unsigned __int128>(b.v_) * c.v_ + v_) % mod_);
    return;
  }
  if (!big_ && !b.big_ && !c.big_) {
    std::int64_t prod, sum;
    if (!__builtin_mul_overflow(b.v_, c.v_, &prod) && !__builtin_add_overflow(v_, prod, &sum)) {
      v_ = sum;
      return;
    }
  }
  *this += b * c;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw RingError("division by zero");
  if (mod_) {
    // Fermat would need a pow loop; extended Euclid is just as short.
    std::int64_t a = v_, m = mod_, x0 = 1, x1 = 0;
    while (m) {
      std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Scalar(x0, mod_);
  }
  mpq_class q = to_mpq();
  return Scalar(mpq_class(1) / q, 0);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) return a.v_ == b.v_;
  return a.to_mpq() == b.to_mpq();
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(static_cast<long>(v_));
}

mpz_class Scalar::to_mpz() const {
  if (!big_) return mpz_class(static_cast<long>(v_));
  if (big_->get_den() != 1) throw RingError("scalar is not an integer");
  return big_->get_num();
}

std::string Scalar::to_string() const {
  if (big_) return big_->get_str();
  if (mod_ && v_ > static_cast<std::int64_t>(mod_ / 2)) return std::to_string(v_ - static_cast<std::int64_t>(mod_));
  return std::to_string(v_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace dih
