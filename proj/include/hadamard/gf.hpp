#pragma once

// Exact arithmetic in GF(p^k). Elements are polynomials over Z_p reduced
// modulo a fixed monic irreducible of degree k, stored little-endian by
// degree. The modulus is chosen deterministically for each (p, k), so two
// independently constructed fields with the same parameters interoperate.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hadamard {

class GaloisField;
class FieldElement;

namespace detail {

struct FieldCtx {
  std::uint32_t p = 0;  // prime characteristic
  std::uint32_t k = 0;  // extension degree
  std::uint64_t q = 0;  // p^k
  std::vector<std::uint32_t> modulus;  // c_0..c_{k-1} of x^k + c_{k-1}x^{k-1} + ... + c_0

  mutable std::vector<bool> squares;  // nonzero squares by element index, built lazily
  mutable std::once_flag squares_once;

  bool same_field(const FieldCtx& other) const {
    return p == other.p && k == other.k && modulus == other.modulus;
  }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Little-endian base-p digits of value, padded to the given width.
inline std::vector<std::uint32_t> digits_base_p(std::uint64_t value, std::uint32_t p,
                                                std::uint32_t width) {
  std::vector<std::uint32_t> out(width, 0);
  for (std::uint32_t i = 0; i < width && value != 0; ++i) {
    out[i] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return out;
}

inline std::uint64_t value_base_p(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p + coeffs[i];
  return v;
}

// Remainder of `a` divided by monic `b`; both little-endian with the leading
// coefficient stored explicitly. Leading zeros are trimmed from the result.
inline std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i) {
        const std::uint64_t sub = (static_cast<std::uint64_t>(b[i]) * lead) % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Trial division by every monic polynomial of degree <= deg/2. Any proper
// factorization must contain such a factor, so this is a full test.
inline bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      auto divisor = digits_base_p(m, p, static_cast<std::uint32_t>(d));
      divisor.push_back(1);
      if (poly_rem(monic, divisor, p).empty()) return false;
    }
  }
  return true;
}

// First irreducible monic of degree k when candidates (c_0, ..., c_{k-1}) are
// ordered by their base-p value. Deterministic across runs and platforms.
inline std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t k,
                                                    std::uint64_t q) {
  for (std::uint64_t m = 0; m < q; ++m) {
    auto candidate = digits_base_p(m, p, k);
    candidate.push_back(1);
    if (is_irreducible(candidate, p)) {
      candidate.pop_back();
      return candidate;
    }
  }
  throw std::logic_error("irreducible modulus search exhausted");
}

inline std::vector<std::uint32_t> add_coeffs(const FieldCtx& f,
                                             const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(f.k);
  for (std::uint32_t i = 0; i < f.k; ++i) out[i] = (a[i] + b[i]) % f.p;
  return out;
}

inline std::vector<std::uint32_t> sub_coeffs(const FieldCtx& f,
                                             const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(f.k);
  for (std::uint32_t i = 0; i < f.k; ++i) out[i] = (a[i] + f.p - b[i]) % f.p;
  return out;
}

inline std::vector<std::uint32_t> neg_coeffs(const FieldCtx& f,
                                             const std::vector<std::uint32_t>& a) {
  std::vector<std::uint32_t> out(f.k);
  for (std::uint32_t i = 0; i < f.k; ++i) out[i] = (f.p - a[i]) % f.p;
  return out;
}

inline std::vector<std::uint32_t> mul_coeffs(const FieldCtx& f,
                                             const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b) {
  const std::uint64_t p = f.p;
  const std::uint32_t k = f.k;
  if (k == 1) {
    return {static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[0]) * b[0]) % p)};
  }
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < k; ++j)
      prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
  }
  // fold x^d down using x^k = -(c_{k-1}x^{k-1} + ... + c_0)
  for (std::size_t d = 2 * k - 2; d >= k; --d) {
    const std::uint64_t t = prod[d];
    if (t == 0) continue;
    for (std::uint32_t j = 0; j < k; ++j)
      prod[d - k + j] = (prod[d - k + j] + (p - f.modulus[j]) * t) % p;
  }
  std::vector<std::uint32_t> out(k);
  for (std::uint32_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

inline std::vector<std::uint32_t> pow_coeffs(const FieldCtx& f, std::vector<std::uint32_t> base,
                                             std::uint64_t e) {
  std::vector<std::uint32_t> acc(f.k, 0);
  acc[0] = 1;
  while (e != 0) {
    if (e & 1) acc = mul_coeffs(f, acc, base);
    e >>= 1;
    if (e != 0) base = mul_coeffs(f, base, base);
  }
  return acc;
}

inline const std::vector<bool>& squares_table(const FieldCtx& f) {
  std::call_once(f.squares_once, [&f] {
    std::vector<bool> s(f.q, false);
    for (std::uint64_t i = 1; i < f.q; ++i) {
      const auto a = digits_base_p(i, f.p, f.k);
      s[value_base_p(mul_coeffs(f, a, a), f.p)] = true;
    }
    f.squares = std::move(s);
  });
  return f.squares;
}

// Human-readable polynomial with coefficient i multiplying x^i.
inline std::string poly_to_string(const std::vector<std::uint32_t>& coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || coeffs[i] != 1) out += std::to_string(coeffs[i]);
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

class FieldElement {
 public:
  FieldElement() = default;

  const std::vector<std::uint32_t>& coeffs() const {
    require_field();
    return coeffs_;
  }

  bool is_zero() const {
    require_field();
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c == 0; });
  }

  bool is_one() const {
    require_field();
    if (coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](std::uint32_t c) { return c == 0; });
  }

  GaloisField field() const;

  std::string to_string() const {
    require_field();
    return detail::poly_to_string(coeffs_);
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx_ || !b.ctx_) return a.ctx_ == b.ctx_;
    return a.ctx_->same_field(*b.ctx_) && a.coeffs_ == b.coeffs_;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const auto& f = joint_ctx(a, b);
    return FieldElement(a.ctx_, detail::add_coeffs(f, a.coeffs_, b.coeffs_));
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const auto& f = joint_ctx(a, b);
    return FieldElement(a.ctx_, detail::sub_coeffs(f, a.coeffs_, b.coeffs_));
  }

  friend FieldElement operator-(const FieldElement& a) {
    a.require_field();
    return FieldElement(a.ctx_, detail::neg_coeffs(*a.ctx_, a.coeffs_));
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const auto& f = joint_ctx(a, b);
    return FieldElement(a.ctx_, detail::mul_coeffs(f, a.coeffs_, b.coeffs_));
  }

  friend FieldElement pow(const FieldElement& a, std::uint64_t e) {
    a.require_field();
    return FieldElement(a.ctx_, detail::pow_coeffs(*a.ctx_, a.coeffs_, e));
  }

  // Multiplicative inverse via a^(q-2); valid because a^(q-1) = 1 for a != 0.
  friend FieldElement inv(const FieldElement& a) {
    a.require_field();
    if (a.is_zero()) throw std::domain_error("zero has no multiplicative inverse");
    return FieldElement(a.ctx_, detail::pow_coeffs(*a.ctx_, a.coeffs_, a.ctx_->q - 2));
  }

  // 0 on zero, +1 on nonzero squares, -1 otherwise; table lookup.
  friend int quadratic_character(const FieldElement& a) {
    a.require_field();
    if (a.is_zero()) return 0;
    const auto& squares = detail::squares_table(*a.ctx_);
    return squares[detail::value_base_p(a.coeffs_, a.ctx_->p)] ? 1 : -1;
  }

  // Same value computed as a^((q-1)/2). In characteristic 2 squaring is a
  // bijection, so every nonzero element is a square.
  friend int quadratic_character_by_pow(const FieldElement& a) {
    a.require_field();
    if (a.is_zero()) return 0;
    const auto& f = *a.ctx_;
    if (f.p == 2) return 1;
    const auto r = detail::pow_coeffs(f, a.coeffs_, (f.q - 1) / 2);
    if (r[0] == 1 &&
        std::all_of(r.begin() + 1, r.end(), [](std::uint32_t c) { return c == 0; }))
      return 1;
    if (r[0] == f.p - 1 &&
        std::all_of(r.begin() + 1, r.end(), [](std::uint32_t c) { return c == 0; }))
      return -1;
    throw std::logic_error("character exponentiation produced a value outside {1, -1}");
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << (e.ctx_ ? e.to_string() : std::string("<detached>"));
  }

 private:
  friend class GaloisField;

  FieldElement(std::shared_ptr<const detail::FieldCtx> ctx, std::vector<std::uint32_t> coeffs)
      : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {}

  void require_field() const {
    if (!ctx_) throw std::logic_error("field element is not attached to a field");
  }

  static const detail::FieldCtx& joint_ctx(const FieldElement& a, const FieldElement& b) {
    a.require_field();
    b.require_field();
    if (a.ctx_ != b.ctx_ && !a.ctx_->same_field(*b.ctx_))
      throw std::invalid_argument("field elements belong to different fields");
    return *a.ctx_;
  }

  std::shared_ptr<const detail::FieldCtx> ctx_;
  std::vector<std::uint32_t> coeffs_;
};

class GaloisField {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;

  GaloisField(std::uint32_t p, std::uint32_t k, std::uint64_t max_order = kDefaultMaxOrder) {
    if (!detail::is_prime(p))
      throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                  " is not prime");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (q > max_order / p)
        throw std::invalid_argument("field order " + std::to_string(p) + "^" +
                                    std::to_string(k) + " exceeds the size bound " +
                                    std::to_string(max_order));
      q *= p;
    }
    auto ctx = std::make_shared<detail::FieldCtx>();
    ctx->p = p;
    ctx->k = k;
    ctx->q = q;
    ctx->modulus = detail::canonical_modulus(p, k, q);
    ctx_ = std::move(ctx);
  }

  // Accepts "p" or "p^k", e.g. "7" or "3^3".
  static GaloisField parse(std::string_view spec,
                           std::uint64_t max_order = kDefaultMaxOrder) {
    const auto parse_u32 = [&spec](std::string_view text) -> std::uint32_t {
      std::uint32_t value = 0;
      const char* first = text.data();
      const char* last = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || text.empty())
        throw std::invalid_argument("bad field spec '" + std::string(spec) +
                                    "' (expected p or p^k)");
      return value;
    };
    const auto caret = spec.find('^');
    if (caret == std::string_view::npos) return GaloisField(parse_u32(spec), 1, max_order);
    return GaloisField(parse_u32(spec.substr(0, caret)),
                       parse_u32(spec.substr(caret + 1)), max_order);
  }

  std::uint32_t characteristic() const { return ctx_->p; }
  std::uint32_t degree() const { return ctx_->k; }
  std::uint64_t order() const { return ctx_->q; }

  const std::vector<std::uint32_t>& modulus() const { return ctx_->modulus; }

  std::string modulus_string() const {
    auto full = ctx_->modulus;
    full.push_back(1);
    return detail::poly_to_string(full);
  }

  std::string name() const {
    return "GF(" + std::to_string(ctx_->p) + "^" + std::to_string(ctx_->k) + ")";
  }

  FieldElement zero() const { return FieldElement(ctx_, std::vector<std::uint32_t>(ctx_->k, 0)); }

  FieldElement one() const {
    std::vector<std::uint32_t> c(ctx_->k, 0);
    c[0] = 1;
    return FieldElement(ctx_, std::move(c));
  }

  // Element i has the base-p digits of i as coefficients; this is the
  // canonical enumeration order.
  FieldElement element_at(std::uint64_t index) const {
    if (index >= ctx_->q) throw std::out_of_range("element index exceeds field order");
    return FieldElement(ctx_, detail::digits_base_p(index, ctx_->p, ctx_->k));
  }

  std::uint64_t index_of(const FieldElement& e) const {
    e.require_field();
    if (e.ctx_ != ctx_ && !e.ctx_->same_field(*ctx_))
      throw std::invalid_argument("element belongs to a different field");
    return detail::value_base_p(e.coeffs_, ctx_->p);
  }

  FieldElement from_coeffs(std::vector<std::uint32_t> coeffs) const {
    if (coeffs.size() != ctx_->k)
      throw std::invalid_argument("expected " + std::to_string(ctx_->k) + " coefficients");
    for (const auto c : coeffs)
      if (c >= ctx_->p) throw std::invalid_argument("coefficient out of range [0, p)");
    return FieldElement(ctx_, std::move(coeffs));
  }

  std::vector<FieldElement> elements() const {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(ctx_->q));
    for (std::uint64_t i = 0; i < ctx_->q; ++i) out.push_back(element_at(i));
    return out;
  }

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.ctx_ == b.ctx_ || a.ctx_->same_field(*b.ctx_);
  }

 private:
  friend class FieldElement;
  std::shared_ptr<const detail::FieldCtx> ctx_;
};

inline GaloisField FieldElement::field() const {
  require_field();
  GaloisField f(2, 1);
  f.ctx_ = ctx_;
  return f;
}

}  // namespace hadamard
