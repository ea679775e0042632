#pragma once

// Exact arithmetic in the discrete Heisenberg group H and its quotients H_N,
// and exact return counts of the simple random walk on them.
//
// An element (a, b, c) stands for the unitriangular matrix
//
//     | 1 a c |
//     | 0 1 b |
//     | 0 0 1 |
//
// so that (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').  Quotient elements keep
// their entries in the symmetric residue range (-N/2, N/2].

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heisenspec/errors.hpp"

namespace heisenspec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest step count accepted for walks on the infinite group.  The reachable
// box grows like k^4 cells.
inline constexpr int kMaxInfiniteSteps = 30;

// Walk counts never exceed 4^k, so 64-bit counters are exact up to this k.
inline constexpr int kMaxSteps64 = 31;

using Modulus = std::optional<std::int64_t>;

// Representative of v mod n in (-n/2, n/2].
constexpr std::int64_t symmetric_residue(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  if (r < 0) r += n;
  if (2 * r > n) r -= n;
  return r;
}

class GroupElement {
 public:
  constexpr GroupElement() = default;

  GroupElement(std::int64_t a, std::int64_t b, std::int64_t c, Modulus modulus = std::nullopt)
      : a_(a), b_(b), c_(c), modulus_(modulus) {
    if (modulus_) {
      require(*modulus_ >= 1, "modulus must be a positive integer, got " + std::to_string(*modulus_));
      a_ = symmetric_residue(a_, *modulus_);
      b_ = symmetric_residue(b_, *modulus_);
      c_ = symmetric_residue(c_, *modulus_);
    }
  }

  static GroupElement identity(Modulus m = std::nullopt) { return {0, 0, 0, m}; }
  static GroupElement x(Modulus m = std::nullopt) { return {1, 0, 0, m}; }
  static GroupElement y(Modulus m = std::nullopt) { return {0, 1, 0, m}; }
  static GroupElement z(Modulus m = std::nullopt) { return {0, 0, 1, m}; }

  constexpr std::int64_t a() const { return a_; }
  constexpr std::int64_t b() const { return b_; }
  constexpr std::int64_t c() const { return c_; }
  constexpr const Modulus& modulus() const { return modulus_; }

  bool is_identity() const { return a_ == 0 && b_ == 0 && c_ == 0; }

  GroupElement inverse() const { return {-a_, -b_, -c_ + a_ * b_, modulus_}; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t c_ = 0;
  Modulus modulus_;
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (g.modulus() != h.modulus()) {
    auto show = [](const Modulus& m) { return m ? std::to_string(*m) : std::string("none"); };
    throw PreconditionError("cannot multiply elements with moduli " + show(g.modulus()) + " and " +
                            show(h.modulus()));
  }
  return {g.a() + h.a(), g.b() + h.b(), g.c() + h.c() + g.a() * h.b(), g.modulus()};
}

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) { return multiply(g, h); }

// The four walk generators x, x^-1, y, y^-1.
inline std::array<GroupElement, 4> walk_generators(Modulus m = std::nullopt) {
  return {GroupElement::x(m), GroupElement::x(m).inverse(), GroupElement::y(m),
          GroupElement::y(m).inverse()};
}

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(g.a()) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(g.b()) + 0xBF58476D1CE4E5B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(g.c()) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Coefficients of Δ̃^k δ_e in the group algebra: how many words of length k in
// x^±1, y^±1 evaluate to each element.
template <class Count = BigInt>
class WalkState {
 public:
  using CountMap = std::unordered_map<GroupElement, Count, GroupElementHash>;

  explicit WalkState(Modulus modulus = std::nullopt) : modulus_(modulus) {
    counts_.emplace(GroupElement::identity(modulus), Count(1));
  }

  int step() const { return step_; }
  const Modulus& modulus() const { return modulus_; }
  const CountMap& counts() const { return counts_; }
  std::size_t support_size() const { return counts_.size(); }

  Count count(const GroupElement& g) const {
    auto it = counts_.find(g);
    return it == counts_.end() ? Count(0) : it->second;
  }

  Count identity_count() const { return count(GroupElement::identity(modulus_)); }

  BigInt total() const {
    BigInt sum = 0;
    for (const auto& [g, n] : counts_) sum += BigInt(n);
    return sum;
  }

  // State after one more step: every count is pushed through right
  // multiplication by each generator.
  WalkState next() const {
    WalkState out(modulus_);
    out.counts_.clear();
    out.counts_.reserve(counts_.size() * 2);
    out.step_ = step_ + 1;
    const auto gens = walk_generators(modulus_);
    for (const auto& [g, n] : counts_) {
      for (const auto& s : gens) out.counts_[g * s] += n;
    }
    return out;
  }

 private:
  Modulus modulus_;
  int step_ = 0;
  CountMap counts_;
};

template <class Count>
WalkState<Count> walk_step(const WalkState<Count>& s) {
  return s.next();
}

// Dense version of the walk on the infinite group.  After k steps every reached
// element lies in |a|, |b| <= k, |c| <= k^2/2, so the state is a box of
// (2k+1)^2 (2*floor(k^2/2)+1) counters.
template <class Count = std::uint64_t>
class InfiniteWalk {
 public:
  InfiniteWalk() : cells_(1, Count(1)) {}

  int step() const { return step_; }
  std::int64_t ab_bound() const { return step_; }
  std::int64_t c_bound() const { return c_bound_for(step_); }

  Count count(std::int64_t a, std::int64_t b, std::int64_t c) const {
    if (std::abs(a) > ab_bound() || std::abs(b) > ab_bound() || std::abs(c) > c_bound()) return Count(0);
    return cells_[index(step_, a, b, c)];
  }

  Count identity_count() const { return count(0, 0, 0); }

  void advance() {
    const int k = step_ + 1;
    const std::int64_t ab = step_;
    const std::int64_t cb = c_bound();
    std::vector<Count> next(cell_count(k), Count(0));
    for (std::int64_t a = -ab; a <= ab; ++a) {
      for (std::int64_t b = -ab; b <= ab; ++b) {
        // a + b has the parity of the step count; the other cells stay zero.
        if (((a + b + step_) & 1) != 0) continue;
        for (std::int64_t c = -cb; c <= cb; ++c) {
          const Count& n = cells_[index(step_, a, b, c)];
          if (n == 0) continue;
          next[index(k, a + 1, b, c)] += n;
          next[index(k, a - 1, b, c)] += n;
          next[index(k, a, b + 1, c + a)] += n;
          next[index(k, a, b - 1, c - a)] += n;
        }
      }
    }
    cells_ = std::move(next);
    step_ = k;
  }

  // Visits every cell with a non-zero count.
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    const std::int64_t ab = ab_bound();
    const std::int64_t cb = c_bound();
    for (std::int64_t a = -ab; a <= ab; ++a)
      for (std::int64_t b = -ab; b <= ab; ++b)
        for (std::int64_t c = -cb; c <= cb; ++c) {
          const Count& n = cells_[index(step_, a, b, c)];
          if (n != 0) visit(a, b, c, n);
        }
  }

  BigInt total() const {
    BigInt sum = 0;
    for (const Count& n : cells_) sum += BigInt(n);
    return sum;
  }

 private:
  static std::int64_t c_bound_for(int k) { return static_cast<std::int64_t>(k) * k / 2; }

  static std::size_t cell_count(int k) {
    const std::size_t side = 2 * static_cast<std::size_t>(k) + 1;
    return side * side * (2 * static_cast<std::size_t>(c_bound_for(k)) + 1);
  }

  static std::size_t index(int k, std::int64_t a, std::int64_t b, std::int64_t c) {
    const std::int64_t side = 2 * static_cast<std::int64_t>(k) + 1;
    const std::int64_t depth = 2 * c_bound_for(k) + 1;
    return static_cast<std::size_t>(((a + k) * side + (b + k)) * depth + (c + c_bound_for(k)));
  }

  int step_ = 0;
  std::vector<Count> cells_;
};

namespace detail {

inline BigInt pow4(int k) { return BigInt(1) << (2 * k); }

template <class Count>
std::vector<Rational> infinite_moments(int k_max) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  InfiniteWalk<Count> walk;
  out.emplace_back(BigInt(walk.identity_count()), pow4(0));
  for (int k = 1; k <= k_max; ++k) {
    walk.advance();
    out.emplace_back(BigInt(walk.identity_count()), pow4(k));
  }
  return out;
}

template <class Count>
std::vector<Rational> finite_moments(int k_max, std::int64_t modulus) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  WalkState<Count> state(modulus);
  out.emplace_back(BigInt(state.identity_count()), pow4(0));
  for (int k = 1; k <= k_max; ++k) {
    state = state.next();
    out.emplace_back(BigInt(state.identity_count()), pow4(k));
  }
  return out;
}

}  // namespace detail

// Return moments (Δ^k δ_e, δ_e) for k = 0..k_max on H (no modulus) or H_N.
inline std::vector<Rational> return_moments(int k_max, Modulus modulus = std::nullopt) {
  require(k_max >= 0, "k must be non-negative, got " + std::to_string(k_max));
  if (!modulus) {
    require(k_max <= kMaxInfiniteSteps, "k = " + std::to_string(k_max) +
                                            " exceeds the infinite-group cap of " +
                                            std::to_string(kMaxInfiniteSteps));
    return detail::infinite_moments<std::uint64_t>(k_max);
  }
  require(*modulus >= 1, "modulus must be a positive integer, got " + std::to_string(*modulus));
  if (k_max <= kMaxSteps64) return detail::finite_moments<std::uint64_t>(k_max, *modulus);
  return detail::finite_moments<BigInt>(k_max, *modulus);
}

inline Rational return_moment(int k, Modulus modulus = std::nullopt) {
  return return_moments(k, modulus).back();
}

// True iff the moments on H and H_{n^2+1} agree exactly for every k <= n.
inline bool verify_moment_transfer(int n) {
  require(n >= 1, "n must be at least 1, got " + std::to_string(n));
  const std::int64_t modulus = static_cast<std::int64_t>(n) * n + 1;
  return return_moments(n) == return_moments(n, modulus);
}

// "p/q" in lowest terms.
inline std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace heisenspec
