#include "univariate.hpp"

#include <cstdint>
#include <stdexcept>

namespace fkdet::detail {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

IntPoly primitive_part(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) g = ::gcd(g, c);
  if (g == 0) return {};
  if (p.back() < 0) g = -g;
  IntPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mpz_divexact(out[i].get_mpz_t(), p[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

void pseudo_divide(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
  if (b.empty()) throw std::domain_error("pseudo_divide by zero");
  r = a;
  trim(r);
  const int db = degree(b);
  const int da = degree(r);
  if (da < db) {
    q.clear();
    return;
  }
  q.assign(da - db + 1, Integer(0));
  const Integer& lead = b.back();
  for (int k = da; k >= db; --k) {
    // Invariant: r has been scaled so that all remaining steps keep integrality.
    for (auto& c : q) c *= lead;
    for (auto& c : r) c *= lead;
    const Integer t = r[k] / lead;  // exact after scaling
    q[k - db] += t;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= t * b[j];
  }
  trim(r);
  trim(q);
}

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  IntPoly q, r;
  while (!b.empty()) {
    pseudo_divide(a, b, q, r);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const Integer& x) { return mpz_fdiv_ui(x.get_mpz_t(), kPrime); }

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly mod_remainder(ModPoly a, const ModPoly& b) {
  const std::uint64_t inv = powmod(b.back(), kPrime - 2);
  while (a.size() >= b.size()) {
    const std::uint64_t t = mulmod(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t sub = mulmod(t, b[j]);
      std::uint64_t& c = a[shift + j];
      c = c >= sub ? c - sub : c + kPrime - sub;
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool squarefree_mod_prime(const IntPoly& p) {
  if (p.empty()) return false;
  ModPoly a, b;
  for (const auto& c : p) a.push_back(reduce(c));
  if (a.back() == 0) return false;
  for (std::size_t i = 1; i < a.size(); ++i) b.push_back(mulmod(a[i], i % kPrime));
  trim(b);
  if (b.empty()) return a.size() <= 1;
  while (!b.empty()) {
    ModPoly r = mod_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

std::vector<IntPoly> squarefree_layers(const IntPoly& p0) {
  std::vector<IntPoly> layers;
  IntPoly p = primitive_part(p0);
  while (degree(p) >= 1) {
    if (squarefree_mod_prime(p)) {
      layers.push_back(p);
      break;
    }
    IntPoly g = gcd(p, derivative(p));
    if (degree(g) <= 0) {
      layers.push_back(p);
      break;
    }
    IntPoly q, r;
    pseudo_divide(p, g, q, r);
    if (!r.empty()) throw std::logic_error("squarefree_layers: gcd does not divide");
    layers.push_back(primitive_part(q));
    p = std::move(g);
  }
  return layers;
}

}  // namespace fkdet::detail
