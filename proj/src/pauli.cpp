#include "agpsched/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "agpsched/errors.hpp"

namespace agpsched {

namespace detail {

bool Bits::any() const {
  if (head != 0) return true;
  for (std::uint64_t w : tail)
    if (w != 0) return true;
  return false;
}

int popcount_and(const Bits& a, const Bits& b) {
  int n = std::popcount(a.head & b.head);
  for (std::size_t i = 0; i < a.tail.size(); ++i) n += std::popcount(a.tail[i] & b.tail[i]);
  return n;
}

void xor_assign(Bits& a, const Bits& b) {
  a.head ^= b.head;
  for (std::size_t i = 0; i < a.tail.size(); ++i) a.tail[i] ^= b.tail[i];
}

}  // namespace detail

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
  return h;
}

void check_site(int site, int n_sites) {
  if (site < 0 || site >= n_sites)
    throw ValidationError("site index " + std::to_string(site) + " out of range for " +
                          std::to_string(n_sites) + " sites");
}

void check_same_sites(int a, int b, const char* what) {
  if (a != b)
    throw ValidationError(std::string(what) + ": operand site counts differ (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

PauliString::PauliString(int n_sites) : n_sites_(n_sites), x_(n_sites), z_(n_sites) {
  if (n_sites <= 0) throw ValidationError("n_sites must be positive");
}

PauliString PauliString::single(int n_sites, int site, char op) {
  PauliString s(n_sites);
  s.set_site(site, op);
  return s;
}

PauliString PauliString::from_label(std::string_view label) {
  if (label.empty()) throw ValidationError("empty Pauli label");
  PauliString s(static_cast<int>(label.size()));
  for (std::size_t i = 0; i < label.size(); ++i) s.set_site(static_cast<int>(i), label[i]);
  return s;
}

bool PauliString::is_identity() const { return !x_.any() && !z_.any(); }

char PauliString::site_op(int site) const {
  check_site(site, n_sites_);
  const bool x = x_.test(site), z = z_.test(site);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_site(int site, char op) {
  check_site(site, n_sites_);
  switch (op) {
    case 'I': x_.set(site, false); z_.set(site, false); break;
    case 'X': x_.set(site, true); z_.set(site, false); break;
    case 'Y': x_.set(site, true); z_.set(site, true); break;
    case 'Z': x_.set(site, false); z_.set(site, true); break;
    default: throw ValidationError(std::string("invalid Pauli letter '") + op + "'");
  }
}

int PauliString::weight() const {
  int n = 0;
  for (int w = 0; w < x_.word_count(); ++w) n += std::popcount(x_.word(w) | z_.word(w));
  return n;
}

std::string PauliString::label() const {
  std::string out(static_cast<std::size_t>(n_sites_), 'I');
  for (int i = 0; i < n_sites_; ++i) out[static_cast<std::size_t>(i)] = site_op(i);
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_sites(n_sites_, other.n_sites_, "commutes_with");
  const int sym = detail::popcount_and(x_, other.z_) + detail::popcount_and(z_, other.x_);
  return (sym & 1) == 0;
}

PauliString PauliString::shifted(int offset) const {
  PauliString out(n_sites_);
  const int n = n_sites_;
  const int shift = ((offset % n) + n) % n;
  for (int i = 0; i < n; ++i) {
    const int j = (i + shift) % n;
    out.x_.set(j, x_.test(i));
    out.z_.set(j, z_.test(i));
  }
  return out;
}

PauliString::Product PauliString::multiply(const PauliString& a, const PauliString& b) {
  check_same_sites(a.n_sites_, b.n_sites_, "multiply");
  PauliString prod(a.n_sites_);
  prod.x_ = a.x_;
  prod.z_ = a.z_;
  detail::xor_assign(prod.x_, b.x_);
  detail::xor_assign(prod.z_, b.z_);
  // Phase bookkeeping in powers of i: each word is i^{#Y} X^x Z^z, and moving
  // Z past X contributes (-1) per crossing.
  int e = a.y_count() + b.y_count() - prod.y_count() + 2 * detail::popcount_and(a.z_, b.x_);
  e &= 3;
  static const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPhases[e], std::move(prod)};
}

std::size_t PauliString::hash() const {
  std::uint64_t h = kFnvOffset;
  h = fnv_mix(h, static_cast<std::uint64_t>(n_sites_));
  for (int w = 0; w < x_.word_count(); ++w) h = fnv_mix(h, x_.word(w));
  for (int w = 0; w < z_.word_count(); ++w) h = fnv_mix(h, z_.word(w));
  return static_cast<std::size_t>(h);
}

bool PauliString::operator<(const PauliString& o) const {
  if (n_sites_ != o.n_sites_) return n_sites_ < o.n_sites_;
  for (int w = x_.word_count() - 1; w >= 0; --w) {
    if (x_.word(w) != o.x_.word(w)) return x_.word(w) < o.x_.word(w);
    if (z_.word(w) != o.z_.word(w)) return z_.word(w) < o.z_.word(w);
  }
  return false;
}

void OperatorSum::add(const PauliString& s, Complex c) {
  check_same_sites(n_sites_, s.n_sites(), "OperatorSum::add");
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

Complex OperatorSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{0, 0} : it->second;
}

std::vector<std::pair<PauliString, Complex>> OperatorSum::sorted_terms() const {
  std::vector<std::pair<PauliString, Complex>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) { return axpy({1, 0}, o); }

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) { return axpy({-1, 0}, o); }

OperatorSum& OperatorSum::operator*=(Complex c) {
  if (std::abs(c) == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  prune();
  return *this;
}

OperatorSum& OperatorSum::axpy(Complex a, const OperatorSum& o) {
  check_same_sites(n_sites_, o.n_sites_, "OperatorSum arithmetic");
  for (const auto& [s, c] : o.terms_) add(s, a * c);
  return *this;
}

OperatorSum OperatorSum::dagger() const {
  OperatorSum out(n_sites_);
  for (const auto& [s, c] : terms_) out.add(s, std::conj(c));
  return out;
}

bool OperatorSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

void OperatorSum::prune(double threshold) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

std::string OperatorSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : sorted_terms()) {
    if (!first) os << " + ";
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)*"
       << s.label();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) {
  a += b;
  return a;
}

OperatorSum operator-(OperatorSum a, const OperatorSum& b) {
  a -= b;
  return a;
}

OperatorSum operator*(Complex c, OperatorSum a) {
  a *= c;
  return a;
}

OperatorSum multiply(const OperatorSum& a, const OperatorSum& b) {
  check_same_sites(a.n_sites(), b.n_sites(), "multiply");
  OperatorSum out(a.n_sites());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, prod] = PauliString::multiply(sa, sb);
      out.add(prod, phase * ca * cb);
    }
  }
  return out;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
  check_same_sites(a.n_sites(), b.n_sites(), "commutator");
  OperatorSum out(a.n_sites());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (sa.commutes_with(sb)) continue;  // commuting pairs cancel in AB - BA
      auto [phase, prod] = PauliString::multiply(sa, sb);
      out.add(prod, 2.0 * phase * ca * cb);
    }
  }
  return out;
}

Complex hs_inner(const OperatorSum& a, const OperatorSum& b) {
  check_same_sites(a.n_sites(), b.n_sites(), "hs_inner");
  const bool a_smaller = a.size() <= b.size();
  const OperatorSum& small = a_smaller ? a : b;
  const OperatorSum& large = a_smaller ? b : a;
  Complex acc{0, 0};
  for (const auto& [s, c] : small.terms()) {
    const Complex other = large.coefficient(s);
    if (other == Complex{0, 0}) continue;
    acc += a_smaller ? std::conj(c) * other : std::conj(other) * c;
  }
  return acc;
}

double hs_norm(const OperatorSum& a) {
  double acc = 0;
  for (const auto& [s, c] : a.terms()) acc += std::norm(c);
  return std::sqrt(acc);
}

Eigen::MatrixXcd dense_matrix(const OperatorSum& a, int dense_limit) {
  const int n = a.n_sites();
  if (n > dense_limit)
    throw CapacityError("dense_matrix: " + std::to_string(n) + " sites exceeds dense limit " +
                        std::to_string(dense_limit));
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  static const Complex kYPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [s, c] : a.terms()) {
    const std::uint64_t x = s.x_bits().head;
    const std::uint64_t z = s.z_bits().head;
    const Complex base = c * kYPhase[s.y_count() & 3];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t row = col ^ x;
      const double sign = (std::popcount(z & col) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += base * sign;
    }
  }
  return m;
}

}  // namespace agpsched
