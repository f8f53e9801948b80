#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace agpsched {

using Complex = std::complex<double>;

/// Coefficients with magnitude below this are dropped when terms are collected.
inline constexpr double kPruneThreshold = 1e-14;

/// Largest n_sites for which dense 2^n x 2^n matrices may be materialized.
inline constexpr int kDefaultDenseLimit = 12;

namespace detail {

// Bit mask over sites with an inline fast path for n <= 64 sites.
// Word 0 holds bits 0..63; further words live in `tail`.
struct Bits {
  std::uint64_t head = 0;
  std::vector<std::uint64_t> tail;

  Bits() = default;
  explicit Bits(int n_bits) : tail(n_bits > 64 ? (n_bits + 63) / 64 - 1 : 0, 0) {}

  int word_count() const { return 1 + static_cast<int>(tail.size()); }
  std::uint64_t word(int w) const { return w == 0 ? head : tail[static_cast<std::size_t>(w) - 1]; }
  std::uint64_t& word(int w) { return w == 0 ? head : tail[static_cast<std::size_t>(w) - 1]; }

  bool test(int i) const { return (word(i >> 6) >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    std::uint64_t& w = word(i >> 6);
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    w = v ? (w | bit) : (w & ~bit);
  }
  bool any() const;
  bool operator==(const Bits& o) const { return head == o.head && tail == o.tail; }
};

int popcount_and(const Bits& a, const Bits& b);
void xor_assign(Bits& a, const Bits& b);

}  // namespace detail

/// A Pauli word: one of I, X, Y, Z per site, encoded as two bit masks
/// (x bit set for X/Y, z bit set for Z/Y). The word denotes the self-adjoint
/// tensor product, so Y really is Y; phases produced by products are returned
/// or folded into OperatorSum coefficients, never stored on the string.
/// Site 0 is the least significant bit of a basis-state index.
class PauliString {
 public:
  explicit PauliString(int n_sites);

  static PauliString identity(int n_sites) { return PauliString(n_sites); }
  static PauliString single(int n_sites, int site, char op);
  /// Parse e.g. "XIZY" (site 0 first). Length fixes n_sites.
  static PauliString from_label(std::string_view label);

  int n_sites() const { return n_sites_; }
  bool is_identity() const;
  char site_op(int site) const;
  void set_site(int site, char op);
  /// Number of non-identity sites.
  int weight() const;
  /// Number of sites carrying Y.
  int y_count() const { return detail::popcount_and(x_, z_); }
  std::string label() const;

  /// True iff the two words commute (symplectic form vanishes).
  bool commutes_with(const PauliString& other) const;

  /// Cyclic site shift by `offset` (site i -> site (i+offset) mod n).
  PauliString shifted(int offset) const;

  struct Product {
    Complex phase;  // one of {1, i, -1, -i}
    PauliString string;
  };
  /// a * b = phase * string in the self-adjoint convention.
  static Product multiply(const PauliString& a, const PauliString& b);

  const detail::Bits& x_bits() const { return x_; }
  const detail::Bits& z_bits() const { return z_; }

  std::size_t hash() const;
  bool operator==(const PauliString& o) const {
    return n_sites_ == o.n_sites_ && x_ == o.x_ && z_ == o.z_;
  }
  /// Fixed total order used for deterministic serialization.
  bool operator<(const PauliString& o) const;

 private:
  int n_sites_;
  detail::Bits x_;
  detail::Bits z_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& s) const { return s.hash(); }
};

/// A complex-weighted sum of Pauli words on a fixed number of sites.
/// Hermitian operators have real coefficients in this convention.
class OperatorSum {
 public:
  using TermMap = std::unordered_map<PauliString, Complex, PauliStringHash>;

  explicit OperatorSum(int n_sites) : n_sites_(n_sites) {}

  int n_sites() const { return n_sites_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Accumulate c * s; the stored coefficient is erased if it falls below
  /// the prune threshold.
  void add(const PauliString& s, Complex c);
  Complex coefficient(const PauliString& s) const;

  const TermMap& terms() const { return terms_; }
  /// Terms in the fixed string order (deterministic across runs).
  std::vector<std::pair<PauliString, Complex>> sorted_terms() const;

  OperatorSum& operator+=(const OperatorSum& o);
  OperatorSum& operator-=(const OperatorSum& o);
  OperatorSum& operator*=(Complex c);
  /// this += a * o
  OperatorSum& axpy(Complex a, const OperatorSum& o);

  OperatorSum dagger() const;
  bool is_hermitian(double tol = 1e-12) const;
  void prune(double threshold = kPruneThreshold);

  std::string to_string() const;

 private:
  int n_sites_;
  TermMap terms_;
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);
OperatorSum operator-(OperatorSum a, const OperatorSum& b);
OperatorSum operator*(Complex c, OperatorSum a);

/// Full operator product AB with term collection.
OperatorSum multiply(const OperatorSum& a, const OperatorSum& b);

/// AB - BA. Only anticommuting string pairs contribute (each with weight 2).
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

/// Rescaled Hilbert-Schmidt inner product (1/D) Tr(A^dag B). Pauli words are
/// orthonormal under it, so this is a sum over shared strings.
Complex hs_inner(const OperatorSum& a, const OperatorSum& b);

/// sqrt(<A,A>), always real and nonnegative.
double hs_norm(const OperatorSum& a);

/// Materialize the 2^n x 2^n matrix. Throws CapacityError above dense_limit.
Eigen::MatrixXcd dense_matrix(const OperatorSum& a, int dense_limit = kDefaultDenseLimit);

}  // namespace agpsched
