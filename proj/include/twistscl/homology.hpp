#pragma once

// Action of the chain twists t_1..t_{2g+1} on H_1 of the closed genus-g surface,
// in the symplectic basis a_1, b_1, ..., a_g, b_g with <a_i, b_i> = +1.
//
// Everything passing here is a homology-level verification: a necessary
// condition for the corresponding mapping class relation, never a proof of it.

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <json.hpp>

#include "twistscl/numeric.hpp"
#include "twistscl/trace_words.hpp"

namespace twistscl {

template <typename Scalar = BigInt>
using SymplecticMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = BigInt>
using HomologyClass = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline Eigen::Index a_coord(int i) { return 2 * (i - 1); }
inline Eigen::Index b_coord(int i) { return 2 * (i - 1) + 1; }

inline void require_genus(int g) {
  if (g < 1) throw std::invalid_argument("genus must be >= 1, got " + std::to_string(g));
}

template <typename Scalar = BigInt>
SymplecticMatrix<Scalar> intersection_form(int g) {
  require_genus(g);
  SymplecticMatrix<Scalar> J = SymplecticMatrix<Scalar>::Zero(2 * g, 2 * g);
  for (int i = 1; i <= g; ++i) {
    J(a_coord(i), b_coord(i)) = Scalar(1);
    J(b_coord(i), a_coord(i)) = Scalar(-1);
  }
  return J;
}

/// <x, y> = x^T J y, evaluated without forming J.
template <typename Derived1, typename Derived2>
typename Derived1::Scalar intersection(const Eigen::MatrixBase<Derived1>& x, const Eigen::MatrixBase<Derived2>& y) {
  using Scalar = typename Derived1::Scalar;
  Scalar sum(0);
  for (Eigen::Index c = 0; c + 1 < x.size(); c += 2) sum += x(c) * y(c + 1) - x(c + 1) * y(c);
  return sum;
}

/// J v, evaluated without forming J.
template <typename Derived>
HomologyClass<typename Derived::Scalar> form_dual(const Eigen::MatrixBase<Derived>& v) {
  HomologyClass<typename Derived::Scalar> out(v.size());
  for (Eigen::Index c = 0; c + 1 < v.size(); c += 2) {
    out(c) = v(c + 1);
    out(c + 1) = -v(c);
  }
  return out;
}

/// Classes of the chain curves c_1..c_{2g+1}: v_{2i-1} = a_i - a_{i-1} (a_0 = 0),
/// v_{2i} = b_i, v_{2g+1} = -a_g. Consecutive classes pair to +1, others to 0.
template <typename Scalar = BigInt>
std::vector<HomologyClass<Scalar>> chain_classes(int g) {
  require_genus(g);
  std::vector<HomologyClass<Scalar>> out;
  out.reserve(static_cast<std::size_t>(2 * g + 1));
  for (int i = 1; i <= g; ++i) {
    HomologyClass<Scalar> odd = HomologyClass<Scalar>::Zero(2 * g);
    odd(a_coord(i)) = Scalar(1);
    if (i > 1) odd(a_coord(i - 1)) = Scalar(-1);
    out.push_back(std::move(odd));
    HomologyClass<Scalar> even = HomologyClass<Scalar>::Zero(2 * g);
    even(b_coord(i)) = Scalar(1);
    out.push_back(std::move(even));
  }
  HomologyClass<Scalar> last = HomologyClass<Scalar>::Zero(2 * g);
  last(a_coord(g)) = Scalar(-1);
  out.push_back(std::move(last));
  return out;
}

inline void require_curve(int g, int i) {
  if (i < 1 || i > 2 * g + 1)
    throw std::out_of_range("twist index " + std::to_string(i) + " outside 1.." + std::to_string(2 * g + 1));
}

/// Transvection x -> x + sign <x, v_i> v_i; sign = -1 gives the inverse twist.
template <typename Scalar = BigInt>
SymplecticMatrix<Scalar> twist_matrix(int g, int i, int sign = 1) {
  require_genus(g);
  require_curve(g, i);
  const auto v = chain_classes<Scalar>(g)[static_cast<std::size_t>(i - 1)];
  const HomologyClass<Scalar> dual = form_dual(v);
  SymplecticMatrix<Scalar> M = SymplecticMatrix<Scalar>::Identity(2 * g, 2 * g);
  M += Scalar(sign) * (v * dual.transpose());
  return M;
}

/// Product of twist matrices, left to right. Letters act as rank-one updates
/// so a word of length L costs O(L g^2).
template <typename Scalar = BigInt>
SymplecticMatrix<Scalar> evaluate(const Word& word, int g) {
  require_genus(g);
  const auto classes = chain_classes<Scalar>(g);
  std::vector<HomologyClass<Scalar>> duals;
  duals.reserve(classes.size());
  for (const auto& v : classes) duals.push_back(form_dual(v));

  SymplecticMatrix<Scalar> M = SymplecticMatrix<Scalar>::Identity(2 * g, 2 * g);
  for (const auto& letter : word.letters()) {
    require_curve(g, letter.index);
    const auto k = static_cast<std::size_t>(letter.index - 1);
    // M * (I + s v w^T) = M + s (M v) w^T
    const HomologyClass<Scalar> Mv = M * classes[k];
    if (letter.sign > 0)
      M += Mv * duals[k].transpose();
    else
      M -= Mv * duals[k].transpose();
  }
  return M;
}

template <typename Scalar>
SymplecticMatrix<Scalar> matrix_power(SymplecticMatrix<Scalar> base, unsigned exponent) {
  SymplecticMatrix<Scalar> result = SymplecticMatrix<Scalar>::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1u) result = (result * base).eval();
    exponent >>= 1;
    if (exponent > 0) base = (base * base).eval();
  }
  return result;
}

template <typename Scalar>
bool is_symplectic(const SymplecticMatrix<Scalar>& M) {
  const int g = static_cast<int>(M.rows() / 2);
  const auto J = intersection_form<Scalar>(g);
  return SymplecticMatrix<Scalar>(M.transpose() * J * M) == J;
}

/// Fraction-free (Bareiss) determinant; exact for integer scalars, unlike
/// the pivoted LU behind Eigen's determinant().
template <typename Scalar>
Scalar bareiss_determinant(SymplecticMatrix<Scalar> A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1), previous(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == Scalar(0)) {
      Eigen::Index swap = k + 1;
      while (swap < n && A(swap, k) == Scalar(0)) ++swap;
      if (swap == n) return Scalar(0);
      A.row(k).swap(A.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / previous;
    previous = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// Outcome of one homology-level relation check.
struct HomologyCheck {
  std::string name;
  nlohmann::json params;
  bool passed = false;
  std::string max_deviation = "0";  // max |actual - expected| entry

  explicit operator bool() const { return passed; }
  nlohmann::json to_json() const;
};

/// Compares `actual` against `expected` and fills in deviation diagnostics.
HomologyCheck compare_matrices(std::string name, nlohmann::json params, const SymplecticMatrix<>& actual,
                               const SymplecticMatrix<>& expected);

/// Word t_first t_{first+1} ... t_last (descending when first > last).
Word twist_run(int g, int first, int last);
/// `w` repeated `times` times.
Word word_power(const Word& w, int times);

/// rho((t_1 ... t_{2h})^exponent) == I; exponent 4h+2 is the even chain relation.
HomologyCheck check_chain_relation(int g, int h);
HomologyCheck check_chain_relation(int g, int h, int exponent);

/// rho(iota) == -I and rho(iota) commutes with every rho(t_i).
HomologyCheck check_hyperelliptic(int g);

/// rho(T_1)^exponent == I and rho(T_{k+2})^exponent == I; default exponent 4h.
HomologyCheck check_T1_power(int g, int h);
HomologyCheck check_T1_power(int g, int h, int exponent);

struct ChainBlock;
/// rho(T_1 ... T_{k+2} S) == -I, i.e. T_1 ... T_{k+2} = iota S^-1 on homology.
HomologyCheck check_eq5(int g, int h);
HomologyCheck check_eq5(int g, std::span<const ChainBlock> blocks);

/// Braid relation for every adjacent pair of chain twists.
HomologyCheck check_braid_relations(int g);
/// Commutation for every pair of chain twists at distance >= 2.
HomologyCheck check_commutation_relations(int g);
/// Every twist matrix preserves J and has determinant 1.
HomologyCheck check_twists_symplectic(int g);

}  // namespace twistscl
