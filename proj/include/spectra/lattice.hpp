#ifndef SPECTRA_LATTICE_HPP
#define SPECTRA_LATTICE_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spectra/rational.hpp"

namespace spectra {

struct DivisibilityWitness {
    Eigen::VectorXi signs;   // the sign pattern epsilon
    int axis = 0;            // the coordinate j whose sign was free
    long long p = 0;         // p >= 2 with (1/p)*signs in the dual lattice
    RationalVector vector;   // (1/p)*signs
};

struct DivisibilityResult {
    bool divisible = false;
    // one satisfying witness per (sign pattern, axis) when divisible
    std::vector<DivisibilityWitness> witnesses;
    // first failing (sign pattern, axis) pair otherwise
    std::optional<std::pair<Eigen::VectorXi, int>> failing;
};

/// Full-rank sublattice of Z^d given by an integer basis matrix whose columns
/// generate it. Everything here is exact integer/rational arithmetic: the
/// dual basis is the inverse transpose (adjugate over the determinant), the
/// N = |det| coset representatives of Z^d/Gamma are the integer points of the
/// half-open basis parallelepiped, and the dual representatives of
/// Gamma'/Z^d are stored as integer numerators over the common denominator N.
/// Immutable after construction; all queries are const and thread-safe.
class Lattice {
public:
    explicit Lattice(const Eigen::MatrixXi& basis);

    int dim() const { return dim_; }
    long long index() const { return index_; }          // N = |det basis|
    long long det() const { return det_; }              // signed determinant
    const Eigen::MatrixXi& basis() const { return basis_; }
    const Eigen::MatrixXi& adjugate() const { return adj_; }

    /// Dual basis b_1..b_d as columns; exact value is adjugate^T / det.
    Eigen::MatrixXd dual_basis() const;
    Rational dual_basis_entry(int i, int j) const;      // (b_j)_i
    double max_dual_basis_norm() const;

    /// Canonical primal representatives (integer points of the basis cell,
    /// lexicographically sorted). Size N.
    const std::vector<Eigen::VectorXi>& primal_reps() const { return primal_reps_; }

    /// Canonical dual representatives: dual_numerators()[i] / N, componentwise
    /// in [0,1), lexicographically sorted. Size N.
    const std::vector<Eigen::VectorXi>& dual_numerators() const { return dual_nums_; }
    Eigen::VectorXd dual_rep(int i) const;
    RationalVector dual_rep_exact(int i) const;

    /// Fold an arbitrary integer point: point = rep + shift with rep a
    /// canonical representative and shift in Gamma.
    std::pair<Eigen::VectorXi, Eigen::VectorXi> reduce(const Eigen::VectorXi& point) const;
    int rep_index(const Eigen::VectorXi& point) const;

    bool contains(const Eigen::VectorXi& point) const;          // point in Gamma
    bool dual_contains(const RationalVector& v) const;          // v in Gamma'

    /// Index of (dual_rep(b) - dual_rep(c)) reduced mod Z^d.
    int dual_diff_index(int b, int c) const;
    int dual_neg_index(int b) const { return dual_diff_index(zero_dual_index_, b); }
    int zero_dual_index() const { return zero_dual_index_; }

    bool is_even() const;
    DivisibilityResult divisibility() const;

    /// gcd of the components of basis^T * signs; (1/p)*signs lies in Gamma'
    /// for some p >= 2 iff this is >= 2.
    long long dual_direction_gcd(const Eigen::VectorXi& signs) const;

private:
    int dim_;
    Eigen::MatrixXi basis_;
    Eigen::MatrixXi adj_;        // adjugate: basis * adj = det * I
    long long det_ = 0;
    long long index_ = 0;
    std::vector<Eigen::VectorXi> primal_reps_;
    std::vector<Eigen::VectorXi> dual_nums_;
    std::map<std::vector<int>, int> primal_lookup_;
    std::map<std::vector<int>, int> dual_lookup_;
    int zero_dual_index_ = 0;

    int dual_index_of_nums(const Eigen::VectorXi& nums_mod_N) const;
};

} // namespace spectra

#endif
