#include "spectra/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

long long det_ll(const Eigen::MatrixXi& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 1) return m(0, 0);
    long long acc = 0;
    Eigen::MatrixXi minor(n - 1, n - 1);
    for (int c = 0; c < n; ++c) {
        for (int i = 1; i < n; ++i) {
            int k = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, k++) = m(i, j);
            }
        }
        long long cof = det_ll(minor);
        acc += (c % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(m(0, c)) * cof;
    }
    return acc;
}

Eigen::MatrixXi adjugate_of(const Eigen::MatrixXi& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXi adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    Eigen::MatrixXi minor(n - 1, n - 1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int mi = 0;
            for (int i = 0; i < n; ++i) {
                if (i == r) continue;
                int mj = 0;
                for (int j = 0; j < n; ++j) {
                    if (j == c) continue;
                    minor(mi, mj++) = m(i, j);
                }
                ++mi;
            }
            long long cof = det_ll(minor);
            if ((r + c) % 2 != 0) cof = -cof;
            adj(c, r) = static_cast<int>(cof);   // transpose of cofactor matrix
        }
    }
    return adj;
}

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::vector<int> key_of(const Eigen::VectorXi& v) {
    return std::vector<int>(v.data(), v.data() + v.size());
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

/// Integer points of the half-open cell {B x : x in [0,1)^d}: bounding-box
/// scan with the exact membership test floor((adj*n)_i / det) == 0.
std::vector<Eigen::VectorXi> cell_points(const Eigen::MatrixXi& basis,
                                         const Eigen::MatrixXi& adj, long long det) {
    const int d = static_cast<int>(basis.rows());
    Eigen::VectorXi lo = Eigen::VectorXi::Zero(d), hi = Eigen::VectorXi::Zero(d);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Eigen::VectorXi v = Eigen::VectorXi::Zero(d);
        for (int i = 0; i < d; ++i)
            if (mask >> i & 1u) v += basis.col(i);
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    std::vector<Eigen::VectorXi> pts;
    Eigen::VectorXi n = lo;
    while (true) {
        bool inside = true;
        for (int i = 0; i < d && inside; ++i) {
            long long num = 0;
            for (int j = 0; j < d; ++j) num += static_cast<long long>(adj(i, j)) * n[j];
            inside = floordiv(num, det) == 0;
        }
        if (inside) pts.push_back(n);
        int axis = 0;
        while (axis < d) {
            if (++n[axis] <= hi[axis]) break;
            n[axis] = lo[axis];
            ++axis;
        }
        if (axis == d) break;
    }
    std::sort(pts.begin(), pts.end(), lex_less);
    return pts;
}

long long smallest_prime_factor(long long n) {
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

} // namespace

Lattice::Lattice(const Eigen::MatrixXi& basis) : basis_(basis) {
    if (basis.rows() != basis.cols() || basis.rows() < 1)
        throw DimensionMismatch("lattice basis must be a square d x d matrix, d >= 1");
    dim_ = static_cast<int>(basis.rows());
    det_ = det_ll(basis_);
    if (det_ == 0) throw SingularBasis("lattice basis has zero determinant");
    index_ = det_ < 0 ? -det_ : det_;
    adj_ = adjugate_of(basis_);

    primal_reps_ = cell_points(basis_, adj_, det_);
    if (static_cast<long long>(primal_reps_.size()) != index_)
        throw std::logic_error("coset enumeration does not match |det|");
    for (int i = 0; i < static_cast<int>(primal_reps_.size()); ++i)
        primal_lookup_[key_of(primal_reps_[i])] = i;

    // Dual quotient Gamma'/Z^d ~ Z^d / basis^T Z^d: walk the transpose cell,
    // map k -> N * (dual_basis * k) mod N.
    const Eigen::MatrixXi bt = basis_.transpose();
    const Eigen::MatrixXi adj_t = adjugate_of(bt);
    const long long sign = det_ < 0 ? -1 : 1;
    std::vector<Eigen::VectorXi> nums;
    for (const auto& k : cell_points(bt, adj_t, det_)) {
        Eigen::VectorXi m(dim_);
        for (int i = 0; i < dim_; ++i) {
            long long acc = 0;
            // N * (adj^T / det) * k = sign(det) * adj^T * k
            for (int j = 0; j < dim_; ++j) acc += static_cast<long long>(adj_(j, i)) * k[j];
            acc *= sign;
            acc %= index_;
            if (acc < 0) acc += index_;
            m[i] = static_cast<int>(acc);
        }
        nums.push_back(m);
    }
    std::sort(nums.begin(), nums.end(), lex_less);
    dual_nums_ = std::move(nums);
    for (int i = 0; i + 1 < static_cast<int>(dual_nums_.size()); ++i)
        if (dual_nums_[i] == dual_nums_[i + 1])
            throw std::logic_error("dual coset enumeration produced duplicates");
    if (static_cast<long long>(dual_nums_.size()) != index_)
        throw std::logic_error("dual coset enumeration does not match |det|");
    for (int i = 0; i < static_cast<int>(dual_nums_.size()); ++i)
        dual_lookup_[key_of(dual_nums_[i])] = i;
    zero_dual_index_ = dual_lookup_.at(key_of(Eigen::VectorXi::Zero(dim_)));
}

Eigen::MatrixXd Lattice::dual_basis() const {
    return adj_.transpose().cast<double>() / static_cast<double>(det_);
}

Rational Lattice::dual_basis_entry(int i, int j) const {
    return Rational(adj_(j, i), det_);
}

double Lattice::max_dual_basis_norm() const {
    const Eigen::MatrixXd b = dual_basis();
    double m = 0;
    for (int j = 0; j < dim_; ++j) m = std::max(m, b.col(j).norm());
    return m;
}

Eigen::VectorXd Lattice::dual_rep(int i) const {
    return dual_nums_.at(i).cast<double>() / static_cast<double>(index_);
}

RationalVector Lattice::dual_rep_exact(int i) const {
    RationalVector v(dim_);
    for (int k = 0; k < dim_; ++k) v[k] = Rational(dual_nums_.at(i)[k], index_);
    return v;
}

std::pair<Eigen::VectorXi, Eigen::VectorXi> Lattice::reduce(const Eigen::VectorXi& point) const {
    if (point.size() != dim_) throw DimensionMismatch("point dimension does not match lattice");
    Eigen::VectorXi q(dim_);
    for (int i = 0; i < dim_; ++i) {
        long long num = 0;
        for (int j = 0; j < dim_; ++j) num += static_cast<long long>(adj_(i, j)) * point[j];
        q[i] = static_cast<int>(floordiv(num, det_));
    }
    Eigen::VectorXi shift = basis_ * q;
    return {point - shift, shift};
}

int Lattice::rep_index(const Eigen::VectorXi& point) const {
    return primal_lookup_.at(key_of(reduce(point).first));
}

bool Lattice::contains(const Eigen::VectorXi& point) const {
    if (point.size() != dim_) throw DimensionMismatch("point dimension does not match lattice");
    for (int i = 0; i < dim_; ++i) {
        long long num = 0;
        for (int j = 0; j < dim_; ++j) num += static_cast<long long>(adj_(i, j)) * point[j];
        if (num % det_ != 0) return false;
    }
    return true;
}

bool Lattice::dual_contains(const RationalVector& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw DimensionMismatch("vector dimension does not match lattice");
    for (int i = 0; i < dim_; ++i) {
        Rational dot(0);
        for (int j = 0; j < dim_; ++j) dot = dot + Rational(basis_(j, i)) * v[j];
        if (!dot.is_integer()) return false;
    }
    return true;
}

int Lattice::dual_index_of_nums(const Eigen::VectorXi& nums_mod_N) const {
    return dual_lookup_.at(key_of(nums_mod_N));
}

int Lattice::dual_diff_index(int b, int c) const {
    Eigen::VectorXi m(dim_);
    const long long N = index_;
    for (int i = 0; i < dim_; ++i) {
        long long v = (dual_nums_.at(b)[i] - dual_nums_.at(c)[i]) % N;
        if (v < 0) v += N;
        m[i] = static_cast<int>(v);
    }
    return dual_index_of_nums(m);
}

bool Lattice::is_even() const {
    RationalVector half(dim_, Rational(1, 2));
    const bool by_membership = dual_contains(half);
    bool by_parity = true;
    for (int j = 0; j < dim_ && by_parity; ++j) {
        long long s = 0;
        for (int i = 0; i < dim_; ++i) s += basis_(i, j);
        by_parity = (s % 2) == 0;
    }
    if (by_membership != by_parity)
        throw std::logic_error("evenness tests disagree");
    return by_membership;
}

long long Lattice::dual_direction_gcd(const Eigen::VectorXi& signs) const {
    long long g = 0;
    for (int i = 0; i < dim_; ++i) {
        long long dot = 0;
        for (int j = 0; j < dim_; ++j) dot += static_cast<long long>(basis_(j, i)) * signs[j];
        g = std::gcd(g, dot < 0 ? -dot : dot);
    }
    return g;   // never 0 for a full-rank basis and signs != 0
}

DivisibilityResult Lattice::divisibility() const {
    DivisibilityResult result;
    result.divisible = true;
    for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
        Eigen::VectorXi eps(dim_);
        for (int i = 0; i < dim_; ++i) eps[i] = (mask >> i & 1u) ? 1 : -1;
        for (int j = 0; j < dim_; ++j) {
            bool found = false;
            for (int flip = 0; flip < 2 && !found; ++flip) {
                Eigen::VectorXi s = eps;
                if (flip) s[j] = -s[j];
                const long long g = dual_direction_gcd(s);
                if (g >= 2) {
                    DivisibilityWitness w;
                    w.signs = eps;
                    w.axis = j;
                    w.p = smallest_prime_factor(g);
                    w.vector.resize(dim_);
                    for (int i = 0; i < dim_; ++i) w.vector[i] = Rational(s[i], w.p);
                    result.witnesses.push_back(std::move(w));
                    found = true;
                }
            }
            if (!found) {
                result.divisible = false;
                result.witnesses.clear();
                result.failing = std::make_pair(eps, j);
                return result;
            }
        }
    }
    return result;
}

} // namespace spectra
