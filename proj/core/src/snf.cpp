#include "tcrcalc/abelian.hpp"
#include "tcrcalc/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tcrcalc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw AlgebraError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw AlgebraError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw AlgebraError("vector length mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
  if (right.rows_ != rows_) throw AlgebraError("hstack row mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& below) const {
  if (below.cols_ != cols_) throw AlgebraError("vstack column mismatch");
  IntMatrix m(rows_ + below.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = below(i, j);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw AlgebraError("matrix product shape mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("matrix sum shape mismatch");
  IntMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("matrix difference shape mismatch");
  IntMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Elementary operations applied to A while maintaining U A V = D bookkeeping.
struct SnfState {
  IntMatrix A, U, Ui, V, Vi;

  void add_row(std::size_t dst, std::size_t src, const Integer& k) {  // row dst += k row src
    if (sgn(k) == 0) return;
    for (std::size_t j = 0; j < A.cols(); ++j) A(dst, j) += k * A(src, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(dst, j) += k * U(src, j);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, src) -= k * Ui(i, dst);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {  // col dst += k col src
    if (sgn(k) == 0) return;
    for (std::size_t i = 0; i < A.rows(); ++i) A(i, dst) += k * A(i, src);
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, dst) += k * V(i, src);
    for (std::size_t j = 0; j < Vi.cols(); ++j) Vi(src, j) -= k * Vi(dst, j);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t i = 0; i < Ui.rows(); ++i) std::swap(Ui(i, a), Ui(i, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    for (std::size_t j = 0; j < Vi.cols(); ++j) std::swap(Vi(a, j), Vi(b, j));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) = -A(r, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, r) = -Ui(i, r);
  }
};

}  // namespace

IntVector SmithForm::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  SnfState s{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c),
             IntMatrix::identity(c)};
  std::size_t t = 0;
  while (t < std::min(r, c)) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (sgn(s.A(i, j)) != 0 && (!found || abs(s.A(i, j)) < best)) {
          found = true;
          best = abs(s.A(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(s.A(i, t)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(i, t).get_mpz_t(), s.A(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        if (sgn(s.A(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(s.A(t, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(t, j).get_mpz_t(), s.A(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        if (sgn(s.A(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot.
        Integer b = abs(s.A(t, t));
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (sgn(s.A(i, t)) != 0 && abs(s.A(i, t)) < b) {
            b = abs(s.A(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < c; ++j)
          if (sgn(s.A(t, j)) != 0 && abs(s.A(t, j)) < b) {
            b = abs(s.A(t, j));
            bi = t;
            bj = j;
          }
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // Divisibility: pull in any trailing entry not divisible by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (sgn(s.A(i, j)) != 0 && !mpz_divisible_p(s.A(i, j).get_mpz_t(), s.A(t, t).get_mpz_t())) {
            s.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (sgn(s.A(t, t)) < 0) s.negate_row(t);
    ++t;
  }
  SmithForm out;
  out.rank = t;
  out.D = std::move(s.A);
  out.U = std::move(s.U);
  out.U_inv = std::move(s.Ui);
  out.V = std::move(s.V);
  out.V_inv = std::move(s.Vi);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = f.rank; j < m.cols(); ++j) idx.push_back(j);
  return f.V.select_cols(idx);
}

IntMatrix lattice_basis(const IntMatrix& gens) {
  SmithForm f = smith_normal_form(gens);
  IntMatrix b(gens.rows(), f.rank);
  for (std::size_t j = 0; j < f.rank; ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) b(i, j) = f.U_inv(i, j) * f.D(j, j);
  return b;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw AlgebraError("solve: right-hand side length mismatch");
  SmithForm f = smith_normal_form(m);
  IntVector ub = f.U.apply(b);
  IntVector y(m.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), f.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), f.D(i, i).get_mpz_t());
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return f.V.apply(y);
}

}  // namespace tcrcalc
