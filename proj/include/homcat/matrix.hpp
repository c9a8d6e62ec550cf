#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "homcat/field.hpp"

namespace homcat {

// Sparse matrix over an exact field. Column-vector convention: a matrix
// with shape (rows x cols) maps coordinate vectors of length cols to
// vectors of length rows. Stored entries are always nonzero.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix(F field, int rows, int cols) : field_(field), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
  }

  static Matrix identity(F field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  void set(int r, int c, const Elem& v) {
    check_index(r, c);
    if (field_.is_zero(v))
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  Elem get(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? field_.zero() : it->second;
  }

  void add_to(int r, int c, const Elem& v) { set(r, c, field_.add(get(r, c), v)); }

  const std::map<std::pair<int, int>, Elem>& entries() const& { return entries_; }
  // Forbidden on temporaries: iterating entries of an rvalue Matrix dangles.
  void entries() && = delete;
  void entries() const&& = delete;
  bool is_zero() const { return entries_.empty(); }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
  }

  Matrix add(const Matrix& other) const {
    require_same_field(other);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("matrix shape mismatch in add");
    Matrix out = *this;
    for (const auto& [rc, v] : other.entries_) out.add_to(rc.first, rc.second, v);
    return out;
  }

  Matrix sub(const Matrix& other) const { return add(other.scale(field_.neg(field_.one()))); }

  Matrix scale(const Elem& s) const {
    Matrix out(field_, rows_, cols_);
    if (field_.is_zero(s)) return out;
    for (const auto& [rc, v] : entries_) out.set(rc.first, rc.second, field_.mul(s, v));
    return out;
  }

  Matrix mul(const Matrix& other) const {
    require_same_field(other);
    if (cols_ != other.rows_) throw Error("matrix shape mismatch in mul");
    Matrix out(field_, rows_, other.cols_);
    // group rhs entries by row for the sparse product
    std::map<int, std::vector<std::pair<int, Elem>>> rhs_rows;
    for (const auto& [rc, v] : other.entries_) rhs_rows[rc.first].push_back({rc.second, v});
    for (const auto& [rc, v] : entries_) {
      auto it = rhs_rows.find(rc.second);
      if (it == rhs_rows.end()) continue;
      for (const auto& [c2, w] : it->second) out.add_to(rc.first, c2, field_.mul(v, w));
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (const auto& [rc, v] : entries_) out.set(rc.second, rc.first, v);
    return out;
  }

  std::vector<Elem> apply(const std::vector<Elem>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error("vector length mismatch in apply");
    std::vector<Elem> y(rows_, field_.zero());
    for (const auto& [rc, v] : entries_) {
      if (!field_.is_zero(x[rc.second]))
        y[rc.first] = field_.add(y[rc.first], field_.mul(v, x[rc.second]));
    }
    return y;
  }

  void require_same_field(const Matrix& other) const {
    if (!field_.same_as(other.field_)) throw Error("mixed-field matrix operation");
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("matrix index out of range");
  }

  F field_;
  int rows_;
  int cols_;
  std::map<std::pair<int, int>, Elem> entries_;
};

template <class F>
struct RrefResult {
  Matrix<F> reduced;
  int rank;
  std::vector<int> pivot_cols;
  // Kernel basis as columns of a (cols x nullity) matrix.
  Matrix<F> kernel;
};

// Exact reduced row-echelon form with kernel basis.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
  const F& k = m.field();
  const int nr = m.rows(), nc = m.cols();
  std::vector<std::map<int, typename F::Elem>> rows(nr);
  for (const auto& [rc, v] : m.entries()) rows[rc.first][rc.second] = v;

  std::vector<int> pivots;
  int cur = 0;
  for (int col = 0; col < nc && cur < nr; ++col) {
    int sel = -1;
    for (int r = cur; r < nr; ++r) {
      auto it = rows[r].find(col);
      if (it != rows[r].end()) { sel = r; break; }
    }
    if (sel < 0) continue;
    std::swap(rows[cur], rows[sel]);
    // normalize pivot to 1
    auto piv = rows[cur][col];
    if (!k.eq(piv, k.one())) {
      auto pinv = k.inv(piv);
      for (auto& [c, v] : rows[cur]) v = k.mul(v, pinv);
    }
    // eliminate everywhere else
    for (int r = 0; r < nr; ++r) {
      if (r == cur) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      auto factor = it->second;
      for (const auto& [c, v] : rows[cur]) {
        auto delta = k.mul(factor, v);
        auto jt = rows[r].find(c);
        if (jt == rows[r].end()) {
          auto nv = k.neg(delta);
          if (!k.is_zero(nv)) rows[r][c] = nv;
        } else {
          jt->second = k.sub(jt->second, delta);
          if (k.is_zero(jt->second)) rows[r].erase(jt);
        }
      }
    }
    pivots.push_back(col);
    ++cur;
  }

  Matrix<F> red(k, nr, nc);
  for (int r = 0; r < nr; ++r)
    for (const auto& [c, v] : rows[r]) red.set(r, c, v);

  const int rank = static_cast<int>(pivots.size());
  std::vector<bool> is_pivot(nc, false);
  for (int c : pivots) is_pivot[c] = true;

  Matrix<F> kernel(k, nc, nc - rank);
  int kcol = 0;
  for (int c = 0; c < nc; ++c) {
    if (is_pivot[c]) continue;
    kernel.set(c, kcol, k.one());
    for (int r = 0; r < rank; ++r) {
      auto it = rows[r].find(c);
      if (it != rows[r].end()) kernel.set(pivots[r], kcol, k.neg(it->second));
    }
    ++kcol;
  }

  return RrefResult<F>{red, rank, pivots, kernel};
}

template <class F>
int rank(const Matrix<F>& m) {
  return rref(m).rank;
}

// Solve M x = b; returns a solution if one exists.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const Matrix<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
  const F& k = m.field();
  if (static_cast<int>(b.size()) != m.rows()) throw Error("rhs length mismatch in solve");
  Matrix<F> aug(k, m.rows(), m.cols() + 1);
  for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
  for (int r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
  auto rr = rref(aug);
  // inconsistent iff the last column is a pivot
  for (int c : rr.pivot_cols)
    if (c == m.cols()) return std::nullopt;
  std::vector<typename F::Elem> x(m.cols(), k.zero());
  for (int r = 0; r < rr.rank; ++r) {
    int pc = rr.pivot_cols[r];
    x[pc] = rr.reduced.get(r, m.cols());
  }
  return x;
}

// Columns of `vecs` that are linearly independent modulo the column span of
// `base`; returns their indices in order. Used to pick cohomology
// representatives among cocycles modulo coboundaries.
template <class F>
std::vector<int> independent_columns_mod(const Matrix<F>& base, const Matrix<F>& vecs) {
  const F& k = base.field();
  if (base.rows() != vecs.rows()) throw Error("shape mismatch in independent_columns_mod");
  std::vector<int> chosen;
  int base_rank = rank(base);
  Matrix<F> acc(k, base.rows(), base.cols() + vecs.cols());
  for (const auto& [rc, v] : base.entries()) acc.set(rc.first, rc.second, v);
  int used = 0;
  int cur_rank = base_rank;
  for (int c = 0; c < vecs.cols(); ++c) {
    Matrix<F> trial = acc;
    for (int r = 0; r < vecs.rows(); ++r) {
      auto v = vecs.get(r, c);
      if (!k.is_zero(v)) trial.set(r, base.cols() + used, v);
    }
    int nr = rank(trial);
    if (nr > cur_rank) {
      acc = trial;
      cur_rank = nr;
      ++used;
      chosen.push_back(c);
    }
  }
  return chosen;
}

}  // namespace homcat
