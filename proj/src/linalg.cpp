#include "sullivan/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace sullivan {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& [i, v] : entries) {
    if (!entries_.empty() && entries_.back().first == i) {
      entries_.back().second += v;
      if (entries_.back().second == 0) entries_.pop_back();
    } else if (v != 0) {
      entries_.emplace_back(i, std::move(v));
    }
  }
}

SparseVector SparseVector::unit(std::size_t index) {
  SparseVector v;
  v.entries_.emplace_back(index, Rational(1));
  return v;
}

Rational SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return Rational(0);
}

std::optional<std::size_t> SparseVector::leading() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().first;
}

namespace {

SparseVector merge(const SparseVector& a, const SparseVector& b, const Rational& scale_b) {
  std::vector<SparseVector::Entry> out;
  out.reserve(a.nonzeros() + b.nonzeros());
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      out.emplace_back(ib->first, ib->second * scale_b);
      ++ib;
    } else {
      Rational v = ia->second + ib->second * scale_b;
      if (v != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return SparseVector(std::move(out));
}

}  // namespace

SparseVector SparseVector::operator+(const SparseVector& other) const {
  return merge(*this, other, Rational(1));
}

SparseVector SparseVector::operator-(const SparseVector& other) const {
  return merge(*this, other, Rational(-1));
}

SparseVector SparseVector::operator*(const Rational& scalar) const {
  if (scalar == 0) return {};
  SparseVector r = *this;
  for (auto& e : r.entries_) e.second *= scalar;
  return r;
}

SparseVector SparseVector::head(std::size_t bound) const {
  SparseVector r;
  for (const auto& e : entries_) {
    if (e.first >= bound) break;
    r.entries_.push_back(e);
  }
  return r;
}

SparseVector SparseVector::tail(std::size_t bound) const {
  SparseVector r;
  for (const auto& e : entries_)
    if (e.first >= bound) r.entries_.emplace_back(e.first - bound, e.second);
  return r;
}

SparseVector SparseVector::shifted(std::size_t offset) const {
  SparseVector r = *this;
  for (auto& e : r.entries_) e.first += offset;
  return r;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::vector<SparseVector> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (!c.empty() && c.entries().back().first >= rows_)
      throw std::out_of_range("SparseMatrix: column entry outside row range");
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVector& c) { return c.empty(); });
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  SparseVector r;
  for (const auto& [j, c] : v.entries()) r = r + columns_.at(j) * c;
  return r;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& rhs) const {
  if (rhs.rows() != cols()) throw std::invalid_argument("SparseMatrix::compose: shape mismatch");
  std::vector<SparseVector> cols;
  cols.reserve(rhs.cols());
  for (const auto& c : rhs.columns()) cols.push_back(apply(c));
  return SparseMatrix(rows_, std::move(cols));
}

SparseVector Echelon::reduce(const SparseVector& v) const {
  SparseVector r = v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational c = v.at(pivots[i]);
    if (c != 0) r = r - rows[i] * c;
  }
  return r;
}

std::optional<SparseVector> Echelon::coordinates(const SparseVector& v) const {
  if (!reduce(v).empty()) return std::nullopt;
  std::vector<SparseVector::Entry> c;
  for (std::size_t i = 0; i < rows.size(); ++i) c.emplace_back(i, v.at(pivots[i]));
  return SparseVector(std::move(c));
}

std::optional<SparseVector> ColumnReduction::solve(const SparseVector& b) const {
  auto c = image.coordinates(b);
  if (!c) return std::nullopt;
  SparseVector x;
  for (const auto& [i, coef] : c->entries()) x = x + preimages[i] * coef;
  return x;
}

namespace {

// Integer row, sorted by index, no zero entries, content 1.
using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer(const SparseVector& v) {
  mpz_class lcm = 1;
  for (const auto& e : v.entries())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.second.get_den_mpz_t());
  IntRow row;
  row.reserve(v.nonzeros());
  for (const auto& e : v.entries()) {
    mpz_class n = e.second.get_num() * (lcm / e.second.get_den());
    row.emplace_back(e.first, std::move(n));
  }
  make_primitive(row);
  return row;
}

mpz_class entry(const IntRow& row, std::size_t index) {
  auto it = std::lower_bound(row.begin(), row.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  if (it != row.end() && it->first == index) return it->second;
  return 0;
}

// Returns a*r - b*s, made primitive.
IntRow combine(const mpz_class& a, const IntRow& r, const mpz_class& b, const IntRow& s) {
  IntRow out;
  out.reserve(r.size() + s.size());
  auto ir = r.begin();
  auto is = s.begin();
  while (ir != r.end() || is != s.end()) {
    if (is == s.end() || (ir != r.end() && ir->first < is->first)) {
      out.emplace_back(ir->first, a * ir->second);
      ++ir;
    } else if (ir == r.end() || is->first < ir->first) {
      out.emplace_back(is->first, -b * is->second);
      ++is;
    } else {
      mpz_class v = a * ir->second - b * is->second;
      if (v != 0) out.emplace_back(ir->first, std::move(v));
      ++ir;
      ++is;
    }
  }
  make_primitive(out);
  return out;
}

// Eliminates the entry at `col` from `target` using `pivot_row`.
IntRow eliminate(const IntRow& target, const IntRow& pivot_row, std::size_t col) {
  mpz_class t = entry(target, col);
  if (t == 0) return target;
  mpz_class p = entry(pivot_row, col);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), t.get_mpz_t());
  return combine(p / g, target, t / g, pivot_row);
}

class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t pivot_bound) : bound_(pivot_bound) {}

  // Inserts a row; returns the residual if it has no pivot below the bound.
  std::optional<IntRow> insert(IntRow row) {
    while (!row.empty() && row.front().first < bound_) {
      std::size_t lead = row.front().first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        pivots_.emplace(lead, std::move(row));
        return std::nullopt;
      }
      if (abs(row.front().second) < abs(it->second.front().second)) std::swap(row, it->second);
      row = eliminate(row, it->second, lead);
    }
    return row;
  }

  // Back substitution to reduced form; returns rows sorted by pivot.
  Echelon finish_split(std::vector<SparseVector>* history) {
    for (auto hi = pivots_.rbegin(); hi != pivots_.rend(); ++hi) {
      for (auto lo = pivots_.begin(); lo->first < hi->first; ++lo)
        lo->second = eliminate(lo->second, hi->second, hi->first);
    }
    Echelon out;
    for (const auto& [p, row] : pivots_) {
      Rational lead(row.front().second);
      std::vector<SparseVector::Entry> img;
      std::vector<SparseVector::Entry> hist;
      for (const auto& [i, v] : row) {
        Rational q = Rational(v) / lead;
        q.canonicalize();
        if (i < bound_) {
          img.emplace_back(i, std::move(q));
        } else {
          hist.emplace_back(i - bound_, std::move(q));
        }
      }
      out.rows.emplace_back(std::move(img));
      out.pivots.push_back(p);
      if (history) history->emplace_back(std::move(hist));
    }
    return out;
  }

 private:
  std::size_t bound_;
  std::map<std::size_t, IntRow> pivots_;
};

}  // namespace

Echelon row_reduce(const std::vector<SparseVector>& vectors) {
  IntegerEchelon ech(std::numeric_limits<std::size_t>::max());
  for (const auto& v : vectors) ech.insert(to_integer(v));
  return ech.finish_split(nullptr);
}

ColumnReduction reduce_columns(const SparseMatrix& m) {
  const std::size_t bound = m.rows();
  IntegerEchelon ech(bound);
  std::vector<SparseVector> kernel_vectors;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVector tagged = m.column(j) + SparseVector::unit(bound + j);
    if (auto residual = ech.insert(to_integer(tagged))) {
      std::vector<SparseVector::Entry> k;
      for (const auto& [i, v] : *residual) k.emplace_back(i - bound, Rational(v));
      kernel_vectors.emplace_back(std::move(k));
    }
  }
  ColumnReduction out;
  out.image = ech.finish_split(&out.preimages);
  out.kernel = row_reduce(kernel_vectors);
  return out;
}

std::size_t rank(const SparseMatrix& m) { return row_reduce(m.columns()).rank(); }

bool same_span(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b) {
  Echelon ea = row_reduce(a);
  Echelon eb = row_reduce(b);
  return ea.pivots == eb.pivots && ea.rows == eb.rows;
}

}  // namespace sullivan
