#include "hhlab/hochschild.hpp"

#include <atomic>
#include <limits>

namespace hhlab {

namespace {

std::atomic<std::size_t> g_budget{10'000'000};

// Coboundary d^n : Hom(X^{(x) n}, C) -> Hom(X^{(x) n+1}, C) for a reduced
// basis X of size k, given products in X-coordinates and the left/right
// actions of each basis element of X on C.
Mat bar_differential(const Field& f, std::size_t k, const std::vector<SparseVec>& products,
                     const std::vector<Mat>& left, const std::vector<Mat>& right, std::size_t c, std::size_t n) {
  const std::size_t in_tuples = checked_pow(k, n);
  const std::size_t out_tuples = in_tuples * k;
  MatBuilder b(out_tuples * c, in_tuples * c);
  std::vector<std::size_t> digits(n + 1);
  for (std::size_t out = 0; out < out_tuples; ++out) {
    std::size_t rest = out;
    for (std::size_t pos = n + 1; pos-- > 0;) {
      digits[pos] = rest % k;
      rest /= k;
    }
    const std::size_t row0 = out * c;
    // t_1 . f(t_2, ..., t_{n+1})
    {
      const std::size_t tail = out % in_tuples;
      const Mat& l = left[digits[0]];
      for (std::size_t r = 0; r < c; ++r)
        for (const auto& e : l.row(r)) b.add(row0 + r, tail * c + e.col, e.val);
    }
    // (-1)^i f(..., t_i t_{i+1}, ...)
    for (std::size_t i = 0; i < n; ++i) {
      const SparseVec& prod = products[digits[i] * k + digits[i + 1]];
      if (prod.empty()) continue;
      const int sign = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1} with i zero-based
      std::size_t prefix = 0;
      for (std::size_t p = 0; p < i; ++p) prefix = prefix * k + digits[p];
      std::size_t suffix = 0, suffix_scale = 1;
      for (std::size_t p = n + 1; p-- > i + 2;) {
        suffix += digits[p] * suffix_scale;
        suffix_scale *= k;
      }
      for (const auto& e : prod) {
        const std::size_t tuple = (prefix * k + e.col) * suffix_scale + suffix;
        const Scalar v = sign * e.val;
        for (std::size_t r = 0; r < c; ++r) b.add(row0 + r, tuple * c + r, v);
      }
    }
    // (-1)^{n+1} f(t_1, ..., t_n) . t_{n+1}
    {
      const std::size_t head = out / k;
      const Mat& rm = right[digits[n]];
      const int sign = (n % 2 == 0) ? -1 : 1;
      for (std::size_t r = 0; r < c; ++r)
        for (const auto& e : rm.row(r)) b.add(row0 + r, head * c + e.col, sign * e.val);
    }
  }
  return std::move(b).build(f);
}

}  // namespace

std::size_t dense_budget() { return g_budget.load(); }
void set_dense_budget(std::size_t entries) { g_budget.store(entries); }

void check_budget(std::size_t rows, std::size_t cols, const std::string& what) {
  if (rows != 0 && cols > std::numeric_limits<std::size_t>::max() / rows)
    throw DegreeTooLarge(what + ": dense size overflows");
  if (rows * cols > dense_budget())
    throw DegreeTooLarge(what + ": differential of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds the budget of " + std::to_string(dense_budget()) + " entries");
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) throw DegreeTooLarge("dimension overflow");
    r *= base;
  }
  return r;
}

bool CochainComplex::squares_to_zero() const {
  for (std::size_t n = 0; n + 1 < d.size(); ++n)
    if (!multiply(field, d[n + 1], d[n]).is_zero()) return false;
  return true;
}

CohomologyResult cohomology(const CochainComplex& c, bool with_representatives) {
  CohomologyResult res;
  const std::size_t top = c.reported();
  if (!with_representatives) {
    std::vector<std::size_t> ranks(top);
    for (std::size_t n = 0; n < top; ++n) ranks[n] = rank(c.field, c.d[n]);
    for (std::size_t n = 0; n < top; ++n) res.dims.push_back(c.dims[n] - ranks[n] - (n ? ranks[n - 1] : 0));
    return res;
  }
  for (std::size_t n = 0; n < top; ++n) {
    Subspace z = kernel_basis(c.field, c.d[n]);
    Subspace b = n ? column_space(c.field, c.d[n - 1]) : Subspace::zero(c.dims[n]);
    res.classes.emplace_back(c.field, z, b);
    res.dims.push_back(z.dim() - b.dim());
    res.cocycles.push_back(std::move(z));
    res.coboundaries.push_back(std::move(b));
  }
  return res;
}

std::vector<std::size_t> reduced_basis(const Algebra& t) {
  std::size_t pivot = t.dim();
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (sgn(t.unit()[i]) != 0) {
      pivot = i;
      break;
    }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (i != pivot) out.push_back(i);
  return out;
}

SparseVec reduce_mod_unit(const Algebra& t, const Vec& v) {
  const Field& f = t.field();
  std::size_t pivot = t.dim();
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (sgn(t.unit()[i]) != 0) {
      pivot = i;
      break;
    }
  Scalar ratio = pivot < t.dim() ? f.div(v[pivot], t.unit()[pivot]) : Scalar(0);
  SparseVec out;
  std::uint32_t k = 0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (i == pivot) continue;
    Scalar x = f.reduce(v[i] - ratio * t.unit()[i]);
    if (sgn(x) != 0) out.push_back({k, x});
    ++k;
  }
  return out;
}

CochainComplex bar_cochain_complex(const Algebra& t, const Bimodule& coeff, std::size_t n_max, bool normalized) {
  if (n_max < 1) throw Error("bar_cochain_complex: n_max must be at least 1");
  if (!same_algebra(coeff.left(), t) || !same_algebra(coeff.right(), t))
    throw IncompatibleBimodule("bar_cochain_complex: coefficients are not a bimodule over the algebra");
  const Field& f = t.field();
  std::vector<std::size_t> basis;
  if (normalized) {
    basis = reduced_basis(t);
  } else {
    for (std::size_t i = 0; i < t.dim(); ++i) basis.push_back(i);
  }
  const std::size_t k = basis.size();
  const std::size_t c = coeff.dim();
  std::vector<SparseVec> products(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Vec prod(t.dim());
      for (const auto& e : t.product(basis[i], basis[j])) prod[e.col] = e.val;
      if (normalized) {
        products[i * k + j] = reduce_mod_unit(t, prod);
      } else {
        for (std::size_t x = 0; x < prod.size(); ++x)
          if (sgn(prod[x]) != 0) products[i * k + j].push_back({static_cast<std::uint32_t>(x), prod[x]});
      }
    }
  std::vector<Mat> left, right;
  for (auto i : basis) {
    left.push_back(coeff.left_matrix(i));
    right.push_back(coeff.right_matrix(i));
  }
  CochainComplex out;
  out.field = f;
  for (std::size_t n = 0; n < n_max; ++n) {
    out.dims.push_back(checked_pow(k, n) * c);
    out.labels.push_back("C^" + std::to_string(n));
  }
  for (std::size_t n = 0; n + 1 < n_max; ++n) {
    check_budget(out.dims[n + 1], out.dims[n], "bar complex degree " + std::to_string(n));
    out.d.push_back(bar_differential(f, k, products, left, right, c, n));
  }
  return out;
}

std::vector<std::size_t> hh_dims(const Algebra& t, std::size_t n_max) {
  AlgebraPtr view(std::shared_ptr<const Algebra>(), &t);
  BimodulePtr reg = regular_bimodule(view);
  return cohomology(bar_cochain_complex(t, *reg, n_max), false).dims;
}

CochainComplex ext_complex(const Bimodule& m, const Bimodule& n, std::size_t n_max) {
  BimodulePtr hom = hom_coefficient_bimodule(m, n);
  return bar_cochain_complex(hom->left(), *hom, n_max);
}

std::vector<std::size_t> ext_dims(const Bimodule& m, const Bimodule& n, std::size_t n_max) {
  return cohomology(ext_complex(m, n, n_max), false).dims;
}

}  // namespace hhlab
