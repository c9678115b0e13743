#include "hhlab/trireduce.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace hhlab {

namespace {

std::vector<std::size_t> to_digits(std::size_t x, std::size_t base, std::size_t len) {
  std::vector<std::size_t> d(len);
  for (std::size_t i = len; i-- > 0;) {
    d[i] = x % base;
    x /= base;
  }
  return d;
}

std::size_t from_digits(const std::vector<std::size_t>& d, const std::vector<std::size_t>& radix) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < d.size(); ++i) x = x * radix[i] + d[i];
  return x;
}

Mat zero_mat(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

CochainComplex zero_complex(const Field& f, std::size_t degrees) {
  CochainComplex c;
  c.field = f;
  c.dims.assign(degrees, 0);
  for (std::size_t n = 0; n + 1 < degrees; ++n) c.d.push_back(zero_mat(0, 0));
  for (std::size_t n = 0; n < degrees; ++n) c.labels.push_back("0");
  return c;
}

// Keeps the coordinates flagged in keep[n] and renumbers them in order.
CochainComplex restrict_complex(const CochainComplex& c, const std::vector<std::vector<bool>>& keep) {
  CochainComplex out;
  out.field = c.field;
  std::vector<std::vector<long>> index(keep.size());
  for (std::size_t n = 0; n < keep.size(); ++n) {
    long k = 0;
    index[n].assign(keep[n].size(), -1);
    for (std::size_t i = 0; i < keep[n].size(); ++i)
      if (keep[n][i]) index[n][i] = k++;
    out.dims.push_back(static_cast<std::size_t>(k));
    out.labels.push_back(n < c.labels.size() ? c.labels[n] : "C^" + std::to_string(n));
  }
  for (std::size_t n = 0; n + 1 < keep.size() && n < c.d.size(); ++n) {
    std::vector<Triplet> t;
    for (const auto& e : c.d[n].triplets()) {
      long r = index[n + 1][e.row], col = index[n][e.col];
      if (r >= 0 && col >= 0) t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(col), e.val});
    }
    out.d.push_back(Mat::from_triplets(c.field, out.dims[n + 1], out.dims[n], std::move(t)));
  }
  return out;
}

const BlockSpan* find_block(const std::vector<BlockSpan>& blocks, const std::string& name) {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

std::string pair_name(const std::string& head, std::size_t i, std::size_t j) {
  return head + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_subset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
  auto s = sorted_unique(small), b = sorted_unique(big);
  return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
  auto a = sorted_unique(x), b = sorted_unique(y);
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string set_name(const std::vector<std::size_t>& ids) {
  std::string s = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? "," : "") + std::to_string(ids[k]);
  return s + "}";
}

// ---------------------------------------------------------------------------
// Relative bar pieces

struct BarPiece {
  int p, q;
  std::size_t offset, size;
  std::vector<std::size_t> radix;  // a_0 .. a_p, m, b_1 .. b_{q+1}
};

std::vector<BarPiece> bar_pieces(std::size_t k, std::size_t da, std::size_t dm, std::size_t db) {
  std::vector<BarPiece> out;
  std::size_t off = 0;
  for (int p = -1; p <= static_cast<int>(k); ++p) {
    int q = static_cast<int>(k) - 1 - p;
    if (p == -1 && q == -1) continue;
    BarPiece piece{p, q, off, 1, {}};
    for (int i = 0; i <= p; ++i) piece.radix.push_back(da);
    piece.radix.push_back(dm);
    for (int j = 0; j <= q; ++j) piece.radix.push_back(db);
    for (auto r : piece.radix) piece.size = piece.size * r;
    off += piece.size;
    out.push_back(piece);
  }
  return out;
}

const BarPiece* find_piece(const std::vector<BarPiece>& pieces, int p, int q) {
  for (const auto& x : pieces)
    if (x.p == p && x.q == q) return &x;
  return nullptr;
}

std::size_t total_size(const std::vector<BarPiece>& pieces) {
  std::size_t s = 0;
  for (const auto& x : pieces) s += x.size;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

RelativeBar relative_bar(const Bimodule& m, std::size_t n_max) {
  if (n_max < 1) throw Error("relative_bar: n_max must be at least 1");
  const Field& f = m.field();
  const Algebra& a = m.left();
  const Algebra& b = m.right();
  const std::size_t da = a.dim(), db = b.dim(), dm = m.dim();
  std::vector<Mat> lmt, rmt;
  for (std::size_t i = 0; i < da; ++i) lmt.push_back(m.left_matrix(i).transpose());
  for (std::size_t j = 0; j < db; ++j) rmt.push_back(m.right_matrix(j).transpose());

  RelativeBar out;
  out.field = f;
  std::vector<std::vector<BarPiece>> pieces;
  for (std::size_t k = 0; k < n_max; ++k) {
    pieces.push_back(bar_pieces(k, da, dm, db));
    out.dims.push_back(total_size(pieces.back()));
  }

  for (std::size_t k = 0; k + 1 < n_max; ++k) {
    check_budget(out.dims[k], out.dims[k + 1], "relative bar degree " + std::to_string(k));
    MatBuilder bld(out.dims[k], out.dims[k + 1]);
    for (const auto& src : pieces[k + 1]) {
      const int p = src.p, q = src.q;
      const std::size_t mpos = static_cast<std::size_t>(p + 1);
      for (std::size_t x = 0; x < src.size; ++x) {
        const std::size_t col = src.offset + x;
        std::vector<std::size_t> dg(src.radix.size());
        std::size_t rest = x;
        for (std::size_t i = src.radix.size(); i-- > 0;) {
          dg[i] = rest % src.radix[i];
          rest /= src.radix[i];
        }
        // Merge positions pos, pos+1 of dg into one slot with the given value.
        auto emit = [&](int tp, int tq, std::size_t pos, std::size_t value, const Scalar& c) {
          const BarPiece* dst = find_piece(pieces[k], tp, tq);
          if (!dst) return;
          std::vector<std::size_t> nd;
          nd.reserve(dg.size() - 1);
          for (std::size_t i = 0; i < dg.size(); ++i) {
            if (i == pos) {
              nd.push_back(value);
              ++i;
            } else {
              nd.push_back(dg[i]);
            }
          }
          bld.add(dst->offset + from_digits(nd, dst->radix), col, c);
        };
        if (p >= 0) {
          for (int i = 0; i < p; ++i) {
            const int sign = (i % 2 == 0) ? 1 : -1;
            for (const auto& e : a.product(dg[i], dg[i + 1])) emit(p - 1, q, i, e.col, sign * e.val);
          }
          const int sign = (p % 2 == 0) ? 1 : -1;
          for (const auto& e : lmt[dg[p]].row(dg[mpos])) emit(p - 1, q, p, e.col, sign * e.val);
        }
        if (q >= 0) {
          const int eps = (p == -1 || p % 2 != 0) ? -1 : 1;
          for (const auto& e : rmt[dg[mpos + 1]].row(dg[mpos])) emit(p, q - 1, mpos, e.col, eps * e.val);
          for (int j = 1; j <= q; ++j) {
            const int sign = eps * ((j % 2 == 0) ? 1 : -1);
            const std::size_t pos = mpos + static_cast<std::size_t>(j);
            for (const auto& e : b.product(dg[pos], dg[pos + 1])) emit(p, q - 1, pos, e.col, sign * e.val);
          }
        }
      }
    }
    out.boundary.push_back(std::move(bld).build(f));
  }

  // Actions on the outer factors.
  for (std::size_t k = 0; k < n_max; ++k) {
    std::vector<Mat> left, right;
    for (std::size_t i = 0; i < da; ++i) {
      MatBuilder bld(out.dims[k], out.dims[k]);
      for (const auto& pc : pieces[k]) {
        for (std::size_t x = 0; x < pc.size; ++x) {
          std::vector<std::size_t> dg(pc.radix.size());
          std::size_t rest = x;
          for (std::size_t s = pc.radix.size(); s-- > 0;) {
            dg[s] = rest % pc.radix[s];
            rest /= pc.radix[s];
          }
          const SparseVec& img = pc.p >= 0 ? a.product(i, dg[0]) : lmt[i].row(dg[0]);
          for (const auto& e : img) {
            auto nd = dg;
            nd[0] = e.col;
            bld.add(pc.offset + from_digits(nd, pc.radix), pc.offset + x, e.val);
          }
        }
      }
      left.push_back(std::move(bld).build(f));
    }
    for (std::size_t j = 0; j < db; ++j) {
      MatBuilder bld(out.dims[k], out.dims[k]);
      for (const auto& pc : pieces[k]) {
        for (std::size_t x = 0; x < pc.size; ++x) {
          std::vector<std::size_t> dg(pc.radix.size());
          std::size_t rest = x;
          for (std::size_t s = pc.radix.size(); s-- > 0;) {
            dg[s] = rest % pc.radix[s];
            rest /= pc.radix[s];
          }
          const std::size_t last = dg.size() - 1;
          const SparseVec& img = pc.q >= 0 ? b.product(dg[last], j) : rmt[j].row(dg[last]);
          for (const auto& e : img) {
            auto nd = dg;
            nd[last] = e.col;
            bld.add(pc.offset + from_digits(nd, pc.radix), pc.offset + x, e.val);
          }
        }
      }
      right.push_back(std::move(bld).build(f));
    }
    out.left_action.push_back(std::move(left));
    out.right_action.push_back(std::move(right));
  }
  return out;
}

CochainComplex hom_from_relative_bar(const RelativeBar& bar, const Bimodule& n) {
  const Field& f = bar.field;
  const std::size_t dn = n.dim();
  Mat in = Mat::identity(dn);
  std::vector<Subspace> spaces;
  for (std::size_t k = 0; k < bar.dims.size(); ++k) {
    const std::size_t dc = bar.dims[k];
    check_budget(dc * dn, dc * dn, "relative bar hom degree " + std::to_string(k));
    Mat ic = Mat::identity(dc);
    std::vector<Mat> eqs;
    for (std::size_t i = 0; i < bar.left_action[k].size(); ++i)
      eqs.push_back(subtract(f, kron(f, bar.left_action[k][i].transpose(), in), kron(f, ic, n.left_matrix(i))));
    for (std::size_t j = 0; j < bar.right_action[k].size(); ++j)
      eqs.push_back(subtract(f, kron(f, bar.right_action[k][j].transpose(), in), kron(f, ic, n.right_matrix(j))));
    spaces.push_back(eqs.empty() ? Subspace::whole(dc * dn) : kernel_basis(f, vstack(f, eqs)));
  }
  CochainComplex out;
  out.field = f;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    out.dims.push_back(spaces[k].dim());
    out.labels.push_back("Hom(P_" + std::to_string(k) + ", N)");
  }
  for (std::size_t k = 0; k + 1 < spaces.size(); ++k) {
    Mat pull = kron(f, bar.boundary[k].transpose(), in);
    Solver target(f, spaces[k + 1].as_columns(f));
    std::vector<Vec> cols;
    for (const auto& v : spaces[k].basis()) {
      auto c = target.solve(pull.apply(f, v));
      if (!c) throw Error("internal: pulled back cochain is not a module map");
      cols.push_back(*c);
    }
    out.d.push_back(Mat::from_columns(f, spaces[k + 1].dim(), cols));
  }
  return out;
}

// ---------------------------------------------------------------------------

TriangularCochainComplex triangular_cochain(const Bimodule& m, const Bimodule& n, std::size_t n_max) {
  require_same_base(m, n);
  if (n_max < 1) throw Error("triangular_cochain: n_max must be at least 1");
  const Field& f = m.field();
  const Algebra& a = m.left();
  const Algebra& b = m.right();
  TriangularCochainComplex t;
  t.hom_a = hom_over_b(m, n);
  t.hom_b = hom_over_a(m, n);
  t.c_a = bar_cochain_complex(a, *t.hom_a.module, n_max);
  t.c_b = bar_cochain_complex(b, *t.hom_b.module, n_max);

  const auto ra = reduced_basis(a), rb = reduced_basis(b);
  const std::size_t ka = ra.size(), kb = rb.size();
  const std::size_t dm = m.dim(), dn = n.dim();
  const std::size_t ha = t.hom_a.space.dim(), hb = t.hom_b.space.dim();

  auto reduced_products = [](const Algebra& alg, const std::vector<std::size_t>& basis) {
    const std::size_t k = basis.size();
    std::vector<SparseVec> out(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Vec prod(alg.dim());
        for (const auto& e : alg.product(basis[i], basis[j])) prod[e.col] = e.val;
        out[i * k + j] = reduce_mod_unit(alg, prod);
      }
    return out;
  };
  const auto pa = reduced_products(a, ra), pb = reduced_products(b, rb);
  std::vector<Mat> ln, lmt, rmt, rn;
  for (auto i : ra) {
    ln.push_back(n.left_matrix(i));
    lmt.push_back(m.left_matrix(i).transpose());
  }
  for (auto j : rb) {
    rmt.push_back(m.right_matrix(j).transpose());
    rn.push_back(n.right_matrix(j));
  }

  CochainComplex& c = t.complex;
  c.field = f;
  for (std::size_t k = 0; k < n_max; ++k) {
    std::vector<BlockSpan> blocks;
    std::size_t off = 0;
    blocks.push_back({"A", off, t.c_a.dims[k]});
    off += t.c_a.dims[k];
    for (std::size_t p = 0; p < k; ++p) {
      const std::size_t q = k - 1 - p;
      const std::size_t size = checked_pow(ka, p) * dm * checked_pow(kb, q) * dn;
      blocks.push_back({"X(" + std::to_string(p) + "," + std::to_string(q) + ")", off, size});
      off += size;
    }
    blocks.push_back({"B", off, t.c_b.dims[k]});
    off += t.c_b.dims[k];
    c.dims.push_back(off);
    c.labels.push_back("C_tri^" + std::to_string(k));
    t.blocks.push_back(std::move(blocks));
  }

  for (std::size_t k = 0; k + 1 < n_max; ++k) {
    const auto& in = t.blocks[k];
    const auto& out = t.blocks[k + 1];
    check_budget(c.dims[k + 1], c.dims[k], "triangular complex degree " + std::to_string(k));
    MatBuilder bld(c.dims[k + 1], c.dims[k]);
    bld.add_block(out.front().offset, in.front().offset, t.c_a.d[k]);
    bld.add_block(out.back().offset, in.back().offset, t.c_b.d[k]);
    // Mixed pieces (p, q) of degree k + 1, p + q = k.
    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t q = k - p;
      const std::size_t out_off = out[1 + p].offset;
      const std::size_t na = checked_pow(ka, p), nb = checked_pow(kb, q);
      const int s = (p % 2 == 0) ? -1 : 1;  // (-1)^{p+1}
      for (std::size_t ta = 0; ta < na; ++ta) {
        const auto da = to_digits(ta, ka, p);
        for (std::size_t mm = 0; mm < dm; ++mm)
          for (std::size_t tb = 0; tb < nb; ++tb) {
            const auto db = to_digits(tb, kb, q);
            const std::size_t row0 = out_off + ((ta * dm + mm) * nb + tb) * dn;
            // X part
            if (p >= 1) {
              const std::size_t src_off = in[p].offset;  // piece (p-1, q)
              const std::size_t na1 = na / ka;
              auto src = [&](std::size_t a_idx, std::size_t m_idx) {
                return src_off + ((a_idx * dm + m_idx) * nb + tb) * dn;
              };
              const Mat& l = ln[da[0]];
              for (std::size_t r = 0; r < dn; ++r)
                for (const auto& e : l.row(r)) bld.add(row0 + r, src(ta % na1, mm) + e.col, e.val);
              for (std::size_t i = 1; i < p; ++i) {
                const int sign = (i % 2 == 0) ? 1 : -1;
                std::size_t prefix = 0;
                for (std::size_t x = 0; x + 1 < i; ++x) prefix = prefix * ka + da[x];
                std::size_t suffix = 0, scale = 1;
                for (std::size_t x = p; x-- > i + 1;) {
                  suffix += da[x] * scale;
                  scale *= ka;
                }
                for (const auto& e : pa[da[i - 1] * ka + da[i]]) {
                  const std::size_t idx = (prefix * ka + e.col) * scale + suffix;
                  for (std::size_t r = 0; r < dn; ++r) bld.add(row0 + r, src(idx, mm) + r, sign * e.val);
                }
              }
              const int sign = (p % 2 == 0) ? 1 : -1;
              for (const auto& e : lmt[da[p - 1]].row(mm))
                for (std::size_t r = 0; r < dn; ++r) bld.add(row0 + r, src(ta / ka, e.col) + r, sign * e.val);
            } else {
              const std::size_t b_off = in.back().offset;
              for (std::size_t h = 0; h < hb; ++h) {
                const Vec& hv = t.hom_b.space.basis()[h];
                for (std::size_t r = 0; r < dn; ++r)
                  if (sgn(hv[mm * dn + r]) != 0) bld.add(row0 + r, b_off + tb * hb + h, hv[mm * dn + r]);
              }
            }
            // Y part
            if (q >= 1) {
              const std::size_t src_off = in[1 + p].offset;  // piece (p, q-1)
              const std::size_t nb1 = nb / kb;
              auto src = [&](std::size_t m_idx, std::size_t b_idx) {
                return src_off + ((ta * dm + m_idx) * nb1 + b_idx) * dn;
              };
              for (const auto& e : rmt[db[0]].row(mm))
                for (std::size_t r = 0; r < dn; ++r) bld.add(row0 + r, src(e.col, tb % nb1) + r, s * e.val);
              for (std::size_t j = 1; j < q; ++j) {
                const int sign = s * ((j % 2 == 0) ? 1 : -1);
                std::size_t prefix = 0;
                for (std::size_t x = 0; x + 1 < j; ++x) prefix = prefix * kb + db[x];
                std::size_t suffix = 0, scale = 1;
                for (std::size_t x = q; x-- > j + 1;) {
                  suffix += db[x] * scale;
                  scale *= kb;
                }
                for (const auto& e : pb[db[j - 1] * kb + db[j]]) {
                  const std::size_t idx = (prefix * kb + e.col) * scale + suffix;
                  for (std::size_t r = 0; r < dn; ++r) bld.add(row0 + r, src(mm, idx) + r, sign * e.val);
                }
              }
              const int sign = s * ((q % 2 == 0) ? 1 : -1);
              const Mat& rr = rn[db[q - 1]];
              for (std::size_t r = 0; r < dn; ++r)
                for (const auto& e : rr.row(r)) bld.add(row0 + r, src(mm, tb / kb) + e.col, sign * e.val);
            } else {
              const std::size_t a_off = in.front().offset;
              for (std::size_t h = 0; h < ha; ++h) {
                const Vec& hv = t.hom_a.space.basis()[h];
                for (std::size_t r = 0; r < dn; ++r)
                  if (sgn(hv[mm * dn + r]) != 0) bld.add(row0 + r, a_off + ta * ha + h, s * hv[mm * dn + r]);
              }
            }
          }
      }
    }
    c.d.push_back(std::move(bld).build(f));
  }

  for (std::size_t k = 0; k < n_max; ++k) {
    const auto& ba = t.blocks[k].front();
    const auto& bb = t.blocks[k].back();
    MatBuilder pa_b(ba.size, c.dims[k]), pb_b(bb.size, c.dims[k]);
    pa_b.add_block(0, ba.offset, Mat::identity(ba.size));
    pb_b.add_block(0, bb.offset, Mat::identity(bb.size));
    t.to_a.push_back(std::move(pa_b).build(f));
    t.to_b.push_back(std::move(pb_b).build(f));
  }
  return t;
}

CochainComplex kernel_of_restriction(const TriangularCochainComplex& t) {
  std::vector<std::vector<bool>> keep;
  for (std::size_t k = 0; k < t.blocks.size(); ++k) {
    std::vector<bool> mask(t.complex.dims[k], true);
    for (const auto* blk : {&t.blocks[k].front(), &t.blocks[k].back()})
      for (std::size_t i = 0; i < blk->size; ++i) mask[blk->offset + i] = false;
    keep.push_back(std::move(mask));
  }
  CochainComplex out = restrict_complex(t.complex, keep);
  for (std::size_t k = 0; k < out.labels.size(); ++k) out.labels[k] = "Ker i*^" + std::to_string(k);
  return out;
}

// ---------------------------------------------------------------------------

bool is_chain_map(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f) {
  const std::size_t top = std::min(src.reported(), dst.reported());
  const Field& fld = src.field;
  for (std::size_t n = 0; n < std::min(f.size(), std::min(src.dims.size(), dst.dims.size())); ++n)
    if (f[n].rows() != dst.dims[n] || f[n].cols() != src.dims[n]) return false;
  for (std::size_t n = 0; n < top && n + 1 < f.size(); ++n)
    if (!(multiply(fld, f[n + 1], src.d[n]) == multiply(fld, dst.d[n], f[n]))) return false;
  return true;
}

CochainComplex mapping_cone(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f) {
  const Field& fld = src.field;
  const std::size_t r = std::min(src.reported(), dst.reported() + 1);
  if (f.size() < r) throw Error("mapping_cone: chain map has too few degrees");
  CochainComplex out;
  out.field = fld;
  for (std::size_t n = 0; n <= r; ++n) {
    out.dims.push_back(src.dims[n] + (n ? dst.dims[n - 1] : 0));
    out.labels.push_back("Cone^" + std::to_string(n));
  }
  for (std::size_t n = 0; n < r; ++n) {
    MatBuilder bld(out.dims[n + 1], out.dims[n]);
    bld.add_block(0, 0, src.d[n]);
    bld.add_block(src.dims[n + 1], 0, f[n]);
    if (n >= 1) bld.add_block(src.dims[n + 1], src.dims[n], dst.d[n - 1], -1);
    out.d.push_back(std::move(bld).build(fld));
  }
  return out;
}

CochainComplex shift_down(const CochainComplex& c) {
  CochainComplex out;
  out.field = c.field;
  out.dims.push_back(0);
  out.labels.push_back("0");
  for (std::size_t n = 0; n < c.dims.size(); ++n) {
    out.dims.push_back(c.dims[n]);
    out.labels.push_back(n < c.labels.size() ? c.labels[n] + "[-1]" : "");
  }
  out.d.push_back(zero_mat(c.dims.empty() ? 0 : c.dims[0], 0));
  for (const auto& m : c.d) out.d.push_back(scale(c.field, -1, m));
  return out;
}

CochainComplex direct_sum(const std::vector<CochainComplex>& parts) {
  if (parts.empty()) throw Error("direct_sum of no complexes");
  const Field& f = parts.front().field;
  std::size_t degs = parts.front().dims.size();
  for (const auto& p : parts) degs = std::min(degs, p.dims.size());
  CochainComplex out;
  out.field = f;
  for (std::size_t n = 0; n < degs; ++n) {
    std::size_t s = 0;
    for (const auto& p : parts) s += p.dims[n];
    out.dims.push_back(s);
    out.labels.push_back("C^" + std::to_string(n));
  }
  for (std::size_t n = 0; n + 1 < degs; ++n) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) blocks.push_back(p.d[n]);
    out.d.push_back(direct_sum(f, blocks));
  }
  return out;
}

// ---------------------------------------------------------------------------

TriangularContext::TriangularContext(AlgebraPtr a, AlgebraPtr b, std::vector<BimodulePtr> members, std::size_t n_max)
    : a_(std::move(a)), b_(std::move(b)), members_(std::move(members)), n_max_(n_max) {
  if (n_max_ < 1) throw Error("n_max must be at least 1");
  if (!(a_->field() == b_->field())) throw FieldMismatch("A and B are over different fields");
  for (const auto& m : members_) {
    if (!(m->field() == a_->field())) throw FieldMismatch("family member over a different field");
    if (!same_algebra(m->left(), *a_) || !same_algebra(m->right(), *b_))
      throw IncompatibleBimodule("family member is not an A-B-bimodule");
  }
}

const CochainComplex& TriangularContext::hochschild_a() {
  if (!ca_) ca_ = bar_cochain_complex(*a_, *regular_bimodule(a_), n_max_);
  return *ca_;
}

const CochainComplex& TriangularContext::hochschild_b() {
  if (!cb_) cb_ = bar_cochain_complex(*b_, *regular_bimodule(b_), n_max_);
  return *cb_;
}

const TriangularCochainComplex& TriangularContext::tri(std::size_t i, std::size_t j) {
  if (i >= members_.size() || j >= members_.size()) throw Error("member index out of range");
  auto key = std::make_pair(i, j);
  auto it = tri_.find(key);
  if (it == tri_.end()) it = tri_.emplace(key, triangular_cochain(*members_[i], *members_[j], n_max_)).first;
  return it->second;
}

ConeComplex TriangularContext::cone_parts(const std::vector<std::size_t>& ids,
                                          const std::set<std::pair<std::size_t, std::size_t>>& pairs) {
  const Field& f = field();
  const auto chosen = sorted_unique(ids);
  for (const auto& [i, j] : pairs)
    if (!std::binary_search(chosen.begin(), chosen.end(), i) || !std::binary_search(chosen.begin(), chosen.end(), j))
      throw Error("cone: pair uses a member outside the family");
  const CochainComplex& ca = hochschild_a();
  const CochainComplex& cb = hochschild_b();
  std::vector<CochainComplex> src_parts{ca};
  std::vector<CochainComplex> tgt_a, tgt_b;
  for (const auto& [i, j] : pairs) {
    const auto& t = tri(i, j);
    src_parts.push_back(t.complex);
    tgt_a.push_back(t.c_a);
    tgt_b.push_back(t.c_b);
  }
  src_parts.push_back(cb);
  ConeComplex out;
  out.source = direct_sum(src_parts);
  std::vector<CochainComplex> tgt_parts = tgt_a;
  tgt_parts.insert(tgt_parts.end(), tgt_b.begin(), tgt_b.end());
  out.target = tgt_parts.empty() ? zero_complex(f, n_max_) : direct_sum(tgt_parts);

  // alpha and beta as maps A -> Hom_{B^o}(M, M), B -> Hom_A(M, M).
  std::map<std::size_t, Mat> alpha, beta;
  for (const auto& [i, j] : pairs) {
    if (i != j || alpha.count(i)) continue;
    const auto& t = tri(i, i);
    const Bimodule& m = *members_[i];
    std::vector<Vec> ca_cols, cb_cols;
    for (std::size_t x = 0; x < a_->dim(); ++x) {
      auto c = t.hom_a.space.coordinates(f, mat_to_vec(m.left_matrix(x)));
      if (!c) throw Error("internal: left action is not a right-module map");
      ca_cols.push_back(*c);
    }
    for (std::size_t y = 0; y < b_->dim(); ++y) {
      auto c = t.hom_b.space.coordinates(f, mat_to_vec(m.right_matrix(y)));
      if (!c) throw Error("internal: right action is not a left-module map");
      cb_cols.push_back(*c);
    }
    alpha[i] = Mat::from_columns(f, t.hom_a.space.dim(), ca_cols);
    beta[i] = Mat::from_columns(f, t.hom_b.space.dim(), cb_cols);
  }
  const std::size_t ka = reduced_basis(*a_).size(), kb = reduced_basis(*b_).size();

  for (std::size_t n = 0; n < n_max_; ++n) {
    MatBuilder bld(out.target.dims[n], out.source.dims[n]);
    const std::size_t col_a = 0;
    const std::size_t col_b = out.source.dims[n] - cb.dims[n];
    std::size_t col = ca.dims[n];
    std::size_t row_a = 0;
    std::size_t row_b = 0;
    for (const auto& [i, j] : pairs) row_b += tri(i, j).c_a.dims[n];
    for (const auto& [i, j] : pairs) {
      const auto& t = tri(i, j);
      if (i == j) {
        bld.add_block(row_a, col_a, kron(f, Mat::identity(checked_pow(ka, n)), alpha[i]));
        bld.add_block(row_b, col_b, kron(f, Mat::identity(checked_pow(kb, n)), beta[i]));
      }
      bld.add_block(row_a, col, t.to_a[n], -1);
      bld.add_block(row_b, col, t.to_b[n], -1);
      col += t.complex.dims[n];
      row_a += t.c_a.dims[n];
      row_b += t.c_b.dims[n];
    }
    out.lambda.push_back(std::move(bld).build(f));
  }
  out.cone = mapping_cone(out.source, out.target, out.lambda);
  return out;
}

BlockComplex TriangularContext::cone(const std::vector<std::size_t>& ids,
                                     const std::set<std::pair<std::size_t, std::size_t>>& pairs) {
  ConeComplex parts = cone_parts(ids, pairs);
  BlockComplex out;
  out.members = sorted_unique(ids);
  out.complex = std::move(parts.cone);
  for (std::size_t n = 0; n < out.complex.dims.size(); ++n) {
    std::vector<BlockSpan> blocks;
    std::size_t off = 0;
    auto push = [&](const std::string& name, std::size_t size) {
      blocks.push_back({name, off, size});
      off += size;
    };
    push("A", hochschild_a().dims[n]);
    for (const auto& [i, j] : pairs) push(pair_name("tri", i, j), tri(i, j).complex.dims[n]);
    push("B", hochschild_b().dims[n]);
    if (n >= 1) {
      for (const auto& [i, j] : pairs) push(pair_name("homA", i, j), tri(i, j).c_a.dims[n - 1]);
      for (const auto& [i, j] : pairs) push(pair_name("homB", i, j), tri(i, j).c_b.dims[n - 1]);
    }
    if (off != out.complex.dims[n]) throw Error("internal: cone block sizes do not add up");
    out.blocks.push_back(std::move(blocks));
  }
  return out;
}

BlockComplex TriangularContext::family_cone(const std::vector<std::size_t>& ids) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (auto i : ids) pairs.insert({i, i});
  return cone(ids, pairs);
}

BlockComplex TriangularContext::full_cone(const std::vector<std::size_t>& ids) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (auto i : ids)
    for (auto j : ids) pairs.insert({i, j});
  return cone(ids, pairs);
}

ChainMap block_projection(const BlockComplex& from, const BlockComplex& to) {
  const Field& f = from.complex.field;
  ChainMap out;
  const std::size_t degs = std::min(from.blocks.size(), to.blocks.size());
  for (std::size_t n = 0; n < degs; ++n) {
    MatBuilder bld(to.complex.dims[n], from.complex.dims[n]);
    for (const auto& blk : to.blocks[n]) {
      const BlockSpan* src = find_block(from.blocks[n], blk.name);
      if (!src || src->size != blk.size) throw Error("block_projection: block " + blk.name + " missing in source");
      bld.add_block(blk.offset, src->offset, Mat::identity(blk.size));
    }
    out.push_back(std::move(bld).build(f));
  }
  return out;
}

ChainMap block_section(const BlockComplex& from, const BlockComplex& to) {
  ChainMap p = block_projection(to, from);
  for (auto& m : p) m = m.transpose();
  return p;
}

BlockComplex block_kernel(const BlockComplex& c, const BlockComplex& quotient) {
  BlockComplex out;
  out.members = c.members;
  std::vector<std::vector<bool>> keep;
  for (std::size_t n = 0; n < c.blocks.size(); ++n) {
    std::vector<bool> mask(c.complex.dims[n], false);
    std::vector<BlockSpan> blocks;
    std::size_t off = 0;
    for (const auto& blk : c.blocks[n]) {
      if (n < quotient.blocks.size() && find_block(quotient.blocks[n], blk.name)) continue;
      for (std::size_t i = 0; i < blk.size; ++i) mask[blk.offset + i] = true;
      blocks.push_back({blk.name, off, blk.size});
      off += blk.size;
    }
    keep.push_back(std::move(mask));
    out.blocks.push_back(std::move(blocks));
  }
  out.complex = restrict_complex(c.complex, keep);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::Happel: return "happel";
    case SequenceKind::DirectSumRestriction: return "direct_sum_restriction";
    case SequenceKind::SubfamilyRestriction: return "subfamily_restriction";
    case SequenceKind::MayerVietoris: return "mayer_vietoris";
    case SequenceKind::CoverMayerVietoris: return "cover_mayer_vietoris";
    case SequenceKind::PartitionMayerVietoris: return "partition_mayer_vietoris";
    case SequenceKind::ConeTriangle: return "cone_triangle";
    case SequenceKind::MultiplicitySplit: return "multiplicity_split";
    case SequenceKind::DeltaFiveTerm: return "delta_five_term";
  }
  return "unknown";
}

bool SequenceReport::all_verified_exact() const {
  if (!short_exact_at_cochain_level) return false;
  for (const auto& e : exact_at)
    if (e && !*e) return false;
  return true;
}

std::size_t SequenceReport::verified_count() const {
  std::size_t k = 0;
  for (const auto& e : exact_at)
    if (e && *e) ++k;
  return k;
}

namespace {

Mat induced_map(const Field& f, const Mat& map, const std::vector<Vec>& reps, const QuotientBasis& target) {
  std::vector<Vec> cols;
  for (const auto& v : reps) cols.push_back(target.coordinates(map.apply(f, v)));
  return Mat::from_columns(f, target.dim(), cols);
}

}  // namespace

SequenceReport les_report(const ShortExactSequence& s, SequenceKind kind) {
  const Field& f = s.mid.field;
  SequenceReport rep;
  rep.kind = kind;

  bool ok = is_chain_map(s.sub, s.mid, s.incl) && is_chain_map(s.mid, s.quot, s.proj);
  const std::size_t degs = std::min({s.sub.dims.size(), s.mid.dims.size(), s.quot.dims.size(), s.incl.size(),
                                     s.proj.size()});
  for (std::size_t n = 0; ok && n < degs; ++n) {
    if (s.incl[n].rows() != s.mid.dims[n] || s.incl[n].cols() != s.sub.dims[n] ||
        s.proj[n].rows() != s.quot.dims[n] || s.proj[n].cols() != s.mid.dims[n]) {
      ok = false;
      break;
    }
    if (!multiply(f, s.proj[n], s.incl[n]).is_zero()) ok = false;
    if (rank(f, s.incl[n]) != s.sub.dims[n]) ok = false;
    if (rank(f, s.proj[n]) != s.quot.dims[n]) ok = false;
    if (s.sub.dims[n] + s.quot.dims[n] != s.mid.dims[n]) ok = false;
  }
  rep.short_exact_at_cochain_level = ok;
  if (!ok) return rep;

  const std::size_t r = std::min({s.sub.reported(), s.mid.reported(), s.quot.reported()});
  const CohomologyResult hs = cohomology(s.sub), hm = cohomology(s.mid), hq = cohomology(s.quot);
  for (std::size_t n = 0; n < r; ++n) {
    rep.nodes.push_back({s.sub_label, n, hs.dims[n]});
    rep.nodes.push_back({s.mid_label, n, hm.dims[n]});
    rep.nodes.push_back({s.quot_label, n, hq.dims[n]});
  }
  for (std::size_t n = 0; n < r; ++n) {
    rep.maps.push_back(induced_map(f, s.incl[n], hs.representatives(n), hm.classes[n]));
    rep.maps.push_back(induced_map(f, s.proj[n], hm.representatives(n), hq.classes[n]));
    if (n + 1 >= r) break;
    Solver lift(f, s.proj[n]);
    Solver back(f, s.incl[n + 1]);
    std::vector<Vec> cols;
    for (const auto& q : hq.representatives(n)) {
      auto c = lift.solve(q);
      if (!c) throw Error("internal: projection is not surjective");
      auto z = back.solve(s.mid.d[n].apply(f, *c));
      if (!z) throw Error("internal: coboundary of a lift is not in the subcomplex");
      cols.push_back(hs.classes[n + 1].coordinates(*z));
    }
    rep.maps.push_back(Mat::from_columns(f, hs.dims[n + 1], cols));
  }
  for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
    if (i >= rep.maps.size()) {
      rep.exact_at.push_back(std::nullopt);
      continue;
    }
    const Mat& h = rep.maps[i];
    const std::size_t dim = rep.nodes[i].dim;
    std::size_t rg = 0;
    bool zero = true;
    if (i > 0) {
      const Mat& g = rep.maps[i - 1];
      rg = rank(f, g);
      zero = multiply(f, h, g).is_zero();
    }
    rep.exact_at.push_back(zero && rg + rank(f, h) == dim);
  }
  return rep;
}

SequenceReport cone_les_report(const ConeComplex& c) {
  ShortExactSequence s;
  s.sub = shift_down(c.target);
  s.mid = c.cone;
  s.quot = c.source;
  const Field& f = c.cone.field;
  for (std::size_t n = 0; n < c.cone.dims.size(); ++n) {
    const std::size_t ds = c.source.dims[n];
    const std::size_t dt = n ? c.target.dims[n - 1] : 0;
    MatBuilder in(c.cone.dims[n], dt), pr(ds, c.cone.dims[n]);
    in.add_block(ds, 0, Mat::identity(dt));
    pr.add_block(0, 0, Mat::identity(ds));
    s.incl.push_back(std::move(in).build(f));
    s.proj.push_back(std::move(pr).build(f));
  }
  s.sub_label = "target[-1]";
  s.mid_label = "cone";
  s.quot_label = "source";
  return les_report(s, SequenceKind::ConeTriangle);
}

long alternating_sum(const SequenceReport& r, std::size_t first, std::size_t last) {
  long s = 0;
  for (std::size_t i = first; i <= last && i < r.nodes.size(); ++i) {
    const long d = static_cast<long>(r.nodes[i].dim);
    s += ((i - first) % 2 == 0) ? d : -d;
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

SequenceReport restriction_report(const BlockComplex& mid, const BlockComplex& quot, SequenceKind kind,
                                  std::string sub_label, std::string mid_label, std::string quot_label) {
  BlockComplex sub = block_kernel(mid, quot);
  ShortExactSequence s;
  s.sub = sub.complex;
  s.mid = mid.complex;
  s.quot = quot.complex;
  s.incl = block_section(sub, mid);
  s.proj = block_projection(mid, quot);
  s.sub_label = std::move(sub_label);
  s.mid_label = std::move(mid_label);
  s.quot_label = std::move(quot_label);
  return les_report(s, kind);
}

std::vector<std::size_t> all_ids(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

ConeComplex lambda_cone(const Family& e, std::size_t n_max) {
  TriangularContext ctx(e.a(), e.b(), e.members, n_max);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < e.members.size(); ++i) pairs.insert({i, i});
  return ctx.cone_parts(all_ids(e.members.size()), pairs);
}

CohomologyResult modified_cohomology(const Family& e, std::size_t n_max) {
  return cohomology(lambda_cone(e, n_max).cone);
}

SequenceReport happel_report(const BimodulePtr& m, std::size_t n_max) {
  TriangularContext ctx(m->left_ptr(), m->right_ptr(), {m}, n_max);
  return restriction_report(ctx.family_cone({0}), ctx.family_cone({}), SequenceKind::Happel, "Ext^{n-1}(M,M)",
                            "HH^n(T)", "HH^n(A) x HH^n(B)");
}

SequenceReport direct_sum_restriction_report(const BimodulePtr& m, const BimodulePtr& n, std::size_t n_max) {
  require_same_base(*m, *n);
  TriangularContext ctx(m->left_ptr(), m->right_ptr(), {m, n}, n_max);
  return restriction_report(ctx.full_cone({0, 1}), ctx.full_cone({1}), SequenceKind::DirectSumRestriction,
                            "kernel", "HH^n(T_{M+N})", "HH^n(T_N)");
}

SequenceReport subfamily_report(TriangularContext& ctx, const std::vector<std::size_t>& e,
                                const std::vector<std::size_t>& f) {
  if (!is_subset(f, e)) throw Error("subfamily_report: F is not contained in E");
  return restriction_report(ctx.family_cone(e), ctx.family_cone(f), SequenceKind::SubfamilyRestriction,
                            "prod Sigma_L", "H^n" + set_name(sorted_unique(e)), "H^n" + set_name(sorted_unique(f)));
}

SequenceReport cover_report(TriangularContext& ctx, const std::vector<std::size_t>& e,
                            const std::vector<std::vector<std::size_t>>& cover, SequenceKind kind) {
  const Field& f = ctx.field();
  if (cover.empty()) throw CoverConditionViolated("the cover has no members");
  const auto ee = sorted_unique(e);
  std::vector<std::size_t> uni;
  for (const auto& u : cover) {
    if (!is_subset(u, ee)) throw CoverConditionViolated("cover member " + set_name(sorted_unique(u)) + " is not inside E");
    uni.insert(uni.end(), u.begin(), u.end());
  }
  if (sorted_unique(uni) != ee) throw CoverConditionViolated("the cover does not exhaust E");
  for (std::size_t i = 1; i < cover.size(); ++i)
    for (std::size_t j = i + 1; j < cover.size(); ++j)
      if (!is_subset(intersect(cover[i], cover[j]), cover[0]))
        throw CoverConditionViolated("U_" + std::to_string(i) + " n U_" + std::to_string(j) + " is not inside U_0");

  BlockComplex whole = ctx.family_cone(ee);
  std::vector<BlockComplex> parts, overlaps;
  for (const auto& u : cover) parts.push_back(ctx.family_cone(u));
  for (std::size_t i = 1; i < cover.size(); ++i) overlaps.push_back(ctx.family_cone(intersect(cover[0], cover[i])));

  ShortExactSequence s;
  s.sub = whole.complex;
  std::vector<CochainComplex> mid_parts, quot_parts;
  for (const auto& p : parts) mid_parts.push_back(p.complex);
  for (const auto& p : overlaps) quot_parts.push_back(p.complex);
  s.mid = direct_sum(mid_parts);
  s.quot = quot_parts.empty() ? zero_complex(f, whole.complex.dims.size()) : direct_sum(quot_parts);

  std::vector<ChainMap> rho_plus;
  for (const auto& p : parts) rho_plus.push_back(block_projection(whole, p));
  std::vector<ChainMap> rho0, rhoi;
  for (std::size_t i = 1; i < cover.size(); ++i) {
    rho0.push_back(block_projection(parts[0], overlaps[i - 1]));
    rhoi.push_back(block_projection(parts[i], overlaps[i - 1]));
  }
  for (std::size_t n = 0; n < s.mid.dims.size(); ++n) {
    std::vector<Mat> rows;
    for (const auto& r : rho_plus) rows.push_back(r[n]);
    s.incl.push_back(vstack(f, rows));
    MatBuilder bld(s.quot.dims[n], s.mid.dims[n]);
    std::size_t row = 0;
    std::vector<std::size_t> col_off(parts.size(), 0);
    for (std::size_t i = 1; i < parts.size(); ++i) col_off[i] = col_off[i - 1] + parts[i - 1].complex.dims[n];
    for (std::size_t i = 1; i < cover.size(); ++i) {
      bld.add_block(row, col_off[0], rho0[i - 1][n]);
      bld.add_block(row, col_off[i], rhoi[i - 1][n], -1);
      row += overlaps[i - 1].complex.dims[n];
    }
    s.proj.push_back(std::move(bld).build(f));
  }
  s.sub_label = "H^n" + set_name(ee);
  s.mid_label = "prod H^n U_i";
  s.quot_label = "prod H^n (U_0 n U_i)";
  return les_report(s, kind);
}

MapIdentityReport map_identities(TriangularContext& ctx, const std::vector<std::size_t>& e) {
  const auto ee = sorted_unique(e);
  if (ee.size() > 4) throw Error("map_identities: at most four members are supported");
  const Field& f = ctx.field();
  const std::size_t full = std::size_t{1} << ee.size();
  std::vector<BlockComplex> cones;
  for (std::size_t mask = 0; mask < full; ++mask) {
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < ee.size(); ++k)
      if (mask & (std::size_t{1} << k)) ids.push_back(ee[k]);
    cones.push_back(ctx.family_cone(ids));
  }
  auto sub = [](std::size_t x, std::size_t y) { return (x & ~y) == 0; };
  auto rho = [&](std::size_t to, std::size_t from) { return block_projection(cones[from], cones[to]); };
  auto sigma = [&](std::size_t to, std::size_t from) { return block_section(cones[from], cones[to]); };
  auto compose = [&](const ChainMap& g, const ChainMap& h) {
    ChainMap out;
    for (std::size_t n = 0; n < std::min(g.size(), h.size()); ++n) out.push_back(multiply(f, g[n], h[n]));
    return out;
  };
  MapIdentityReport rep;
  for (std::size_t big = 0; big < full; ++big)
    for (std::size_t mid = 0; mid < full; ++mid) {
      if (!sub(mid, big)) continue;
      if (!is_chain_map(cones[big].complex, cones[mid].complex, rho(mid, big))) rep.projections_are_chain_maps = false;
      for (std::size_t small = 0; small < full; ++small) {
        if (sub(small, mid)) {
          if (compose(rho(small, mid), rho(mid, big)) != rho(small, big)) rep.functoriality = false;
          if (compose(sigma(big, mid), sigma(mid, small)) != sigma(big, small)) rep.section_functoriality = false;
          rep.checked += 2;
        }
        if (sub(small, big)) {
          const std::size_t meet = mid & small;
          if (compose(rho(mid, big), sigma(big, small)) != compose(sigma(mid, meet), rho(meet, small)))
            rep.section_identity = false;
          ++rep.checked;
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------

bool SplitReport::all_hold() const {
  return section_found && std::all_of(identity_holds.begin(), identity_holds.end(), [](bool b) { return b; });
}

SplitReport multiplicity_split_check(const Family& e, std::size_t n_max) {
  if (e.members.empty()) throw Error("multiplicity_split_check: empty family");
  std::vector<std::size_t> mult = e.multiplicities;
  if (mult.empty()) mult.assign(e.members.size(), 1);
  if (mult.size() != e.members.size()) throw Error("multiplicities do not match the members");
  for (auto x : mult)
    if (x == 0) throw Error("multiplicities must be positive");
  const AlgebraPtr a = e.a(), b = e.b();
  SplitReport rep;
  rep.mid_dims = hh_dims(*triangular_algebra(a, b, e.total()), n_max);
  rep.rhs_dims = hh_dims(*triangular_algebra(a, b, e.reduced_total()), n_max);
  rep.lhs_dims.assign(rep.mid_dims.size(), 0);
  for (std::size_t i = 0; i < e.members.size(); ++i)
    for (std::size_t j = 0; j < e.members.size(); ++j) {
      const std::size_t w = mult[i] * mult[j] - 1;
      if (w == 0) continue;
      auto ext = ext_dims(*e.members[i], *e.members[j], n_max);
      for (std::size_t n = 1; n < rep.lhs_dims.size(); ++n) rep.lhs_dims[n] += w * ext[n - 1];
    }
  for (std::size_t n = 0; n < rep.mid_dims.size(); ++n)
    rep.identity_holds.push_back(rep.mid_dims[n] == rep.lhs_dims[n] + rep.rhs_dims[n]);

  // Restriction from the list with repeated copies to the list of first copies.
  std::vector<BimodulePtr> copies;
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    firsts.push_back(copies.size());
    for (std::size_t k = 0; k < mult[i]; ++k) copies.push_back(e.members[i]);
  }
  TriangularContext ctx(a, b, copies, n_max);
  SequenceReport les = restriction_report(ctx.full_cone(all_ids(copies.size())), ctx.full_cone(firsts),
                                          SequenceKind::MultiplicitySplit, "kernel", "HH^n(T_M)", "HH^n(T_M')");
  rep.section_found = les.short_exact_at_cochain_level;
  // r* : middle -> quotient must be onto in every reported degree.
  for (std::size_t i = 1; rep.section_found && i < les.nodes.size(); i += 3)
    if (i < les.maps.size() && rank(ctx.field(), les.maps[i]) != les.nodes[i + 1].dim) rep.section_found = false;
  return rep;
}

bool ExchangeReport::all_hold() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

namespace {

enum class FactorStatus { Found, NotAFactor, Unknown };

FactorStatus direct_factor_status(const Bimodule& m, const Bimodule& x) {
  require_same_base(m, x);
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dx = x.dim();
  if (dm == 0) return FactorStatus::Found;
  Subspace into = hom_space(m, x, HomSide::OverBoth);
  Subspace back = hom_space(x, m, HomSide::OverBoth);
  std::vector<Mat> is, ps;
  for (const auto& v : into.basis()) is.push_back(vec_to_mat(v, dm, dx));
  for (const auto& v : back.basis()) ps.push_back(vec_to_mat(v, dx, dm));
  const Vec id = mat_to_vec(Mat::identity(dm));
  // The identity must at least be a sum of composites p i.
  std::vector<Vec> comps;
  for (const auto& p : ps)
    for (const auto& i : is) comps.push_back(mat_to_vec(multiply(f, p, i)));
  if (comps.empty() || !Subspace::span(f, dm * dm, comps).contains(f, id)) return FactorStatus::NotAFactor;

  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::size_t tries = 64 + is.size();
  for (std::size_t t = 0; t < tries; ++t) {
    Mat i(dx, dm);
    if (t < is.size()) {
      i = is[t];
    } else {
      for (std::size_t l = 0; l < is.size(); ++l) i = add(f, i, scale(f, f.reduce(coef(rng)), is[l]));
    }
    std::vector<Vec> cols;
    for (const auto& p : ps) cols.push_back(mat_to_vec(multiply(f, p, i)));
    if (solve(f, Mat::from_columns(f, dm * dm, cols), id)) return FactorStatus::Found;
  }
  return FactorStatus::Unknown;
}

void require_factor(const Bimodule& m, const Bimodule& x, const std::string& what) {
  switch (direct_factor_status(m, x)) {
    case FactorStatus::Found: return;
    case FactorStatus::NotAFactor: throw HypothesisUnverifiable(what + " is not a direct factor");
    case FactorStatus::Unknown: throw HypothesisUnverifiable("no split injection found for " + what);
  }
}

}  // namespace

bool is_direct_factor(const Bimodule& m, const Bimodule& x) {
  return direct_factor_status(m, x) == FactorStatus::Found;
}

ExchangeReport exchange_check(const BimodulePtr& m, const BimodulePtr& n, std::size_t witness_m,
                              std::size_t witness_n, std::size_t n_max) {
  require_same_base(*m, *n);
  if (witness_m == 0 || witness_n == 0) throw HypothesisUnverifiable("witness multiplicities must be positive");
  require_factor(*m, *power(n, witness_n), "M in N^" + std::to_string(witness_n));
  require_factor(*n, *power(m, witness_m), "N in M^" + std::to_string(witness_m));
  const auto a = m->left_ptr(), b = m->right_ptr();
  const auto hm = hh_dims(*triangular_algebra(a, b, m), n_max);
  const auto hn = hh_dims(*triangular_algebra(a, b, n), n_max);
  const auto em = ext_dims(*m, *m, n_max);
  const auto en = ext_dims(*n, *n, n_max);
  ExchangeReport rep;
  for (std::size_t k = 0; k < hm.size(); ++k) {
    rep.lhs.push_back(hm[k] + (k ? en[k - 1] : 0));
    rep.rhs.push_back(hn[k] + (k ? em[k - 1] : 0));
    rep.holds.push_back(rep.lhs.back() == rep.rhs.back());
  }
  return rep;
}

DecompositionReport family_decomposition(const Family& e, std::size_t n_max) {
  if (e.members.empty()) throw Error("family_decomposition: empty family");
  TriangularContext ctx(e.a(), e.b(), e.members, n_max);
  const auto ids = all_ids(e.members.size());
  BlockComplex full = ctx.full_cone(ids);
  BlockComplex fam = ctx.family_cone(ids);
  BlockComplex off = block_kernel(full, fam);
  DecompositionReport rep;
  rep.full_dims = full.complex.dims;
  rep.family_dims = fam.complex.dims;
  rep.off_diagonal_dims = off.complex.dims;
  for (std::size_t n = 0; n < rep.full_dims.size(); ++n)
    if (rep.full_dims[n] != rep.family_dims[n] + rep.off_diagonal_dims[n]) rep.dims_add_up = false;
  // No differential entries between the diagonal and off-diagonal blocks.
  for (std::size_t n = 0; n < full.complex.d.size(); ++n) {
    auto is_fam = [&](std::size_t deg, std::size_t idx) {
      for (const auto& blk : full.blocks[deg])
        if (idx >= blk.offset && idx < blk.offset + blk.size) return find_block(fam.blocks[deg], blk.name) != nullptr;
      return false;
    };
    for (const auto& t : full.complex.d[n].triplets())
      if (is_fam(n + 1, t.row) != is_fam(n, t.col)) rep.off_diagonal_is_direct_summand = false;
  }
  rep.hh_dims = hh_dims(*triangular_algebra(e.a(), e.b(), e.reduced_total()), n_max);
  rep.modified_dims = cohomology(fam.complex, false).dims;
  rep.ext_correction.assign(rep.hh_dims.size(), 0);
  for (std::size_t i = 0; i < e.members.size(); ++i)
    for (std::size_t j = 0; j < e.members.size(); ++j) {
      if (i == j) continue;
      auto ext = ext_dims(*e.members[i], *e.members[j], n_max);
      for (std::size_t n = 1; n < rep.ext_correction.size(); ++n) rep.ext_correction[n] += ext[n - 1];
    }
  for (std::size_t n = 0; n < rep.hh_dims.size(); ++n)
    if (n >= rep.modified_dims.size() || rep.hh_dims[n] != rep.modified_dims[n] + rep.ext_correction[n])
      rep.dimension_identity = false;
  return rep;
}

}  // namespace hhlab
