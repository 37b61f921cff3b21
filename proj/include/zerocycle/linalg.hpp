#pragma once

#include "zerocycle/poly.hpp"

#include <vector>

namespace zc {

using Vec = std::vector<GRat>;
using Mat = std::vector<Vec>;

/** Reduced row echelon form in place; returns pivot columns. */
inline std::vector<size_t> rref(Mat &a)
{
	std::vector<size_t> pivots;
	if (a.empty())
		return pivots;
	size_t rows = a.size(), cols = a[0].size(), r = 0;
	for (size_t c = 0; c < cols && r < rows; ++c)
	{
		size_t p = r;
		while (p < rows && a[p][c].is_zero())
			++p;
		if (p == rows)
			continue;
		std::swap(a[p], a[r]);
		GRat inv = a[r][c].inverse();
		for (size_t k = c; k < cols; ++k)
			a[r][k] *= inv;
		for (size_t i = 0; i < rows; ++i)
		{
			if (i == r || a[i][c].is_zero())
				continue;
			GRat factor = a[i][c];
			for (size_t k = c; k < cols; ++k)
				if (!a[r][k].is_zero())
					a[i][k] -= factor * a[r][k];
		}
		pivots.push_back(c);
		++r;
	}
	a.resize(r);
	return pivots;
}

/** Basis of {x : a x = 0}; `cols` is needed when a has no rows. */
inline Mat kernel(Mat a, size_t cols)
{
	auto pivots = rref(a);
	std::vector<bool> is_pivot(cols, false);
	for (size_t p : pivots)
		is_pivot[p] = true;
	Mat basis;
	for (size_t free = 0; free < cols; ++free)
	{
		if (is_pivot[free])
			continue;
		Vec v(cols);
		v[free] = GRat(1);
		for (size_t r = 0; r < pivots.size(); ++r)
			v[pivots[r]] = -a[r][free];
		basis.push_back(std::move(v));
	}
	return basis;
}

inline size_t rank(Mat a) { return rref(a).size(); }

/**
 * Incrementally grown linearly independent set. Keeps an echelon copy for
 * cheap membership tests and the original vectors as the reported basis.
 */
class SpanBuilder
{
  public:
	explicit SpanBuilder(size_t dim) : dim_(dim) {}

	/** Adds v if it is independent of the current span; reports whether it was. */
	bool add(const Vec &v)
	{
		Vec r = reduce(v);
		size_t lead = 0;
		while (lead < dim_ && r[lead].is_zero())
			++lead;
		if (lead == dim_)
			return false;
		GRat inv = r[lead].inverse();
		for (auto &x : r)
			x *= inv;
		echelon_.push_back({lead, std::move(r)});
		basis_.push_back(v);
		return true;
	}

	bool contains(const Vec &v) const
	{
		Vec r = reduce(v);
		for (auto &x : r)
			if (!x.is_zero())
				return false;
		return true;
	}

	const Mat &basis() const { return basis_; }
	size_t size() const { return basis_.size(); }
	size_t dim() const { return dim_; }

  private:
	Vec reduce(Vec v) const
	{
		for (auto &[lead, row] : echelon_)
		{
			if (v[lead].is_zero())
				continue;
			GRat factor = v[lead];
			for (size_t k = lead; k < dim_; ++k)
				if (!row[k].is_zero())
					v[k] -= factor * row[k];
		}
		return v;
	}

	size_t dim_;
	std::vector<std::pair<size_t, Vec>> echelon_;
	Mat basis_;
};

/** det(x I - a) by Faddeev-LeVerrier; monic of degree n. */
inline Poly charpoly(const Mat &a)
{
	size_t n = a.size();
	std::vector<GRat> c(n + 1);
	c[n] = GRat(1);
	Mat m(n, Vec(n));
	for (size_t k = 1; k <= n; ++k)
	{
		// M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
		Mat next(n, Vec(n));
		for (size_t i = 0; i < n; ++i)
			for (size_t j = 0; j < n; ++j)
			{
				GRat s;
				for (size_t l = 0; l < n; ++l)
					if (!a[i][l].is_zero() && !m[l][j].is_zero())
						s += a[i][l] * m[l][j];
				if (i == j)
					s += c[n - k + 1];
				next[i][j] = std::move(s);
			}
		m = std::move(next);
		GRat tr;
		for (size_t i = 0; i < n; ++i)
			for (size_t l = 0; l < n; ++l)
				if (!a[i][l].is_zero() && !m[l][i].is_zero())
					tr += a[i][l] * m[l][i];
		c[n - k] = -tr / GRat(static_cast<long>(k));
	}
	return Poly(std::move(c));
}

/** Matrix of multiplication by p in Q(i)[z]/(modulus), basis 1, z, ..., z^{n-1}. */
inline Mat multiplication_matrix(const Poly &p, const Poly &modulus)
{
	int n = modulus.degree();
	Mat a(static_cast<size_t>(n), Vec(static_cast<size_t>(n)));
	Poly col = p % modulus;
	for (int j = 0; j < n; ++j)
	{
		for (int i = 0; i < n; ++i)
			a[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[i];
		col = (col * Poly::z()) % modulus;
	}
	return a;
}

} // namespace zc
