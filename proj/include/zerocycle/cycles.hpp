#pragma once

#include "zerocycle/linalg.hpp"
#include "zerocycle/perm.hpp"

#include <numeric>
#include <vector>

namespace zc {

/** Integer coefficients (n_1, ..., n_m) of a 0-chain in the canonical labelling (stored 0-based). */
struct Chain
{
	std::vector<long long> n;

	Chain() = default;
	explicit Chain(std::vector<long long> coeffs) : n(std::move(coeffs)) {}

	int m() const { return static_cast<int>(n.size()); }
	long long sum() const { return std::accumulate(n.begin(), n.end(), 0LL); }
	bool is_zero() const
	{
		return std::all_of(n.begin(), n.end(), [](long long x) { return x == 0; });
	}

	/** Relabelled chain with coefficients n_{sigma(i)}. */
	Chain relabel(const Permutation &sigma) const
	{
		std::vector<long long> r(n.size());
		for (int i = 0; i < m(); ++i)
			r[static_cast<size_t>(i)] = n[static_cast<size_t>(sigma(i))];
		return Chain(std::move(r));
	}

	Vec as_vec() const
	{
		Vec v;
		for (long long x : n)
			v.emplace_back(static_cast<long>(x));
		return v;
	}

	friend bool operator==(const Chain &a, const Chain &b) { return a.n == b.n; }
};

inline bool is_cycle(const Chain &c) { return c.sum() == 0; }

/** P_C(z) = sum_j n_j z^{j-1}. */
inline Poly characteristic_poly(const Chain &c)
{
	std::vector<GRat> coeffs;
	for (long long x : c.n)
		coeffs.emplace_back(static_cast<long>(x));
	return Poly(std::move(coeffs));
}

inline Poly vector_poly(const Vec &v) { return Poly(v); }

/** Basis of span{sigma . n : sigma in G}, grown by applying generators until stable. */
inline Mat orbit_span(const Chain &c, const PermGroup &g)
{
	if (g.degree() != c.m())
		throw Error(ErrorKind::ShapeError, "chain length differs from group degree");
	SpanBuilder span(static_cast<size_t>(c.m()));
	if (c.is_zero())
		return {};
	span.add(c.as_vec());
	for (size_t k = 0; k < span.size(); ++k)
	{
		Vec b = span.basis()[k];
		for (auto &p : g.generators())
		{
			Vec img(b.size());
			for (int i = 0; i < c.m(); ++i)
				img[static_cast<size_t>(i)] = b[static_cast<size_t>(p(i))];
			span.add(img);
		}
	}
	return span.basis();
}

/** Balanced iff Phi_m divides sum_i b_i z^{i-1} for every orbit-span basis vector b. */
inline bool is_balanced(const Chain &c, const PermGroup &g)
{
	if (c.m() <= 1)
		return c.is_zero();
	Poly phi = cyclotomic(c.m());
	for (auto &b : orbit_span(c, g))
		if (!phi.divides(vector_poly(b)))
			return false;
	return true;
}

/** Cells {i : i = k mod m/d} for an inner factor of degree d, ordered by k. */
inline BlockSystem residue_blocks(int m, int d)
{
	if (d < 1 || m % d != 0)
		throw Error(ErrorKind::ShapeError, "inner degree must divide the chain length");
	int count = m / d;
	BlockSystem s;
	s.blocks.resize(static_cast<size_t>(count));
	for (int i = 0; i < m; ++i)
		s.blocks[static_cast<size_t>(i % count)].push_back(i);
	return s;
}

namespace detail {

inline void check_blocks(const Chain &c, const BlockSystem &blocks)
{
	int total = 0;
	std::vector<bool> seen(static_cast<size_t>(c.m()), false);
	for (auto &b : blocks.blocks)
	{
		if (b.size() != blocks.blocks[0].size())
			throw Error(ErrorKind::ShapeError, "blocks have unequal sizes");
		for (int x : b)
		{
			if (x < 0 || x >= c.m() || seen[static_cast<size_t>(x)])
				throw Error(ErrorKind::ShapeError, "blocks do not partition the chain indices");
			seen[static_cast<size_t>(x)] = true;
			++total;
		}
	}
	if (total != c.m())
		throw Error(ErrorKind::ShapeError, "blocks do not cover the chain indices");
}

} // namespace detail

/** Block sums: the chain of the outer factor. */
inline Chain project(const Chain &c, const BlockSystem &blocks)
{
	detail::check_blocks(c, blocks);
	std::vector<long long> r;
	for (auto &b : blocks.blocks)
	{
		long long s = 0;
		for (int x : b)
			s += c.n[static_cast<size_t>(x)];
		r.push_back(s);
	}
	return Chain(std::move(r));
}

/** Restrictions to each block, in block order and positional order within a block. */
inline std::vector<Chain> invariant_parts(const Chain &c, const BlockSystem &blocks)
{
	detail::check_blocks(c, blocks);
	std::vector<Chain> parts;
	for (auto &b : blocks.blocks)
	{
		std::vector<int> sorted = b;
		std::sort(sorted.begin(), sorted.end());
		std::vector<long long> r;
		for (int x : sorted)
			r.push_back(c.n[static_cast<size_t>(x)]);
		parts.emplace_back(std::move(r));
	}
	return parts;
}

struct Summand
{
	int divisor = 0;
	int dimension = 0;
	std::vector<int> indices; // k with gcd(m, k) = m / divisor
};

struct ModuleStructure
{
	int m = 0;
	std::vector<Summand> summands;

	std::vector<int> all_indices() const
	{
		std::vector<int> r;
		for (auto &s : summands)
			r.insert(r.end(), s.indices.begin(), s.indices.end());
		std::sort(r.begin(), r.end());
		return r;
	}
};

/** Summands U_d for d in D(f) with Phi_d | P_C. */
inline ModuleStructure module_structure(const Chain &c, std::vector<int> divisors_of_f)
{
	int m = c.m();
	std::sort(divisors_of_f.begin(), divisors_of_f.end());
	divisors_of_f.erase(std::unique(divisors_of_f.begin(), divisors_of_f.end()), divisors_of_f.end());
	Poly pc = characteristic_poly(c);
	ModuleStructure ms{m, {}};
	for (int d : divisors_of_f)
	{
		if (d < 1 || m % d != 0)
			throw Error(ErrorKind::ShapeError, "divisor does not divide the degree");
		if (!cyclotomic(d).divides(pc))
			continue;
		Summand s{d, 0, {}};
		for (int k = 0; k < m; ++k)
			if (std::gcd(m, k) == m / d)
				s.indices.push_back(k);
		s.dimension = static_cast<int>(s.indices.size());
		ms.summands.push_back(std::move(s));
	}
	return ms;
}

} // namespace zc
