#pragma once

#include "zerocycle/solver.hpp"

#include <random>

namespace zc::test {

inline Poly z() { return Poly::z(); }
inline Poly c(long v) { return Poly::constant(GRat(v)); }
inline Poly P(std::initializer_list<long> lowest_first)
{
	std::vector<GRat> v;
	for (long x : lowest_first)
		v.emplace_back(x);
	return Poly(std::move(v));
}

inline Poly cubic_outer() { return P({0, 1, -1, 1}); }  // w^3 - w^2 + w
inline Poly cubic_inner() { return P({-1, 0, 2, 1}); }  // z^3 + 2z^2 - 1
inline Chain cubic_pair_cycle() { return Chain({1, -1, 0, 1, -1, 0, 1, -1, 0}); }
inline Chain cubic_over_z6_cycle()
{
	std::vector<long long> n(18, 0);
	for (int k : {0, 6, 12})
		n[static_cast<size_t>(k)] = 1;
	for (int k : {1, 7, 13})
		n[static_cast<size_t>(k)] = -1;
	return Chain(n);
}

/** Random polynomial of exact degree `deg` with integer coefficients in [-r, r]. */
inline Poly random_poly(std::mt19937_64 &rng, int deg, int r = 5, bool gaussian = false)
{
	std::uniform_int_distribution<int> u(-r, r);
	std::vector<GRat> v;
	for (int k = 0; k <= deg; ++k)
		v.push_back(gaussian ? GRat(Rational(u(rng)), Rational(u(rng))) : GRat(u(rng)));
	while (v.back().is_zero())
		v.back() = GRat(u(rng));
	return Poly(std::move(v));
}

inline Chain random_chain(std::mt19937_64 &rng, int m, int r = 3, bool cycle = false)
{
	std::uniform_int_distribution<int> u(-r, r);
	std::vector<long long> n(static_cast<size_t>(m));
	for (auto &x : n)
		x = u(rng);
	if (cycle)
		n.back() -= std::accumulate(n.begin(), n.end(), 0LL);
	return Chain(n);
}

inline Permutation random_element(std::mt19937_64 &rng, const std::vector<Permutation> &elements)
{
	std::uniform_int_distribution<size_t> u(0, elements.size() - 1);
	return elements[u(rng)];
}

} // namespace zc::test
