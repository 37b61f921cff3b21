#pragma once

#include "zerocycle/poly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace zc {

template <class T> using Cx = std::complex<T>;

template <class T> Cx<T> horner(const std::vector<Cx<T>> &c, Cx<T> x)
{
	Cx<T> r(0);
	for (auto it = c.rbegin(); it != c.rend(); ++it)
		r = r * x + *it;
	return r;
}

/** Value and derivative together. */
template <class T> std::pair<Cx<T>, Cx<T>> horner2(const std::vector<Cx<T>> &c, Cx<T> x)
{
	Cx<T> p(0), dp(0);
	for (auto it = c.rbegin(); it != c.rend(); ++it)
	{
		dp = dp * x + p;
		p = p * x + *it;
	}
	return {p, dp};
}

/** Magnitude scale sum |c_k| |x|^k, for roundoff bounds on horner(c, x). */
template <class T> T horner_scale(const std::vector<Cx<T>> &c, Cx<T> x)
{
	T r = 0, ax = std::abs(x);
	for (auto it = c.rbegin(); it != c.rend(); ++it)
		r = r * ax + std::abs(*it);
	return r;
}

template <class T> std::vector<Cx<T>> derivative(const std::vector<Cx<T>> &c)
{
	std::vector<Cx<T>> d;
	for (size_t k = 1; k < c.size(); ++k)
		d.push_back(c[k] * T(k));
	return d;
}

/**
 * Roots of a polynomial given by complex coefficients (lowest first, nonzero
 * leading term) from the companion matrix, then a few Newton steps.
 */
template <class T = double> std::vector<Cx<T>> poly_roots(const std::vector<Cx<T>> &c)
{
	int n = static_cast<int>(c.size()) - 1;
	if (n < 1)
		return {};
	std::vector<Cx<double>> cd;
	for (auto &x : c)
		cd.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
	Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
	for (int i = 1; i < n; ++i)
		comp(i, i - 1) = 1.0;
	for (int i = 0; i < n; ++i)
		comp(i, n - 1) = -cd[static_cast<size_t>(i)] / cd.back();
	Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
	if (solver.info() != Eigen::Success)
		throw Error(ErrorKind::NumericFailure, "companion eigenvalue iteration failed");
	std::vector<Cx<T>> roots;
	auto dc = derivative(c);
	for (int i = 0; i < n; ++i)
	{
		Cx<double> r0 = solver.eigenvalues()(i);
		Cx<T> r(static_cast<T>(r0.real()), static_cast<T>(r0.imag()));
		for (int it = 0; it < 8; ++it)
		{
			Cx<T> d = horner(dc, r);
			if (std::abs(d) == T(0))
				break;
			Cx<T> step = horner(c, r) / d;
			r -= step;
			if (std::abs(step) <= std::numeric_limits<T>::epsilon() * (1 + std::abs(r)))
				break;
		}
		roots.push_back(r);
	}
	return roots;
}

/** Roots of an exact polynomial; the input should be square-free for clean polishing. */
template <class T = double> std::vector<Cx<T>> poly_roots(const Poly &p) { return poly_roots<T>(p.to_complex<T>()); }

} // namespace zc
