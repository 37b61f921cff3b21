#pragma once

#include "zerocycle/linalg.hpp"
#include "zerocycle/numeric.hpp"
#include "zerocycle/perm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <tuple>
#include <vector>

namespace zc {

struct CriticalValue
{
	Cx<double> value;
	int multiplicity = 0; // number of distinct critical points mapping here
};

struct CriticalData
{
	std::vector<Cx<double>> critical_points;
	std::vector<CriticalValue> critical_values;
	double dedup_tolerance = 1e-8;

	double max_abs_value() const
	{
		double r = 0;
		for (auto &v : critical_values)
			r = std::max(r, std::abs(v.value));
		return r;
	}
};

/**
 * Number of distinct critical values, computed exactly as the degree of the
 * square-free part of the characteristic polynomial of multiplication by f
 * modulo the square-free part of f'.
 */
inline int distinct_critical_value_count(const Poly &f)
{
	Poly sq = squarefree_part(f.derivative());
	if (sq.degree() < 1)
		return 0;
	return squarefree_part(charpoly(multiplication_matrix(f, sq))).degree();
}

/** z0 with f(z + z0) free of z^(m-1); the numerics run on this recentred form. */
inline GRat centre_of(const Poly &f)
{
	int m = f.degree();
	return -f[m - 1] / (GRat(m) * f[m]);
}

inline CriticalData critical_data(const Poly &f)
{
	if (f.degree() < 2)
		throw Error(ErrorKind::InvalidInput, "critical data needs degree >= 2");
	GRat z0 = centre_of(f);
	Poly q = f.shifted(z0);
	Poly sq = squarefree_part(q.derivative());
	CriticalData cd;
	cd.critical_points = poly_roots<double>(sq);
	auto fc = q.to_complex<long double>();
	auto dfc = derivative(fc);
	std::vector<Cx<double>> values;
	double scale_max = 1;
	for (auto &p : cd.critical_points)
	{
		Cx<long double> pl(p.real(), p.imag());
		// polish in extended precision against f' itself to confirm the root
		auto sqc = sq.to_complex<long double>();
		auto dsq = derivative(sqc);
		for (int it = 0; it < 4; ++it)
		{
			Cx<long double> d = horner(dsq, pl);
			if (std::abs(d) == 0)
				break;
			pl -= horner(sqc, pl) / d;
		}
		p = Cx<double>(static_cast<double>(pl.real()), static_cast<double>(pl.imag()));
		long double scale = 0;
		for (size_t k = 0; k < dfc.size(); ++k)
			scale += std::abs(dfc[k]) * std::pow(std::abs(pl), static_cast<long double>(k));
		if (std::abs(horner(dfc, pl)) > 1e-10L * std::max(scale, 1.0L))
			throw Error(ErrorKind::NumericFailure, "critical point did not converge");
		scale_max = std::max(scale_max, 1 + static_cast<double>(horner_scale(fc, pl)));
		Cx<long double> v = horner(fc, pl);
		values.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
	}
	for (auto &p : cd.critical_points)
		p += z0.to_complex<double>();
	// single-linkage merge down to the exact number of distinct values, then demand a clear gap
	size_t n = values.size(), want = static_cast<size_t>(distinct_critical_value_count(f));
	std::vector<std::tuple<double, size_t, size_t>> pairs;
	for (size_t i = 0; i < n; ++i)
		for (size_t j = i + 1; j < n; ++j)
			pairs.emplace_back(std::abs(values[i] - values[j]), i, j);
	std::sort(pairs.begin(), pairs.end());
	std::vector<size_t> root(n);
	std::iota(root.begin(), root.end(), size_t{0});
	auto find = [&](size_t i) {
		while (root[i] != i)
			i = root[i] = root[root[i]];
		return i;
	};
	size_t groups = n, next = 0;
	double merged = 0;
	for (; next < pairs.size() && groups > want; ++next)
	{
		auto [d, i, j] = pairs[next];
		size_t a = find(i), b = find(j);
		if (a == b)
			continue;
		root[b] = a;
		merged = d;
		--groups;
	}
	double gap = std::numeric_limits<double>::infinity();
	for (; next < pairs.size(); ++next)
		if (find(std::get<1>(pairs[next])) != find(std::get<2>(pairs[next])))
		{
			gap = std::get<0>(pairs[next]);
			break;
		}
	if (groups != want || merged > cd.dedup_tolerance * scale_max)
		throw Error(ErrorKind::DegenerateGeometry, "numeric critical value clustering disagrees with the exact count");
	double noise = 1e3 * static_cast<double>(std::numeric_limits<long double>::epsilon()) * scale_max;
	if (gap <= 1e3 * std::max(merged, noise))
		throw Error(ErrorKind::DegenerateGeometry, "two critical values agree only to within the tolerance zone");
	std::vector<int> cluster(n, -1);
	for (size_t i = 0; i < n; ++i)
	{
		size_t r = find(i);
		if (cluster[r] < 0)
		{
			cluster[r] = static_cast<int>(cd.critical_values.size());
			cd.critical_values.push_back({values[i], 0});
		}
		++cd.critical_values[static_cast<size_t>(cluster[r])].multiplicity;
	}
	return cd;
}

/** Piecewise path in the t-plane: straight segments and full circles. */
struct PathPiece
{
	enum Kind { Line, Circle } kind = Line;
	Cx<double> a, b;        // Line: from a to b
	Cx<double> center;      // Circle: center, radius, start angle; counter-clockwise turn
	double radius = 0, angle0 = 0, turn = 0;

	template <class T> Cx<T> at(T s) const
	{
		if (kind == Line)
		{
			Cx<T> aa(a.real(), a.imag()), bb(b.real(), b.imag());
			return aa + (bb - aa) * s;
		}
		T ang = static_cast<T>(angle0) + static_cast<T>(turn) * s;
		return Cx<T>(center.real(), center.imag()) + static_cast<T>(radius) * Cx<T>(std::cos(ang), std::sin(ang));
	}

	static PathPiece line(Cx<double> a, Cx<double> b) { return {Line, a, b, {}, 0, 0, 0}; }
	static PathPiece circle(Cx<double> c, double r, double angle0, double turn)
	{
		return {Circle, {}, {}, c, r, angle0, turn};
	}
	PathPiece reversed() const
	{
		if (kind == Line)
			return line(b, a);
		return circle(center, radius, angle0 + turn, -turn);
	}
};

using Path = std::vector<PathPiece>;

inline Path reversed(const Path &p)
{
	Path r;
	for (auto it = p.rbegin(); it != p.rend(); ++it)
		r.push_back(it->reversed());
	return r;
}

template <class T> struct ContinuationTolerances
{
	static T newton() { return std::is_same_v<T, double> ? T(1e-11) : T(1e-14); }
	static T min_step() { return std::is_same_v<T, double> ? T(1e-9) : T(1e-12); }
};

/**
 * Continue every root of f(z) = t along the path (predictor dz = dt/f'(z),
 * Newton corrector). A step is accepted only if the corrector converges and
 * each root lands at least three times closer to its own previous position
 * than to any other root's previous position.
 */
template <class T>
std::vector<Cx<T>> continue_roots(const std::vector<Cx<T>> &fc, std::vector<Cx<T>> z, const Path &path)
{
	auto dfc = derivative(fc);
	size_t m = z.size();
	for (auto &piece : path)
	{
		T s = 0, h = T(1) / 16;
		Cx<T> t = piece.at<T>(0);
		while (s < 1)
		{
			T step = std::min(h, T(1) - s);
			Cx<T> tn = piece.at<T>(s + step);
			std::vector<Cx<T>> zn(m);
			bool ok = true;
			for (size_t i = 0; i < m && ok; ++i)
			{
				Cx<T> w = z[i] + (tn - t) / horner(dfc, z[i]);
				bool converged = false;
				for (int it = 0; it < 8; ++it)
				{
					auto [p, dp] = horner2(fc, w);
					if (std::abs(dp) == T(0))
						break;
					Cx<T> corr = (p - tn) / dp;
					w -= corr;
					if (!std::isfinite(std::abs(w)))
						break;
					// or residual at roundoff level
					T noise = 64 * std::numeric_limits<T>::epsilon() * (horner_scale(fc, w) + std::abs(tn));
					if (std::abs(corr) <= ContinuationTolerances<T>::newton() * (1 + std::abs(w)) ||
					    std::abs(horner(fc, w) - tn) <= noise)
					{
						converged = true;
						break;
					}
				}
				ok = converged;
				zn[i] = w;
			}
			for (size_t i = 0; i < m && ok; ++i)
			{
				T own = std::abs(zn[i] - z[i]);
				for (size_t j = 0; j < m; ++j)
					if (j != i && 3 * own > std::abs(zn[i] - z[j]))
					{
						ok = false;
						break;
					}
			}
			if (!ok)
			{
				h = step / 2;
				if (h < ContinuationTolerances<T>::min_step())
					throw Error(ErrorKind::NumericFailure, "continuation step underflow");
				continue;
			}
			z = std::move(zn);
			t = tn;
			s += step;
			h = std::min(T(1) / 4, step * T(1.5));
		}
	}
	return z;
}

/**
 * Index j with target[j] nearest to p, provided the nearest is at least three
 * times closer than the second nearest.
 */
template <class T> int unambiguous_match(const Cx<T> &p, const std::vector<Cx<T>> &target)
{
	int best = -1;
	T d1 = std::numeric_limits<T>::infinity(), d2 = d1;
	for (size_t j = 0; j < target.size(); ++j)
	{
		T d = std::abs(p - target[j]);
		if (d < d1)
		{
			d2 = d1;
			d1 = d;
			best = static_cast<int>(j);
		}
		else if (d < d2)
			d2 = d;
	}
	if (target.size() > 1 && 3 * d1 > d2)
		throw Error(ErrorKind::NumericFailure, "ambiguous root matching");
	return best;
}

/** Permutation of labels induced by transporting labelled roots along a closed path. */
template <class T> Permutation path_permutation(const std::vector<Cx<T>> &fc, const std::vector<Cx<T>> &labelled, const Path &loop)
{
	auto end = continue_roots<T>(fc, labelled, loop);
	std::vector<int> img(labelled.size());
	for (size_t i = 0; i < labelled.size(); ++i)
		img[i] = unambiguous_match(end[i], labelled);
	Permutation p(std::move(img));
	if (!p.valid())
		throw Error(ErrorKind::NumericFailure, "loop transport is not a bijection");
	return p;
}

/** Convention text embedded in every report. */
inline constexpr const char *labeling_convention =
    "roots of f(z)=t0 at real basepoint t0=R, R=2*max|critical value|+2; counter-clockwise transport along |t|=R "
    "sends root k to root k+1 (mod m); root 1 is the root that continues along the positive real axis to the "
    "principal branch (t/a_m)^(1/m) - a_{m-1}/(m*a_m) at large t; "
    "generator loops leave t0 vertically to t0+i*eta, run straight toward the critical value, circle it "
    "counter-clockwise and return; generators are listed in increasing argument of (value - (t0+i*eta)) in [0, 2pi), "
    "which is the traversal order whose composite is (1 2 ... m); permutations are written 1-based";

struct Monodromy
{
	Poly f;
	Poly centred;            // f(z + centre)
	Cx<double> centre;
	CriticalData critical;
	double radius = 0;       // R, also the real basepoint t0
	double eta = 0;          // star basepoint offset t0 + i*eta
	std::vector<Cx<double>> labelled_roots; // roots at t0 in label order
	std::vector<Cx<double>> generator_values;
	std::vector<Permutation> generators;
	bool tau_check = false;
	bool extended_precision = false;

	int degree() const { return f.degree(); }
	Cx<double> basepoint() const { return {radius, 0}; }
	Cx<double> star() const { return {radius, eta}; }

	PermGroup group(size_t cap = default_element_cap) const { return PermGroup(degree(), generators, cap); }

	/** Standard loop around the i-th listed critical value. */
	Path loop(size_t i) const { return loop_around(generator_values[i]); }

	Path loop_around(Cx<double> c) const
	{
		Cx<double> t0 = basepoint(), ts = star();
		double gap = std::numeric_limits<double>::infinity();
		for (auto &v : critical.critical_values)
			if (std::abs(v.value - c) > 0)
				gap = std::min(gap, std::abs(v.value - c));
		double r = std::min(gap / 3, 0.1 * std::abs(c - ts));
		// keep the approach segment clear of the other critical values
		for (auto &v : critical.critical_values)
			if (std::abs(v.value - c) > 0)
				r = std::min(r, 0.5 * segment_distance(v.value, ts, c));
		Cx<double> u = (ts - c) / std::abs(ts - c);
		Cx<double> touch = c + r * u;
		Path p{PathPiece::line(t0, ts), PathPiece::line(ts, touch),
		       PathPiece::circle(c, r, std::arg(u), 2 * std::numbers::pi), PathPiece::line(touch, ts),
		       PathPiece::line(ts, t0)};
		return p;
	}

	static double segment_distance(Cx<double> p, Cx<double> a, Cx<double> b)
	{
		Cx<double> ab = b - a;
		double s = std::clamp(((p - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
		return std::abs(p - (a + s * ab));
	}
};

namespace detail {

template <class T> std::vector<Cx<T>> widen(const std::vector<Cx<double>> &v)
{
	std::vector<Cx<T>> r;
	for (auto &x : v)
		r.emplace_back(x.real(), x.imag());
	return r;
}

template <class T> std::vector<Cx<double>> narrow(const std::vector<Cx<T>> &v)
{
	std::vector<Cx<double>> r;
	for (auto &x : v)
		r.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
	return r;
}

/** Fibre of f over t, polished in precision T. */
template <class T> std::vector<Cx<T>> fibre(const std::vector<Cx<T>> &fc, Cx<T> t)
{
	auto c = fc;
	c[0] -= t;
	return poly_roots<T>(c);
}

/**
 * Index of the root of f(z) = R continuing, along the positive real axis, to
 * the principal branch (t/a_m)^(1/m) - a_{m-1}/(m a_m) at large t.
 */
template <class T>
int principal_root_index(const Poly &f, const std::vector<Cx<T>> &fc, const std::vector<Cx<T>> &roots, double radius)
{
	int m = f.degree();
	Cx<T> lead = f.leading().template to_complex<T>();
	Cx<T> sub = f[m - 1].template to_complex<T>();
	for (double far = radius; far < radius * 1e12; far *= 8)
	{
		Cx<T> tf(static_cast<T>(far), 0);
		auto at_far = fibre<T>(fc, tf);
		Cx<T> anchor = std::pow(tf / lead, T(1) / T(m)) - sub / (T(m) * lead);
		int idx;
		try
		{
			idx = unambiguous_match(anchor, at_far);
		}
		catch (const Error &)
		{
			continue;
		}
		auto back = continue_roots<T>(fc, at_far, Path{PathPiece::line({far, 0}, {radius, 0})});
		return unambiguous_match(back[static_cast<size_t>(idx)], roots);
	}
	throw Error(ErrorKind::NumericFailure, "could not anchor the principal branch");
}

template <class T> void build_monodromy(Monodromy &mono)
{
	const Poly &f = mono.centred;
	int m = f.degree();
	auto fc = f.to_complex<T>();
	Cx<T> t0(static_cast<T>(mono.radius), 0);
	auto roots = fibre<T>(fc, t0);

	// transport once around |t| = R counter-clockwise to find the m-cycle
	Path big{PathPiece::circle({0, 0}, mono.radius, 0, 2 * std::numbers::pi)};
	auto around = continue_roots<T>(fc, roots, big);
	std::vector<int> next(static_cast<size_t>(m));
	for (int i = 0; i < m; ++i)
		next[static_cast<size_t>(i)] = unambiguous_match(around[static_cast<size_t>(i)], roots);

	int first = principal_root_index<T>(f, fc, roots, mono.radius);
	std::vector<Cx<T>> labelled;
	std::vector<bool> used(static_cast<size_t>(m), false);
	for (int k = 0, r = first; k < m; ++k, r = next[static_cast<size_t>(r)])
	{
		if (used[static_cast<size_t>(r)])
			throw Error(ErrorKind::NumericFailure, "transport around infinity is not an m-cycle");
		used[static_cast<size_t>(r)] = true;
		labelled.push_back(roots[static_cast<size_t>(r)]);
	}

	std::vector<Cx<double>> values;
	for (auto &v : mono.critical.critical_values)
		values.push_back(v.value);
	Cx<double> ts = mono.star();
	std::sort(values.begin(), values.end(), [&](Cx<double> a, Cx<double> b) {
		auto arg = [&](Cx<double> c) {
			double x = std::arg(c - ts);
			return x < 0 ? x + 2 * std::numbers::pi : x;
		};
		return arg(a) < arg(b);
	});
	mono.generator_values = values;
	mono.generators.clear();
	for (auto &c : values)
		mono.generators.push_back(path_permutation<T>(fc, labelled, mono.loop_around(c)));
	mono.labelled_roots = narrow(labelled);
	for (auto &r : mono.labelled_roots)
		r += mono.centre;

	Permutation prod = Permutation::identity(m);
	for (auto &g : mono.generators)
		prod = g * prod;
	mono.tau_check = prod == Permutation::shift(m);
}

/** Pick the star offset so approach segments stay far from the other critical values. */
inline double choose_eta(const std::vector<CriticalValue> &values, double radius)
{
	double best_eta = radius / 2, best_score = -1;
	for (double frac : {0.5, 0.37, 0.61, 0.29, 0.83, 0.43, 0.71, 0.23})
	{
		double eta = frac * radius;
		Cx<double> ts(radius, eta);
		double score = std::numeric_limits<double>::infinity();
		for (auto &a : values)
			for (auto &b : values)
				if (&a != &b)
					score = std::min(score, Monodromy::segment_distance(b.value, ts, a.value));
		if (score > best_score * 1.5)
		{
			best_score = score;
			best_eta = eta;
		}
	}
	return best_eta;
}

} // namespace detail

/**
 * Monodromy generators of f with the canonical labelling. Runs in double and
 * retries in long double when continuation fails or the product check fails.
 */
inline Monodromy compute_monodromy(const Poly &f)
{
	if (f.degree() < 2)
		throw Error(ErrorKind::InvalidInput, "monodromy needs degree >= 2");
	Monodromy mono;
	mono.f = f;
	GRat z0 = centre_of(f);
	mono.centred = f.shifted(z0);
	mono.centre = z0.to_complex<double>();
	mono.critical = critical_data(f);
	mono.radius = 2 * mono.critical.max_abs_value() + 2;
	mono.eta = detail::choose_eta(mono.critical.critical_values, mono.radius);
	try
	{
		detail::build_monodromy<double>(mono);
		if (mono.tau_check)
			return mono;
	}
	catch (const Error &e)
	{
		if (e.kind() != ErrorKind::NumericFailure)
			throw;
	}
	mono.extended_precision = true;
	detail::build_monodromy<long double>(mono);
	if (!mono.tau_check)
		throw Error(ErrorKind::NumericFailure, "loop product does not reproduce the cycle at infinity");
	return mono;
}

/** Roots of f(z) = t in label order, transported from t0 along a straight segment. */
template <class T = double> std::vector<Cx<T>> transport_labelled(const Monodromy &mono, Cx<double> t)
{
	auto fc = mono.centred.to_complex<T>();
	Cx<T> z0(mono.centre.real(), mono.centre.imag());
	auto start = detail::widen<T>(mono.labelled_roots);
	for (auto &r : start)
		r -= z0;
	auto end = continue_roots<T>(fc, start, Path{PathPiece::line(mono.basepoint(), t)});
	for (auto &r : end)
		r += z0;
	return end;
}

} // namespace zc
