#pragma once

#include "zerocycle/cycles.hpp"
#include "zerocycle/decompose.hpp"
#include "zerocycle/monodromy.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>
#include <vector>

namespace zc {

struct SamplePlan
{
	int count = 10;
	uint64_t seed = 1;
	double tolerance = 1e-8;

	/**
	 * Real regular values t = M + (1 + M)(0.25 + 1.5u), M = max|critical value|,
	 * so every sample clears the critical values by at least 0.25(1 + M).
	 */
	std::vector<double> points(double max_critical) const
	{
		std::mt19937_64 rng(seed);
		std::uniform_real_distribution<double> unit(0.0, 1.0);
		std::vector<double> t;
		for (int k = 0; k < count; ++k)
			t.push_back(max_critical + (1 + max_critical) * (0.25 + 1.5 * unit(rng)));
		std::sort(t.begin(), t.end());
		return t;
	}
};

struct IntegralReport
{
	std::vector<double> samples;
	std::vector<double> residuals;
	double max_residual = 0;
	int escalations = 0; // samples that needed extended precision
};

/** Labelled fibre at real t, escalating to long double when double continuation fails. */
inline std::vector<Cx<long double>> labelled_fibre(const Monodromy &mono, double t, int &escalations)
{
	try
	{
		auto z = transport_labelled<double>(mono, {t, 0});
		std::vector<Cx<long double>> r;
		for (auto &x : z)
			r.emplace_back(x.real(), x.imag());
		auto fc = mono.centred.to_complex<long double>();
		auto dfc = derivative(fc);
		Cx<long double> z0(mono.centre.real(), mono.centre.imag());
		for (auto &x : r)
		{
			Cx<long double> w = x - z0;
			for (int it = 0; it < 2; ++it)
			{
				Cx<long double> d = horner(dfc, w);
				if (std::abs(d) == 0)
					break;
				w -= (horner(fc, w) - Cx<long double>(t)) / d;
			}
			x = w + z0;
		}
		return r;
	}
	catch (const Error &e)
	{
		if (e.kind() != ErrorKind::NumericFailure)
			throw;
	}
	++escalations;
	return transport_labelled<long double>(mono, {t, 0});
}

/** max over samples of |sum n_i g(z_i(t))| / (1 + max_i |g(z_i(t))|). */
inline IntegralReport abelian_integral(const Monodromy &mono, const Chain &c, const Poly &g, const SamplePlan &plan)
{
	if (c.m() != mono.degree())
		throw Error(ErrorKind::ShapeError, "chain length differs from the degree of f");
	IntegralReport rep;
	rep.samples = plan.points(mono.critical.max_abs_value());
	auto gc = g.to_complex<long double>();
	for (double t : rep.samples)
	{
		auto z = labelled_fibre(mono, t, rep.escalations);
		Cx<long double> sum(0);
		long double gmax = 0;
		for (int i = 0; i < c.m(); ++i)
		{
			Cx<long double> v = horner(gc, z[static_cast<size_t>(i)]);
			gmax = std::max(gmax, std::abs(v));
			sum += static_cast<long double>(c.n[static_cast<size_t>(i)]) * v;
		}
		double r = static_cast<double>(std::abs(sum) / (1 + gmax));
		rep.residuals.push_back(r);
		rep.max_residual = std::max(rep.max_residual, r);
	}
	return rep;
}

inline IntegralReport abelian_integral(const Poly &f, const Chain &c, const Poly &g, const SamplePlan &plan)
{
	if (f.degree() == 1)
	{
		// single root f^{-1}(t)
		IntegralReport rep;
		rep.samples = plan.points(0);
		GRat a = f[1], b = f[0];
		for (double t : rep.samples)
		{
			Cx<long double> z = (Cx<long double>(t) - b.to_complex<long double>()) / a.to_complex<long double>();
			Cx<long double> v = g.eval(z);
			double r = static_cast<double>(std::abs(static_cast<long double>(c.n[0]) * v) / (1 + std::abs(v)));
			rep.residuals.push_back(r);
			rep.max_residual = std::max(rep.max_residual, r);
		}
		return rep;
	}
	return abelian_integral(compute_monodromy(f), c, g, plan);
}

enum class Verdict { MemberExact, MemberNumeric, NotMember, Inconclusive };

inline std::string_view to_string(Verdict v)
{
	switch (v)
	{
	case Verdict::MemberExact: return "MemberExact";
	case Verdict::MemberNumeric: return "MemberNumeric";
	case Verdict::NotMember: return "NotMember";
	case Verdict::Inconclusive: return "Inconclusive";
	}
	return "?";
}

inline constexpr double not_member_threshold = 1e-4;

inline Verdict numeric_verdict(const IntegralReport &rep, double tol)
{
	if (rep.max_residual < tol)
		return Verdict::MemberNumeric;
	int big = 0;
	for (double r : rep.residuals)
		big += r > not_member_threshold;
	if (big >= std::min<int>(3, static_cast<int>(rep.residuals.size())))
		return Verdict::NotMember;
	return Verdict::Inconclusive;
}

/** Max |s_k - sum_i z_i(w)^k| over samples w and k < deg h. */
inline double ng_crosscheck(const Poly &h, const SamplePlan &plan)
{
	int d = h.degree();
	auto s = power_sums(h, d);
	double vmax = d >= 2 ? critical_data(h).max_abs_value() : 0;
	auto hc = h.to_complex<long double>();
	double worst = 0;
	for (double w : plan.points(vmax))
	{
		auto c = hc;
		c[0] -= w;
		auto roots = poly_roots<long double>(c);
		for (int k = 0; k < d; ++k)
		{
			Cx<long double> sum(0);
			for (auto &z : roots)
				sum += std::pow(z, k);
			Cx<long double> expect = s[static_cast<size_t>(k)].to_complex<long double>();
			worst = std::max(worst, static_cast<double>(std::abs(sum - expect)));
		}
	}
	return worst;
}

/**
 * Closed form of sum_k n_k T_j(z_k(t)) for f = T_m at real t > 1:
 * alpha P_C(eps^j) + alpha' P_C(eps^{-j}) with alpha = e^{i xi j/m}/2,
 * alpha' = e^{-i xi j/m}/2, xi = arccos(t) on the principal branch.
 */
inline Cx<double> chebyshev_integral_closed_form(const Chain &c, int j, int m, double t)
{
	Cx<double> xi = std::acos(Cx<double>(t, 0.0));
	Cx<double> i(0, 1);
	Cx<double> eps = std::polar(1.0, 2 * std::numbers::pi / m);
	auto pc = characteristic_poly(c);
	Cx<double> a = std::exp(i * xi * double(j) / double(m)) / 2.0;
	Cx<double> b = std::exp(-i * xi * double(j) / double(m)) / 2.0;
	return a * pc.eval(std::pow(eps, j)) + b * pc.eval(std::pow(eps, -j));
}

/** Direct sum_k n_k T_j(z_k(t)) with the canonical labelling of T_m. */
inline Cx<double> chebyshev_integral_direct(const Monodromy &mono, const Chain &c, int j, double t)
{
	int esc = 0;
	auto z = labelled_fibre(mono, t, esc);
	auto tj = chebyshev(j);
	Cx<long double> sum(0);
	for (int k = 0; k < c.m(); ++k)
		sum += static_cast<long double>(c.n[static_cast<size_t>(k)]) * tj.eval(z[static_cast<size_t>(k)]);
	return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

/** sum_i n_{sigma(i)} eps_m^i = 0 for every sigma, evaluated modulo Phi_m. */
inline bool brute_force_balanced(const Chain &c, const std::vector<Permutation> &elements)
{
	int m = c.m();
	if (m <= 1)
		return c.is_zero();
	Poly phi = cyclotomic(m);
	int deg = phi.degree();
	// x^i mod Phi_m as integer vectors
	std::vector<std::vector<long long>> power(static_cast<size_t>(m) + 1);
	for (int i = 0; i <= m; ++i)
	{
		Poly r = Poly::monomial(i) % phi;
		std::vector<long long> v(static_cast<size_t>(deg));
		for (int k = 0; k < deg; ++k)
			v[static_cast<size_t>(k)] = r[k].re().get_num().get_si();
		power[static_cast<size_t>(i)] = std::move(v);
	}
	for (auto &sigma : elements)
	{
		std::vector<long long> acc(static_cast<size_t>(deg), 0);
		for (int i = 0; i < m; ++i)
		{
			long long n = c.n[static_cast<size_t>(sigma(i))];
			if (n == 0)
				continue;
			for (int k = 0; k < deg; ++k)
				acc[static_cast<size_t>(k)] += n * power[static_cast<size_t>(i + 1)][static_cast<size_t>(k)];
		}
		for (long long x : acc)
			if (x != 0)
				return false;
	}
	return true;
}

struct SemidirectReport
{
	size_t order_f = 0;          // |G_f|
	size_t order_normal = 0;     // |N_h|
	size_t order_outer_loops = 0; // |<alpha_k>| inside G_f
	size_t order_outer = 0;      // |G_ftilde| from its own monodromy
	bool product_holds = false;
	bool intersection_trivial = false;
	bool alpha_blocks_ok = false; // every alpha maps blocks onto blocks
	bool beta_blocks_ok = false;  // every beta moves points of a single block only
	std::vector<int> generator_kind; // 0 = alpha (outer critical value), 1 = beta
	bool holds() const
	{
		return product_holds && intersection_trivial && alpha_blocks_ok && beta_blocks_ok && order_outer == order_outer_loops;
	}
};

/**
 * Semidirect splitting of G_f for f = ftilde o h: the h-loops generate a
 * normal closure N_h, the ftilde-loops a complement.
 */
inline SemidirectReport semidirect_check(const Poly &ftilde, const Poly &h, size_t cap = default_element_cap)
{
	if (!check_no_merge(ftilde, h).ok)
		throw Error(ErrorKind::HypothesisViolated, "critical values of the factors merge");
	Poly f = compose(ftilde, h);
	auto mono = compute_monodromy(f);
	auto outer_crit = critical_data(ftilde);
	double scale = 1 + mono.critical.max_abs_value();
	SemidirectReport rep;
	std::vector<Permutation> alpha, beta;
	for (size_t k = 0; k < mono.generators.size(); ++k)
	{
		bool is_alpha = false;
		for (auto &v : outer_crit.critical_values)
			is_alpha |= std::abs(v.value - mono.generator_values[k]) <= 1e-9 * scale;
		rep.generator_kind.push_back(is_alpha ? 0 : 1);
		(is_alpha ? alpha : beta).push_back(mono.generators[k]);
	}
	int m = f.degree();
	PermGroup g(m, mono.generators, cap);
	auto elems = g.elements();
	rep.order_f = elems.size();
	PermGroup normal = g.normal_closure(beta);
	auto nelems = normal.elements();
	rep.order_normal = nelems.size();
	PermGroup complement(m, alpha, cap);
	auto celems = complement.elements();
	rep.order_outer_loops = celems.size();
	rep.order_outer = compute_monodromy(ftilde).group(cap).order();
	rep.product_holds = rep.order_f == rep.order_normal * rep.order_outer_loops;
	std::unordered_set<Permutation, PermHash> nset(nelems.begin(), nelems.end());
	size_t common = 0;
	for (auto &p : celems)
		common += nset.count(p);
	rep.intersection_trivial = common == 1;

	auto blocks = residue_blocks(m, h.degree());
	auto cell = blocks.cell_of(m);
	rep.alpha_blocks_ok = true;
	for (auto &a : alpha)
		rep.alpha_blocks_ok &= blocks.invariant_under(a);
	rep.beta_blocks_ok = true;
	for (auto &b : beta)
	{
		std::vector<int> touched;
		for (int i = 0; i < m; ++i)
			if (b(i) != i)
			{
				if (cell[static_cast<size_t>(b(i))] != cell[static_cast<size_t>(i)])
					rep.beta_blocks_ok = false;
				touched.push_back(cell[static_cast<size_t>(i)]);
			}
		std::sort(touched.begin(), touched.end());
		touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
		rep.beta_blocks_ok &= touched.size() == 1;
	}
	return rep;
}

} // namespace zc
