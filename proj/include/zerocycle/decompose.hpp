#pragma once

#include "zerocycle/monodromy.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace zc {

enum class FactorTag { TwoTransitive, MonomialEquiv, ChebyshevEquiv };

inline std::string_view to_string(FactorTag t)
{
	switch (t)
	{
	case FactorTag::TwoTransitive: return "TwoTransitive";
	case FactorTag::MonomialEquiv: return "MonomialEquiv";
	case FactorTag::ChebyshevEquiv: return "ChebyshevEquiv";
	}
	return "?";
}

/**
 * p(z) = post_scale * core(z - shift) + post_shift, where core is z^n for
 * monomial-equivalent factors and a^{-(n mod 2)} T_n(a z) with a^2 = scale_sq
 * for Chebyshev-equivalent ones. The core stays in Q(i)[z] even when a is
 * irrational. Two-transitive factors keep shift 0 and scale 1.
 */
struct FactorClass
{
	FactorTag tag = FactorTag::TwoTransitive;
	int core_degree = 0;
	GRat shift;
	GRat scale_sq{1};
	GRat post_scale{1};
	GRat post_shift;

	/** Core of degree j under the same inner linear change: core_j(z - shift). */
	Poly core(int j) const
	{
		Poly nu = Poly::linear(GRat(1), -shift);
		if (tag == FactorTag::MonomialEquiv)
			return nu.pow(static_cast<unsigned>(j));
		return compose(rational_chebyshev(j, scale_sq), nu);
	}

	/** a^{-(j mod 2)} T_j(a z), which only involves a^2. */
	static Poly rational_chebyshev(int j, const GRat &a_sq)
	{
		Poly t = chebyshev(j);
		std::vector<GRat> c(t.coeffs().size());
		for (int k = 0; k <= t.degree(); ++k)
		{
			if (t[k].is_zero())
				continue;
			c[static_cast<size_t>(k)] = t[k] * pow(a_sq, static_cast<unsigned>(k / 2));
		}
		return Poly(std::move(c));
	}
};

struct Factor
{
	Poly poly;
	FactorClass cls;
};

struct MergeCheck
{
	bool ok = true;
	bool shared_values_free = true; // no value is critical for both the outer part and h
	bool injective_on_h_values = true;
	std::string witness;
	double margin = 0; // smallest relative distance among the compared numeric values
};

struct DecompositionChain
{
	std::vector<Factor> factors; // outermost first
	Poly composed;
	bool hypothesis_ok = true;
	std::vector<MergeCheck> merge_checks; // entry k-1 checks f_0..f_{k-1} against f_k
	std::string witness;

	int degree() const { return composed.degree(); }

	/** f_k o ... o f_last */
	Poly tail(size_t k) const
	{
		Poly r = Poly::z();
		for (size_t i = factors.size(); i-- > k;)
			r = compose(factors[i].poly, r);
		return r;
	}
	/** f_0 o ... o f_{k-1} */
	Poly head(size_t k) const
	{
		Poly r = Poly::z();
		for (size_t i = k; i-- > 0;)
			r = compose(factors[i].poly, r);
		return r;
	}
};

/**
 * Right factor h of degree e with f = g o h, normalised monic with h(0) = 0,
 * from the top coefficients of h^(m/e); nullopt if the candidate fails.
 */
inline std::optional<std::pair<Poly, Poly>> right_factor(const Poly &f, int e)
{
	int m = f.degree();
	if (e < 1 || m % e != 0)
		return std::nullopt;
	unsigned r = static_cast<unsigned>(m / e);
	Poly F = f.monic();
	std::vector<GRat> h(static_cast<size_t>(e) + 1);
	h[static_cast<size_t>(e)] = GRat(1);
	for (int k = 1; k < e; ++k)
	{
		Poly power = Poly(h).pow(r);
		h[static_cast<size_t>(e - k)] = (F[m - k] - power[m - k]) / GRat(static_cast<long>(r));
	}
	Poly hp(h);
	auto expansion = f_adic_expand(f, hp);
	for (size_t k = 1; k < expansion.digits.size(); ++k)
		if (!expansion.digits[k].is_zero())
			return std::nullopt;
	return std::make_pair(expansion.digits[0], hp);
}

namespace detail {

inline bool is_monomial_equivalent(const Poly &p, FactorClass &cls)
{
	int n = p.degree();
	GRat z0 = -p[n - 1] / (GRat(n) * p[n]);
	Poly q = p.shifted(z0);
	for (int k = 1; k < n; ++k)
		if (!q[k].is_zero())
			return false;
	cls = FactorClass{FactorTag::MonomialEquiv, n, z0, GRat(1), q[n], q[0]};
	return true;
}

inline bool is_chebyshev_equivalent(const Poly &p, FactorClass &cls)
{
	// cubics go through the monodromy test
	int n = p.degree();
	if (n < 4)
		return false;
	GRat z0 = -p[n - 1] / (GRat(n) * p[n]);
	Poly q = p.shifted(z0);
	if (q[n - 2].is_zero())
		return false;
	GRat a_sq = -GRat(n) * q[n] / (GRat(4) * q[n - 2]);
	Poly u = FactorClass::rational_chebyshev(n, a_sq);
	GRat lambda = q[n] / u[n];
	Poly rest = q - u * lambda;
	if (rest.degree() > 0)
		return false;
	cls = FactorClass{FactorTag::ChebyshevEquiv, n, z0, a_sq, lambda, rest[0]};
	return true;
}

} // namespace detail

/** Monomial/Chebyshev structure only, without touching monodromy. */
inline std::optional<FactorClass> classify_structural(const Poly &p)
{
	if (p.degree() < 2)
		throw Error(ErrorKind::InvalidInput, "factor degree must be at least 2");
	FactorClass cls;
	if (detail::is_monomial_equivalent(p, cls) || detail::is_chebyshev_equivalent(p, cls))
		return cls;
	return std::nullopt;
}

inline FactorClass classify_factor(const Poly &p)
{
	if (auto s = classify_structural(p))
		return *s;
	FactorClass cls;
	cls.core_degree = p.degree();
	// recentred monic form, same group
	Poly q = p.shifted(-p[p.degree() - 1] / (GRat(p.degree()) * p[p.degree()])).monic();
	q = q - Poly::constant(q[0]);
	if (compute_monodromy(q).group().is_two_transitive())
		return cls;
	throw Error(ErrorKind::UnsupportedFactor,
	            "factor " + p.to_string() + " is neither 2-transitive nor linearly equivalent to a monomial or Chebyshev polynomial");
}

namespace detail {

inline std::vector<Cx<double>> numeric_roots_of(const Poly &p)
{
	if (p.degree() < 1)
		return {};
	return poly_roots<double>(p);
}

inline std::string format_value(Cx<double> v)
{
	std::ostringstream os;
	os.precision(12);
	double noise = 1e-12 * (1 + std::abs(v));
	double re = std::abs(v.real()) <= noise ? 0.0 : v.real(), im = std::abs(v.imag()) <= noise ? 0.0 : v.imag();
	os << re;
	if (im != 0)
		os << (im < 0 ? "-" : "+") << std::abs(im) << "i";
	return os.str();
}

} // namespace detail

/**
 * Non-merging test for f = ftilde o h, decided exactly: the critical values
 * of ftilde and the values ftilde(h(c)) at critical points c of h are the
 * roots of two characteristic polynomials, which must be coprime; ftilde is
 * injective on the critical values of h iff the characteristic polynomial of
 * multiplication by ftilde modulo their minimal polynomial is square-free.
 * The numeric values only supply witnesses and the margin.
 */
inline MergeCheck check_no_merge(const Poly &ftilde, const Poly &h)
{
	if (ftilde.degree() < 2 || h.degree() < 2)
		throw Error(ErrorKind::InvalidInput, "non-merging check needs nonlinear polynomials");
	Poly f = compose(ftilde, h);
	Poly sq_outer = squarefree_part(ftilde.derivative());
	Poly sq_inner = squarefree_part(h.derivative());
	Poly chi_outer = squarefree_part(charpoly(multiplication_matrix(ftilde, sq_outer)));
	Poly chi_inner = squarefree_part(charpoly(multiplication_matrix(f, sq_inner)));
	Poly h_values = squarefree_part(charpoly(multiplication_matrix(h, sq_inner)));
	Poly image = charpoly(multiplication_matrix(ftilde, h_values));

	MergeCheck mc;
	mc.shared_values_free = gcd(chi_outer, chi_inner).degree() == 0;
	mc.injective_on_h_values = squarefree_part(image).degree() == image.degree();
	mc.ok = mc.shared_values_free && mc.injective_on_h_values;

	auto a = detail::numeric_roots_of(chi_outer);
	auto hv = detail::numeric_roots_of(h_values);
	std::vector<Cx<double>> b;
	auto fc = ftilde.to_complex<double>();
	for (auto &v : hv)
		b.push_back(horner(fc, v));
	double scale = 1;
	for (auto *s : {&a, &b})
		for (auto &v : *s)
			scale = std::max(scale, 1 + std::abs(v));
	double margin = std::numeric_limits<double>::infinity();
	std::string witness;
	double worst = std::numeric_limits<double>::infinity();
	for (auto &x : a)
		for (auto &y : b)
		{
			double d = std::abs(x - y) / scale;
			margin = std::min(margin, d);
			if (!mc.shared_values_free && d < worst)
			{
				worst = d;
				witness = "critical value " + detail::format_value(x) + " of the outer part equals image " +
				          detail::format_value(y) + " of a critical value of h";
			}
		}
	for (size_t i = 0; i < b.size(); ++i)
		for (size_t j = i + 1; j < b.size(); ++j)
		{
			double d = std::abs(b[i] - b[j]) / scale;
			margin = std::min(margin, d);
			if (mc.shared_values_free && !mc.injective_on_h_values && d < worst)
			{
				worst = d;
				witness = "critical values " + detail::format_value(hv[i]) + " and " + detail::format_value(hv[j]) +
				          " of h have the same image " + detail::format_value(b[i]);
			}
		}
	mc.margin = std::isfinite(margin) ? margin : 1.0;
	mc.witness = witness;
	if (mc.ok && mc.margin < 1e-10)
		throw Error(ErrorKind::DegenerateGeometry, "values are distinct but closer than 1e-10");
	return mc;
}

namespace detail {

/** Greedy split along the smallest-degree right factor; outermost first. */
inline std::vector<Poly> split_fully(const Poly &f)
{
	int m = f.degree();
	for (int e : divisors(m))
	{
		if (e == 1 || e == m)
			continue;
		if (auto rf = right_factor(f, e))
		{
			auto outer = split_fully(rf->first);
			outer.push_back(rf->second);
			return outer;
		}
	}
	return {f};
}

} // namespace detail

namespace detail {

inline DecompositionChain build_chain(std::vector<Poly> parts, const Poly &f)
{
	for (bool fused = true; fused;)
	{
		fused = false;
		for (size_t k = 0; k + 1 < parts.size(); ++k)
		{
			Poly joined = compose(parts[k], parts[k + 1]);
			if (classify_structural(joined))
			{
				parts[k] = joined;
				parts.erase(parts.begin() + static_cast<long>(k) + 1);
				fused = true;
				break;
			}
		}
	}
	DecompositionChain chain;
	chain.composed = f;
	for (auto &p : parts)
		chain.factors.push_back({p, classify_factor(p)});
	for (size_t k = 1; k < chain.factors.size(); ++k)
	{
		auto mc = check_no_merge(chain.head(k), chain.factors[k].poly);
		if (!mc.ok && chain.hypothesis_ok)
		{
			chain.hypothesis_ok = false;
			chain.witness = "factor " + std::to_string(k) + ": " + mc.witness;
		}
		chain.merge_checks.push_back(std::move(mc));
	}
	return chain;
}

} // namespace detail

/**
 * Maximal decomposition with adjacent factors fused whenever their composite
 * is monomial- or Chebyshev-equivalent, then classified and checked pairwise
 * against the non-merging hypothesis.
 */
inline DecompositionChain decompose_chain(const Poly &f)
{
	if (f.degree() < 2)
		throw Error(ErrorKind::InvalidInput, "decomposition needs degree >= 2");
	return detail::build_chain(detail::split_fully(f), f);
}

/**
 * Chain from given factors (outermost first). Each factor is split further
 * if it decomposes; indecomposable factors are kept verbatim.
 */
inline DecompositionChain chain_from_factors(const std::vector<Poly> &factors)
{
	if (factors.empty())
		throw Error(ErrorKind::InvalidInput, "empty factor list");
	Poly f = Poly::z();
	std::vector<Poly> parts;
	for (auto it = factors.rbegin(); it != factors.rend(); ++it)
	{
		if (it->degree() < 2)
			throw Error(ErrorKind::InvalidInput, "factors must have degree >= 2");
		f = compose(*it, f);
	}
	for (auto &fac : factors)
		for (auto &p : detail::split_fully(fac))
			parts.push_back(p);
	return detail::build_chain(std::move(parts), f);
}

struct RightFactor
{
	Poly outer; // ftilde
	Poly inner; // h
};

/**
 * All right factors h with deg h > 1, including h = f itself (paired with a
 * linear outer part): tails of the chain plus, at every monomial or
 * Chebyshev factor, the inner cores of each proper divisor degree. Duplicates
 * up to a linear twist are dropped; sorted by degree of h.
 */
inline std::vector<RightFactor> enumerate_right_factors(const DecompositionChain &chain)
{
	const Poly &f = chain.composed;
	std::vector<Poly> candidates;
	for (size_t k = 0; k < chain.factors.size(); ++k)
	{
		Poly below = chain.tail(k + 1);
		const Factor &fac = chain.factors[k];
		candidates.push_back(compose(fac.poly, below));
		if (fac.cls.tag == FactorTag::TwoTransitive)
			continue;
		for (int e : divisors(fac.cls.core_degree))
			if (e > 1 && e < fac.cls.core_degree)
				candidates.push_back(compose(fac.cls.core(e), below));
	}
	std::vector<RightFactor> out;
	std::vector<Poly> normalised;
	for (auto &h : candidates)
	{
		Poly hn = (h - Poly::constant(h[0])).monic();
		if (std::find(normalised.begin(), normalised.end(), hn) != normalised.end())
			continue;
		auto ex = f_adic_expand(f, h);
		bool exact = true;
		for (size_t k = 1; k < ex.digits.size(); ++k)
			exact &= ex.digits[k].is_zero();
		if (exact)
		{
			normalised.push_back(hn);
			out.push_back({ex.digits[0], h});
		}
	}
	std::stable_sort(out.begin(), out.end(),
	                 [](const RightFactor &a, const RightFactor &b) { return a.inner.degree() < b.inner.degree(); });
	return out;
}

} // namespace zc
