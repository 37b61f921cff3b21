#pragma once

#include "zerocycle/cycles.hpp"
#include "zerocycle/decompose.hpp"
#include "zerocycle/oracle.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace zc {

enum class NodeKind { FullSpace, ZeroOnly, Monomial, NGOrthogonal, TheoremB, TheoremC, Sum };

inline std::string_view to_string(NodeKind k)
{
	switch (k)
	{
	case NodeKind::FullSpace: return "FullSpace";
	case NodeKind::ZeroOnly: return "ZeroOnly";
	case NodeKind::Monomial: return "MonomialNode";
	case NodeKind::NGOrthogonal: return "NGOrthogonalNode";
	case NodeKind::TheoremB: return "TheoremBNode";
	case NodeKind::TheoremC: return "TheoremCNode";
	case NodeKind::Sum: return "SumNode";
	}
	return "?";
}

struct SolutionSpace;
using SpacePtr = std::shared_ptr<const SolutionSpace>;

/** g = sum_{j allowed} c_j(p) core_j with p = factor, c_j free. */
struct MonomialData
{
	Poly factor;
	FactorClass cls;
	std::vector<int> allowed;

	int m() const { return factor.degree(); }
	bool chebyshev() const { return cls.tag == FactorTag::ChebyshevEquiv; }
};

struct SumTerm
{
	Poly h;
	Poly outer;
	Chain projected;
	SpacePtr child;
};

/**
 * Node of the solution tree. Every node keeps the problem it answers (f and
 * the chain) so the numeric oracle can be run against it.
 */
struct SolutionSpace
{
	NodeKind kind = NodeKind::FullSpace;
	Poly f;
	Chain chain;

	MonomialData mono;      // Monomial; TheoremC keeps the u-space here
	std::vector<GRat> s;    // NGOrthogonal: s(f); TheoremB: s(h)
	Poly h;                 // TheoremB / TheoremC inner factor
	Poly outer;             // TheoremB / TheoremC: ftilde
	Chain projected_chain;  // TheoremB / TheoremC
	SpacePtr projected;     // TheoremB / TheoremC
	std::vector<Chain> parts;                // TheoremC invariant parts
	std::vector<std::vector<int>> part_allowed;
	std::vector<SumTerm> terms;              // Sum
};

namespace detail {

inline SpacePtr leaf(NodeKind k, const Poly &f, const Chain &c)
{
	auto s = std::make_shared<SolutionSpace>();
	s->kind = k;
	s->f = f;
	s->chain = c;
	return s;
}

inline DecompositionChain prefix_chain(const DecompositionChain &chain, size_t count)
{
	DecompositionChain r;
	r.factors.assign(chain.factors.begin(), chain.factors.begin() + static_cast<long>(count));
	r.composed = chain.head(count);
	for (size_t k = 1; k < count; ++k)
	{
		r.merge_checks.push_back(chain.merge_checks[k - 1]);
		if (!chain.merge_checks[k - 1].ok && r.hypothesis_ok)
		{
			r.hypothesis_ok = false;
			r.witness = "factor " + std::to_string(k) + ": " + chain.merge_checks[k - 1].witness;
		}
	}
	return r;
}

inline std::vector<int> allowed_exponents(const Chain &c, int m)
{
	Poly pc = characteristic_poly(c);
	std::vector<int> allowed;
	for (int j = 0; j < m; ++j)
		if (cyclotomic(m / std::gcd(m, j)).divides(pc))
			allowed.push_back(j);
	return allowed;
}

} // namespace detail

/**
 * Base case for z^m / T_m up to linear equivalence: exponent j is allowed iff
 * Phi_{m/gcd(m,j)} divides P_C.
 */
inline SpacePtr solve_base_monomial_chebyshev(const Chain &c, const Poly &factor, const FactorClass &cls)
{
	if (c.m() != factor.degree())
		throw Error(ErrorKind::ShapeError, "chain length differs from the factor degree");
	if (cls.tag == FactorTag::TwoTransitive)
		throw Error(ErrorKind::InvalidInput, "monomial base case needs a monomial or Chebyshev factor");
	auto s = std::make_shared<SolutionSpace>();
	s->kind = NodeKind::Monomial;
	s->f = factor;
	s->chain = c;
	s->mono = MonomialData{factor, cls, detail::allowed_exponents(c, factor.degree())};
	return s;
}

/** Same for the exact z^m (chebyshev = false) or T_m. */
inline SpacePtr solve_base_monomial_chebyshev(const Chain &c, bool chebyshev_kind, int m)
{
	Poly p = chebyshev_kind ? chebyshev(m) : Poly::monomial(m);
	FactorClass cls;
	cls.tag = chebyshev_kind ? FactorTag::ChebyshevEquiv : FactorTag::MonomialEquiv;
	cls.core_degree = m;
	cls.post_scale = chebyshev_kind ? p[m] : GRat(1);
	return solve_base_monomial_chebyshev(c, p, cls);
}

/**
 * 2-transitive base case for a balanced chain, which must have constant
 * coefficients: zero gives everything, n != 0 gives the s(f)-orthogonal digits.
 */
inline SpacePtr solve_base_two_transitive(const Chain &c, const Poly &f)
{
	if (c.m() != f.degree())
		throw Error(ErrorKind::ShapeError, "chain length differs from the degree of f");
	for (long long x : c.n)
		if (x != c.n[0])
			throw Error(ErrorKind::NonConstantBalanced, "balanced chain of a 2-transitive polynomial is not constant");
	if (c.is_zero())
		return detail::leaf(NodeKind::FullSpace, f, c);
	auto s = detail::leaf(NodeKind::NGOrthogonal, f, c);
	std::const_pointer_cast<SolutionSpace>(s)->s = power_sums(f, f.degree());
	return s;
}

/** Particular solution (p o f)/sum(n) of int_C g = p(t); NoSolution on cycles. */
inline Poly solve_inhomogeneous(const Chain &c, const Poly &f, const Poly &p)
{
	if (p.is_zero())
		throw Error(ErrorKind::InvalidInput, "right-hand side must be nonzero");
	if (c.m() != f.degree())
		throw Error(ErrorKind::ShapeError, "chain length differs from the degree of f");
	long long total = c.sum();
	if (total == 0)
		throw Error(ErrorKind::NoSolution, "int_C p(f) = p(t) * sum(n_i) vanishes on a cycle");
	return compose(p, f) / GRat(static_cast<long>(total));
}

inline constexpr int default_depth_budget = 8;

inline SpacePtr solve(const DecompositionChain &chain, const Chain &c, int depth = default_depth_budget);

namespace detail {

inline SpacePtr solve_linear(const Poly &f, const Chain &c)
{
	return leaf(c.is_zero() ? NodeKind::FullSpace : NodeKind::ZeroOnly, f, c);
}

inline SpacePtr solve_sum(const DecompositionChain &chain, const Chain &c, int depth)
{
	auto node = leaf(NodeKind::Sum, chain.composed, c);
	auto &mut = *std::const_pointer_cast<SolutionSpace>(node);
	int m = chain.degree();
	for (auto &rf : enumerate_right_factors(chain))
	{
		SumTerm term{rf.inner, rf.outer, project(c, residue_blocks(m, rf.inner.degree())), nullptr};
		if (rf.outer.degree() == 1)
			term.child = solve_linear(rf.outer, term.projected);
		else
			term.child = solve(decompose_chain(rf.outer), term.projected, depth - 1);
		mut.terms.push_back(std::move(term));
	}
	return node;
}

} // namespace detail

/**
 * Recursive solution along the chain, peeling the innermost factor:
 * unbalanced cycles reduce to a sum over right factors, balanced ones go
 * through the Newton-Girard system (2-transitive inner factor) or the
 * invariant-part decomposition (monomial/Chebyshev inner factor).
 */
inline SpacePtr solve(const DecompositionChain &chain, const Chain &c, int depth)
{
	if (depth < 0)
		throw Error(ErrorKind::OutOfRange, "recursion depth budget exhausted");
	const Poly &f = chain.composed;
	int m = f.degree();
	if (c.m() != m)
		throw Error(ErrorKind::ShapeError, "chain length " + std::to_string(c.m()) + " differs from degree " + std::to_string(m));
	if (c.is_zero())
		return detail::leaf(NodeKind::FullSpace, f, c);
	if (chain.factors.size() == 1)
	{
		const Factor &only = chain.factors[0];
		if (only.cls.tag != FactorTag::TwoTransitive)
			return solve_base_monomial_chebyshev(c, only.poly, only.cls);
		if (is_balanced(c, compute_monodromy(f).group()))
			return solve_base_two_transitive(c, f);
		if (!is_cycle(c))
			return detail::leaf(NodeKind::ZeroOnly, f, c);
		return detail::solve_sum(chain, c, depth);
	}
	if (!chain.hypothesis_ok)
		throw Error(ErrorKind::HypothesisViolated, chain.witness);
	if (!is_cycle(c))
		throw Error(ErrorKind::InvalidInput, "the recursion needs a cycle (coefficients summing to zero)");
	if (!is_balanced(c, compute_monodromy(f).group()))
		return detail::solve_sum(chain, c, depth);

	const Factor &inner = chain.factors.back();
	int d = inner.poly.degree();
	auto outer_chain = detail::prefix_chain(chain, chain.factors.size() - 1);
	auto blocks = residue_blocks(m, d);
	Chain projected = project(c, blocks);

	auto node = std::make_shared<SolutionSpace>();
	node->f = f;
	node->chain = c;
	node->h = inner.poly;
	node->outer = outer_chain.composed;
	node->projected_chain = projected;
	node->projected = solve(outer_chain, projected, depth - 1);
	if (inner.cls.tag == FactorTag::TwoTransitive)
	{
		node->kind = NodeKind::TheoremB;
		node->s = power_sums(inner.poly, d);
		return node;
	}
	node->kind = NodeKind::TheoremC;
	node->parts = invariant_parts(c, blocks);
	std::vector<int> common;
	for (int j = 0; j < d; ++j)
		common.push_back(j);
	for (auto &part : node->parts)
	{
		auto allowed = detail::allowed_exponents(part, d);
		node->part_allowed.push_back(allowed);
		std::vector<int> keep;
		std::set_intersection(common.begin(), common.end(), allowed.begin(), allowed.end(), std::back_inserter(keep));
		common = std::move(keep);
	}
	node->mono = MonomialData{inner.poly, inner.cls, common};
	return node;
}

/** Convenience: decompose f and solve. */
inline SpacePtr solve(const Poly &f, const Chain &c, int depth = default_depth_budget)
{
	if (f.degree() == 1)
		return detail::solve_linear(f, c);
	return solve(decompose_chain(f), c, depth);
}

// ---------------------------------------------------------------------------
// degree-bounded bases and sampling

namespace detail {

inline Vec coeff_vec(const Poly &p, int bound)
{
	Vec v(static_cast<size_t>(bound) + 1);
	for (int k = 0; k <= p.degree() && k <= bound; ++k)
		v[static_cast<size_t>(k)] = p[k];
	return v;
}

/** Independent subset of `polys` (all of degree <= bound), order preserved. */
inline std::vector<Poly> independent(const std::vector<Poly> &polys, int bound)
{
	SpanBuilder span(static_cast<size_t>(bound) + 1);
	std::vector<Poly> out;
	for (auto &p : polys)
		if (span.add(coeff_vec(p, bound)))
			out.push_back(p);
	return out;
}

inline std::vector<Poly> monomial_basis(const MonomialData &md, int bound)
{
	std::vector<Poly> out;
	int m = md.m();
	for (int j : md.allowed)
	{
		Poly core = md.cls.core(j);
		Poly term = core;
		for (int q = 0; j + m * q <= bound; ++q)
		{
			out.push_back(term);
			term = term * md.factor;
		}
	}
	std::stable_sort(out.begin(), out.end(), [](const Poly &a, const Poly &b) { return a.degree() < b.degree(); });
	return out;
}

} // namespace detail

/** Spanning set (linearly independent) of {g in S : deg g <= bound}. */
inline std::vector<Poly> basis(const SolutionSpace &s, int bound)
{
	if (bound < 0)
		return {};
	switch (s.kind)
	{
	case NodeKind::FullSpace:
	{
		std::vector<Poly> out;
		for (int k = 0; k <= bound; ++k)
			out.push_back(Poly::monomial(k));
		return out;
	}
	case NodeKind::ZeroOnly: return {};
	case NodeKind::Monomial: return detail::monomial_basis(s.mono, bound);
	case NodeKind::NGOrthogonal:
	{
		int m = s.f.degree();
		std::vector<Poly> out;
		for (int q = 0; m * q <= bound; ++q)
		{
			int top = std::min(m - 1, bound - m * q);
			Mat row{Vec(static_cast<size_t>(top) + 1)};
			for (int k = 0; k <= top; ++k)
				row[0][static_cast<size_t>(k)] = s.s[static_cast<size_t>(k)];
			Poly fq = s.f.pow(static_cast<unsigned>(q));
			for (auto &v : kernel(row, static_cast<size_t>(top) + 1))
				out.push_back(Poly(v) * fq);
		}
		return out;
	}
	case NodeKind::TheoremB:
	{
		int d = s.h.degree();
		int wb = bound / d;
		auto proj = basis(*s.projected, wb);
		// unknowns: a_{i,q} (digit i, power q) then lambda_b
		std::vector<std::pair<int, int>> slots;
		for (int i = 0; i < d; ++i)
			for (int q = 0; i + d * q <= bound; ++q)
				slots.push_back({i, q});
		size_t cols = slots.size() + proj.size();
		Mat eq(static_cast<size_t>(wb) + 1, Vec(cols));
		for (size_t k = 0; k < slots.size(); ++k)
			eq[static_cast<size_t>(slots[k].second)][k] = s.s[static_cast<size_t>(slots[k].first)];
		for (size_t b = 0; b < proj.size(); ++b)
			for (int r = 0; r <= proj[b].degree(); ++r)
				eq[static_cast<size_t>(r)][slots.size() + b] = -proj[b][r];
		std::vector<Poly> hp{Poly::constant(GRat(1))};
		for (int q = 1; q <= wb; ++q)
			hp.push_back(hp.back() * s.h);
		std::vector<Poly> out;
		for (auto &v : kernel(eq, cols))
		{
			Poly g;
			for (size_t k = 0; k < slots.size(); ++k)
				if (!v[k].is_zero())
					g += Poly::monomial(slots[k].first, v[k]) * hp[static_cast<size_t>(slots[k].second)];
			if (!g.is_zero())
				out.push_back(g);
		}
		return detail::independent(out, bound);
	}
	case NodeKind::TheoremC:
	{
		int d = s.h.degree();
		std::vector<Poly> out;
		for (auto &p : basis(*s.projected, bound / d))
			out.push_back(compose(p, s.h));
		for (auto &u : detail::monomial_basis(s.mono, bound))
			out.push_back(u);
		return detail::independent(out, bound);
	}
	case NodeKind::Sum:
	{
		std::vector<Poly> out;
		for (auto &t : s.terms)
			for (auto &p : basis(*t.child, bound / t.h.degree()))
				out.push_back(compose(p, t.h));
		return detail::independent(out, bound);
	}
	}
	return {};
}

/** Deterministic random members: integer combinations (entries in [-3, 3]) of the basis. */
inline std::vector<Poly> sample_solutions(const SolutionSpace &s, int degree_bound, int count, uint64_t seed)
{
	auto b = basis(s, degree_bound);
	std::vector<Poly> out;
	if (b.empty())
		return out;
	std::mt19937_64 rng(seed);
	std::uniform_int_distribution<int> coef(-3, 3);
	for (int k = 0; k < count; ++k)
	{
		Poly g;
		while (g.is_zero())
			for (auto &p : b)
				g += p * GRat(coef(rng));
		out.push_back(g);
	}
	return out;
}

// ---------------------------------------------------------------------------
// membership

struct Membership
{
	Verdict verdict = Verdict::Inconclusive;
	double residual = 0; // oracle residual, 0 for exact verdicts
	std::string via;     // which node decided
	IntegralReport report;
};

namespace detail {

inline bool in_span(const std::vector<Poly> &b, const Poly &g, int bound)
{
	SpanBuilder span(static_cast<size_t>(bound) + 1);
	for (auto &p : b)
		span.add(coeff_vec(p, bound));
	return span.contains(coeff_vec(g, bound));
}

inline Membership exact(bool member, const SolutionSpace &s)
{
	Membership r;
	r.verdict = member ? Verdict::MemberExact : Verdict::NotMember;
	r.via = std::string(to_string(s.kind));
	return r;
}

} // namespace detail

/**
 * Exact where the node is structural (monomial, Newton-Girard, and Theorem B
 * nodes over such children); otherwise the abelian-integral oracle on the
 * node's own problem.
 */
inline Membership contains(const SolutionSpace &s, const Poly &g, const SamplePlan &plan)
{
	switch (s.kind)
	{
	case NodeKind::FullSpace: return detail::exact(true, s);
	case NodeKind::ZeroOnly: return detail::exact(g.is_zero(), s);
	case NodeKind::Monomial:
	{
		int bound = std::max(g.degree(), 0);
		return detail::exact(detail::in_span(basis(s, bound), g, bound), s);
	}
	case NodeKind::NGOrthogonal:
	{
		auto ex = f_adic_expand(g, s.f);
		Poly acc;
		for (size_t k = 0; k < ex.digits.size(); ++k)
			acc += ex.digits[k] * s.s[k];
		return detail::exact(acc.is_zero(), s);
	}
	case NodeKind::TheoremB:
	{
		auto ex = f_adic_expand(g, s.h);
		Poly gt;
		for (size_t k = 0; k < ex.digits.size(); ++k)
			gt += ex.digits[k] * s.s[k];
		auto r = contains(*s.projected, gt, plan);
		r.via = "TheoremBNode > " + r.via;
		return r;
	}
	case NodeKind::TheoremC:
	case NodeKind::Sum:
	{
		Membership r;
		r.report = abelian_integral(s.f, s.chain, g, plan);
		r.residual = r.report.max_residual;
		r.verdict = numeric_verdict(r.report, plan.tolerance);
		r.via = std::string(to_string(s.kind)) + " (oracle)";
		return r;
	}
	}
	return {};
}

// ---------------------------------------------------------------------------
// text rendering

namespace detail {

inline std::string ng_combination(const std::vector<GRat> &s, const char *arg)
{
	std::string out;
	for (size_t i = 0; i < s.size(); ++i)
	{
		if (s[i].is_zero())
			continue;
		std::string c = s[i].to_string();
		bool neg = s[i].is_real() && c.front() == '-';
		if (neg)
			c.erase(c.begin());
		if (!out.empty())
			out += neg ? " - " : " + ";
		else if (neg)
			out += "-";
		if (c != "1")
			out += (s[i].is_real() ? c : "(" + c + ")") + "*";
		out += "g_" + std::to_string(i) + "(" + arg + ")";
	}
	return out.empty() ? "0" : out;
}

inline std::string index_set(const std::vector<int> &v)
{
	std::string out = "{";
	for (size_t k = 0; k < v.size(); ++k)
		out += (k ? "," : "") + std::to_string(v[k]);
	return out + "}";
}

inline std::string core_name(const MonomialData &md)
{
	std::string base = md.chebyshev() ? "T_j" : "z^j";
	if (md.cls.shift.is_zero() && md.cls.scale_sq.is_one())
		return base;
	std::string inner = md.cls.shift.is_zero() ? "z" : "(z - (" + md.cls.shift.to_string() + "))";
	if (!md.chebyshev())
		return inner + "^j";
	return "a^-(j mod 2) T_j(a*" + inner + "), a^2 = " + md.cls.scale_sq.to_string();
}

inline void describe(const SolutionSpace &s, const std::string &pad, std::string &out)
{
	switch (s.kind)
	{
	case NodeKind::FullSpace: out += pad + "g arbitrary\n"; return;
	case NodeKind::ZeroOnly: out += pad + "g = 0\n"; return;
	case NodeKind::Monomial:
		out += pad + "g = sum_{j in " + index_set(s.mono.allowed) + "} c_j(f) * " + core_name(s.mono) +
		       ",  f = " + s.f.to_string() + "\n";
		return;
	case NodeKind::NGOrthogonal:
		out += pad + "g = sum_k z^k g_k(f) with " + ng_combination(s.s, "t") + " = 0,  f = " + s.f.to_string() + "\n";
		return;
	case NodeKind::TheoremB:
		out += pad + "g = sum_{i<" + std::to_string(s.h.degree()) + "} z^i g_i(h),  h = " + s.h.to_string() + "\n";
		out += pad + "  with " + ng_combination(s.s, "w") + " = g~(w), where g~ solves the projected cycle of " +
		       s.outer.to_string("w") + ":\n";
		describe(*s.projected, pad + "    ", out);
		return;
	case NodeKind::TheoremC:
		out += pad + "g = g~(h)/(" + std::to_string(s.h.degree() - 1) + ") + u,  h = " + s.h.to_string() + "\n";
		out += pad + "  u = sum_{j in " + index_set(s.mono.allowed) + "} c_j(h) * " + core_name(s.mono) + "\n";
		out += pad + "  g~ solves the projected cycle of " + s.outer.to_string("w") + ":\n";
		describe(*s.projected, pad + "    ", out);
		return;
	case NodeKind::Sum:
		out += pad + "g = sum_i g_i(h_i) over " + std::to_string(s.terms.size()) + " right factors\n";
		for (auto &t : s.terms)
		{
			out += pad + "  h = " + t.h.to_string() + ", g_i solves the projected cycle of " + t.outer.to_string("w") + ":\n";
			describe(*t.child, pad + "    ", out);
		}
		return;
	}
}

} // namespace detail

inline std::string describe(const SolutionSpace &s)
{
	std::string out;
	detail::describe(s, "", out);
	return out;
}

} // namespace zc
