#pragma once

#include "zerocycle/solver.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace zc::json {

using Json = nlohmann::ordered_json;

/** Doubles go out as "%.15g" strings so reports stay byte-stable. */
inline std::string num(double x)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.15g", x);
	return buf;
}

/** Components below roundoff relative to |z| print as 0. */
inline Json complex(Cx<double> z)
{
	double noise = 1e-14 * (1 + std::abs(z));
	double re = std::abs(z.real()) <= noise ? 0.0 : z.real(), im = std::abs(z.imag()) <= noise ? 0.0 : z.imag();
	return Json{{"re", num(re)}, {"im", num(im)}};
}

inline Json poly(const Poly &p)
{
	Json a = Json::array();
	for (auto &c : p.coeffs())
		a.push_back(c.to_string());
	return a;
}

inline Json chain(const Chain &c) { return Json(c.n); }

inline Json perm(const Permutation &p) { return Json(p.one_based()); }

inline Json blocks(const BlockSystem &b)
{
	Json a = Json::array();
	for (auto &cell : b.blocks)
	{
		Json x = Json::array();
		for (int i : cell)
			x.push_back(i + 1);
		a.push_back(x);
	}
	return a;
}

inline Json linear(const GRat &scale, const GRat &shift)
{
	return Json{{"scale", scale.to_string()}, {"shift", shift.to_string()}};
}

inline Json factor(const Factor &f)
{
	Json j;
	j["coeffs"] = poly(f.poly);
	j["class"] = std::string(to_string(f.cls.tag));
	// z -> a(z - shift), stored through a^2 so it stays in Q(i)
	j["pre_linear"] = Json{{"a_squared", f.cls.scale_sq.to_string()}, {"shift", f.cls.shift.to_string()}};
	j["post_linear"] = linear(f.cls.post_scale, f.cls.post_shift);
	return j;
}

inline Json decomposition(const DecompositionChain &c)
{
	Json j;
	Json fs = Json::array();
	for (auto &f : c.factors)
		fs.push_back(factor(f));
	j["factors"] = fs;
	j["composed"] = poly(c.composed);
	j["hypothesis_ok"] = c.hypothesis_ok;
	if (!c.hypothesis_ok)
		j["witness"] = c.witness;
	Json checks = Json::array();
	for (size_t k = 0; k < c.merge_checks.size(); ++k)
	{
		auto &m = c.merge_checks[k];
		checks.push_back(Json{{"factor", k + 1},
		                      {"ok", m.ok},
		                      {"shared_values_free", m.shared_values_free},
		                      {"injective_on_h_values", m.injective_on_h_values},
		                      {"margin", num(m.margin)}});
	}
	j["merge_checks"] = checks;
	return j;
}

inline Json monodromy(const Monodromy &m, size_t cap)
{
	Json j;
	j["degree"] = m.degree();
	j["basepoint"] = num(m.radius);
	j["star_offset"] = num(m.eta);
	Json cv = Json::array();
	for (auto &v : m.critical.critical_values)
		cv.push_back(Json{{"value", complex(v.value)}, {"multiplicity", v.multiplicity}});
	j["critical_values"] = cv;
	Json gens = Json::array();
	for (size_t k = 0; k < m.generators.size(); ++k)
		gens.push_back(Json{{"around", complex(m.generator_values[k])},
		                    {"images", perm(m.generators[k])},
		                    {"cycles", m.generators[k].cycles()}});
	j["generators"] = gens;
	j["tau_check"] = m.tau_check;
	j["extended_precision"] = m.extended_precision;
	auto g = m.group(cap);
	j["transitive"] = g.is_transitive();
	j["two_transitive"] = g.is_two_transitive();
	try
	{
		j["order"] = g.order();
	}
	catch (const Error &e)
	{
		if (e.kind() != ErrorKind::CapExceeded)
			throw;
		j["order"] = nullptr;
	}
	Json bs = Json::array();
	for (auto &b : g.block_systems())
		bs.push_back(blocks(b));
	j["block_systems"] = bs;
	return j;
}

inline Json module(const ModuleStructure &ms)
{
	Json a = Json::array();
	for (auto &s : ms.summands)
		a.push_back(Json{{"divisor", s.divisor}, {"dimension", s.dimension}, {"indices", s.indices}});
	return a;
}

inline Json monomial_data(const MonomialData &md)
{
	Json j;
	j["m"] = md.m();
	j["kind"] = md.chebyshev() ? "chebyshev" : "power";
	j["factor"] = poly(md.factor);
	j["pre_linear"] = Json{{"a_squared", md.cls.scale_sq.to_string()}, {"shift", md.cls.shift.to_string()}};
	j["allowed_exponents"] = md.allowed;
	return j;
}

inline Json space(const SolutionSpace &s)
{
	Json j;
	j["node"] = std::string(to_string(s.kind));
	j["f"] = poly(s.f);
	j["cycle"] = chain(s.chain);
	switch (s.kind)
	{
	case NodeKind::FullSpace:
	case NodeKind::ZeroOnly: break;
	case NodeKind::Monomial:
	{
		auto md = monomial_data(s.mono);
		for (auto it = md.begin(); it != md.end(); ++it)
			j[it.key()] = it.value();
		break;
	}
	case NodeKind::NGOrthogonal:
	{
		Json sv = Json::array();
		for (auto &x : s.s)
			sv.push_back(x.to_string());
		j["s"] = sv;
		break;
	}
	case NodeKind::TheoremB:
	{
		j["h"] = poly(s.h);
		Json sv = Json::array();
		for (auto &x : s.s)
			sv.push_back(x.to_string());
		j["s"] = sv;
		j["outer"] = poly(s.outer);
		j["projected_cycle"] = chain(s.projected_chain);
		j["projected"] = space(*s.projected);
		break;
	}
	case NodeKind::TheoremC:
	{
		j["h"] = poly(s.h);
		j["d"] = s.h.degree();
		j["outer"] = poly(s.outer);
		j["projected_cycle"] = chain(s.projected_chain);
		j["projected"] = space(*s.projected);
		Json parts = Json::array();
		for (size_t k = 0; k < s.parts.size(); ++k)
			parts.push_back(Json{{"cycle", chain(s.parts[k])},
			                     {"characteristic_poly", poly(characteristic_poly(s.parts[k]))},
			                     {"allowed_exponents", s.part_allowed[k]}});
		j["parts"] = parts;
		j["u"] = monomial_data(s.mono);
		break;
	}
	case NodeKind::Sum:
	{
		Json terms = Json::array();
		for (auto &t : s.terms)
			terms.push_back(Json{{"h", poly(t.h)},
			                     {"outer", poly(t.outer)},
			                     {"projected_cycle", chain(t.projected)},
			                     {"child", space(*t.child)}});
		j["children"] = terms;
		break;
	}
	}
	return j;
}

inline Json integral(const IntegralReport &r)
{
	Json samples = Json::array();
	for (size_t k = 0; k < r.samples.size(); ++k)
		samples.push_back(Json{{"t", num(r.samples[k])}, {"residual", num(r.residuals[k])}});
	return Json{{"samples", samples}, {"max_residual", num(r.max_residual)}, {"escalations", r.escalations}};
}

inline Json membership(const Membership &m)
{
	Json j{{"verdict", std::string(to_string(m.verdict))}, {"decided_by", m.via}};
	if (m.verdict == Verdict::MemberNumeric || m.verdict == Verdict::NotMember || m.verdict == Verdict::Inconclusive)
		if (!m.report.samples.empty())
		{
			j["residual"] = num(m.residual);
			j["oracle"] = integral(m.report);
		}
	return j;
}

inline Json semidirect(const SemidirectReport &r)
{
	return Json{{"order_f", r.order_f},
	            {"order_normal_closure", r.order_normal},
	            {"order_outer_loops", r.order_outer_loops},
	            {"order_outer_monodromy", r.order_outer},
	            {"product_holds", r.product_holds},
	            {"intersection_trivial", r.intersection_trivial},
	            {"alpha_blocks_ok", r.alpha_blocks_ok},
	            {"beta_blocks_ok", r.beta_blocks_ok},
	            {"generator_kind", r.generator_kind},
	            {"holds", r.holds()}};
}

} // namespace zc::json
