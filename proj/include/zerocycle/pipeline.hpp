#pragma once

#include "zerocycle/report.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace zc {

struct Problem
{
	std::optional<Poly> poly;
	std::vector<Poly> factors; // outermost first
	Chain cycle;
	std::optional<Poly> g;
	int degree_bound = 12;
	int samples = 10;
	double tol = 1e-8;
	uint64_t seed = 1;
	size_t element_cap = default_element_cap;

	Poly composed() const
	{
		if (poly)
			return *poly;
		Poly f = Poly::z();
		for (auto it = factors.rbegin(); it != factors.rend(); ++it)
			f = compose(*it, f);
		return f;
	}

	DecompositionChain chain() const { return poly ? decompose_chain(*poly) : chain_from_factors(factors); }

	SamplePlan plan() const { return SamplePlan{samples, seed, tol}; }
};

namespace detail {

inline GRat coeff_from_json(const json::Json &v)
{
	if (v.is_string())
		return GRat::parse(v.get<std::string>());
	if (v.is_number_integer())
		return GRat(static_cast<long>(v.get<long long>()));
	throw Error(ErrorKind::InvalidInput, "coefficients must be integers or strings like \"a/b+c/d*i\"");
}

inline Poly poly_from_json(const json::Json &v)
{
	if (!v.is_array() || v.empty())
		throw Error(ErrorKind::InvalidInput, "a polynomial is a non-empty coefficient array, lowest degree first");
	std::vector<GRat> c;
	for (auto &x : v)
		c.push_back(coeff_from_json(x));
	return Poly(std::move(c));
}

} // namespace detail

/** "0,-1,1" or "[\"1/2\", 0]": coefficients lowest degree first. */
inline Poly parse_coeff_list(const std::string &text)
{
	std::string t = text;
	auto first = t.find_first_not_of(" \t");
	if (first != std::string::npos && t[first] == '[')
	{
		try
		{
			return detail::poly_from_json(json::Json::parse(t));
		}
		catch (const nlohmann::json::exception &e)
		{
			throw Error(ErrorKind::InvalidInput, std::string("bad coefficient list: ") + e.what());
		}
	}
	std::vector<GRat> c;
	std::stringstream ss(t);
	std::string item;
	while (std::getline(ss, item, ','))
		c.push_back(GRat::parse(item));
	if (c.empty())
		throw Error(ErrorKind::InvalidInput, "empty coefficient list");
	return Poly(std::move(c));
}

inline Problem parse_problem(const json::Json &j)
{
	if (!j.is_object())
		throw Error(ErrorKind::InvalidInput, "problem file must hold a JSON object");
	Problem p;
	try
	{
		if (j.contains("poly") == j.contains("factors"))
			throw Error(ErrorKind::InvalidInput, "give exactly one of \"poly\" and \"factors\"");
		if (j.contains("poly"))
			p.poly = detail::poly_from_json(j.at("poly"));
		else
		{
			if (!j.at("factors").is_array() || j.at("factors").empty())
				throw Error(ErrorKind::InvalidInput, "\"factors\" must be a non-empty array");
			for (auto &f : j.at("factors"))
				p.factors.push_back(detail::poly_from_json(f));
		}
		if (!j.contains("cycle") || !j.at("cycle").is_array())
			throw Error(ErrorKind::InvalidInput, "missing integer array \"cycle\"");
		p.cycle = Chain(j.at("cycle").get<std::vector<long long>>());
		if (j.contains("g"))
			p.g = j.at("g").is_string() ? parse_coeff_list(j.at("g").get<std::string>()) : detail::poly_from_json(j.at("g"));
		p.degree_bound = j.value("degree_bound", p.degree_bound);
		p.samples = j.value("samples", p.samples);
		p.tol = j.value("tol", p.tol);
		p.seed = j.value("seed", p.seed);
		p.element_cap = j.value("element_cap", p.element_cap);
	}
	catch (const nlohmann::json::exception &e)
	{
		throw Error(ErrorKind::InvalidInput, std::string("malformed problem file: ") + e.what());
	}
	for (auto &f : p.factors)
		if (f.degree() < 1)
			throw Error(ErrorKind::InvalidInput, "factors must be nonconstant");
	int m = p.composed().degree();
	if (m < 1)
		throw Error(ErrorKind::InvalidInput, "f must be nonconstant");
	if (p.cycle.m() != m)
		throw Error(ErrorKind::ShapeError,
		            "cycle has " + std::to_string(p.cycle.m()) + " entries but deg f = " + std::to_string(m));
	if (p.degree_bound < 0 || p.samples < 1 || !(p.tol > 0))
		throw Error(ErrorKind::InvalidInput, "degree_bound >= 0, samples >= 1 and tol > 0 required");
	return p;
}

inline Problem load_problem(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorKind::InvalidInput, "cannot open " + path);
	json::Json j;
	try
	{
		j = json::Json::parse(in);
	}
	catch (const nlohmann::json::exception &e)
	{
		throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
	}
	return parse_problem(j);
}

// ---------------------------------------------------------------------------

namespace detail {

inline json::Json header(const char *command, const Problem &p)
{
	json::Json j;
	j["command"] = command;
	j["labeling_convention"] = labeling_convention;
	json::Json in;
	in["f"] = json::poly(p.composed());
	if (!p.factors.empty())
	{
		json::Json fs = json::Json::array();
		for (auto &f : p.factors)
			fs.push_back(json::poly(f));
		in["factors"] = fs;
	}
	in["cycle"] = json::chain(p.cycle);
	j["input"] = in;
	return j;
}

inline bool balanced_for(const Poly &f, const Chain &c, size_t cap)
{
	if (f.degree() <= 1)
		return c.is_zero();
	return is_balanced(c, compute_monodromy(f).group(cap));
}

inline std::vector<int> divisor_set(const DecompositionChain &chain)
{
	std::vector<int> d{1, chain.degree()};
	for (auto &rf : enumerate_right_factors(chain))
		d.push_back(rf.inner.degree());
	std::sort(d.begin(), d.end());
	d.erase(std::unique(d.begin(), d.end()), d.end());
	return d;
}

} // namespace detail

inline json::Json run_analyze(const Problem &p)
{
	auto j = detail::header("analyze", p);
	Poly f = p.composed();
	if (f.degree() == 1)
	{
		j["cycle"] = json::Json{{"coeffs", json::chain(p.cycle)}, {"is_cycle", is_cycle(p.cycle)}, {"balanced", p.cycle.is_zero()}};
		return j;
	}
	auto chain = p.chain();
	j["decomposition"] = json::decomposition(chain);
	j["hypothesis_ok"] = chain.hypothesis_ok;
	auto mono = compute_monodromy(f);
	j["monodromy"] = json::monodromy(mono, p.element_cap);
	bool balanced = is_balanced(p.cycle, mono.group(p.element_cap));
	j["cycle"] = json::Json{{"coeffs", json::chain(p.cycle)},
	                        {"is_cycle", is_cycle(p.cycle)},
	                        {"characteristic_poly", json::poly(characteristic_poly(p.cycle))},
	                        {"balanced", balanced}};
	json::Json rfs = json::Json::array();
	for (auto &rf : enumerate_right_factors(chain))
	{
		int d = rf.inner.degree();
		if (d == f.degree())
			continue;
		auto blocks = residue_blocks(f.degree(), d);
		Chain proj = project(p.cycle, blocks);
		json::Json parts = json::Json::array();
		for (auto &part : invariant_parts(p.cycle, blocks))
			parts.push_back(json::Json{{"coeffs", json::chain(part)}, {"characteristic_poly", json::poly(characteristic_poly(part))}});
		rfs.push_back(json::Json{{"h", json::poly(rf.inner)},
		                         {"outer", json::poly(rf.outer)},
		                         {"blocks", json::blocks(blocks)},
		                         {"projected_cycle", json::chain(proj)},
		                         {"projected_balanced", detail::balanced_for(rf.outer, proj, p.element_cap)},
		                         {"invariant_parts", parts}});
	}
	j["right_factors"] = rfs;
	auto divs = detail::divisor_set(chain);
	j["divisors"] = divs;
	j["module_structure"] = json::module(module_structure(p.cycle, divs));
	return j;
}

inline SpacePtr solve_problem(const Problem &p)
{
	Poly f = p.composed();
	if (f.degree() == 1)
		return solve(f, p.cycle);
	return solve(p.chain(), p.cycle);
}

inline constexpr int sampled_members = 5;

inline json::Json run_solve(const Problem &p)
{
	auto j = detail::header("solve", p);
	auto space = solve_problem(p);
	j["degree_bound"] = p.degree_bound;
	j["space"] = json::space(*space);
	j["formula"] = describe(*space);
	j["dimension_at_bound"] = basis(*space, p.degree_bound).size();
	json::Json members = json::Json::array();
	auto plan = p.plan();
	Poly f = p.composed();
	for (auto &g : sample_solutions(*space, p.degree_bound, sampled_members, p.seed))
	{
		auto rep = abelian_integral(f, p.cycle, g, plan);
		members.push_back(json::Json{{"g", json::poly(g)},
		                             {"max_residual", json::num(rep.max_residual)},
		                             {"verdict", std::string(to_string(numeric_verdict(rep, plan.tolerance)))}});
	}
	j["sampled_members"] = members;
	return j;
}

inline json::Json run_verify(const Problem &p)
{
	if (!p.g)
		throw Error(ErrorKind::InvalidInput, "verify needs g (--g or \"g\" in the problem file)");
	auto j = detail::header("verify", p);
	j["g"] = json::poly(*p.g);
	auto space = solve_problem(p);
	auto plan = p.plan();
	auto m = contains(*space, *p.g, plan);
	j["membership"] = json::membership(m);
	j["oracle"] = json::integral(abelian_integral(p.composed(), p.cycle, *p.g, plan));
	return j;
}

inline json::Json run_oracle(const Problem &p)
{
	auto j = detail::header("oracle", p);
	Poly f = p.composed();
	auto plan = p.plan();
	if (f.degree() == 1)
		return j;
	auto chain = p.chain();
	json::Json ng = json::Json::array();
	for (auto &fac : chain.factors)
	{
		json::Json sv = json::Json::array();
		for (auto &x : power_sums(fac.poly, fac.poly.degree()))
			sv.push_back(x.to_string());
		ng.push_back(json::Json{{"h", json::poly(fac.poly)}, {"s", sv}, {"max_deviation", json::num(ng_crosscheck(fac.poly, plan))}});
	}
	j["newton_girard"] = ng;

	auto mono = compute_monodromy(f);
	auto group = mono.group(p.element_cap);
	bool balanced = is_balanced(p.cycle, group);
	json::Json bf{{"is_balanced", balanced}};
	try
	{
		bool brute = brute_force_balanced(p.cycle, group.elements());
		bf["brute_force"] = brute;
		bf["agree"] = brute == balanced;
	}
	catch (const Error &e)
	{
		if (e.kind() != ErrorKind::CapExceeded)
			throw;
		bf["brute_force"] = nullptr;
	}
	j["balancedness"] = bf;

	json::Json semi = json::Json::array();
	if (chain.hypothesis_ok)
		for (size_t k = 1; k < chain.factors.size(); ++k)
		{
			json::Json entry{{"outer", json::poly(chain.head(k))}, {"h", json::poly(chain.tail(k))}};
			try
			{
				entry["report"] = json::semidirect(semidirect_check(chain.head(k), chain.tail(k), p.element_cap));
			}
			catch (const Error &e)
			{
				if (e.kind() != ErrorKind::CapExceeded && e.kind() != ErrorKind::HypothesisViolated)
					throw;
				entry["report"] = nullptr;
				entry["skipped"] = std::string(to_string(e.kind()));
			}
			semi.push_back(entry);
		}
	j["semidirect"] = semi;

	if (f == chebyshev(f.degree()))
	{
		json::Json cf = json::Json::array();
		int m = f.degree();
		for (double t : plan.points(mono.critical.max_abs_value()))
			for (int jj = 0; jj < m; ++jj)
			{
				auto a = chebyshev_integral_closed_form(p.cycle, jj, m, t);
				auto b = chebyshev_integral_direct(mono, p.cycle, jj, t);
				cf.push_back(json::Json{{"t", json::num(t)}, {"j", jj}, {"deviation", json::num(std::abs(a - b))}});
			}
		j["chebyshev_closed_form"] = cf;
	}
	return j;
}

// ---------------------------------------------------------------------------
// text rendering

inline std::string render_text(const json::Json &j)
{
	std::ostringstream out;
	auto cmd = j.at("command").get<std::string>();
	auto polystr = [](const json::Json &c) { return c.empty() ? std::string("0") : detail::poly_from_json(c).to_string(); };
	out << cmd << ": f = " << polystr(j.at("input").at("f")) << "\n";
	out << "cycle: " << j.at("input").at("cycle").dump() << "\n";
	if (cmd == "analyze")
	{
		if (j.contains("decomposition"))
		{
			out << "factors (outermost first):\n";
			for (auto &f : j.at("decomposition").at("factors"))
				out << "  " << polystr(f.at("coeffs")) << "  [" << f.at("class").get<std::string>() << "]\n";
			out << "hypothesis_ok: " << (j.at("hypothesis_ok").get<bool>() ? "true" : "false") << "\n";
		}
		if (j.contains("monodromy"))
		{
			auto &m = j.at("monodromy");
			out << "monodromy: order " << (m.at("order").is_null() ? std::string("over cap") : m.at("order").dump())
			    << ", 2-transitive " << (m.at("two_transitive").get<bool>() ? "yes" : "no") << ", generators:";
			for (auto &g : m.at("generators"))
				out << " " << g.at("cycles").get<std::string>();
			out << "\n";
		}
		out << "balanced: " << (j.at("cycle").at("balanced").get<bool>() ? "yes" : "no") << "\n";
		if (j.contains("right_factors"))
			for (auto &rf : j.at("right_factors"))
			{
				out << "h = " << polystr(rf.at("h")) << ": projected " << rf.at("projected_cycle").dump()
				    << (rf.at("projected_balanced").get<bool>() ? " (balanced)" : " (unbalanced)") << ", parts:";
				const char *sep = " ";
				for (auto &part : rf.at("invariant_parts"))
				{
					out << sep << polystr(part.at("characteristic_poly"));
					sep = "; ";
				}
				out << "\n";
			}
		if (j.contains("divisors"))
			out << "D(f) = " << j.at("divisors").dump() << "\n";
	}
	else if (cmd == "solve")
	{
		out << j.at("formula").get<std::string>();
		out << "dimension at degree <= " << j.at("degree_bound").dump() << ": " << j.at("dimension_at_bound").dump() << "\n";
		for (auto &m : j.at("sampled_members"))
			out << "  " << polystr(m.at("g")) << "  residual " << m.at("max_residual").get<std::string>() << "\n";
	}
	else if (cmd == "verify")
	{
		out << "g = " << polystr(j.at("g")) << "\n";
		out << "verdict: " << j.at("membership").at("verdict").get<std::string>() << " (via "
		    << j.at("membership").at("decided_by").get<std::string>() << ")\n";
		out << "oracle max residual: " << j.at("oracle").at("max_residual").get<std::string>() << "\n";
	}
	else if (cmd == "oracle")
	{
		if (j.contains("newton_girard"))
			for (auto &n : j.at("newton_girard"))
				out << "newton-girard h = " << polystr(n.at("h")) << ": deviation " << n.at("max_deviation").get<std::string>() << "\n";
		if (j.contains("balancedness"))
			out << "balancedness: " << j.at("balancedness").dump() << "\n";
		if (j.contains("semidirect"))
			for (auto &s : j.at("semidirect"))
				out << "semidirect h = " << polystr(s.at("h")) << ": "
				    << (s.at("report").is_null() ? "skipped" : s.at("report").at("holds").get<bool>() ? "holds" : "fails") << "\n";
	}
	return out.str();
}

/** Exit status for an error: 1 input, 2 hypothesis/unsupported, 3 numeric. */
inline int exit_code(ErrorKind k)
{
	switch (k)
	{
	case ErrorKind::HypothesisViolated:
	case ErrorKind::UnsupportedFactor: return 2;
	case ErrorKind::NumericFailure:
	case ErrorKind::DegenerateGeometry:
	case ErrorKind::NonConstantBalanced: return 3;
	default: return 1;
	}
}

} // namespace zc
