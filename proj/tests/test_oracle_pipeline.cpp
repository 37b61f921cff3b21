#include "support.hpp"
#include "zerocycle/pipeline.hpp"

#include <gtest/gtest.h>

using namespace zc;
using namespace zc::test;

TEST(Oracle, SamplePlanAvoidsCriticalValues)
{
	SamplePlan plan{10, 4, 1e-8};
	for (double maxc : {0.0, 0.3, 5.0, 120.0})
	{
		auto pts = plan.points(maxc);
		ASSERT_EQ(pts.size(), 10u);
		EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
		for (double t : pts)
			EXPECT_GE(t - maxc, 1e-3 * (1 + maxc));
	}
	EXPECT_EQ(plan.points(2.0), plan.points(2.0));
}

TEST(Oracle, AbelianIntegralBasics)
{
	Poly f = compose(cubic_outer(), cubic_inner());
	SamplePlan plan;
	auto mono = compute_monodromy(f);
	// g = f integrates to t * sum(n) = 0; constants vanish over any cycle
	EXPECT_LT(abelian_integral(mono, cubic_pair_cycle(), f, plan).max_residual, 1e-9);
	EXPECT_LT(abelian_integral(mono, cubic_pair_cycle(), c(7), plan).max_residual, 1e-12);
	EXPECT_LT(abelian_integral(mono, Chain({1, 0, 0, 0, 0, 0, 0, 0, -1}), c(-3), plan).max_residual, 1e-12);
	EXPECT_GT(abelian_integral(mono, cubic_pair_cycle(), z().pow(3), plan).max_residual, 0.1);
	EXPECT_THROW(abelian_integral(mono, Chain({1, -1}), z(), plan), Error);
}

TEST(Oracle, ParticularSolutionOfCubicPair)
{
	// k0 = 1 with every free parameter zero: g solves 3 g0 - 2 g1 + 4 g2 = f~(w) on digits of h
	Poly f = compose(cubic_outer(), cubic_inner());
	Poly g = compose(cubic_outer(), cubic_inner()) / GRat(3);
	EXPECT_LT(abelian_integral(f, cubic_pair_cycle(), g, SamplePlan{}).max_residual, 1e-9);
	Poly g2 = compose(cubic_outer(), cubic_inner()) * z() / GRat(-2); // digit 1 carries f~
	EXPECT_LT(abelian_integral(f, cubic_pair_cycle(), g2, SamplePlan{}).max_residual, 1e-9);
}

TEST(Oracle, DoublingPrecisionDoesNotInflateResidual)
{
	Poly f = compose(cubic_outer(), cubic_inner());
	auto mono = compute_monodromy(f);
	Poly g = z() * GRat(5) - c(2);
	auto base = abelian_integral(mono, cubic_pair_cycle(), g, SamplePlan{});
	// long double transport of the same labelled fibre
	long double worst = 0;
	auto gc = g.to_complex<long double>();
	for (double t : base.samples)
	{
		auto zs = transport_labelled<long double>(mono, {t, 0});
		Cx<long double> sum(0);
		long double gmax = 0;
		for (int i = 0; i < 9; ++i)
		{
			auto v = horner(gc, zs[static_cast<size_t>(i)]);
			gmax = std::max(gmax, std::abs(v));
			sum += static_cast<long double>(cubic_pair_cycle().n[static_cast<size_t>(i)]) * v;
		}
		worst = std::max(worst, std::abs(sum) / (1 + gmax));
	}
	EXPECT_LE(static_cast<double>(worst), 10 * base.max_residual + 1e-15);
}

TEST(Oracle, Verdicts)
{
	IntegralReport small{{1, 2, 3}, {1e-12, 1e-11, 1e-13}, 1e-11, 0};
	EXPECT_EQ(numeric_verdict(small, 1e-8), Verdict::MemberNumeric);
	IntegralReport big{{1, 2, 3}, {0.5, 0.2, 0.3}, 0.5, 0};
	EXPECT_EQ(numeric_verdict(big, 1e-8), Verdict::NotMember);
	IntegralReport gap{{1, 2, 3}, {1e-6, 1e-7, 1e-6}, 1e-6, 0};
	EXPECT_EQ(numeric_verdict(gap, 1e-8), Verdict::Inconclusive);
}

TEST(Oracle, NewtonGirardCrosscheck)
{
	SamplePlan plan{5, 1, 1e-8};
	EXPECT_LT(ng_crosscheck(cubic_inner(), plan), 1e-10);
	for (int d = 1; d <= 6; ++d)
		EXPECT_LT(ng_crosscheck(z().pow(static_cast<unsigned>(d)), plan), 1e-12) << d;
	EXPECT_LT(ng_crosscheck(chebyshev(3).monic(), plan), 1e-10);
	EXPECT_LT(ng_crosscheck(chebyshev(4), plan), 1e-10);
}

TEST(Oracle, ChebyshevClosedFormMatchesDirectSum)
{
	std::mt19937_64 rng(12);
	for (int m : {4, 6})
	{
		auto mono = compute_monodromy(chebyshev(m));
		std::vector<Chain> chains{random_chain(rng, m, 3, true), random_chain(rng, m, 3, false)};
		if (m == 6)
			chains.push_back(Chain({1, -1, 1, -1, 1, -1}));
		for (auto &c : chains)
			for (double t : SamplePlan{5, 7, 1e-8}.points(mono.critical.max_abs_value()))
				for (int j = 0; j < m; ++j)
				{
					auto a = chebyshev_integral_closed_form(c, j, m, t);
					auto b = chebyshev_integral_direct(mono, c, j, t);
					EXPECT_LT(std::abs(a - b), 1e-9 * (1 + std::abs(b))) << m << " j=" << j << " t=" << t;
				}
	}
	Chain alt({1, -1, 1, -1, 1, -1});
	auto mono6 = compute_monodromy(chebyshev(6));
	double t = 3.5;
	EXPECT_LT(std::abs(chebyshev_integral_closed_form(alt, 0, 6, t)), 1e-12);
	EXPECT_LT(std::abs(chebyshev_integral_closed_form(alt, 2, 6, t)), 1e-10);
	EXPECT_GT(std::abs(chebyshev_integral_closed_form(alt, 3, 6, t)), 1e-3);
	EXPECT_LT(std::abs(chebyshev_integral_closed_form(alt, 3, 6, t) - chebyshev_integral_direct(mono6, alt, 3, t)), 1e-10);
}

TEST(Oracle, BruteForceBalanced)
{
	auto pair = compute_monodromy(compose(cubic_outer(), cubic_inner())).group().elements();
	EXPECT_TRUE(brute_force_balanced(cubic_pair_cycle(), pair));
	EXPECT_TRUE(brute_force_balanced(Chain(std::vector<long long>(9, 0)), pair));
	auto s3 = compute_monodromy(P({0, -1, 0, 1})).group().elements();
	EXPECT_FALSE(brute_force_balanced(Chain({1, -1, 0}), s3));
	EXPECT_TRUE(brute_force_balanced(Chain({2, 2, 2}), s3));
}

TEST(Oracle, Semidirect)
{
	auto a = semidirect_check(cubic_outer(), cubic_inner());
	EXPECT_TRUE(a.holds());
	EXPECT_EQ(a.order_f, 1296u);
	EXPECT_EQ(a.order_f, a.order_normal * a.order_outer_loops);
	auto b = semidirect_check(cubic_outer(), z().pow(6));
	EXPECT_TRUE(b.holds());
	EXPECT_EQ(b.order_f, b.order_normal * b.order_outer);
	try
	{
		semidirect_check(z().pow(2), z().pow(3));
		FAIL();
	}
	catch (const Error &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
	}
}

// ---------------------------------------------------------------------------

namespace {

json::Json load(const char *name) { return json::Json::parse(std::ifstream(std::string(PROBLEM_DIR) + "/" + name)); }

} // namespace

TEST(Pipeline, ParseProblemValidation)
{
	auto p = parse_problem(load("cubic_pair_balanced.json"));
	EXPECT_EQ(p.composed(), compose(cubic_outer(), cubic_inner()));
	EXPECT_EQ(p.degree_bound, 8);
	EXPECT_EQ(p.samples, 10);

	auto expect_kind = [](const char *text, ErrorKind k) {
		try
		{
			parse_problem(json::Json::parse(text));
			ADD_FAILURE() << text;
		}
		catch (const Error &e)
		{
			EXPECT_EQ(e.kind(), k) << text;
		}
	};
	expect_kind(R"({"poly":[0,0,1],"cycle":[1,-1,0]})", ErrorKind::ShapeError);
	expect_kind(R"({"poly":[0,0,1]})", ErrorKind::InvalidInput);
	expect_kind(R"({"poly":[0,0,1],"factors":[[0,1]],"cycle":[1,-1]})", ErrorKind::InvalidInput);
	expect_kind(R"({"factors":[[3],[0,1]],"cycle":[1]})", ErrorKind::InvalidInput);
	expect_kind(R"({"poly":[0,0,1.5],"cycle":[1,-1]})", ErrorKind::InvalidInput);
	expect_kind(R"({"poly":[0,0,1],"cycle":["a",-1]})", ErrorKind::InvalidInput);
	expect_kind(R"([1,2])", ErrorKind::InvalidInput);

	auto q = parse_problem(json::Json::parse(R"({"poly":["1/2", "0", "1+2*i"],"cycle":[1,-1],"g":"0,1","seed":9})"));
	EXPECT_EQ(q.composed(), Poly({GRat(Rational(1, 2)), GRat(0), GRat(Rational(1), Rational(2))}));
	EXPECT_EQ(*q.g, z());
	EXPECT_EQ(q.seed, 9u);
	EXPECT_EQ(parse_coeff_list("[\"1/3\", 2]"), Poly({GRat(Rational(1, 3)), GRat(2)}));
	EXPECT_EQ(parse_coeff_list("0, 0, -1"), -z().pow(2));
}

TEST(Pipeline, AnalyzeCubicPair)
{
	auto j = run_analyze(parse_problem(load("cubic_pair_balanced.json")));
	EXPECT_TRUE(j["hypothesis_ok"].get<bool>());
	EXPECT_TRUE(j["cycle"]["balanced"].get<bool>());
	for (auto &f : j["decomposition"]["factors"])
		EXPECT_EQ(f["class"], "TwoTransitive");
	ASSERT_EQ(j["right_factors"].size(), 1u);
	EXPECT_EQ(j["right_factors"][0]["projected_cycle"], json::Json({3, -3, 0}));
	EXPECT_FALSE(j["right_factors"][0]["projected_balanced"].get<bool>());
	EXPECT_EQ(j["monodromy"]["order"], 1296);
	EXPECT_TRUE(j["monodromy"]["tau_check"].get<bool>());
	EXPECT_EQ(j["labeling_convention"], labeling_convention);
}

TEST(Pipeline, AnalyzeMonomialDivisors)
{
	auto j = run_analyze(parse_problem(load("z6_alternating.json")));
	EXPECT_EQ(j["divisors"], json::Json({1, 2, 3, 6}));
	std::vector<int> idx;
	for (auto &s : j["module_structure"])
		for (auto &k : s["indices"])
			idx.push_back(k.get<int>());
	std::sort(idx.begin(), idx.end());
	EXPECT_EQ(idx, (std::vector<int>{0, 1, 2, 4, 5}));
}

TEST(Pipeline, SolveCubicOverZ6)
{
	auto j = run_solve(parse_problem(load("cubic_over_z6_balanced.json")));
	EXPECT_EQ(j["space"]["node"], "TheoremCNode");
	EXPECT_EQ(j["space"]["u"]["allowed_exponents"], json::Json({1, 2, 4, 5}));
	for (auto &m : j["sampled_members"])
		EXPECT_EQ(m["verdict"], "MemberNumeric");
}

TEST(Pipeline, VerifyCubicPair)
{
	auto p = parse_problem(load("cubic_pair_balanced.json"));
	p.g = z().pow(3);
	auto j = run_verify(p);
	EXPECT_EQ(j["membership"]["verdict"], "NotMember");
	p.g = z();
	EXPECT_EQ(run_verify(p)["membership"]["verdict"], "MemberNumeric");
	p.g.reset();
	EXPECT_THROW(run_verify(p), Error);
}

TEST(Pipeline, OracleReport)
{
	auto j = run_oracle(parse_problem(load("cubic_over_z6_balanced.json")));
	EXPECT_TRUE(j["balancedness"]["agree"].get<bool>());
	ASSERT_EQ(j["semidirect"].size(), 1u);
	EXPECT_TRUE(j["semidirect"][0]["report"]["holds"].get<bool>());
}

TEST(Pipeline, ReportsAreByteStable)
{
	for (const char *name : {"cubic_pair_balanced.json", "z6_period3.json", "cubic_constant_chain.json"})
	{
		auto p = parse_problem(load(name));
		EXPECT_EQ(run_solve(p).dump(2), run_solve(p).dump(2)) << name;
		EXPECT_EQ(run_analyze(p).dump(2), run_analyze(p).dump(2)) << name;
		EXPECT_EQ(render_text(run_solve(p)), render_text(run_solve(p))) << name;
	}
}

TEST(Pipeline, ExitCodes)
{
	EXPECT_EQ(exit_code(ErrorKind::InvalidInput), 1);
	EXPECT_EQ(exit_code(ErrorKind::ShapeError), 1);
	EXPECT_EQ(exit_code(ErrorKind::HypothesisViolated), 2);
	EXPECT_EQ(exit_code(ErrorKind::UnsupportedFactor), 2);
	EXPECT_EQ(exit_code(ErrorKind::NumericFailure), 3);
}
