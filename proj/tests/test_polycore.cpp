#include "support.hpp"

#include <gtest/gtest.h>

using namespace zc;
using namespace zc::test;

TEST(GRat, ArithmeticAndCanonicalForm)
{
	GRat a(Rational(1, 2), Rational(-3, 4));
	GRat b = GRat::parse("2/4-6/8*i");
	EXPECT_EQ(a, b);
	EXPECT_EQ(a.to_string(), "1/2-3/4*i");
	EXPECT_EQ((a * a.inverse()), GRat(1));
	EXPECT_EQ(a * a.conj(), GRat(a.norm()));
	EXPECT_EQ(GRat::i() * GRat::i(), GRat(-1));
	EXPECT_EQ(GRat::parse("i"), GRat::i());
	EXPECT_EQ(GRat::parse("-i"), -GRat::i());
	EXPECT_EQ(GRat::parse("3*i").to_string(), "3*i");
	EXPECT_EQ(GRat::parse("-7/14").to_string(), "-1/2");
	EXPECT_THROW(GRat::parse(""), Error);
	EXPECT_THROW(GRat(0).inverse(), Error);
}

TEST(GRat, ParseRoundTripsRandomValues)
{
	std::mt19937_64 rng(11);
	std::uniform_int_distribution<int> u(-40, 40), d(1, 17);
	for (int k = 0; k < 300; ++k)
	{
		GRat x(Rational(u(rng), d(rng)), Rational(u(rng), d(rng)));
		EXPECT_EQ(GRat::parse(x.to_string()), x) << x.to_string();
	}
}

TEST(Poly, CompositionExamples)
{
	EXPECT_EQ(compose(z().pow(2), z().pow(3)), z().pow(6));
	Poly f = compose(cubic_outer(), cubic_inner());
	EXPECT_EQ(f.degree(), 9);
	EXPECT_EQ(f[0], GRat(-3));
	EXPECT_EQ(compose(chebyshev(2), chebyshev(3)), chebyshev(6));
}

TEST(Poly, ChebyshevMatchesRecurrence)
{
	// independent three-term recurrence
	std::vector<Poly> t{c(1), z()};
	for (int n = 2; n <= 12; ++n)
		t.push_back(Poly::monomial(1, GRat(2)) * t[static_cast<size_t>(n - 1)] - t[static_cast<size_t>(n - 2)]);
	for (int n = 0; n <= 12; ++n)
		EXPECT_EQ(chebyshev(n), t[static_cast<size_t>(n)]) << n;
	EXPECT_EQ(chebyshev(0), c(1));
	EXPECT_EQ(chebyshev(1), z());
	EXPECT_EQ(chebyshev(3), P({0, -3, 0, 4}));
}

TEST(Poly, ChebyshevCompositionProperty)
{
	for (int a = 1; a <= 6; ++a)
		for (int b = 1; b <= 6; ++b)
			EXPECT_EQ(compose(chebyshev(a), chebyshev(b)), chebyshev(a * b)) << a << "," << b;
}

TEST(Poly, Cyclotomic)
{
	EXPECT_EQ(cyclotomic(1), P({-1, 1}));
	// (z^6 - 1) / (Phi_1 Phi_2 Phi_3)
	Poly expect = (z().pow(6) - c(1)) / (P({-1, 1}) * P({1, 1}) * P({1, 1, 1}));
	EXPECT_EQ(cyclotomic(6), expect);
	EXPECT_EQ(cyclotomic(6), P({1, -1, 1}));
	EXPECT_EQ(cyclotomic(3) * cyclotomic(6), P({1, 0, 1, 0, 1}));
	for (int n = 1; n <= 30; ++n)
	{
		Poly prod = c(1);
		for (int d : divisors(n))
			prod = prod * cyclotomic(d);
		EXPECT_EQ(prod, z().pow(static_cast<unsigned>(n)) - c(1)) << n;
		EXPECT_EQ(cyclotomic(n).degree(), totient(n));
	}
}

TEST(Poly, FAdicExamples)
{
	auto e1 = f_adic_expand(z().pow(4), z().pow(2));
	ASSERT_EQ(e1.digits.size(), 2u);
	EXPECT_EQ(e1.digits[0], z().pow(2));
	EXPECT_TRUE(e1.digits[1].is_zero());

	auto e2 = f_adic_expand(z().pow(3) + z(), z().pow(2));
	EXPECT_TRUE(e2.digits[0].is_zero());
	EXPECT_EQ(e2.digits[1], z() + c(1));

	auto e3 = f_adic_expand(z().pow(3), cubic_inner());
	EXPECT_EQ(e3.digits[0], z() + c(1));
	EXPECT_TRUE(e3.digits[1].is_zero());
	EXPECT_EQ(e3.digits[2], c(-2));
	EXPECT_EQ(e3.reassemble(), z().pow(3));

	try
	{
		f_adic_expand(z(), c(3));
		FAIL() << "constant base accepted";
	}
	catch (const Error &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::InvalidBase);
	}
}

TEST(Poly, FAdicReassemblyProperty)
{
	std::mt19937_64 rng(5);
	std::uniform_int_distribution<int> dg(0, 30), df(1, 8), coin(0, 1);
	for (int k = 0; k < 200; ++k)
	{
		Poly g = random_poly(rng, dg(rng), 6, coin(rng));
		Poly f = random_poly(rng, df(rng), 4, coin(rng));
		auto e = f_adic_expand(g, f);
		EXPECT_EQ(e.digits.size(), static_cast<size_t>(f.degree()));
		EXPECT_EQ(e.reassemble(), g);
	}
}

TEST(Poly, CompositionAssociativeProperty)
{
	std::mt19937_64 rng(9);
	std::uniform_int_distribution<int> d(1, 4);
	for (int k = 0; k < 60; ++k)
	{
		Poly a = random_poly(rng, d(rng)), b = random_poly(rng, d(rng), 3, true), e = random_poly(rng, d(rng));
		EXPECT_EQ(compose(compose(a, b), e), compose(a, compose(b, e)));
		EXPECT_EQ(compose(a, b).degree(), a.degree() * b.degree());
	}
}

TEST(Poly, DivisionIdentity)
{
	std::mt19937_64 rng(21);
	std::uniform_int_distribution<int> d(0, 12);
	for (int k = 0; k < 100; ++k)
	{
		Poly a = random_poly(rng, d(rng), 5, true), b = random_poly(rng, d(rng) % 6, 5, true);
		auto [q, r] = divmod(a, b);
		EXPECT_EQ(q * b + r, a);
		if (!r.is_zero())
		{
			EXPECT_LT(r.degree(), b.degree());
		}
	}
	EXPECT_THROW(divmod(z(), Poly{}), Error);
}

TEST(Poly, GcdAndSquarefree)
{
	Poly a = (z() - c(1)).pow(3) * (z() + c(2));
	EXPECT_EQ(squarefree_part(a), (z() - c(1)) * (z() + c(2)));
	EXPECT_EQ(gcd(a, (z() - c(1)) * (z() - c(5))), z() - c(1));
	EXPECT_EQ(gcd(z().pow(2) + c(1), z() - c(3)), c(1));
}

TEST(Poly, PowerSums)
{
	auto s = power_sums(cubic_inner(), 3);
	EXPECT_EQ(s, (std::vector<GRat>{GRat(3), GRat(-2), GRat(4)}));
	for (int d = 1; d <= 7; ++d)
	{
		auto sd = power_sums(z().pow(static_cast<unsigned>(d)), d);
		EXPECT_EQ(sd[0], GRat(d));
		for (int k = 1; k < d; ++k)
			EXPECT_TRUE(sd[static_cast<size_t>(k)].is_zero());
	}
	auto st = power_sums(chebyshev(3), 3);
	EXPECT_EQ(st, (std::vector<GRat>{GRat(3), GRat(0), GRat(Rational(3, 2))}));
	try
	{
		power_sums(cubic_inner(), 4);
		FAIL();
	}
	catch (const Error &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
	}
}

TEST(Poly, PowerSumsAgreeWithNumericRoots)
{
	std::mt19937_64 rng(3);
	std::uniform_int_distribution<int> dd(2, 6);
	std::uniform_real_distribution<double> w(-3, 3);
	for (int k = 0; k < 25; ++k)
	{
		Poly h = random_poly(rng, dd(rng), 4);
		int d = h.degree();
		auto s = power_sums(h, d);
		for (int rep = 0; rep < 5; ++rep)
		{
			auto hc = h.to_complex<long double>();
			hc[0] -= static_cast<long double>(w(rng));
			auto roots = poly_roots<long double>(hc);
			for (int p = 0; p < d; ++p)
			{
				Cx<long double> sum(0);
				for (auto &r : roots)
					sum += std::pow(r, p);
				auto expect = s[static_cast<size_t>(p)].to_complex<long double>();
				EXPECT_LT(static_cast<double>(std::abs(sum - expect) / (1 + std::abs(expect))), 1e-9) << h.to_string();
			}
		}
	}
}

TEST(Poly, ToStringAndEval)
{
	EXPECT_EQ(cubic_inner().to_string(), "z^3 + 2*z^2 - 1");
	EXPECT_EQ(Poly{}.to_string(), "0");
	EXPECT_EQ(cubic_inner()(GRat(Rational(-4, 3))), GRat(Rational(5, 27)));
	auto v = cubic_inner().eval(std::complex<double>(0.5, 0.25));
	std::complex<double> x(0.5, 0.25);
	EXPECT_NEAR(std::abs(v - (x * x * x + 2.0 * x * x - 1.0)), 0, 1e-14);
}

TEST(Linalg, KernelRankAndCharpoly)
{
	Mat a{{GRat(1), GRat(2), GRat(3)}, {GRat(2), GRat(4), GRat(6)}, {GRat(1), GRat(0), GRat(1)}};
	EXPECT_EQ(rank(a), 2u);
	auto k = kernel(a, 3);
	ASSERT_EQ(k.size(), 1u);
	for (auto &row : a)
	{
		GRat dot;
		for (size_t j = 0; j < 3; ++j)
			dot += row[j] * k[0][j];
		EXPECT_TRUE(dot.is_zero());
	}
	// companion matrix of z^3 - 2z + 5 has that characteristic polynomial
	Poly p = P({5, -2, 0, 1});
	Mat comp(3, Vec(3));
	comp[1][0] = GRat(1);
	comp[2][1] = GRat(1);
	comp[0][2] = GRat(-5);
	comp[1][2] = GRat(2);
	EXPECT_EQ(charpoly(comp), p);

	SpanBuilder span(3);
	EXPECT_TRUE(span.add({GRat(1), GRat(1), GRat(0)}));
	EXPECT_FALSE(span.add({GRat(2), GRat(2), GRat(0)}));
	EXPECT_TRUE(span.contains({GRat(-1), GRat(-1), GRat(0)}));
	EXPECT_FALSE(span.contains({GRat(0), GRat(0), GRat(1)}));
}
