#pragma once

#include "zerocycle/gaussian.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace zc {

/**
 * Dense univariate polynomial over Q(i), coefficients lowest degree first.
 * The highest stored coefficient is nonzero; the zero polynomial stores nothing.
 */
class Poly
{
  public:
	Poly() = default;
	explicit Poly(std::vector<GRat> coeffs) : c_(std::move(coeffs)) { trim(); }
	Poly(std::initializer_list<GRat> coeffs) : c_(coeffs) { trim(); }

	static Poly constant(GRat v) { return Poly(std::vector<GRat>{std::move(v)}); }
	static Poly monomial(int n, GRat coeff = GRat(1))
	{
		std::vector<GRat> c(static_cast<size_t>(n) + 1);
		c.back() = std::move(coeff);
		return Poly(std::move(c));
	}
	static Poly z() { return monomial(1); }
	/** a*z + b */
	static Poly linear(GRat a, GRat b) { return Poly(std::vector<GRat>{std::move(b), std::move(a)}); }

	/** -1 for the zero polynomial. */
	int degree() const { return static_cast<int>(c_.size()) - 1; }
	bool is_zero() const { return c_.empty(); }
	bool is_constant() const { return c_.size() <= 1; }
	const std::vector<GRat> &coeffs() const { return c_; }

	const GRat &operator[](int k) const
	{
		static const GRat zero;
		return k < 0 || k >= static_cast<int>(c_.size()) ? zero : c_[static_cast<size_t>(k)];
	}
	const GRat &leading() const { return (*this)[degree()]; }

	Poly operator-() const
	{
		Poly r = *this;
		for (auto &x : r.c_)
			x = -x;
		return r;
	}

	Poly &operator+=(const Poly &o)
	{
		if (o.c_.size() > c_.size())
			c_.resize(o.c_.size());
		for (size_t k = 0; k < o.c_.size(); ++k)
			c_[k] += o.c_[k];
		trim();
		return *this;
	}
	Poly &operator-=(const Poly &o)
	{
		if (o.c_.size() > c_.size())
			c_.resize(o.c_.size());
		for (size_t k = 0; k < o.c_.size(); ++k)
			c_[k] -= o.c_[k];
		trim();
		return *this;
	}
	Poly &operator*=(const GRat &s)
	{
		if (s.is_zero())
		{
			c_.clear();
			return *this;
		}
		for (auto &x : c_)
			x *= s;
		return *this;
	}
	Poly &operator/=(const GRat &s)
	{
		GRat inv = s.inverse();
		return *this *= inv;
	}

	friend Poly operator+(Poly a, const Poly &b) { return a += b; }
	friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
	friend Poly operator*(Poly a, const GRat &s) { return a *= s; }
	friend Poly operator*(const GRat &s, Poly a) { return a *= s; }
	friend Poly operator/(Poly a, const GRat &s) { return a /= s; }

	friend Poly operator*(const Poly &a, const Poly &b)
	{
		if (a.is_zero() || b.is_zero())
			return {};
		std::vector<GRat> r(a.c_.size() + b.c_.size() - 1);
		for (size_t i = 0; i < a.c_.size(); ++i)
		{
			if (a.c_[i].is_zero())
				continue;
			for (size_t j = 0; j < b.c_.size(); ++j)
				r[i + j] += a.c_[i] * b.c_[j];
		}
		return Poly(std::move(r));
	}
	Poly &operator*=(const Poly &o) { return *this = *this * o; }

	friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }
	friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

	/** Euclidean division; throws on a zero divisor. */
	friend std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
	{
		if (b.is_zero())
			throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
		if (a.degree() < b.degree())
			return {Poly{}, a};
		std::vector<GRat> rem = a.c_;
		std::vector<GRat> quo(static_cast<size_t>(a.degree() - b.degree() + 1));
		GRat inv = b.leading().inverse();
		int db = b.degree();
		for (int k = a.degree(); k >= db; --k)
		{
			GRat &top = rem[static_cast<size_t>(k)];
			if (top.is_zero())
				continue;
			GRat q = top * inv;
			for (int j = 0; j <= db; ++j)
				rem[static_cast<size_t>(k - db + j)] -= q * b.c_[static_cast<size_t>(j)];
			quo[static_cast<size_t>(k - db)] = std::move(q);
		}
		rem.resize(static_cast<size_t>(db));
		return {Poly(std::move(quo)), Poly(std::move(rem))};
	}
	friend Poly operator/(const Poly &a, const Poly &b) { return divmod(a, b).first; }
	friend Poly operator%(const Poly &a, const Poly &b) { return divmod(a, b).second; }

	bool divides(const Poly &other) const { return (other % *this).is_zero(); }

	GRat operator()(const GRat &x) const
	{
		GRat r;
		for (auto it = c_.rbegin(); it != c_.rend(); ++it)
			r = r * x + *it;
		return r;
	}

	template <class T> std::complex<T> eval(std::complex<T> x) const
	{
		std::complex<T> r(0);
		for (auto it = c_.rbegin(); it != c_.rend(); ++it)
			r = r * x + it->template to_complex<T>();
		return r;
	}

	template <class T = double> std::vector<std::complex<T>> to_complex() const
	{
		std::vector<std::complex<T>> r;
		r.reserve(c_.size());
		for (auto &x : c_)
			r.push_back(x.template to_complex<T>());
		return r;
	}

	Poly derivative() const
	{
		if (c_.size() <= 1)
			return {};
		std::vector<GRat> r(c_.size() - 1);
		for (size_t k = 1; k < c_.size(); ++k)
			r[k - 1] = c_[k] * GRat(static_cast<long>(k));
		return Poly(std::move(r));
	}

	Poly monic() const { return is_zero() ? *this : *this / leading(); }

	/** p(z + a) */
	Poly shifted(const GRat &a) const { return compose(*this, Poly::linear(GRat(1), a)); }

	Poly pow(unsigned e) const
	{
		Poly r = Poly::constant(GRat(1)), b = *this;
		while (e)
		{
			if (e & 1u)
				r *= b;
			b *= b;
			e >>= 1u;
		}
		return r;
	}

	/** outer(inner(z)) by Horner's scheme. */
	friend Poly compose(const Poly &outer, const Poly &inner)
	{
		Poly r;
		for (auto it = outer.c_.rbegin(); it != outer.c_.rend(); ++it)
			r = r * inner + Poly::constant(*it);
		return r;
	}

	bool has_rational_coeffs() const
	{
		return std::all_of(c_.begin(), c_.end(), [](const GRat &x) { return x.is_real(); });
	}

	std::string to_string(const char *var = "z") const
	{
		if (is_zero())
			return "0";
		std::string s;
		for (int k = degree(); k >= 0; --k)
		{
			const GRat &a = c_[static_cast<size_t>(k)];
			if (a.is_zero())
				continue;
			std::string coef = a.to_string();
			bool complex_coef = !a.is_real();
			if (complex_coef)
				coef = "(" + coef + ")";
			if (!s.empty())
			{
				if (!complex_coef && coef.front() == '-')
				{
					s += " - ";
					coef.erase(coef.begin());
				}
				else
					s += " + ";
			}
			std::string mono = k == 0 ? "" : (k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k));
			if (k == 0)
				s += coef;
			else if (coef == "1")
				s += mono;
			else if (coef == "-1")
				s += "-" + mono;
			else
				s += coef + "*" + mono;
		}
		return s;
	}

  private:
	void trim()
	{
		while (!c_.empty() && c_.back().is_zero())
			c_.pop_back();
	}

	std::vector<GRat> c_;
};

/** Monic gcd over Q(i); gcd(0, 0) = 0. */
inline Poly gcd(Poly a, Poly b)
{
	while (!b.is_zero())
	{
		Poly r = a % b;
		a = std::move(b);
		b = r.monic();
	}
	return a.monic();
}

inline Poly squarefree_part(const Poly &p)
{
	if (p.degree() <= 0)
		return p.monic();
	return (p / gcd(p, p.derivative())).monic();
}

/** Chebyshev polynomial of the first kind, T_{n+1} = 2z T_n - T_{n-1}. */
inline Poly chebyshev(int n)
{
	if (n < 0)
		throw Error(ErrorKind::OutOfRange, "negative Chebyshev index");
	Poly prev = Poly::constant(GRat(1));
	if (n == 0)
		return prev;
	Poly cur = Poly::z();
	Poly two_z = Poly::monomial(1, GRat(2));
	for (int k = 1; k < n; ++k)
	{
		Poly next = two_z * cur - prev;
		prev = std::move(cur);
		cur = std::move(next);
	}
	return cur;
}

inline std::vector<int> divisors(int n)
{
	std::vector<int> d;
	for (int k = 1; k <= n; ++k)
		if (n % k == 0)
			d.push_back(k);
	return d;
}

inline int totient(int n)
{
	int count = 0;
	for (int k = 1; k <= n; ++k)
		if (std::gcd(k, n) == 1)
			++count;
	return count;
}

/** Phi_n as (z^n - 1) / prod_{d | n, d < n} Phi_d, memoised. */
inline Poly cyclotomic(int n)
{
	if (n < 1)
		throw Error(ErrorKind::OutOfRange, "cyclotomic index must be positive");
	static std::mutex mutex;
	static std::map<int, Poly> cache;
	{
		std::lock_guard<std::mutex> lock(mutex);
		if (auto it = cache.find(n); it != cache.end())
			return it->second;
	}
	Poly num = Poly::monomial(n) - Poly::constant(GRat(1));
	for (int d : divisors(n))
		if (d < n)
			num = num / cyclotomic(d);
	std::lock_guard<std::mutex> lock(mutex);
	cache.emplace(n, num);
	return num;
}

/**
 * g(z) = sum_{k<m} digits[k](base(z)) z^k with m = deg(base). Digits are
 * built by iterated division of g by base.
 */
struct FAdicExpansion
{
	Poly base;
	std::vector<Poly> digits;

	Poly reassemble() const
	{
		Poly r;
		for (size_t k = 0; k < digits.size(); ++k)
			r += compose(digits[k], base) * Poly::monomial(static_cast<int>(k));
		return r;
	}
};

inline FAdicExpansion f_adic_expand(const Poly &g, const Poly &f)
{
	if (f.degree() < 1)
		throw Error(ErrorKind::InvalidBase, "f-adic base must be nonconstant");
	size_t m = static_cast<size_t>(f.degree());
	std::vector<std::vector<GRat>> digit_coeffs(m);
	Poly rest = g;
	for (size_t power = 0; !rest.is_zero(); ++power)
	{
		auto [q, r] = divmod(rest, f);
		for (size_t k = 0; k < m; ++k)
		{
			auto &d = digit_coeffs[k];
			d.resize(power + 1);
			d[power] = r[static_cast<int>(k)];
		}
		rest = std::move(q);
	}
	FAdicExpansion e{f, {}};
	e.digits.reserve(m);
	for (auto &d : digit_coeffs)
		e.digits.emplace_back(std::move(d));
	return e;
}

/**
 * Power sums s_0..s_{count-1} of the roots of h(z) - w via Newton's
 * identities on the monic normalisation. Only indices below deg(h) are
 * independent of w, so larger counts are refused.
 */
inline std::vector<GRat> power_sums(const Poly &h, int count)
{
	int d = h.degree();
	if (d < 1)
		throw Error(ErrorKind::InvalidBase, "power sums need a nonconstant polynomial");
	if (count > d || count < 0)
		throw Error(ErrorKind::OutOfRange, "power sums s_k for k >= deg(h) depend on w");
	Poly monic = h.monic();
	// e-coefficients c_{d-1}, ..., c_1; c_0 carries w and is never touched
	std::vector<GRat> s(static_cast<size_t>(count));
	if (count > 0)
		s[0] = GRat(d);
	for (int k = 1; k < count; ++k)
	{
		GRat acc = GRat(k) * monic[d - k];
		for (int j = 1; j < k; ++j)
			acc += monic[d - j] * s[static_cast<size_t>(k - j)];
		s[static_cast<size_t>(k)] = -acc;
	}
	return s;
}

} // namespace zc
