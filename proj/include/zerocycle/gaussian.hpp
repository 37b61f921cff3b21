#pragma once

#include "zerocycle/error.hpp"

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <string>
#include <string_view>

namespace zc {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline Rational parse_rational(std::string_view text)
{
	std::string s(text);
	if (s.empty())
		throw Error(ErrorKind::InvalidInput, "empty rational");
	if (s.front() == '+')
		s.erase(s.begin());
	// accept plain decimals such as "0.25" as well as "a/b"
	auto dot = s.find('.');
	if (dot != std::string::npos)
	{
		if (s.find('/') != std::string::npos)
			throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
		std::string digits = s.substr(0, dot) + s.substr(dot + 1);
		std::string den = "1" + std::string(s.size() - dot - 1, '0');
		s = digits + "/" + den;
	}
	Rational q;
	if (q.set_str(s, 10) != 0)
		throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
	if (q.get_den() == 0)
		throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
	q.canonicalize();
	return q;
}

template <class T> T rational_to(const Rational &q)
{
	if constexpr (sizeof(T) <= sizeof(double))
		return static_cast<T>(q.get_d());
	else
	{
		// extended precision: go through a 128-bit float decimal expansion
		mpf_class f(q, 128);
		mp_exp_t exp = 0;
		std::string digits = f.get_str(exp, 10, 40);
		if (digits.empty())
			return T(0);
		bool neg = digits.front() == '-';
		if (neg)
			digits.erase(digits.begin());
		std::string text = (neg ? "-0." : "0.") + digits + "e" + std::to_string(exp);
		return static_cast<T>(std::strtold(text.c_str(), nullptr));
	}
}

} // namespace detail

/** Gaussian rational re + im*i with canonical components. */
class GRat
{
  public:
	GRat() = default;
	GRat(long v) : re_(v) {}
	GRat(int v) : re_(v) {}
	GRat(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
	GRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
	{
		re_.canonicalize();
		im_.canonicalize();
	}

	static GRat i() { return GRat(Rational(0), Rational(1)); }

	const Rational &re() const { return re_; }
	const Rational &im() const { return im_; }

	bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
	bool is_real() const { return sgn(im_) == 0; }
	bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

	GRat conj() const { return GRat(re_, -im_); }
	Rational norm() const { return re_ * re_ + im_ * im_; }

	GRat inverse() const
	{
		if (is_zero())
			throw Error(ErrorKind::InvalidInput, "division by zero");
		Rational n = norm();
		return GRat(re_ / n, -im_ / n);
	}

	GRat operator-() const { return GRat(-re_, -im_); }

	GRat &operator+=(const GRat &o)
	{
		re_ += o.re_;
		im_ += o.im_;
		return *this;
	}
	GRat &operator-=(const GRat &o)
	{
		re_ -= o.re_;
		im_ -= o.im_;
		return *this;
	}
	GRat &operator*=(const GRat &o)
	{
		if (o.is_real() && is_real())
		{
			re_ *= o.re_;
			return *this;
		}
		Rational r = re_ * o.re_ - im_ * o.im_;
		Rational s = re_ * o.im_ + im_ * o.re_;
		re_ = std::move(r);
		im_ = std::move(s);
		return *this;
	}
	GRat &operator/=(const GRat &o)
	{
		if (o.is_real())
		{
			if (sgn(o.re_) == 0)
				throw Error(ErrorKind::InvalidInput, "division by zero");
			re_ /= o.re_;
			im_ /= o.re_;
			return *this;
		}
		return *this *= o.inverse();
	}

	friend GRat operator+(GRat a, const GRat &b) { return a += b; }
	friend GRat operator-(GRat a, const GRat &b) { return a -= b; }
	friend GRat operator*(GRat a, const GRat &b) { return a *= b; }
	friend GRat operator/(GRat a, const GRat &b) { return a /= b; }
	friend bool operator==(const GRat &a, const GRat &b) { return a.re_ == b.re_ && a.im_ == b.im_; }
	friend bool operator!=(const GRat &a, const GRat &b) { return !(a == b); }

	template <class T = double> std::complex<T> to_complex() const
	{
		return {detail::rational_to<T>(re_), detail::rational_to<T>(im_)};
	}

	/** "a/b" for real values, "a/b+c/d*i" otherwise. */
	std::string to_string() const
	{
		if (is_real())
			return re_.get_str();
		std::string im = im_.get_str();
		if (sgn(re_) == 0)
			return im + "*i";
		if (im.front() != '-')
			im = "+" + im;
		return re_.get_str() + im + "*i";
	}

	static GRat parse(std::string_view text)
	{
		std::string s;
		for (char ch : text)
			if (ch != ' ')
				s.push_back(ch);
		if (s.empty())
			throw Error(ErrorKind::InvalidInput, "empty coefficient");
		bool imaginary = s.back() == 'i' || s.back() == 'I';
		if (!imaginary)
			return GRat(detail::parse_rational(s));
		s.pop_back();
		if (!s.empty() && s.back() == '*')
			s.pop_back();
		// split at the last sign that is not in leading position
		size_t split = std::string::npos;
		for (size_t k = s.size(); k-- > 1;)
			if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
			{
				split = k;
				break;
			}
		std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
		std::string im_part = split == std::string::npos ? s : s.substr(split);
		if (im_part.empty() || im_part == "+")
			im_part = "1";
		else if (im_part == "-")
			im_part = "-1";
		if (im_part.size() >= 2 && im_part[0] == '+' && im_part[1] == '-')
			im_part.erase(im_part.begin());
		return GRat(detail::parse_rational(re_part), detail::parse_rational(im_part));
	}

  private:
	Rational re_{0};
	Rational im_{0};
};

inline GRat pow(GRat base, unsigned e)
{
	GRat r(1);
	while (e)
	{
		if (e & 1u)
			r *= base;
		base *= base;
		e >>= 1u;
	}
	return r;
}

} // namespace zc
