#pragma once

#include "zerocycle/error.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace zc {

/**
 * Permutation of {0, ..., m-1}. Stored 0-based; every external surface
 * (JSON, text) shows images 1-based.
 */
class Permutation
{
  public:
	Permutation() = default;
	explicit Permutation(std::vector<int> images) : p_(std::move(images)) {}

	static Permutation identity(int m)
	{
		std::vector<int> p(static_cast<size_t>(m));
		std::iota(p.begin(), p.end(), 0);
		return Permutation(std::move(p));
	}
	/** i -> i+1 mod m, the cycle (1 2 ... m). */
	static Permutation shift(int m)
	{
		std::vector<int> p(static_cast<size_t>(m));
		for (int i = 0; i < m; ++i)
			p[static_cast<size_t>(i)] = (i + 1) % m;
		return Permutation(std::move(p));
	}
	/** From 1-based images; throws InvalidInput if not a bijection. */
	static Permutation from_one_based(const std::vector<int> &images)
	{
		std::vector<int> p;
		for (int x : images)
			p.push_back(x - 1);
		Permutation r(std::move(p));
		if (!r.valid())
			throw Error(ErrorKind::InvalidInput, "images do not form a permutation");
		return r;
	}

	int degree() const { return static_cast<int>(p_.size()); }
	int operator()(int i) const { return p_[static_cast<size_t>(i)]; }
	const std::vector<int> &images() const { return p_; }

	std::vector<int> one_based() const
	{
		std::vector<int> r;
		for (int x : p_)
			r.push_back(x + 1);
		return r;
	}

	bool valid() const
	{
		std::vector<bool> seen(p_.size(), false);
		for (int x : p_)
		{
			if (x < 0 || x >= degree() || seen[static_cast<size_t>(x)])
				return false;
			seen[static_cast<size_t>(x)] = true;
		}
		return true;
	}

	bool is_identity() const
	{
		for (int i = 0; i < degree(); ++i)
			if (p_[static_cast<size_t>(i)] != i)
				return false;
		return true;
	}

	Permutation inverse() const
	{
		std::vector<int> q(p_.size());
		for (int i = 0; i < degree(); ++i)
			q[static_cast<size_t>(p_[static_cast<size_t>(i)])] = i;
		return Permutation(std::move(q));
	}

	/** (a * b)(i) = a(b(i)): apply b first. */
	friend Permutation operator*(const Permutation &a, const Permutation &b)
	{
		std::vector<int> r(b.p_.size());
		for (size_t i = 0; i < r.size(); ++i)
			r[i] = a.p_[static_cast<size_t>(b.p_[i])];
		return Permutation(std::move(r));
	}

	friend bool operator==(const Permutation &a, const Permutation &b) { return a.p_ == b.p_; }
	friend bool operator!=(const Permutation &a, const Permutation &b) { return a.p_ != b.p_; }
	friend bool operator<(const Permutation &a, const Permutation &b) { return a.p_ < b.p_; }

	/** Cycle notation with 1-based points, fixed points omitted. */
	std::string cycles() const
	{
		std::string s;
		std::vector<bool> seen(p_.size(), false);
		for (int i = 0; i < degree(); ++i)
		{
			if (seen[static_cast<size_t>(i)] || p_[static_cast<size_t>(i)] == i)
				continue;
			s += "(";
			for (int j = i; !seen[static_cast<size_t>(j)]; j = p_[static_cast<size_t>(j)])
			{
				seen[static_cast<size_t>(j)] = true;
				if (s.back() != '(')
					s += " ";
				s += std::to_string(j + 1);
			}
			s += ")";
		}
		return s.empty() ? "()" : s;
	}

  private:
	std::vector<int> p_;
};

struct PermHash
{
	size_t operator()(const Permutation &p) const
	{
		uint64_t h = 1469598103934665603ull;
		for (int x : p.images())
		{
			h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
			h *= 1099511628211ull;
		}
		return static_cast<size_t>(h);
	}
};

/** Partition into equal cells; cells sorted internally and by smallest element. */
struct BlockSystem
{
	std::vector<std::vector<int>> blocks;

	int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].size()); }

	/** Index of the cell holding each point. */
	std::vector<int> cell_of(int m) const
	{
		std::vector<int> c(static_cast<size_t>(m), -1);
		for (size_t k = 0; k < blocks.size(); ++k)
			for (int x : blocks[k])
				c[static_cast<size_t>(x)] = static_cast<int>(k);
		return c;
	}

	bool invariant_under(const Permutation &g) const
	{
		auto cell = cell_of(g.degree());
		for (auto &b : blocks)
		{
			int target = cell[static_cast<size_t>(g(b[0]))];
			for (int x : b)
				if (cell[static_cast<size_t>(g(x))] != target)
					return false;
		}
		return true;
	}

	friend bool operator==(const BlockSystem &a, const BlockSystem &b) { return a.blocks == b.blocks; }
	friend bool operator<(const BlockSystem &a, const BlockSystem &b)
	{
		if (a.block_size() != b.block_size())
			return a.block_size() < b.block_size();
		return a.blocks < b.blocks;
	}
};

namespace detail {

struct UnionFind
{
	std::vector<int> parent;
	explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
	int find(int x)
	{
		while (parent[static_cast<size_t>(x)] != x)
			x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
		return x;
	}
	bool unite(int a, int b)
	{
		a = find(a);
		b = find(b);
		if (a == b)
			return false;
		if (b < a)
			std::swap(a, b);
		parent[static_cast<size_t>(b)] = a;
		return true;
	}
};

inline BlockSystem partition_from(detail::UnionFind &uf, int m)
{
	std::vector<std::vector<int>> cells(static_cast<size_t>(m));
	for (int i = 0; i < m; ++i)
		cells[static_cast<size_t>(uf.find(i))].push_back(i);
	BlockSystem s;
	for (auto &c : cells)
		if (!c.empty())
			s.blocks.push_back(std::move(c));
	std::sort(s.blocks.begin(), s.blocks.end());
	return s;
}

} // namespace detail

inline constexpr size_t default_element_cap = 2000000;

class PermGroup
{
  public:
	PermGroup(int degree, std::vector<Permutation> generators, size_t element_cap = default_element_cap)
	    : m_(degree), gens_(std::move(generators)), cap_(element_cap)
	{
		for (auto &g : gens_)
			if (g.degree() != m_ || !g.valid())
				throw Error(ErrorKind::InvalidInput, "generator is not a permutation of the group's points");
		if (gens_.empty())
			gens_.push_back(Permutation::identity(m_));
	}

	int degree() const { return m_; }
	const std::vector<Permutation> &generators() const { return gens_; }
	size_t element_cap() const { return cap_; }

	std::vector<int> orbit(int point) const
	{
		std::vector<bool> seen(static_cast<size_t>(m_), false);
		std::vector<int> out{point};
		seen[static_cast<size_t>(point)] = true;
		for (size_t k = 0; k < out.size(); ++k)
			for (auto &g : gens_)
			{
				int y = g(out[k]);
				if (!seen[static_cast<size_t>(y)])
				{
					seen[static_cast<size_t>(y)] = true;
					out.push_back(y);
				}
			}
		std::sort(out.begin(), out.end());
		return out;
	}

	bool is_transitive() const { return m_ <= 1 || static_cast<int>(orbit(0).size()) == m_; }

	/** Single orbit on ordered pairs of distinct points (flood fill, no closure). */
	bool is_two_transitive() const
	{
		if (m_ < 2)
			return false;
		auto idx = [this](int a, int b) { return static_cast<size_t>(a * m_ + b); };
		std::vector<bool> seen(static_cast<size_t>(m_ * m_), false);
		std::vector<std::pair<int, int>> stack{{0, 1}};
		seen[idx(0, 1)] = true;
		size_t count = 1;
		while (!stack.empty())
		{
			auto [a, b] = stack.back();
			stack.pop_back();
			for (auto &g : gens_)
			{
				int x = g(a), y = g(b);
				if (!seen[idx(x, y)])
				{
					seen[idx(x, y)] = true;
					++count;
					stack.push_back({x, y});
				}
			}
		}
		return count == static_cast<size_t>(m_ * (m_ - 1));
	}

	/** Finest block system in which a and b share a cell. */
	BlockSystem minimal_block_system(int a, int b) const
	{
		detail::UnionFind uf(m_);
		std::deque<std::pair<int, int>> queue;
		if (uf.unite(a, b))
			queue.push_back({a, b});
		while (!queue.empty())
		{
			auto [x, y] = queue.front();
			queue.pop_front();
			for (auto &g : gens_)
			{
				int gx = uf.find(g(x)), gy = uf.find(g(y));
				if (gx != gy)
				{
					uf.unite(gx, gy);
					queue.push_back({gx, gy});
				}
			}
		}
		return detail::partition_from(uf, m_);
	}

	/**
	 * All nontrivial block systems: the minimal ones seeded by {0, k} closed
	 * under joins, sorted by block size and then lexicographically.
	 */
	std::vector<BlockSystem> block_systems() const
	{
		if (!is_transitive())
			throw Error(ErrorKind::NotTransitive, "block systems need a transitive action");
		auto nontrivial = [this](const BlockSystem &s) { return s.block_size() > 1 && s.block_size() < m_; };
		std::vector<BlockSystem> found;
		auto insert = [&](BlockSystem s) {
			if (!nontrivial(s) || std::find(found.begin(), found.end(), s) != found.end())
				return false;
			found.push_back(std::move(s));
			return true;
		};
		for (int k = 1; k < m_; ++k)
			insert(minimal_block_system(0, k));
		for (bool grew = true; grew;)
		{
			grew = false;
			size_t n = found.size();
			for (size_t i = 0; i < n; ++i)
				for (size_t j = i + 1; j < n; ++j)
					grew |= insert(join(found[i], found[j]));
		}
		std::sort(found.begin(), found.end());
		return found;
	}

	/** Breadth-first closure; CapExceeded past the element cap. */
	std::vector<Permutation> elements() const
	{
		std::unordered_set<Permutation, PermHash> seen;
		std::vector<Permutation> out{Permutation::identity(m_)};
		seen.insert(out[0]);
		for (size_t k = 0; k < out.size(); ++k)
			for (auto &g : gens_)
			{
				Permutation p = out[k] * g;
				if (seen.insert(p).second)
				{
					if (seen.size() > cap_)
						throw Error(ErrorKind::CapExceeded,
						            "group closure exceeds " + std::to_string(cap_) + " elements");
					out.push_back(std::move(p));
				}
			}
		std::sort(out.begin(), out.end());
		return out;
	}

	size_t order() const { return elements().size(); }

	/** Normal closure of `gens` in this group, as a group. */
	PermGroup normal_closure(const std::vector<Permutation> &seeds) const
	{
		std::vector<Permutation> ngens = seeds;
		if (ngens.empty())
			ngens.push_back(Permutation::identity(m_));
		for (;;)
		{
			PermGroup n(m_, ngens, cap_);
			auto elems = n.elements();
			std::unordered_set<Permutation, PermHash> members(elems.begin(), elems.end());
			bool grew = false;
			size_t count = ngens.size();
			for (size_t k = 0; k < count; ++k)
				for (auto &g : gens_)
				{
					Permutation c = g * ngens[k] * g.inverse();
					if (!members.count(c))
					{
						ngens.push_back(c);
						grew = true;
						break;
					}
				}
			if (!grew)
				return n;
		}
	}

  private:
	static BlockSystem join(const BlockSystem &a, const BlockSystem &b)
	{
		int m = 0;
		for (auto &c : a.blocks)
			m += static_cast<int>(c.size());
		detail::UnionFind uf(m);
		for (auto *s : {&a, &b})
			for (auto &c : s->blocks)
				for (int x : c)
					uf.unite(c[0], x);
		return detail::partition_from(uf, m);
	}

	int m_;
	std::vector<Permutation> gens_;
	size_t cap_;
};

} // namespace zc
