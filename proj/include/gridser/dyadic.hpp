#pragma once

#include <algorithm>
#include <cmath>
#include <compare>

#include "gridser/common.hpp"

namespace gridser {

// Exact dyadic rational num / 2^exp with exp >= 0, kept normalized
// (num odd, or num == 0 with exp == 0). Addition, subtraction and
// comparison are exact; grid offsets and Voronoi bounds stay inside
// this type so the lattice lemma checks never touch floating point.
struct Dyadic {
	index_t num = 0;
	int exp = 0;

	static Dyadic make(index_t n, int e) {
		while (e > 0 && n != 0 && (n & 1) == 0) {
			n >>= 1;
			--e;
		}
		if (n == 0) e = 0;
		return {n, e};
	}
	static Dyadic integer(index_t n) { return {n, 0}; }
	static Dyadic pow2(int k) {
		return k >= 0 ? Dyadic{index_t(1) << k, 0} : Dyadic{1, -k};
	}

	friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
		int e = std::max(a.exp, b.exp);
		return make((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
	}
	friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
		int e = std::max(a.exp, b.exp);
		return make((a.num << (e - a.exp)) - (b.num << (e - b.exp)), e);
	}
	Dyadic operator-() const { return {-num, exp}; }
	friend Dyadic operator*(const Dyadic& a, index_t m) { return make(a.num * m, a.exp); }

	friend bool operator==(const Dyadic& a, const Dyadic& b) {
		return a.num == b.num && a.exp == b.exp;
	}
	friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
		int e = std::max(a.exp, b.exp);
		return (a.num << (e - a.exp)) <=> (b.num << (e - b.exp));
	}

	double to_double() const { return std::ldexp(static_cast<double>(num), -exp); }
};

}  // namespace gridser
