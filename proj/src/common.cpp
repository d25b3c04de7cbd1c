#include "gridser/common.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace gridser {

std::string format_double(double x) {
	if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
	char buf[64];
	auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
	return std::string(buf, p);
}

double parse_double(const std::string& tok, const std::string& what) {
	if (tok == "inf") return std::numeric_limits<double>::infinity();
	if (tok == "-inf") return -std::numeric_limits<double>::infinity();
	double value = 0;
	auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
	if (ec != std::errc() || p != tok.data() + tok.size())
		throw invalid_input("not a number: '" + tok + "' (" + what + ")");
	return value;
}

index_t parse_index(const std::string& tok, const std::string& what) {
	index_t value = 0;
	auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
	if (ec != std::errc() || p != tok.data() + tok.size())
		throw invalid_input("not an integer: '" + tok + "' (" + what + ")");
	return value;
}

}  // namespace gridser
