#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridser {

using index_t = std::int64_t;

// Error categories. The CLI maps each one to a distinct exit code.
struct io_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct invalid_input : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};
// Raised when an internal structural invariant fails; indicates a bug.
struct internal_error : std::logic_error {
	using std::logic_error::logic_error;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
	return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

struct IndexVectorHash {
	std::size_t operator()(const std::vector<index_t>& v) const {
		std::size_t h = 0xcbf29ce484222325ULL;
		for (index_t x : v) h = hash_combine(h, static_cast<std::size_t>(x));
		return h;
	}
};

// Shortest decimal representation that round-trips; "inf" for infinities.
std::string format_double(double x);
double parse_double(const std::string& tok, const std::string& what);
index_t parse_index(const std::string& tok, const std::string& what);

}  // namespace gridser
