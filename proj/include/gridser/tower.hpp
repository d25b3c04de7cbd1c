#pragma once

#include <iosfwd>
#include <limits>
#include <set>
#include <variant>

#include "gridser/spans.hpp"

namespace gridser {

struct ScaleEvent {
	double alpha = 0;
	int s = 0;
};

// A new simplex, specified by the ids of its member 0-simplices after
// the current scale's contractions; for dim 0 the list is the id itself.
// `flag` carries the defining chain of faces when built in-process and
// is empty on streams parsed from text.
struct IncludeEvent {
	index_t id = -1;
	int dim = 0;
	std::vector<index_t> boundary;
	Flag flag;
};

// 0-simplices kept < removed are identified from this scale on.
struct ContractEvent {
	index_t kept = -1;
	index_t removed = -1;
};

using TowerEvent = std::variant<ScaleEvent, IncludeEvent, ContractEvent>;

struct StreamHeader {
	double lambda = 0;
	std::uint64_t seed = 0;
	int dim = 0;
	int max_dim = 0;
	int s_min = 0;
	int s_max = 0;
	std::vector<std::vector<int>> shifts;
};

struct EventStream {
	StreamHeader header;
	std::vector<TowerEvent> events;
};

struct ScaleStats {
	int s = 0;
	double alpha = 0;
	index_t contractions = 0;
	std::vector<index_t> includes_by_dim;
};

struct TowerStats {
	std::vector<ScaleStats> scales;  // scales at which events were emitted
	index_t total_includes = 0;      // tower size M
	index_t zero_simplex_includes = 0;
	index_t total_contractions = 0;
	// (dim at inclusion, transitions until the face image is a vertex)
	std::vector<std::pair<int, int>> face_lifetimes;
	index_t censored_faces = 0;  // included faces of dim >= 1 still uncollapsed at the top

	double mean_face_lifetime() const;
};

// Correspondence id -> face for the 0-simplices alive at one scale.
struct ScaleSnapshot {
	int s = 0;
	double alpha = 0;
	std::vector<std::pair<index_t, LatticeFace>> zero_simplices;
};

struct TowerOptions {
	int max_dim = 2;
	bool record_snapshots = false;
};

struct Tower {
	EventStream stream;
	TowerStats stats;
	std::vector<ScaleSnapshot> snapshots;
};

// Scale-by-scale construction of the approximation tower as an event
// stream. At each transition contractions are emitted first (minimal id
// kept), then new 0-simplices found through vertex cofaces, then higher
// simplices by inductive flag extension from the new 0-simplices.
// Scale events appear only when followed by at least one event.
Tower build_tower(const PointCloud& cloud, const LatticeHierarchy& h,
                  const TowerOptions& options = {});

void write_events(std::ostream& out, const EventStream& stream);
EventStream read_events(std::istream& in);

constexpr double kReplayAll = std::numeric_limits<double>::infinity();

// Complex reached by applying the stream's events in order.
struct ReplayComplex {
	std::set<std::vector<index_t>> simplices;  // sorted member ids, post-aliasing
	std::set<index_t> alive;                   // live 0-simplex ids
	std::unordered_map<index_t, index_t> merged_into;
	double last_scale = -std::numeric_limits<double>::infinity();

	index_t resolve(index_t id) const;
};

// Applies events at scales <= upto; idempotent. Malformed streams
// (unknown id, double contraction, missing subsimplex, ...) raise
// invalid_input naming the offending event index.
ReplayComplex replay(const std::vector<TowerEvent>& events, double upto = kReplayAll);
ReplayComplex replay(const EventStream& stream, double upto = kReplayAll);

}  // namespace gridser
