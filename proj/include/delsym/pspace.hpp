#pragma once

#include <cstddef>
#include <span>

#include "delsym/structures.hpp"

namespace delsym {

class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckStats {
  /// Deepest nesting of recursive calls.
  std::size_t depth = 0;
  /// Candidate valuations visited by the knowledge cases.
  std::size_t valuations = 0;
  /// Decision-diagram nodes allocated during the call.
  std::size_t peak_nodes = 0;
};

struct CheckOptions {
  /// Worker threads for the outermost knowledge case.
  unsigned jobs = 1;
  /// Visit candidate valuations in decreasing instead of increasing order.
  bool reverse = false;
};

/// Truth of phi at s in the structure after announcing the formulas of
/// `announcements` in order. Announcements stay formulas; no diagram is built.
bool check(const KnowledgeStructure& f, std::span<const Formula> announcements, const State& s, const Formula& phi,
           CheckStats* stats = nullptr, const CheckOptions& options = {});

/// Truth of phi after executing the events of `events` in order at s.
/// Announcements met along the way are run as events without event atoms.
bool check_delk(const BeliefStructure& f, std::span<const Event> events, const State& s, const Formula& phi,
                CheckStats* stats = nullptr, const CheckOptions& options = {});

enum class Algorithm { pspace, bdd, naive };

struct CheckResult {
  bool value = false;
  CheckStats stats;
};

/// Dispatches to the chosen algorithm. Knowledge structures meeting an event
/// modality are embedded into belief structures for the pspace algorithm.
CheckResult model_check(const Model& model, const State& s, const Formula& phi, Algorithm algo,
                        const CheckOptions& options = {});

}  // namespace delsym
