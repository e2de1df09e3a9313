#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "migra/net.hpp"

namespace migra {

/// Set of marked places of a safe net, kept sorted. Markings of different
/// nets compare equal when they mark the same labels.
class Marking {
 public:
  Marking() = default;
  Marking(std::initializer_list<Label> labels);
  explicit Marking(std::vector<Label> labels);
  explicit Marking(const std::set<Label>& labels);

  /// Parses "p3,p6" (whitespace around labels ignored). Empty text gives {}.
  static Marking parse(std::string_view text);

  bool contains(const Label& l) const;
  bool intersects(const std::set<Label>& s) const;
  bool empty() const { return places_.empty(); }
  std::size_t size() const { return places_.size(); }
  const std::vector<Label>& places() const { return places_; }
  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }

  /// Sorted comma-joined labels, e.g. "p3,p6".
  std::string str() const;

  auto operator<=>(const Marking&) const = default;

 private:
  std::vector<Label> places_;
};

using MarkingSet = std::set<Marking>;

class UnknownPlaceError : public std::invalid_argument {
 public:
  explicit UnknownPlaceError(const Label& l) : std::invalid_argument("unknown place '" + l + "'"), label(l) {}
  Label label;
};

class NotEnabledError : public std::invalid_argument {
 public:
  explicit NotEnabledError(const Label& t) : std::invalid_argument("transition '" + t + "' is not enabled") {}
};

class StateExplosionError : public std::runtime_error {
 public:
  explicit StateExplosionError(std::size_t cap)
      : std::runtime_error("reachability exceeded the state cap of " + std::to_string(cap)), cap(cap) {}
  std::size_t cap;
};

/// Firing put a token into an already marked place.
class SafetyViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace migra

namespace migra::wfnet {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

std::set<Label> enabled_transitions(const WfNet& net, const Marking& m);

Marking fire(const WfNet& net, const Marking& m, const Label& t);

/// Breadth-first closure from {init}.
MarkingSet reachable_markings(const WfNet& net, std::size_t cap = kDefaultStateCap);

/// Behavioural soundness on the reachability graph.
struct SoundnessReport {
  bool proper_termination = true;      // {end} reachable from every state
  std::vector<Label> dead_transitions;  // never enabled
  bool ok() const { return proper_termination && dead_transitions.empty(); }
};

SoundnessReport check_soundness(const WfNet& net, std::size_t cap = kDefaultStateCap);

enum class PlaceClass { Safe, Overestimation, PerfectMember };

std::string_view to_string(PlaceClass c);

/// Ground truth for a migration pair, computed from the two state spaces.
struct OracleReport {
  MarkingSet reachable_old;
  MarkingSet reachable_new;
  MarkingSet non_migratable;  // reachable_old - reachable_new
  std::map<Label, PlaceClass> per_place;
  std::set<Label> scr;
  bool pscr_exists = false;
  std::optional<std::set<Label>> pscr;
};

OracleReport classify(const MarkingSet& old_markings, const MarkingSet& new_markings,
                      const std::vector<Label>& old_places);

OracleReport oracle_classify(const WfNet& old_net, const WfNet& new_net, std::size_t cap = kDefaultStateCap);

}  // namespace migra::wfnet
