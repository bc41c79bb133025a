#pragma once

// Per-group memoization of the structure computations (element table,
// classes, lattice, maximal representatives, automorphisms).  A context is
// the working handle the deciders take; results are computed once and
// shared through the group's lifetime.

#include <memory>
#include <optional>

#include "automorphisms.hpp"
#include "conjugacy.hpp"
#include "subgroups.hpp"

namespace invgen {

struct Budgets {
  uint64_t element_cap = kDefaultElementCap;
  uint64_t lattice = kDefaultLatticeBudget;
  uint64_t aut = kDefaultAutBudget;
  uint64_t tuples = kDefaultTupleBudget;
};

class GroupContext {
public:
  explicit GroupContext(PermGroup g, Budgets b = {})
      : group_(std::move(g)), budgets_(b) {}

  const PermGroup &group() const { return group_; }
  const Budgets &budgets() const { return budgets_; }

  const ElementTable &elements() { return group_.elements(budgets_.element_cap); }

  const ConjClassTable &classes() {
    if (!classes_) classes_ = conjugacy_classes(group_, budgets_.element_cap);
    return *classes_;
  }

  const SubgroupLattice &lattice() {
    if (!lattice_) lattice_ = all_subgroups(group_, budgets_.lattice);
    return *lattice_;
  }

  // Maximal subgroup class representatives, descending order then mask.
  const std::vector<uint32_t> &maximal_reps() {
    if (!maximal_reps_) maximal_reps_ = maximal_class_representatives(lattice());
    return *maximal_reps_;
  }

  const AutGroup &aut() {
    if (!aut_) aut_ = automorphism_group(group_, budgets_.aut);
    return *aut_;
  }

  const ClassAction &aut_class_action() {
    if (!class_action_) class_action_ = class_action(aut(), classes());
    return *class_action_;
  }

private:
  PermGroup group_;
  Budgets budgets_;
  std::optional<ConjClassTable> classes_;
  std::optional<SubgroupLattice> lattice_;
  std::optional<std::vector<uint32_t>> maximal_reps_;
  std::optional<AutGroup> aut_;
  std::optional<ClassAction> class_action_;
};

} // namespace invgen
