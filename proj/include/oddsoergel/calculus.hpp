#pragma once

#include "oddsoergel/bimod.hpp"

#include <string>
#include <vector>

namespace osb {

// Standard objects of the two-variable calculus.
namespace objs {
Obj R();
Obj U();
Obj Rs();
Obj Us();
Obj Ind();
Obj Res();
Obj B();     // Ind (x) Res {-1}
Obj Bbar();  // Ind (x) Us (x) Res {-1}
}  // namespace objs

// Resolved morphism for a catalog identifier; throws std::invalid_argument for
// unknown names.
Morphism named(const std::string& id);
std::vector<std::string> named_ids();

// Shorthand used throughout: f (x) g and identities.
Morphism tens(const Morphism& f, const Morphism& g);
Morphism tens(const std::vector<Morphism>& fs);
Morphism id(const Obj& m);
// Composite of maps listed in the order they are applied.
Morphism chain(const std::vector<Morphism>& fs);

struct RelationReport {
  std::string name;
  std::string lhs, rhs;
  bool pass = false;
  std::string witness;  // first failing entry, empty on success
};

// Compares two maps for exact equality.
RelationReport compare(const std::string& name, const std::string& lhs_desc, const Morphism& lhs,
                       const std::string& rhs_desc, const Morphism& rhs);

std::vector<RelationReport> relation_suite(int workers = 1);
std::string relation_suite_json(const std::vector<RelationReport>& reps);
std::string relation_suite_table(const std::vector<RelationReport>& reps);

struct BBIdempotents {
  Morphism e_first, e_second;
};
BBIdempotents idempotents_BB();

}  // namespace osb
