#pragma once

#include <string>
#include <vector>

#include "polyadic/io.hpp"

namespace polyadic {

// Named check suites. Each takes concrete inputs and returns a Report
// with one named check per verified fact.

Report suite_dornte(const std::vector<PolyadicGroup>& samples);
Report suite_hg_roundtrip(const std::vector<PolyadicGroup>& samples);
Report suite_post_cover(const std::vector<PolyadicGroup>& samples);
Report suite_hom_equivalence(const std::vector<PolyadicGroup>& samples);
Report suite_congruence_quotient(const std::vector<PolyadicGroup>& samples);
// Same checks, but over the supplied congruences (per sample); an empty
// congruence list means "enumerate them all".
Report suite_congruence_quotient_with(
    const std::vector<std::pair<PolyadicGroup, std::vector<Congruence>>>&
        samples);
Report suite_limit_retract(const InverseSystem& S, int thread_count);
Report suite_der_commute(const InverseSystem& S);
Report suite_reconstruct(const std::vector<PolyadicGroup>& samples);
Report suite_pro_x(const InverseSystem& S, const std::string& cls);
Report suite_poln_closure(const std::string& cls,
                          const std::vector<PolyadicGroup>& samples);

// Single-file verification used by the verify command: axioms, skew,
// cancellation identities, reducibility.
Report verify_report(const PolyadicGroup& P);
Report verify_table_report(const NAryTable& table);

const std::vector<std::string>& suite_names();

}  // namespace polyadic
