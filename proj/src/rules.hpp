#pragma once

// Claim text and citations shared by the prover and the checker. Claims are
// rendered from witness data only, so a step's claim is a function of its
// witness.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace galcert::rules {

using Witness = std::vector<std::pair<std::string, std::string>>;

std::string render_claim(const std::string& rule, const Witness& w);
std::string citation(const std::string& rule);

std::string join(const std::vector<int>& xs);                    // "6,12" or "-"
std::string join(const std::set<std::int64_t>& xs);              // "2,3" or "-"
std::vector<int> split_ints(const std::string& text);            // inverse of join
std::string branch_label(const std::set<std::int64_t>& ramified);  // "ramified:2" / "ramified:-"

}  // namespace galcert::rules
