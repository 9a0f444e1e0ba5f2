#pragma once

#include <string>
#include <vector>

#include "fockmrf/mixed_state.hpp"
#include "fockmrf/update_operator.hpp"

namespace fockmrf {

// Ordered product of per-node update pieces with identity factors absorbed.
// Order matters: (H_1, H_2) and (H_2, H_1) are distinct words.
struct InteractionWord {
  std::vector<int> pieces;  // labels into UpdateOperator::nodes, leftmost acts last
  long long coefficient = 1;

  friend bool operator==(const InteractionWord&, const InteractionWord&) = default;
};

// Expansion of (I + H_1 + ... + H_N)^k into words. I^2 = I and I H = H I = H
// collapse every placement of identity factors, so a word of length l keeps
// the purely combinatorial coefficient C(k, l). Words are sorted by length,
// then lexicographically.
std::vector<InteractionWord> expand_power(int num_pieces, int power);

// Applies the word's pieces right to left and scales by the coefficient.
MixedState evaluate_word(const InteractionWord& word, const UpdateOperator& H,
                         const MixedState& state);

// One line per word: "coeff × H_a·H_b·…"; the empty word renders as the
// identity.
std::string render_words(const std::vector<InteractionWord>& words);

}  // namespace fockmrf
