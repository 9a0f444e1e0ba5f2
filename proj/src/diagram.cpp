#include "fockmrf/diagram.hpp"

#include <algorithm>

#include "fockmrf/capacity.hpp"
#include "fockmrf/combinatorics.hpp"
#include "fockmrf/errors.hpp"

namespace fockmrf {

std::vector<InteractionWord> expand_power(int num_pieces, int power) {
  if (num_pieces < 1) throw ModelError("expansion needs at least one piece");
  if (power < 0) throw ModelError("expansion power must be >= 0");
  if (power > 12)
    throw CapacityError("expansion power " + std::to_string(power) + " exceeds the guard of 12");

  BigInt count = 0;
  BigInt length_words = 1;
  for (int len = 0; len <= power; ++len) {
    count += length_words;  // num_pieces^len words of this length
    length_words *= num_pieces;
  }
  if (count > capacity_limit())
    throw CapacityError("expansion yields " + count.str() + " words, above the limit of " +
                        std::to_string(capacity_limit()));

  std::vector<InteractionWord> words;
  words.reserve(count.convert_to<std::size_t>());
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining) -> void {
    InteractionWord word;
    word.pieces = current;
    word.coefficient =
        binomial(power, static_cast<int>(current.size())).convert_to<long long>();
    words.push_back(std::move(word));
    if (remaining == 0) return;
    for (int label = 1; label <= num_pieces; ++label) {
      current.push_back(label);
      self(self, remaining - 1);
      current.pop_back();
    }
  };
  rec(rec, power);

  std::sort(words.begin(), words.end(), [](const InteractionWord& a, const InteractionWord& b) {
    if (a.pieces.size() != b.pieces.size()) return a.pieces.size() < b.pieces.size();
    return a.pieces < b.pieces;
  });
  return words;
}

MixedState evaluate_word(const InteractionWord& word, const UpdateOperator& H,
                         const MixedState& state) {
  MixedState current = state;
  for (auto it = word.pieces.rbegin(); it != word.pieces.rend(); ++it) {
    int label = *it;
    if (label < 1 || label > static_cast<int>(H.nodes.size()))
      throw IndexError("word references piece " + std::to_string(label) +
                       " but the operator has " + std::to_string(H.nodes.size()));
    current = apply_expr(H.pieces[label - 1], current);
  }
  return current.scaled(Rational(word.coefficient));
}

std::string render_words(const std::vector<InteractionWord>& words) {
  std::string out;
  for (const auto& word : words) {
    out += std::to_string(word.coefficient);
    out += " \xc3\x97 ";  // ×
    if (word.pieces.empty()) {
      out += "I";
    } else {
      for (std::size_t i = 0; i < word.pieces.size(); ++i) {
        if (i > 0) out += "\xc2\xb7";  // ·
        out += "H_" + std::to_string(word.pieces[i]);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace fockmrf
