#pragma once

#include <utility>
#include <vector>

#include "affind/rational.hpp"

namespace affind {

/// Generic PBW rewriting: repeatedly replaces an adjacent inversion
/// x y -> y x + [x, y] until every word is sorted, then hands the word to
/// the sink. Terminates for any total order since bracket terms are
/// strictly shorter. Shared by the enveloping-algebra engine and the
/// inducing-module frames.
template <class Elem, class LessFn, class BracketFn, class SinkFn>
void straighten_words(std::vector<std::pair<Rat, std::vector<Elem>>> work,
                      const LessFn& less, const BracketFn& bracket,
                      const SinkFn& sink) {
  while (!work.empty()) {
    auto [coeff, word] = std::move(work.back());
    work.pop_back();
    size_t inv = word.size();
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      if (less(word[i + 1], word[i])) {
        inv = i;
        break;
      }
    }
    if (inv == word.size()) {
      sink(coeff, word);
      continue;
    }
    // bracket terms first (shorter words), swap branch last
    const auto terms = bracket(word[inv], word[inv + 1]);
    for (const auto& [e, c] : terms) {
      std::vector<Elem> shorter;
      shorter.reserve(word.size() - 1);
      shorter.insert(shorter.end(), word.begin(), word.begin() + inv);
      shorter.push_back(e);
      shorter.insert(shorter.end(), word.begin() + inv + 2, word.end());
      work.emplace_back(coeff * c, std::move(shorter));
    }
    std::swap(word[inv], word[inv + 1]);
    work.emplace_back(std::move(coeff), std::move(word));
  }
}

}  // namespace affind
