#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outerspace/graph.hpp"

namespace outerspace {

/// Word in generators x_0..x_{n-1} and their inverses.
using Word = std::vector<Letter>;

inline Letter generator(int index) { return Letter(index, false); }

/// a..z for generators, A..Z for inverses.
std::string format_word(std::span<const Letter> word);

/// Letters only, whitespace ignored. `offset` shifts reported error positions.
Word parse_word(std::string_view text, std::size_t offset = 0);

Word concat(std::span<const Letter> a, std::span<const Letter> b);

/// Returns c with c^{-1} w_i c freely equal to x_i for every i, if one exists.
/// Such c witnesses that the words are the images of an inner automorphism.
std::optional<Word> common_conjugator(std::span<const Word> words);

/// Given images w_i = h(x_i) of a basis map h: F_n -> F_n, returns words u_j
/// with h(u_j) = x_j, or nothing when h is not an automorphism. Computed by
/// Stallings folding of the wedge of the w_i while tracking, on every edge, a
/// preimage word.
std::optional<std::vector<Word>> invert_basis(int rank, std::span<const Word> images);

/// Automorphism of F_n given by the images of the generators. Composition
/// compose(phi, psi) is x ↦ phi(psi(x)), so that the right action satisfies
/// (x·phi)·psi = x·compose(phi, psi).
class Automorphism {
 public:
  Automorphism() = default;

  /// Reduces images; throws DomainError on a rank or alphabet mismatch.
  /// Invertibility is checked separately (see inverse()).
  Automorphism(int rank, std::vector<Word> images);

  static Automorphism identity(int rank);

  /// Grammar: `gen -> word (';' | newline) ...`, lowercase generators,
  /// uppercase inverses, whitespace ignored. The rank is one more than the
  /// largest generator mentioned; unlisted generators map to themselves.
  /// Throws ParseError with the offending position.
  static Automorphism parse(std::string_view text);

  int rank() const { return rank_; }
  const Word& image(int generator_index) const {
    return images_.at(static_cast<std::size_t>(generator_index));
  }
  const std::vector<Word>& images() const { return images_; }

  /// Reduced image of a word.
  Word apply(std::span<const Letter> word) const;

  /// Throws MarkingIntegrityError when the images do not form a basis.
  Automorphism inverse() const;

  bool is_invertible() const;

  /// "a->ab; b->bab"
  std::string to_string() const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  int rank_ = 0;
  std::vector<Word> images_;
};

/// x ↦ phi(psi(x)).
Automorphism compose(const Automorphism& phi, const Automorphism& psi);

Automorphism power(const Automorphism& phi, int k);

/// True iff phi is inner, i.e. trivial in Out(F_n).
bool is_inner(const Automorphism& phi);

/// Least k ≤ cap with phi^k inner, computed on words. Gives up once the
/// images of a power exceed `max_letters` letters in total, which happens
/// quickly for elements of infinite order.
std::optional<int> outer_order(const Automorphism& phi, int cap = 1000, std::size_t max_letters = 100000);

}  // namespace outerspace
