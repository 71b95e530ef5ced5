#include "outerspace/automorphism.hpp"

#include <algorithm>
#include <cctype>

#include "outerspace/errors.hpp"

namespace outerspace {

Automorphism::Automorphism(int rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
  if (rank_ < 1 || rank_ > 26) throw DomainError("automorphism rank must be in [1, 26]");
  if (static_cast<int>(images_.size()) != rank_) throw DomainError("one image per generator required");
  for (Word& w : images_) {
    for (Letter l : w) {
      if (l.edge() >= rank_) throw DomainError("image uses a generator beyond the rank");
    }
    w = free_reduce(w);
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<Word> images;
  for (int i = 0; i < rank; ++i) images.push_back(Word{generator(i)});
  return Automorphism(rank, std::move(images));
}

Automorphism Automorphism::parse(std::string_view text) {
  struct Rule {
    int generator;
    Word image;
  };
  std::vector<Rule> rules;
  int rank = 0;
  std::size_t pos = 0;
  auto skip_space = [&]() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  };
  while (pos < text.size()) {
    skip_space();
    if (pos < text.size() && (text[pos] == ';' || text[pos] == '\n')) {
      ++pos;
      continue;
    }
    if (pos >= text.size()) break;
    const auto c = static_cast<unsigned char>(text[pos]);
    if (std::islower(c) == 0) throw ParseError("expected a lowercase generator", pos);
    const int gen = c - 'a';
    ++pos;
    skip_space();
    if (text.substr(pos, 2) != "->") throw ParseError("expected '->'", pos);
    pos += 2;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ';' && text[pos] != '\n') ++pos;
    Word image = parse_word(text.substr(start, pos - start), start);
    for (const Rule& r : rules) {
      if (r.generator == gen) throw ParseError("generator defined twice", start - 2);
    }
    rank = std::max(rank, gen + 1);
    for (Letter l : image) rank = std::max(rank, l.edge() + 1);
    rules.push_back(Rule{gen, std::move(image)});
  }
  if (rules.empty()) throw ParseError("empty map", 0);
  std::vector<Word> images;
  for (int i = 0; i < rank; ++i) images.push_back(Word{generator(i)});
  for (Rule& r : rules) images[static_cast<std::size_t>(r.generator)] = std::move(r.image);
  return Automorphism(rank, std::move(images));
}

Word Automorphism::apply(std::span<const Letter> word) const {
  Word out;
  for (Letter l : word) {
    const Word& w = image(l.edge());
    if (l.reversed()) {
      const Word inv = inverse_word(w);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), w.begin(), w.end());
    }
  }
  return free_reduce(out);
}

Automorphism Automorphism::inverse() const {
  auto inv = invert_basis(rank_, images_);
  if (!inv) throw MarkingIntegrityError("map " + to_string() + " is not an automorphism");
  return Automorphism(rank_, std::move(*inv));
}

bool Automorphism::is_invertible() const { return invert_basis(rank_, images_).has_value(); }

std::string Automorphism::to_string() const {
  std::string out;
  for (int i = 0; i < rank_; ++i) {
    if (i > 0) out += "; ";
    out += static_cast<char>('a' + i);
    out += "->";
    out += format_word(image(i));
  }
  return out;
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  if (phi.rank() != psi.rank()) throw DomainError("rank mismatch in composition");
  std::vector<Word> images;
  for (int i = 0; i < psi.rank(); ++i) images.push_back(phi.apply(psi.image(i)));
  return Automorphism(psi.rank(), std::move(images));
}

Automorphism power(const Automorphism& phi, int k) {
  if (k < 0) return power(phi.inverse(), -k);
  Automorphism out = Automorphism::identity(phi.rank());
  for (int i = 0; i < k; ++i) out = compose(out, phi);
  return out;
}

bool is_inner(const Automorphism& phi) { return common_conjugator(phi.images()).has_value(); }

std::optional<int> outer_order(const Automorphism& phi, int cap, std::size_t max_letters) {
  Automorphism cur = phi;
  for (int k = 1; k <= cap; ++k) {
    if (is_inner(cur)) return k;
    std::size_t letters = 0;
    for (const Word& w : cur.images()) letters += w.size();
    if (letters > max_letters) return std::nullopt;
    cur = compose(cur, phi);
  }
  return std::nullopt;
}

}  // namespace outerspace
