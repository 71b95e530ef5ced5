#include <algorithm>
#include <cctype>

#include "outerspace/automorphism.hpp"
#include "outerspace/errors.hpp"

namespace outerspace {

std::string format_word(std::span<const Letter> word) {
  std::string out;
  out.reserve(word.size());
  for (Letter l : word) {
    const char base = l.reversed() ? 'A' : 'a';
    out += static_cast<char>(base + l.edge());
  }
  return out;
}

Word parse_word(std::string_view text, std::size_t offset) {
  Word out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c) != 0) continue;
    if (std::islower(c) != 0) {
      out.push_back(Letter(c - 'a', false));
    } else if (std::isupper(c) != 0) {
      out.push_back(Letter(c - 'A', true));
    } else {
      throw ParseError(std::string("unexpected character '") + text[i] + "' in word", offset + i);
    }
  }
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::optional<Word> common_conjugator(std::span<const Word> words) {
  if (words.empty()) return Word{};
  // w_0 = d x_0 d^{-1} pins down c up to a power of x_0.
  const Word w0 = free_reduce(words[0]);
  if (w0.size() % 2 == 0) return std::nullopt;
  const std::size_t m = w0.size() / 2;
  if (w0[m] != generator(0)) return std::nullopt;
  for (std::size_t k = 0; k < m; ++k) {
    if (w0[k] != w0[w0.size() - 1 - k].inverse()) return std::nullopt;
  }
  Word c(w0.begin(), w0.begin() + static_cast<std::ptrdiff_t>(m));

  if (words.size() > 1) {
    const Word u = free_reduce(concat(concat(inverse_word(c), words[1]), c));
    // u must read s^p x_1 s^{-p} with s = x_0^{±1}.
    if (u.size() % 2 == 0) return std::nullopt;
    const std::size_t p = u.size() / 2;
    if (u[p] != generator(1)) return std::nullopt;
    if (p > 0) {
      const Letter s = u[0];
      if (s.edge() != 0) return std::nullopt;
      for (std::size_t k = 0; k < p; ++k) {
        if (u[k] != s || u[u.size() - 1 - k] != s.inverse()) return std::nullopt;
      }
      c.insert(c.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p));
      c = free_reduce(c);
    }
  }

  const Word c_inv = inverse_word(c);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word conj = free_reduce(concat(concat(c_inv, words[i]), c));
    if (conj.size() != 1 || conj[0] != generator(static_cast<int>(i))) return std::nullopt;
  }
  return c;
}

namespace {

struct FoldEdge {
  int from = 0;
  int to = 0;
  int label = 0;
  Word xword;  // preimage word read along from -> to
  bool alive = true;
};

// View of an edge from one of its endpoints: far end, and the preimage word
// of the path leaving `at` along the edge.
struct EdgeView {
  int far = 0;
  Word word;
};

EdgeView view_from(const FoldEdge& e, bool outgoing) {
  if (outgoing) return EdgeView{e.to, e.xword};
  return EdgeView{e.from, inverse_word(e.xword)};
}

}  // namespace

std::optional<std::vector<Word>> invert_basis(int rank, std::span<const Word> images) {
  if (rank < 1 || static_cast<int>(images.size()) != rank) return std::nullopt;
  std::vector<FoldEdge> edges;
  int num_vertices = 1;
  for (int i = 0; i < rank; ++i) {
    const Word w = free_reduce(images[static_cast<std::size_t>(i)]);
    if (w.empty()) return std::nullopt;
    int prev = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t].edge() >= rank) return std::nullopt;
      const int next = (t + 1 == w.size()) ? 0 : num_vertices++;
      Word x = (t == 0) ? Word{generator(i)} : Word{};
      if (w[t].reversed()) {
        edges.push_back(FoldEdge{next, prev, w[t].edge(), inverse_word(x), true});
      } else {
        edges.push_back(FoldEdge{prev, next, w[t].edge(), std::move(x), true});
      }
      prev = next;
    }
  }

  std::vector<char> vertex_alive(static_cast<std::size_t>(num_vertices), 1);
  for (;;) {
    // Find two edges leaving a common vertex with the same oriented label.
    int u = -1;
    int e1 = -1;
    int e2 = -1;
    bool out1 = false;
    bool out2 = false;
    {
      std::vector<int> seen(static_cast<std::size_t>(num_vertices * rank * 2), -1);
      for (int idx = 0; idx < static_cast<int>(edges.size()) && e2 < 0; ++idx) {
        const FoldEdge& e = edges[static_cast<std::size_t>(idx)];
        if (!e.alive) continue;
        for (int outgoing = 1; outgoing >= 0 && e2 < 0; --outgoing) {
          const int at = outgoing != 0 ? e.from : e.to;
          const auto key = static_cast<std::size_t>((at * rank + e.label) * 2 + outgoing);
          if (seen[key] >= 0) {
            u = at;
            e1 = seen[key];
            e2 = idx;
            out1 = out2 = outgoing != 0;
          } else {
            seen[key] = idx;
          }
        }
      }
    }
    if (e2 < 0) break;

    EdgeView a = view_from(edges[static_cast<std::size_t>(e1)], out1);
    EdgeView b = view_from(edges[static_cast<std::size_t>(e2)], out2);
    if (a.far != b.far) {
      // Move the non-base endpoint; re-base it so both words agree.
      int keep = a.far;
      int move = b.far;
      Word x_keep = a.word;
      Word x_move = b.word;
      if (move == 0) {
        std::swap(keep, move);
        std::swap(x_keep, x_move);
      }
      const Word p = free_reduce(concat(inverse_word(x_move), x_keep));
      const Word p_inv = inverse_word(p);
      for (FoldEdge& e : edges) {
        if (!e.alive) continue;
        if (e.to == move) e.xword = free_reduce(concat(e.xword, p));
        if (e.from == move) e.xword = free_reduce(concat(p_inv, e.xword));
      }
      for (FoldEdge& e : edges) {
        if (e.from == move) e.from = keep;
        if (e.to == move) e.to = keep;
      }
      vertex_alive[static_cast<std::size_t>(move)] = 0;
      if (u == move) u = keep;
      a = view_from(edges[static_cast<std::size_t>(e1)], out1);
      b = view_from(edges[static_cast<std::size_t>(e2)], out2);
    }
    // Parallel edges with one label: an injective map forces equal words.
    if (free_reduce(a.word) != free_reduce(b.word)) return std::nullopt;
    edges[static_cast<std::size_t>(e2)].alive = false;
  }

  if (std::count(vertex_alive.begin(), vertex_alive.end(), 1) != 1) return std::nullopt;
  std::vector<Word> out(static_cast<std::size_t>(rank));
  std::vector<char> found(static_cast<std::size_t>(rank), 0);
  int alive_edges = 0;
  for (const FoldEdge& e : edges) {
    if (!e.alive) continue;
    ++alive_edges;
    found[static_cast<std::size_t>(e.label)] = 1;
    out[static_cast<std::size_t>(e.label)] = free_reduce(e.xword);
  }
  if (alive_edges != rank || std::count(found.begin(), found.end(), 1) != rank) return std::nullopt;
  return out;
}

}  // namespace outerspace
