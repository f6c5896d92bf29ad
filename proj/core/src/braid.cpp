#include "gg/braid.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "gg/errors.hpp"

namespace gg {

BraidWord::BraidWord(int strands, std::vector<int> letters) : n_(strands), letters_(std::move(letters)) {
  if (n_ < 1) throw std::invalid_argument("BraidWord: strand count must be positive");
  for (int l : letters_) {
    if (l == 0 || std::abs(l) >= n_) {
      throw std::invalid_argument("BraidWord: letter " + std::to_string(l) + " out of range for " +
                                  std::to_string(n_) + " strands");
    }
  }
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Reads an optionally signed decimal integer starting at pos; returns the end.
std::size_t read_int(std::string_view text, std::size_t pos, long long& out, const char* what) {
  std::size_t end = pos;
  if (end < text.size() && (text[end] == '-' || text[end] == '+')) ++end;
  const std::size_t digits = end;
  while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
  if (end == digits) throw ParseError(std::string("expected ") + what, pos + 1);
  const char* first = text.data() + (text[pos] == '+' ? pos + 1 : pos);
  auto [ptr, ec] = std::from_chars(first, text.data() + end, out);
  if (ec != std::errc() || ptr != text.data() + end) {
    throw ParseError(std::string(what) + " out of range", pos + 1);
  }
  return end;
}

}  // namespace

BraidWord BraidWord::parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  long long n = 0;
  const std::size_t n_col = pos + 1;
  pos = read_int(text, pos, n, "strand count");
  if (n < 1 || n > 1'000'000) throw ParseError("strand count must be positive", n_col);
  while (pos < text.size() && is_space(text[pos])) ++pos;
  if (pos >= text.size() || text[pos] != ';') throw ParseError("expected ';' after strand count", pos + 1);
  ++pos;
  std::vector<int> letters;
  for (;;) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    long long l = 0;
    const std::size_t col = pos + 1;
    pos = read_int(text, pos, l, "generator");
    if (pos < text.size() && !is_space(text[pos])) throw ParseError("unexpected character", pos + 1);
    if (l == 0 || std::llabs(l) >= n) {
      throw ParseError("generator " + std::to_string(l) + " out of range for " + std::to_string(n) + " strands",
                       col);
    }
    letters.push_back(static_cast<int>(l));
  }
  return BraidWord(static_cast<int>(n), std::move(letters));
}

std::string BraidWord::str() const {
  std::string s = std::to_string(n_) + ";";
  for (int l : letters_) {
    s += ' ';
    s += std::to_string(l);
  }
  return s;
}

BraidWord BraidWord::reduced() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (int l : letters_) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  BraidWord w;
  w.n_ = n_;
  w.letters_ = std::move(out);
  return w;
}

BraidWord BraidWord::inverse() const {
  BraidWord w;
  w.n_ = n_;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

BraidWord BraidWord::power(int p) const {
  const BraidWord base = p < 0 ? inverse() : *this;
  BraidWord w;
  w.n_ = n_;
  w.letters_.reserve(letters_.size() * static_cast<std::size_t>(std::abs(p)));
  for (int i = 0; i < std::abs(p); ++i) w.letters_.insert(w.letters_.end(), base.letters_.begin(), base.letters_.end());
  return w;
}

BraidWord reduce(const BraidWord& w) { return w.reduced(); }

BraidWord compose(const BraidWord& u, const BraidWord& v) {
  if (u.strands() != v.strands()) {
    throw StrandMismatch("compose: " + std::to_string(u.strands()) + " vs " + std::to_string(v.strands()) +
                         " strands");
  }
  std::vector<int> letters = u.letters();
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return BraidWord(u.strands(), std::move(letters)).reduced();
}

StrandPermutation::StrandPermutation(int n) : images_(static_cast<std::size_t>(n)) {
  std::iota(images_.begin(), images_.end(), 1);
}

StrandPermutation::StrandPermutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int k : images_) {
    if (k < 1 || k > size() || seen[static_cast<std::size_t>(k - 1)]) {
      throw std::invalid_argument("StrandPermutation: not a bijection");
    }
    seen[static_cast<std::size_t>(k - 1)] = true;
  }
}

bool StrandPermutation::is_identity() const {
  for (int k = 1; k <= size(); ++k) {
    if (image(k) != k) return false;
  }
  return true;
}

std::string StrandPermutation::str() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (int k = 1; k <= size(); ++k) {
    if (done[static_cast<std::size_t>(k - 1)] || image(k) == k) continue;
    out += '(';
    int j = k;
    bool first = true;
    while (!done[static_cast<std::size_t>(j - 1)]) {
      done[static_cast<std::size_t>(j - 1)] = true;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = image(j);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

StrandPermutation operator*(const StrandPermutation& a, const StrandPermutation& b) {
  if (a.size() != b.size()) throw StrandMismatch("permutation product: size mismatch");
  std::vector<int> img(static_cast<std::size_t>(a.size()));
  for (int k = 1; k <= a.size(); ++k) img[static_cast<std::size_t>(k - 1)] = b.image(a.image(k));
  return StrandPermutation(std::move(img));
}

namespace {

// at[pos] = starting position (label) of the strand currently at pos, 0-based.
std::vector<int> track_labels(const BraidWord& w) {
  std::vector<int> at(static_cast<std::size_t>(w.strands()));
  std::iota(at.begin(), at.end(), 1);
  for (int l : w.letters()) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    std::swap(at[i], at[i + 1]);
  }
  return at;
}

}  // namespace

StrandPermutation permutation(const BraidWord& w) {
  const std::vector<int> at = track_labels(w);
  std::vector<int> img(at.size());
  for (std::size_t pos = 0; pos < at.size(); ++pos) img[static_cast<std::size_t>(at[pos] - 1)] = static_cast<int>(pos) + 1;
  return StrandPermutation(std::move(img));
}

int exponent_sum(const BraidWord& w) {
  int s = 0;
  for (int l : w.letters()) s += l > 0 ? 1 : -1;
  return s;
}

double linking_number(const BraidWord& w, int i, int j) {
  const int n = w.strands();
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw std::invalid_argument("linking_number: strands must be distinct and in range");
  }
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 1);
  int count = 0;
  for (int l : w.letters()) {
    const auto p = static_cast<std::size_t>(std::abs(l) - 1);
    const int a = at[p], b = at[p + 1];
    if ((a == i && b == j) || (a == j && b == i)) count += l > 0 ? 1 : -1;
    std::swap(at[p], at[p + 1]);
  }
  for (int k = 0; k < n; ++k) {
    if (at[static_cast<std::size_t>(k)] != k + 1) throw NotPure("linking_number: braid is not pure");
  }
  return 0.5 * count;
}

BraidWord delete_strands(const BraidWord& w, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("delete_strands: keep set is empty");
  const int n = w.strands();
  std::vector<bool> kept(static_cast<std::size_t>(n) + 1, false);
  for (int k : keep) {
    if (k < 1 || k > n) throw std::invalid_argument("delete_strands: strand out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  const int m = static_cast<int>(std::count(kept.begin(), kept.end(), true));
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 1);
  std::vector<int> out;
  for (int l : w.letters()) {
    const auto p = static_cast<std::size_t>(std::abs(l) - 1);
    if (kept[static_cast<std::size_t>(at[p])] && kept[static_cast<std::size_t>(at[p + 1])]) {
      int rank = 0;  // kept strands at positions 0..p
      for (std::size_t q = 0; q <= p; ++q) rank += kept[static_cast<std::size_t>(at[q])] ? 1 : 0;
      out.push_back(l > 0 ? rank : -rank);
    }
    std::swap(at[p], at[p + 1]);
  }
  return BraidWord(m, std::move(out)).reduced();
}

std::vector<std::vector<int>> crossing_components(const BraidWord& w) {
  const int n = w.strands();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<bool> crossed(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 1);
  for (int l : w.letters()) {
    const auto p = static_cast<std::size_t>(std::abs(l) - 1);
    const int a = at[p], b = at[p + 1];
    crossed[static_cast<std::size_t>(a)] = crossed[static_cast<std::size_t>(b)] = true;
    parent[static_cast<std::size_t>(find(a))] = find(b);
    std::swap(at[p], at[p + 1]);
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(static_cast<std::size_t>(n) + 1, -1);
  for (int k = 1; k <= n; ++k) {
    if (!crossed[static_cast<std::size_t>(k)]) continue;
    const int r = find(k);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(k);
  }
  return groups;
}

}  // namespace gg
