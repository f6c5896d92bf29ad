#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gg {

/// Word in the Artin generators sigma_1 .. sigma_{n-1} of the braid group on n
/// strands. A letter is a nonzero integer: +i is sigma_i, -i its inverse.
///
/// Words are stored as disc-braid representatives; relations of the sphere
/// braid group are not applied.
class BraidWord {
 public:
  BraidWord() = default;
  /// Throws std::invalid_argument on n < 1 or an out-of-range letter.
  explicit BraidWord(int strands, std::vector<int> letters = {});

  /// Parses the text format `n; l1 l2 ...` (for example `3; 1 -2`); the
  /// letter list may be empty. Throws ParseError with the 1-based column.
  static BraidWord parse(std::string_view text);
  /// Canonical text: `n;` followed by one space and each letter.
  std::string str() const;

  int strands() const { return n_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Free reduction: cancels adjacent sigma_i sigma_i^{-1} pairs.
  BraidWord reduced() const;
  BraidWord inverse() const;
  /// w^p for any integer p (not reduced).
  BraidWord power(int p) const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int n_ = 1;
  std::vector<int> letters_;
};

BraidWord reduce(const BraidWord& w);

/// Concatenation u then v, freely reduced. Throws StrandMismatch.
BraidWord compose(const BraidWord& u, const BraidWord& v);

/// Permutation of strand positions: `image(k)` is the final position of the
/// strand that starts at position k (both 1-based).
class StrandPermutation {
 public:
  explicit StrandPermutation(int n = 1);
  explicit StrandPermutation(std::vector<int> images);

  int size() const { return static_cast<int>(images_.size()); }
  int image(int k) const { return images_[static_cast<std::size_t>(k - 1)]; }
  bool is_identity() const;
  /// Cycle notation such as `(1 2)(3 5 4)`, or `id`.
  std::string str() const;

  /// Sequential product: (a * b)(k) = b(a(k)), i.e. a first, then b.
  friend StrandPermutation operator*(const StrandPermutation& a, const StrandPermutation& b);
  friend bool operator==(const StrandPermutation&, const StrandPermutation&) = default;

 private:
  std::vector<int> images_;
};

/// Image in the symmetric group; permutation(u v) = permutation(u) * permutation(v).
StrandPermutation permutation(const BraidWord& w);

int exponent_sum(const BraidWord& w);

/// Half the signed number of crossings between the strands that start at
/// positions i and j. Requires a pure braid (throws NotPure) and i != j.
double linking_number(const BraidWord& w, int i, int j);

/// Forgets every strand not listed in `keep` (1-based starting positions);
/// the result acts on keep.size() strands and is freely reduced.
BraidWord delete_strands(const BraidWord& w, const std::vector<int>& keep);

/// Strands (by starting position) that take part in at least one crossing,
/// grouped into connected components of the "ever crossed" relation.
std::vector<std::vector<int>> crossing_components(const BraidWord& w);

}  // namespace gg
