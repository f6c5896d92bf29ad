#pragma once

#include <Eigen/Core>
#include <vector>

#include "gg/braid.hpp"

namespace gg {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Checkerboard data of the closure of a braid drawn in braid position.
///
/// Regions: gap 0 (left of strand 1) is the inner disc, gap n the unbounded
/// region, and gap g (1 <= g < n) splits into one region per column-g
/// crossing, region j lying between the j-th and (j+1)-th crossings of that
/// column in cyclic word order. Gap g is white iff n - g is even, so the
/// unbounded region is white. Region ids are assigned in gap order.
struct GoeritzData {
  struct Crossing {
    std::size_t position;  // index in the word
    int column;            // generator index i
    int sign;              // +1 for sigma_i
    bool type_two;         // Gordon-Litherland type II for this coloring
    int eta;               // incidence index of the crossing
    int region_a;          // white regions joined by the crossing
    int region_b;
  };

  int strands = 0;
  std::vector<Crossing> crossings;
  int region_count = 0;        // all regions, both colors
  int white_region_count = 0;
  int unbounded_region = -1;   // id among white regions
  /// Goeritz form on all white regions (rows sum to zero).
  IntMatrix full_matrix;
  /// Full matrix with the unbounded region's row and column removed.
  IntMatrix matrix;
  /// Correction term: sum of eta over type II crossings.
  int mu = 0;
  /// True when some column has no crossing (split diagram).
  bool split = false;
};

/// Requires a nonempty, freely reduced word for meaningful output; the empty
/// word yields an empty diagram.
GoeritzData closure_diagram(const BraidWord& w);

/// Signature of the trace closure, signature(G) - mu; split diagrams are
/// evaluated block by block. sigma_1^3 gives -2.
int signature_of_closure(const BraidWord& w);

/// Number of positive minus number of negative eigenvalues of a symmetric
/// integer matrix. Uses a floating-point eigensolver and falls back to exact
/// rational elimination when an eigenvalue is too close to zero to classify.
int symmetric_signature(const IntMatrix& s);

/// Exact rational congruence diagonalization (reference implementation).
int symmetric_signature_exact(const IntMatrix& s);

}  // namespace gg
