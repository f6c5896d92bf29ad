#pragma once

#include <iosfwd>
#include <string>

namespace gg::cli {

/// Each command parses `word` ("n; 1 -2 3"), prints the result on `out` and
/// returns an exit status; parse errors go to `err` with their column.
int braid_reduce(const std::string& word, std::ostream& out, std::ostream& err);
int braid_permutation(const std::string& word, std::ostream& out, std::ostream& err);
int braid_expsum(const std::string& word, std::ostream& out, std::ostream& err);
int braid_linking(int i, int j, const std::string& word, std::ostream& out, std::ostream& err);
int braid_entropy(const std::string& word, int iters, std::ostream& out, std::ostream& err);
int braid_signature(const std::string& word, std::ostream& out, std::ostream& err);
int braid_homogenize(const std::string& quasimorphism, const std::string& word, std::ostream& out, std::ostream& err);

}  // namespace gg::cli
