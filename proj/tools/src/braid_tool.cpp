#include "gg/cli/braid_tool.hpp"

#include <cstdio>
#include <functional>
#include <ostream>

#include "gg/braid.hpp"
#include "gg/cli/runner.hpp"
#include "gg/dynnikov.hpp"
#include "gg/errors.hpp"
#include "gg/quasimorphism.hpp"
#include "gg/signature.hpp"

namespace gg::cli {

namespace {

int guarded(const std::string& word, std::ostream& err, const std::function<void(const BraidWord&)>& body) {
  try {
    body(BraidWord::parse(word));
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotPure& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

int braid_reduce(const std::string& word, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << reduce(w).str() << "\n"; });
}

int braid_permutation(const std::string& word, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << permutation(w).str() << "\n"; });
}

int braid_expsum(const std::string& word, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << exponent_sum(w) << "\n"; });
}

int braid_linking(int i, int j, const std::string& word, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << linking_number(w, i, j) << "\n"; });
}

int braid_entropy(const std::string& word, int iters, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << fixed(braid_entropy_estimate(w, iters), 8) << "\n"; });
}

int braid_signature(const std::string& word, std::ostream& out, std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) { out << signature_of_closure(w) << "\n"; });
}

int braid_homogenize(const std::string& quasimorphism, const std::string& word, std::ostream& out,
                     std::ostream& err) {
  return guarded(word, err, [&](const BraidWord& w) {
    const Homogenization h = homogenize(QuasimorphismSpec::by_name(quasimorphism), w);
    out << fixed(h.value, 8) << "\n";
    for (std::size_t k = 0; k < h.powers.size(); ++k) out << "  p=" << h.powers[k] << " " << fixed(h.ratios[k], 8) << "\n";
  });
}

}  // namespace gg::cli
