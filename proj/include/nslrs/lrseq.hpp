#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nslrs/fpoly.hpp"
#include "nslrs/qlinmap.hpp"

namespace nslrs {

/// s_k = taps[m-1] s_{k-1} + ... + taps[0] s_{k-m}, taps in F_q, taps[0] != 0.
/// Values live in ctx (an extension of F_q).
class Recurrence {
 public:
  Recurrence(FieldPtr ctx, std::vector<Elem> taps);
  /// From a monic characteristic polynomial x^m - taps[m-1] x^{m-1} - ... - taps[0].
  static Recurrence from_char_poly(const Poly& f);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Elem>& taps() const { return taps_; }
  unsigned order() const { return static_cast<unsigned>(taps_.size()); }
  Poly char_poly() const;
  /// Next term from the last m terms (oldest first).
  Elem next(const Elem* window) const;

 private:
  FieldPtr ctx_;
  std::vector<Elem> taps_;
};

struct SeqWindow {
  Recurrence rec;
  std::vector<Elem> terms;
  std::optional<u64> period;
};

SeqWindow generate(const Recurrence& rec, const std::vector<Elem>& init, std::size_t count);

/// Least period of the state sequence. Throws ZeroSequence for the zero state.
u64 min_period(const SeqWindow& s);

/// The constant ratio s_{k+1}/s_k, if any. Needs at least one full period.
std::optional<Elem> is_cyclic(const SeqWindow& s);

/// Whether one period enumerates the order-n unity group. Throws
/// ReducibleInput for a reducible characteristic polynomial.
bool represents_unity_group(const SeqWindow& s, const UnityGroup& U);

/// s_k = L(xi^k), with the recurrence of the minimal polynomial of xi.
SeqWindow seq_from_map(const QLinearMap& L, const FFElement& xi, std::size_t count);

/// The unique L with s_k = L(xi^k). Throws NotAGSequence or SingularSystem.
QLinearMap map_from_seq(const SeqWindow& s, const FFElement& xi);

/// Header "# taps [..]" then one element per line in coordinate form.
std::string dump_sequence(const SeqWindow& s);

}  // namespace nslrs
