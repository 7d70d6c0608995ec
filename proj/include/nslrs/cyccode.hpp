#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nslrs/fpoly.hpp"
#include "nslrs/permgrp.hpp"

namespace nslrs {

using Word = std::vector<Elem>;

/// Cyclic code of length n over F_q = ctx->base(). Polynomials live in ctx,
/// which may be an extension of F_q; code symbols are F_q elements.
class CyclicCode {
 public:
  /// Throws BadGenerator unless g is monic with coefficients in F_q and divides x^n - 1.
  CyclicCode(std::size_t n, Poly generator);

  std::size_t n() const { return n_; }
  u64 q() const { return g_.ctx()->q(); }
  const FieldPtr& ctx() const { return g_.ctx(); }
  const Poly& generator() const { return g_; }
  const Poly& parity_check() const { return h_; }
  std::size_t dimension() const { return n_ - static_cast<std::size_t>(g_.degree()); }

  bool contains(const Word& c) const;
  /// Codeword of the message polynomial a(x) g(x), deg a < dimension.
  Word from_message(const std::vector<Elem>& msg) const;
  /// Rows x^i g(x), i < dimension.
  std::vector<Word> basis() const;
  /// Rows with the identity on the last `dimension` positions.
  std::vector<Word> systematic_basis() const;

  /// The trace encoder a -> (Tr(a xi^i))_i; set only for irreducible codes.
  const std::optional<Elem>& xi() const { return xi_; }
  Word encode(Elem a) const;

  friend bool operator==(const CyclicCode& a, const CyclicCode& b) { return a.n_ == b.n_ && a.g_ == b.g_; }

 private:
  friend CyclicCode irreducible_code(const FieldPtr&, std::size_t, Elem);
  std::size_t n_;
  Poly g_;
  Poly h_;
  std::optional<Elem> xi_;
};

/// C_{n,q} = { (Tr(a xi^i))_i : a in F_{q^m} } with the canonical xi.
CyclicCode irreducible_code(u64 n, u64 q);
/// Same with an explicit xi of order n in ctx.
CyclicCode irreducible_code(const FieldPtr& ctx, std::size_t n, Elem xi);

CyclicCode dual(const CyclicCode& C);

Word apply_perm(const Word& c, const Perm& pi);
bool is_paut(const CyclicCode& C, const Perm& pi);

/// Filters all n! permutations; n <= 8.
StabChain paut_bruteforce(const CyclicCode& C);
/// <i -> i+1, i -> q i>.
StabChain paut_standard(const CyclicCode& C);

std::size_t weight(const Word& c);
/// Weight -> count over all codewords; needs q^dimension <= 2^20.
std::map<std::size_t, u64> weight_distribution(const CyclicCode& C);

struct LowWeightWords {
  std::vector<Word> words;  // first nonzero entry 1
  unsigned weight_bound;    // bound actually used
};

/// Codewords of weight <= w_max, one per scalar class. If enumerating would
/// take more than work_limit steps, the bound is lowered until it fits.
LowWeightWords low_weight_words(const CyclicCode& C, unsigned w_max, u64 work_limit = u64{1} << 20);

/// Length nk code with generator g(x^k).
CyclicCode spaced_product(const CyclicCode& C, unsigned k);
/// Position r + k i carries the i-th symbol of the r-th word.
Word interleave(const std::vector<Word>& words);
/// Whether the interleaved k-fold product of C spans spaced_product(C, k).
bool spaced_product_matches_interleaving(const CyclicCode& C, unsigned k);

/// (c_0, nu c_1, ..., nu^{nf-1} c_{n-1}).
Word twist_word(const Field& F, const Word& c, Elem nu, unsigned f);
/// The length nf code of twisted repetitions; nu in F_q^* with nu^{nf} = 1,
/// otherwise BadTwist.
CyclicCode twist_extension(const CyclicCode& C, Elem nu, unsigned f);
/// Set equality of the twisted code with the product of the repetition
/// (1, nu^n, nu^{2n}, ...) and the twisted copy of C, at position i + n r.
bool twist_matches_product(const CyclicCode& C, Elem nu, unsigned f);

}  // namespace nslrs
