#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nslrs/cyccode.hpp"
#include "nslrs/qlinmap.hpp"

namespace nslrs {

struct SearchBudget {
  u64 max_nodes = 2'000'000'000;
  double max_seconds = 1800.0;
  /// 0 selects m + 2.
  unsigned w_max = 0;
  /// 0 selects NSLRS_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

unsigned resolve_threads(unsigned requested);

enum class Family { Repetition, Simplex, Golay23_2, Golay11_3, EquallySpaced, LiftExtend, NoneKnown };

struct FamilyTag {
  Family kind = Family::NoneKnown;
  u64 k = 0, n0 = 0;                     // EquallySpaced
  u64 base_n = 0, base_q = 0, t = 0, f = 0;  // LiftExtend

  std::string name() const;
  /// e.g. "EQUALLY_SPACED(k=3,n0=3)".
  std::string to_string() const;
  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

enum class Method { FullEnumeration, PrunedSearch, Certified };
std::string method_name(Method m);

struct SearchStats {
  u64 nodes = 0;
  double seconds = 0.0;
  unsigned weight_bound = 0;
  std::size_t checks = 0;
};

struct PairReport {
  u64 n = 0, q = 0;
  unsigned m = 0;
  u64 d = 0, e = 0;
  u64 order = 0;
  u64 standard_order = 0;
  bool nonstandard = false;
  FamilyTag family;
  Method method = Method::FullEnumeration;
  /// Maps on F_{q^m}; the first is x -> xi x whenever n > 1.
  std::vector<QLinearMap> generators;
  SearchStats stats;
  bool prediction_mismatch = false;

  FieldPtr ctx;
  Elem xi = 1;

  UnityGroup unity() const { return UnityGroup(ctx, n, xi); }
  /// Psi of the generators, as a chain on Z_n.
  StabChain chain() const;
};

/// All tuples (L_0..L_{m-1}); needs q^{m^2} <= limit.
PairReport enumerate_maps(u64 n, u64 q, u64 limit = u64{1} << 24);
/// Same over an explicit unity group (its context must be F_{q^m}).
PairReport enumerate_maps(const UnityGroup& U, u64 limit = u64{1} << 24);

struct SearchOptions {
  /// Stop at the first non-standard element of the stabilizer.
  bool witness_only = false;
};

/// Backtracking over y_i = L(xi^i) with L(1) = 1.
PairReport search_group(u64 n, u64 q, const SearchBudget& budget, const SearchOptions& opts = {});

/// Result of the stabilizer search. Points basis[1..] are handled from the
/// deepest level up; at each level only images outside the orbit of the
/// subgroup found so far are probed.
struct StabilizerSearch {
  std::vector<std::uint32_t> base;
  std::vector<std::size_t> orbit_sizes;
  std::vector<Perm> generators;
  u64 order = 1;
  bool complete = true;
  std::optional<Perm> witness;
  SearchStats stats;
};

StabilizerSearch search_stabilizer(u64 n, u64 q, const SearchBudget& budget, const SearchOptions& opts = {});

/// Enumeration when q^{m^2} <= 2^16, search otherwise.
PairReport decide(u64 n, u64 q, const SearchBudget& budget);

FamilyTag known_family(u64 n, u64 q);

/// (n, q^t) with lifted generators. Throws BadLiftExponent unless gcd(t, m) = 1.
PairReport lift(const PairReport& base, unsigned t);

/// Embedding of F_{q^m} into F_{(q^t)^m} sending the primitive element to
/// the root of its modulus with the smallest exponent over the subfield generator.
struct FieldEmbedding {
  FieldPtr small;
  FieldPtr big;
  Elem image_of_primitive;
  Elem operator()(Elem a) const;
};
FieldEmbedding embed(const FieldPtr& small, const FieldPtr& big);

/// (nf, q) generated by x -> theta x and the base generators.
/// Throws BadExtensionFactor unless f | (q-1)/gcd(n, q-1).
PairReport extend(const PairReport& base, u64 f);

/// Group generated by the standard maps and the supplied ones.
/// Lift, extend and certify saturate the order at 2^64-1 when it does not fit.
PairReport certify(u64 n, u64 q, const std::vector<QLinearMap>& maps);

struct M2Row {
  u64 q = 0, n = 0, d = 0;
  u64 order = 0;
  bool nonstandard = false;
  bool predicted_nonstandard = false;
  u64 predicted_order = 0;
  std::string predicted_case;  // "case1", "closure", "standard"
  bool agrees() const { return nonstandard == predicted_nonstandard && order == predicted_order; }
};

struct M2Table {
  std::vector<M2Row> rows;
  std::size_t mismatches = 0;
  /// Nonstandard rows with d = q + 1 but n != q^2 - 1.
  std::size_t d_violations = 0;
};

M2Row predict_m2(u64 n, u64 q);
M2Table classify_m2(u64 q_max, const SearchBudget& budget);

}  // namespace nslrs
