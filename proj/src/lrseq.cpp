#include "nslrs/lrseq.hpp"

#include <algorithm>
#include <sstream>

#include "nslrs/error.hpp"

namespace nslrs {

Recurrence::Recurrence(FieldPtr ctx, std::vector<Elem> taps) : ctx_(std::move(ctx)), taps_(std::move(taps)) {
  if (taps_.empty()) throw Error(ErrorKind::DegreeMismatch, "recurrence needs order >= 1");
  if (taps_[0] == 0) throw Error(ErrorKind::ZeroConstantTerm, "sigma_0 must be nonzero");
  for (Elem t : taps_) {
    if (!ctx_->valid(t) || !ctx_->in_base(t)) throw Error(ErrorKind::ContextMismatch, "taps must lie in F_q");
  }
}

Recurrence Recurrence::from_char_poly(const Poly& f_in) {
  const Poly f = monic(f_in);
  if (f.degree() < 1) throw Error(ErrorKind::DegreeMismatch, "characteristic polynomial needs degree >= 1");
  std::vector<Elem> taps(static_cast<std::size_t>(f.degree()));
  for (std::size_t i = 0; i < taps.size(); ++i) taps[i] = f.ctx()->neg(f[i]);
  return Recurrence(f.ctx(), std::move(taps));
}

Poly Recurrence::char_poly() const {
  std::vector<Elem> c(taps_.size() + 1);
  for (std::size_t i = 0; i < taps_.size(); ++i) c[i] = ctx_->neg(taps_[i]);
  c.back() = 1;
  return Poly(ctx_, std::move(c));
}

Elem Recurrence::next(const Elem* window) const {
  Elem r = 0;
  for (std::size_t i = 0; i < taps_.size(); ++i) {
    if (taps_[i] != 0 && window[i] != 0) r = ctx_->add(r, ctx_->mul(taps_[i], window[i]));
  }
  return r;
}

SeqWindow generate(const Recurrence& rec, const std::vector<Elem>& init, std::size_t count) {
  const unsigned m = rec.order();
  if (init.size() != m) {
    throw Error(ErrorKind::BadInitLength, "need " + std::to_string(m) + " initial terms, got " + std::to_string(init.size()));
  }
  std::vector<Elem> terms(init);
  for (Elem e : terms) {
    if (!rec.ctx()->valid(e)) throw Error(ErrorKind::Parse, "initial term outside the field");
  }
  terms.reserve(count);
  while (terms.size() < count) terms.push_back(rec.next(terms.data() + terms.size() - m));
  terms.resize(count);
  return SeqWindow{rec, std::move(terms), std::nullopt};
}

u64 min_period(const SeqWindow& s) {
  if (s.period) return *s.period;
  const unsigned m = s.rec.order();
  if (s.terms.size() < m) throw Error(ErrorKind::InsufficientTerms, "window shorter than the recurrence order");
  const std::vector<Elem> start(s.terms.begin(), s.terms.begin() + m);
  if (std::all_of(start.begin(), start.end(), [](Elem e) { return e == 0; })) {
    throw Error(ErrorKind::ZeroSequence, "the zero sequence has no least period");
  }
  // sigma_0 != 0 makes the state map invertible, so the orbit returns to the start.
  std::vector<Elem> buf(start);
  u64 p = 0;
  while (true) {
    buf.push_back(s.rec.next(buf.data() + buf.size() - m));
    buf.erase(buf.begin());
    ++p;
    if (buf == start) return p;
  }
}

std::optional<Elem> is_cyclic(const SeqWindow& s) {
  const u64 p = min_period(s);
  if (s.terms.size() < p) throw Error(ErrorKind::InsufficientTerms, "window shorter than one period");
  const Field& F = *s.rec.ctx();
  const auto full = generate(s.rec, std::vector<Elem>(s.terms.begin(), s.terms.begin() + s.rec.order()), p + 1);
  if (full.terms[0] == 0) return std::nullopt;
  const Elem alpha = F.div(full.terms[1], full.terms[0]);
  for (u64 k = 0; k < p; ++k) {
    if (full.terms[k] == 0 || full.terms[k + 1] != F.mul(alpha, full.terms[k])) return std::nullopt;
  }
  return alpha;
}

bool represents_unity_group(const SeqWindow& s, const UnityGroup& U) {
  if (!is_irreducible(s.rec.char_poly())) {
    throw Error(ErrorKind::ReducibleInput, "characteristic polynomial is reducible");
  }
  const std::size_t n = U.n();
  if (s.terms.size() < n) throw Error(ErrorKind::InsufficientTerms, "window shorter than n");
  if (min_period(s) != n) return false;
  std::vector<char> hit(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const long idx = U.index_of(s.terms[k]);
    if (idx < 0 || hit[static_cast<std::size_t>(idx)]) return false;
    hit[static_cast<std::size_t>(idx)] = 1;
  }
  return true;
}

SeqWindow seq_from_map(const QLinearMap& L, const FFElement& xi, std::size_t count) {
  if (!L.ctx()->same_as(*xi.ctx())) throw Error(ErrorKind::ContextMismatch, "map and xi in different fields");
  const Field& F = *L.ctx();
  auto rec = Recurrence::from_char_poly(minimal_poly(xi));
  std::vector<Elem> terms(count);
  Elem x = 1;
  for (auto& t : terms) {
    t = L(x);
    x = F.mul(x, xi.value());
  }
  return SeqWindow{std::move(rec), std::move(terms), std::nullopt};
}

QLinearMap map_from_seq(const SeqWindow& s, const FFElement& xi) {
  const Field& F = *xi.ctx();
  if (!s.rec.ctx()->same_as(F)) throw Error(ErrorKind::ContextMismatch, "sequence and xi in different fields");
  const unsigned m = F.ext_degree();
  if (s.terms.size() < m) throw Error(ErrorKind::InsufficientTerms, "need at least m terms");
  const auto g = Recurrence::from_char_poly(minimal_poly(xi));
  if (g.order() != m) throw Error(ErrorKind::SingularSystem, "xi does not have degree m");
  for (std::size_t k = m; k < s.terms.size(); ++k) {
    if (g.next(s.terms.data() + k - m) != s.terms[k]) {
      throw Error(ErrorKind::NotAGSequence, "term " + std::to_string(k) + " violates the recurrence");
    }
  }
  try {
    return from_basis_images(xi, std::vector<Elem>(s.terms.begin(), s.terms.begin() + m));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotABasis) throw Error(ErrorKind::SingularSystem, e.what());
    throw;
  }
}

std::string dump_sequence(const SeqWindow& s) {
  std::ostringstream os;
  const Field& F = *s.rec.ctx();
  os << "# taps [";
  for (std::size_t i = 0; i < s.rec.taps().size(); ++i) os << (i ? "," : "") << F.format(s.rec.taps()[i]);
  os << "]\n";
  for (Elem e : s.terms) {
    const auto c = F.coords(e);
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]\n";
  }
  return os.str();
}

}  // namespace nslrs
