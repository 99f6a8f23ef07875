#include "mcsim/series.hpp"

#include <algorithm>

#include "mcsim/errors.hpp"

namespace mcsim {

SeriesCaps TruncatedSeries::unify(const SeriesCaps& a, const SeriesCaps& b) {
  SeriesCaps c;
  for (int i = 0; i < kNumVars; ++i) c[i] = std::min(a[i], b[i]);
  return c;
}

bool TruncatedSeries::in_caps(const Mono& m) const {
  for (int i = 0; i < kNumVars; ++i)
    if (m.e[i] > caps_[i]) return false;
  return true;
}

void TruncatedSeries::truncate() {
  std::erase_if(terms_, [&](const Term& t) { return !in_caps(t.first); });
}

TruncatedSeries TruncatedSeries::constant(const GaussianRational& c) {
  TruncatedSeries s;
  if (!c.is_zero()) s.terms_.push_back({Mono::one(), c});
  return s;
}

TruncatedSeries TruncatedSeries::variable(Var v, const SeriesCaps& caps) {
  TruncatedSeries s;
  s.caps_ = caps;
  Mono m = Mono::unit(v, 1);
  if (caps[static_cast<int>(v)] >= 1) s.terms_.push_back({m, GaussianRational(1)});
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(std::vector<Term> terms, const SeriesCaps& caps) {
  // Reuse the polynomial normalizer (sort, combine, drop zeros), then truncate.
  Polynomial p = Polynomial::from_terms(std::move(terms));
  TruncatedSeries s;
  s.caps_ = caps;
  s.terms_ = p.terms();
  s.truncate();
  return s;
}

GaussianRational TruncatedSeries::coeff(const Mono& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& k) { return mono_less(t.first, k); });
  if (it != terms_.end() && it->first == m) return it->second;
  return GaussianRational(0);
}

TruncatedSeries TruncatedSeries::conj() const {
  TruncatedSeries r = *this;
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  caps_ = unify(caps_, o.caps_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae && b != be) {
    if (a->first == b->first) {
      GaussianRational c = a->second;
      c += b->second;
      if (!c.is_zero()) merged.push_back({a->first, c});
      ++a;
      ++b;
    } else if (mono_less(a->first, b->first)) {
      merged.push_back(*a++);
    } else {
      merged.push_back(*b++);
    }
  }
  merged.insert(merged.end(), a, ae);
  merged.insert(merged.end(), b, be);
  terms_ = std::move(merged);
  truncate();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += -o; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  SeriesCaps caps = TruncatedSeries::unify(a.caps_, b.caps_);
  std::vector<TruncatedSeries::Term> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      bool fits = true;
      for (int i = 0; i < kNumVars; ++i) {
        if (static_cast<std::uint32_t>(ma.e[i]) + mb.e[i] > caps[i]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      GaussianRational c = ca;
      c *= cb;
      acc.push_back({ma * mb, std::move(c)});
    }
  }
  return TruncatedSeries::from_terms(std::move(acc), caps);
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (terms_.empty() || !terms_[0].first.is_one())
    throw DomainError("cannot invert a series with zero constant term");
  const GaussianRational c0 = terms_[0].second;
  GaussianRational c0inv = GaussianRational(1) / c0;
  if (is_constant()) return constant(c0inv);

  // Geometric series: 1/s = (1/c0) sum_j u^j with u = 1 - s/c0. Each variable
  // appearing in u must be capped, so u^j eventually truncates to zero.
  std::uint64_t order_bound = 0;
  for (const auto& [m, c] : terms_) {
    if (m.is_one()) continue;
    for (int i = 0; i < kNumVars; ++i) {
      if (m.e[i] > 0 && caps_[i] == kUncapped)
        throw DomainError(std::string("cannot invert series: variable ") + var_name(static_cast<Var>(i)) +
                          " has no truncation cap");
    }
  }
  for (int i = 0; i < kNumVars; ++i)
    if (caps_[i] != kUncapped) order_bound += caps_[i];

  TruncatedSeries u = constant(1) - (*this) * constant(c0inv);
  u.caps_ = caps_;
  TruncatedSeries acc = one();
  acc.caps_ = caps_;
  TruncatedSeries upow = one();
  upow.caps_ = caps_;
  for (std::uint64_t j = 1; j <= order_bound; ++j) {
    upow = upow * u;
    if (upow.is_zero()) break;
    acc += upow;
  }
  return acc * constant(c0inv);
}

std::complex<double> TruncatedSeries::eval(const std::map<Var, std::complex<double>>& at) const {
  // Same variable contract as polynomials: every appearing variable needs a value.
  return Polynomial::from_terms(terms_).eval(at);
}

std::size_t TruncatedSeries::hash() const {
  std::size_t h = 0x5eedbead;
  for (const auto& [m, c] : terms_) {
    h = hash_combine(h, m.hash());
    h = hash_combine(h, c.hash());
  }
  return h;
}

std::string TruncatedSeries::to_string() const { return Polynomial::from_terms(terms_).to_string(); }

TruncatedSeries series_expand(const RationalFunction& f, const SeriesCaps& caps) {
  TruncatedSeries num = TruncatedSeries::from_terms(f.num().terms(), caps);
  TruncatedSeries den = TruncatedSeries::from_terms(f.den().terms(), caps);
  return num * den.inverse();
}

}  // namespace mcsim
