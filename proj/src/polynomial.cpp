#include "mcsim/polynomial.hpp"

#include <algorithm>

#include "mcsim/errors.hpp"

namespace mcsim {

Polynomial Polynomial::constant(const GaussianRational& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back({Mono::one(), c});
  return p;
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  p.terms_.push_back({Mono::unit(v), GaussianRational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return mono_less(a.first, b.first); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

GaussianRational Polynomial::constant_value() const {
  if (terms_.empty()) return GaussianRational(0);
  if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string());
  return terms_[0].second;
}

GaussianRational Polynomial::coeff(const Mono& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& k) { return mono_less(t.first, k); });
  if (it != terms_.end() && it->first == m) return it->second;
  return GaussianRational(0);
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.back().first.total();
}

Polynomial Polynomial::conj() const {
  Polynomial p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.first, t.second.conj()});
  return p;  // coefficient conjugation preserves order and non-zeroness
}

Polynomial Polynomial::operator-() const {
  Polynomial p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.first, -t.second});
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && mono_less(terms_[i].first, o.terms_[j].first))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || mono_less(o.terms_[j].first, terms_[i].first)) {
      out.push_back(o.terms_[j++]);
    } else {
      GaussianRational c = terms_[i].second + o.terms_[j].second;
      if (!c.is_zero()) out.push_back({terms_[i].first, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial();
  // Scalar fast paths keep the branch pipelines cheap.
  if (a.is_constant() || b.is_constant()) {
    const Polynomial& big = a.is_constant() ? b : a;
    const GaussianRational c = (a.is_constant() ? a : b).terms_[0].second;
    Polynomial p;
    p.terms_.reserve(big.terms_.size());
    for (const auto& t : big.terms_) p.terms_.push_back({t.first, t.second * c});
    return p;
  }
  std::vector<Polynomial::Term> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      acc.push_back({ta.first * tb.first, ta.second * tb.second});
    }
  }
  return Polynomial::from_terms(std::move(acc));
}

Polynomial Polynomial::substitute(const std::map<Var, Polynomial>& sub) const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) {
    Polynomial term = Polynomial::constant(c);
    for (int v = 0; v < kNumVars; ++v) {
      if (mono.e[v] == 0) continue;
      Var var = static_cast<Var>(v);
      auto it = sub.find(var);
      const Polynomial rep = (it != sub.end()) ? it->second : Polynomial::variable(var);
      term *= pow(rep, mono.e[v]);
    }
    out += term;
  }
  return out;
}

template <class T>
static T eval_impl(const std::vector<Polynomial::Term>& terms, const std::map<Var, T>& at,
                   T zero, T one) {
  T acc = zero;
  for (const auto& [mono, c] : terms) {
    T term = one;
    if constexpr (std::is_same_v<T, GaussianRational>) {
      term = c;
    } else {
      term = c.to_complex();
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (mono.e[v] == 0) continue;
      auto it = at.find(static_cast<Var>(v));
      if (it == at.end()) {
        throw DomainError(std::string("no value supplied for variable ") +
                          var_name(static_cast<Var>(v)));
      }
      for (unsigned k = 0; k < mono.e[v]; ++k) term *= it->second;
    }
    acc += term;
  }
  return acc;
}

GaussianRational Polynomial::eval(const std::map<Var, GaussianRational>& at) const {
  return eval_impl<GaussianRational>(terms_, at, GaussianRational(0), GaussianRational(1));
}

std::complex<double> Polynomial::eval(const std::map<Var, std::complex<double>>& at) const {
  return eval_impl<std::complex<double>>(terms_, at, {0.0, 0.0}, {1.0, 0.0});
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0x84222325cbf29ce4ULL;
  for (const auto& [mono, c] : terms_) {
    h = hash_combine(h, mono.hash());
    h = hash_combine(h, c.hash());
  }
  return h;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [mono, c] : terms_) {
    const bool first = s.empty();
    std::string body;
    if (c.is_real()) {
      mpq_class a = abs(c.re);
      std::string mag = (a == 1 && !mono.is_one()) ? mono.to_string()
                                                   : a.get_str() + (mono.is_one() ? "" : "*" + mono.to_string());
      if (first) {
        s = (sgn(c.re) < 0 ? "-" : "") + mag;
      } else {
        s += (sgn(c.re) < 0 ? " - " : " + ") + mag;
      }
    } else {
      body = c.to_string() + (mono.is_one() ? "" : "*" + mono.to_string());
      s += first ? body : " + " + body;
    }
  }
  return s;
}

Polynomial pow(const Polynomial& base, unsigned n) {
  Polynomial r = Polynomial::one();
  Polynomial b = base;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

}  // namespace mcsim
