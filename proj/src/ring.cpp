#include "wittkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wittkit/config.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

Limits& limits() {
  static Limits l;
  return l;
}

// ---------------------------------------------------------------------------
// RingHandle

RingPtr RingHandle::integers() {
  static RingPtr z = [] {
    auto h = std::shared_ptr<RingHandle>(new RingHandle());
    h->kind_ = RingKind::Integers;
    return RingPtr(h);
  }();
  return z;
}

RingPtr RingHandle::modular(BigInt m) {
  if (m < 2) fail_argument("modular ring needs modulus >= 2");
  auto h = std::shared_ptr<RingHandle>(new RingHandle());
  h->kind_ = RingKind::Modular;
  h->modulus_ = std::move(m);
  return h;
}

RingPtr RingHandle::poly(std::vector<std::string> vars) {
  auto h = std::shared_ptr<RingHandle>(new RingHandle());
  h->kind_ = RingKind::Poly;
  for (uint32_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) fail_argument("empty variable name");
    if (!h->var_lookup_.emplace(vars[i], i).second)
      fail_argument("duplicate variable name: " + vars[i]);
  }
  h->vars_ = std::move(vars);
  return h;
}

std::optional<uint32_t> RingHandle::var_index(const std::string& name) const {
  auto it = var_lookup_.find(name);
  if (it == var_lookup_.end()) return std::nullopt;
  return it->second;
}

bool RingHandle::same(const RingHandle& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case RingKind::Integers: return true;
    case RingKind::Modular: return modulus_ == o.modulus_;
    case RingKind::Poly: return vars_ == o.vars_;
  }
  return false;
}

std::string RingHandle::describe() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Modular: return "Z/" + modulus_.get_str();
    case RingKind::Poly: {
      std::string s = "Z[";
      for (size_t i = 0; i < vars_.size(); ++i) {
        if (i) s += ",";
        s += vars_[i];
      }
      return s + "]";
    }
  }
  return "?";
}

static void require_same_ring(const RingElement& a, const RingElement& b) {
  if (!a.ring()->same(*b.ring()))
    fail_argument("ring handle mismatch: " + a.ring()->describe() + " vs " +
                  b.ring()->describe());
}

// ---------------------------------------------------------------------------
// Monomials

int64_t total_degree(const Monomial& m) {
  int64_t d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

bool monomial_before(const Monomial& a, const Monomial& b) {
  int64_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  // lex: at the first variable where the exponents differ, the larger
  // exponent sorts first; a variable missing counts as exponent 0
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first) return a[i].first < b[j].first;
    if (a[i].second != b[j].second) return a[i].second > b[j].second;
    ++i, ++j;
  }
  return i < a.size();
}

static Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement() : ring_(RingHandle::integers()), z_(0) {}

void RingElement::canonicalize() {
  if (ring_->kind() == RingKind::Modular) {
    mpz_mod(z_.get_mpz_t(), z_.get_mpz_t(), ring_->modulus().get_mpz_t());
  } else if (ring_->kind() == RingKind::Poly) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return monomial_before(x.mono, y.mono); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coeff += t.coeff;
      else
        out.push_back(std::move(t));
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
    }
    terms_ = std::move(out);
    if (static_cast<int64_t>(terms_.size()) > limits().max_poly_terms)
      fail_validation("polynomial term cap exceeded");
  }
}

RingElement RingElement::integer(RingPtr ring, BigInt v) {
  RingElement e;
  e.ring_ = std::move(ring);
  if (e.ring_->kind() == RingKind::Poly) {
    if (v != 0) e.terms_.push_back({Monomial{}, std::move(v)});
  } else {
    e.z_ = std::move(v);
  }
  e.canonicalize();
  return e;
}

RingElement RingElement::variable(RingPtr ring, uint32_t var) {
  if (ring->kind() != RingKind::Poly) fail_argument("variable: not a polynomial ring");
  if (var >= ring->vars().size()) fail_argument("variable index out of range");
  RingElement e;
  e.ring_ = std::move(ring);
  e.terms_.push_back({Monomial{{var, 1}}, BigInt(1)});
  return e;
}

RingElement RingElement::zero(RingPtr ring) { return integer(std::move(ring), 0); }
RingElement RingElement::one(RingPtr ring) { return integer(std::move(ring), 1); }

bool RingElement::is_zero() const {
  return ring_->kind() == RingKind::Poly ? terms_.empty() : z_ == 0;
}

bool RingElement::is_one() const {
  if (ring_->kind() == RingKind::Poly)
    return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coeff == 1;
  return z_ == 1;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  RingElement out;
  out.ring_ = a.ring_;
  if (a.ring_->kind() == RingKind::Poly) {
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  } else {
    out.z_ = a.z_ + b.z_;
  }
  out.canonicalize();
  return out;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement RingElement::operator-() const {
  RingElement out = *this;
  if (ring_->kind() == RingKind::Poly) {
    for (auto& t : out.terms_) t.coeff = -t.coeff;
  } else {
    out.z_ = -out.z_;
  }
  out.canonicalize();
  return out;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  RingElement out;
  out.ring_ = a.ring_;
  if (a.ring_->kind() == RingKind::Poly) {
    std::map<Monomial, BigInt> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        Monomial m = mono_mul(ta.mono, tb.mono);
        acc[std::move(m)] += ta.coeff * tb.coeff;
      }
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.terms_.push_back({m, c});
  } else {
    out.z_ = a.z_ * b.z_;
  }
  out.canonicalize();
  return out;
}

RingElement RingElement::pow(uint64_t e) const {
  RingElement acc = one(ring_);
  RingElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

RingElement RingElement::times(const BigInt& n) const {
  return *this * integer(ring_, n);
}

bool RingElement::operator==(const RingElement& o) const {
  require_same_ring(*this, o);
  if (ring_->kind() == RingKind::Poly) {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
        return false;
    return true;
  }
  return z_ == o.z_;
}

RingElement RingElement::div_exact(const BigInt& n) const {
  if (!ring_->torsion_free()) fail_argument("div_exact: ring is not torsion-free");
  if (n == 0) fail_argument("div_exact by zero");
  RingElement out = *this;
  if (ring_->kind() == RingKind::Poly) {
    for (auto& t : out.terms_) {
      if (!divides_exactly(t.coeff, n))
        fail_validation("not divisible: coefficient " + t.coeff.get_str() + " by " +
                        n.get_str());
      mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), n.get_mpz_t());
    }
  } else {
    if (!divides_exactly(z_, n))
      fail_validation("not divisible: " + z_.get_str() + " by " + n.get_str());
    mpz_divexact(out.z_.get_mpz_t(), z_.get_mpz_t(), n.get_mpz_t());
  }
  return out;
}

RingElement RingElement::frobenius_lift(int64_t p) const {
  if (!ring_->has_frobenius_lifts())
    fail_argument("no Frobenius lift on " + ring_->describe());
  if (ring_->kind() == RingKind::Integers) return *this;
  RingElement out = *this;
  for (auto& t : out.terms_)
    for (auto& [v, e] : t.mono) e = static_cast<uint32_t>(e * p);
  out.canonicalize();
  return out;
}

RingElement RingElement::evaluate(const RingPtr& K,
                                  const std::map<uint32_t, RingElement>& bindings) const {
  if (ring_->kind() != RingKind::Poly) fail_argument("evaluate: not a polynomial");
  // lazily grown power cache per variable
  std::map<uint32_t, std::vector<RingElement>> powers;
  auto power_of = [&](uint32_t v, uint32_t e) -> const RingElement& {
    auto it = bindings.find(v);
    if (it == bindings.end())
      fail_argument("unbound variable: " + ring_->vars()[v]);
    if (!it->second.ring()->same(*K)) fail_argument("binding ring mismatch");
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(RingElement::one(K));
    while (cache.size() <= e) cache.push_back(cache.back() * it->second);
    return cache[e];
  };
  RingElement acc = RingElement::zero(K);
  for (const auto& t : terms_) {
    RingElement m = RingElement::integer(K, t.coeff);
    for (auto& [v, e] : t.mono) m = m * power_of(v, e);
    acc = acc + m;
  }
  return acc;
}

bool RingElement::congruent(const RingElement& o, const BigInt& m) const {
  require_same_ring(*this, o);
  if (ring_->kind() == RingKind::Modular) fail_argument("congruent: modular ring");
  RingElement d = *this - o;
  if (ring_->kind() == RingKind::Integers) return divides_exactly(d.z_, m);
  for (const auto& t : d.terms_)
    if (!divides_exactly(t.coeff, m)) return false;
  return true;
}

const BigInt& RingElement::int_value() const {
  if (ring_->kind() == RingKind::Poly) fail_argument("int_value on polynomial");
  return z_;
}

int64_t RingElement::degree() const {
  if (ring_->kind() != RingKind::Poly) return is_zero() ? -1 : 0;
  if (terms_.empty()) return -1;
  int64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.mono));
  return d;
}

// ---------------------------------------------------------------------------
// Text form. Terms in graded-lex order, e.g. "a_1^2 + 2*a_2 - 3".

std::string RingElement::to_text() const {
  if (ring_->kind() != RingKind::Poly) return z_.get_str();
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigInt c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool coeff_shown = (c != 1) || t.mono.empty();
    if (coeff_shown) os << c.get_str();
    bool lead = !coeff_shown;
    for (auto& [v, e] : t.mono) {
      if (!lead) os << "*";
      lead = false;
      os << ring_->vars()[v];
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

// Minimal expression parser: integers, variables, +, -, *, ^, parentheses.
struct PolyParser {
  const RingPtr& ring;
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  BigInt parse_uint() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail_parse("expected integer at offset " + std::to_string(pos));
    return BigInt(s.substr(start, pos - start));
  }

  RingElement parse_base() {
    skip();
    if (eat('(')) {
      RingElement e = parse_expr();
      if (!eat(')')) fail_parse("expected ')' at offset " + std::to_string(pos));
      return e;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RingElement::integer(ring, parse_uint());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (ring->kind() != RingKind::Poly)
        fail_parse("variable '" + name + "' in a scalar ring");
      auto idx = ring->var_index(name);
      if (!idx) fail_parse("unknown variable '" + name + "'");
      return RingElement::variable(ring, *idx);
    }
    fail_parse("unexpected character at offset " + std::to_string(pos));
  }

  RingElement parse_factor() {
    RingElement b = parse_base();
    if (eat('^')) {
      BigInt e = parse_uint();
      if (!e.fits_ulong_p()) fail_parse("exponent too large");
      return b.pow(e.get_ui());
    }
    return b;
  }

  RingElement parse_term() {
    RingElement t = parse_factor();
    while (eat('*')) t = t * parse_factor();
    return t;
  }

  RingElement parse_expr() {
    bool neg = false;
    skip();
    if (eat('-'))
      neg = true;
    else
      eat('+');
    RingElement acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip();
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        break;
    }
    return acc;
  }
};

}  // namespace

RingElement RingElement::parse(const RingPtr& ring, const std::string& text) {
  PolyParser p{ring, text};
  RingElement e = p.parse_expr();
  p.skip();
  if (p.pos != text.size())
    fail_parse("trailing input at offset " + std::to_string(p.pos));
  // scalar rings: allow negative literals, canonicalize residues
  return e;
}

}  // namespace wittkit
