#include <orbitforge/multivec.hpp>

#include <algorithm>

namespace orbitforge {

namespace {

// sorts the tuple ascending, tracking the permutation sign; false on repeats
bool canonicalize(std::vector<int>& tuple, int& sign) {
  sign = 1;
  for (size_t i = 1; i < tuple.size(); ++i)
    for (size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
      if (tuple[j - 1] == tuple[j]) return false;
      std::swap(tuple[j - 1], tuple[j]);
      sign = -sign;
    }
  return true;
}

// bracket of two basis codes inside the tagged space
BasisCombo space_bracket(const Multivector& v, int x, int y) {
  BasisCombo full = v.rs->bracket_basis(x, y);
  if (!v.over_m()) return full;
  // [.,.]_m: composition with the projection g -> m drops the Cartan part
  // and the Omega_l root spaces
  BasisCombo out;
  for (auto& [code, coeff] : full)
    if (code < v.rs->n_roots() && v.levi->in_m(code))
      out.emplace_back(code, coeff);
  return out;
}

}  // namespace

bool Multivector::same_space(const Multivector& o) const {
  if (!(rs->type() == o.rs->type())) return false;
  if ((levi == nullptr) != (o.levi == nullptr)) return false;
  if (levi && levi->gamma() != o.levi->gamma()) return false;
  return true;
}

void Multivector::add_term(std::vector<int> tuple, Rat coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(tuple.size()) != degree)
    throw InternalError("term degree mismatch");
  int sign = 1;
  if (!canonicalize(tuple, sign)) return;
  auto it = terms.find(tuple);
  if (it == terms.end()) {
    terms.emplace(std::move(tuple), sign > 0 ? coeff : Rat(-coeff));
  } else {
    it->second += sign > 0 ? coeff : Rat(-coeff);
    if (it->second == 0) terms.erase(it);
  }
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (!same_space(o) || degree != o.degree)
    throw UsageError("multivector space or degree mismatch");
  for (const auto& [t, c] : o.terms) {
    auto it = terms.find(t);
    if (it == terms.end()) {
      terms.emplace(t, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  Multivector neg = o;
  neg *= Rat(-1);
  return *this += neg;
}

Multivector& Multivector::operator*=(const Rat& s) {
  if (s == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [t, c] : terms) c *= s;
  return *this;
}

Multivector mv_over_m(LeviPtr levi, int degree) {
  Multivector v;
  v.rs = levi->rs();
  v.levi = std::move(levi);
  v.degree = degree;
  return v;
}

Multivector mv_over_g(RootSystemPtr rs, int degree) {
  Multivector v;
  v.rs = std::move(rs);
  v.degree = degree;
  return v;
}

Rat BracketCoefficients::at(const QCoords& q) const {
  auto it = values.find(q);
  if (it != values.end()) return it->second;
  QCoords n = qcoords_neg(q);
  it = values.find(n);
  if (it != values.end()) return -it->second;
  if (levi->q_index(q) < 0)
    throw UsageError("not a quasiroot: " + qcoords_key(q));
  return Rat(0);
}

BracketCoefficients& BracketCoefficients::operator+=(
    const BracketCoefficients& o) {
  for (const auto& q : positive.positive) {
    Rat v = at(q) + o.at(q);
    if (v == 0)
      values.erase(q);
    else
      values[q] = v;
  }
  return *this;
}

BracketCoefficients& BracketCoefficients::operator*=(const Rat& s) {
  if (s == 0) {
    values.clear();
    return *this;
  }
  for (auto& [q, v] : values) v *= s;
  return *this;
}

BracketCoefficients coefficients_zero(LeviPtr levi) {
  BracketCoefficients c;
  c.positive = standard_positive(*levi);
  c.levi = std::move(levi);
  return c;
}

BracketCoefficients coefficients_constant(LeviPtr levi, const Rat& value) {
  BracketCoefficients c = coefficients_zero(std::move(levi));
  if (value != 0)
    for (const auto& q : c.positive.positive) c.values[q] = value;
  return c;
}

Multivector bivector_from_coefficients(const BracketCoefficients& c) {
  Multivector v = mv_over_m(c.levi, 2);
  const RootSystem& rs = *c.levi->rs();
  for (int r : c.levi->m_roots()) {
    if (!rs.is_positive(r)) continue;
    Rat coeff = c.at(c.levi->q_of_root(r));
    if (coeff == 0) continue;
    v.add_term({r, rs.negate(r)}, coeff / rs.kappa(r));
  }
  return v;
}

BracketCoefficients coefficients_of(const LeviPtr& levi, const Multivector& v,
                                    const PositiveSystem& ps) {
  if (!v.over_m() || v.levi->gamma() != levi->gamma() || v.degree != 2)
    throw UsageError("expected a degree-2 multivector over m");
  const RootSystem& rs = *levi->rs();
  std::map<int, Rat> diag;  // positive m-root -> kappa-normalized value
  for (const auto& [tuple, coeff] : v.terms) {
    if (tuple[1] != rs.negate(tuple[0]))
      throw DomainError("bivector is not invariant: off-diagonal term");
    diag[tuple[0]] = coeff * rs.kappa(tuple[0]);
  }
  BracketCoefficients c;
  c.levi = levi;
  c.positive = ps;
  for (const auto& q : ps.positive) {
    Rat val;
    bool first = true;
    for (int r : levi->fiber(q)) {
      int stored = rs.is_positive(r) ? r : rs.negate(r);
      Rat got = diag.count(stored) ? diag.at(stored) : Rat(0);
      if (!rs.is_positive(r)) got = -got;
      if (first) {
        val = got;
        first = false;
      } else if (val != got) {
        throw DomainError(
            "bivector is not invariant: fiber-inconstant coefficient on " +
            qcoords_key(q));
      }
    }
    if (val != 0) c.values[q] = val;
  }
  return c;
}

BracketCoefficients coefficients_of(const LeviPtr& levi,
                                    const Multivector& v) {
  return coefficients_of(levi, v, standard_positive(*levi));
}

Multivector schouten(const Multivector& v, const Multivector& w) {
  if (!v.same_space(w)) throw UsageError("schouten: space tag mismatch");
  Multivector out = v;
  out.degree = v.degree + w.degree - 1;
  out.terms.clear();
  for (const auto& [xt, xc] : v.terms)
    for (const auto& [yt, yc] : w.terms) {
      Rat base = xc * yc;
      for (size_t i = 0; i < xt.size(); ++i)
        for (size_t j = 0; j < yt.size(); ++j) {
          int sign = ((i + j) % 2 == 0) ? 1 : -1;
          for (const auto& [z, bc] : space_bracket(v, xt[i], yt[j])) {
            std::vector<int> tuple;
            tuple.reserve(out.degree);
            tuple.push_back(z);
            for (size_t a = 0; a < xt.size(); ++a)
              if (a != i) tuple.push_back(xt[a]);
            for (size_t b = 0; b < yt.size(); ++b)
              if (b != j) tuple.push_back(yt[b]);
            out.add_term(std::move(tuple), base * bc * sign);
          }
        }
    }
  return out;
}

TrivectorCoefficients schouten_closed_form(const LeviPtr& levi,
                                           const BracketCoefficients& c,
                                           const BracketCoefficients& d) {
  const RootSystem& rs = *levi->rs();
  TrivectorCoefficients e;
  e.levi = levi;
  for (int a : levi->m_roots()) {
    if (!rs.is_positive(a)) continue;
    for (int b : levi->m_roots()) {
      if (!rs.is_positive(b) || b <= a) continue;
      int g = rs.root_sum(a, b);
      if (g < 0 || !levi->in_m(g)) continue;
      QCoords qa = levi->q_of_root(a), qb = levi->q_of_root(b),
              qg = levi->q_of_root(g);
      Rat ca = c.at(qa), cb = c.at(qb), cg = c.at(qg);
      Rat val = Rat(rs.n_const(a, b)) *
                (d.at(qa) * (cb - cg) + d.at(qb) * (ca - cg) -
                 d.at(qg) * (ca + cb));
      if (val != 0) e.values[{a, b}] = val;
    }
  }
  return e;
}

TrivectorCoefficients trivector_coefficients_of(const LeviPtr& levi,
                                                const Multivector& v) {
  if (!v.over_m() || v.degree != 3)
    throw UsageError("expected a degree-3 multivector over m");
  const RootSystem& rs = *levi->rs();
  TrivectorCoefficients e;
  e.levi = levi;
  auto record = [&](int a, int b, const Rat& val) {
    if (val == 0) return;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    Rat oriented = a < b ? val : Rat(-val);
    auto it = e.values.find(key);
    if (it == e.values.end())
      e.values[key] = oriented;
    else if (it->second != oriented)
      throw DomainError("trivector is not theta-structured");
  };
  for (const auto& [t, coeff] : v.terms) {
    int pos_count = 0;
    for (int code : t) pos_count += rs.is_positive(code) ? 1 : 0;
    if (pos_count == 1) {
      // sorted tuple (g, -a, -b); negation preserves the index order
      int g = t[0], a = rs.negate(t[1]), b = rs.negate(t[2]);
      if (rs.root_sum(a, b) != g)
        throw DomainError("trivector term weights do not close");
      record(a, b, coeff * rs.kappa(a) * rs.kappa(b));
    } else if (pos_count == 2) {
      // mirror orientation (a, b, -g) carries -e(a,b)
      int a = t[0], b = t[1], g = rs.negate(t[2]);
      if (rs.root_sum(a, b) != g)
        throw DomainError("trivector term weights do not close");
      record(a, b, -coeff * rs.kappa(a) * rs.kappa(b));
    } else {
      throw DomainError("trivector term weights do not close");
    }
  }
  return e;
}

Multivector phi_m(const LeviPtr& levi) {
  const RootSystem& rs = *levi->rs();
  Multivector v = mv_over_m(levi, 3);
  for (int a : levi->m_roots())
    for (int b : levi->m_roots()) {
      int g = rs.root_sum(a, b);
      if (g < 0 || !levi->in_m(g)) continue;
      Rat coeff = Rat(rs.n_const(a, b)) / (rs.kappa(a) * rs.kappa(b) * 3);
      v.add_term({g, rs.negate(a), rs.negate(b)}, coeff);
    }
  return v;
}

Rat lambda_extend(const LeviPtr& levi, const std::map<QCoords, Rat>& lambda,
                  const QCoords& q) {
  Rat v(0);
  const auto& simples = levi->simple_quasiroots();
  for (size_t i = 0; i < simples.size(); ++i) {
    auto it = lambda.find(simples[i]);
    if (it == lambda.end())
      throw UsageError("lambda missing simple quasiroot " +
                       qcoords_key(simples[i]));
    v += Rat(q[i]) * it->second;
  }
  return v;
}

BracketCoefficients kks(const LeviPtr& levi,
                        const std::map<QCoords, Rat>& lambda) {
  BracketCoefficients c = coefficients_zero(levi);
  for (const auto& q : c.positive.positive) {
    Rat l = lambda_extend(levi, lambda, q);
    if (l == 0)
      throw DomainError("lambda vanishes on quasiroot " + qcoords_key(q) +
                        ": degenerate form");
    c.values[q] = 1 / l;
  }
  return c;
}

Multivector standard_r_matrix(const RootSystemPtr& rs) {
  Multivector r = mv_over_g(rs, 2);
  for (int a = 0; a < rs->n_positive(); ++a)
    r.add_term({a, rs->negate(a)}, 1 / rs->kappa(a));
  return r;
}

Multivector act(int generator_code, const Multivector& v) {
  Multivector out = v;
  out.terms.clear();
  const RootSystem& rs = *v.rs;
  for (const auto& [t, coeff] : v.terms)
    for (size_t i = 0; i < t.size(); ++i)
      for (const auto& [z, bc] : rs.bracket_basis(generator_code, t[i])) {
        if (v.over_m() && (z >= rs.n_roots() || !v.levi->in_m(z)))
          throw InternalError("l action escaped m");
        std::vector<int> tuple = t;
        tuple[i] = z;
        out.add_term(std::move(tuple), coeff * bc);
      }
  return out;
}

CybeReport verify_cybe(const RootSystemPtr& rs) {
  Multivector r = standard_r_matrix(rs);
  CybeReport rep{schouten(r, r), true};
  for (int code = 0; code < rs->n_basis(); ++code)
    if (!act(code, rep.phi).is_zero()) {
      rep.invariant = false;
      break;
    }
  return rep;
}

bool is_invariant(const Multivector& v) {
  const RootSystem& rs = *v.rs;
  for (const auto& [t, coeff] : v.terms) {
    Coords w(rs.rank(), 0);
    for (int code : t) {
      if (code >= rs.n_roots()) continue;
      for (int j = 0; j < rs.rank(); ++j) w[j] += rs.root(code)[j];
    }
    if (w != Coords(rs.rank(), 0)) return false;
  }
  std::vector<int> generator_positions;
  if (v.over_m())
    generator_positions = v.levi->gamma();
  else
    for (int i = 0; i < rs.rank(); ++i) generator_positions.push_back(i);
  for (int i : generator_positions) {
    Coords simple(rs.rank(), 0);
    simple[i] = 1;
    int r = rs.root_index(simple);
    if (!act(r, v).is_zero()) return false;
    if (!act(rs.negate(r), v).is_zero()) return false;
  }
  return true;
}

Multivector cartan_involution(const Multivector& v) {
  const RootSystem& rs = *v.rs;
  Multivector out = v;
  out.terms.clear();
  int sign = v.degree % 2 == 0 ? 1 : -1;  // (-1)^degree from the factors
  for (const auto& [t, coeff] : v.terms) {
    std::vector<int> tuple = t;
    for (int& code : tuple)
      if (code < rs.n_roots()) code = rs.negate(code);
    out.add_term(std::move(tuple), coeff * sign);
  }
  return out;
}

Rat calibration_scalar(const LeviPtr& levi) {
  Multivector p = phi_m(levi);
  auto c = coefficients_constant(levi, Rat(1));
  Multivector f = bivector_from_coefficients(c);
  Multivector s0 = schouten(f, f);
  if (p.is_zero()) {
    if (!s0.is_zero())
      throw InternalError("constant solution has nonzero bracket but phi_M=0");
    return Rat(-1);
  }
  if (s0.terms.size() != p.terms.size())
    throw InternalError("calibration support mismatch");
  Rat mu;
  bool first = true;
  for (const auto& [t, pc] : p.terms) {
    auto it = s0.terms.find(t);
    if (it == s0.terms.end())
      throw InternalError("calibration support mismatch");
    Rat ratio = it->second / pc;
    if (first) {
      mu = ratio;
      first = false;
    } else if (mu != ratio) {
      throw InternalError("calibration scalar is not constant across terms");
    }
  }
  return mu;
}

Multivector phi_bracket_residual(const LeviPtr& levi,
                                 const BracketCoefficients& c, const Rat& K) {
  Multivector f = bivector_from_coefficients(c);
  Multivector res = schouten(f, f);
  if (K != 0) {
    Multivector p = phi_m(levi);
    p *= calibration_scalar(levi) * K * K;
    res -= p;
  }
  return res;
}

}  // namespace orbitforge
