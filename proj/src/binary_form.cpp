#include "prymkit/binary_form.hpp"

#include <algorithm>

namespace prymkit {

namespace {

long ord(const Rat& r, std::int64_t p) { return rat_ord_p(r, p).value(); }

Integer ipow(std::int64_t p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// Finite roots gamma/delta of the factors with delta != 0, by factor index.
std::vector<std::pair<std::size_t, Rat>> finite_roots(const BinaryForm& f) {
  std::vector<std::pair<std::size_t, Rat>> out;
  const auto& fs = f.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!fs[i].delta.is_zero()) out.emplace_back(i, fs[i].gamma / fs[i].delta);
  }
  return out;
}

bool s_integral(const Rat& r, const PlaceSet& s) {
  for (auto [p, e] : factor_integer(r.den())) {
    if (!s.contains(p)) return false;
  }
  return true;
}

}  // namespace

BinaryForm BinaryForm::factored(Rat lambda, std::vector<LinearFactor> factors) {
  if (lambda.is_zero()) throw PreconditionError("form with zero scalar");
  for (const auto& f : factors) {
    if (f.delta.is_zero() && f.gamma.is_zero()) throw PreconditionError("zero linear factor");
  }
  BinaryForm b;
  b.degree_ = static_cast<int>(factors.size());
  b.lambda_ = std::move(lambda);
  b.factors_ = std::move(factors);
  return b;
}

BinaryForm BinaryForm::dense(std::vector<Rat> coeffs) {
  if (coeffs.empty() || std::all_of(coeffs.begin(), coeffs.end(),
                                    [](const Rat& r) { return r.is_zero(); })) {
    throw PreconditionError("zero binary form");
  }
  BinaryForm b;
  b.degree_ = static_cast<int>(coeffs.size()) - 1;
  b.dense_ = std::move(coeffs);
  return b;
}

const Rat& BinaryForm::lambda() const {
  if (!lambda_) throw PreconditionError("form is not split");
  return *lambda_;
}

const std::vector<LinearFactor>& BinaryForm::factors() const {
  if (!factors_) throw PreconditionError("form is not split");
  return *factors_;
}

std::vector<Rat> BinaryForm::coefficients() const {
  if (dense_) return *dense_;
  // Multiply out in (X, Z): coefficient vector indexed by the X exponent.
  std::vector<Rat> c{*lambda_};
  for (const auto& f : *factors_) {
    std::vector<Rat> next(c.size() + 1, Rat(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k] * f.delta;
      next[k] -= c[k] * f.gamma;
    }
    c = std::move(next);
  }
  return c;
}

BinaryForm BinaryForm::split() const {
  if (factors_) return *this;
  const auto& a = *dense_;
  const RatPoly f{std::vector<Rat>(a.begin(), a.end())};
  std::vector<LinearFactor> fs;
  RatPoly rest = f;
  for (const auto& r : rational_roots(f)) {
    const RatPoly lin{-r, Rat(1)};
    while (true) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      fs.push_back({Rat(1), r});
    }
  }
  if (rest.degree() != 0) throw PreconditionError("not split over base field");
  for (int k = f.degree(); k < degree_; ++k) fs.push_back({Rat(0), Rat(-1)});
  BinaryForm out = factored(rest.lead(), std::move(fs));
  out.dense_ = dense_;
  return out;
}

Rat bf_disc(const BinaryForm& form) {
  const BinaryForm f = form.split();
  const auto& fs = f.factors();
  const long r = static_cast<long>(fs.size());
  Rat d = pow(f.lambda(), 2 * r - 2);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const Rat t = fs[i].gamma * fs[j].delta - fs[j].gamma * fs[i].delta;
      d *= t * t;
    }
  }
  return d;
}

BinaryForm bf_transform(const BinaryForm& form, const GL2Matrix& u) {
  if (u.det().is_zero()) throw PreconditionError("singular transformation");
  const BinaryForm f = form.split();
  std::vector<LinearFactor> out;
  for (const auto& fac : f.factors()) {
    out.push_back({u.a * fac.delta - u.c * fac.gamma, u.d * fac.gamma - u.b * fac.delta});
  }
  return BinaryForm::factored(f.lambda(), std::move(out));
}

bool in_B(const BinaryForm& f, const PlaceSet& s) {
  const Rat d = bf_disc(f);
  if (d.is_zero()) return false;
  for (auto p : prime_support(d)) {
    if (!s.contains(p)) return false;
  }
  return true;
}

BPrimeResult check_B_prime(const BinaryForm& form, const PlaceSet& s) {
  BPrimeResult res;
  res.certificate.s = s;
  const BinaryForm f = form.split();
  for (const auto& c : f.coefficients()) {
    if (!s_integral(c, s)) {
      res.reason = "coefficients are not S-integral";
      return res;
    }
  }
  const Rat d = bf_disc(f);
  if (d.is_zero()) {
    res.reason = "zero discriminant";
    return res;
  }
  const long r = f.degree();
  const long n_max = 2 * ((r + 1) / 2) - 3;
  const auto roots = finite_roots(f);
  for (auto p : prime_support(d)) {
    if (s.contains(p)) continue;
    const long o = ord(d, p);
    std::optional<BPrimeEntry> entry;
    for (long n = 3; n <= n_max && !entry; n += 2) {
      const long unit = 2 * n * (n - 1);
      if (o <= 0 || o % unit != 0) continue;
      const long m = o / unit;
      BPrimeEntry e{p, m, n, {}};
      for (const auto& [idx, root] : roots) {
        if (!root.is_zero() && ord(root, p) == 2 * m) e.roots.push_back(idx);
      }
      if (static_cast<long>(e.roots.size()) == n) entry = e;
    }
    if (!entry) {
      res.reason = "ord_" + std::to_string(p) + " disc = " + std::to_string(o) +
                   " admits no B' pattern";
      res.certificate.entries.clear();
      return res;
    }
    res.certificate.entries.push_back(*entry);
  }
  res.accepted = true;
  return res;
}

FormConstruction integral_point_to_form(const HyperCurve& c, const CurvePoint& p,
                                        const CurvePoint& q, const PlaceSet& s0,
                                        std::size_t tuple_index) {
  const auto tuples = beta_tuples(c, p, q);
  if (tuple_index >= tuples.size()) throw PreconditionError("tuple index out of range");
  const auto betas = tuples[tuple_index].rat_betas();
  const int g = c.genus();
  const long r = 2 * g + 2;
  const Rat xp = p.x.to_rat(), yp = p.y.to_rat(), xq = q.x.to_rat(), yq = q.y.to_rat();
  const auto alphas = c.rat_roots();

  FormConstruction out{tuple_index, s0, BinaryForm::dense({Rat(1)}), BinaryForm::dense({Rat(1)}),
                       BinaryForm::dense({Rat(1)}), BinaryForm::dense({Rat(1)}), Rat(1), 0, 0, {},
                       {}};
  // S-enlargement: alpha_i in O_S, x_Q - alpha_i in O_S^*, disc of the
  // root polynomial in O_S^*, 2 in S.
  PlaceSet& s = out.s;
  s.insert(2);
  for (auto pr : prime_support(c.rat_lead())) s.insert(pr);
  for (const auto& a : alphas) {
    for (auto [pr, e] : factor_integer(a.den())) s.insert(pr);
    for (auto pr : prime_support(xq - a)) s.insert(pr);
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = i + 1; j < alphas.size(); ++j) {
      for (auto [pr, e] : factor_integer((alphas[i] - alphas[j]).num())) s.insert(pr);
    }
  }
  const Rat dxy = xp - xq;
  // Condition min(ord(x_P - x_Q), ord(y_P - y_Q)) <= 0.
  for (auto [pr, e] : factor_integer(dxy.num())) {
    if (!s.contains(pr) && (yp - yq).is_zero()) s.insert(pr);
    if (!s.contains(pr) && !(yp - yq).is_zero() && ord(yp - yq, pr) > 0) s.insert(pr);
  }

  std::vector<Rat> gam, del;
  for (const auto& b : betas) {
    gam.emplace_back(b.num());
    del.emplace_back(b.den());
  }
  std::vector<LinearFactor> base{{Rat(1), Rat(1)}};
  for (std::size_t i = 0; i < betas.size(); ++i) base.push_back({del[i], gam[i]});
  out.base = BinaryForm::factored(Rat(1), base);

  // Negative case: rescale by c with ord_p c = -ord_p(x_P) / 2.
  Rat cc(1);
  for (auto [pr, e] : factor_integer(dxy.den())) {
    if (s.contains(pr)) continue;
    const long o = ord(xp, pr);
    if (o >= 0 || o % 2 != 0) throw InvariantError("odd valuation of x_P at a pole");
    cc *= Rat(ipow(pr, -o / 2));
    PrimeCase pc;
    pc.p = pr;
    pc.kind = 2;
    pc.m = -ord(dxy, pr);
    out.cases.push_back(pc);
  }
  out.c = cc;
  std::vector<LinearFactor> gfac{{cc, Rat(1)}};
  for (std::size_t i = 0; i < betas.size(); ++i) gfac.push_back({del[i], gam[i] / cc});
  out.scaled = BinaryForm::factored(Rat(1), gfac);

  // Positive case primes.
  std::vector<std::pair<std::int64_t, long>> pos;
  for (auto [pr, e] : factor_integer(dxy.num())) {
    if (!s.contains(pr)) pos.emplace_back(pr, ord(dxy, pr));
  }
  if (pos.empty()) {
    out.normalized = out.scaled;
    out.form = out.scaled;
  } else {
    Integer big_m = 1;
    for (auto [pr, m] : pos) big_m *= ipow(pr, m);
    if (!cc.is_integer()) throw InvariantError("scaling constant is not integral");
    const Integer ci = cc.num();
    // Least b >= 0 with 2bc = -1 mod M.
    Integer b = (-mod_inverse(Integer(2) * ci % big_m, big_m)) % big_m;
    if (b < 0) b += big_m;
    out.b = b;
    const Rat bc = Rat(b) * cc;
    std::vector<LinearFactor> hfac{{Rat(0), Rat(-1)}};
    std::vector<long> n_of(pos.size(), 0);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      Rat theta(1), theta_prime(1);
      for (std::size_t k = 0; k < pos.size(); ++k) {
        const auto [pr, m] = pos[k];
        const Integer pm = ipow(pr, m);
        const bool eps = mpz_divisible_ui_p(Integer(del[i].num() - gam[i].num()).get_mpz_t(),
                                            static_cast<unsigned long>(pr)) != 0;
        if (eps) {
          theta *= Rat(pm);
        } else {
          theta_prime *= Rat(pm);
          ++n_of[k];
        }
      }
      const Rat coef_x = (del[i] - gam[i]) / theta;
      const Rat coef_z = theta_prime / cc * (bc * del[i] - (bc + Rat(1)) * gam[i]);
      hfac.push_back({coef_x, -coef_z});
    }
    out.normalized = BinaryForm::factored(Rat(1), hfac);
    const Rat disc_g = bf_disc(out.scaled);
    const Rat disc_h = bf_disc(out.normalized);
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const auto [pr, m] = pos[k];
      const long n = n_of[k];
      PrimeCase pc;
      pc.p = pr;
      pc.kind = 3;
      pc.m = m;
      pc.n = n;
      pc.oeq_expected = m * n * (n - 1) + m * (r - n) * (r - n - 1);
      pc.oeq_actual = ord(disc_g, pr);
      pc.deq_expected = 2 * m * n * (n - 1);
      pc.deq_actual = ord(disc_h, pr);
      if (pc.oeq_actual != pc.oeq_expected || pc.deq_actual != pc.deq_expected) {
        throw InvariantError("valuation formula failed at p = " + std::to_string(pr));
      }
      out.cases.push_back(pc);
    }

    // Shift X -> X + aZ so that the n roots at a pattern prime have
    // valuation exactly 2m; a is 0 modulo p^{2m+1} at rescue primes.
    std::vector<std::pair<std::int64_t, long>> need, rescue;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (n_of[k] == 2 * g + 1) {
        rescue.push_back(pos[k]);
      } else if (n_of[k] > 1) {
        need.push_back(pos[k]);
      }
    }
    Integer step = 1, range = 1;
    for (auto [pr, m] : need) {
      step *= ipow(pr, 2 * m);
      range *= pr;
    }
    for (auto [pr, m] : rescue) step *= ipow(pr, 2 * m + 1);
    const auto hroots = finite_roots(out.normalized);
    auto shift_ok = [&](const Integer& a, std::int64_t pr, long m) {
      for (const auto& [idx, root] : hroots) {
        if (root.is_zero() || ord(root, pr) >= 2 * m) {
          const Rat moved = root - Rat(a);
          if (moved.is_zero() || ord(moved, pr) != 2 * m) return false;
        }
      }
      return true;
    };
    std::optional<Integer> shift;
    for (Integer k = 0; k < range && !shift; ++k) {
      const Integer a = k * step;
      bool ok = true;
      for (auto [pr, m] : need) ok = ok && shift_ok(a, pr, m);
      if (ok) shift = a;
    }
    if (!shift) {
      // No residue avoids every root: p is too small for the pattern.
      for (auto [pr, m] : need) s.insert(pr);
      shift = Integer(0);
    }
    out.shift = *shift;
    std::vector<LinearFactor> fin;
    for (const auto& fac : out.normalized.factors()) {
      fin.push_back({fac.delta, fac.gamma - fac.delta * Rat(*shift)});
    }
    // Rescue: p^{2m} H(X, Z / p^{2m}) divides every finite gamma by p^{2m}.
    for (auto [pr, m] : rescue) {
      const Rat scale(ipow(pr, 2 * m));
      for (auto& fac : fin) {
        if (!fac.delta.is_zero()) fac.gamma /= scale;
      }
      for (auto& pc : out.cases) {
        if (pc.p == pr) pc.rescued = true;
      }
    }
    out.form = BinaryForm::factored(Rat(1), fin);
  }
  const auto check = check_B_prime(out.form, s);
  if (!check.accepted) throw InvariantError("constructed form fails B': " + check.reason);
  out.certificate = check.certificate;
  return out;
}

ReductionType reduction_classify(const BinaryForm& form, const PlaceSet& s, std::int64_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw PreconditionError("p must be an odd prime");
  if (s.contains(p)) throw PreconditionError("p must lie outside S");
  const BinaryForm f = form.split();
  const int g = (f.degree() + 1) / 2 - 1;
  const Rat d = bf_disc(f);
  ReductionType out;
  if (d.is_zero()) throw PreconditionError("zero discriminant");
  if (ord(d, p) == 0) return out;

  const auto check = check_B_prime(f, s);
  if (!check.accepted) throw PreconditionError("form is not in B': " + check.reason);
  const auto it = std::find_if(check.certificate.entries.begin(), check.certificate.entries.end(),
                               [p](const BPrimeEntry& e) { return e.p == p; });
  if (it == check.certificate.entries.end()) throw InvariantError("certificate inconsistent");
  out.kind = ReductionKind::kSplitProduct;
  out.m = it->m;
  out.n = it->n;
  const auto pp = static_cast<std::uint32_t>(p);
  const Rat p2m(ipow(p, 2 * it->m));

  // F(x, 1) = h(x) prod_{i in N} (x - u_i p^{2m}).
  std::vector<std::uint32_t> u;
  Rat h_lead = f.lambda();
  std::vector<std::uint32_t> h_roots;
  Rat h_zero = f.lambda();
  const auto& fs = f.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const bool special = std::find(it->roots.begin(), it->roots.end(), i) != it->roots.end();
    if (fs[i].delta.is_zero()) {
      h_zero *= -fs[i].gamma;
      h_lead *= -fs[i].gamma;
      continue;
    }
    if (special) {
      const Rat unit = fs[i].gamma / fs[i].delta / p2m;
      if (ord(unit, p) != 0) throw InvariantError("certificate inconsistent");
      u.push_back(reduce_mod(unit, pp));
      h_lead *= fs[i].delta;
      h_zero *= fs[i].delta;
      continue;
    }
    h_lead *= fs[i].delta;
    h_zero *= -fs[i].gamma;
    const Rat root = fs[i].gamma / fs[i].delta;
    if (!root.is_zero() && ord(root, p) < 0) throw InvariantError("certificate inconsistent");
    h_roots.push_back(reduce_mod(root, pp));
  }
  if (h_lead.is_zero() || h_zero.is_zero() || ord(h_lead, p) != 0 || ord(h_zero, p) != 0) {
    throw InvariantError("certificate inconsistent");
  }
  FpCurve c1{pp, h_roots, reduce_mod(h_lead, pp)};
  c1.roots.push_back(0);
  FpCurve c2{pp, u, reduce_mod(h_zero, pp)};
  if (!c1.nonsingular() || !c2.nonsingular() || c1.genus() < 1 || c2.genus() < 1 ||
      c1.genus() + c2.genus() != g) {
    throw InvariantError("certificate inconsistent");
  }
  out.c1 = c1;
  out.c2 = c2;
  return out;
}

}  // namespace prymkit
