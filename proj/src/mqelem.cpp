#include "prymkit/mqelem.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "prymkit/errors.hpp"

namespace prymkit {

namespace {

std::vector<std::int64_t> merge_gens(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Coefficient of sqrt_S * sqrt_T = (prod_{i in S & T} g_i) * sqrt_{S ^ T}.
Rat overlap_factor(const std::vector<std::int64_t>& gens, std::size_t mask) {
  Integer f = 1;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1U) {
    if ((mask & 1U) != 0) f *= Integer(static_cast<long>(gens[i]));
  }
  return Rat(f);
}

}  // namespace

MQElem MQElem::sqrt_of_squarefree(const Integer& d) {
  if (d == 0) throw PreconditionError("sqrt of zero generator");
  std::vector<std::int64_t> gens;
  if (d < 0) gens.push_back(-1);
  for (auto [p, e] : factor_integer(d)) {
    if (e != 1) throw PreconditionError("generator " + d.get_str() + " is not square-free");
    gens.push_back(p);
  }
  std::vector<Rat> coords(std::size_t{1} << gens.size(), Rat(0));
  coords.back() = Rat(1);
  return MQElem(std::move(gens), std::move(coords));
}

MQElem MQElem::from_coords(const std::vector<Integer>& gens, const std::vector<Rat>& coords) {
  if (coords.size() != (std::size_t{1} << gens.size())) {
    throw PreconditionError("coordinate count does not match generator list");
  }
  std::vector<MQElem> roots;
  roots.reserve(gens.size());
  for (const auto& g : gens) roots.push_back(sqrt_of_squarefree(g));
  auto monomial = [&](std::size_t mask) {
    MQElem prod(1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i) & 1U) prod *= roots[i];
    }
    return prod;
  };
  // Dependent generators would make the representation non-unique.
  for (std::size_t mask = 1; mask < coords.size(); ++mask) {
    if (monomial(mask).is_rational()) {
      throw PreconditionError("generators are not independent modulo squares");
    }
  }
  MQElem out(0);
  for (std::size_t mask = 0; mask < coords.size(); ++mask) {
    if (!coords[mask].is_zero()) out += MQElem(coords[mask]) * monomial(mask);
  }
  return out;
}

bool MQElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rat& r) { return r.is_zero(); });
}

Rat MQElem::to_rat() const {
  if (!is_rational()) throw PreconditionError("element " + str() + " is not rational");
  return coords_[0];
}

MQElem MQElem::embed(const std::vector<std::int64_t>& super) const {
  if (super == gens_) return *this;
  std::vector<std::size_t> position(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    auto it = std::lower_bound(super.begin(), super.end(), gens_[i]);
    if (it == super.end() || *it != gens_[i]) throw InvariantError("embedding into non-superset");
    position[i] = static_cast<std::size_t>(it - super.begin());
  }
  std::vector<Rat> coords(std::size_t{1} << super.size(), Rat(0));
  for (std::size_t mask = 0; mask < coords_.size(); ++mask) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if ((mask >> i) & 1U) target |= std::size_t{1} << position[i];
    }
    coords[target] = coords_[mask];
  }
  return MQElem(super, std::move(coords));
}

void MQElem::trim() {
  // Drop generators whose monomials all carry zero coefficients.
  std::size_t i = 0;
  while (i < gens_.size()) {
    const std::size_t bit = std::size_t{1} << i;
    bool used = false;
    for (std::size_t mask = 0; mask < coords_.size() && !used; ++mask) {
      if ((mask & bit) != 0 && !coords_[mask].is_zero()) used = true;
    }
    if (used) {
      ++i;
      continue;
    }
    std::vector<Rat> coords(coords_.size() / 2);
    for (std::size_t mask = 0; mask < coords_.size(); ++mask) {
      if ((mask & bit) != 0) continue;
      const std::size_t low = mask & (bit - 1);
      const std::size_t high = (mask >> (i + 1)) << i;
      coords[low | high] = coords_[mask];
    }
    coords_ = std::move(coords);
    gens_.erase(gens_.begin() + static_cast<long>(i));
  }
}

MQElem& MQElem::operator+=(const MQElem& o) {
  if (gens_ == o.gens_) {
    for (std::size_t m = 0; m < coords_.size(); ++m) coords_[m] += o.coords_[m];
  } else {
    const auto g = merge_gens(gens_, o.gens_);
    *this = embed(g);
    const MQElem b = o.embed(g);
    for (std::size_t m = 0; m < coords_.size(); ++m) coords_[m] += b.coords_[m];
  }
  trim();
  return *this;
}

MQElem& MQElem::operator-=(const MQElem& o) { return *this += -o; }

MQElem operator-(const MQElem& a) {
  MQElem r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

MQElem operator*(const MQElem& a, const MQElem& b) {
  if (a.is_rational() && b.is_rational()) return MQElem(a.coords_[0] * b.coords_[0]);
  if (a.is_rational() || b.is_rational()) {
    const Rat& s = a.is_rational() ? a.coords_[0] : b.coords_[0];
    MQElem r = a.is_rational() ? b : a;
    for (auto& c : r.coords_) c *= s;
    r.trim();
    return r;
  }
  const auto g = merge_gens(a.gens_, b.gens_);
  const MQElem x = a.embed(g);
  const MQElem y = b.embed(g);
  const std::size_t n = x.coords_.size();
  std::vector<Rat> factor(n);
  for (std::size_t m = 0; m < n; ++m) factor[m] = overlap_factor(g, m);
  std::vector<Rat> out(n, Rat(0));
  for (std::size_t s = 0; s < n; ++s) {
    if (x.coords_[s].is_zero()) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (y.coords_[t].is_zero()) continue;
      out[s ^ t] += x.coords_[s] * y.coords_[t] * factor[s & t];
    }
  }
  MQElem r(g, std::move(out));
  r.trim();
  return r;
}

bool operator==(const MQElem& a, const MQElem& b) {
  if (a.gens_ == b.gens_) return a.coords_ == b.coords_;
  return (a - b).is_zero();
}

MQElem MQElem::conjugate(std::size_t gen_index) const {
  MQElem r = *this;
  for (std::size_t m = 0; m < r.coords_.size(); ++m) {
    if ((m >> gen_index) & 1U) r.coords_[m] = -r.coords_[m];
  }
  return r;
}

MQElem MQElem::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  // Multiply by conjugates generator by generator; each step kills one
  // generator, leaving a nonzero rational norm.
  MQElem acc(1);
  MQElem x = *this;
  while (!x.is_rational()) {
    const std::int64_t g = x.gens_.front();
    const MQElem y = x.conjugate(0);
    acc *= y;
    x = x * y;
    if (!x.gens_.empty() && x.gens_.front() == g) throw InvariantError("conjugate norm failed");
  }
  const Rat norm = x.coords_[0];
  return acc * MQElem(norm.inverse());
}

std::string MQElem::str() const {
  if (is_rational()) return coords_[0].str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < coords_.size(); ++m) {
    const Rat& c = coords_[m];
    if (c.is_zero()) continue;
    std::string mono;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if ((m >> i) & 1U) mono += (mono.empty() ? "" : "*") + std::to_string(gens_[i]);
    }
    const bool neg = c.sign() < 0;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    const Rat a = c.abs();
    if (m == 0) {
      os << a.str();
    } else {
      if (a != Rat(1)) os << a.str() << "*";
      os << "sqrt(" << mono << ")";
    }
    first = false;
  }
  return first ? "0" : os.str();
}

bool canonical_less(const MQElem& a, const MQElem& b) {
  if (a.is_rational() != b.is_rational()) return a.is_rational();
  if (a.is_rational()) return a.coord(0) < b.coord(0);
  if (a.gens() != b.gens()) return a.gens() < b.gens();
  for (std::size_t m = 0; m < a.dimension(); ++m) {
    if (a.coord(m) != b.coord(m)) return a.coord(m) < b.coord(m);
  }
  return false;
}

MQElem sqrt_adjoin(const Rat& r) {
  if (r.is_zero()) return MQElem(0);
  const auto split = square_free_split(r);
  if (split.squarefree == 1) return MQElem(split.root);
  return MQElem::sqrt_of_squarefree(split.squarefree) * MQElem(split.root);
}

}  // namespace prymkit
