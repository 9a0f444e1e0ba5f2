#include "fockmrf/operator_expr.hpp"

#include <algorithm>
#include <deque>

#include "fockmrf/capacity.hpp"
#include "fockmrf/combinatorics.hpp"
#include "fockmrf/errors.hpp"

namespace fockmrf {

namespace {

bool factor_seq_less(const std::vector<OperatorFactor>& a, const std::vector<OperatorFactor>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sort terms by factor sequence, merge identical sequences, drop zeros.
std::vector<OperatorMonomial> normalize_terms(std::vector<OperatorMonomial> terms) {
  std::sort(terms.begin(), terms.end(), [](const OperatorMonomial& a, const OperatorMonomial& b) {
    return factor_seq_less(a.factors, b.factors);
  });
  std::vector<OperatorMonomial> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().factors == t.factors)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  }
  return merged;
}

// Within-kind factors commute, so sorting by site and merging powers is an
// identity rewrite on a normal-ordered factor list.
void canonicalize_ordered(OperatorMonomial& m) {
  auto kind_rank = [](FactorKind k) { return k == FactorKind::Create ? 0 : 1; };
  std::stable_sort(m.factors.begin(), m.factors.end(),
                   [&](const OperatorFactor& a, const OperatorFactor& b) {
                     if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
                     return a.site < b.site;
                   });
  std::vector<OperatorFactor> merged;
  for (const auto& f : m.factors) {
    if (!merged.empty() && merged.back().kind == f.kind && merged.back().site == f.site)
      merged.back().power += f.power;
    else
      merged.push_back(f);
  }
  m.factors = std::move(merged);
}

}  // namespace

OperatorExpr::OperatorExpr(std::vector<OperatorMonomial> terms)
    : terms_(normalize_terms(std::move(terms))) {}

OperatorExpr OperatorExpr::identity(Rational coeff) {
  return monomial(OperatorMonomial{std::move(coeff), {}});
}

OperatorExpr OperatorExpr::monomial(OperatorMonomial m) {
  for (const auto& f : m.factors)
    if (f.power < 1) throw IndexError("operator factor power must be >= 1");
  return OperatorExpr(std::vector<OperatorMonomial>{std::move(m)});
}

OperatorExpr OperatorExpr::create(SiteIndex site, int power) {
  return monomial({1, {{FactorKind::Create, site, power}}});
}

OperatorExpr OperatorExpr::annihilate(SiteIndex site, int power) {
  return monomial({1, {{FactorKind::Annihilate, site, power}}});
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
  std::vector<OperatorMonomial> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  terms_ = normalize_terms(std::move(all));
  return *this;
}

OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs) {
  check_capacity(lhs.terms_.size() * rhs.terms_.size(), "operator product");
  std::vector<OperatorMonomial> out;
  out.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) {
      OperatorMonomial m;
      m.coeff = a.coeff * b.coeff;
      m.factors = a.factors;
      m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
      out.push_back(std::move(m));
    }
  }
  return OperatorExpr(std::move(out));
}

OperatorExpr OperatorExpr::scaled(const Rational& factor) const {
  if (factor == 0) return {};
  OperatorExpr out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

OperatorExpr normal_order(const OperatorExpr& expr) {
  std::vector<OperatorMonomial> done;
  std::deque<OperatorMonomial> work(expr.terms().begin(), expr.terms().end());
  while (!work.empty()) {
    check_capacity(work.size() + done.size(), "normal ordering");
    OperatorMonomial m = std::move(work.front());
    work.pop_front();
    if (m.coeff == 0) continue;

    // Leftmost adjacent (annihilate, create) pair.
    std::size_t k = 0;
    bool found = false;
    for (; k + 1 < m.factors.size(); ++k) {
      if (m.factors[k].kind == FactorKind::Annihilate &&
          m.factors[k + 1].kind == FactorKind::Create) {
        found = true;
        break;
      }
    }
    if (!found) {
      canonicalize_ordered(m);
      done.push_back(std::move(m));
      continue;
    }

    const OperatorFactor lo = m.factors[k];      // a^p at site u
    const OperatorFactor hi = m.factors[k + 1];  // a^{dagger q} at site v
    if (lo.site != hi.site) {
      std::swap(m.factors[k], m.factors[k + 1]);
      work.push_back(std::move(m));
      continue;
    }

    // Same site: a^p (a^dagger)^q = sum_r r! C(p,r) C(q,r) (a^dagger)^{q-r} a^{p-r}.
    const int p = lo.power;
    const int q = hi.power;
    for (int r = 0; r <= std::min(p, q); ++r) {
      OperatorMonomial t;
      t.coeff = m.coeff * Rational(factorial(r) * binomial(p, r) * binomial(q, r));
      t.factors.assign(m.factors.begin(), m.factors.begin() + k);
      if (q - r > 0) t.factors.push_back({FactorKind::Create, hi.site, q - r});
      if (p - r > 0) t.factors.push_back({FactorKind::Annihilate, lo.site, p - r});
      t.factors.insert(t.factors.end(), m.factors.begin() + k + 2, m.factors.end());
      work.push_back(std::move(t));
    }
  }
  return OperatorExpr(std::move(done));
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr diff = a * b + (b * a).scaled(-1);
  return normal_order(diff);
}

MixedState apply_expr(const OperatorExpr& expr, const MixedState& state) {
  MixedState out;
  for (const auto& m : expr.terms()) {
    MixedState current = state;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
      for (int rep = 0; rep < it->power && !current.is_zero(); ++rep) {
        current = it->kind == FactorKind::Create ? apply_create(current, it->site)
                                                 : apply_annihilate(current, it->site);
      }
      if (current.is_zero()) break;
    }
    out += current.scaled(m.coeff);
  }
  return out;
}

OperatorExpr number_operator(SiteIndex site) {
  return OperatorExpr::monomial(
      {1, {{FactorKind::Create, site, 1}, {FactorKind::Annihilate, site, 1}}});
}

OperatorExpr node_number_operator(int node, int bins) {
  if (bins < 1) throw IndexError("node must have at least one bin");
  std::vector<OperatorMonomial> terms;
  terms.reserve(bins);
  for (int i = 1; i <= bins; ++i) {
    SiteIndex site{node, i};
    terms.push_back({1, {{FactorKind::Create, site, 1}, {FactorKind::Annihilate, site, 1}}});
  }
  return OperatorExpr(std::move(terms));
}

OperatorExpr total_number_operator(std::span<const int> layout) {
  OperatorExpr total;
  for (std::size_t s = 0; s < layout.size(); ++s)
    total += node_number_operator(static_cast<int>(s) + 1, layout[s]);
  return total;
}

}  // namespace fockmrf
